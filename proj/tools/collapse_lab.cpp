#include <collapse/cli/commands.hpp>

int main(int argc, char** argv) { return collapse::cli::main_entry(argc, argv); }
