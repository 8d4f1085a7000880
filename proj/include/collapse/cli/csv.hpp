#pragma once

#include <collapse/engine/engine.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace collapse::cli {

inline constexpr const char* csv_version_line = "# collapse-lab v1";

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    // index of a header column; throws IoError when missing
    std::size_t column(const std::string& name) const;
};

// Version comment, header, rows. Throws IoError naming the path.
void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);

template <class T>
CsvTable events_table(const std::vector<BasicCollisionEvent<T>>& events);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace collapse::cli
