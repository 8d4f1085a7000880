#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace collapse::cli {

enum class Mode { simulate, construct_zk, sweep, spectrum, triangular_probe };
std::string mode_label(Mode m);

enum class Precision { automatic, double_precision, high };

struct RunConfig {
    Mode mode = Mode::simulate;
    double r = 0.02;
    int dim = 2;
    std::optional<double> cos_theta0;
    double delta_theta = 0.05;
    std::uint64_t seed = 1;

    long max_collisions = 1000;
    double max_time = std::numeric_limits<double>::infinity();
    long min_events = 500;  // collapse is not declared before this many collisions
    Precision precision = Precision::automatic;
    bool strict = false;
    int jobs = 1;  // 0: hardware concurrency

    std::string out_dir = ".";

    // simulate: explicit initial state, one comma list of dim entries each
    std::array<std::vector<double>, 3> x, v;

    // sweep
    std::vector<double> r_grid;
    std::vector<double> cos_theta0_grid;
    std::vector<std::uint64_t> seeds;

    // spectrum: explicit r_grid, or r_points equispaced interior points of (0,1)
    long r_points = 99;

    // triangular-probe
    std::array<double, 4> probe_x0{-1.0, 0.0, -1.0, 1.0};
    long max_iter = 200;
};

// Parses flags and an optional key=value config file (--config); flags win
// over the file, the file over defaults. Throws UsageError naming the
// offending inequality. Returns nullopt when only help was requested.
std::optional<RunConfig> parse_arguments(const std::vector<std::string>& args);

// Range and consistency checks; throws UsageError.
void validate(const RunConfig& cfg);

// Grid used by the spectrum command.
std::vector<double> spectrum_grid(const RunConfig& cfg);

}  // namespace collapse::cli
