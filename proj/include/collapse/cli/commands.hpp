#pragma once

#include <collapse/analysis/analysis.hpp>
#include <collapse/cli/config.hpp>
#include <collapse/nearlinear/certificate.hpp>
#include <collapse/nearlinear/construction.hpp>
#include <collapse/triangular/triangular.hpp>

#include <json.hpp>

#include <string>
#include <vector>

namespace collapse::cli {

// Exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;  // I/O and other runtime errors
inline constexpr int exit_usage = 2;
inline constexpr int exit_strict = 3;   // triple collision or grazing under --strict

nlohmann::json to_json(const CollisionOrder& order);
nlohmann::json to_json(const ConvergenceReport& rep);
nlohmann::json to_json(const RecursionCertificate& cert);
nlohmann::json to_json(const ZkConstruction& zk);
nlohmann::json to_json(const SpectrumReport& rep);

// Output files land in cfg.out_dir:
//   simulate, construct-zk: events.csv, report.json
//   sweep: sweep.csv
//   spectrum: spectrum.csv, spectrum_summary.json
//   triangular-probe: cone_orbit.csv, probe.json
int run_command(const RunConfig& cfg);

// Parses, runs, maps errors to exit codes and prints them on stderr.
int main_entry(const std::vector<std::string>& args);
int main_entry(int argc, char** argv);

}  // namespace collapse::cli
