#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stabgeo/revolution.hpp"

namespace stabgeo {

enum class Experiment { cap_scan, bs_scan, pl_scan, pln_scan };

struct ExperimentConfig {
  Experiment experiment = Experiment::cap_scan;
  int dim = 2;
  std::vector<double> grid;
  std::uint64_t seed = 1;
  std::string output_path;  // empty -> stdout
  std::size_t profile_points = 0;  // 0 -> per-experiment default
  std::size_t levels = 0;  // 0 -> per-experiment default
  std::size_t fn_points = 4097;
  std::size_t bodies = 200;
  double fit_cutoff = 1e-12;
  std::string family;  // pl-scan: shift | asymmetric; pln-scan: dilation
};

Experiment parse_experiment(const std::string& s);
std::string experiment_name(Experiment e);
// `1,2,3`, `logspace(lo,hi,n)` or `linspace(lo,hi,n)`
std::vector<double> parse_grid(const std::string& s);
// key=value lines, # comments; ConfigError on unknown keys or bad values
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::filesystem::path& p);
// ConfigError unless every value is in range for the experiment
void validate(ExperimentConfig& cfg);

struct FitResult {
  double slope = 0, intercept = 0, r_squared = 0;
  std::vector<std::pair<double, double>> points;  // (ln x, ln y)
};
// OLS of ln y on ln x; InvalidData on fewer than 3 points or a nonpositive value
FitResult fit_exponent(const std::vector<std::pair<double, double>>& xy);

struct ScanResult {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::optional<FitResult> fit;
  std::map<std::string, double> diagnostics;
};

// seeded superellipse-profile body, exponent log-uniform in [p_lo, p_hi]
RevolutionBody random_profile_body(int dim, double p_lo, double p_hi, std::size_t samples, std::uint64_t seed);

ScanResult run_cap_scan(const ExperimentConfig& cfg);
ScanResult run_bs_scan(const ExperimentConfig& cfg);
ScanResult run_pl_scan(const ExperimentConfig& cfg);  // pl-scan and pln-scan
ScanResult run_experiment(const ExperimentConfig& cfg);

void write_csv(std::ostream& out, const ScanResult& r);
// validates, runs, then writes the file in one go
ScanResult run_and_write(ExperimentConfig cfg, std::ostream& summary);

}  // namespace stabgeo
