#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "tline/config.hpp"
#include "tline/ensemble.hpp"
#include "tline/simulator.hpp"

namespace tline::io {

/// FNV-1a 64-bit over raw bytes; used to fingerprint the config file in the
/// run manifest.
std::uint64_t fnv1a64(const std::string& bytes);

/// Fixed scientific notation, 9 significant digits, locale-independent.
std::string format_number(double value);

/// Writes the deterministic-run bundle: manifest.json, timeseries.csv and one
/// fields_<year>.csv per snapshot. Throws io_failure on filesystem errors.
void write_run_bundle(const std::string& directory, const ConfigFile& config,
                      const std::string& config_bytes, const sim::RunResult& result,
                      double wall_seconds);

/// Writes the ensemble bundle: manifest.json, stats.csv, sobol.csv, pf.csv
/// and the mean/std temperature field per common snapshot year.
void write_uq_bundle(const std::string& directory, const ConfigFile& config,
                     const std::string& config_bytes, const uq::EnsembleStats& stats,
                     const std::vector<uq::RandomParam>& dims, double wall_seconds);

/// Slice of a bundle needed by the compare command.
struct BundleStats {
  std::vector<double> time;
  std::vector<double> mean_max_temp;
  std::vector<double> std_max_temp;
  std::vector<std::size_t> snapshot_steps;
  std::vector<std::vector<double>> mean_temp_field;
  std::vector<std::vector<double>> std_temp_field;
};
BundleStats read_uq_bundle(const std::string& directory);

struct CompareRow {
  std::string quantity;
  double epsilon;
};

/// Relative-error report between a freshly computed ensemble and a reference
/// bundle: the mean/std series over the common time prefix and the mean/std
/// temperature fields at every common snapshot year. Throws validation_error
/// when the grids are incompatible.
std::vector<CompareRow> compare_stats(const uq::EnsembleStats& candidate,
                                      const BundleStats& reference);

void write_compare_report(const std::string& directory, const std::vector<CompareRow>& rows);

/// Filesystem failure distinct from validation problems (exit code 3).
class io_failure : public std::runtime_error {
 public:
  explicit io_failure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tline::io
