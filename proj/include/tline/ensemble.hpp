#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "tline/collocation.hpp"
#include "tline/simulator.hpp"

namespace tline::uq {

/// Applies a named stochastic parameter value to a run configuration.
/// Supported names: area_sigma, the material constants, and the load
/// parameters including the scenario extras. Throws validation_error for an
/// unknown name.
void apply_parameter(sim::RunConfig& config, const std::string& name, double value);

/// RandomParam with mean taken from the current value in the config.
RandomParam param_from_config(const sim::RunConfig& config, const std::string& name,
                              double half_width_fraction = 0.10);

/// Evaluates fn at every tensor grid point, fanning realizations across
/// `workers` threads. Results are stored by flat index, so downstream
/// reductions are deterministic regardless of completion order.
std::vector<std::vector<double>> evaluate_grid(
    const CollocationGrid& grid, const std::function<std::vector<double>(const std::vector<double>&)>& fn,
    std::size_t workers = 0);

/// What the ensemble keeps from each realization.
struct EnsembleRun {
  std::vector<double> max_temperature;          // own axis, ends at failure
  std::vector<double> h;                        // full axis
  std::size_t steps_completed = 0;
  std::vector<std::size_t> snapshot_steps;
  std::vector<std::vector<double>> temperature_fields;  // per snapshot
};

struct EnsembleStats {
  std::vector<double> time;           // common truncated axis
  std::vector<double> mean_max_temp;
  std::vector<double> std_max_temp;
  SobolResult sobol;                  // on the truncated axis
  std::vector<double> pf_time;        // full axis
  std::vector<double> pf;
  std::size_t common_steps = 0;       // min completed steps across realizations
  std::vector<std::size_t> snapshot_steps;              // common snapshots
  std::vector<std::vector<double>> mean_temp_field;     // per common snapshot
  std::vector<std::vector<double>> std_temp_field;
  std::size_t realizations = 0;
};

/// Full PCM pipeline over the simulator: n^k realizations on the tensor grid,
/// statistics of max temperature on the common truncated axis (all series cut
/// at the earliest failure), Sobol indices, and the failure probability from
/// the indicator series on the full axis.
EnsembleStats run_pcm_ensemble(const sim::RunConfig& base, const std::vector<RandomParam>& dims,
                               std::size_t n_per_dim, std::size_t workers = 0);

/// Monte Carlo baseline with i.i.d. uniform sampling, same truncation and
/// statistics conventions as the PCM path. Deterministic for a fixed seed.
EnsembleStats run_mc_ensemble(const sim::RunConfig& base, const std::vector<RandomParam>& dims,
                              std::size_t n_samples, std::uint64_t seed,
                              std::size_t workers = 0);

/// Sample-statistics reduction for externally generated realizations
/// (mean, unbiased std, failure fraction per time index).
struct SampleStats {
  std::vector<double> mean;
  std::vector<double> stddev;
};
SampleStats sample_stats(const std::vector<std::vector<double>>& samples);

}  // namespace tline::uq
