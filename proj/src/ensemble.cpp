#include "tline/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

#include "tline/errors.hpp"

namespace tline::uq {

void apply_parameter(sim::RunConfig& config, const std::string& name, double value) {
  auto& mat = config.material;
  auto& loads = config.scenario.loads;
  if (name == "area_sigma") config.mesh.area_sigma = value;
  else if (name == "young_modulus") mat.young_modulus = value;
  else if (name == "damage_layer_width") mat.damage_layer_width = value;
  else if (name == "fracture_energy") mat.fracture_energy = value;
  else if (name == "density") mat.density = value;
  else if (name == "aging_rate") mat.aging_rate = value;
  else if (name == "thermal_conductivity") mat.thermal_conductivity = value;
  else if (name == "electrical_conductivity") mat.conductivity_ref = value;
  else if (name == "resistivity_temp_coeff") mat.resistivity_temp_coeff = value;
  else if (name == "thermal_expansion") mat.thermal_expansion = value;
  else if (name == "base_air_temp") loads.base_air_temp = value;
  else if (name == "air_temp_amplitude") loads.air_temp_amplitude = value;
  else if (name == "base_wind") loads.base_wind = value;
  else if (name == "wind_amplitude") loads.wind_amplitude = value;
  else if (name == "base_current") loads.base_current = value;
  else if (name == "current_amplitude") loads.current_amplitude = value;
  else if (name == "max_wind") loads.max_wind = value;
  else if (name == "current_rate") loads.current_rate = value;
  else if (name == "air_temp_rate") loads.air_temp_rate = value;
  else if (name == "pre_tension") config.pre_tension = value;
  else throw validation_error("unknown stochastic parameter: " + name);
}

namespace {

double read_parameter(const sim::RunConfig& config, const std::string& name) {
  const auto& mat = config.material;
  const auto& loads = config.scenario.loads;
  if (name == "area_sigma") return config.mesh.area_sigma;
  if (name == "young_modulus") return mat.young_modulus;
  if (name == "damage_layer_width") return mat.damage_layer_width;
  if (name == "fracture_energy") return mat.fracture_energy;
  if (name == "density") return mat.density;
  if (name == "aging_rate") return mat.aging_rate;
  if (name == "thermal_conductivity") return mat.thermal_conductivity;
  if (name == "electrical_conductivity") return mat.conductivity_ref;
  if (name == "resistivity_temp_coeff") return mat.resistivity_temp_coeff;
  if (name == "thermal_expansion") return mat.thermal_expansion;
  if (name == "base_air_temp") return loads.base_air_temp;
  if (name == "air_temp_amplitude") return loads.air_temp_amplitude;
  if (name == "base_wind") return loads.base_wind;
  if (name == "wind_amplitude") return loads.wind_amplitude;
  if (name == "base_current") return loads.base_current;
  if (name == "current_amplitude") return loads.current_amplitude;
  if (name == "max_wind") return loads.max_wind;
  if (name == "current_rate") return loads.current_rate;
  if (name == "air_temp_rate") return loads.air_temp_rate;
  if (name == "pre_tension") return config.pre_tension;
  throw validation_error("unknown stochastic parameter: " + name);
}

std::size_t resolve_workers(std::size_t workers) {
  if (workers != 0) return workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

/// Runs fn(i) for i in [0, count) across workers, rethrowing the first error.
template <typename Fn>
void parallel_for(std::size_t count, std::size_t workers, Fn&& fn) {
  workers = std::min(resolve_workers(workers), std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

EnsembleRun realize(const sim::RunConfig& base, const std::vector<RandomParam>& dims,
                    const std::vector<double>& values) {
  sim::RunConfig config = base;
  for (std::size_t d = 0; d < dims.size(); ++d) {
    apply_parameter(config, dims[d].name, values[d]);
  }
  const sim::RunResult run_result = sim::run(config);

  EnsembleRun out;
  out.max_temperature = run_result.max_temperature;
  out.h = sim::failure_indicator(run_result, config.temp_limit, config.n_steps);
  out.steps_completed = run_result.steps_completed;
  for (const sim::Snapshot& snap : run_result.snapshots) {
    out.snapshot_steps.push_back(snap.step);
    out.temperature_fields.push_back(snap.fields.temperature);
  }
  return out;
}

/// Common statistics pipeline once all realizations are in. The weight_of
/// callback supplies the measure weight per realization (quadrature weight
/// for PCM, 1/n for MC).
template <typename WeightFn>
EnsembleStats reduce_runs(const std::vector<EnsembleRun>& runs, const sim::RunConfig& base,
                          WeightFn&& weight_of, const CollocationGrid* grid) {
  EnsembleStats stats;
  stats.realizations = runs.size();

  std::size_t common = runs.front().steps_completed;
  for (const auto& r : runs) common = std::min(common, r.steps_completed);
  stats.common_steps = common;

  stats.time.resize(common);
  for (std::size_t t = 0; t < common; ++t) {
    stats.time[t] = static_cast<double>(t + 1) * base.dt;
  }

  std::vector<std::vector<double>> truncated(runs.size());
  std::vector<std::vector<double>> h_series(runs.size());
  for (std::size_t p = 0; p < runs.size(); ++p) {
    truncated[p].assign(runs[p].max_temperature.begin(),
                        runs[p].max_temperature.begin() + static_cast<std::ptrdiff_t>(common));
    h_series[p] = runs[p].h;
  }

  if (grid != nullptr) {
    stats.mean_max_temp = expectation(*grid, truncated);
    stats.std_max_temp = std_dev(*grid, truncated, stats.mean_max_temp);
    stats.sobol = sobol_first_order(*grid, truncated);
    stats.pf = probability_of_failure(*grid, h_series);
  } else {
    const SampleStats s = sample_stats(truncated);
    stats.mean_max_temp = s.mean;
    stats.std_max_temp = s.stddev;
    const SampleStats hs = sample_stats(h_series);
    stats.pf = hs.mean;
    for (double& v : stats.pf) v = std::clamp(v, 0.0, 1.0);
  }

  stats.pf_time.resize(base.n_steps);
  for (std::size_t t = 0; t < base.n_steps; ++t) {
    stats.pf_time[t] = static_cast<double>(t + 1) * base.dt;
  }

  // Field statistics at the snapshot steps every realization reached.
  for (std::size_t s = 0; s < runs.front().snapshot_steps.size(); ++s) {
    const std::size_t step = runs.front().snapshot_steps[s];
    if (step > common) break;
    bool everywhere = true;
    for (const auto& r : runs) {
      if (s >= r.snapshot_steps.size() || r.snapshot_steps[s] != step) {
        everywhere = false;
        break;
      }
    }
    if (!everywhere) break;

    const std::size_t n_nodes = runs.front().temperature_fields[s].size();
    std::vector<double> mean_field(n_nodes, 0.0);
    for (std::size_t p = 0; p < runs.size(); ++p) {
      const double w = weight_of(p);
      for (std::size_t i = 0; i < n_nodes; ++i) {
        mean_field[i] += w * runs[p].temperature_fields[s][i];
      }
    }
    std::vector<double> std_field(n_nodes, 0.0);
    for (std::size_t p = 0; p < runs.size(); ++p) {
      const double w = weight_of(p);
      for (std::size_t i = 0; i < n_nodes; ++i) {
        const double d = runs[p].temperature_fields[s][i] - mean_field[i];
        std_field[i] += w * d * d;
      }
    }
    for (double& v : std_field) v = v > 0.0 ? std::sqrt(v) : 0.0;

    stats.snapshot_steps.push_back(step);
    stats.mean_temp_field.push_back(std::move(mean_field));
    stats.std_temp_field.push_back(std::move(std_field));
  }

  return stats;
}

}  // namespace

RandomParam param_from_config(const sim::RunConfig& config, const std::string& name,
                              double half_width_fraction) {
  return RandomParam{name, read_parameter(config, name), half_width_fraction};
}

std::vector<std::vector<double>> evaluate_grid(
    const CollocationGrid& grid,
    const std::function<std::vector<double>(const std::vector<double>&)>& fn,
    std::size_t workers) {
  std::vector<std::vector<double>> samples(grid.total_points());
  parallel_for(grid.total_points(), workers,
               [&](std::size_t p) { samples[p] = fn(grid.parameter_values(p)); });
  return samples;
}

EnsembleStats run_pcm_ensemble(const sim::RunConfig& base, const std::vector<RandomParam>& dims,
                               std::size_t n_per_dim, std::size_t workers) {
  const CollocationGrid grid(dims, n_per_dim);
  std::vector<EnsembleRun> runs(grid.total_points());
  parallel_for(grid.total_points(), workers,
               [&](std::size_t p) { runs[p] = realize(base, dims, grid.parameter_values(p)); });
  return reduce_runs(runs, base, [&](std::size_t p) { return grid.weight(p); }, &grid);
}

EnsembleStats run_mc_ensemble(const sim::RunConfig& base, const std::vector<RandomParam>& dims,
                              std::size_t n_samples, std::uint64_t seed, std::size_t workers) {
  if (n_samples < 1) throw validation_error("monte carlo needs at least one sample");

  // Draw all parameter vectors up front so results do not depend on worker
  // scheduling.
  std::mt19937_64 rng(seed);
  std::vector<std::vector<double>> values(n_samples, std::vector<double>(dims.size()));
  for (std::size_t s = 0; s < n_samples; ++s) {
    for (std::size_t d = 0; d < dims.size(); ++d) {
      std::uniform_real_distribution<double> dist(dims[d].lower(), dims[d].upper());
      values[s][d] = dist(rng);
    }
  }

  std::vector<EnsembleRun> runs(n_samples);
  parallel_for(n_samples, workers,
               [&](std::size_t s) { runs[s] = realize(base, dims, values[s]); });
  const double w = 1.0 / static_cast<double>(n_samples);
  return reduce_runs(runs, base, [w](std::size_t) { return w; }, nullptr);
}

SampleStats sample_stats(const std::vector<std::vector<double>>& samples) {
  if (samples.empty()) throw validation_error("sample_stats: no samples");
  const std::size_t m = samples.front().size();
  const double n = static_cast<double>(samples.size());

  SampleStats stats;
  stats.mean.assign(m, 0.0);
  for (const auto& s : samples) {
    if (s.size() != m) throw validation_error("sample_stats: series lengths differ");
    for (std::size_t t = 0; t < m; ++t) stats.mean[t] += s[t];
  }
  for (double& v : stats.mean) v /= n;

  stats.stddev.assign(m, 0.0);
  if (samples.size() > 1) {
    for (const auto& s : samples) {
      for (std::size_t t = 0; t < m; ++t) {
        const double d = s[t] - stats.mean[t];
        stats.stddev[t] += d * d;
      }
    }
    for (double& v : stats.stddev) v = std::sqrt(v / (n - 1.0));
  }
  return stats;
}

}  // namespace tline::uq
