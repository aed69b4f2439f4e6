#include "tline/output.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "tline/errors.hpp"

namespace tline::io {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_failure("cannot open output file: " + path.string());
  return out;
}

void ensure_dir(const std::string& directory) {
  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec) throw io_failure("cannot create output directory " + directory + ": " + ec.message());
}

std::string year_label(std::size_t step, double dt) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04.0f", static_cast<double>(step) * dt * 100.0);
  return buf;  // centiyears keep the label integral for common dt choices
}

void write_field_csv(const fs::path& path, const std::vector<double>& x,
                     const std::vector<std::pair<std::string, const std::vector<double>*>>& cols) {
  std::ofstream out = open_out(path);
  out << "x [m]";
  for (const auto& c : cols) out << "," << c.first;
  out << "\n";
  for (std::size_t i = 0; i < x.size(); ++i) {
    out << format_number(x[i]);
    for (const auto& c : cols) out << "," << format_number((*c.second)[i]);
    out << "\n";
  }
}

}  // namespace

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.8e", value);
  return buf;
}

namespace {

json manifest_common(const ConfigFile& config, const std::string& config_bytes,
                     double wall_seconds) {
  char hash_hex[32];
  std::snprintf(hash_hex, sizeof(hash_hex), "%016llx",
                static_cast<unsigned long long>(fnv1a64(config_bytes)));
  json manifest;
  manifest["config_hash"] = hash_hex;
  manifest["tool"] = "tline";
  manifest["version"] = "1.0.0";
  manifest["scenario"] = static_cast<int>(config.run.scenario.id);
  manifest["n_steps"] = config.run.n_steps;
  manifest["dt"] = config.run.dt;
  manifest["n_elements"] = config.run.mesh.n_elements;
  manifest["wall_seconds"] = wall_seconds;
  return manifest;
}

}  // namespace

void write_run_bundle(const std::string& directory, const ConfigFile& config,
                      const std::string& config_bytes, const sim::RunResult& result,
                      double wall_seconds) {
  ensure_dir(directory);
  const fs::path dir(directory);

  json manifest = manifest_common(config, config_bytes, wall_seconds);
  manifest["command"] = "run";
  manifest["failed"] = result.failed;
  if (result.failure_time) manifest["failure_time_yr"] = *result.failure_time;
  manifest["steps_completed"] = result.steps_completed;
  manifest["max_damage_overshoot"] = result.max_damage_overshoot;
  manifest["warnings"] = result.warnings;
  open_out(dir / "manifest.json") << manifest.dump(2) << "\n";

  {
    std::ofstream out = open_out(dir / "timeseries.csv");
    out << "t [yr],max_phi [-],max_fatigue [N/m],max_theta [K],delta_V [V]\n";
    for (std::size_t i = 0; i < result.time.size(); ++i) {
      out << format_number(result.time[i]) << "," << format_number(result.max_damage[i]) << ","
          << format_number(result.max_fatigue[i]) << ","
          << format_number(result.max_temperature[i]) << ","
          << format_number(result.voltage_drop[i]) << "\n";
    }
  }

  const fem::Mesh1D mesh = fem::build_mesh(config.run.mesh.length, config.run.mesh.n_elements,
                                           config.run.undamaged_area(),
                                           config.run.mesh.area_sigma);
  for (const sim::Snapshot& snap : result.snapshots) {
    const auto& f = snap.fields;
    write_field_csv(dir / ("fields_" + year_label(snap.step, config.run.dt) + ".csv"),
                    mesh.node_x,
                    {{"u [m]", &f.displacement},
                     {"phi [-]", &f.damage},
                     {"fatigue [N/m]", &f.fatigue},
                     {"theta [K]", &f.temperature},
                     {"V [V]", &f.voltage},
                     {"history [Pa]", &f.history}});
  }
}

void write_uq_bundle(const std::string& directory, const ConfigFile& config,
                     const std::string& config_bytes, const uq::EnsembleStats& stats,
                     const std::vector<uq::RandomParam>& dims, double wall_seconds) {
  ensure_dir(directory);
  const fs::path dir(directory);

  json manifest = manifest_common(config, config_bytes, wall_seconds);
  manifest["command"] = "uq";
  manifest["mode"] = config.stochastic.mode == UqMode::pcm ? "pcm" : "mc";
  manifest["realizations"] = stats.realizations;
  manifest["common_steps"] = stats.common_steps;
  json dim_list = json::array();
  for (const auto& d : dims) {
    dim_list.push_back({{"name", d.name},
                        {"mean", d.mean},
                        {"half_width_fraction", d.half_width_fraction}});
  }
  manifest["params"] = dim_list;
  if (config.stochastic.mode == UqMode::mc) {
    manifest["seed"] = config.stochastic.seed;
    manifest["mc_samples"] = config.stochastic.mc_samples;
  } else {
    manifest["n_per_dim"] = config.stochastic.n_per_dim;
  }
  open_out(dir / "manifest.json") << manifest.dump(2) << "\n";

  {
    std::ofstream out = open_out(dir / "stats.csv");
    out << "t [yr],mean_max_theta [K],std_max_theta [K]\n";
    for (std::size_t i = 0; i < stats.time.size(); ++i) {
      out << format_number(stats.time[i]) << "," << format_number(stats.mean_max_temp[i]) << ","
          << format_number(stats.std_max_temp[i]) << "\n";
    }
  }

  if (!stats.sobol.indices.empty()) {
    std::ofstream out = open_out(dir / "sobol.csv");
    out << "t [yr]";
    for (const auto& d : dims) out << ",S_" << d.name << " [-]";
    out << ",defined [0/1]\n";
    for (std::size_t i = 0; i < stats.time.size(); ++i) {
      out << format_number(stats.time[i]);
      for (std::size_t j = 0; j < stats.sobol.indices.size(); ++j) {
        out << "," << format_number(stats.sobol.indices[j][i]);
      }
      out << "," << (stats.sobol.defined[i] ? 1 : 0) << "\n";
    }
  }

  {
    std::ofstream out = open_out(dir / "pf.csv");
    out << "t [yr],p_f [-]\n";
    for (std::size_t i = 0; i < stats.pf_time.size(); ++i) {
      out << format_number(stats.pf_time[i]) << "," << format_number(stats.pf[i]) << "\n";
    }
  }

  const fem::Mesh1D mesh = fem::build_mesh(config.run.mesh.length, config.run.mesh.n_elements,
                                           config.run.undamaged_area(),
                                           config.run.mesh.area_sigma);
  for (std::size_t s = 0; s < stats.snapshot_steps.size(); ++s) {
    const std::string label = year_label(stats.snapshot_steps[s], config.run.dt);
    write_field_csv(dir / ("fields_mean_" + label + ".csv"), mesh.node_x,
                    {{"mean_theta [K]", &stats.mean_temp_field[s]}});
    write_field_csv(dir / ("fields_std_" + label + ".csv"), mesh.node_x,
                    {{"std_theta [K]", &stats.std_temp_field[s]}});
  }

  {
    std::ofstream out = open_out(dir / "snapshot_steps.csv");
    out << "step [-]\n";
    for (std::size_t step : stats.snapshot_steps) out << step << "\n";
  }
}

namespace {

std::vector<std::vector<double>> read_csv_columns(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw io_failure("cannot open bundle file: " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw io_failure("empty bundle file: " + path.string());
  std::vector<std::vector<double>> cols;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::size_t c = 0;
    while (std::getline(ss, cell, ',')) {
      if (c >= cols.size()) cols.emplace_back();
      cols[c].push_back(std::stod(cell));
      ++c;
    }
  }
  return cols;
}

}  // namespace

BundleStats read_uq_bundle(const std::string& directory) {
  const fs::path dir(directory);
  BundleStats bundle;

  const auto stats_cols = read_csv_columns(dir / "stats.csv");
  if (stats_cols.size() < 3) throw io_failure("stats.csv lacks expected columns");
  bundle.time = stats_cols[0];
  bundle.mean_max_temp = stats_cols[1];
  bundle.std_max_temp = stats_cols[2];

  const fs::path steps_path = dir / "snapshot_steps.csv";
  if (fs::exists(steps_path)) {
    std::ifstream in(steps_path);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      bundle.snapshot_steps.push_back(static_cast<std::size_t>(std::stoull(line)));
    }
    std::ifstream manifest_in(dir / "manifest.json");
    if (!manifest_in) throw io_failure("missing manifest.json in " + directory);
    const json manifest = json::parse(manifest_in);
    const double dt = manifest.at("dt").get<double>();
    for (std::size_t step : bundle.snapshot_steps) {
      const std::string label = year_label(step, dt);
      const auto mean_cols = read_csv_columns(dir / ("fields_mean_" + label + ".csv"));
      const auto std_cols = read_csv_columns(dir / ("fields_std_" + label + ".csv"));
      if (mean_cols.size() < 2 || std_cols.size() < 2) {
        throw io_failure("field stats files lack expected columns");
      }
      bundle.mean_temp_field.push_back(mean_cols[1]);
      bundle.std_temp_field.push_back(std_cols[1]);
    }
  }
  return bundle;
}

std::vector<CompareRow> compare_stats(const uq::EnsembleStats& candidate,
                                      const BundleStats& reference) {
  const std::size_t common = std::min(candidate.time.size(), reference.time.size());
  if (common == 0) throw validation_error("compare: no overlapping time steps");
  for (std::size_t i = 0; i < common; ++i) {
    if (candidate.time[i] != reference.time[i]) {
      throw validation_error("compare: incompatible time grids (dt differs)");
    }
  }

  auto prefix = [common](const std::vector<double>& v) {
    return std::vector<double>(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(common));
  };

  std::vector<CompareRow> rows;
  rows.push_back({"mean_max_theta", uq::relative_error(prefix(candidate.mean_max_temp),
                                                       prefix(reference.mean_max_temp))});
  rows.push_back({"std_max_theta", uq::relative_error(prefix(candidate.std_max_temp),
                                                      prefix(reference.std_max_temp))});

  for (std::size_t s = 0; s < candidate.snapshot_steps.size(); ++s) {
    for (std::size_t r = 0; r < reference.snapshot_steps.size(); ++r) {
      if (reference.snapshot_steps[r] != candidate.snapshot_steps[s]) continue;
      if (reference.mean_temp_field[r].size() != candidate.mean_temp_field[s].size()) {
        throw validation_error("compare: incompatible mesh (field sizes differ)");
      }
      const std::string tag = "@step" + std::to_string(candidate.snapshot_steps[s]);
      rows.push_back({"mean_theta_field" + tag,
                      uq::relative_error(candidate.mean_temp_field[s],
                                         reference.mean_temp_field[r])});
      // The std field can be identically zero in degenerate setups; guard the
      // reference norm.
      bool nonzero = false;
      for (double v : reference.std_temp_field[r]) {
        if (v != 0.0) nonzero = true;
      }
      if (nonzero) {
        rows.push_back({"std_theta_field" + tag,
                        uq::relative_error(candidate.std_temp_field[s],
                                           reference.std_temp_field[r])});
      }
    }
  }
  return rows;
}

void write_compare_report(const std::string& directory, const std::vector<CompareRow>& rows) {
  ensure_dir(directory);
  std::ofstream out = open_out(fs::path(directory) / "compare.csv");
  out << "quantity,epsilon [-]\n";
  for (const auto& row : rows) {
    out << row.quantity << "," << format_number(row.epsilon) << "\n";
  }
}

}  // namespace tline::io
