#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tline/collocation.hpp"
#include "tline/simulator.hpp"

namespace tline::io {

enum class UqMode { pcm, mc };

struct StochasticParamSpec {
  std::string name;
  double half_width_fraction = 0.10;
  bool has_mean_override = false;
  double mean_override = 0.0;
};

struct StochasticBlock {
  UqMode mode = UqMode::pcm;
  std::size_t n_per_dim = 5;
  std::size_t mc_samples = 10000;
  std::uint64_t seed = 0;
  std::vector<StochasticParamSpec> params;
  bool present = false;
};

struct OutputBlock {
  std::string directory = "out";
  std::vector<std::string> formats = {"csv"};
};

/// Parsed configuration file. Omitted blocks and keys fall back to the
/// reference defaults; scenario 2 raises the default base air temperature to
/// 293 K unless the load block overrides it.
struct ConfigFile {
  sim::RunConfig run;
  StochasticBlock stochastic;
  OutputBlock output;
};

/// Strict JSON parse: unknown keys anywhere are rejected with the offending
/// block and key named. Throws validation_error.
ConfigFile parse_config(const std::string& json_text);
ConfigFile load_config(const std::string& path);

/// Canonical serialization; parse(serialize(c)) reproduces c exactly.
std::string serialize_config(const ConfigFile& config);

/// Reference load parameters per scenario (scenario 2 uses the warmer base
/// air temperature).
env::LoadParams scenario_default_loads(env::Scenario id);

/// Collocation dimensions from the stochastic block, means taken from the
/// run config unless overridden.
std::vector<uq::RandomParam> stochastic_dims(const ConfigFile& config);

}  // namespace tline::io
