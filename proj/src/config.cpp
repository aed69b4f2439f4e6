#include "tline/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "tline/ensemble.hpp"
#include "tline/errors.hpp"

namespace tline::io {

namespace {

using nlohmann::json;

[[noreturn]] void bad_key(const std::string& block, const std::string& key) {
  throw validation_error("unknown key '" + key + "' in config block '" + block + "'");
}

void check_keys(const json& obj, const std::string& block, const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw validation_error("config block '" + block + "' must be an object");
  for (const auto& item : obj.items()) {
    if (!allowed.contains(item.key())) bad_key(block, item.key());
  }
}

double get_number(const json& obj, const std::string& block, const std::string& key,
                  double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) {
    throw validation_error("config key '" + block + "." + key + "' must be a number");
  }
  return v.get<double>();
}

std::size_t get_count(const json& obj, const std::string& block, const std::string& key,
                      std::size_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_unsigned()) {
    throw validation_error("config key '" + block + "." + key + "' must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

std::string get_string(const json& obj, const std::string& block, const std::string& key,
                       const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) {
    throw validation_error("config key '" + block + "." + key + "' must be a string");
  }
  return v.get<std::string>();
}

}  // namespace

env::LoadParams scenario_default_loads(env::Scenario id) {
  env::LoadParams loads;
  if (id == env::Scenario::seasonal_winds) loads.base_air_temp = 293.0;
  return loads;
}

ConfigFile parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw validation_error(std::string("config parse error: ") + e.what());
  }
  check_keys(root, "<top>", {"mesh", "material", "load", "scenario", "run", "stochastic",
                             "output"});

  ConfigFile config;

  // Scenario first: its id selects the load defaults.
  if (root.contains("scenario")) {
    const json& s = root.at("scenario");
    check_keys(s, "scenario", {"id", "max_wind", "current_rate", "air_temp_rate"});
    const std::size_t id = get_count(s, "scenario", "id", 1);
    if (id < 1 || id > 4) throw validation_error("scenario.id must be 1, 2, 3 or 4");
    config.run.scenario.id = static_cast<env::Scenario>(id);
  }
  config.run.scenario.loads = scenario_default_loads(config.run.scenario.id);
  if (root.contains("scenario")) {
    const json& s = root.at("scenario");
    auto& loads = config.run.scenario.loads;
    loads.max_wind = get_number(s, "scenario", "max_wind", loads.max_wind);
    loads.current_rate = get_number(s, "scenario", "current_rate", loads.current_rate);
    loads.air_temp_rate = get_number(s, "scenario", "air_temp_rate", loads.air_temp_rate);
  }

  if (root.contains("mesh")) {
    const json& m = root.at("mesh");
    check_keys(m, "mesh", {"length", "n_elements", "diameter", "area_sigma"});
    auto& mesh = config.run.mesh;
    mesh.length = get_number(m, "mesh", "length", mesh.length);
    mesh.n_elements = get_count(m, "mesh", "n_elements", mesh.n_elements);
    mesh.diameter = get_number(m, "mesh", "diameter", mesh.diameter);
    mesh.area_sigma = get_number(m, "mesh", "area_sigma", mesh.area_sigma);
  }

  if (root.contains("material")) {
    const json& m = root.at("material");
    check_keys(m, "material",
               {"young_modulus", "damage_layer_width", "fracture_energy", "density", "aging_rate",
                "thermal_conductivity", "electrical_conductivity", "resistivity_temp_coeff",
                "thermal_expansion", "reference_temp"});
    auto& mat = config.run.material;
    mat.young_modulus = get_number(m, "material", "young_modulus", mat.young_modulus);
    mat.damage_layer_width = get_number(m, "material", "damage_layer_width", mat.damage_layer_width);
    mat.fracture_energy = get_number(m, "material", "fracture_energy", mat.fracture_energy);
    mat.density = get_number(m, "material", "density", mat.density);
    mat.aging_rate = get_number(m, "material", "aging_rate", mat.aging_rate);
    mat.thermal_conductivity =
        get_number(m, "material", "thermal_conductivity", mat.thermal_conductivity);
    mat.conductivity_ref = get_number(m, "material", "electrical_conductivity", mat.conductivity_ref);
    mat.resistivity_temp_coeff =
        get_number(m, "material", "resistivity_temp_coeff", mat.resistivity_temp_coeff);
    mat.thermal_expansion = get_number(m, "material", "thermal_expansion", mat.thermal_expansion);
    mat.reference_temp = get_number(m, "material", "reference_temp", mat.reference_temp);
  }

  if (root.contains("load")) {
    const json& l = root.at("load");
    check_keys(l, "load",
               {"base_air_temp", "air_temp_amplitude", "base_wind", "wind_amplitude",
                "base_current", "current_amplitude", "pre_tension", "pressure_atm"});
    auto& loads = config.run.scenario.loads;
    loads.base_air_temp = get_number(l, "load", "base_air_temp", loads.base_air_temp);
    loads.air_temp_amplitude = get_number(l, "load", "air_temp_amplitude", loads.air_temp_amplitude);
    loads.base_wind = get_number(l, "load", "base_wind", loads.base_wind);
    loads.wind_amplitude = get_number(l, "load", "wind_amplitude", loads.wind_amplitude);
    loads.base_current = get_number(l, "load", "base_current", loads.base_current);
    loads.current_amplitude = get_number(l, "load", "current_amplitude", loads.current_amplitude);
    config.run.pre_tension = get_number(l, "load", "pre_tension", config.run.pre_tension);
    config.run.pressure_atm = get_number(l, "load", "pressure_atm", config.run.pressure_atm);
  }

  if (root.contains("run")) {
    const json& r = root.at("run");
    check_keys(r, "run", {"n_steps", "dt", "temp_limit", "snapshot_every"});
    config.run.n_steps = get_count(r, "run", "n_steps", config.run.n_steps);
    config.run.dt = get_number(r, "run", "dt", config.run.dt);
    config.run.temp_limit = get_number(r, "run", "temp_limit", config.run.temp_limit);
    config.run.snapshot_every = get_count(r, "run", "snapshot_every", config.run.snapshot_every);
  }

  if (root.contains("stochastic")) {
    const json& s = root.at("stochastic");
    check_keys(s, "stochastic", {"mode", "n_per_dim", "mc_samples", "seed", "params"});
    config.stochastic.present = true;
    const std::string mode = get_string(s, "stochastic", "mode", "pcm");
    if (mode == "pcm") config.stochastic.mode = UqMode::pcm;
    else if (mode == "mc") config.stochastic.mode = UqMode::mc;
    else throw validation_error("stochastic.mode must be 'pcm' or 'mc'");
    config.stochastic.n_per_dim = get_count(s, "stochastic", "n_per_dim", 5);
    config.stochastic.mc_samples = get_count(s, "stochastic", "mc_samples", 10000);
    if (s.contains("seed")) {
      if (!s.at("seed").is_number_unsigned()) {
        throw validation_error("stochastic.seed must be a nonnegative integer");
      }
      config.stochastic.seed = s.at("seed").get<std::uint64_t>();
    }
    if (s.contains("params")) {
      if (!s.at("params").is_array()) {
        throw validation_error("stochastic.params must be an array");
      }
      for (const json& p : s.at("params")) {
        check_keys(p, "stochastic.params[]", {"name", "half_width_fraction", "mean"});
        StochasticParamSpec spec;
        spec.name = get_string(p, "stochastic.params[]", "name", "");
        if (spec.name.empty()) {
          throw validation_error("stochastic.params[] entries need a 'name'");
        }
        spec.half_width_fraction =
            get_number(p, "stochastic.params[]", "half_width_fraction", 0.10);
        if (p.contains("mean")) {
          spec.has_mean_override = true;
          spec.mean_override = get_number(p, "stochastic.params[]", "mean", 0.0);
        }
        config.stochastic.params.push_back(spec);
      }
    }
  }

  if (root.contains("output")) {
    const json& o = root.at("output");
    check_keys(o, "output", {"directory", "formats"});
    config.output.directory = get_string(o, "output", "directory", config.output.directory);
    if (o.contains("formats")) {
      if (!o.at("formats").is_array()) throw validation_error("output.formats must be an array");
      config.output.formats.clear();
      for (const json& f : o.at("formats")) {
        if (!f.is_string()) throw validation_error("output.formats entries must be strings");
        config.output.formats.push_back(f.get<std::string>());
      }
    }
  }

  return config;
}

ConfigFile load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw validation_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const ConfigFile& config) {
  json root;
  const auto& run = config.run;

  root["mesh"] = {{"length", run.mesh.length},
                  {"n_elements", run.mesh.n_elements},
                  {"diameter", run.mesh.diameter},
                  {"area_sigma", run.mesh.area_sigma}};
  root["material"] = {{"young_modulus", run.material.young_modulus},
                      {"damage_layer_width", run.material.damage_layer_width},
                      {"fracture_energy", run.material.fracture_energy},
                      {"density", run.material.density},
                      {"aging_rate", run.material.aging_rate},
                      {"thermal_conductivity", run.material.thermal_conductivity},
                      {"electrical_conductivity", run.material.conductivity_ref},
                      {"resistivity_temp_coeff", run.material.resistivity_temp_coeff},
                      {"thermal_expansion", run.material.thermal_expansion},
                      {"reference_temp", run.material.reference_temp}};
  root["load"] = {{"base_air_temp", run.scenario.loads.base_air_temp},
                  {"air_temp_amplitude", run.scenario.loads.air_temp_amplitude},
                  {"base_wind", run.scenario.loads.base_wind},
                  {"wind_amplitude", run.scenario.loads.wind_amplitude},
                  {"base_current", run.scenario.loads.base_current},
                  {"current_amplitude", run.scenario.loads.current_amplitude},
                  {"pre_tension", run.pre_tension},
                  {"pressure_atm", run.pressure_atm}};
  root["scenario"] = {{"id", static_cast<int>(run.scenario.id)},
                      {"max_wind", run.scenario.loads.max_wind},
                      {"current_rate", run.scenario.loads.current_rate},
                      {"air_temp_rate", run.scenario.loads.air_temp_rate}};
  root["run"] = {{"n_steps", run.n_steps},
                 {"dt", run.dt},
                 {"temp_limit", run.temp_limit},
                 {"snapshot_every", run.snapshot_every}};
  if (config.stochastic.present) {
    json params = json::array();
    for (const auto& p : config.stochastic.params) {
      json entry = {{"name", p.name}, {"half_width_fraction", p.half_width_fraction}};
      if (p.has_mean_override) entry["mean"] = p.mean_override;
      params.push_back(entry);
    }
    root["stochastic"] = {{"mode", config.stochastic.mode == UqMode::pcm ? "pcm" : "mc"},
                          {"n_per_dim", config.stochastic.n_per_dim},
                          {"mc_samples", config.stochastic.mc_samples},
                          {"seed", config.stochastic.seed},
                          {"params", params}};
  }
  root["output"] = {{"directory", config.output.directory}, {"formats", config.output.formats}};

  return root.dump(2) + "\n";
}

std::vector<uq::RandomParam> stochastic_dims(const ConfigFile& config) {
  if (!config.stochastic.present || config.stochastic.params.empty()) {
    throw validation_error("uq requires a stochastic block with at least one parameter");
  }
  std::vector<uq::RandomParam> dims;
  for (const auto& spec : config.stochastic.params) {
    uq::RandomParam p =
        uq::param_from_config(config.run, spec.name, spec.half_width_fraction);
    if (spec.has_mean_override) p.mean = spec.mean_override;
    dims.push_back(p);
  }
  return dims;
}

}  // namespace tline::io
