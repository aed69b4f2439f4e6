#include "tline/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "tline/errors.hpp"
#include "tline/linear_system.hpp"
#include "tline/units.hpp"

namespace tline::sim {

namespace {

constexpr double kGravity = 9.80665;  // m/s^2

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

double RunConfig::undamaged_area() const {
  return std::numbers::pi * mesh.diameter * mesh.diameter / 4.0;
}

void RunConfig::validate() const {
  material.validate();
  if (!(dt > 0.0)) throw validation_error("dt must be positive");
  if (n_steps < 1) throw validation_error("n_steps must be at least 1");
  if (snapshot_every < 1) throw validation_error("snapshot_every must be at least 1");
  if (!(mesh.diameter > 0.0)) throw validation_error("diameter must be positive");
  const double plausible_air =
      scenario.loads.base_air_temp + std::abs(scenario.loads.air_temp_amplitude);
  if (!(temp_limit > plausible_air)) {
    throw validation_error("temp_limit must exceed the plausible air temperature range");
  }
  if (!(pre_tension > 0.0)) throw validation_error("pre_tension must be positive");
}

RunResult run(const RunConfig& config) {
  config.validate();

  const fem::Mesh1D mesh = fem::build_mesh(config.mesh.length, config.mesh.n_elements,
                                           config.undamaged_area(), config.mesh.area_sigma);
  const physics::MaterialParams& mat = config.material;
  const double diameter_in = env::convert(config.mesh.diameter, env::Unit::meter, env::Unit::inch);
  const std::size_t n_nodes = mesh.n_nodes();

  const env::LoadState initial_loads = env::loads_at(0.0, 0, config.scenario);
  const double unit_weight = mat.density * kGravity * config.undamaged_area();
  const env::SagChain chain = env::make_sag_chain(config.mesh.length, config.pre_tension,
                                                  unit_weight, mat.thermal_expansion,
                                                  initial_loads.air_temp);

  RunResult result;

  physics::FieldState state;
  state.displacement.assign(n_nodes, 0.0);
  state.damage.assign(n_nodes, 0.0);
  state.fatigue.assign(n_nodes, 0.0);
  state.temperature.assign(n_nodes, initial_loads.air_temp);
  state.history.assign(n_nodes, 0.0);
  state.voltage = fem::solve_tridiagonal(physics::build_voltage(
      mesh, state.damage, state.temperature, initial_loads.current, mat, &result.warnings));
  state.time = 0.0;

  result.snapshots.push_back({0, state});

  for (std::size_t step = 1; step <= config.n_steps; ++step) {
    const double t = static_cast<double>(step) * config.dt;
    env::LoadState loads = env::loads_at(t, step, config.scenario);

    try {
      // Tension from the previous step's mean temperature (theta_air at step 1).
      const double mean_temp = mean_of(state.temperature);
      loads.tension = env::tension_at(mean_temp, loads.wind_ft_s, config.mesh.diameter, chain);

      state.displacement = fem::solve_tridiagonal(
          physics::build_mechanical(mesh, state.damage, loads.tension, mat));

      state.history = physics::update_history(state.history, state.displacement, mesh, mat);

      std::vector<double> damage =
          fem::solve_tridiagonal(physics::build_damage(mesh, state.history, state.fatigue, mat));
      for (double& phi : damage) {
        const double excess = std::max(phi - 1.0, -phi);
        if (excess > result.max_damage_overshoot) result.max_damage_overshoot = excess;
        phi = std::clamp(phi, 0.0, 1.0);
      }
      state.damage = std::move(damage);

      // Fatigue sees the fresh displacement and damage but the previous
      // temperature; the thermal solve comes after.
      state.fatigue = physics::step_fatigue(state, mesh, mat, config.dt);

      const physics::HeatExchange hx{config.pressure_atm, loads.wind_ft_s, loads.air_temp,
                                     diameter_in};
      state.temperature = fem::solve_tridiagonal(physics::build_thermal(
          mesh, state.damage, state.voltage, state.temperature, hx, mat));

      state.voltage = fem::solve_tridiagonal(physics::build_voltage(
          mesh, state.damage, state.temperature, loads.current, mat, &result.warnings));
    } catch (const error& e) {
      std::ostringstream msg;
      msg << "step " << step << " (t = " << t << " yr): " << e.what();
      throw error(msg.str());
    }

    state.time = t;

    result.time.push_back(t);
    result.max_damage.push_back(max_of(state.damage));
    result.max_fatigue.push_back(max_of(state.fatigue));
    result.max_temperature.push_back(max_of(state.temperature));
    result.voltage_drop.push_back(std::abs(state.voltage.back()));
    result.loads.push_back(loads);
    result.steps_completed = step;

    if (step % config.snapshot_every == 0) {
      result.snapshots.push_back({step, state});
    }

    if (result.max_temperature.back() > config.temp_limit) {
      result.failed = true;
      result.failure_time = t;
      break;
    }
  }

  return result;
}

std::vector<double> failure_indicator(const RunResult& result, double temp_limit,
                                      std::size_t n_steps_full) {
  std::vector<double> h(n_steps_full, 0.0);
  for (std::size_t i = 0; i < result.max_temperature.size() && i < n_steps_full; ++i) {
    if (limit_state(result.max_temperature[i], temp_limit) < 0.0) {
      std::fill(h.begin() + static_cast<std::ptrdiff_t>(i), h.end(), 1.0);
      break;
    }
  }
  return h;
}

}  // namespace tline::sim
