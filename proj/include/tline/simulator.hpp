#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tline/conductor.hpp"
#include "tline/environment.hpp"
#include "tline/material.hpp"
#include "tline/mesh.hpp"

namespace tline::sim {

struct MeshSpec {
  double length = 200.0;        // m
  std::size_t n_elements = 1000;
  double diameter = 0.04;       // m, undamaged
  double area_sigma = 2.5;      // damage precursor spread
};

struct RunConfig {
  MeshSpec mesh;
  physics::MaterialParams material;
  env::ScenarioConfig scenario;
  double pre_tension = 40e3;      // N
  double pressure_atm = 1.0;
  std::size_t n_steps = 4000;
  double dt = 0.01;               // yr
  double temp_limit = 373.0;      // K, stop threshold
  std::size_t snapshot_every = 500;

  void validate() const;
  double undamaged_area() const;  // pi d^2 / 4
};

/// Full nodal fields captured at one recorded step.
struct Snapshot {
  std::size_t step = 0;
  physics::FieldState fields;
};

/// Per-step series plus snapshots. When the temperature limit is crossed the
/// series end at the failing step (inclusive) and failure_time is set.
struct RunResult {
  std::vector<double> time;             // yr, one entry per completed step
  std::vector<double> max_damage;
  std::vector<double> max_fatigue;      // N/m
  std::vector<double> max_temperature;  // K
  std::vector<double> voltage_drop;     // V, |V(L)| per step
  std::vector<env::LoadState> loads;    // load trace per step
  std::vector<Snapshot> snapshots;
  bool failed = false;
  std::optional<double> failure_time;   // yr
  std::size_t steps_completed = 0;
  double max_damage_overshoot = 0.0;    // worst pre-clamp excursion outside [0,1]
  std::vector<std::string> warnings;
};

/// Staggered quasi-static loop. Per step: tension from the sag chain at the
/// previous mean temperature, then displacement, history, damage, fatigue,
/// temperature, voltage, in that order. Stops early when max temperature
/// exceeds temp_limit. Deterministic: identical configs give identical
/// results.
RunResult run(const RunConfig& config);

/// Limit state g = temp_limit - max_temp; failure when negative.
inline double limit_state(double max_temp, double temp_limit) { return temp_limit - max_temp; }

/// Bernoulli failure indicator over the full (untruncated) step axis: 0 until
/// the first limit crossing in the recorded series, 1 from there on
/// (absorbing).
std::vector<double> failure_indicator(const RunResult& result, double temp_limit,
                                      std::size_t n_steps_full);

}  // namespace tline::sim
