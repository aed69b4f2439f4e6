#pragma once

#include <cstddef>

namespace tline::env {

/// Cyclic load parameterization. Base/amplitude pairs drive yearly sinusoids;
/// the last three fields only act in their respective scenarios.
struct LoadParams {
  double base_air_temp = 288.0;       // K
  double air_temp_amplitude = 10.0;   // K
  double base_wind = 2.0;             // ft/s
  double wind_amplitude = 1.0;        // ft/s
  double base_current = 1500.0;       // A
  double current_amplitude = 100.0;   // A
  double max_wind = 100.0;            // ft/s, scenario 2 seasonal gust level
  double current_rate = 0.1;          // A per step, scenario 3
  double air_temp_rate = 0.001;       // K per step, scenario 4
};

enum class Scenario : int {
  normal_operation = 1,
  seasonal_winds = 2,
  rising_demand = 3,
  rising_air_temp = 4,
};

struct ScenarioConfig {
  Scenario id = Scenario::normal_operation;
  LoadParams loads;
};

/// Instantaneous loading. Tension is filled in by the simulator once the mean
/// conductor temperature of the previous step is known.
struct LoadState {
  double air_temp = 0.0;   // K
  double wind_ft_s = 0.0;  // ft/s
  double current = 0.0;    // A, negative by the sign convention of the cycle
  double tension = 0.0;    // N
};

/// Cyclic loads at time t (years) and step index:
///   theta_air = theta_b + theta_A sin(2 pi t)
///   w_s       = w_b + w_A sin(2 pi t)
///   I         = -I_b - I_A sin(4 pi t)
/// Scenario 2 replaces w_s by max_wind while (step mod 100) lies in [25,30].
/// Scenario 3 advances the base current by current_rate per step, scenario 4
/// the base air temperature by air_temp_rate per step; both reduce to
/// scenario 1 bit-for-bit at rate zero.
LoadState loads_at(double t_years, std::size_t step, const ScenarioConfig& scenario);

/// Sag geometry frozen at the stringing condition: reference sag and length
/// follow from the pre-tension and bare unit weight.
struct SagChain {
  double span = 0.0;               // m
  double pre_tension = 0.0;        // N
  double unit_weight = 0.0;        // N/m, bare cable
  double thermal_expansion = 0.0;  // 1/K
  double ref_temp = 0.0;           // K, temperature at which pre_tension holds
  double ref_sag = 0.0;            // m,  D0 = Wb Sc^2 / (8 H0)
  double ref_length = 0.0;         // m,  L0 = Sc + 8 D0^2 / (3 Sc)
};

SagChain make_sag_chain(double span, double pre_tension, double unit_weight,
                        double thermal_expansion, double ref_temp);

/// Total distributed weight including the wind component:
///   P_w = 0.0025 v^2 (lb/ft^2, v in mph), W_w = P_w d / 12 (lb/ft, d in in),
/// converted to N/m and combined as W = sqrt(Wb^2 + Ww^2).
/// Wind enters in ft/s and the diameter in meters; conversions are internal.
double wind_weight(double wind_ft_s, double diameter_m, double base_weight);

/// Horizontal tension from the sag chain at the given mean conductor
/// temperature: thermal elongation adjusts the sag, which sets the tension
///   L = L0 (1 + alpha_L (theta - ref)), D = sqrt(3 Sc (L - Sc) / 8),
///   H = W Sc^2 / (8 D).
/// Throws validation_error ("sag-chain breakdown") when contraction pulls the
/// cable taut (L <= Sc), reporting the admissible temperature bound.
double tension_at(double mean_temp, double wind_ft_s, double diameter_m, const SagChain& chain);

}  // namespace tline::env
