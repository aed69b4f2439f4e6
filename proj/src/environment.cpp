#include "tline/environment.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "tline/errors.hpp"
#include "tline/units.hpp"

namespace tline::env {

LoadState loads_at(double t_years, std::size_t step, const ScenarioConfig& scenario) {
  const LoadParams& p = scenario.loads;
  if (t_years < 0.0) throw validation_error("loads_at requires t >= 0");

  // Reduce to the yearly phase first so the cycles are exactly periodic.
  const double phase = t_years - std::floor(t_years);

  double base_air = p.base_air_temp;
  double base_current = p.base_current;
  double wind = p.base_wind + p.wind_amplitude * std::sin(2.0 * std::numbers::pi * phase);

  switch (scenario.id) {
    case Scenario::normal_operation:
      break;
    case Scenario::seasonal_winds: {
      const std::size_t year_step = step % 100;
      if (year_step >= 25 && year_step <= 30) wind = p.max_wind;
      break;
    }
    case Scenario::rising_demand:
      base_current += p.current_rate * static_cast<double>(step);
      break;
    case Scenario::rising_air_temp:
      base_air += p.air_temp_rate * static_cast<double>(step);
      break;
    default:
      throw validation_error("unknown scenario id");
  }

  LoadState state;
  state.air_temp = base_air + p.air_temp_amplitude * std::sin(2.0 * std::numbers::pi * phase);
  state.wind_ft_s = wind;
  state.current = -base_current - p.current_amplitude * std::sin(4.0 * std::numbers::pi * phase);
  state.tension = 0.0;
  return state;
}

SagChain make_sag_chain(double span, double pre_tension, double unit_weight,
                        double thermal_expansion, double ref_temp) {
  if (!(span > 0.0) || !(pre_tension > 0.0) || !(unit_weight > 0.0)) {
    throw validation_error("sag chain needs positive span, pre-tension and unit weight");
  }
  SagChain chain;
  chain.span = span;
  chain.pre_tension = pre_tension;
  chain.unit_weight = unit_weight;
  chain.thermal_expansion = thermal_expansion;
  chain.ref_temp = ref_temp;
  chain.ref_sag = unit_weight * span * span / (8.0 * pre_tension);
  chain.ref_length = span + 8.0 * chain.ref_sag * chain.ref_sag / (3.0 * span);
  return chain;
}

double wind_weight(double wind_ft_s, double diameter_m, double base_weight) {
  if (wind_ft_s < 0.0) throw validation_error("wind speed must be nonnegative");
  const double v_mph = convert(wind_ft_s, Unit::ft_per_s, Unit::mph);
  const double d_in = convert(diameter_m, Unit::meter, Unit::inch);
  const double pressure_lb_ft2 = 0.0025 * v_mph * v_mph;
  const double ww_lb_ft = pressure_lb_ft2 * d_in / 12.0;
  const double ww = convert(ww_lb_ft, Unit::lb_per_ft, Unit::n_per_m);
  return std::sqrt(base_weight * base_weight + ww * ww);
}

double tension_at(double mean_temp, double wind_ft_s, double diameter_m, const SagChain& chain) {
  const double delta_temp = mean_temp - chain.ref_temp;
  const double length = chain.ref_length * (1.0 + chain.thermal_expansion * delta_temp);
  if (!(length > chain.span)) {
    const double bound = (chain.span / chain.ref_length - 1.0) / chain.thermal_expansion;
    std::ostringstream msg;
    msg << "sag-chain breakdown: cable contracted taut (L <= span); requires"
        << " delta_temp > " << bound << " K, got " << delta_temp << " K";
    throw validation_error(msg.str());
  }
  const double sag = std::sqrt(3.0 * chain.span * (length - chain.span) / 8.0);
  const double total_weight = wind_weight(wind_ft_s, diameter_m, chain.unit_weight);
  return total_weight * chain.span * chain.span / (8.0 * sag);
}

}  // namespace tline::env
