#pragma once

namespace tline::env {

/// Units appearing in the handbook formulas. Conversions are exact constant
/// factors between units of the same dimension.
enum class Unit {
  meter,
  inch,          // 0.0254 m
  foot,          // 0.3048 m
  m_per_s,
  ft_per_s,      // 0.3048 m/s
  mph,           // 0.44704 m/s
  pascal,
  atm,           // 101325 Pa
  lb_per_ft2,    // 47.8803 Pa
  n_per_m,
  lb_per_ft,     // 14.5939 N/m
  w_per_m2,
  w_per_in2,     // 1550.0031 W/m^2
};

/// Converts between two units of the same dimension. Throws validation_error
/// for a dimension mismatch.
double convert(double value, Unit from, Unit to);

}  // namespace tline::env
