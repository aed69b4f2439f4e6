#include "tline/units.hpp"

#include "tline/errors.hpp"

namespace tline::env {

namespace {

enum class Dimension { length, speed, pressure, line_force, heat_flux };

struct UnitInfo {
  Dimension dim;
  double to_si;  // factor to the SI unit of the dimension
};

UnitInfo info(Unit u) {
  switch (u) {
    case Unit::meter:      return {Dimension::length, 1.0};
    case Unit::inch:       return {Dimension::length, 0.0254};
    case Unit::foot:       return {Dimension::length, 0.3048};
    case Unit::m_per_s:    return {Dimension::speed, 1.0};
    case Unit::ft_per_s:   return {Dimension::speed, 0.3048};
    case Unit::mph:        return {Dimension::speed, 0.44704};
    case Unit::pascal:     return {Dimension::pressure, 1.0};
    case Unit::atm:        return {Dimension::pressure, 101325.0};
    case Unit::lb_per_ft2: return {Dimension::pressure, 47.8803};
    case Unit::n_per_m:    return {Dimension::line_force, 1.0};
    case Unit::lb_per_ft:  return {Dimension::line_force, 14.5939};
    case Unit::w_per_m2:   return {Dimension::heat_flux, 1.0};
    case Unit::w_per_in2:  return {Dimension::heat_flux, 1550.0031};
  }
  throw validation_error("unknown unit");
}

}  // namespace

double convert(double value, Unit from, Unit to) {
  const UnitInfo f = info(from);
  const UnitInfo t = info(to);
  if (f.dim != t.dim) {
    throw validation_error("unsupported unit conversion: dimensions differ");
  }
  return value * (f.to_si / t.to_si);
}

}  // namespace tline::env
