#include "tline/conductor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tline/errors.hpp"
#include "tline/units.hpp"

namespace tline::physics {

void MaterialParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) {
      throw validation_error(std::string("material parameter must be positive: ") + name);
    }
  };
  positive(young_modulus, "young_modulus");
  positive(damage_layer_width, "damage_layer_width");
  positive(fracture_energy, "fracture_energy");
  positive(density, "density");
  positive(aging_rate, "aging_rate");
  positive(thermal_conductivity, "thermal_conductivity");
  positive(conductivity_ref, "conductivity_ref");
  positive(resistivity_temp_coeff, "resistivity_temp_coeff");
  positive(thermal_expansion, "thermal_expansion");
  positive(reference_temp, "reference_temp");
}

PotentialValues damage_potentials(double phi, double delta) {
  PotentialValues p{};
  if (phi < 0.0) {
    p.h = -delta * phi;
    p.dh = -delta;
    p.hf = 0.0;
    p.dhf = 0.0;
  } else if (phi <= 1.0) {
    p.h = 0.5 * phi * phi;
    p.dh = phi;
    p.hf = -phi;
    p.dhf = -1.0;
  } else {
    p.h = 0.5 + delta * (phi - 1.0);
    p.dh = delta;
    p.hf = -1.0;
    p.dhf = 0.0;
  }
  return p;
}

double cooling_coefficient(const HeatExchange& hx) {
  const double native = 0.0128 * std::sqrt(hx.pressure_atm * hx.wind_ft_s) /
                        (std::pow(hx.air_temp, 0.123) * std::sqrt(hx.diameter_in));
  return env::convert(native, env::Unit::w_per_in2, env::Unit::w_per_m2);
}

double conductivity_at_temp(double theta, const MaterialParams& mat) {
  const double denom = 1.0 + mat.resistivity_temp_coeff * (theta - mat.reference_temp);
  if (!(denom > 0.0)) {
    std::ostringstream msg;
    msg << "non-physical temperature " << theta
        << " K: resistivity correction denominator is " << denom;
    throw validation_error(msg.str());
  }
  return mat.conductivity_ref / denom;
}

double conductivity(double phi, double theta, const MaterialParams& mat) {
  return degradation(phi) * conductivity_at_temp(theta, mat);
}

namespace {

// Stiffness-style coefficients vanish when an element is fully damaged at
// both ends; the assembled row would be zero.
std::size_t find_severed_element(const fem::Mesh1D& mesh, const std::vector<double>& damage,
                                 double tolerance) {
  for (std::size_t e = 0; e < mesh.n_elements; ++e) {
    if (degradation(damage[e]) <= tolerance && degradation(damage[e + 1]) <= tolerance) {
      return e;
    }
  }
  return mesh.n_elements;  // none
}

}  // namespace

fem::LinearSystem build_mechanical(const fem::Mesh1D& mesh, const std::vector<double>& damage,
                                   double tension, const MaterialParams& mat) {
  const std::size_t severed = find_severed_element(mesh, damage, 1e-12);
  if (severed < mesh.n_elements) {
    std::ostringstream msg;
    msg << "material severed: no stiffness left in element " << severed << " near x = "
        << 0.5 * (mesh.node_x[severed] + mesh.node_x[severed + 1]) << " m";
    throw material_severed_error(msg.str(), severed);
  }

  fem::ElementKernel kernel;
  kernel.stiffness = [&](const fem::QuadPoint& q) {
    const double phi = fem::interpolate(damage, q);
    return degradation(phi) * mat.young_modulus * fem::interpolate(mesh.area, q);
  };
  kernel.flux = [&](const fem::QuadPoint& q) {
    const double dphi = fem::element_gradient(damage, mesh, q.element);
    return mat.damage_layer_width * mat.fracture_energy * fem::interpolate(mesh.area, q) * dphi *
           dphi;
  };

  fem::LinearSystem sys = fem::assemble(mesh, kernel);
  sys.rhs.back() += tension;           // point traction at x = L
  fem::apply_dirichlet(sys, 0, 0.0);   // fixed end
  return sys;
}

std::vector<double> update_history(const std::vector<double>& history_old,
                                   const std::vector<double>& displacement,
                                   const fem::Mesh1D& mesh, const MaterialParams& mat) {
  const std::vector<double> strain = fem::nodal_gradient(displacement, mesh);
  std::vector<double> history(history_old.size());
  for (std::size_t i = 0; i < history.size(); ++i) {
    const double energy = mat.young_modulus * strain[i] * strain[i];
    history[i] = std::max(history_old[i], energy);
  }
  return history;
}

fem::LinearSystem build_damage(const fem::Mesh1D& mesh, const std::vector<double>& history,
                               const std::vector<double>& fatigue, const MaterialParams& mat) {
  const double gamma = mat.damage_layer_width;
  const double gc = mat.fracture_energy;

  fem::ElementKernel kernel;
  kernel.stiffness = [&](const fem::QuadPoint& q) {
    return gamma * gc * fem::interpolate(mesh.area, q);
  };
  kernel.mass = [&](const fem::QuadPoint& q) {
    const double area = fem::interpolate(mesh.area, q);
    return fem::interpolate(history, q) * area + gc * area / gamma;
  };
  kernel.source = [&](const fem::QuadPoint& q) {
    const double area = fem::interpolate(mesh.area, q);
    return fem::interpolate(history, q) * area + area * fem::interpolate(fatigue, q) / gamma;
  };
  return fem::assemble(mesh, kernel);  // natural BCs: no Dirichlet rows
}

std::vector<double> step_fatigue(const FieldState& state, const fem::Mesh1D& mesh,
                                 const MaterialParams& mat, double dt) {
  if (!(dt > 0.0)) throw validation_error("fatigue step requires dt > 0");

  const std::vector<double> strain = fem::nodal_gradient(state.displacement, mesh);
  std::vector<double> stress_mag(strain.size());
  for (std::size_t i = 0; i < strain.size(); ++i) {
    stress_mag[i] = std::abs(mat.young_modulus * strain[i]);
  }

  fem::ElementKernel rate_kernel;
  rate_kernel.source = [&](const fem::QuadPoint& q) {
    const double phi = fem::interpolate(state.damage, q);
    const double theta = fem::interpolate(state.temperature, q);
    const double rate = mat.density * mat.aging_rate * (theta / mat.reference_temp) *
                        (1.0 - phi) * fem::interpolate(stress_mag, q) * phi /
                        mat.damage_layer_width;
    return rate * fem::interpolate(mesh.area, q);
  };
  const fem::LinearSystem rate_sys = fem::assemble(mesh, rate_kernel);

  // Lumped mass: row sums of the A N^T N operator.
  fem::ElementKernel mass_kernel;
  mass_kernel.mass = [&](const fem::QuadPoint& q) { return fem::interpolate(mesh.area, q); };
  const fem::LinearSystem mass_sys = fem::assemble(mesh, mass_kernel);

  std::vector<double> fatigue(state.fatigue.size());
  for (std::size_t i = 0; i < fatigue.size(); ++i) {
    double lumped = mass_sys.diag[i];
    if (i > 0) lumped += mass_sys.sub[i];
    if (i + 1 < fatigue.size()) lumped += mass_sys.super[i];
    const double next = state.fatigue[i] + dt * rate_sys.rhs[i] / lumped;
    fatigue[i] = std::max(0.0, next);
  }
  return fatigue;
}

fem::LinearSystem build_thermal(const fem::Mesh1D& mesh, const std::vector<double>& damage,
                                const std::vector<double>& voltage_prev,
                                const std::vector<double>& temperature_prev,
                                const HeatExchange& hx, const MaterialParams& mat) {
  const double film = cooling_coefficient(hx);

  fem::ElementKernel kernel;
  kernel.stiffness = [&](const fem::QuadPoint& q) {
    return mat.thermal_conductivity * fem::interpolate(mesh.area, q);
  };
  kernel.mass = [&](const fem::QuadPoint& q) {
    return film * fem::interpolate(mesh.surf_per_len, q);
  };
  kernel.source = [&](const fem::QuadPoint& q) {
    const double phi = fem::interpolate(damage, q);
    const double theta = fem::interpolate(temperature_prev, q);
    const double grad_v = fem::element_gradient(voltage_prev, mesh, q.element);
    const double joule =
        conductivity(phi, theta, mat) * fem::interpolate(mesh.area, q) * grad_v * grad_v;
    return joule + film * fem::interpolate(mesh.surf_per_len, q) * hx.air_temp;
  };
  return fem::assemble(mesh, kernel);  // zero-flux ends
}

fem::LinearSystem build_voltage(const fem::Mesh1D& mesh, const std::vector<double>& damage,
                                const std::vector<double>& temperature, double current,
                                const MaterialParams& mat, std::vector<std::string>* warnings) {
  if (warnings != nullptr) {
    const std::size_t severed = find_severed_element(mesh, damage, 1e-8);
    if (severed < mesh.n_elements) {
      std::ostringstream msg;
      msg << "near-singular voltage system: conductivity vanished in element " << severed
          << " near x = " << 0.5 * (mesh.node_x[severed] + mesh.node_x[severed + 1]) << " m";
      warnings->push_back(msg.str());
    }
  }

  fem::ElementKernel kernel;
  kernel.stiffness = [&](const fem::QuadPoint& q) {
    const double phi = fem::interpolate(damage, q);
    const double theta = fem::interpolate(temperature, q);
    return conductivity(phi, theta, mat) * fem::interpolate(mesh.area, q);
  };

  fem::LinearSystem sys = fem::assemble(mesh, kernel);
  sys.rhs.back() += std::abs(current);  // J A = I through the end section
  fem::apply_dirichlet(sys, 0, 0.0);
  return sys;
}

}  // namespace tline::physics
