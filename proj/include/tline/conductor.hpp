#pragma once

#include <string>
#include <vector>

#include "tline/assembly.hpp"
#include "tline/material.hpp"
#include "tline/mesh.hpp"

namespace tline::physics {

/// Nodal solution of all five fields plus the strain-energy history at one
/// instant. Damage stays in [0,1] (clamped after each solve); fatigue and
/// history never decrease between steps.
struct FieldState {
  std::vector<double> displacement;  // m
  std::vector<double> damage;        // -
  std::vector<double> fatigue;       // N/m
  std::vector<double> temperature;   // K
  std::vector<double> voltage;       // V
  std::vector<double> history;       // Pa, running max of strain-energy density
  double time = 0.0;                 // yr
};

/// Stiffness and conductivity multiplier (1-phi)^2.
inline double degradation(double phi) { return (1.0 - phi) * (1.0 - phi); }

/// Piecewise damage-transition potentials and their derivatives. The [0,1]
/// branches are quadratic/linear; outside, the stated linear extensions with
/// slope `delta` apply.
struct PotentialValues {
  double h;    // H(phi)
  double dh;   // H'(phi)
  double hf;   // Hf(phi)
  double dhf;  // Hf'(phi)
};
PotentialValues damage_potentials(double phi, double delta);

/// Inputs of the handbook forced-convection film coefficient, in its native
/// units: pressure in atm, wind in ft/s, diameter in inches, temperature in K.
struct HeatExchange {
  double pressure_atm = 1.0;
  double wind_ft_s = 0.0;
  double air_temp = 288.0;
  double diameter_in = 1.5748;
};

/// Film coefficient c in SI W/(m^2 K):
///   c = 0.0128 sqrt(p v) / (theta_air^0.123 sqrt(d))   [W/(in^2 K)]
/// converted by the in^2 -> m^2 area factor. Zero wind gives zero forced
/// convection.
double cooling_coefficient(const HeatExchange& hx);

/// Degraded, temperature-adjusted electrical conductivity
///   (1-phi)^2 * sigma_ref / (1 + alpha (theta - theta_ref)).
/// Throws validation_error when the temperature correction denominator is
/// non-positive.
double conductivity(double phi, double theta, const MaterialParams& mat);

/// Undegraded conductivity at temperature theta (no damage factor).
double conductivity_at_temp(double theta, const MaterialParams& mat);

/// Displacement system: stiffness (1-phi)^2 Y A B^T B, rhs from the damage
/// gradient term gamma g_c A (dphi/dx)^2 B, fixed end u=0 at x=0 and the
/// horizontal tension applied as a point load at x=L.
/// Throws material_severed_error if some element has no stiffness left
/// (phi ~ 1 at both of its nodes).
fem::LinearSystem build_mechanical(const fem::Mesh1D& mesh, const std::vector<double>& damage,
                                   double tension, const MaterialParams& mat);

/// Running maximum of the strain-energy density Y (du/dx)^2 per node, using
/// the averaged nodal gradient of the freshly solved displacement.
std::vector<double> update_history(const std::vector<double>& history_old,
                                   const std::vector<double>& displacement,
                                   const fem::Mesh1D& mesh, const MaterialParams& mat);

/// Damage system with natural boundary conditions:
///   K = gamma g_c A B^T B + H A N^T N + (g_c A / gamma) N^T N
///   rhs = H A N + (A / gamma) F N
/// Symmetric positive definite for nonnegative history and fatigue.
fem::LinearSystem build_damage(const fem::Mesh1D& mesh, const std::vector<double>& history,
                               const std::vector<double>& fatigue, const MaterialParams& mat);

/// Explicit fatigue step with a lumped (row-sum) mass matrix; the update is
/// pointwise per node. The aging rate is
///   rho a (theta/theta_ref) (1-phi) |Y du/dx| phi / gamma,
/// nonnegative for phi in [0,1], so fatigue never decreases. Result clamped
/// below at zero.
std::vector<double> step_fatigue(const FieldState& state, const fem::Mesh1D& mesh,
                                 const MaterialParams& mat, double dt);

/// Steady heat balance: conduction + convective exchange against Joule
/// heating from the previous-step voltage gradient. sigma_E is evaluated at
/// the previous-step temperature (one lagged pass per step). Zero-flux ends.
fem::LinearSystem build_thermal(const fem::Mesh1D& mesh, const std::vector<double>& damage,
                                const std::vector<double>& voltage_prev,
                                const std::vector<double>& temperature_prev,
                                const HeatExchange& hx, const MaterialParams& mat);

/// Current conservation: K = (1-phi)^2 sigma_{E,T} A B^T B with V=0 at x=0
/// and the full current |I| injected at x=L. If damage has nearly severed the
/// conductor somewhere, appends a near-singular warning naming the location.
fem::LinearSystem build_voltage(const fem::Mesh1D& mesh, const std::vector<double>& damage,
                                const std::vector<double>& temperature, double current,
                                const MaterialParams& mat,
                                std::vector<std::string>* warnings = nullptr);

}  // namespace tline::physics
