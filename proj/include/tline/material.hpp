#pragma once

namespace tline::physics {

/// Material constants for an aluminum conductor. Defaults are the reference
/// values used throughout; all must be strictly positive.
struct MaterialParams {
  double young_modulus = 69e9;            // Pa
  double damage_layer_width = 0.02;       // m
  double fracture_energy = 10e3;          // N/m
  double density = 2700.0;                // kg/m^3
  double aging_rate = 1e-10;              // m^5/(yr kg)
  double thermal_conductivity = 237.0;    // W/(m K)
  double conductivity_ref = 3.77e7;       // S/m, at reference_temp
  double resistivity_temp_coeff = 3.9e-3; // 1/K, positive for metals
  double thermal_expansion = 2.3e-5;      // 1/K
  double reference_temp = 288.0;          // K

  /// Throws validation_error if any constant is non-positive.
  void validate() const;
};

}  // namespace tline::physics
