#include "tline/mesh.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "tline/errors.hpp"

namespace tline::fem {

Mesh1D build_mesh(double length, std::size_t n_elements, double area0, double area_sigma) {
  if (!(length > 0.0)) throw validation_error("mesh length must be positive");
  if (n_elements < 2) throw validation_error("mesh needs at least 2 elements");
  if (!(area0 > 0.0)) throw validation_error("undamaged area must be positive");

  const double positivity_bound = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  if (!(area_sigma > positivity_bound)) {
    std::ostringstream msg;
    msg << "area_sigma = " << area_sigma << " makes the center area non-positive"
        << " (requires area_sigma > " << positivity_bound << ")";
    throw validation_error(msg.str());
  }

  Mesh1D mesh;
  mesh.length = length;
  mesh.n_elements = n_elements;
  mesh.node_x.resize(n_elements + 1);
  mesh.area.resize(n_elements + 1);
  mesh.surf_per_len.resize(n_elements + 1);

  const double h = length / static_cast<double>(n_elements);
  for (std::size_t i = 0; i <= n_elements; ++i) {
    const double x = (i == n_elements) ? length : h * static_cast<double>(i);
    mesh.node_x[i] = x;
    const double r = x - 0.5 * length;
    const double dip = std::exp(-r * r / (2.0 * area_sigma * area_sigma)) /
                       (area_sigma * std::sqrt(2.0 * std::numbers::pi));
    const double a = area0 * (1.0 - dip);
    mesh.area[i] = a;
    const double d = std::sqrt(4.0 * a / std::numbers::pi);
    mesh.surf_per_len[i] = std::numbers::pi * d;
  }
  return mesh;
}

}  // namespace tline::fem
