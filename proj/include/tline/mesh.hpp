#pragma once

#include <cstddef>
#include <vector>

namespace tline::fem {

/// Uniform 1-D mesh of linear elements with per-node cross-section area and
/// convective surface per unit length. Node coordinates are strictly
/// increasing from 0 to length.
struct Mesh1D {
  double length = 0.0;
  std::size_t n_elements = 0;
  std::vector<double> node_x;        // m, size n_elements+1
  std::vector<double> area;          // m^2, per node
  std::vector<double> surf_per_len;  // m^2/m, per node

  std::size_t n_nodes() const { return node_x.size(); }
  double element_length(std::size_t e) const { return node_x[e + 1] - node_x[e]; }
  std::size_t midpoint_node() const { return n_elements / 2; }
};

/// Builds a mesh whose cross-section area dips at the center:
///   A(x) = A0 * (1 - exp(-(x - L/2)^2 / (2 area_sigma^2)) / (area_sigma sqrt(2 pi)))
/// The dip models a damage precursor; area_sigma controls spread vs depth.
/// The convective surface per length assumes a circular section of the local
/// area, A_s(x) = pi * d(x) with d(x) = sqrt(4 A(x) / pi).
///
/// Requires n_elements >= 2 and area_sigma > 1/sqrt(2 pi), otherwise the
/// center area would be non-positive.
Mesh1D build_mesh(double length, std::size_t n_elements, double area0, double area_sigma);

}  // namespace tline::fem
