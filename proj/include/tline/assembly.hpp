#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "tline/linear_system.hpp"
#include "tline/mesh.hpp"

namespace tline::fem {

/// 2-point Gauss rule on the reference element [-1,1] with the linear shape
/// values N1, N2 evaluated at the points. Exact for cubic integrands, which
/// covers every product of linear shape functions and nodally interpolated
/// coefficients appearing here.
struct ElementQuadrature {
  std::array<double, 2> points;
  std::array<double, 2> weights;                  // sum to 2
  std::array<std::array<double, 2>, 2> shape;     // shape[q] = {N1, N2}
};

const ElementQuadrature& two_point_gauss();

/// One quadrature point inside one element, with everything needed to
/// interpolate nodal data there.
struct QuadPoint {
  std::size_t element;
  double x;    // physical coordinate
  double n1;   // shape value of the left node
  double n2;   // shape value of the right node
};

/// Linear interpolation of a nodal vector at a quadrature point.
inline double interpolate(const std::vector<double>& nodal, const QuadPoint& q) {
  return q.n1 * nodal[q.element] + q.n2 * nodal[q.element + 1];
}

/// Constant gradient of a nodal vector over one element.
double element_gradient(const std::vector<double>& nodal, const Mesh1D& mesh, std::size_t e);

/// Nodal gradient by arithmetic mean of the adjacent element gradients;
/// one-sided at the boundaries.
std::vector<double> nodal_gradient(const std::vector<double>& nodal, const Mesh1D& mesh);

using Coefficient = std::function<double(const QuadPoint&)>;

/// Integrand coefficients for one assembly pass. Empty slots contribute
/// nothing.
///   stiffness: c(x) B^T B        mass:   c(x) N^T N
///   source:    c(x) N  (rhs)     flux:   c(x) B  (rhs)
struct ElementKernel {
  Coefficient stiffness;
  Coefficient mass;
  Coefficient source;
  Coefficient flux;
};

/// Assembles the global tridiagonal system by looping elements and evaluating
/// each kernel slot at the 2-point Gauss locations.
LinearSystem assemble(const Mesh1D& mesh, const ElementKernel& kernel);

}  // namespace tline::fem
