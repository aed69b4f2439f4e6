#include "tline/assembly.hpp"

#include <cmath>

namespace tline::fem {

const ElementQuadrature& two_point_gauss() {
  static const ElementQuadrature rule = [] {
    ElementQuadrature q;
    const double g = 1.0 / std::sqrt(3.0);
    q.points = {-g, g};
    q.weights = {1.0, 1.0};
    for (int i = 0; i < 2; ++i) {
      q.shape[i] = {0.5 * (1.0 - q.points[i]), 0.5 * (1.0 + q.points[i])};
    }
    return q;
  }();
  return rule;
}

double element_gradient(const std::vector<double>& nodal, const Mesh1D& mesh, std::size_t e) {
  return (nodal[e + 1] - nodal[e]) / mesh.element_length(e);
}

std::vector<double> nodal_gradient(const std::vector<double>& nodal, const Mesh1D& mesh) {
  const std::size_t n = mesh.n_nodes();
  std::vector<double> grad(n);
  grad[0] = element_gradient(nodal, mesh, 0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    grad[i] = 0.5 * (element_gradient(nodal, mesh, i - 1) + element_gradient(nodal, mesh, i));
  }
  grad[n - 1] = element_gradient(nodal, mesh, mesh.n_elements - 1);
  return grad;
}

LinearSystem assemble(const Mesh1D& mesh, const ElementKernel& kernel) {
  const ElementQuadrature& quad = two_point_gauss();
  LinearSystem sys = make_system(mesh.n_nodes());

  for (std::size_t e = 0; e < mesh.n_elements; ++e) {
    const double h = mesh.element_length(e);
    const double x_left = mesh.node_x[e];
    const double jac = 0.5 * h;  // reference [-1,1] to physical
    const double b1 = -1.0 / h;
    const double b2 = 1.0 / h;

    double k11 = 0, k12 = 0, k22 = 0;  // stiffness and mass are symmetric
    double m11 = 0, m12 = 0, m22 = 0;
    double f1 = 0, f2 = 0;

    for (int q = 0; q < 2; ++q) {
      const double n1 = quad.shape[q][0];
      const double n2 = quad.shape[q][1];
      const QuadPoint point{e, x_left + n2 * h, n1, n2};
      const double w = quad.weights[q] * jac;

      if (kernel.stiffness) {
        const double c = kernel.stiffness(point) * w;
        k11 += c * b1 * b1;
        k12 += c * b1 * b2;
        k22 += c * b2 * b2;
      }
      if (kernel.mass) {
        const double c = kernel.mass(point) * w;
        m11 += c * n1 * n1;
        m12 += c * n1 * n2;
        m22 += c * n2 * n2;
      }
      if (kernel.source) {
        const double c = kernel.source(point) * w;
        f1 += c * n1;
        f2 += c * n2;
      }
      if (kernel.flux) {
        const double c = kernel.flux(point) * w;
        f1 += c * b1;
        f2 += c * b2;
      }
    }

    sys.diag[e] += k11 + m11;
    sys.diag[e + 1] += k22 + m22;
    sys.super[e] += k12 + m12;
    sys.sub[e + 1] += k12 + m12;
    sys.rhs[e] += f1;
    sys.rhs[e + 1] += f2;
  }
  return sys;
}

}  // namespace tline::fem
