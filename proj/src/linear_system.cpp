#include "tline/linear_system.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "tline/errors.hpp"

namespace tline::fem {

LinearSystem make_system(std::size_t n) {
  LinearSystem sys;
  sys.sub.assign(n, 0.0);
  sys.diag.assign(n, 0.0);
  sys.super.assign(n, 0.0);
  sys.rhs.assign(n, 0.0);
  return sys;
}

void apply_dirichlet(LinearSystem& sys, std::size_t node, double value) {
  const std::size_t n = sys.size();
  if (n == 0) throw validation_error("empty system");
  if (node != 0 && node != n - 1) {
    throw validation_error("Dirichlet conditions are only supported at boundary nodes");
  }

  if (node == 0) {
    sys.diag[0] = 1.0;
    sys.super[0] = 0.0;
    sys.rhs[0] = value;
    if (n > 1) {
      sys.rhs[1] -= sys.sub[1] * value;
      sys.sub[1] = 0.0;
    }
  } else {
    sys.diag[n - 1] = 1.0;
    sys.sub[n - 1] = 0.0;
    sys.rhs[n - 1] = value;
    if (n > 1) {
      sys.rhs[n - 2] -= sys.super[n - 2] * value;
      sys.super[n - 2] = 0.0;
    }
  }
}

std::vector<double> solve_tridiagonal(const LinearSystem& sys) {
  const std::size_t n = sys.size();
  if (n == 0) return {};

  std::vector<double> c_star(n, 0.0);
  std::vector<double> d_star(n, 0.0);

  auto check_pivot = [](double pivot, std::size_t index) {
    if (!(std::abs(pivot) > std::numeric_limits<double>::min())) {
      std::ostringstream msg;
      msg << "singular tridiagonal system: zero pivot at index " << index;
      throw singular_system_error(msg.str(), index);
    }
  };

  check_pivot(sys.diag[0], 0);
  c_star[0] = sys.super[0] / sys.diag[0];
  d_star[0] = sys.rhs[0] / sys.diag[0];
  for (std::size_t i = 1; i < n; ++i) {
    const double pivot = sys.diag[i] - sys.sub[i] * c_star[i - 1];
    check_pivot(pivot, i);
    c_star[i] = sys.super[i] / pivot;
    d_star[i] = (sys.rhs[i] - sys.sub[i] * d_star[i - 1]) / pivot;
  }

  std::vector<double> x(n);
  x[n - 1] = d_star[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) {
    x[i] = d_star[i] - c_star[i] * x[i + 1];
  }
  return x;
}

std::vector<double> multiply(const LinearSystem& sys, const std::vector<double>& x) {
  const std::size_t n = sys.size();
  std::vector<double> y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double v = sys.diag[i] * x[i];
    if (i > 0) v += sys.sub[i] * x[i - 1];
    if (i + 1 < n) v += sys.super[i] * x[i + 1];
    y[i] = v;
  }
  return y;
}

}  // namespace tline::fem
