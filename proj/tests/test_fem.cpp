#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "tline/assembly.hpp"
#include "tline/errors.hpp"
#include "tline/linear_system.hpp"
#include "tline/mesh.hpp"

using namespace tline;

namespace {

// Dense Gaussian elimination with partial pivoting; independent oracle for
// the tridiagonal solver.
std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double m = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= m * a[col][c];
      b[r] -= m * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return x;
}

fem::Mesh1D uniform_mesh(double length, std::size_t n, double area) {
  return fem::build_mesh(length, n, area, std::numeric_limits<double>::infinity());
}

}  // namespace

TEST_CASE("build_mesh reproduces the center dip factor") {
  const double area0 = std::numbers::pi * 0.04 * 0.04 / 4.0;
  const auto mesh = fem::build_mesh(200.0, 1000, area0, 2.5);

  // Direct evaluation of the Gaussian dip at x = L/2.
  const double dip = 1.0 / (2.5 * std::sqrt(2.0 * std::numbers::pi));
  CHECK(dip == doctest::Approx(0.1595769).epsilon(1e-6));
  CHECK(mesh.area[mesh.midpoint_node()] == doctest::Approx(area0 * (1.0 - dip)).epsilon(1e-12));

  CHECK(mesh.node_x.front() == 0.0);
  CHECK(mesh.node_x.back() == 200.0);
  for (std::size_t i = 0; i < mesh.n_nodes(); ++i) {
    CHECK(mesh.area[i] > 0.0);
    CHECK(mesh.surf_per_len[i] > 0.0);
    if (i > 0) CHECK(mesh.node_x[i] > mesh.node_x[i - 1]);
  }
}

TEST_CASE("build_mesh with infinite spread is uniform") {
  const auto mesh = uniform_mesh(200.0, 100, 1e-3);
  for (double a : mesh.area) CHECK(a == 1e-3);
  // d(x) recovered from the area
  const double d = std::sqrt(4.0 * 1e-3 / std::numbers::pi);
  for (double s : mesh.surf_per_len) {
    CHECK(s == doctest::Approx(std::numbers::pi * d).epsilon(1e-14));
  }
}

TEST_CASE("build_mesh area approaches the nominal value away from the dip") {
  const auto mesh = fem::build_mesh(200.0, 1000, 1e-3, 2.5);
  // |x - L/2| >> area_sigma
  CHECK(std::abs(mesh.area[0] - 1e-3) <= 1e-15);
  CHECK(std::abs(mesh.area[50] - 1e-3) <= 1e-15);  // x = 10 m, 36 sigma away
}

TEST_CASE("build_mesh rejects a spread that kills the section") {
  CHECK_THROWS_AS(fem::build_mesh(200.0, 10, 1e-3, 0.39), validation_error);
  CHECK_THROWS_AS(fem::build_mesh(200.0, 10, 1e-3, 0.0), validation_error);
  CHECK_THROWS_AS(fem::build_mesh(200.0, 1, 1e-3, 2.5), validation_error);
}

TEST_CASE("two-point Gauss rule basics") {
  const auto& quad = fem::two_point_gauss();
  CHECK(quad.weights[0] + quad.weights[1] == doctest::Approx(2.0).epsilon(1e-15));
  for (int q = 0; q < 2; ++q) {
    CHECK(quad.shape[q][0] + quad.shape[q][1] == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("two-point Gauss integrates cubics exactly") {
  // Integrate x^k over [0, h] through the reference map used in assembly.
  const auto& quad = fem::two_point_gauss();
  const double h = 0.7;
  for (int k = 0; k <= 3; ++k) {
    double integral = 0.0;
    for (int q = 0; q < 2; ++q) {
      const double x = quad.shape[q][1] * h;  // map via N2
      integral += quad.weights[q] * 0.5 * h * std::pow(x, k);
    }
    const double exact = std::pow(h, k + 1) / (k + 1);
    CHECK(integral == doctest::Approx(exact).epsilon(1e-14));
  }
}

TEST_CASE("assemble: constant-coefficient stiffness gives the classic stencil") {
  const auto mesh = uniform_mesh(1.0, 4, 2.0);
  const double c = 3.0;
  fem::ElementKernel kernel;
  kernel.stiffness = [&](const fem::QuadPoint& q) {
    return c * fem::interpolate(mesh.area, q);
  };
  const auto sys = fem::assemble(mesh, kernel);

  const double h = 0.25;
  const double k = c * 2.0 / h;  // c A / h
  CHECK(sys.diag[0] == doctest::Approx(k).epsilon(1e-14));
  CHECK(sys.diag[2] == doctest::Approx(2.0 * k).epsilon(1e-14));
  CHECK(sys.super[1] == doctest::Approx(-k).epsilon(1e-14));
  CHECK(sys.sub[3] == doctest::Approx(-k).epsilon(1e-14));
  for (double r : sys.rhs) CHECK(r == 0.0);
}

TEST_CASE("assemble: mass kernel row sums equal A h per interior node") {
  // Symbolic integration of N^T N over an element gives h/6 [[2,1],[1,2]],
  // so with constant area each interior row sums to A h.
  const double area = 5.0;
  const auto mesh = uniform_mesh(2.0, 8, area);
  const double h = 0.25;
  fem::ElementKernel kernel;
  kernel.mass = [&](const fem::QuadPoint& q) { return fem::interpolate(mesh.area, q); };
  const auto sys = fem::assemble(mesh, kernel);

  for (std::size_t i = 1; i + 1 < sys.size(); ++i) {
    const double row_sum = sys.sub[i] + sys.diag[i] + sys.super[i];
    CHECK(row_sum == doctest::Approx(area * h).epsilon(1e-14));
  }
  CHECK(sys.diag[0] + sys.super[0] == doctest::Approx(area * h / 2.0).epsilon(1e-14));
}

TEST_CASE("assemble: zero kernel gives zero system") {
  const auto mesh = uniform_mesh(1.0, 4, 1.0);
  const auto sys = fem::assemble(mesh, fem::ElementKernel{});
  for (std::size_t i = 0; i < sys.size(); ++i) {
    CHECK(sys.diag[i] == 0.0);
    CHECK(sys.sub[i] == 0.0);
    CHECK(sys.super[i] == 0.0);
    CHECK(sys.rhs[i] == 0.0);
  }
}

TEST_CASE("assemble is linear in the kernel") {
  const auto mesh = fem::build_mesh(10.0, 16, 1e-3, 2.5);
  auto k1 = [&](const fem::QuadPoint& q) { return 2.0 + q.x; };
  auto k2 = [&](const fem::QuadPoint& q) { return std::sin(q.x); };
  fem::ElementKernel a{k1, nullptr, k1, nullptr};
  fem::ElementKernel b{k2, nullptr, k2, nullptr};
  fem::ElementKernel ab;
  ab.stiffness = [&](const fem::QuadPoint& q) { return k1(q) + k2(q); };
  ab.source = ab.stiffness;

  const auto sys_a = fem::assemble(mesh, a);
  const auto sys_b = fem::assemble(mesh, b);
  const auto sys_ab = fem::assemble(mesh, ab);
  for (std::size_t i = 0; i < sys_ab.size(); ++i) {
    CHECK(sys_ab.diag[i] == doctest::Approx(sys_a.diag[i] + sys_b.diag[i]).epsilon(1e-13));
    CHECK(sys_ab.rhs[i] == doctest::Approx(sys_a.rhs[i] + sys_b.rhs[i]).epsilon(1e-13));
  }
}

TEST_CASE("apply_dirichlet pins boundary values") {
  const auto mesh = uniform_mesh(1.0, 4, 1.0);
  fem::ElementKernel kernel;
  kernel.stiffness = [](const fem::QuadPoint&) { return 1.0; };

  SUBCASE("zero at the left end") {
    auto sys = fem::assemble(mesh, kernel);
    sys.rhs.back() += 1.0;
    fem::apply_dirichlet(sys, 0, 0.0);
    const auto x = fem::solve_tridiagonal(sys);
    CHECK(x[0] == 0.0);
  }

  SUBCASE("nonzero value on an identity-like system") {
    auto sys = fem::make_system(3);
    sys.diag = {2.0, 2.0, 2.0};
    fem::apply_dirichlet(sys, 0, 5.0);
    const auto x = fem::solve_tridiagonal(sys);
    CHECK(x[0] == 5.0);
  }

  SUBCASE("both ends pinned on a Laplacian gives the linear interpolant") {
    auto sys = fem::assemble(mesh, kernel);
    fem::apply_dirichlet(sys, 0, 1.0);
    fem::apply_dirichlet(sys, 4, 3.0);
    const auto x = fem::solve_tridiagonal(sys);
    // u'' = 0 with u(0)=1, u(1)=3
    for (std::size_t i = 0; i <= 4; ++i) {
      CHECK(x[i] == doctest::Approx(1.0 + 2.0 * mesh.node_x[i]).epsilon(1e-13));
    }
  }

  SUBCASE("interior node is rejected") {
    auto sys = fem::assemble(mesh, kernel);
    CHECK_THROWS_AS(fem::apply_dirichlet(sys, 2, 0.0), validation_error);
  }
}

TEST_CASE("solve_tridiagonal basics") {
  SUBCASE("identity returns the rhs") {
    auto sys = fem::make_system(5);
    for (std::size_t i = 0; i < 5; ++i) {
      sys.diag[i] = 1.0;
      sys.rhs[i] = 0.3 * static_cast<double>(i) - 1.0;
    }
    const auto x = fem::solve_tridiagonal(sys);
    for (std::size_t i = 0; i < 5; ++i) CHECK(x[i] == sys.rhs[i]);
  }

  SUBCASE("discrete Laplacian ramp") {
    const std::size_t n = 11;
    auto sys = fem::make_system(n);
    for (std::size_t i = 0; i < n; ++i) {
      sys.diag[i] = 2.0;
      if (i > 0) sys.sub[i] = -1.0;
      if (i + 1 < n) sys.super[i] = -1.0;
    }
    fem::apply_dirichlet(sys, 0, 0.0);
    fem::apply_dirichlet(sys, n - 1, 1.0);
    const auto x = fem::solve_tridiagonal(sys);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(x[i] == doctest::Approx(static_cast<double>(i) / 10.0).epsilon(1e-12));
    }
  }

  SUBCASE("zero pivot reports the index") {
    auto sys = fem::make_system(3);
    sys.diag = {1.0, 0.0, 1.0};
    try {
      fem::solve_tridiagonal(sys);
      FAIL("expected singular_system_error");
    } catch (const singular_system_error& e) {
      CHECK(e.pivot_index == 1);
    }
  }
}

TEST_CASE("solve_tridiagonal matches a dense elimination oracle") {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> off(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 10;
    auto sys = fem::make_system(n);
    std::vector<std::vector<double>> dense(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0) sys.sub[i] = off(rng);
      if (i + 1 < n) sys.super[i] = off(rng);
      sys.diag[i] = 3.0 + std::abs(off(rng));  // diagonally dominant
      sys.rhs[i] = off(rng);
      dense[i][i] = sys.diag[i];
      if (i > 0) dense[i][i - 1] = sys.sub[i];
      if (i + 1 < n) dense[i][i + 1] = sys.super[i];
    }
    const auto x = fem::solve_tridiagonal(sys);
    const auto y = dense_solve(dense, sys.rhs);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(x[i] == doctest::Approx(y[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("solver residual stays small for diagonally dominant systems") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> off(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 64;
    auto sys = fem::make_system(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0) sys.sub[i] = off(rng);
      if (i + 1 < n) sys.super[i] = off(rng);
      sys.diag[i] = 2.5 + std::abs(off(rng));
      sys.rhs[i] = off(rng);
    }
    const auto x = fem::solve_tridiagonal(sys);
    const auto ax = fem::multiply(sys, x);
    double res = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      res = std::max(res, std::abs(ax[i] - sys.rhs[i]));
      scale = std::max(scale, std::abs(sys.rhs[i]));
    }
    CHECK(res <= 1e-10 * scale);
  }
}

TEST_CASE("patch test: constant-coefficient problem is nodally exact") {
  const auto mesh = uniform_mesh(3.0, 7, 2.5);
  fem::ElementKernel kernel;
  kernel.stiffness = [&](const fem::QuadPoint& q) {
    return 4.0 * fem::interpolate(mesh.area, q);
  };
  auto sys = fem::assemble(mesh, kernel);
  fem::apply_dirichlet(sys, 0, 0.5);
  fem::apply_dirichlet(sys, 7, 2.0);
  const auto x = fem::solve_tridiagonal(sys);
  for (std::size_t i = 0; i < mesh.n_nodes(); ++i) {
    const double exact = 0.5 + 1.5 * mesh.node_x[i] / 3.0;
    CHECK(x[i] == doctest::Approx(exact).epsilon(1e-14));
  }
}

TEST_CASE("nodal gradient averages adjacent element gradients") {
  const auto mesh = uniform_mesh(1.0, 4, 1.0);
  const std::vector<double> v = {0.0, 1.0, 1.0, 4.0, 4.0};
  const auto g = fem::nodal_gradient(v, mesh);
  CHECK(g[0] == doctest::Approx(4.0));       // one-sided
  CHECK(g[1] == doctest::Approx(2.0));       // (4 + 0)/2
  CHECK(g[2] == doctest::Approx(6.0));       // (0 + 12)/2
  CHECK(g[4] == doctest::Approx(0.0));
}
