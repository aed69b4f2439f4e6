#pragma once

#include <cstddef>
#include <vector>

namespace tline::fem {

/// Tridiagonal system in three-array form. All assembled operators couple
/// nearest neighbors only, so this is the only matrix storage in the project.
/// sub[0] and super[n-1] are kept at zero.
struct LinearSystem {
  std::vector<double> sub;    // below-diagonal, sub[i] multiplies x[i-1] in row i
  std::vector<double> diag;
  std::vector<double> super;  // above-diagonal, super[i] multiplies x[i+1] in row i
  std::vector<double> rhs;

  std::size_t size() const { return diag.size(); }
};

LinearSystem make_system(std::size_t n);

/// Replaces the row of a boundary node by an identity row with the prescribed
/// value, and symmetrically eliminates the coupled column into the neighbor's
/// rhs. Only node 0 and the last node are accepted.
void apply_dirichlet(LinearSystem& sys, std::size_t node, double value);

/// Thomas elimination. Throws singular_system_error naming the pivot index if
/// a pivot vanishes. All assembled systems here are diagonally dominant, so no
/// pivoting is performed.
std::vector<double> solve_tridiagonal(const LinearSystem& sys);

/// y = A x for residual checks.
std::vector<double> multiply(const LinearSystem& sys, const std::vector<double>& x);

}  // namespace tline::fem
