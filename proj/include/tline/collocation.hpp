#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace tline::uq {

struct GaussRule {
  std::vector<double> nodes;    // in (-1,1), ascending
  std::vector<double> weights;  // sum to 2
};

/// Gauss-Legendre rule, exact through polynomial degree 2n-1. Nodes by Newton
/// iteration on the Legendre recurrence. n in [1,100].
GaussRule gauss_legendre(std::size_t n);

/// One uniformly distributed input: U[mean (1-f), mean (1+f)].
struct RandomParam {
  std::string name;
  double mean = 0.0;
  double half_width_fraction = 0.10;

  double lower() const { return mean * (1.0 - half_width_fraction); }
  double upper() const { return mean * (1.0 + half_width_fraction); }
};

/// Isotropic tensor-product collocation grid. Realizations are indexed by a
/// flat index in [0, n^k); the last dimension varies fastest. The per-point
/// measure weight already folds in the uniform density and the affine-map
/// jacobian, so each dimension contributes w_p / 2 and the weights sum to 1.
class CollocationGrid {
 public:
  CollocationGrid(std::vector<RandomParam> dims, std::size_t n_per_dim);

  std::size_t dim_count() const { return dims_.size(); }
  std::size_t points_per_dim() const { return n_per_dim_; }
  std::size_t total_points() const { return total_; }
  const std::vector<RandomParam>& dims() const { return dims_; }
  const GaussRule& rule() const { return rule_; }

  std::vector<std::size_t> multi_index(std::size_t flat) const;
  /// Physical parameter values at a grid point, one per dimension.
  std::vector<double> parameter_values(std::size_t flat) const;
  /// Product of w_p/2 over dimensions.
  double weight(std::size_t flat) const;

 private:
  std::vector<RandomParam> dims_;
  std::size_t n_per_dim_;
  std::size_t total_;
  GaussRule rule_;
};

/// Weighted tensor-sum expectation of per-realization series. Every series
/// must have the same length (the common truncated axis). Summation order is
/// the flat index order, fixed for determinism.
std::vector<double> expectation(const CollocationGrid& grid,
                                const std::vector<std::vector<double>>& samples);

std::vector<double> std_dev(const CollocationGrid& grid,
                            const std::vector<std::vector<double>>& samples,
                            const std::vector<double>& mean);

/// First-order Sobol indices per dimension and time index, from the already
/// computed tensor realizations: inner conditional expectation over the other
/// dimensions at each node of dim j, outer variance over dim j, normalized by
/// the total variance. Entries where the total variance vanishes (< 1e-20)
/// are flagged undefined rather than reported as 0/0.
struct SobolResult {
  std::vector<std::vector<double>> indices;  // [dim][t]
  std::vector<std::uint8_t> defined;         // per t
};
SobolResult sobol_first_order(const CollocationGrid& grid,
                              const std::vector<std::vector<double>>& samples);

/// Expectation of the Bernoulli indicator series, clamped to [0,1].
/// h series must cover the full untruncated axis.
std::vector<double> probability_of_failure(const CollocationGrid& grid,
                                           const std::vector<std::vector<double>>& h_series);

/// ||field - ref||_2 / ||ref||_2. Throws validation_error on size mismatch or
/// a zero reference norm.
double relative_error(const std::vector<double>& field, const std::vector<double>& field_ref);

}  // namespace tline::uq
