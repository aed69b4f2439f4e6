#include "tline/collocation.hpp"

#include <cmath>
#include <numbers>

#include "tline/errors.hpp"

namespace tline::uq {

namespace {

// Legendre P_n and P_n' by the three-term recurrence.
struct LegendreEval {
  double value;
  double derivative;
};

LegendreEval legendre(std::size_t n, double x) {
  double p_prev = 1.0;   // P_0
  double p = x;          // P_1
  if (n == 0) return {1.0, 0.0};
  for (std::size_t k = 2; k <= n; ++k) {
    const double kd = static_cast<double>(k);
    const double p_next = ((2.0 * kd - 1.0) * x * p - (kd - 1.0) * p_prev) / kd;
    p_prev = p;
    p = p_next;
  }
  const double dp = static_cast<double>(n) * (x * p - p_prev) / (x * x - 1.0);
  return {p, dp};
}

}  // namespace

GaussRule gauss_legendre(std::size_t n) {
  if (n < 1 || n > 100) throw validation_error("gauss_legendre supports 1 <= n <= 100");

  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);

  if (n == 1) {
    rule.nodes[0] = 0.0;
    rule.weights[0] = 2.0;
    return rule;
  }

  for (std::size_t i = 0; i < n; ++i) {
    // Chebyshev-like initial guess, then Newton to 1e-15.
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const LegendreEval eval = legendre(n, x);
      const double dx = eval.value / eval.derivative;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const LegendreEval eval = legendre(n, x);
    rule.nodes[n - 1 - i] = x;  // initial guesses run from +1 down; store ascending
    rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * eval.derivative * eval.derivative);
  }

  // Enforce exact symmetry of the rule.
  for (std::size_t i = 0; i < n / 2; ++i) {
    const double node = 0.5 * (rule.nodes[n - 1 - i] - rule.nodes[i]);
    rule.nodes[i] = -node;
    rule.nodes[n - 1 - i] = node;
    const double weight = 0.5 * (rule.weights[i] + rule.weights[n - 1 - i]);
    rule.weights[i] = weight;
    rule.weights[n - 1 - i] = weight;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;

  return rule;
}

CollocationGrid::CollocationGrid(std::vector<RandomParam> dims, std::size_t n_per_dim)
    : dims_(std::move(dims)), n_per_dim_(n_per_dim), rule_(gauss_legendre(n_per_dim)) {
  if (dims_.empty()) throw validation_error("collocation grid needs at least one dimension");
  total_ = 1;
  for (std::size_t d = 0; d < dims_.size(); ++d) {
    if (!(dims_[d].half_width_fraction > 0.0)) {
      throw validation_error("half_width_fraction must be positive: " + dims_[d].name);
    }
    total_ *= n_per_dim_;
  }
}

std::vector<std::size_t> CollocationGrid::multi_index(std::size_t flat) const {
  std::vector<std::size_t> idx(dims_.size());
  for (std::size_t d = dims_.size(); d-- > 0;) {
    idx[d] = flat % n_per_dim_;
    flat /= n_per_dim_;
  }
  return idx;
}

std::vector<double> CollocationGrid::parameter_values(std::size_t flat) const {
  const std::vector<std::size_t> idx = multi_index(flat);
  std::vector<double> values(dims_.size());
  for (std::size_t d = 0; d < dims_.size(); ++d) {
    const double a = dims_[d].lower();
    const double b = dims_[d].upper();
    values[d] = a + 0.5 * (b - a) * (rule_.nodes[idx[d]] + 1.0);
  }
  return values;
}

double CollocationGrid::weight(std::size_t flat) const {
  const std::vector<std::size_t> idx = multi_index(flat);
  double w = 1.0;
  for (std::size_t d = 0; d < dims_.size(); ++d) {
    w *= 0.5 * rule_.weights[idx[d]];  // w_p * rho * J for the uniform density
  }
  return w;
}

namespace {

void check_samples(const CollocationGrid& grid, const std::vector<std::vector<double>>& samples) {
  if (samples.size() != grid.total_points()) {
    throw validation_error("incomplete ensemble: expected " +
                           std::to_string(grid.total_points()) + " realizations, got " +
                           std::to_string(samples.size()));
  }
  for (const auto& s : samples) {
    if (s.size() != samples.front().size()) {
      throw validation_error("incomplete ensemble: realization series lengths differ");
    }
  }
}

}  // namespace

std::vector<double> expectation(const CollocationGrid& grid,
                                const std::vector<std::vector<double>>& samples) {
  check_samples(grid, samples);
  const std::size_t m = samples.front().size();
  std::vector<double> mean(m, 0.0);
  for (std::size_t p = 0; p < samples.size(); ++p) {
    const double w = grid.weight(p);
    for (std::size_t t = 0; t < m; ++t) mean[t] += w * samples[p][t];
  }
  return mean;
}

std::vector<double> std_dev(const CollocationGrid& grid,
                            const std::vector<std::vector<double>>& samples,
                            const std::vector<double>& mean) {
  check_samples(grid, samples);
  const std::size_t m = samples.front().size();
  if (mean.size() != m) throw validation_error("mean length mismatch");
  std::vector<double> var(m, 0.0);
  for (std::size_t p = 0; p < samples.size(); ++p) {
    const double w = grid.weight(p);
    for (std::size_t t = 0; t < m; ++t) {
      const double d = samples[p][t] - mean[t];
      var[t] += w * d * d;
    }
  }
  std::vector<double> sd(m);
  for (std::size_t t = 0; t < m; ++t) {
    // Quadrature roundoff can leave a tiny negative variance.
    sd[t] = var[t] > 0.0 ? std::sqrt(var[t]) : 0.0;
  }
  return sd;
}

SobolResult sobol_first_order(const CollocationGrid& grid,
                              const std::vector<std::vector<double>>& samples) {
  check_samples(grid, samples);
  const std::size_t m = samples.front().size();
  const std::size_t k = grid.dim_count();
  const std::size_t n = grid.points_per_dim();

  const std::vector<double> mean = expectation(grid, samples);
  std::vector<double> variance(m, 0.0);
  for (std::size_t p = 0; p < samples.size(); ++p) {
    const double w = grid.weight(p);
    for (std::size_t t = 0; t < m; ++t) {
      const double d = samples[p][t] - mean[t];
      variance[t] += w * d * d;
    }
  }

  SobolResult result;
  result.indices.assign(k, std::vector<double>(m, 0.0));
  result.defined.assign(m, 1);
  for (std::size_t t = 0; t < m; ++t) {
    if (variance[t] < 1e-20) result.defined[t] = 0;
  }

  // Reuse the tensor realizations: for dim j, group realizations by their
  // node in j. The complementary weight of a realization within its group is
  // its full weight divided by the dim-j factor.
  std::vector<double> conditional(m);
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<double> outer_var(m, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double wj = 0.5 * grid.rule().weights[i];
      std::fill(conditional.begin(), conditional.end(), 0.0);
      for (std::size_t p = 0; p < samples.size(); ++p) {
        const std::vector<std::size_t> idx = grid.multi_index(p);
        if (idx[j] != i) continue;
        const double w_rest = grid.weight(p) / wj;
        for (std::size_t t = 0; t < m; ++t) conditional[t] += w_rest * samples[p][t];
      }
      for (std::size_t t = 0; t < m; ++t) {
        const double d = conditional[t] - mean[t];
        outer_var[t] += wj * d * d;
      }
    }
    for (std::size_t t = 0; t < m; ++t) {
      result.indices[j][t] = result.defined[t] ? outer_var[t] / variance[t] : 0.0;
    }
  }
  return result;
}

std::vector<double> probability_of_failure(const CollocationGrid& grid,
                                           const std::vector<std::vector<double>>& h_series) {
  std::vector<double> pf = expectation(grid, h_series);
  for (double& v : pf) {
    if (v < 0.0) v = 0.0;
    if (v > 1.0) v = 1.0;
  }
  return pf;
}

double relative_error(const std::vector<double>& field, const std::vector<double>& field_ref) {
  if (field.size() != field_ref.size()) {
    throw validation_error("relative_error: size mismatch");
  }
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < field.size(); ++i) {
    const double d = field[i] - field_ref[i];
    num += d * d;
    den += field_ref[i] * field_ref[i];
  }
  if (!(den > 0.0)) throw validation_error("relative_error: zero reference norm");
  return std::sqrt(num / den);
}

}  // namespace tline::uq
