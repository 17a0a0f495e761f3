#include "lossless/portfolio.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace lossless {

namespace {

void check_returns(const std::vector<std::vector<double>>& returns) {
  if (returns.empty() || returns.front().empty()) throw std::invalid_argument("market: no return vectors");
  const std::size_t d = returns.front().size();
  for (const auto& r : returns) {
    if (r.size() != d) throw std::invalid_argument("market: return vectors differ in length");
    for (double v : r) {
      if (!std::isfinite(v) || v <= 0.0) throw std::invalid_argument("market: return coordinates must be positive");
    }
  }
}

double dot(std::span<const double> b, const std::vector<double>& r) {
  double s = 0.0;
  for (std::size_t j = 0; j < b.size(); ++j) s += b[j] * r[j];
  return s;
}

// Coordinates that underflow to zero could never recover under
// multiplicative updates.
constexpr double kWeightFloor = 1e-30;

}  // namespace

MarketModel::MarketModel(std::vector<std::vector<double>> returns, DiscreteJoint joint, DeterministicMap map)
    : returns_(std::move(returns)), joint_(std::move(joint)), map_(std::move(map)) {
  check_returns(returns_);
  assets_ = returns_.front().size();
  if (joint_.shape().ny != returns_.size()) {
    throw std::invalid_argument("market: joint's return alphabet does not match the return vectors");
  }
  check_map_support(joint_, map_);
  for (const auto& r : returns_)
    for (double v : r) c_max_ = std::max(c_max_, std::abs(std::log(v)));
}

double expected_log_growth(std::span<const double> b, std::span<const double> probs,
                           const std::vector<std::vector<double>>& returns) {
  double w = 0.0;
  for (std::size_t k = 0; k < returns.size(); ++k)
    if (probs[k] > 0.0) w += probs[k] * std::log(dot(b, returns[k]));
  return w;
}

PortfolioSolution log_optimal_portfolio(std::span<const double> probs, const std::vector<std::vector<double>>& returns,
                                        const SolverOptions& options) {
  check_returns(returns);
  if (probs.size() != returns.size()) throw std::invalid_argument("log_optimal_portfolio: probabilities do not match outcomes");
  const std::size_t d = returns.front().size();

  PortfolioSolution sol;
  std::vector<double> b(d, 1.0 / static_cast<double>(d));
  double value = expected_log_growth(b, probs, returns);
  if (options.record_trace) sol.trace.push_back(value);

  std::vector<double> grad(d);
  std::vector<double> candidate(d);
  double step = 1.0;
  for (;;) {
    // grad_j = E[R_j / <b, R>]; sum_j b_j grad_j = 1 so max_j grad_j >= 1, and
    // W* - W(b) <= log max_j grad_j by Jensen.
    std::fill(grad.begin(), grad.end(), 0.0);
    for (std::size_t k = 0; k < returns.size(); ++k) {
      if (probs[k] <= 0.0) continue;
      const double wealth = dot(b, returns[k]);
      for (std::size_t j = 0; j < d; ++j) grad[j] += probs[k] * returns[k][j] / wealth;
    }
    const double top = *std::max_element(grad.begin(), grad.end());
    sol.gap_bound = std::max(0.0, std::log(top));
    if (sol.gap_bound <= options.gap_tolerance || sol.iterations >= options.max_iterations || d == 1) break;

    bool accepted = false;
    while (step > 1e-16) {
      double total = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        candidate[j] = std::max(kWeightFloor, b[j] * std::exp(step * (grad[j] - top)));
        total += candidate[j];
      }
      for (double& c : candidate) c /= total;
      const double next = expected_log_growth(candidate, probs, returns);
      if (next >= value) {
        accepted = next > value || candidate != b;
        b.swap(candidate);
        value = next;
        step *= 2.0;
        break;
      }
      step *= 0.5;
    }
    ++sol.iterations;
    if (!accepted) break;
    if (options.record_trace) sol.trace.push_back(value);
  }
  sol.portfolio.b = std::move(b);
  sol.growth = value;
  return sol;
}

PortfolioSolution grid_log_optimal(std::span<const double> probs, const std::vector<std::vector<double>>& returns,
                                   std::size_t steps) {
  check_returns(returns);
  if (steps == 0) throw std::invalid_argument("grid_log_optimal: steps must be positive");
  const std::size_t d = returns.front().size();
  const double unit = 1.0 / static_cast<double>(steps);

  PortfolioSolution best;
  best.growth = -std::numeric_limits<double>::infinity();
  std::vector<std::size_t> counts(d, 0);
  std::vector<double> b(d);
  std::function<void(std::size_t, std::size_t)> visit = [&](std::size_t j, std::size_t left) {
    if (j + 1 == d) {
      counts[j] = left;
      for (std::size_t i = 0; i < d; ++i) b[i] = static_cast<double>(counts[i]) * unit;
      const double w = expected_log_growth(b, probs, returns);
      if (w > best.growth) {
        best.growth = w;
        best.portfolio.b = b;
      }
      return;
    }
    for (std::size_t c = 0; c <= left; ++c) {
      counts[j] = c;
      visit(j + 1, left - c);
    }
  };
  visit(0, steps);
  return best;
}

double side_info_growth(const MarketModel& market, SideInfo condition_on, const SolverOptions& options) {
  if (condition_on == SideInfo::none) {
    const DiscretePMF pr = market.joint().y();
    return log_optimal_portfolio(pr.probs(), market.returns(), options).growth;
  }
  const JointPMF2 joint = condition_on == SideInfo::x ? market.joint().yx() : market.joint().yz();
  const DiscretePMF side = joint.col_marginal();
  double total = 0.0;
  for (std::size_t v = 0; v < joint.cols(); ++v) {
    if (side[v] <= 0.0) continue;
    const DiscretePMF conditional = joint.row_conditional(v);
    total += side[v] * log_optimal_portfolio(conditional.probs(), market.returns(), options).growth;
  }
  return total;
}

GrowthReport growth_gap_bound(const MarketModel& market, const SolverOptions& options) {
  GrowthReport r;
  r.W_star = side_info_growth(market, SideInfo::none, options);
  r.W_star_X = side_info_growth(market, SideInfo::x, options);
  r.W_star_Z = side_info_growth(market, SideInfo::z, options);
  r.I_RX = mutual_information(market.joint().yx());
  r.I_RZ = mutual_information(market.joint().yz());
  r.gap = r.W_star_X - r.W_star_Z;
  r.mi_gap = r.I_RX - r.I_RZ;
  r.holds = r.gap <= r.mi_gap + kGrowthGapTolerance;
  return r;
}

double c_max_bound(double c_max, double delta_I) {
  if (!std::isfinite(c_max) || c_max < 0.0) throw std::invalid_argument("c_max_bound: c_max must be finite and nonnegative");
  return c_max / std::sqrt(2.0) * std::sqrt(std::max(0.0, delta_I));
}

double c_max_bound(const MarketModel& market, double delta_I) { return c_max_bound(market.c_max(), delta_I); }

}  // namespace lossless
