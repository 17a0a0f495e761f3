#pragma once

// Log-optimal (Kelly) portfolios on finite-alphabet markets with side
// information, and the growth-rate gap of degraded side information.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "lossless/discrete.hpp"

namespace lossless {

/// Return vectors r_0..r_{k-1} in R_+^{d_a} with a joint law over
/// (return index, X, Z = T(X)).
class MarketModel {
 public:
  MarketModel(std::vector<std::vector<double>> returns, DiscreteJoint joint, DeterministicMap map);

  std::size_t assets() const { return assets_; }
  std::size_t outcomes() const { return returns_.size(); }
  const std::vector<std::vector<double>>& returns() const { return returns_; }
  const DiscreteJoint& joint() const { return joint_; }
  const DeterministicMap& map() const { return map_; }
  /// max_{k,j} |log r_k^(j)|.
  double c_max() const { return c_max_; }

 private:
  std::vector<std::vector<double>> returns_;
  DiscreteJoint joint_;
  DeterministicMap map_;
  std::size_t assets_ = 0;
  double c_max_ = 0.0;
};

struct PortfolioVector {
  std::vector<double> b;
};

struct SolverOptions {
  /// Stop once the certified optimality gap log(max_j grad_j) drops below this.
  double gap_tolerance = 1e-10;
  std::size_t max_iterations = 10000;
  /// Records the objective after every accepted step.
  bool record_trace = false;
};

struct PortfolioSolution {
  PortfolioVector portfolio;
  double growth = 0.0;
  /// Upper bound on W* - growth.
  double gap_bound = 0.0;
  std::size_t iterations = 0;
  std::vector<double> trace;
};

/// E[log <b, R>] for returns drawn with probabilities `probs`.
double expected_log_growth(std::span<const double> b, std::span<const double> probs,
                           const std::vector<std::vector<double>>& returns);

/// Maximizes E[log <b, R>] over the simplex by exponentiated-gradient ascent
/// with backtracking, started from the uniform portfolio.
PortfolioSolution log_optimal_portfolio(std::span<const double> probs, const std::vector<std::vector<double>>& returns,
                                        const SolverOptions& options = {});

/// Best growth over the simplex grid with spacing 1/steps; an independent
/// check on the solver for small asset counts.
PortfolioSolution grid_log_optimal(std::span<const double> probs, const std::vector<std::vector<double>>& returns,
                                   std::size_t steps);

enum class SideInfo { none, x, z };

/// W*, W*(X) or W*(Z): the expected best conditional growth rate.
double side_info_growth(const MarketModel& market, SideInfo condition_on, const SolverOptions& options = {});

struct GrowthReport {
  double W_star = 0.0;
  double W_star_X = 0.0;
  double W_star_Z = 0.0;
  double I_RX = 0.0;
  double I_RZ = 0.0;
  double gap = 0.0;
  double mi_gap = 0.0;
  /// gap <= mi_gap + tolerance.
  bool holds = false;
};

inline constexpr double kGrowthGapTolerance = 1e-6;

GrowthReport growth_gap_bound(const MarketModel& market, const SolverOptions& options = {});

/// (c_max / sqrt 2) sqrt(delta_I).
double c_max_bound(double c_max, double delta_I);
double c_max_bound(const MarketModel& market, double delta_I);

}  // namespace lossless
