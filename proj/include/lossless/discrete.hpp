#pragma once

// Exact information and risk computations on finite-alphabet distributions.
//
// Alphabets are index sets 0..k-1. All information quantities are in nats.
// Every function here is pure and may be called concurrently.

#include <cstddef>
#include <span>
#include <vector>

namespace lossless {

/// Tolerance for total mass and for exact identities on small alphabets.
inline constexpr double kMassTolerance = 1e-12;

class DiscretePMF {
 public:
  explicit DiscretePMF(std::vector<double> probs);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const { return probs_; }

 private:
  std::vector<double> probs_;
};

/// Two-way pmf P(a, b), stored row-major with `rows` = |A| and `cols` = |B|.
class JointPMF2 {
 public:
  JointPMF2(std::size_t rows, std::size_t cols, std::vector<double> probs);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t a, std::size_t b) const { return probs_[a * cols_ + b]; }
  std::span<const double> probs() const { return probs_; }

  DiscretePMF row_marginal() const;
  DiscretePMF col_marginal() const;
  /// P(A | B = b). Requires P(B = b) > 0.
  DiscretePMF row_conditional(std::size_t b) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> probs_;
};

struct JointShape {
  std::size_t ny = 0;
  std::size_t nx = 0;
  std::size_t nz = 0;

  std::size_t volume() const { return ny * nx * nz; }
  bool operator==(const JointShape&) const = default;
};

/// Three-way pmf over (Y, X, Z), row-major in (y, x, z).
class DiscreteJoint {
 public:
  DiscreteJoint(JointShape shape, std::vector<double> probs);

  const JointShape& shape() const { return shape_; }
  double operator()(std::size_t y, std::size_t x, std::size_t z) const {
    return probs_[(y * shape_.nx + x) * shape_.nz + z];
  }
  std::span<const double> probs() const { return probs_; }

  JointPMF2 yx() const;
  JointPMF2 yz() const;
  JointPMF2 xz() const;
  DiscretePMF y() const;
  DiscretePMF x() const;
  DiscretePMF z() const;

 private:
  JointShape shape_;
  std::vector<double> probs_;
};

/// A total map from X indices to Z indices.
class DeterministicMap {
 public:
  /// `z_size` defaults to max(table) + 1.
  explicit DeterministicMap(std::vector<std::size_t> table, std::size_t z_size = 0);

  std::size_t x_size() const { return table_.size(); }
  std::size_t z_size() const { return z_size_; }
  std::size_t operator()(std::size_t x) const { return table_.at(x); }
  std::span<const std::size_t> table() const { return table_; }

 private:
  std::vector<std::size_t> table_;
  std::size_t z_size_;
};

/// Loss l(y, y') >= 0 on a finite alphabet; rows index the truth, columns the decision.
class LossMatrix {
 public:
  LossMatrix(std::size_t size, std::vector<double> cost);
  explicit LossMatrix(const std::vector<std::vector<double>>& rows);

  std::size_t size() const { return size_; }
  double operator()(std::size_t y, std::size_t decision) const { return cost_[y * size_ + decision]; }
  double sup_norm() const { return sup_norm_; }

 private:
  std::size_t size_;
  std::vector<double> cost_;
  double sup_norm_ = 0.0;
};

LossMatrix zero_one_loss(std::size_t size);
/// Squared loss (v_y - v_y')^2 for the labels `values`.
LossMatrix squared_loss(std::span<const double> values);

/// D(p || q) in nats; +infinity when p is not absolutely continuous w.r.t. q.
double kl_divergence(const DiscretePMF& p, const DiscretePMF& q);

/// I(A; B) = D(P_AB || P_A P_B).
double mutual_information(const JointPMF2& joint);

/// I(Y; X | Z) averaged over z with P_Z(z) > 0.
double conditional_mutual_information(const DiscreteJoint& joint);

/// Minimum expected loss predicting the row variable from the column variable.
double bayes_risk(const JointPMF2& joint, const LossMatrix& loss);

/// An optimal decision per column (smallest index among ties).
std::vector<std::size_t> bayes_rule(const JointPMF2& joint, const LossMatrix& loss);

/// min_{y'} E[l(Y, y')], the risk with no observation.
double uninformed_risk(const DiscretePMF& py, const LossMatrix& loss);

/// Builds P(y, x, z) = P(y, x) 1[z = map(x)].
DiscreteJoint apply_map(const JointPMF2& yx, const DeterministicMap& map);

/// Throws unless z = map(x) on the support of `joint`.
void check_map_support(const DiscreteJoint& joint, const DeterministicMap& map);

/// L*(Y | T(X)) - L*(Y | X) for a joint supported on z = map(x).
double excess_risk(const DiscreteJoint& joint, const DeterministicMap& map, const LossMatrix& loss);

/// Population analogue of the partitioning statistic:
/// sum_{y,x,z} |P(y,x,z) - P(x,z) P(y,z) / P(z)| over z with P(z) > 0.
double conditional_product_l1(const DiscreteJoint& joint);

}  // namespace lossless
