#include "lossless/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace lossless {

namespace {

void check_mass(std::span<const double> probs, const char* what) {
  double total = 0.0;
  for (double p : probs) {
    if (!std::isfinite(p) || p < 0.0) {
      throw std::invalid_argument(std::string(what) + ": entries must be finite and nonnegative");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw std::invalid_argument(std::string(what) + ": total mass " + std::to_string(total) + " is not 1");
  }
}

// p * log(p / q) with 0 log(0 / q) = 0.
double kl_term(double p, double q) {
  if (p <= 0.0) return 0.0;
  if (q <= 0.0) return std::numeric_limits<double>::infinity();
  return p * std::log(p / q);
}

}  // namespace

DiscretePMF::DiscretePMF(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw std::invalid_argument("DiscretePMF: empty alphabet");
  check_mass(probs_, "DiscretePMF");
}

JointPMF2::JointPMF2(std::size_t rows, std::size_t cols, std::vector<double> probs)
    : rows_(rows), cols_(cols), probs_(std::move(probs)) {
  if (rows_ == 0 || cols_ == 0 || probs_.size() != rows_ * cols_) {
    throw std::invalid_argument("JointPMF2: shape does not match number of probabilities");
  }
  check_mass(probs_, "JointPMF2");
}

DiscretePMF JointPMF2::row_marginal() const {
  std::vector<double> out(rows_, 0.0);
  for (std::size_t a = 0; a < rows_; ++a)
    for (std::size_t b = 0; b < cols_; ++b) out[a] += (*this)(a, b);
  return DiscretePMF(std::move(out));
}

DiscretePMF JointPMF2::col_marginal() const {
  std::vector<double> out(cols_, 0.0);
  for (std::size_t a = 0; a < rows_; ++a)
    for (std::size_t b = 0; b < cols_; ++b) out[b] += (*this)(a, b);
  return DiscretePMF(std::move(out));
}

DiscretePMF JointPMF2::row_conditional(std::size_t b) const {
  if (b >= cols_) throw std::out_of_range("JointPMF2::row_conditional: column out of range");
  double mass = 0.0;
  for (std::size_t a = 0; a < rows_; ++a) mass += (*this)(a, b);
  if (mass <= 0.0) throw std::invalid_argument("JointPMF2::row_conditional: conditioning on a null event");
  std::vector<double> out(rows_);
  for (std::size_t a = 0; a < rows_; ++a) out[a] = (*this)(a, b) / mass;
  return DiscretePMF(std::move(out));
}

DiscreteJoint::DiscreteJoint(JointShape shape, std::vector<double> probs)
    : shape_(shape), probs_(std::move(probs)) {
  if (shape_.volume() == 0 || probs_.size() != shape_.volume()) {
    throw std::invalid_argument("DiscreteJoint: shape does not match number of probabilities");
  }
  check_mass(probs_, "DiscreteJoint");
}

JointPMF2 DiscreteJoint::yx() const {
  std::vector<double> out(shape_.ny * shape_.nx, 0.0);
  for (std::size_t y = 0; y < shape_.ny; ++y)
    for (std::size_t x = 0; x < shape_.nx; ++x)
      for (std::size_t z = 0; z < shape_.nz; ++z) out[y * shape_.nx + x] += (*this)(y, x, z);
  return JointPMF2(shape_.ny, shape_.nx, std::move(out));
}

JointPMF2 DiscreteJoint::yz() const {
  std::vector<double> out(shape_.ny * shape_.nz, 0.0);
  for (std::size_t y = 0; y < shape_.ny; ++y)
    for (std::size_t x = 0; x < shape_.nx; ++x)
      for (std::size_t z = 0; z < shape_.nz; ++z) out[y * shape_.nz + z] += (*this)(y, x, z);
  return JointPMF2(shape_.ny, shape_.nz, std::move(out));
}

JointPMF2 DiscreteJoint::xz() const {
  std::vector<double> out(shape_.nx * shape_.nz, 0.0);
  for (std::size_t y = 0; y < shape_.ny; ++y)
    for (std::size_t x = 0; x < shape_.nx; ++x)
      for (std::size_t z = 0; z < shape_.nz; ++z) out[x * shape_.nz + z] += (*this)(y, x, z);
  return JointPMF2(shape_.nx, shape_.nz, std::move(out));
}

DiscretePMF DiscreteJoint::y() const { return yx().row_marginal(); }
DiscretePMF DiscreteJoint::x() const { return yx().col_marginal(); }
DiscretePMF DiscreteJoint::z() const { return yz().col_marginal(); }

DeterministicMap::DeterministicMap(std::vector<std::size_t> table, std::size_t z_size)
    : table_(std::move(table)), z_size_(z_size) {
  if (table_.empty()) throw std::invalid_argument("DeterministicMap: empty table");
  const std::size_t needed = *std::max_element(table_.begin(), table_.end()) + 1;
  if (z_size_ == 0) z_size_ = needed;
  if (needed > z_size_) throw std::invalid_argument("DeterministicMap: z index exceeds declared z alphabet");
}

LossMatrix::LossMatrix(std::size_t size, std::vector<double> cost) : size_(size), cost_(std::move(cost)) {
  if (size_ == 0 || cost_.size() != size_ * size_) {
    throw std::invalid_argument("LossMatrix: cost must be a square |Y| x |Y| array");
  }
  for (double c : cost_) {
    if (!std::isfinite(c) || c < 0.0) throw std::invalid_argument("LossMatrix: costs must be finite and nonnegative");
    sup_norm_ = std::max(sup_norm_, c);
  }
}

LossMatrix::LossMatrix(const std::vector<std::vector<double>>& rows) : LossMatrix(rows.size(), [&] {
        std::vector<double> flat;
        for (const auto& r : rows) {
          if (r.size() != rows.size()) throw std::invalid_argument("LossMatrix: cost rows must be square");
          flat.insert(flat.end(), r.begin(), r.end());
        }
        return flat;
      }()) {}

LossMatrix zero_one_loss(std::size_t size) {
  std::vector<double> cost(size * size, 1.0);
  for (std::size_t i = 0; i < size; ++i) cost[i * size + i] = 0.0;
  return LossMatrix(size, std::move(cost));
}

LossMatrix squared_loss(std::span<const double> values) {
  const std::size_t k = values.size();
  std::vector<double> cost(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) cost[i * k + j] = (values[i] - values[j]) * (values[i] - values[j]);
  return LossMatrix(k, std::move(cost));
}

double kl_divergence(const DiscretePMF& p, const DiscretePMF& q) {
  if (p.size() != q.size()) throw std::invalid_argument("kl_divergence: alphabet sizes differ");
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) total += kl_term(p[i], q[i]);
  return total;
}

double mutual_information(const JointPMF2& joint) {
  const DiscretePMF pa = joint.row_marginal();
  const DiscretePMF pb = joint.col_marginal();
  double total = 0.0;
  for (std::size_t a = 0; a < joint.rows(); ++a)
    for (std::size_t b = 0; b < joint.cols(); ++b) total += kl_term(joint(a, b), pa[a] * pb[b]);
  return total;
}

double conditional_mutual_information(const DiscreteJoint& joint) {
  const JointShape& s = joint.shape();
  const JointPMF2 yz = joint.yz();
  const JointPMF2 xz = joint.xz();
  const DiscretePMF pz = joint.z();
  double total = 0.0;
  for (std::size_t y = 0; y < s.ny; ++y) {
    for (std::size_t x = 0; x < s.nx; ++x) {
      for (std::size_t z = 0; z < s.nz; ++z) {
        const double p = joint(y, x, z);
        if (p <= 0.0) continue;
        // p > 0 forces all three marginals positive.
        total += p * std::log(p * pz[z] / (yz(y, z) * xz(x, z)));
      }
    }
  }
  return total;
}

namespace {

// Expected loss sum_y P(y, obs) l(y, d) for every decision d, minimized.
std::pair<double, std::size_t> best_decision(const JointPMF2& joint, const LossMatrix& loss, std::size_t obs) {
  double best = std::numeric_limits<double>::infinity();
  std::size_t arg = 0;
  for (std::size_t d = 0; d < loss.size(); ++d) {
    double risk = 0.0;
    for (std::size_t y = 0; y < joint.rows(); ++y) risk += joint(y, obs) * loss(y, d);
    if (risk < best) {
      best = risk;
      arg = d;
    }
  }
  return {best, arg};
}

}  // namespace

double bayes_risk(const JointPMF2& joint, const LossMatrix& loss) {
  if (loss.size() != joint.rows()) throw std::invalid_argument("bayes_risk: loss dimension does not match |Y|");
  double total = 0.0;
  for (std::size_t obs = 0; obs < joint.cols(); ++obs) total += best_decision(joint, loss, obs).first;
  return total;
}

std::vector<std::size_t> bayes_rule(const JointPMF2& joint, const LossMatrix& loss) {
  if (loss.size() != joint.rows()) throw std::invalid_argument("bayes_rule: loss dimension does not match |Y|");
  std::vector<std::size_t> rule(joint.cols());
  for (std::size_t obs = 0; obs < joint.cols(); ++obs) rule[obs] = best_decision(joint, loss, obs).second;
  return rule;
}

double uninformed_risk(const DiscretePMF& py, const LossMatrix& loss) {
  if (loss.size() != py.size()) throw std::invalid_argument("uninformed_risk: loss dimension does not match |Y|");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t d = 0; d < loss.size(); ++d) {
    double risk = 0.0;
    for (std::size_t y = 0; y < py.size(); ++y) risk += py[y] * loss(y, d);
    best = std::min(best, risk);
  }
  return best;
}

DiscreteJoint apply_map(const JointPMF2& yx, const DeterministicMap& map) {
  if (map.x_size() != yx.cols()) throw std::invalid_argument("apply_map: map is not total on the X alphabet");
  const JointShape shape{yx.rows(), yx.cols(), map.z_size()};
  std::vector<double> probs(shape.volume(), 0.0);
  for (std::size_t y = 0; y < shape.ny; ++y)
    for (std::size_t x = 0; x < shape.nx; ++x) probs[(y * shape.nx + x) * shape.nz + map(x)] = yx(y, x);
  return DiscreteJoint(shape, std::move(probs));
}

void check_map_support(const DiscreteJoint& joint, const DeterministicMap& map) {
  const JointShape& s = joint.shape();
  if (map.x_size() != s.nx || map.z_size() > s.nz) {
    throw std::invalid_argument("map alphabet sizes do not match the joint");
  }
  for (std::size_t y = 0; y < s.ny; ++y)
    for (std::size_t x = 0; x < s.nx; ++x)
      for (std::size_t z = 0; z < s.nz; ++z)
        if (joint(y, x, z) > 0.0 && z != map(x)) {
          throw std::invalid_argument("joint support violates z = map(x) at x=" + std::to_string(x) +
                                      ", z=" + std::to_string(z));
        }
}

double excess_risk(const DiscreteJoint& joint, const DeterministicMap& map, const LossMatrix& loss) {
  check_map_support(joint, map);
  return bayes_risk(joint.yz(), loss) - bayes_risk(joint.yx(), loss);
}

double conditional_product_l1(const DiscreteJoint& joint) {
  const JointShape& s = joint.shape();
  const JointPMF2 yz = joint.yz();
  const JointPMF2 xz = joint.xz();
  const DiscretePMF pz = joint.z();
  double total = 0.0;
  for (std::size_t y = 0; y < s.ny; ++y)
    for (std::size_t x = 0; x < s.nx; ++x)
      for (std::size_t z = 0; z < s.nz; ++z) {
        if (pz[z] <= 0.0) continue;
        total += std::abs(joint(y, x, z) - xz(x, z) * yz(y, z) / pz[z]);
      }
  return total;
}

}  // namespace lossless
