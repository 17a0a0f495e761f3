#include "lossless/risk_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace lossless {

namespace {

double sqrt_plus(double v) { return std::sqrt(std::max(0.0, v)); }

BoundReport make_report(double delta_I, double bound, double excess, Corollary c) {
  BoundReport r;
  r.delta_I = delta_I;
  r.bound = bound;
  r.excess = excess;
  r.corollary = c;
  r.holds = excess <= bound + kBoundSlack;
  return r;
}

double expectation(std::span<const double> values, const DiscretePMF& p) {
  if (values.size() != p.size()) throw std::invalid_argument("per-symbol profile does not match |Y|");
  double e = 0.0;
  for (std::size_t y = 0; y < p.size(); ++y) e += p[y] * values[y];
  return e;
}

}  // namespace

std::string_view corollary_tag(Corollary c) {
  switch (c) {
    case Corollary::bounded_loss:
      return "cor1";
    case Corollary::subgaussian:
      return "cor2";
    case Corollary::envelope:
      return "cor2a";
  }
  return "cor1";
}

double hoeffding_sigma(double range_width) {
  if (!(range_width >= 0.0)) throw std::invalid_argument("hoeffding_sigma: width must be nonnegative");
  return range_width * range_width / 4.0;
}

double information_loss(const DiscreteJoint& joint, const DeterministicMap& map) {
  check_map_support(joint, map);
  return mutual_information(joint.yx()) - mutual_information(joint.yz());
}

BoundReport bound_bounded_loss(const DiscreteJoint& joint, const DeterministicMap& map, const LossMatrix& loss) {
  const double delta_I = information_loss(joint, map);
  const double bound = loss.sup_norm() / std::sqrt(2.0) * sqrt_plus(delta_I);
  return make_report(delta_I, bound, excess_risk(joint, map, loss), Corollary::bounded_loss);
}

SubgaussianProfile make_profile(std::vector<double> sigma_sq, const DiscretePMF& py) {
  for (double s : sigma_sq)
    if (!(s >= 0.0) || !std::isfinite(s)) throw std::invalid_argument("subgaussian profile must be finite and nonnegative");
  SubgaussianProfile p;
  p.expected_sigma_sq = expectation(sigma_sq, py);
  p.sigma_sq = std::move(sigma_sq);
  return p;
}

SubgaussianProfile hoeffding_profile(const DiscreteJoint& joint, const DeterministicMap& map, const LossMatrix& loss) {
  check_map_support(joint, map);
  const JointPMF2 yx = joint.yx();
  const std::vector<std::size_t> rule = bayes_rule(yx, loss);
  const DiscretePMF px = yx.col_marginal();
  const std::size_t ny = yx.rows();
  std::vector<double> sigma_sq(ny, 0.0);
  for (std::size_t y = 0; y < ny; ++y) {
    // Range of l(y, f*(X)) over the support of X within each T-cell.
    std::map<std::size_t, std::pair<double, double>> ranges;
    for (std::size_t x = 0; x < px.size(); ++x) {
      if (px[x] <= 0.0) continue;
      const double v = loss(y, rule[x]);
      auto [it, fresh] = ranges.try_emplace(map(x), v, v);
      if (!fresh) {
        it->second.first = std::min(it->second.first, v);
        it->second.second = std::max(it->second.second, v);
      }
    }
    for (const auto& [z, r] : ranges) sigma_sq[y] = std::max(sigma_sq[y], hoeffding_sigma(r.second - r.first));
  }
  SubgaussianProfile p = make_profile(std::move(sigma_sq), yx.row_marginal());
  p.caller_asserted = false;
  return p;
}

BoundReport bound_subgaussian(const DiscreteJoint& joint, const DeterministicMap& map, const LossMatrix& loss,
                              const SubgaussianProfile& profile) {
  if (profile.sigma_sq.size() != joint.shape().ny) throw std::invalid_argument("subgaussian profile does not match |Y|");
  const double delta_I = information_loss(joint, map);
  const double bound = std::sqrt(2.0 * profile.expected_sigma_sq * std::max(0.0, delta_I));
  BoundReport r = make_report(delta_I, bound, excess_risk(joint, map, loss), Corollary::subgaussian);
  r.caller_asserted = profile.caller_asserted;
  return r;
}

bool delta_lossless_bounded(double delta_I, double delta, double c) {
  if (!(delta > 0.0) || !(c > 0.0)) throw std::invalid_argument("delta_lossless_bounded: delta and c must be positive");
  return delta_I <= 2.0 * delta * delta / (c * c);
}

bool delta_lossless_bounded(const DiscreteJoint& joint, const DeterministicMap& map, double delta, double c) {
  return delta_lossless_bounded(information_loss(joint, map), delta, c);
}

bool family_lossless_check(const DiscreteJoint& joint, const DeterministicMap& map, double delta, double c,
                           std::span<const double> envelope) {
  if (!(delta > 0.0) || !(c >= 0.0)) throw std::invalid_argument("family_lossless_check: need delta > 0 and c >= 0");
  for (double g : envelope)
    if (!(g >= 0.0) || !std::isfinite(g)) throw std::invalid_argument("family_lossless_check: envelope must be nonnegative");
  const double second_moment = [&] {
    std::vector<double> sq(envelope.begin(), envelope.end());
    for (double& v : sq) v *= v;
    return expectation(sq, joint.y());
  }();
  if (second_moment > c * c * (1.0 + kMassTolerance)) {
    throw std::invalid_argument("family_lossless_check: envelope has E[g^2(Y)] > c^2");
  }
  const double delta_I = information_loss(joint, map);
  if (c == 0.0) return true;
  return delta_I <= 2.0 * delta * delta / (c * c);
}

BoundReport bound_envelope(const DiscreteJoint& joint, const DeterministicMap& map, const LossMatrix& loss,
                           std::span<const double> envelope) {
  const JointPMF2 yx = joint.yx();
  if (envelope.size() != yx.rows()) throw std::invalid_argument("bound_envelope: envelope does not match |Y|");
  const std::vector<std::size_t> rule = bayes_rule(yx, loss);
  for (std::size_t y = 0; y < yx.rows(); ++y)
    for (std::size_t x = 0; x < yx.cols(); ++x)
      if (yx(y, x) > 0.0 && loss(y, rule[x]) > envelope[y]) {
        throw std::invalid_argument("bound_envelope: loss at the Bayes rule exceeds the envelope");
      }
  std::vector<double> sq(envelope.begin(), envelope.end());
  for (double& v : sq) v *= v;
  const double second_moment = expectation(sq, yx.row_marginal());
  const double delta_I = information_loss(joint, map);
  const double bound = std::sqrt(0.5 * second_moment * std::max(0.0, delta_I));
  return make_report(delta_I, bound, excess_risk(joint, map, loss), Corollary::envelope);
}

double regression_sigma(double fourth_moment_noise, double K) {
  if (!(fourth_moment_noise >= 0.0) || !(K >= 0.0)) throw std::invalid_argument("regression_sigma: arguments must be nonnegative");
  return 2.0 * fourth_moment_noise + 32.0 * K * K * K * K;
}

DvGap dv_gap_check(const JointPMF2& joint, std::span<const double> h) {
  const std::size_t nu = joint.rows();
  const std::size_t nv = joint.cols();
  if (h.size() != nu * nv) throw std::invalid_argument("dv_gap_check: h must be |U| x |V|");
  const DiscretePMF pu = joint.row_marginal();
  const DiscretePMF pv = joint.col_marginal();
  double dependent = 0.0;
  double independent = 0.0;
  double expected_sigma_sq = 0.0;
  for (std::size_t u = 0; u < nu; ++u) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t v = 0; v < nv; ++v) {
      const double value = h[u * nv + v];
      dependent += joint(u, v) * value;
      independent += pu[u] * pv[v] * value;
      lo = std::min(lo, value);
      hi = std::max(hi, value);
    }
    expected_sigma_sq += pu[u] * hoeffding_sigma(hi - lo);
  }
  DvGap gap;
  gap.lhs = std::abs(dependent - independent);
  gap.rhs = std::sqrt(2.0 * expected_sigma_sq * mutual_information(joint));
  gap.holds = gap.lhs <= gap.rhs + kBoundSlack;
  return gap;
}

DeterministicMap quantizer_map(std::span<const double> positions, double width) {
  if (!(width > 0.0)) throw std::invalid_argument("quantizer_map: width must be positive");
  std::vector<long long> cells(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) cells[i] = static_cast<long long>(std::floor(positions[i] / width));
  std::vector<long long> distinct = cells;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<std::size_t> table(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    table[i] = static_cast<std::size_t>(std::lower_bound(distinct.begin(), distinct.end(), cells[i]) - distinct.begin());
  }
  return DeterministicMap(std::move(table), distinct.size());
}

std::vector<BoundReport> quantizer_sequence_bound(const JointPMF2& yx, std::span<const double> positions,
                                                  std::span<const double> widths, const LossMatrix& loss) {
  if (positions.size() != yx.cols()) throw std::invalid_argument("quantizer_sequence_bound: one position per X symbol");
  std::vector<BoundReport> out;
  out.reserve(widths.size());
  for (double w : widths) {
    const DeterministicMap map = quantizer_map(positions, w);
    out.push_back(bound_bounded_loss(apply_map(yx, map), map, loss));
  }
  return out;
}

}  // namespace lossless
