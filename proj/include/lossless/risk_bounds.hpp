#pragma once

// Upper bounds on the excess minimum risk L*(Y|T(X)) - L*(Y|X) in terms of
// the information loss I(Y;X) - I(Y;T(X)), each reported next to the exact
// excess computed by the discrete oracle.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "lossless/discrete.hpp"

namespace lossless {

enum class Corollary { bounded_loss, subgaussian, envelope };

/// "cor1", "cor2" or "cor2a".
std::string_view corollary_tag(Corollary c);

inline constexpr double kBoundSlack = 1e-9;

struct BoundReport {
  /// I(Y;X) - I(Y;T(X)).
  double delta_I = 0.0;
  double bound = 0.0;
  /// Exact excess risk.
  double excess = 0.0;
  Corollary corollary = Corollary::bounded_loss;
  /// excess <= bound + kBoundSlack.
  bool holds = false;
  /// The subgaussian profile was supplied by the caller rather than certified.
  bool caller_asserted = false;
};

/// Hoeffding variance proxy of a variable confined to an interval of this width.
double hoeffding_sigma(double range_width);

/// I(Y;X) - I(Y;Z) for a joint supported on z = map(x).
double information_loss(const DiscreteJoint& joint, const DeterministicMap& map);

/// (||l||_inf / sqrt 2) sqrt(delta_I).
BoundReport bound_bounded_loss(const DiscreteJoint& joint, const DeterministicMap& map, const LossMatrix& loss);

/// sigma^2(y) per Y symbol, with E[sigma^2(Y)] under the joint's Y marginal.
struct SubgaussianProfile {
  std::vector<double> sigma_sq;
  double expected_sigma_sq = 0.0;
  /// False when sigma_sq came from hoeffding_profile.
  bool caller_asserted = true;
};

SubgaussianProfile make_profile(std::vector<double> sigma_sq, const DiscretePMF& py);

/// Certified profile: for the Bayes rule f* from X, sigma^2(y) is the largest
/// Hoeffding proxy of l(y, f*(X)) given T(X) = z, maximized over z.
SubgaussianProfile hoeffding_profile(const DiscreteJoint& joint, const DeterministicMap& map, const LossMatrix& loss);

/// sqrt(2 E[sigma^2(Y)] delta_I); `excess` is computed for `loss`.
BoundReport bound_subgaussian(const DiscreteJoint& joint, const DeterministicMap& map, const LossMatrix& loss,
                              const SubgaussianProfile& profile);

/// delta_I <= 2 delta^2 / c^2: T is delta-lossless for losses with ||l||_inf <= c.
bool delta_lossless_bounded(double delta_I, double delta, double c);
bool delta_lossless_bounded(const DiscreteJoint& joint, const DeterministicMap& map, double delta, double c);

/// delta_I <= 2 delta^2 / c^2 for the family of losses whose optimal loss
/// l(y, f*(X)) is dominated by an envelope g with E[g^2(Y)] <= c^2.
/// Throws when the envelope violates E[g^2(Y)] <= c^2.
bool family_lossless_check(const DiscreteJoint& joint, const DeterministicMap& map, double delta, double c,
                           std::span<const double> envelope);

/// Bound sqrt(E[g^2(Y)] delta_I / 2) for a loss dominated by `envelope` at
/// the Bayes rule. Throws when l(y, f*(x)) > g(y) on the support.
BoundReport bound_envelope(const DiscreteJoint& joint, const DeterministicMap& map, const LossMatrix& loss,
                           std::span<const double> envelope);

/// 2 E[N^4] + 32 K^4: a bound on E[sigma^2(Y)] for Y = m(X) + N with |m| <= K
/// under squared loss.
double regression_sigma(double fourth_moment_noise, double K);

struct DvGap {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// |E h(U,V) - E h(U',V')| against sqrt(2 E[sigma^2(U)] I(U;V)), where
/// (U',V') ~ P_U P_V and sigma^2(u) is the Hoeffding proxy of h(u, .).
/// `h` is |U| x |V| row-major.
DvGap dv_gap_check(const JointPMF2& joint, std::span<const double> h);

/// Quantizer T_w(x) = floor(position(x) / w), compacted to 0..k-1 in order.
DeterministicMap quantizer_map(std::span<const double> positions, double width);

/// Per width, the bounded-loss bound and exact excess for the quantized observation.
std::vector<BoundReport> quantizer_sequence_bound(const JointPMF2& yx, std::span<const double> positions,
                                                  std::span<const double> widths, const LossMatrix& loss);

}  // namespace lossless
