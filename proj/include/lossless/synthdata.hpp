#pragma once

// Seeded generators: continuous datasets under the null (Y independent of X
// given T(X)) and under the alternative, plus random discrete joints, losses
// and markets used by the oracle sweeps.
//
// Continuous model: Z is one of k atoms z_j = j/k. X1 is uniform on the
// interval [z_j, z_j + w] (w < 1/k keeps the intervals apart, so T(X) = Z is
// recovered from X1 alone), X2 is uniform on [0, 1], and
//
//   Y = g(z_j) + theta X2 + N,  N ~ Uniform[-s, s].
//
// theta = 0 is the null. Record i uses the counter-based stream keyed by
// (seed, i), so any subset of records can be generated independently.

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "lossless/discrete.hpp"
#include "lossless/partition_test.hpp"
#include "lossless/portfolio.hpp"

namespace lossless {

struct H0Config {
  std::size_t k = 4;
  double interval_width = 0.2;
  /// g(z_j); empty means g(z_j) = j / k.
  std::vector<double> regression;
  double noise_scale = 0.1;
  std::size_t n = 1000;
  std::uint64_t seed = 0;

  void validate() const;
  double atom(std::size_t j) const { return static_cast<double>(j) / static_cast<double>(k); }
  double g(std::size_t j) const;
};

struct H1Config : H0Config {
  double theta = 0.5;
};

/// d = 2 (X1, X2), d' = 1 (Z).
Dataset gen_h0(const H0Config& cfg);
Dataset gen_h1(const H1Config& cfg);

/// T(x): index of the atom whose X1 interval contains x[0].
std::size_t atom_of(const H0Config& cfg, double x1);

/// The population law of the continuous model discretized to
/// (Y bin, X cell, Z atom). X cells are (atom, X2 bin) pairs indexed
/// atom * x2_bins + bin; Y bins split [min Y, max Y] evenly. Cell masses
/// integrate the uniform noise exactly over `quadrature` midpoints in X2.
DiscreteJoint discretized_population(const H1Config& cfg, std::size_t x2_bins, std::size_t y_bins,
                                     std::size_t quadrature = 256);

struct JointSizes {
  std::size_t ny = 2;
  std::size_t nx = 4;
  std::size_t nz = 2;
};

/// A joint with Y -> Z -> X Markov and a surjective T with supp P_{X|Z=z} in T^-1(z).
std::pair<DiscreteJoint, DeterministicMap> gen_markov_joint(const JointSizes& sizes, std::uint64_t seed);

/// An arbitrary joint P(y, x) pushed through a random map T.
std::pair<DiscreteJoint, DeterministicMap> gen_random_joint(const JointSizes& sizes, std::uint64_t seed);

/// Costs drawn uniformly on [0, sup].
LossMatrix gen_random_loss(std::size_t size, double sup, std::uint64_t seed);

struct MarketSizes {
  std::size_t assets = 3;
  std::size_t outcomes = 4;
  std::size_t nx = 4;
  std::size_t nz = 2;
  /// Returns are drawn in [e^-c_max, e^c_max].
  double c_max = 0.5;
};

MarketModel gen_market(const MarketSizes& sizes, std::uint64_t seed);

}  // namespace lossless
