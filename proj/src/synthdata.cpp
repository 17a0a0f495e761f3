#include "lossless/synthdata.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lossless/rng.hpp"

namespace lossless {

namespace {

// Stream ids keep the generators' draws unrelated for a shared seed.
enum Stream : std::uint64_t {
  kRecords = 1,
  kMarkov = 2,
  kRandomJoint = 3,
  kLoss = 4,
  kMarket = 5,
};

std::vector<double> simplex_draw(SeqRng& rng, std::size_t size) {
  std::vector<double> p(size);
  double total = 0.0;
  for (double& v : p) {
    v = rng.exponential();
    total += v;
  }
  for (double& v : p) v /= total;
  return p;
}

Dataset generate(const H0Config& cfg, double theta) {
  cfg.validate();
  const CounterRng rng(cfg.seed, kRecords);
  std::vector<double> values(cfg.n * 4);
  for (std::size_t i = 0; i < cfg.n; ++i) {
    const std::uint64_t base = static_cast<std::uint64_t>(i) * 4;
    const std::size_t j = rng.below(base, cfg.k);
    const double x1 = cfg.atom(j) + cfg.interval_width * rng.uniform(base + 1);
    const double x2 = rng.uniform(base + 2);
    const double noise = cfg.noise_scale * (2.0 * rng.uniform(base + 3) - 1.0);
    double* row = values.data() + i * 4;
    row[0] = x1;
    row[1] = x2;
    row[2] = cfg.g(j) + theta * x2 + noise;
    row[3] = cfg.atom(j);
  }
  return Dataset(2, 1, std::move(values));
}

// Length of [lo, hi] covered by [a, b].
double overlap(double lo, double hi, double a, double b) { return std::max(0.0, std::min(hi, b) - std::max(lo, a)); }

}  // namespace

void H0Config::validate() const {
  if (k == 0) throw std::invalid_argument("H0Config: k must be positive");
  if (!(interval_width >= 0.0 && interval_width < 1.0 / static_cast<double>(k))) {
    throw std::invalid_argument("H0Config: X1 intervals overlap (need interval_width < 1/k)");
  }
  if (!regression.empty() && regression.size() != k) throw std::invalid_argument("H0Config: regression needs k values");
  if (!(noise_scale >= 0.0) || !std::isfinite(noise_scale)) throw std::invalid_argument("H0Config: bad noise_scale");
  if (n == 0) throw std::invalid_argument("H0Config: n must be positive");
}

double H0Config::g(std::size_t j) const { return regression.empty() ? atom(j) : regression[j]; }

Dataset gen_h0(const H0Config& cfg) { return generate(cfg, 0.0); }

Dataset gen_h1(const H1Config& cfg) {
  if (cfg.theta == 0.0 || !std::isfinite(cfg.theta)) throw std::invalid_argument("gen_h1: theta must be nonzero");
  return generate(cfg, cfg.theta);
}

std::size_t atom_of(const H0Config& cfg, double x1) {
  const double pos = std::floor(x1 * static_cast<double>(cfg.k));
  const std::size_t j = pos <= 0.0 ? 0 : std::min(static_cast<std::size_t>(pos), cfg.k - 1);
  if (x1 < cfg.atom(j) || x1 > cfg.atom(j) + cfg.interval_width) {
    throw std::invalid_argument("atom_of: x1 lies in no atom interval");
  }
  return j;
}

DiscreteJoint discretized_population(const H1Config& cfg, std::size_t x2_bins, std::size_t y_bins,
                                     std::size_t quadrature) {
  cfg.validate();
  if (x2_bins == 0 || y_bins == 0 || quadrature == 0) throw std::invalid_argument("discretized_population: empty grid");
  const std::size_t k = cfg.k;
  const double s = cfg.noise_scale;
  double g_lo = cfg.g(0), g_hi = cfg.g(0);
  for (std::size_t j = 1; j < k; ++j) {
    g_lo = std::min(g_lo, cfg.g(j));
    g_hi = std::max(g_hi, cfg.g(j));
  }
  const double y_lo = g_lo + std::min(0.0, cfg.theta) - s;
  const double y_hi = g_hi + std::max(0.0, cfg.theta) + s;
  const double y_width = y_hi > y_lo ? (y_hi - y_lo) / static_cast<double>(y_bins) : 1.0;

  const JointShape shape{y_bins, k * x2_bins, k};
  std::vector<double> probs(shape.volume(), 0.0);
  const double cell_mass = 1.0 / static_cast<double>(k * x2_bins * quadrature);
  std::vector<double> py(y_bins);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t b = 0; b < x2_bins; ++b) {
      std::fill(py.begin(), py.end(), 0.0);
      for (std::size_t q = 0; q < quadrature; ++q) {
        const double x2 = (static_cast<double>(b) + (static_cast<double>(q) + 0.5) / static_cast<double>(quadrature)) /
                          static_cast<double>(x2_bins);
        const double mean = cfg.g(j) + cfg.theta * x2;
        if (s > 0.0) {
          for (std::size_t yb = 0; yb < y_bins; ++yb) {
            const double lo = y_lo + static_cast<double>(yb) * y_width;
            py[yb] += overlap(lo, lo + y_width, mean - s, mean + s) / (2.0 * s);
          }
        } else {
          const double pos = std::floor((mean - y_lo) / y_width);
          py[std::min(static_cast<std::size_t>(std::max(0.0, pos)), y_bins - 1)] += 1.0;
        }
      }
      const std::size_t x = j * x2_bins + b;
      for (std::size_t yb = 0; yb < y_bins; ++yb) probs[(yb * shape.nx + x) * shape.nz + j] = py[yb] * cell_mass;
    }
  }
  return DiscreteJoint(shape, std::move(probs));
}

std::pair<DiscreteJoint, DeterministicMap> gen_markov_joint(const JointSizes& sizes, std::uint64_t seed) {
  if (sizes.ny == 0 || sizes.nz == 0 || sizes.nx < sizes.nz) {
    throw std::invalid_argument("gen_markov_joint: need |Y| >= 1 and |X| >= |Z| >= 1");
  }
  SeqRng rng(seed, kMarkov);
  std::vector<std::size_t> table(sizes.nx);
  for (std::size_t x = 0; x < sizes.nx; ++x) table[x] = x < sizes.nz ? x : rng.below(sizes.nz);
  for (std::size_t i = sizes.nx; i-- > 1;) std::swap(table[i], table[rng.below(i + 1)]);
  DeterministicMap map(table, sizes.nz);

  const std::vector<double> pz = simplex_draw(rng, sizes.nz);
  std::vector<std::vector<double>> py_given_z(sizes.nz), px_given_z(sizes.nz, std::vector<double>(sizes.nx, 0.0));
  for (std::size_t z = 0; z < sizes.nz; ++z) {
    py_given_z[z] = simplex_draw(rng, sizes.ny);
    std::vector<std::size_t> members;
    for (std::size_t x = 0; x < sizes.nx; ++x)
      if (table[x] == z) members.push_back(x);
    const std::vector<double> w = simplex_draw(rng, members.size());
    for (std::size_t i = 0; i < members.size(); ++i) px_given_z[z][members[i]] = w[i];
  }

  const JointShape shape{sizes.ny, sizes.nx, sizes.nz};
  std::vector<double> probs(shape.volume(), 0.0);
  for (std::size_t y = 0; y < sizes.ny; ++y)
    for (std::size_t x = 0; x < sizes.nx; ++x) {
      const std::size_t z = table[x];
      probs[(y * sizes.nx + x) * sizes.nz + z] = pz[z] * py_given_z[z][y] * px_given_z[z][x];
    }
  double total = 0.0;
  for (double p : probs) total += p;
  for (double& p : probs) p /= total;
  return {DiscreteJoint(shape, std::move(probs)), std::move(map)};
}

std::pair<DiscreteJoint, DeterministicMap> gen_random_joint(const JointSizes& sizes, std::uint64_t seed) {
  if (sizes.ny == 0 || sizes.nx == 0 || sizes.nz == 0) throw std::invalid_argument("gen_random_joint: empty alphabet");
  SeqRng rng(seed, kRandomJoint);
  std::vector<std::size_t> table(sizes.nx);
  for (auto& t : table) t = rng.below(sizes.nz);
  DeterministicMap map(table, sizes.nz);
  const JointPMF2 yx(sizes.ny, sizes.nx, simplex_draw(rng, sizes.ny * sizes.nx));
  return {apply_map(yx, map), std::move(map)};
}

LossMatrix gen_random_loss(std::size_t size, double sup, std::uint64_t seed) {
  if (!(sup >= 0.0)) throw std::invalid_argument("gen_random_loss: sup must be nonnegative");
  SeqRng rng(seed, kLoss);
  std::vector<double> cost(size * size);
  for (double& c : cost) c = sup * rng.uniform();
  return LossMatrix(size, std::move(cost));
}

MarketModel gen_market(const MarketSizes& sizes, std::uint64_t seed) {
  if (sizes.assets == 0 || sizes.outcomes == 0) throw std::invalid_argument("gen_market: empty market");
  SeqRng rng(seed, kMarket);
  std::vector<std::vector<double>> returns(sizes.outcomes, std::vector<double>(sizes.assets));
  for (auto& r : returns)
    for (double& v : r) v = std::exp(sizes.c_max * (2.0 * rng.uniform() - 1.0));
  auto [joint, map] = gen_random_joint({sizes.outcomes, sizes.nx, sizes.nz}, rng.bits());
  return MarketModel(std::move(returns), std::move(joint), std::move(map));
}

}  // namespace lossless
