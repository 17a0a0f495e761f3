#include "lossless/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "lossless/io.hpp"
#include "lossless/rng.hpp"

namespace lossless {

namespace {

constexpr std::uint64_t kResampleStream = 11;

Dataset resample(const Dataset& source, std::size_t n, std::uint64_t seed) {
  const CounterRng rng(seed, kResampleStream);
  std::vector<double> values;
  values.reserve(n * source.width());
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = source.row(rng.below(i, source.n()));
    values.insert(values.end(), r.begin(), r.end());
  }
  return Dataset(source.d(), source.d_prime(), std::move(values));
}

Dataset replicate_data(const ExperimentPlan& plan, std::size_t n, std::uint64_t seed) {
  switch (plan.scenario) {
    case Scenario::h0: {
      H0Config cfg = plan.generator;
      cfg.n = n;
      cfg.seed = seed;
      return gen_h0(cfg);
    }
    case Scenario::h1: {
      H1Config cfg = plan.generator;
      cfg.n = n;
      cfg.seed = seed;
      return gen_h1(cfg);
    }
    case Scenario::file:
      return resample(*plan.source, n, seed);
  }
  throw std::logic_error("unknown scenario");
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Evaluates task(i) for i in [0, count) on `threads` workers.
template <typename Task>
void parallel_for(std::size_t count, std::size_t threads, Task&& task) {
  threads = std::clamp<std::size_t>(threads, 1, count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t i; !failed && (i = next.fetch_add(1)) < count;) {
      try {
        task(i);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

void ExperimentPlan::validate() const {
  if (n_grid.empty()) throw std::invalid_argument("plan: n grid is empty");
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] == 0 || (i > 0 && n_grid[i] <= n_grid[i - 1])) {
      throw std::invalid_argument("plan: n grid must be positive and strictly increasing");
    }
  }
  if (reps == 0) throw std::invalid_argument("plan: reps must be at least 1");
  cfg.validate();
  if (scenario == Scenario::file && !source) throw std::invalid_argument("plan: file scenario needs a source dataset");
  if (scenario == Scenario::h1 && generator.theta == 0.0) throw std::invalid_argument("plan: h1 needs theta != 0");
}

MCResult run_mc(const ExperimentPlan& plan) {
  plan.validate();
  const std::size_t threads = plan.threads ? plan.threads : std::max(1u, std::thread::hardware_concurrency());
  MCResult result;
  result.reps = plan.reps;
  for (std::size_t n : plan.n_grid) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<TestOutcome> outcomes(plan.reps);
    parallel_for(plan.reps, threads, [&](std::size_t r) {
      outcomes[r] = run_test(replicate_data(plan, n, plan.base_seed + r), plan.cfg);
    });
    std::vector<double> ls, ts;
    std::size_t rejections = 0;
    for (const auto& o : outcomes) {
      ls.push_back(o.L_n);
      ts.push_back(o.t_n);
      rejections += o.reject ? 1 : 0;
    }
    MCRow row;
    row.n = n;
    row.rejection_rate = static_cast<double>(rejections) / static_cast<double>(plan.reps);
    row.mean_L_n = mean(ls);
    row.median_L_n = median(ls);
    row.mean_t_n = mean(ts);
    row.median_t_n = median(ts);
    row.type1_bound = outcomes.front().type1_bound;
    row.type1_allowance = row.type1_bound + binomial_margin(row.type1_bound, plan.reps);
    row.past_burn_in = n >= plan.min_n;
    row.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    result.rows.push_back(row);
  }
  return result;
}

void write_mc_csv(std::ostream& out, const MCResult& result) {
  std::string text = "n,rejection_rate,mean_Ln,mean_tn,type1_bound\n";
  for (const auto& r : result.rows) {
    text += std::to_string(r.n) + "," + io::format_double(r.rejection_rate) + "," + io::format_double(r.mean_L_n) + "," +
            io::format_double(r.mean_t_n) + "," + io::format_double(r.type1_bound) + "\n";
  }
  out << text;
}

double binomial_margin(double p, std::size_t trials, double confidence) {
  if (trials == 0) throw std::invalid_argument("binomial_margin: no trials");
  if (!(p > 0.0)) return 0.0;
  if (p >= 1.0) return 0.0;
  const double nt = static_cast<double>(trials);
  double cdf = 0.0;
  std::size_t k = 0;
  for (; k <= trials; ++k) {
    const double kk = static_cast<double>(k);
    const double log_pmf = std::lgamma(nt + 1.0) - std::lgamma(kk + 1.0) - std::lgamma(nt - kk + 1.0) +
                           kk * std::log(p) + (nt - kk) * std::log1p(-p);
    cdf += std::exp(log_pmf);
    if (cdf >= confidence) break;
  }
  return std::max(0.0, static_cast<double>(std::min(k, trials)) / nt - p);
}

SelectionResult select_features(const Dataset& data, const TestConfig& cfg) {
  const std::size_t d = data.d();
  const std::size_t n = data.n();
  std::vector<double> xy;
  xy.reserve(n * (d + 1));
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = data.x(i);
    xy.insert(xy.end(), x.begin(), x.end());
    xy.push_back(data.y(i));
  }
  const Dataset scaled = scale_unit(Dataset(d, 0, std::move(xy))).first;
  const double h = resolve_h(cfg, n, d, d);

  auto evaluate = [&](const std::vector<std::size_t>& subset) {
    const std::size_t dp = subset.size();
    std::vector<double> values;
    values.reserve(n * (d + 1 + dp));
    for (std::size_t i = 0; i < n; ++i) {
      const auto r = scaled.row(i);
      values.insert(values.end(), r.begin(), r.end());
      for (std::size_t j : subset) values.push_back(r[j]);
    }
    return run_test_scaled(Dataset(d, dp, std::move(values)), h, cfg.c1);
  };

  SelectionResult result;
  std::vector<std::size_t> chosen;
  TestOutcome current = evaluate(chosen);
  result.trace.push_back({chosen, current});
  while (current.reject && chosen.size() < d) {
    std::optional<SelectionStep> best;
    for (std::size_t j = 0; j < d; ++j) {
      if (std::find(chosen.begin(), chosen.end(), j) != chosen.end()) continue;
      std::vector<std::size_t> candidate = chosen;
      candidate.push_back(j);
      std::sort(candidate.begin(), candidate.end());
      SelectionStep step{candidate, evaluate(candidate)};
      result.trace.push_back(step);
      if (!best || step.outcome.L_n < best->outcome.L_n) best = std::move(step);
    }
    chosen = best->subset;
    current = best->outcome;
  }
  result.selected = chosen;
  result.accepted = !current.reject;
  return result;
}

}  // namespace lossless
