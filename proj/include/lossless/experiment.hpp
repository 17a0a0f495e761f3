#pragma once

// Monte Carlo consistency experiment and greedy lossless feature selection.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "lossless/partition_test.hpp"
#include "lossless/synthdata.hpp"

namespace lossless {

enum class Scenario { h0, h1, file };

struct ExperimentPlan {
  Scenario scenario = Scenario::h0;
  std::vector<std::size_t> n_grid{1000, 10000, 100000};
  std::size_t reps = 200;
  TestConfig cfg;
  std::uint64_t base_seed = 0;
  /// Generator parameters for h0 / h1; n and seed are set per replicate.
  H1Config generator;
  /// Source sample for the file scenario, resampled with replacement.
  std::optional<Dataset> source;
  /// Sizes below this are reported but not held to the Type I bound.
  std::size_t min_n = 1000;
  /// 0 means one worker per hardware thread.
  std::size_t threads = 0;

  void validate() const;
};

struct MCRow {
  std::size_t n = 0;
  double rejection_rate = 0.0;
  double mean_L_n = 0.0;
  double median_L_n = 0.0;
  double mean_t_n = 0.0;
  double median_t_n = 0.0;
  double type1_bound = 0.0;
  /// type1_bound plus the one-sided 99% binomial margin for `reps` trials.
  double type1_allowance = 0.0;
  bool past_burn_in = false;
  double wall_time = 0.0;
};

struct MCResult {
  std::size_t reps = 0;
  std::vector<MCRow> rows;
};

/// Replicate r at every n uses seed base_seed + r. Aggregates do not depend
/// on the thread count.
MCResult run_mc(const ExperimentPlan& plan);

/// Columns n, rejection_rate, mean_Ln, mean_tn, type1_bound.
void write_mc_csv(std::ostream& out, const MCResult& result);

/// Smallest k / trials with P(Binomial(trials, p) <= k) >= confidence, minus p
/// (floored at zero).
double binomial_margin(double p, std::size_t trials, double confidence = 0.99);

struct SelectionStep {
  /// 0-based coordinates of T(x) = x_S.
  std::vector<std::size_t> subset;
  TestOutcome outcome;
};

struct SelectionResult {
  std::vector<std::size_t> selected;
  bool accepted = false;
  std::vector<SelectionStep> trace;
};

/// Greedy forward search for a subset S with T(x) = x_S accepted as
/// lossless. Z columns of `data` are ignored. All tests share one cell side,
/// taken from cfg.h or the delta schedule at the full dimension d' = d, so
/// the Z partition is nested in the X partition.
SelectionResult select_features(const Dataset& data, const TestConfig& cfg);

}  // namespace lossless
