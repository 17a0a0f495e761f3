#include "lossless/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "lossless/experiment.hpp"
#include "lossless/io.hpp"
#include "lossless/portfolio.hpp"
#include "lossless/risk_bounds.hpp"
#include "lossless/synthdata.hpp"

namespace lossless::cli {

namespace {

using io::json;

struct Common {
  std::string input;
  std::string output;
  std::optional<std::size_t> d;
  std::optional<std::size_t> d_prime;
  double c1 = 1.5;
  double delta = 0.2;
  std::optional<double> h;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
  std::size_t min_n = 1000;

  TestConfig test_config() const {
    TestConfig cfg;
    cfg.c1 = c1;
    cfg.delta = delta;
    cfg.h = h;
    return cfg;
  }
};

void add_test_flags(CLI::App& app, Common& c) {
  app.set_help_flag("--help", "Print this help message and exit");
  app.add_option("--c1", c.c1, "Threshold constant, > sqrt(2 log 2)")->capture_default_str();
  app.add_option("--delta", c.delta, "Bandwidth exponent: h = n^-delta")->capture_default_str();
  app.add_option("--h", c.h, "Explicit cell side in (0, 1]; overrides --delta");
}

// Writes `text` to `path`, or to `out` when no path is given.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw io::FormatError("cannot write " + path);
  file << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json config_echo(const H1Config& cfg, const std::string& scenario) {
  json g = json::array();
  for (std::size_t j = 0; j < cfg.k; ++j) g.push_back(cfg.g(j));
  json out = {{"scenario", scenario}, {"n", cfg.n},       {"seed", cfg.seed}, {"k", cfg.k},
              {"interval_width", cfg.interval_width},     {"regression", g},  {"noise_scale", cfg.noise_scale},
              {"d", 2},               {"d_prime", 1}};
  if (scenario == "h1") out["theta"] = cfg.theta;
  return out;
}

std::vector<std::size_t> one_based(const std::vector<std::size_t>& v) {
  std::vector<std::size_t> out;
  for (std::size_t j : v) out.push_back(j + 1);
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Partitioning test for lossless transformations, excess-risk oracles and growth-gap checks", "lossless"};
  // -h is taken by the cell-side flag.
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  Common c;

  auto* test = app.add_subcommand("test", "Test whether Z = T(X) is lossless for the sample in a CSV file");
  test->add_option("--input", c.input, "Dataset CSV")->required();
  test->add_option("--output", c.output, "Write the JSON outcome here instead of stdout");
  test->add_option("--d", c.d, "Dimension of X (checked against the header)");
  test->add_option("--dprime", c.d_prime, "Dimension of Z (checked against the header)");
  add_test_flags(*test, c);

  std::string scenario = "h0";
  std::vector<std::size_t> n_grid{1000, 10000, 100000};
  std::size_t reps = 200;
  std::string json_path;
  H1Config gen;
  auto* mc = app.add_subcommand("mc", "Monte Carlo rejection rates over a grid of sample sizes");
  mc->add_option("--scenario", scenario, "h0, h1 or file")->check(CLI::IsMember({"h0", "h1", "file"}))->capture_default_str();
  mc->add_option("--n-grid", n_grid, "Strictly increasing sample sizes")->delimiter(',')->capture_default_str();
  mc->add_option("--reps", reps, "Replications per sample size")->capture_default_str();
  mc->add_option("--input", c.input, "Source CSV for --scenario file");
  mc->add_option("--output", c.output, "Plot-ready CSV path (stdout when omitted)");
  mc->add_option("--json", json_path, "Full JSON summary path (printed to stdout when --output names a file)");
  mc->add_option("--seed", c.seed, "Base seed; replicate r uses seed + r")->capture_default_str();
  mc->add_option("--threads", c.threads, "Worker threads, 0 = all cores")->capture_default_str();
  mc->add_option("--min-n", c.min_n, "Burn-in below which Type I rates are not held to the bound")->capture_default_str();
  mc->add_option("--theta", gen.theta, "Dependence strength for h1")->capture_default_str();
  mc->add_option("--k", gen.k, "Number of Z atoms")->capture_default_str();
  mc->add_option("--width", gen.interval_width, "Width of each X1 interval")->capture_default_str();
  mc->add_option("--noise", gen.noise_scale, "Half-width of the uniform noise")->capture_default_str();
  add_test_flags(*mc, c);

  auto* bounds = app.add_subcommand("bounds", "Excess-risk bound and exact excess for a discrete joint");
  std::string corollary = "cor1";
  bounds->set_help_flag("--help", "Print this help message and exit");
  bounds->add_option("--input", c.input, "JSON with joint, map, loss and optional envelope / sigma_sq")->required();
  bounds->add_option("--output", c.output, "Write the JSON report here instead of stdout");
  bounds->add_option("--corollary", corollary, "cor1, cor2 or cor2a")->check(CLI::IsMember({"cor1", "cor2", "cor2a"}));

  auto* portfolio = app.add_subcommand("portfolio", "Growth rates with full and degraded side information");
  portfolio->set_help_flag("--help", "Print this help message and exit");
  portfolio->add_option("--input", c.input, "Market JSON")->required();
  portfolio->add_option("--output", c.output, "Write the JSON report here instead of stdout");

  auto* gen_cmd = app.add_subcommand("gen", "Generate seeded datasets, joints or markets");
  std::string gen_scenario = "h0";
  std::vector<std::size_t> sizes{2, 4, 2};
  MarketSizes market_sizes;
  gen_cmd->set_help_flag("--help", "Print this help message and exit");
  gen_cmd->add_option("--scenario", gen_scenario, "h0, h1, markov, random or market")
      ->check(CLI::IsMember({"h0", "h1", "markov", "random", "market"}))
      ->capture_default_str();
  gen_cmd->add_option("--n", gen.n, "Records for h0 / h1")->capture_default_str();
  gen_cmd->add_option("--seed", c.seed, "Seed")->capture_default_str();
  gen_cmd->add_option("--theta", gen.theta, "Dependence strength for h1")->capture_default_str();
  gen_cmd->add_option("--k", gen.k, "Number of Z atoms")->capture_default_str();
  gen_cmd->add_option("--width", gen.interval_width, "Width of each X1 interval")->capture_default_str();
  gen_cmd->add_option("--noise", gen.noise_scale, "Half-width of the uniform noise")->capture_default_str();
  gen_cmd->add_option("--sizes", sizes, "|Y|,|X|,|Z| for markov / random")->delimiter(',')->expected(3);
  gen_cmd->add_option("--assets", market_sizes.assets, "Assets for market")->capture_default_str();
  gen_cmd->add_option("--outcomes", market_sizes.outcomes, "Return outcomes for market")->capture_default_str();
  gen_cmd->add_option("--nx", market_sizes.nx, "Side-information alphabet for market")->capture_default_str();
  gen_cmd->add_option("--nz", market_sizes.nz, "Degraded side-information alphabet for market")->capture_default_str();
  gen_cmd->add_option("--cmax", market_sizes.c_max, "Bound on |log R|")->capture_default_str();
  gen_cmd->add_option("--output", c.output, "Output path (stdout when omitted)");

  auto* select = app.add_subcommand("select", "Greedy search for a lossless coordinate subset");
  select->add_option("--input", c.input, "Dataset CSV; z columns are ignored")->required();
  select->add_option("--output", c.output, "Write the JSON result here instead of stdout");
  select->add_option("--d", c.d, "Dimension of X (checked against the header)");
  add_test_flags(*select, c);

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitAccept;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitAccept;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (test->parsed()) {
      const Dataset data = io::read_dataset_file(c.input, c.d, c.d_prime);
      const TestOutcome outcome = run_test(data, c.test_config());
      emit(c.output, dump(io::to_json(outcome)), out);
      return outcome.reject ? kExitReject : kExitAccept;
    }

    if (mc->parsed()) {
      ExperimentPlan plan;
      plan.scenario = scenario == "h0" ? Scenario::h0 : scenario == "h1" ? Scenario::h1 : Scenario::file;
      plan.n_grid = n_grid;
      plan.reps = reps;
      plan.cfg = c.test_config();
      plan.base_seed = c.seed;
      plan.generator = gen;
      plan.min_n = c.min_n;
      plan.threads = c.threads;
      if (plan.scenario == Scenario::file) {
        if (c.input.empty()) throw std::invalid_argument("mc --scenario file needs --input");
        plan.source = io::read_dataset_file(c.input);
      }
      const MCResult result = run_mc(plan);
      std::ostringstream csv;
      write_mc_csv(csv, result);
      json rows = json::array();
      for (const auto& r : result.rows) {
        rows.push_back({{"n", r.n},
                        {"rejection_rate", r.rejection_rate},
                        {"mean_L_n", r.mean_L_n},
                        {"median_L_n", r.median_L_n},
                        {"mean_t_n", r.mean_t_n},
                        {"median_t_n", r.median_t_n},
                        {"type1_bound", r.type1_bound},
                        {"type1_allowance", r.type1_allowance},
                        {"past_burn_in", r.past_burn_in},
                        {"wall_time", r.wall_time}});
      }
      const json summary = {{"scenario", scenario}, {"reps", reps}, {"base_seed", c.seed}, {"rows", rows}};
      emit(c.output, csv.str(), out);
      if (!json_path.empty()) {
        emit(json_path, dump(summary), out);
      } else if (!c.output.empty() && c.output != "-") {
        out << dump(summary);
      }
      return kExitAccept;
    }

    if (bounds->parsed()) {
      const json doc = io::read_json_file(c.input);
      const DiscreteJoint joint = io::joint_from_json(doc.value("joint", json()), "joint");
      const DeterministicMap map = io::map_from_json(doc.value("map", json()), "map");
      const LossMatrix loss = io::loss_from_json(doc.value("loss", json()), "loss");
      BoundReport report;
      if (corollary == "cor1") {
        report = bound_bounded_loss(joint, map, loss);
      } else if (corollary == "cor2") {
        SubgaussianProfile profile = hoeffding_profile(joint, map, loss);
        if (doc.contains("sigma_sq")) {
          profile = make_profile(doc["sigma_sq"].get<std::vector<double>>(), joint.y());
        }
        report = bound_subgaussian(joint, map, loss, profile);
      } else {
        if (!doc.contains("envelope")) throw io::FormatError("envelope: missing (required for cor2a)");
        report = bound_envelope(joint, map, loss, doc["envelope"].get<std::vector<double>>());
      }
      emit(c.output, dump(io::to_json(report)), out);
      return kExitAccept;
    }

    if (portfolio->parsed()) {
      const MarketModel market = io::market_from_json(io::read_json_file(c.input), "market");
      const GrowthReport report = growth_gap_bound(market);
      json j = io::to_json(report);
      j["c_max"] = market.c_max();
      j["c_max_bound"] = c_max_bound(market, report.mi_gap);
      emit(c.output, dump(j), out);
      return kExitAccept;
    }

    if (gen_cmd->parsed()) {
      gen.seed = c.seed;
      if (gen_scenario == "h0" || gen_scenario == "h1") {
        const Dataset data = gen_scenario == "h0" ? gen_h0(gen) : gen_h1(gen);
        std::ostringstream csv;
        io::write_dataset(csv, data);
        const std::string echo = dump(config_echo(gen, gen_scenario));
        emit(c.output, csv.str(), out);
        if (!c.output.empty() && c.output != "-") emit(c.output + ".json", echo, out);
        return kExitAccept;
      }
      json doc;
      if (gen_scenario == "market") {
        doc = io::to_json(gen_market(market_sizes, c.seed));
      } else {
        const JointSizes js{sizes[0], sizes[1], sizes[2]};
        auto [joint, map] = gen_scenario == "markov" ? gen_markov_joint(js, c.seed) : gen_random_joint(js, c.seed);
        doc = {{"joint", io::to_json(joint)}, {"map", io::to_json(map)}};
      }
      emit(c.output, dump(doc), out);
      return kExitAccept;
    }

    if (select->parsed()) {
      const Dataset data = io::read_dataset_file(c.input, c.d);
      const SelectionResult result = select_features(data, c.test_config());
      json trace = json::array();
      for (const auto& step : result.trace) {
        trace.push_back({{"subset", one_based(step.subset)}, {"outcome", io::to_json(step.outcome)}});
      }
      const json doc = {{"selected", one_based(result.selected)}, {"accepted", result.accepted}, {"trace", trace}};
      if (!result.accepted) err << "warning: no accepting subset found; returning the full coordinate set\n";
      emit(c.output, dump(doc), out);
      return kExitAccept;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitUsage;
}

}  // namespace lossless::cli
