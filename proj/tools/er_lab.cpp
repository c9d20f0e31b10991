// er_lab: sample G(n, p) graphs, profile components, tabulate the tree and
// simplified bounds against exact laws, and run Monte Carlo experiments.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "erlab/bounds.hpp"
#include "erlab/components.hpp"
#include "erlab/experiments.hpp"
#include "erlab/format.hpp"
#include "erlab/oracle.hpp"
#include "erlab/sampler.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFailedCheck = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "0.25" is a double, "1/4" an exact rational.
struct ProbabilityArg {
  double value = 0.0;
  std::optional<erlab::Rational> exact;
};

ProbabilityArg parse_probability(const std::string& text) {
  ProbabilityArg arg;
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    std::size_t used_num = 0, used_den = 0;
    const std::string num = text.substr(0, slash), den = text.substr(slash + 1);
    try {
      const long long a = std::stoll(num, &used_num);
      const long long b = std::stoll(den, &used_den);
      if (used_num != num.size() || used_den != den.size()) throw std::invalid_argument(text);
      arg.exact = erlab::rational_probability(a, b);
    } catch (const std::logic_error&) {
      throw UsageError("bad probability '" + text + "'");
    }
    arg.value = arg.exact->convert_to<double>();
    return arg;
  }
  std::size_t used = 0;
  try {
    arg.value = std::stod(text, &used);
  } catch (const std::logic_error&) {
    throw UsageError("bad probability '" + text + "'");
  }
  if (used != text.size() || !(arg.value >= 0.0 && arg.value <= 1.0)) {
    throw UsageError("probability must be a number in [0, 1], got '" + text + "'");
  }
  return arg;
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  return file;
}

int run_sample(erlab::Vertex n, const std::optional<std::string>& p_text,
               const std::optional<double>& c, std::uint64_t seed, const std::string& out_path) {
  if (p_text.has_value() == c.has_value()) throw UsageError("sample: give exactly one of --p or --C");
  erlab::SampleSpec spec;
  try {
    spec = p_text ? erlab::SampleSpec{n, parse_probability(*p_text).value, seed}
                  : erlab::SampleSpec::from_mean_degree(n, *c, seed);
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const erlab::GraphSample g = erlab::sample_gnp(spec);
  std::ofstream file;
  erlab::write_edge_list(open_output(out_path, file), g);
  return kExitOk;
}

int run_components(const std::string& in_path) {
  std::ifstream file;
  std::istream* in = &std::cin;
  if (in_path != "-") {
    file.open(in_path);
    if (!file) throw UsageError("cannot open '" + in_path + "'");
    in = &file;
  }
  const erlab::ComponentProfile profile = erlab::component_profile(erlab::read_edge_list(*in));
  std::string sep;
  for (const std::uint32_t s : profile.sizes()) {
    std::cout << sep << s;
    sep = " ";
  }
  std::cout << '\n';
  return kExitOk;
}

int run_exact(erlab::Vertex n, const std::string& p_text) {
  const ProbabilityArg p = parse_probability(p_text);
  erlab::ExactDistribution dist;
  try {
    dist = p.exact ? erlab::exact_component_distribution(n, *p.exact)
                   : erlab::exact_component_distribution(n, p.value);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::cout << "r,exact_prob,tree_bound,ratio\n";
  for (std::uint32_t r = 1; r <= n; ++r) {
    const double exact = dist.prob(r);
    const double tree = std::exp(erlab::tree_bound_log(n, dist.p, r));
    std::optional<double> ratio;
    if (tree > 0.0) ratio = exact / tree;
    std::cout << r << ',' << erlab::format_double(exact) << ',' << erlab::format_double(tree) << ','
              << erlab::format_optional(ratio) << '\n';
  }
  return kExitOk;
}

int run_bounds(erlab::Vertex n, double c, std::uint64_t r_max) {
  erlab::BoundReport report;
  try {
    report = erlab::bounds_table(n, c, r_max);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  erlab::write_bounds_csv(std::cout, report);
  return report.all_ok() ? kExitOk : kExitFailedCheck;
}

int run_experiment_cmd(const std::string& config_path, const std::string& report_path,
                       const std::string& trials_path, unsigned threads) {
  std::ifstream file(config_path);
  if (!file) throw UsageError("cannot open config '" + config_path + "'");
  std::stringstream text;
  text << file.rdbuf();
  erlab::ExperimentConfig config;
  try {
    config = erlab::ExperimentConfig::from_json_text(text.str());
    erlab::plan_experiment(config);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  const erlab::ExperimentReport report = erlab::run_experiment(config, threads);
  {
    std::ofstream report_file;
    erlab::write_report_csv(open_output(report_path, report_file), report);
  }
  {
    std::ofstream trials_file;
    erlab::write_trials_csv(open_output(trials_path, trials_file), report);
  }

  const erlab::PhaseParams& params = report.plan.params;
  std::cerr << "regime " << erlab::to_string(config.regime) << ", n " << config.n << ", C "
            << erlab::format_double(config.c) << ", trials " << config.trials << '\n'
            << "M " << params.m << " (M log n = " << erlab::format_double(report.plan.small_cutoff)
            << "), delta " << erlab::format_double(params.delta) << ", alpha "
            << erlab::format_double(params.alpha) << ", epsilon1 "
            << erlab::format_double(params.epsilon1()) << '\n'
            << "small_sum/n mean " << erlab::format_double(report.mean_small_fraction) << ", max "
            << erlab::format_double(report.max_small_fraction) << "; step-2 contradictions "
            << report.step2_contradictions << '\n'
            << erlab::format_double(report.wall_seconds) << " s on " << report.threads_used
            << " thread(s)\n";
  return report.any_failed() ? kExitFailedCheck : kExitOk;
}

int run_verify(erlab::Vertex n_max, const std::vector<std::string>& grid_text) {
  std::vector<double> grid;
  for (const std::string& item : grid_text) {
    std::stringstream items(item);
    std::string token;
    while (std::getline(items, token, ',')) {
      if (!token.empty()) grid.push_back(parse_probability(token).value);
    }
  }
  if (grid.empty()) throw UsageError("verify: --p-grid is empty");
  erlab::BoundReport report;
  try {
    report = erlab::verify_bound_dominance(n_max, grid);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto violations = report.violations();
  std::cout << "n,p,r,log_tree_bound,exact_prob\n";
  for (const erlab::BoundRow& row : violations) {
    std::cout << row.n << ',' << erlab::format_double(row.p) << ',' << row.r << ','
              << erlab::format_double(row.log_tree_bound) << ','
              << erlab::format_optional(row.exact_prob) << '\n';
  }
  std::cerr << report.rows.size() << " comparisons, " << violations.size() << " violations\n";
  return violations.empty() ? kExitOk : kExitFailedCheck;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Erdos-Renyi component lab"};
  app.require_subcommand(1);

  erlab::Vertex n = 0;
  std::optional<std::string> p_text;
  std::optional<double> c;
  std::uint64_t seed = 0;
  std::string out_path = "-";
  auto* sample = app.add_subcommand("sample", "Sample G(n, p) and write an edge list");
  sample->add_option("--n", n, "vertex count")->required();
  sample->add_option("--p", p_text, "edge probability");
  sample->add_option("--C", c, "mean degree, p = C/n");
  sample->add_option("--seed", seed, "64-bit seed");
  sample->add_option("--out", out_path, "output path ('-' for stdout)");

  std::string in_path;
  auto* components = app.add_subcommand("components", "Print the component sizes of an edge list");
  components->add_option("--in", in_path, "edge-list path ('-' for stdin)")->required();

  erlab::Vertex exact_n = 0;
  std::string exact_p;
  auto* exact = app.add_subcommand("exact", "Exact law of the component of vertex 1");
  exact->add_option("--n", exact_n, "vertex count")->required();
  exact->add_option("--p", exact_p, "edge probability, decimal or num/den")->required();

  erlab::Vertex bounds_n = 0;
  double bounds_c = 0.0;
  std::uint64_t r_max = 0;
  auto* bounds = app.add_subcommand("bounds", "Tabulate tree and simplified bounds");
  bounds->add_option("--n", bounds_n, "vertex count")->required();
  bounds->add_option("--C", bounds_c, "mean degree")->required();
  bounds->add_option("--r-max", r_max, "largest component size")->required();

  std::string config_path, report_path = "report.csv", trials_path = "trials.csv";
  unsigned threads = 0;
  auto* experiment = app.add_subcommand("experiment", "Run a Monte Carlo experiment");
  experiment->add_option("--config", config_path, "JSON config")->required();
  experiment->add_option("--report", report_path, "event report CSV ('-' for stdout)");
  experiment->add_option("--trials", trials_path, "per-trial CSV ('-' for stdout)");
  experiment->add_option("--threads", threads, "worker count (default ER_LAB_THREADS or cores)");

  erlab::Vertex n_max = 12;
  std::vector<std::string> grid_text;
  auto* verify = app.add_subcommand("verify", "Check tree-bound dominance against the exact law");
  verify->add_option("--n-max", n_max, "largest n (<= 12)");
  verify->add_option("--p-grid", grid_text, "edge probabilities, comma separated")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << '\n' << app.help();
    return kExitUsage;
  }

  try {
    if (*sample) return run_sample(n, p_text, c, seed, out_path);
    if (*components) return run_components(in_path);
    if (*exact) return run_exact(exact_n, exact_p);
    if (*bounds) return run_bounds(bounds_n, bounds_c, r_max);
    if (*experiment) return run_experiment_cmd(config_path, report_path, trials_path, threads);
    if (*verify) return run_verify(n_max, grid_text);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
