// cantor2w: build the measure pair and check the boundedness/divergence claims.
//
//   cantor2w construct --alpha 0 --out snapshot.json
//   cantor2w verify --claims testing-divergence,a2-1d --format csv
//   cantor2w sweep --param alpha --values 0,0.5,1,1.5
//
// Exit status: 0 all selected claims pass, 1 a claim failed, 2 bad
// configuration or infeasible target.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cantor2w/error.hpp"
#include "cantor2w/pipeline.hpp"
#include "cantor2w/snapshot.hpp"

namespace {

using namespace cantor2w;

struct CommonOptions {
  double alpha = 0.0;
  std::optional<double> b;
  int depth_omega = 14;
  int depth_sigma = 12;
  int k_max = 10;
  int testing_depth = 10;
  std::vector<double> n_targets{1.0, 2.0, 4.0, 8.0};
  std::uint64_t seed = RunConfig{}.seed;
  std::optional<double> riesz_c;
  std::string format = "json";
  std::string out;
  bool quiet = false;
};

// CLI11 reads an empty list element as 0; reject it instead.
const CLI::Validator non_empty(
    [](std::string& item) { return item.empty() ? std::string("empty list element") : std::string(); },
    "NONEMPTY");

void add_common(CLI::App& cmd, CommonOptions& o) {
  cmd.add_option("--alpha", o.alpha, "fractional order in [0,2)")->capture_default_str();
  cmd.add_option("--b", o.b, "removed middle fraction (default: smallest admissible for alpha)");
  cmd.add_option("--depth-omega", o.depth_omega, "atomization level of the Cantor measure")->capture_default_str();
  cmd.add_option("--depth-sigma", o.depth_sigma, "last generation of gap atoms")->capture_default_str();
  cmd.add_option("--k-max", o.k_max, "generations checked by the placement search")->capture_default_str();
  cmd.add_option("--testing-depth", o.testing_depth, "K of the testing partial sums")->capture_default_str();
  cmd.add_option("--n-targets", o.n_targets, "off-testing targets, one row each")->delimiter(',')->check(non_empty);
  cmd.add_option("--seed", o.seed, "seed of the sampled candidate families")->capture_default_str();
  cmd.add_option("--riesz-c", o.riesz_c, "fix the Riesz placement constant instead of searching");
  cmd.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  cmd.add_option("--out", o.out, "output file (default: standard output)");
  cmd.add_flag("--quiet", o.quiet, "no progress on standard error");
}

RunConfig make_config(const CommonOptions& o) {
  RunConfig config;
  config.params.alpha = o.alpha;
  if (!(o.alpha >= 0.0 && o.alpha < 2.0)) throw Error(ErrorKind::invalid_parameters, "alpha must lie in [0,2)");
  config.params.b = o.b ? *o.b : smallest_admissible_b(o.alpha);
  config.params.depth_omega = o.depth_omega;
  config.params.depth_sigma = o.depth_sigma;
  config.params.riesz_c = o.riesz_c;
  config.k_max = o.k_max;
  config.testing_depth = o.testing_depth;
  config.n_targets = o.n_targets;
  config.seed = o.seed;
  validate(config);
  return config;
}

Logger make_logger(const CommonOptions& o) {
  if (o.quiet) return {};
  return [](const std::string& line) { std::cerr << line << '\n'; };
}

void emit(const CommonOptions& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw Error(ErrorKind::invalid_config, "cannot open " + o.out + " for writing");
  file << text;
  if (!file) throw Error(ErrorKind::invalid_config, "failed writing " + o.out);
}

int run_construct(const CommonOptions& o, const std::string& placement_name) {
  const RunConfig config = make_config(o);
  Pipeline pipeline(config, make_logger(o));
  const std::vector<GammaSearchResult>& found = pipeline.heights(TestKind::frac);
  std::vector<double> heights;
  for (const auto& g : found) heights.push_back(g.gamma);
  const Placement placement =
      placement_name == "riesz" ? Placement::riesz(pipeline.riesz_c()) : Placement::center();
  emit(o, save_snapshot(make_snapshot(pipeline.construction(), placement, heights)));
  return 0;
}

int run_verify(const CommonOptions& o, const std::string& claims) {
  const std::vector<std::string> ids = parse_claims(claims);
  Pipeline pipeline(make_config(o), make_logger(o));
  const Report report = pipeline.verify(ids);
  emit(o, o.format == "json" ? to_json(report).dump(2) + "\n" : to_csv(report));
  return report.pass() ? 0 : 1;
}

int run_sweep(const CommonOptions& o, const std::string& parameter, const std::vector<double>& values,
              const std::string& claims) {
  const SweepParameter p = parse_sweep_parameter(parameter);
  const std::vector<std::string> ids = claims.empty() ? default_sweep_claims() : parse_claims(claims);
  if (values.empty()) throw Error(ErrorKind::invalid_config, "empty value list for sweep");
  CommonOptions base = o;
  // Sweeping alpha re-chooses b per value; keep the starting config valid.
  if (p == SweepParameter::alpha) base.b.reset();
  const RunConfig config = make_config(base);
  const SweepResult result = sweep(config, p, values, ids, make_logger(o));
  emit(o, o.format == "json" ? to_json(result).dump(2) + "\n" : to_csv(result));
  return result.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-weight counterexample construction and claim checks"};
  app.require_subcommand(1);

  CommonOptions construct_opts;
  std::string placement = "center";
  CLI::App* construct = app.add_subcommand("construct", "write a JSON snapshot of the measures");
  add_common(*construct, construct_opts);
  construct->add_option("--placement", placement, "gap atom placement")
      ->check(CLI::IsMember({"center", "riesz"}))
      ->capture_default_str();

  CommonOptions verify_opts;
  std::string verify_claims = "all";
  CLI::App* verify = app.add_subcommand("verify", "run the selected claims and write a report");
  add_common(*verify, verify_opts);
  verify->add_option("--claims", verify_claims, "comma list of claim ids, or 'all'")->capture_default_str();

  CommonOptions sweep_opts;
  std::string sweep_param = "alpha";
  std::vector<double> sweep_values{0.0, 0.5, 1.0, 1.5};
  std::string sweep_claims;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "one verify run per parameter value");
  add_common(*sweep_cmd, sweep_opts);
  sweep_cmd->add_option("--param", sweep_param, "alpha, b or depth")->capture_default_str();
  sweep_cmd->add_option("--values", sweep_values, "comma list of values")->delimiter(',')->check(non_empty);
  sweep_cmd->add_option("--claims", sweep_claims, "comma list of claim ids (default: the sweep set)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*construct) return run_construct(construct_opts, placement);
    if (*verify) return run_verify(verify_opts, verify_claims);
    if (*sweep_cmd) return run_sweep(sweep_opts, sweep_param, sweep_values, sweep_claims);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::infeasible_target:
        std::cerr << "hint: lower the targets or raise --depth-sigma\n";
        break;
      case ErrorKind::no_admissible_c:
        std::cerr << "hint: widen the c grid or lower --k-max\n";
        break;
      default:
        break;
    }
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
