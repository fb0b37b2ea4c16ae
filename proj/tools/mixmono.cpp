// mixmono: decomposition bounds, reach tubes and total variation from the
// command line.
//
// Exit codes: 0 ok, 1 bad config or arguments, 2 unbounded Jacobian entry,
// 3 integration blow-up, 4 total variation did not converge.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "mixmono/config.hpp"
#include "mixmono/decomposition.hpp"
#include "mixmono/embedding.hpp"
#include "mixmono/errors.hpp"
#include "mixmono/jordan.hpp"
#include "mixmono/sampling.hpp"

namespace {

using namespace mixmono;

constexpr int kDigits = 9;
constexpr std::size_t kCheckPoints = 10000;

std::string num(double v) { return format_number(v, kDigits); }

std::string interval_text(const Interval& x) { return "[" + num(x.lo()) + ", " + num(x.hi()) + "]"; }

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

OutputFormat parse_format(const std::string& text) {
  if (text == "text") return OutputFormat::Text;
  if (text == "csv") return OutputFormat::Csv;
  throw ConfigError("--format must be text or csv");
}

struct Common {
  std::string config_path;
  std::string format;
  std::optional<double> epsilon;

  RunConfig load() const {
    RunConfig cfg = load_config(config_path);
    if (!format.empty()) cfg.options.format = parse_format(format);
    if (epsilon) {
      if (!(*epsilon >= 0.0)) throw ConfigError("--epsilon must be >= 0");
      cfg.options.epsilon = *epsilon;
    }
    return cfg;
  }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("config", c.config_path, "run configuration file")->required();
  cmd->add_option("--format", c.format, "text or csv (overrides the config)");
  cmd->add_option("--epsilon", c.epsilon, "decomposition epsilon (overrides the config)");
}

JacobianOptions jacobian_options(const RunConfig& cfg) {
  JacobianOptions o;
  o.slack = cfg.options.slack;
  return o;
}

void run_decompose(const Common& common) {
  const RunConfig cfg = common.load();
  const VectorField f = cfg.field();
  const JacobianBounds jb = jacobian_bounds(f, cfg.domain_box(), jacobian_options(cfg));
  const DecompositionSpec spec = build_decomposition(jb, cfg.options.epsilon);

  std::vector<std::string> g(f.output_dim());
  for (std::size_t i = 0; i < f.output_dim(); ++i) g[i] = format_decomposition(spec, f, i, kDigits);

  const bool csv = cfg.options.format == OutputFormat::Csv;
  if (csv) {
    std::cout << "i,j,a,b,case,z,alpha,beta,g\n";
  } else {
    std::cout << "i j a b case z alpha beta\n";
  }
  for (std::size_t i = 0; i < spec.rows(); ++i) {
    for (std::size_t j = 0; j < spec.cols(); ++j) {
      const char* z = spec.selector(i, j) == Selector::FirstArg ? "x" : "y";
      const std::vector<std::string> cells{std::to_string(i + 1), std::to_string(j + 1), num(jb(i, j).lo()),
                                           num(jb(i, j).hi()),    std::string(to_string(spec.sign_case(i, j))),
                                           z,                     num(spec.alpha(i, j)),
                                           num(spec.beta(i, j))};
      const char* sep = csv ? "," : " ";
      for (std::size_t k = 0; k < cells.size(); ++k) std::cout << (k ? sep : "") << cells[k];
      if (csv) std::cout << ',' << csv_quote(g[i]);
      std::cout << '\n';
    }
  }
  if (!csv) {
    for (std::size_t i = 0; i < g.size(); ++i) std::cout << 'g' << i + 1 << " = " << g[i] << '\n';
  }
}

void run_bound(const Common& common, std::optional<int> depth, bool check) {
  RunConfig cfg = common.load();
  if (depth) {
    if (*depth < 0) throw ConfigError("--depth must be >= 0");
    cfg.options.depth = *depth;
  }
  const VectorField f = cfg.field();
  const Box box = cfg.domain_box();
  RefineOptions opts;
  opts.epsilon = cfg.options.epsilon;
  opts.jacobian = jacobian_options(cfg);
  const auto bounds = refine_bounds(f, box, cfg.options.depth, opts);

  std::vector<Interval> grid;
  if (check) grid = grid_range(f, box, grid_points_per_axis(kCheckPoints, box.dim()));

  const bool csv = cfg.options.format == OutputFormat::Csv;
  if (csv) std::cout << "component,lower,upper" << (check ? ",grid_lower,grid_upper,contains" : "") << '\n';
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    const bool contains = check && bounds[i].lo() <= grid[i].lo() && grid[i].hi() <= bounds[i].hi();
    if (csv) {
      std::cout << 'f' << i + 1 << ',' << num(bounds[i].lo()) << ',' << num(bounds[i].hi());
      if (check) std::cout << ',' << num(grid[i].lo()) << ',' << num(grid[i].hi()) << ',' << (contains ? "yes" : "no");
    } else {
      std::cout << 'f' << i + 1 << " ∈ " << interval_text(bounds[i]);
      if (check) std::cout << "  grid " << interval_text(grid[i]) << (contains ? " contained" : " NOT contained");
    }
    std::cout << '\n';
  }
}

struct ReachArgs {
  std::optional<double> t_end;
  std::optional<double> step;
  std::vector<double> x0_lo;
  std::vector<double> x0_hi;
  std::string output;
};

void run_reach(const Common& common, const ReachArgs& args) {
  RunConfig cfg = common.load();
  if (args.t_end) cfg.options.t_end = *args.t_end;
  if (args.step) cfg.options.step = *args.step;
  if (!(cfg.options.t_end >= 0.0)) throw ConfigError("--t-end must be >= 0");
  if (!(cfg.options.step > 0.0)) throw ConfigError("--step must be > 0");

  const VectorField f = cfg.field();
  if (!f.is_square()) throw ConfigError("reach needs as many components as variables");
  const Box domain = cfg.domain_box();
  Point lo = args.x0_lo.empty() ? domain.lower() : args.x0_lo;
  Point hi = args.x0_hi.empty() ? domain.upper() : args.x0_hi;
  if (lo.size() != cfg.dim || hi.size() != cfg.dim) throw ConfigError("--x0-lo/--x0-hi need dim entries");
  if (!leq_orthant(lo, hi)) throw ConfigError("--x0-lo must be <= --x0-hi componentwise");

  // Jacobian signs are taken over the configured domain; the initial box
  // only sets the starting state.
  const DecompositionSpec spec =
      build_decomposition(jacobian_bounds(f, domain, jacobian_options(cfg)), cfg.options.epsilon);
  const ReachTube tube =
      integrate_embedding(build_embedding(f, spec), lo, hi, cfg.options.t_end, cfg.options.step);

  std::ofstream file;
  if (!args.output.empty()) {
    file.open(args.output);
    if (!file) throw ConfigError("cannot write " + args.output);
  }
  std::ostream& out = args.output.empty() ? std::cout : file;
  out << 't';
  for (std::size_t k = 1; k <= cfg.dim; ++k) out << ",lower_" << k;
  for (std::size_t k = 1; k <= cfg.dim; ++k) out << ",upper_" << k;
  out << '\n';
  for (const auto& s : tube.samples) {
    out << num(s.t);
    for (double v : s.lower) out << ',' << num(v);
    for (double v : s.upper) out << ',' << num(v);
    out << '\n';
  }
}

struct TvArgs {
  std::string expr;
  double a = 0.0;
  double b = 1.0;
  double tol = 1e-8;
  int rows = 11;
  std::string format = "text";
};

void run_tv(const TvArgs& args) {
  if (!(args.a <= args.b)) throw ConfigError("--a must be <= --b");
  if (!(args.tol > 0.0)) throw ConfigError("--tol must be > 0");
  if (args.rows < 2) throw ConfigError("--rows must be >= 2");
  const bool csv = parse_format(args.format) == OutputFormat::Csv;

  VariationOptions opts;
  opts.tol = args.tol;
  const ScalarFunction f = ScalarFunction::parse(args.expr, Interval(args.a, args.b));
  const double tv = total_variation(f, f.domain(), opts);
  const BvDecomposition g(f, opts);
  const JordanSplit& split = g.split();
  const Interval bounds = g.bounds();

  if (csv) {
    std::cout << "x,f,f_plus,f_minus\n";
  } else {
    std::cout << "TV = " << num(tv) << '\n';
    std::cout << "x f f+ f-\n";
  }
  const char* sep = csv ? "," : " ";
  for (int k = 0; k < args.rows; ++k) {
    const double x = k + 1 == args.rows ? args.b : args.a + (args.b - args.a) * k / (args.rows - 1);
    std::cout << num(x) << sep << num(f(x)) << sep << num(split.positive(x)) << sep << num(split.negative(x)) << '\n';
  }
  if (csv) {
    std::cout << "# TV," << num(tv) << '\n';
    std::cout << "# bounds," << num(bounds.lo()) << ',' << num(bounds.hi()) << '\n';
  } else {
    std::cout << "bounds = " << interval_text(bounds) << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mixed-monotone decomposition toolkit"};
  app.require_subcommand(1);

  Common decompose_args;
  auto* decompose = app.add_subcommand("decompose", "print the Jacobian sign cases and decomposition function");
  add_common(decompose, decompose_args);

  Common bound_args;
  std::optional<int> depth;
  bool check = false;
  auto* bound = app.add_subcommand("bound", "bound the range of f over the domain");
  add_common(bound, bound_args);
  bound->add_option("--depth", depth, "bisection depth (overrides the config)");
  bound->add_flag("--check", check, "compare against a 10^4-point grid");

  Common reach_common;
  ReachArgs reach_args;
  auto* reach = app.add_subcommand("reach", "integrate the embedding system and write the tube as CSV");
  add_common(reach, reach_common);
  reach->add_option("--t-end", reach_args.t_end, "final time (overrides the config)");
  reach->add_option("--step", reach_args.step, "RK4 step (overrides the config)");
  reach->add_option("--x0-lo", reach_args.x0_lo, "initial box lower corner, comma separated")->delimiter(',');
  reach->add_option("--x0-hi", reach_args.x0_hi, "initial box upper corner, comma separated")->delimiter(',');
  reach->add_option("--output,-o", reach_args.output, "CSV file (default: stdout)");

  TvArgs tv_args;
  auto* tv = app.add_subcommand("tv", "total variation and Jordan split of a scalar function of x1");
  tv->add_option("--expr", tv_args.expr, "expression in x1")->required();
  tv->add_option("--a", tv_args.a, "left end")->required();
  tv->add_option("--b", tv_args.b, "right end")->required();
  tv->add_option("--tol", tv_args.tol, "tolerance")->capture_default_str();
  tv->add_option("--rows", tv_args.rows, "rows of the table")->capture_default_str();
  tv->add_option("--format", tv_args.format, "text or csv")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*decompose) run_decompose(decompose_args);
    if (*bound) run_bound(bound_args, depth, check);
    if (*reach) run_reach(reach_common, reach_args);
    if (*tv) run_tv(tv_args);
  } catch (const UnboundedDerivativeError& e) {
    std::cerr << "error: " << e.what() << " is (-inf, inf) on the domain\n";
    return 2;
  } catch (const BlowupError& e) {
    std::cerr << "error: integration blew up at t = " << num(e.time()) << '\n';
    return 3;
  } catch (const NonConvergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
