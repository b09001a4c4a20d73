// Experiment driver: runs kernel checks and convergence/stability experiments
// and writes deterministic CSV or JSON reports.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tanhops/analysis.hpp"
#include "tanhops/corpus.hpp"
#include "tanhops/quadrature.hpp"

namespace {

using nlohmann::json;
using namespace tanhops;

// Shortest round-trip decimal rendering; identical input bits give identical
// text, which is what makes report files byte-reproducible.
std::string fmt(double v) {
  char buf[40];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, p);
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<std::string, std::string>> footers;  // rendered as # comments

  void add_row(std::initializer_list<std::string> cells) { rows.emplace_back(cells); }
  void add_footer(const std::string& key, double value) { footers.emplace_back(key, fmt(value)); }
  void add_footer(const std::string& key, const std::string& value) {
    footers.emplace_back(key, value);
  }
};

std::string to_csv(const Table& t) {
  std::ostringstream os;
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    os << (i ? "," : "") << t.header[i];
  }
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << '\n';
  }
  for (const auto& [k, v] : t.footers) os << "# " << k << ',' << v << '\n';
  return os.str();
}

std::string to_json(const std::string& command, const Table& t) {
  json out;
  out["command"] = command;
  out["rows"] = json::array();
  for (const auto& row : t.rows) {
    json r;
    for (std::size_t i = 0; i < row.size() && i < t.header.size(); ++i) {
      r[t.header[i]] = row[i];
    }
    out["rows"].push_back(r);
  }
  json fits;
  for (const auto& [k, v] : t.footers) fits[k] = v;
  out["fits"] = fits;
  return out.dump(2) + "\n";
}

// Write temp then rename so readers never see a partial file.
void write_report(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  const std::filesystem::path target(path);
  const std::filesystem::path tmp = target.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open output file: " + tmp.string());
    os << content;
  }
  std::filesystem::rename(tmp, target);
}

struct RunConfig {
  double q = 1.0;
  double lambda = 1.0;
  double beta = 0.7;
  double eps = 0.1;
  int taylor_order = 2;  // --N
  double alpha = 0.5;
  int n = 64;
  std::vector<int> ns;
  std::vector<double> deltas = {1e-1, 1e-2, 1e-3};
  std::string function = "sin";
  double x = 0.3;
  std::string kind = "basic";
  std::vector<double> quad_weights;
  double tol = 1e-14;
  int mesh_points = 1024;
  std::string out;
  std::string format = "csv";
  unsigned long long seed = 0;
  bool strict = false;
  bool dump_config = false;
};

OperatorKind parse_kind(const std::string& s) {
  if (s == "basic") return OperatorKind::basic;
  if (s == "kantorovich") return OperatorKind::kantorovich;
  if (s == "quadrature") return OperatorKind::quadrature;
  throw CLI::ValidationError("--kind", "must be basic, kantorovich or quadrature");
}

const TestFunction& lookup_function(const std::string& name) {
  const CorpusEntry* e = find_entry(name);
  if (!e) {
    throw CLI::ValidationError("--function", "unknown corpus function '" + name + "'");
  }
  return e->function;
}

OperatorSpec make_spec(const RunConfig& cfg, int n) {
  OperatorSpec spec;
  spec.kind = parse_kind(cfg.kind);
  spec.n = n;
  spec.policy = KernelEvalPolicy(cfg.tol, 200);
  if (!cfg.quad_weights.empty()) spec.quad_weights = cfg.quad_weights;
  spec.validate();
  return spec;
}

std::vector<int> effective_ns(const RunConfig& cfg) {
  if (!cfg.ns.empty()) return cfg.ns;
  return {cfg.n};
}

struct CommandOutcome {
  Table table;
  std::string summary;
  bool advisory = false;
};

// --- commands -------------------------------------------------------------

CommandOutcome run_kernel_check(const RunConfig& cfg) {
  const ActivationParams p(cfg.q, cfg.lambda);
  const KernelEvalPolicy policy(cfg.tol, 200);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> grid(-8.0, 8.0);

  CommandOutcome out;
  out.table.header = {"check", "max_deviation", "status"};

  auto record = [&](const std::string& name, double dev, double tol) {
    out.table.add_row({name, fmt(dev), dev <= tol ? "PASS" : "FAIL"});
  };

  // Oddness is checked through the q <-> 1/q mirror: g_{q}(-x) = -g_{1/q}(x),
  // which reduces to plain oddness at q = 1. (Plain oddness fails for q != 1:
  // g(0) = (1-q)/(1+q).)
  const ActivationParams mirror(1.0 / cfg.q, cfg.lambda);
  // FD comparisons live on a lambda-scaled window; in the far tail the
  // derivatives underflow and central differences are pure roundoff.
  std::uniform_real_distribution<double> fd_grid(-3.0 / cfg.lambda, 3.0 / cfg.lambda);
  double odd = 0.0, mono = 0.0, pos_density = 0.0, even = 0.0, pos_phi = 0.0;
  double fd_dx = 0.0, fd_dxx = 0.0, fd_dq = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double xi = grid(rng);
    odd = std::max(odd, std::abs(activation(p, -xi) + activation(mirror, xi)));
    mono = std::max(mono, activation_dx(p, xi) > 0.0 ? 0.0 : 1.0);
    pos_density = std::max(pos_density, density(p, xi) > 0.0 ? 0.0 : 1.0);
    even = std::max(even,
                    std::abs(symmetrized_kernel(p, -xi) - symmetrized_kernel(p, xi)));
    pos_phi = std::max(pos_phi, symmetrized_kernel(p, xi) > 0.0 ? 0.0 : 1.0);
    const double xf = fd_grid(rng);
    const double h = 1e-5;
    const double dx_fd = (activation(p, xf + h) - activation(p, xf - h)) / (2.0 * h);
    const double dxx_fd = (activation_dx(p, xf + h) - activation_dx(p, xf - h)) / (2.0 * h);
    const ActivationParams pp(cfg.q + h, cfg.lambda), pm(cfg.q - h, cfg.lambda);
    const double dq_fd = (activation(pp, xf) - activation(pm, xf)) / (2.0 * h);
    const auto rel = [](double got, double ref) {
      return std::abs(got - ref) / std::max(1e-8, std::abs(ref));
    };
    fd_dx = std::max(fd_dx, rel(activation_dx(p, xf), dx_fd));
    fd_dxx = std::max(fd_dxx, rel(activation_dxx(p, xf), dxx_fd));
    fd_dq = std::max(fd_dq, rel(activation_dq(p, xf), dq_fd));
  }
  record("oddness", odd, 1e-12);
  record("monotonicity", mono, 0.0);
  record("density_positivity", pos_density, 0.0);
  record("evenness", even, 1e-12);
  record("kernel_positivity", pos_phi, 0.0);
  record("derivative_dx_fd", fd_dx, 1e-6);
  record("derivative_dxx_fd", fd_dxx, 1e-6);
  record("derivative_dq_fd", fd_dq, 1e-6);

  const DecayRadius radius = kernel_decay_radius(p, policy);
  const double R = static_cast<double>(radius.radius);
  const double mass =
      integrate([&](double t) { return density(p, t); }, -R, R, 4 * radius.radius, 12);
  record("unit_mass", std::abs(mass - 1.0), 1e-8);

  double part = 0.0;
  std::uniform_real_distribution<double> unit(-3.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    const double xi = unit(rng);
    double sum = 0.0;
    // window centered at xi, mirroring the operators' lattice truncation
    const int kmin = static_cast<int>(std::ceil(xi - R));
    const int kmax = static_cast<int>(std::floor(xi + R));
    for (int k = kmin; k <= kmax; ++k) {
      sum += symmetrized_kernel(p, xi - static_cast<double>(k));
    }
    part = std::max(part, std::abs(sum - 1.0));
  }
  record("partition_of_unity", part, cfg.tol * (2.0 * R + 1.0) + 1e-10);

  const double lim = std::max(std::abs(activation(p, 20.0 / cfg.lambda) - 1.0),
                              std::abs(activation(p, -20.0 / cfg.lambda) + 1.0));
  record("limits", lim, 1e-8);

  out.advisory = radius.capped;
  int fails = 0;
  for (const auto& row : out.table.rows) {
    if (row.back() == "FAIL") ++fails;
  }
  out.summary = "kernel-check: " + std::to_string(out.table.rows.size()) + " checks, " +
                std::to_string(fails) + " failed";
  return out;
}

CommandOutcome run_approximate(const RunConfig& cfg) {
  const ActivationParams p(cfg.q, cfg.lambda);
  const TestFunction& f = lookup_function(cfg.function);
  CommandOutcome out;
  out.table.header = {"n", "value", "error"};
  std::vector<std::pair<double, double>> err_rows;
  for (int n : effective_ns(cfg)) {
    const OperatorSpec spec = make_spec(cfg, n);
    const OperatorResult r = apply(p, spec, f, cfg.x);
    out.advisory = out.advisory || r.radius_capped;
    const double err = r.value - f.eval(cfg.x);
    out.table.add_row({std::to_string(n), fmt(r.value), fmt(err)});
    err_rows.emplace_back(static_cast<double>(n), err);
  }
  double rate = 0.0;
  if (err_rows.size() >= 3) {
    rate = rate_fit(err_rows);
    out.table.add_footer("error_rate", rate);
  }
  out.summary = "approximate: " + std::to_string(out.table.rows.size()) +
                " rows written, error_rate " + fmt(rate);
  return out;
}

CommandOutcome run_voronovskaya(const RunConfig& cfg) {
  const ActivationParams p(cfg.q, cfg.lambda);
  const TestFunction& f = lookup_function(cfg.function);
  CommandOutcome out;
  out.table.header = {"n", "raw_error", "residual"};
  std::vector<std::pair<double, double>> raw_rows, res_rows;
  for (int n : effective_ns(cfg)) {
    const OperatorSpec spec = make_spec(cfg, n);
    const VoronovskayaResult r = voronovskaya_residual(p, spec, f, cfg.x, cfg.taylor_order);
    out.advisory = out.advisory || r.radius_capped;
    out.table.add_row({std::to_string(n), fmt(r.raw_error), fmt(r.residual)});
    raw_rows.emplace_back(static_cast<double>(n), r.raw_error);
    res_rows.emplace_back(static_cast<double>(n), r.residual);
  }
  double res_rate = 0.0;
  try {
    out.table.add_footer("raw_rate", rate_fit(raw_rows));
    res_rate = rate_fit(res_rows);
    out.table.add_footer("residual_rate", res_rate);
  } catch (const InsufficientData&) {
    out.table.add_footer("raw_rate", std::string("nan"));
    out.table.add_footer("residual_rate", std::string("nan"));
  }
  out.summary = "voronovskaya: " + std::to_string(out.table.rows.size()) +
                " rows written, residual_rate " + fmt(res_rate);
  return out;
}

CommandOutcome run_kantorovich_rate(const RunConfig& cfg) {
  const ActivationParams p(cfg.q, cfg.lambda);
  const TestFunction& f = lookup_function(cfg.function);
  std::vector<int> ns = effective_ns(cfg);
  if (ns.size() < 4) throw CLI::ValidationError("--ns", "need at least 4 values of n");
  const ExpansionReport report =
      kantorovich_rate_check(p, f, cfg.x, cfg.taylor_order, cfg.beta, cfg.eps, ns);
  CommandOutcome out;
  out.table.header = {"n", "raw_error", "residual"};
  for (const auto& row : report.rows) {
    out.table.add_row({std::to_string(row.n), fmt(row.raw_error), fmt(row.residual)});
  }
  const double composite =
      report.fitted_composite_slope.value_or(std::numeric_limits<double>::quiet_NaN());
  out.table.add_footer("raw_rate", report.fitted_raw_rate);
  out.table.add_footer("residual_rate", report.fitted_residual_rate);
  out.table.add_footer("composite_slope", composite);
  out.summary = "kantorovich-rate: " + std::to_string(out.table.rows.size()) +
                " rows written, composite_slope " + fmt(composite);
  return out;
}

CommandOutcome run_stability(const RunConfig& cfg) {
  const ActivationParams base(1.0, cfg.lambda);
  const TestFunction& f = lookup_function(cfg.function);
  OperatorSpec spec = make_spec(cfg, cfg.n);
  if (spec.kind == OperatorKind::basic) spec.kind = OperatorKind::kantorovich;
  const StabilityReport report = stability_sweep(base, spec, f, cfg.x, cfg.deltas);
  CommandOutcome out;
  out.table.header = {"delta", "difference"};
  for (const auto& row : report.rows) {
    out.table.add_row({fmt(row.delta), fmt(row.difference)});
  }
  out.table.add_footer("slope", report.fitted_slope_in_delta);
  out.summary = "stability: " + std::to_string(out.table.rows.size()) +
                " rows written, slope " + fmt(report.fitted_slope_in_delta);
  return out;
}

CommandOutcome run_fractional_check(const RunConfig& cfg) {
  const FractionalOrder order(cfg.alpha);
  const CaputoScheme scheme(cfg.mesh_points, 2.0);
  CommandOutcome out;
  out.table.header = {"p", "alpha", "numeric", "exact", "rel_error"};
  double worst = 0.0;
  for (int p = 1; p <= 3; ++p) {
    const TestFunction f = power_function(p, 0.0);
    const double numeric = caputo_left(f, order, 0.0, 1.0, scheme);
    const double exact = f.caputo(cfg.alpha, 0.0, 1.0);
    const double rel = std::abs(numeric - exact) / std::max(1e-12, std::abs(exact));
    worst = std::max(worst, rel);
    out.table.add_row({std::to_string(p), fmt(cfg.alpha), fmt(numeric), fmt(exact), fmt(rel)});
  }
  TestFunction constant;
  constant.name = "const";
  constant.eval = [](double) { return 4.25; };
  for (int j = 1; j <= 6; ++j) constant.derivs.push_back([](double) { return 0.0; });
  const double const_err = std::abs(caputo_left(constant, order, 0.0, 1.0, scheme));
  out.table.add_row({"0", fmt(cfg.alpha), fmt(const_err), "0", fmt(const_err)});
  out.table.add_footer("max_rel_error", worst);
  out.summary = "fractional-check: " + std::to_string(out.table.rows.size()) +
                " rows written, max_rel_error " + fmt(worst);
  return out;
}

CommandOutcome run_damasclin(const RunConfig& cfg) {
  const ActivationParams p(cfg.q, cfg.lambda);
  const TestFunction& f = lookup_function(cfg.function);
  const FractionalOrder order(cfg.alpha);
  const CaputoScheme scheme(cfg.mesh_points, 2.0);
  const double window = 10.0 / cfg.lambda + 5.0;
  CommandOutcome out;
  out.table.header = {"n", "correction"};
  double last = 0.0;
  for (int n : effective_ns(cfg)) {
    OperatorSpec spec = make_spec(cfg, n);
    const DamasclinResult r =
        damasclin_correction(p, spec, f, order, cfg.x, cfg.beta, cfg.eps, scheme, window);
    out.advisory = out.advisory || r.window_too_small;
    out.table.add_row({std::to_string(n), fmt(r.value)});
    last = r.value;
  }
  out.table.add_footer("window", window);
  out.summary = "damasclin: " + std::to_string(out.table.rows.size()) +
                " rows written, correction " + fmt(last);
  return out;
}

void dump_config(const RunConfig& cfg, const std::string& command) {
  std::ostringstream os;
  os << '[' << command << "]\n"
     << "q=" << fmt(cfg.q) << '\n'
     << "lambda=" << fmt(cfg.lambda) << '\n'
     << "beta=" << fmt(cfg.beta) << '\n'
     << "eps=" << fmt(cfg.eps) << '\n'
     << "N=" << cfg.taylor_order << '\n'
     << "alpha=" << fmt(cfg.alpha) << '\n'
     << "n=" << cfg.n << '\n';
  if (!cfg.ns.empty()) {
    os << "ns=";
    for (std::size_t i = 0; i < cfg.ns.size(); ++i) os << (i ? "," : "") << cfg.ns[i];
    os << '\n';
  }
  if (!cfg.deltas.empty()) {
    os << "deltas=";
    for (std::size_t i = 0; i < cfg.deltas.size(); ++i) {
      os << (i ? "," : "") << fmt(cfg.deltas[i]);
    }
    os << '\n';
  }
  os << "function=" << cfg.function << '\n'
     << "x=" << fmt(cfg.x) << '\n'
     << "kind=" << cfg.kind << '\n';
  if (!cfg.quad_weights.empty()) {
    os << "quad-weights=";
    for (std::size_t i = 0; i < cfg.quad_weights.size(); ++i) {
      os << (i ? "," : "") << fmt(cfg.quad_weights[i]);
    }
    os << '\n';
  }
  os << "tol=" << fmt(cfg.tol) << '\n'
     << "mesh-points=" << cfg.mesh_points << '\n'
     << "format=" << cfg.format << '\n'
     << "seed=" << cfg.seed << '\n';
  std::cout << os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symmetrized perturbed-tanh neural operator experiments"};
  app.require_subcommand(0, 1);

  RunConfig cfg;
  std::string command;

  app.set_config("--config", "", "read options from a key=value config file");

  auto add_common = [&](CLI::App* sub) {
    sub->configurable();
    sub->add_option("--q", cfg.q, "deformation coefficient (q > 0)");
    sub->add_option("--lambda", cfg.lambda, "steepness (lambda > 0)");
    sub->add_option("--beta", cfg.beta, "rate parameter in (0, 1)");
    sub->add_option("--eps", cfg.eps, "rate slack in (0, N]");
    sub->add_option("--N", cfg.taylor_order, "Taylor expansion order");
    sub->add_option("--alpha", cfg.alpha, "fractional order (non-integer)");
    sub->add_option("--n", cfg.n, "lattice density");
    sub->add_option("--ns", cfg.ns, "comma-separated lattice densities")
        ->delimiter(',')
        ;
    sub->add_option("--deltas", cfg.deltas, "comma-separated q perturbations")
        ->delimiter(',')
        ;
    sub->add_option("--function", cfg.function, "corpus function name");
    sub->add_option("--x", cfg.x, "evaluation point");
    sub->add_option("--kind", cfg.kind, "basic | kantorovich | quadrature");
    sub->add_option("--quad-weights", cfg.quad_weights, "quadrature operator weights")
        ->delimiter(',')
        ;
    sub->add_option("--tol", cfg.tol, "kernel truncation tolerance");
    sub->add_option("--mesh-points", cfg.mesh_points, "Caputo mesh points");
    sub->add_option("--out", cfg.out, "report file path ('-' for stdout)");
    sub->add_option("--format", cfg.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}))
        ;
    sub->add_option("--seed", cfg.seed, "seed for randomized property checks");
    sub->add_flag("--strict", cfg.strict, "escalate numerical advisories to exit 1");
    sub->add_flag("--dump-config", cfg.dump_config, "print the effective config and exit");
    sub->callback([&, sub] { command = sub->get_name(); });
  };

  add_common(app.add_subcommand("kernel-check", "verify kernel analytic properties"));
  add_common(app.add_subcommand("approximate", "evaluate an operator across n"));
  add_common(app.add_subcommand("voronovskaya", "raw error vs expansion residual across n"));
  add_common(app.add_subcommand("kantorovich-rate", "Kantorovich composite-scale rate fit"));
  add_common(app.add_subcommand("stability", "q-perturbation sweep"));
  add_common(app.add_subcommand("fractional-check", "Caputo power-rule validation"));
  add_common(app.add_subcommand("damasclin", "fractional correction term"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (command.empty()) {
    std::cerr << app.help();
    return 2;
  }
  if (cfg.dump_config) {
    dump_config(cfg, command);
    return 0;
  }

  try {
    CommandOutcome outcome;
    if (command == "kernel-check") outcome = run_kernel_check(cfg);
    else if (command == "approximate") outcome = run_approximate(cfg);
    else if (command == "voronovskaya") outcome = run_voronovskaya(cfg);
    else if (command == "kantorovich-rate") outcome = run_kantorovich_rate(cfg);
    else if (command == "stability") outcome = run_stability(cfg);
    else if (command == "fractional-check") outcome = run_fractional_check(cfg);
    else if (command == "damasclin") outcome = run_damasclin(cfg);

    const std::string content = cfg.format == "json" ? to_json(command, outcome.table)
                                                     : to_csv(outcome.table);
    write_report(cfg.out, content);
    std::cout << outcome.summary << '\n';
    if (outcome.advisory && cfg.strict) {
      std::cerr << "advisory escalated by --strict\n";
      return 1;
    }
    return 0;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
