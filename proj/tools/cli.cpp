#include "schurmarc/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "schurmarc/estimator.hpp"
#include "schurmarc/marcinkiewicz.hpp"
#include "schurmarc/quadrature.hpp"
#include "schurmarc/report_io.hpp"
#include "schurmarc/symbol_io.hpp"

namespace schurmarc {

namespace {

using nlohmann::json;

/// bad flags or files; reported with exit code 2
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep))
    if (!item.empty()) parts.push_back(item);
  return parts;
}

std::vector<double> parse_exponents(const std::vector<std::string>& labels) {
  std::vector<double> ps;
  for (const auto& l : labels) {
    double p = 0.0;
    try {
      p = parse_exponent(l);
    } catch (const std::exception& e) {
      throw InputError(e.what());
    }
    ps.push_back(p);
  }
  return ps;
}

Index parse_index(const std::string& text) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw InputError("not an integer: '" + text + "'");
  }
}

std::pair<double, double> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InputError("range '" + text + "' should read lo:hi");
  try {
    return {std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw InputError("cannot parse range '" + text + "'");
  }
}

Box integer_range(const std::string& text, int d) {
  const auto [lo, hi] = parse_range(text);
  if (lo != std::floor(lo) || hi != std::floor(hi)) throw InputError("range '" + text + "' must be integral");
  if (hi <= lo) throw InputError("range '" + text + "' is empty");
  return Box::cube(d, static_cast<Index>(lo), static_cast<Index>(hi));
}

std::vector<Complex> parse_vector(const std::string& text) {
  std::vector<Complex> v;
  for (const auto& s : split(text, ',')) {
    try {
      v.emplace_back(std::stod(s), 0.0);
    } catch (const std::exception&) {
      throw InputError("cannot parse vector entry '" + s + "'");
    }
  }
  return v;
}

struct SymbolFlags {
  std::string spec;
  std::string catalog;
  int d = 1;
  std::uint64_t seed = 0;
  std::string u, v;
  Index offset = 0;
};

struct OutputFlags {
  std::string out;
  std::string format = "json";
};

void add_symbol_flags(CLI::App* app, SymbolFlags& f) {
  auto* spec = app->add_option("--spec", f.spec, "symbol spec file (JSON)");
  auto* cat = app->add_option("--catalog", f.catalog, "catalog symbol name");
  spec->excludes(cat);
  app->add_option("--d", f.d, "dimension for catalog symbols")->check(CLI::Range(1, 8));
  app->add_option("--seed", f.seed, "seed for seeded symbols and searches");
  app->add_option("--u", f.u, "rank_one row factor, comma separated");
  app->add_option("--v", f.v, "rank_one column factor, comma separated");
  app->add_option("--offset", f.offset, "rank_one index of the first factor entry");
}

void add_output_flags(CLI::App* app, OutputFlags& f, const std::string& default_format) {
  f.format = default_format;
  app->add_option("--out", f.out, "output path (stdout when absent)");
  app->add_option("--format", f.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

Symbol load(const SymbolFlags& f) {
  if (f.spec.empty() && f.catalog.empty()) throw InputError("one of --spec or --catalog is required");
  if (!f.spec.empty()) return load_symbol(f.spec);
  CatalogParams params;
  params.dim = f.d;
  params.seed = f.seed;
  params.u = parse_vector(f.u);
  params.v = parse_vector(f.v);
  params.offset = f.offset;
  const auto& names = catalog_names();
  if (std::find(names.begin(), names.end(), f.catalog) == names.end())
    throw InputError("unknown catalog symbol '" + f.catalog + "'");
  return catalog(f.catalog, params);
}

RunConfig base_config(const std::string& command, const SymbolFlags& s, const OutputFlags& o, int dim) {
  RunConfig c;
  c.command = command;
  c.symbol_source = s.spec.empty() ? "catalog" : "spec";
  c.symbol = s.spec.empty() ? s.catalog : s.spec;
  c.dim = dim;
  c.seed = s.seed;
  c.out = o.out;
  c.format = o.format;
  if (!s.u.empty()) c.extra["u"] = s.u;
  if (!s.v.empty()) c.extra["v"] = s.v;
  if (s.offset) c.extra["offset"] = s.offset;
  return c;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot open '" + path + "' for writing");
  file << text;
  if (!file) throw InputError("failed writing '" + path + "'");
}

std::string document(const RunConfig& c, const json& data, const std::string& csv_body) {
  const std::string stamp = timestamp_utc();
  return c.format == "csv" ? csv_document(c, csv_body, stamp) : json_document(c, data, stamp);
}

// ---- check ----------------------------------------------------------------

struct CheckFlags {
  SymbolFlags symbol;
  OutputFlags output;
  int n_max = 10;
  int k_max = 4;
  int j_min = 0;
  int j_max = 6;
  std::string base_range;
  std::optional<double> threshold;
  std::string differences = "full";
  std::string checker = "auto";
  int base_samples = 33;
};

int cmd_check(const CheckFlags& f, std::ostream& out, std::ostream& err) {
  const Symbol sym = load(f.symbol);
  ConditionReport report;
  RunConfig c;
  if (const auto* M = std::get_if<ContinuousSymbol>(&sym)) {
    c = base_config("check", f.symbol, f.output, M->dim());
    ContinuousCheckOptions opts;
    opts.base_samples = f.base_samples;
    if (!f.base_range.empty()) std::tie(opts.base_lo, opts.base_hi) = parse_range(f.base_range);
    c.j_min = f.j_min;
    c.j_max = f.j_max;
    c.extra["base_samples"] = f.base_samples;
    c.extra["base_interval"] = {opts.base_lo, opts.base_hi};
    report = check_continuous(*M, f.j_min, f.j_max, opts);
  } else {
    const auto& m = std::get<DiscreteSymbol>(sym);
    const int d = m.dim();
    c = base_config("check", f.symbol, f.output, d);
    std::string checker = f.checker;
    if (checker == "auto") checker = d == 1 ? "1d" : d == 2 ? "2d" : "dd";
    if ((checker == "1d" && d != 1) || (checker == "2d" && d != 2))
      throw InputError("checker " + checker + " does not apply to d = " + std::to_string(d));
    const Box base = integer_range(f.base_range.empty() ? (d == 1 ? "-8:8" : "-2:2") : f.base_range, d);
    c.base_range = base;
    c.extra["checker"] = checker;
    if (checker == "1d") {
      c.n_max = f.n_max;
      c.extra["differences"] = f.differences;
      report = check_1d(m, f.n_max, base,
                        f.differences == "interior" ? BlockDifferences::interior : BlockDifferences::full);
    } else {
      c.k_max = f.k_max;
      report = checker == "2d" ? check_2d(m, f.k_max, base) : check_dd(m, d, f.k_max, base);
    }
  }
  c.threshold = f.threshold;
  emit(document(c, to_json(report), condition_report_csv(report)), f.output.out, out);

  const double constants[] = {report.C1, report.C2, report.C3, report.A};
  for (double v : constants)
    if (!std::isfinite(v)) {
      err << "check: a constant is not finite\n";
      return kExitFailure;
    }
  if (report.non_uniform) err << "check: warning: block sums grow across the top levels\n";
  if (f.threshold) {
    for (double v : constants)
      if (v > *f.threshold) {
        err << "check: constant " << v << " exceeds threshold " << *f.threshold << "\n";
        return kExitFailure;
      }
  }
  return kExitOk;
}

// ---- verify ---------------------------------------------------------------

struct VerifyFlags {
  OutputFlags output;
  int trials = 200;
  std::uint64_t seed = 0;
  bool inject_fault = false;
};

int cmd_verify(const VerifyFlags& f, std::ostream& out, std::ostream& err) {
  if (f.trials < 0) throw InputError("--trials must be nonnegative");
  if (f.trials == 0) err << "verify: warning: --trials 0 runs nothing; passing vacuously\n";
  VerifyOptions opts;
  opts.trials = f.trials;
  opts.seed = f.seed;
  opts.inject_fault = f.inject_fault;
  const auto suites = verify_identities(opts);
  RunConfig c;
  c.command = "verify";
  c.trials = f.trials;
  c.seed = f.seed;
  c.out = f.output.out;
  c.format = f.output.format;
  c.extra["inject_fault"] = f.inject_fault;
  json data = json::array();
  std::ostringstream csv;
  csv << "suite,trials,max_residual,tolerance,passed\n";
  bool ok = true;
  for (const auto& s : suites) {
    data.push_back({{"suite", s.name},
                    {"trials", s.trials},
                    {"max_residual", s.max_residual},
                    {"tolerance", s.tolerance},
                    {"passed", s.passed()}});
    csv << s.name << "," << s.trials << "," << s.max_residual << "," << s.tolerance << ","
        << (s.passed() ? "true" : "false") << "\n";
    if (!s.passed()) {
      ok = false;
      err << "verify: " << s.name << " residual " << s.max_residual << " above " << s.tolerance << "\n";
    }
  }
  emit(document(c, data, csv.str()), f.output.out, out);
  return ok ? kExitOk : kExitFailure;
}

// ---- estimate / growth ----------------------------------------------------

struct EstimateFlags {
  SymbolFlags symbol;
  OutputFlags output;
  std::string p = "2";
  std::string n = "16";
  std::string window;
  int restarts = 10;
  int iterations = 100;
  int growth_restarts = 1;
  int growth_iterations = -1;
  int amp = 1;
  int threads = 0;
  bool witness = false;
  std::string gnuplot;
};

const DiscreteSymbol& require_discrete(const Symbol& sym, const char* command) {
  const auto* m = std::get_if<DiscreteSymbol>(&sym);
  if (!m) throw InputError(std::string(command) + " needs a discrete symbol");
  return *m;
}

SearchBudget budget_of(const EstimateFlags& f) {
  if (f.restarts < 1) throw InputError("--restarts must be at least 1");
  if (f.iterations < 0) throw InputError("--iters must be nonnegative");
  SearchBudget b;
  b.restarts = f.restarts;
  b.iterations = f.iterations;
  b.growth_restarts = f.growth_restarts;
  b.growth_iterations = f.growth_iterations;
  b.threads = f.threads;
  return b;
}

void fill_search_config(RunConfig& c, const EstimateFlags& f, const std::vector<Index>& ns) {
  c.p_list = split(f.p, ',');
  c.n_list = ns;
  c.restarts = f.restarts;
  c.iterations = f.iterations;
  c.amp = f.amp;
}

int cmd_estimate(const EstimateFlags& f, std::ostream& out, std::ostream&) {
  const Symbol sym = load(f.symbol);
  const DiscreteSymbol& m = require_discrete(sym, "estimate");
  const int d = m.dim();
  const auto labels = split(f.p, ',');
  const auto ps = parse_exponents(labels);
  if (ps.empty()) throw InputError("--p is empty");
  std::vector<Box> windows;
  std::vector<Index> ns;
  if (!f.window.empty()) {
    windows.push_back(integer_range(f.window, d));
  } else {
    for (const auto& s : split(f.n, ',')) {
      const Index N = parse_index(s);
      if (N < 1) throw InputError("--n entries must be positive");
      ns.push_back(N);
      windows.push_back(Box::cube(d, -N, N));
    }
  }
  if (f.amp < 1) throw InputError("--amp must be at least 1");
  RunConfig c = base_config("estimate", f.symbol, f.output, d);
  fill_search_config(c, f, ns);
  if (!f.window.empty()) c.extra["window"] = f.window;
  const SearchBudget b = budget_of(f);
  json data = json::array();
  std::vector<GrowthRow> rows;
  for (const Box& w : windows)
    for (double p : ps) {
      const EstimateResult r = cb_lower_bound(m, w, p, f.amp, b, f.symbol.seed);
      json j = to_json(r, f.witness);
      j["p_label"] = exponent_label(p, labels);
      j["reference"] = reference_bound(p, d + 2);
      data.push_back(j);
      GrowthRow row;
      row.symbol = m.name();
      row.dim = d;
      row.p = p;
      row.N = w.extent(0) / 2;
      row.amplification = f.amp;
      row.estimate = r.value;
      row.reference = reference_bound(p, d + 2);
      row.ratio = row.estimate / row.reference;
      row.restarts = r.restarts;
      row.iterations = r.iterations;
      row.seed = r.seed;
      rows.push_back(row);
    }
  emit(document(c, data, growth_csv(rows, labels)), f.output.out, out);
  return kExitOk;
}

int cmd_growth(const EstimateFlags& f, std::ostream& out, std::ostream&) {
  const Symbol sym = load(f.symbol);
  const DiscreteSymbol& m = require_discrete(sym, "growth");
  const auto labels = split(f.p, ',');
  const auto ps = parse_exponents(labels);
  std::vector<Index> ns;
  for (const auto& s : split(f.n, ',')) ns.push_back(parse_index(s));
  if (ps.empty() || ns.empty()) throw InputError("growth needs --p and --n lists");
  for (Index N : ns)
    if (N < 1) throw InputError("--n entries must be positive");
  RunConfig c = base_config("growth", f.symbol, f.output, m.dim());
  fill_search_config(c, f, ns);
  c.extra["growth_restarts"] = f.growth_restarts;
  c.extra["growth_iterations"] = f.growth_iterations;
  const auto rows = growth_experiment(m, ps, ns, budget_of(f), f.symbol.seed);
  json data = json::array();
  for (const auto& r : rows) {
    json j = to_json(r);
    j["p_label"] = exponent_label(r.p, labels);
    data.push_back(j);
  }
  const std::string stamp = timestamp_utc();
  emit(c.format == "csv" ? csv_document(c, growth_csv(rows, labels), stamp) : json_document(c, data, stamp),
       f.output.out, out);
  std::string plot_path = f.gnuplot;
  if (plot_path.empty() && !f.output.out.empty()) plot_path = f.output.out + ".dat";
  if (!plot_path.empty()) emit(csv_document(c, growth_gnuplot(rows, labels), stamp), plot_path, out);
  return kExitOk;
}

// ---- discretize -----------------------------------------------------------

struct DiscretizeFlags {
  SymbolFlags symbol;
  OutputFlags output;
  int k = 4;
  std::string window = "0:8";
  int n_max = 6;
  std::string base_range = "-4:4";
  std::optional<int> j_min, j_max;
  std::string differences = "interior";
  std::string report;
  int base_samples = 9;
};

int cmd_discretize(const DiscretizeFlags& f, std::ostream& out, std::ostream& err) {
  const Symbol sym = load(f.symbol);
  const auto* M = std::get_if<ContinuousSymbol>(&sym);
  if (!M) throw InputError("discretize needs a continuous symbol");
  if (M->dim() != 1) throw InputError("discretize supports d = 1");
  if (f.k < 0) throw InputError("--k must be nonnegative");
  const Box window = integer_range(f.window, 1);
  const Box base = integer_range(f.base_range, 1);
  const int j_min = f.j_min.value_or(-f.k - 1), j_max = f.j_max.value_or(f.n_max - f.k + 1);

  const DiscreteSymbol dense = discretize_continuous(*M, f.k, window);
  const DiscreteSymbol lazy = discretized_symbol(*M, f.k);
  const auto differences = f.differences == "full" ? BlockDifferences::full : BlockDifferences::interior;
  const ConditionReport discrete = check_1d(lazy, f.n_max, base, differences);
  ContinuousCheckOptions copts;
  copts.base_samples = f.base_samples;
  copts.base_lo = static_cast<double>(base.lo()[0]) / std::ldexp(1.0, f.k);
  copts.base_hi = static_cast<double>(base.hi()[0] - 1) / std::ldexp(1.0, f.k);
  const ConditionReport continuous = check_continuous(*M, j_min, j_max, copts);

  RunConfig c = base_config("discretize", f.symbol, f.output, 1);
  c.n_max = f.n_max;
  c.j_min = j_min;
  c.j_max = j_max;
  c.base_range = base;
  c.extra["k"] = f.k;
  c.extra["window"] = f.window;
  c.extra["differences"] = f.differences;
  c.extra["base_samples"] = f.base_samples;
  const std::string stamp = timestamp_utc();

  const double top = discrete.overall();
  json data = {{"discrete", to_json(discrete)},
               {"continuous", to_json(continuous)},
               {"comparison",
                {{"max_block_sum", top}, {"A", continuous.A}, {"within", top <= continuous.A + 1e-6}}}};
  json symbol_doc = dense_symbol_to_json(dense);
  if (f.output.out.empty()) data["symbol"] = symbol_doc;
  else emit(symbol_doc.dump(2) + "\n", f.output.out, out);
  emit(json_document(c, data, stamp), f.report, out);
  if (top > continuous.A + 1e-6)
    err << "discretize: note: a discrete block sum " << top << " exceeds the sampled continuous constant "
        << continuous.A << "\n";
  return kExitOk;
}

// ---- catalog --------------------------------------------------------------

struct CatalogFlags {
  SymbolFlags symbol;
  OutputFlags output;
  std::string window;
};

int cmd_catalog(const CatalogFlags& f, std::ostream& out, std::ostream&) {
  if (f.symbol.catalog.empty() && f.symbol.spec.empty()) {
    for (const auto& name : catalog_names())
      out << name << (is_continuous_catalog_name(name) ? "  (continuous)" : "") << "\n";
    return kExitOk;
  }
  const Symbol sym = load(f.symbol);
  if (f.window.empty()) {
    json info;
    if (const auto* m = std::get_if<DiscreteSymbol>(&sym))
      info = {{"name", m->name()}, {"d", m->dim()}, {"kind", to_string(m->kind())}};
    else {
      const auto& M = std::get<ContinuousSymbol>(sym);
      info = {{"name", M.name()}, {"d", M.dim()}, {"kind", "continuous"}, {"analytic_partials", M.has_analytic_partials()}};
    }
    emit(info.dump(2) + "\n", f.output.out, out);
    return kExitOk;
  }
  const DiscreteSymbol& m = require_discrete(sym, "catalog --window");
  const Box w = integer_range(f.window, m.dim());
  emit(dense_symbol_to_json(restrict_window(m, w, w)).dump(2) + "\n", f.output.out, out);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Schur multiplier conditions, transference checks and S_p norm estimates", "schurmarc"};
  app.require_subcommand(1);

  CheckFlags check;
  auto* c = app.add_subcommand("check", "evaluate the block conditions of a symbol");
  add_symbol_flags(c, check.symbol);
  add_output_flags(c, check.output, "json");
  c->add_option("--nmax", check.n_max, "top level for the 1D checker")->check(CLI::Range(1, 30));
  c->add_option("--kmax", check.k_max, "top level for the 2D / dD checkers")->check(CLI::Range(1, 20));
  c->add_option("--jmin", check.j_min, "lowest continuous level");
  c->add_option("--jmax", check.j_max, "highest continuous level");
  c->add_option("--base-range", check.base_range, "base points lo:hi per coordinate");
  c->add_option("--threshold", check.threshold, "exit 1 when a constant exceeds it");
  c->add_option("--differences", check.differences, "1D block differences: full or interior")
      ->check(CLI::IsMember({"full", "interior"}));
  c->add_option("--checker", check.checker, "auto, 1d, 2d or dd")->check(CLI::IsMember({"auto", "1d", "2d", "dd"}));
  c->add_option("--base-samples", check.base_samples, "continuous base points per coordinate")
      ->check(CLI::PositiveNumber);

  VerifyFlags verify;
  auto* v = app.add_subcommand("verify", "run the exact-identity suites");
  add_output_flags(v, verify.output, "json");
  v->add_option("--trials", verify.trials, "trials per suite");
  v->add_option("--seed", verify.seed, "seed");
  v->add_flag("--inject-fault", verify.inject_fault, "plant a wrong coefficient (test hook)");

  EstimateFlags estimate;
  auto* e = app.add_subcommand("estimate", "lower bounds for the S_p norm of a Schur multiplier");
  EstimateFlags growth;
  auto* g = app.add_subcommand("growth", "estimates across windows [-N, N)^d against the reference curve");
  for (auto [cmd, flags] : {std::pair{e, &estimate}, std::pair{g, &growth}}) {
    add_symbol_flags(cmd, flags->symbol);
    add_output_flags(cmd, flags->output, cmd == g ? "csv" : "json");
    cmd->add_option("--p", flags->p, "exponents, e.g. 4/3,2,4");
    cmd->add_option("--restarts", flags->restarts, "starts per search");
    cmd->add_option("--iters", flags->iterations, "iterations per start");
    cmd->add_option("--threads", flags->threads, "worker threads (0: hardware)");
  }
  e->add_option("--n", estimate.n, "half-widths N; window [-N, N)^d");
  e->add_option("--window", estimate.window, "explicit window lo:hi per coordinate");
  e->add_option("--amp", estimate.amp, "amplification k for the cb lower bound");
  e->add_flag("--witness", estimate.witness, "include the witness matrix");
  growth.n = "16,32,64,128";
  g->add_option("--n", growth.n, "half-widths N");
  g->add_option("--growth-restarts", growth.growth_restarts, "starts on each later window");
  g->add_option("--growth-iters", growth.growth_iterations, "iterations on each later window");
  g->add_option("--gnuplot", growth.gnuplot, "gnuplot data path (default: <out>.dat)");

  DiscretizeFlags disc;
  auto* dz = app.add_subcommand("discretize", "parallelogram averages of a continuous symbol");
  add_symbol_flags(dz, disc.symbol);
  add_output_flags(dz, disc.output, "json");
  dz->add_option("--k", disc.k, "scale 2^-k");
  dz->add_option("--window", disc.window, "index window lo:hi of the dense symbol");
  dz->add_option("--nmax", disc.n_max, "top level for the discrete check");
  dz->add_option("--base-range", disc.base_range, "discrete base points lo:hi");
  dz->add_option("--jmin", disc.j_min, "lowest continuous level");
  dz->add_option("--jmax", disc.j_max, "highest continuous level");
  dz->add_option("--differences", disc.differences, "full or interior")->check(CLI::IsMember({"full", "interior"}));
  dz->add_option("--report", disc.report, "report path (stdout when absent)");
  dz->add_option("--base-samples", disc.base_samples, "continuous base points")->check(CLI::PositiveNumber);

  CatalogFlags cat;
  auto* ct = app.add_subcommand("catalog", "list catalog symbols or tabulate one");
  add_symbol_flags(ct, cat.symbol);
  add_output_flags(ct, cat.output, "json");
  ct->add_option("--window", cat.window, "tabulate on lo:hi per coordinate");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& ex) {
    err << "schurmarc: " << ex.what() << "\n";
    return kExitInputError;
  }

  try {
    if (*c) return cmd_check(check, out, err);
    if (*v) return cmd_verify(verify, out, err);
    if (*e) return cmd_estimate(estimate, out, err);
    if (*g) return cmd_growth(growth, out, err);
    if (*dz) return cmd_discretize(disc, out, err);
    if (*ct) return cmd_catalog(cat, out, err);
  } catch (const SpecError& ex) {
    err << "schurmarc: spec error: " << ex.what() << "\n";
  } catch (const QuadratureError& ex) {
    err << "schurmarc: quadrature failure: " << ex.what() << "\n";
  } catch (const std::length_error& ex) {
    err << "schurmarc: " << ex.what() << "\n";
  } catch (const std::exception& ex) {
    err << "schurmarc: " << ex.what() << "\n";
  }
  return kExitInputError;
}

}  // namespace schurmarc
