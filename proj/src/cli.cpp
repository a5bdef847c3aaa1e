#include "hyperdet/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <thread>

#include "hyperdet/counting.hpp"
#include "hyperdet/errors.hpp"
#include "hyperdet/hypermatrix.hpp"
#include "hyperdet/permcells.hpp"
#include "hyperdet/report.hpp"
#include "hyperdet/selftest.hpp"

namespace hyperdet {

namespace {

using nlohmann::json;

struct Common {
  int jobs = 0;
  std::string format;
  std::string output;
  bool deterministic = false;
  std::string budget;

  int resolved_jobs() const {
    if (jobs > 0) return jobs;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
  }
  Budgets budgets() const {
    Budgets b = budgets_from_env();
    return budget.empty() ? b : parse_budget_override(budget, b);
  }
  std::string format_or(const char* fallback, std::initializer_list<const char*> allowed) const {
    const std::string f = format.empty() ? fallback : format;
    for (const char* a : allowed)
      if (f == a) return f;
    throw Error(Errc::InvalidArgument, "format '" + f + "' is not available for this subcommand");
  }
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--jobs,-j", c.jobs, "worker threads (default: hardware concurrency)")->check(CLI::NonNegativeNumber);
  sub->add_option("--format", c.format, "json | csv | plain | dot");
  sub->add_option("--output,-o", c.output, "write the result to a file instead of stdout");
  sub->add_flag("--deterministic", c.deterministic, "omit timing fields");
  sub->add_option("--budget", c.budget, "budget overrides, e.g. brute=2^30,action=2^34,cells=5");
}

// Sends the result to --output when given.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error(Errc::InvalidArgument, "cannot open output file '" + path + "'");
      os_ = &file_;
    }
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

PlanePartition parse_shape(int k, const std::string& lam, const std::string& mu) {
  return PlanePartition::create(k, parse_partition(lam, static_cast<std::size_t>(k), k + 1),
                                parse_partition(mu, static_cast<std::size_t>(k), k + 1));
}

void check_k(int k) {
  if (k < 1 || k > kMaxFormatK)
    throw Error(Errc::InvalidArgument, "k must lie in 1.." + std::to_string(kMaxFormatK));
}

std::vector<FieldPtr> fields_up_to(int max_q) {
  std::vector<FieldPtr> out;
  for (int q = 2; q <= max_q; ++q) {
    try {
      out.push_back(parse_field(std::to_string(q)));
    } catch (const Error& e) {
      if (e.code() != Errc::CompositeCharacteristic) throw;
    }
  }
  return out;
}

std::vector<Method> parse_methods(const std::vector<std::string>& names) {
  std::vector<Method> out;
  for (const auto& n : names) {
    const Method m = parse_method(n);
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  }
  return out;
}

void emit_json(std::ostream& os, const json& j) { os << j.dump(2) << '\n'; }

// ---------------------------------------------------------------- count

struct CountArgs {
  int k = 0;
  std::vector<std::string> q;
  std::string lambda;
  std::string mu;
  std::vector<std::string> methods{"cells"};
};

int do_count(const CountArgs& a, const Common& c, std::ostream& out) {
  check_k(a.k);
  const PlanePartition P = parse_shape(a.k, a.lambda, a.mu);
  const std::string format = c.format_or("plain", {"plain", "json", "csv"});
  VerifyOptions opt;
  for (const auto& q : a.q) opt.fields.push_back(parse_field(q));
  opt.methods = parse_methods(a.methods);
  opt.budgets = c.budgets();
  opt.jobs = c.resolved_jobs();
  CountReport r = verify_conjecture(P, opt);

  // cells is always computed; only show it when asked for
  const bool want_cells = std::find(opt.methods.begin(), opt.methods.end(), Method::Cells) != opt.methods.end();
  if (!want_cells)
    std::erase_if(r.results, [](const MethodResult& m) { return m.method == Method::Cells; });

  Sink sink(c.output, out);
  if (format == "json") {
    emit_json(*sink, report_json(r, c.deterministic));
  } else if (format == "csv") {
    write_csv_header(*sink);
    write_csv_rows(*sink, r);
  } else if (r.results.size() == 1) {
    *sink << r.results.front().count << '\n';
  } else {
    for (const auto& m : r.results) *sink << "q=" << m.q << ' ' << to_string(m.method) << ' ' << m.count << '\n';
  }
  return r.internal_mismatch() ? 1 : 0;
}

// ---------------------------------------------------------------- conjecture

struct ConjectureArgs {
  int k = 0;
  int max_q = 2;
  bool all_shapes = false;
  std::string lambda;
  std::string mu;
  std::vector<std::string> methods{"cells"};
};

int do_conjecture(const ConjectureArgs& a, const Common& c, std::ostream& out) {
  check_k(a.k);
  if (a.all_shapes == !a.lambda.empty())
    throw Error(Errc::InvalidArgument, "give either --all-shapes or --lambda/--mu");
  const std::string format = c.format_or("json", {"json", "csv", "plain"});
  std::vector<PlanePartition> shapes =
      a.all_shapes ? enumerate_subshapes(a.k) : std::vector<PlanePartition>{parse_shape(a.k, a.lambda, a.mu)};

  VerifyOptions opt;
  opt.fields = fields_up_to(a.max_q);
  if (opt.fields.empty()) throw Error(Errc::InvalidArgument, "--max-q must be at least 2");
  opt.methods = parse_methods(a.methods);
  opt.budgets = c.budgets();
  opt.jobs = c.resolved_jobs();
  opt.skip_over_budget = true;

  const auto fs = cell_polynomials(a.k, shapes, opt.jobs, opt.budgets.cells_max_k);
  std::vector<CountReport> reports;
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    opt.precomputed_f = &fs[i];
    reports.push_back(verify_conjecture(shapes[i], opt));
  }

  int matches = 0, findings = 0, proved_failures = 0, mismatches = 0;
  for (const auto& r : reports) {
    if (r.flags.poly_vs_conjecture) ++matches;
    if (r.finding()) ++findings;
    if (r.proved_failure()) ++proved_failures;
    if (r.internal_mismatch()) ++mismatches;
  }

  Sink sink(c.output, out);
  if (format == "json") {
    json j;
    j["k"] = a.k;
    j["q_values"] = json::array();
    for (const auto& f : opt.fields) j["q_values"].push_back(f->size());
    j["methods"] = json::array();
    for (Method m : opt.methods) j["methods"].push_back(to_string(m));
    j["convention"] = kQIntConvention;
    j["shapes"] = json::array();
    j["counterexamples"] = json::array();
    for (const auto& r : reports) {
      j["shapes"].push_back(report_json(r, c.deterministic));
      if (json ce = counterexample_json(r); !ce.is_null()) j["counterexamples"].push_back(ce);
    }
    j["summary"] = {{"shapes", reports.size()},
                    {"matches", matches},
                    {"findings", findings},
                    {"proved_failures", proved_failures},
                    {"internal_mismatches", mismatches}};
    emit_json(*sink, j);
  } else if (format == "csv") {
    write_csv_header(*sink);
    for (const auto& r : reports) write_csv_rows(*sink, r);
  } else {
    for (const auto& r : reports) *sink << plain_line(r) << '\n';
    *sink << reports.size() << " shapes, " << matches << " match the product, " << findings << " findings, "
          << proved_failures << " proved-case failures, " << mismatches << " internal mismatches\n";
  }
  if (proved_failures > 0 || mismatches > 0) return 1;
  return findings > 0 ? 3 : 0;
}

// ---------------------------------------------------------------- hyperrooks

struct HyperrookArgs {
  int k = 0;
  std::string lambda;
  std::string mu;
  bool list = false;
};

int do_hyperrooks(const HyperrookArgs& a, const Common& c, std::ostream& out) {
  check_k(a.k);
  const PlanePartition P = parse_shape(a.k, a.lambda, a.mu);
  const std::string format = c.format_or("plain", {"plain", "json"});
  const std::uint64_t count = hyperrook_count(P);
  std::vector<std::pair<Permutation, Permutation>> placements;
  if (a.list) placements = hyperrook_placements(P);

  Sink sink(c.output, out);
  if (format == "json") {
    json j{{"k", a.k}, {"lambda", P.lam().to_string()}, {"mu", P.mu().to_string()}, {"count", count}};
    if (a.list) {
      j["placements"] = json::array();
      for (const auto& [s, p] : placements) {
        const WCPair wc = wc_from(s, p);
        j["placements"].push_back({{"sigma", s.to_string()},
                                   {"pi", p.to_string()},
                                   {"w", wc.w.to_string()},
                                   {"c", wc.c.to_cycle_string()}});
      }
    }
    emit_json(*sink, j);
    return 0;
  }
  *sink << count << '\n';
  for (const auto& [s, p] : placements) {
    const WCPair wc = wc_from(s, p);
    *sink << "w=" << wc.w.to_string() << " c=" << wc.c.to_cycle_string() << "  (sigma=" << s.to_string()
          << " pi=" << p.to_string() << ")\n";
  }
  return 0;
}

// ---------------------------------------------------------------- digraph

struct DigraphArgs {
  std::string sigma;
  std::string pi;
};

int do_digraph(const DigraphArgs& a, const Common& c, std::ostream& out) {
  const Permutation sigma = Permutation::parse(a.sigma);
  const Permutation pi = Permutation::parse(a.pi);
  if (sigma.size() != pi.size() + 1)
    throw Error(Errc::SizeMismatch, "sigma must have exactly one more letter than pi");
  const std::string format = c.format_or("dot", {"dot", "plain", "json"});
  const DepDigraph d = DepDigraph::build(sigma, pi);
  const auto& vars = d.variables().all();

  Sink sink(c.output, out);
  if (format == "dot") {
    *sink << d.to_dot();
  } else if (format == "json") {
    json j{{"sigma", sigma.to_string()}, {"pi", pi.to_string()}, {"nodes", json::array()}, {"arcs", json::array()}};
    for (const auto& v : vars) j["nodes"].push_back(v.label());
    for (const auto& [s, t] : d.arcs()) j["arcs"].push_back({vars[s].label(), vars[t].label()});
    j["topological_order"] = json::array();
    for (int v : d.topological_order()) j["topological_order"].push_back(vars[v].label());
    emit_json(*sink, j);
  } else {
    for (const auto& [s, t] : d.arcs()) *sink << vars[s].label() << " -> " << vars[t].label() << '\n';
    *sink << "order:";
    for (int v : d.topological_order()) *sink << ' ' << vars[v].label();
    *sink << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------- classical

struct ClassicalArgs {
  int n = 0;
  std::string q;
  std::string lambda;
};

int do_classical(const ClassicalArgs& a, const Common& c, std::ostream& out) {
  if (a.n < 1 || a.n > 8) throw Error(Errc::InvalidArgument, "n must lie in 1..8");
  const FieldPtr field = parse_field(a.q);
  const IntegerPartition lam = parse_partition(a.lambda, static_cast<std::size_t>(a.n), a.n);
  const std::string format = c.format_or("plain", {"plain", "json"});
  const std::uint64_t rooks = classical_rook_count(lam);
  const std::uint64_t rooks_brute = classical_rook_count_brute(lam);
  const BigInt formula = classical_matrix_polynomial(lam).evaluate(field->size());
  const std::uint64_t matrices = classical_matrix_count(lam, field, c.budgets().brute);
  const bool ok = rooks == rooks_brute && formula == BigInt(matrices);

  Sink sink(c.output, out);
  if (format == "json") {
    emit_json(*sink, {{"n", a.n},
                      {"q", field->size()},
                      {"lambda", lam.to_string()},
                      {"rooks", {{"product", rooks}, {"brute", rooks_brute}}},
                      {"matrices", {{"product", bigint_json(formula)}, {"brute", matrices}}},
                      {"agree", ok}});
  } else {
    *sink << "rooks " << rooks << " (brute " << rooks_brute << ")\n";
    *sink << "matrices " << formula << " (brute " << matrices << ")\n";
  }
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------- nondeg

struct NondegArgs {
  std::string literal;
  std::string input;
};

int do_nondeg(const NondegArgs& a, const Common& c, std::ostream& out) {
  if (a.literal.empty() == a.input.empty()) throw Error(Errc::InvalidArgument, "give exactly one of --literal / --input");
  json j;
  try {
    if (!a.literal.empty()) {
      j = json::parse(a.literal);
    } else {
      std::ifstream in(a.input);
      if (!in) throw Error(Errc::InvalidArgument, "cannot read '" + a.input + "'");
      j = json::parse(in);
    }
  } catch (const json::exception& e) {
    throw Error(Errc::FormatMismatch, std::string("bad hypermatrix literal: ") + e.what());
  }
  const Hypermatrix h = hypermatrix_from_json(j);
  const std::string format = c.format_or("plain", {"plain", "json"});
  const bool nd = is_nondegenerate(h);
  Sink sink(c.output, out);
  if (format == "json") emit_json(*sink, {{"nondegenerate", nd}, {"hypermatrix", to_json(h)}});
  else *sink << (nd ? "nondegenerate" : "degenerate") << '\n';
  return 0;
}

// ---------------------------------------------------------------- selftest

int do_selftest(const std::string& level, const Common& c, std::ostream& out) {
  SelftestLevel lv;
  if (level == "quick") lv = SelftestLevel::Quick;
  else if (level == "full") lv = SelftestLevel::Full;
  else throw Error(Errc::InvalidArgument, "level must be quick or full");
  Sink sink(c.output, out);
  const auto checks = run_selftest(lv, c.resolved_jobs(), &*sink);
  std::size_t failed = 0;
  for (const auto& ch : checks) failed += ch.passed ? 0 : 1;
  *sink << (checks.size() - failed) << '/' << checks.size() << " checks passed\n";
  return failed == 0 ? 0 : 1;
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::InternalInvariant:
    case Errc::CycleDetected:
    case Errc::NonDivisibleCount:
      return 1;
    default:
      return 2;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Counting nondegenerate boundary-format hypermatrices with a prescribed zero pattern", "hyperdet"};
  app.require_subcommand(1);

  Common common;
  CountArgs count;
  auto* count_cmd = app.add_subcommand("count", "count nondegenerate hypermatrices respecting a shape");
  count_cmd->add_option("--k", count.k, "format parameter")->required();
  count_cmd->add_option("--q", count.q, "field sizes, e.g. 2,3,2^2")->required()->delimiter(',');
  count_cmd->add_option("--lambda", count.lambda, "front-face partition")->required();
  count_cmd->add_option("--mu", count.mu, "back-face partition")->required();
  count_cmd->add_option("--method", count.methods, "brute | action | cells")->delimiter(',');
  add_common(count_cmd, common);

  ConjectureArgs conj;
  auto* conj_cmd = app.add_subcommand("conjecture", "compare f(q) with the q-integer product");
  conj_cmd->add_option("--k", conj.k)->required();
  conj_cmd->add_option("--max-q", conj.max_q, "check every field of size <= this");
  conj_cmd->add_flag("--all-shapes", conj.all_shapes, "sweep every shape inside the staircase");
  conj_cmd->add_option("--lambda", conj.lambda);
  conj_cmd->add_option("--mu", conj.mu);
  conj_cmd->add_option("--methods,--method", conj.methods, "counting methods besides cells")->delimiter(',');
  add_common(conj_cmd, common);

  HyperrookArgs rooks;
  auto* rook_cmd = app.add_subcommand("hyperrooks", "count hyperrook placements respecting a shape");
  rook_cmd->add_option("--k", rooks.k)->required();
  rook_cmd->add_option("--lambda", rooks.lambda)->required();
  rook_cmd->add_option("--mu", rooks.mu)->required();
  rook_cmd->add_flag("--list", rooks.list, "also list the (w, c) pairs");
  add_common(rook_cmd, common);

  DigraphArgs dig;
  auto* dig_cmd = app.add_subcommand("digraph", "dependency digraph of the augmented hypermatrix variables");
  dig_cmd->add_option("--sigma", dig.sigma)->required();
  dig_cmd->add_option("--pi", dig.pi)->required();
  add_common(dig_cmd, common);

  ClassicalArgs cls;
  auto* cls_cmd = app.add_subcommand("classical", "two-dimensional rook and matrix counts");
  cls_cmd->add_option("--n", cls.n)->required();
  cls_cmd->add_option("--q", cls.q)->required();
  cls_cmd->add_option("--lambda", cls.lambda)->required();
  add_common(cls_cmd, common);

  NondegArgs nd;
  auto* nd_cmd = app.add_subcommand("nondeg", "decide nondegeneracy of a hypermatrix literal");
  nd_cmd->add_option("--literal", nd.literal, "JSON object {k, q, front, back}");
  nd_cmd->add_option("--input", nd.input, "file holding the JSON object");
  add_common(nd_cmd, common);

  std::string level = "quick";
  auto* st_cmd = app.add_subcommand("selftest", "run the invariant suites");
  st_cmd->add_option("--level", level, "quick | full");
  add_common(st_cmd, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*count_cmd) return do_count(count, common, out);
    if (*conj_cmd) return do_conjecture(conj, common, out);
    if (*rook_cmd) return do_hyperrooks(rooks, common, out);
    if (*dig_cmd) return do_digraph(dig, common, out);
    if (*cls_cmd) return do_classical(cls, common, out);
    if (*nd_cmd) return do_nondeg(nd, common, out);
    return do_selftest(level, common, out);
  } catch (const Error& e) {
    err << "hyperdet: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "hyperdet: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace hyperdet
