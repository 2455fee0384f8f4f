#include "pfister/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pfister/acceptance.hpp"
#include "pfister/json_io.hpp"
#include "pfister/witt.hpp"

namespace pfister {

namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Options {
  std::string field;
  std::vector<std::string> a, b;
  std::string in, out, report;
  std::optional<std::uint64_t> seed;
  std::optional<int> budget_degree, budget_trials;
  std::string kind;
  int n = 2, m = 3;
  std::string variant = "sum";
  std::vector<int> only;
};

std::optional<std::uint64_t> env_seed() {
  const char* s = std::getenv("PFISTER_SEED");
  if (!s || !*s) return std::nullopt;
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw UsageError(std::string("PFISTER_SEED is not an unsigned integer: ") + s);
  }
}

Json read_json(const std::string& path, const char* what) {
  std::ifstream f(path);
  if (!f) throw UsageError(std::string("cannot open ") + what + " file " + path);
  try {
    return Json::parse(f);
  } catch (const Json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

// Defaults, then the instance budget, then flags and PFISTER_SEED.
SearchBudget budget_for(const Options& o, const std::optional<SearchBudget>& from_instance) {
  SearchBudget b = from_instance.value_or(SearchBudget{});
  if (const auto s = env_seed()) b.seed = *s;
  if (o.seed) b.seed = *o.seed;
  if (o.budget_degree) b.degree_bound = *o.budget_degree;
  if (o.budget_trials) b.trials = *o.budget_trials;
  return b;
}

FieldElem parse_flag_elem(const FieldPtr& F, const std::string& flag, const std::string& text) {
  try {
    return F->parse_elem(text);
  } catch (const ParseError& e) {
    throw UsageError(flag + " \"" + text + "\": " + e.what());
  }
}

std::optional<Instance> load_instance(const Options& o) {
  if (o.in.empty()) return std::nullopt;
  return instance_from_json(read_json(o.in, "instance"));
}

std::vector<QSymbol> symbols_from_flags(const Options& o) {
  if (o.field.empty()) throw UsageError("need --in or --field with --a/--b");
  if (o.a.empty() || o.a.size() != o.b.size()) throw UsageError("--a and --b must be given the same number of times");
  FieldPtr F;
  try {
    F = Field::parse(o.field);
  } catch (const ParseError& e) {
    throw UsageError("--field \"" + o.field + "\": " + e.what());
  }
  std::vector<QSymbol> out;
  for (std::size_t i = 0; i < o.a.size(); ++i)
    out.emplace_back(parse_flag_elem(F, "--a", o.a[i]), parse_flag_elem(F, "--b", o.b[i]));
  return out;
}

struct Symbols {
  std::vector<QSymbol> list;
  std::optional<SearchBudget> budget;
};

Symbols load_symbols(const Options& o) {
  if (const auto inst = load_instance(o)) {
    if (const auto* s = std::get_if<QSymbol>(&inst->payload)) return {{*s}, inst->budget};
    if (const auto* q = std::get_if<QuadInstance>(&inst->payload)) return {q->q, inst->budget};
    throw UsageError("instance kind \"" + inst->kind() + "\" does not hold symbols");
  }
  return {symbols_from_flags(o), std::nullopt};
}

QSymbol single_symbol(const Options& o, std::optional<SearchBudget>& budget) {
  Symbols s = load_symbols(o);
  if (s.list.size() != 1) throw UsageError("expected exactly one symbol");
  budget = s.budget;
  return s.list.front();
}

std::vector<PfisterDesc> norm_forms(const std::vector<QSymbol>& qs) {
  std::vector<PfisterDesc> v;
  for (const auto& q : qs) v.push_back(norm_form(q));
  return v;
}

// The quadratic form behind an instance; symbols and tuples give the sum of their norm forms.
QuadForm load_form(const Options& o, std::optional<SearchBudget>& budget) {
  const auto inst = load_instance(o);
  if (!inst) return sigma_S(norm_forms(symbols_from_flags(o)));
  budget = inst->budget;
  return std::visit(
      [](const auto& x) -> QuadForm {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, QuadForm>) return x;
        else if constexpr (std::is_same_v<T, QSymbol>) return expand_pfister(norm_form(x));
        else if constexpr (std::is_same_v<T, LinkedTriple>) return expand_pfister(x.sigma_class());
        else if constexpr (std::is_same_v<T, QuadInstance>) return sigma_S(norm_forms(x.q));
        else return sigma_S(x);
      },
      inst->payload);
}

Json header(const char* command) { return Json{{"schema_version", kSchemaVersion}, {"command", command}}; }

Json cmd_split(const Options& o) {
  std::optional<SearchBudget> ib;
  const QSymbol q = single_symbol(o, ib);
  const SplitResult r = split_test(q, budget_for(o, ib));
  Json j = header("split");
  j["field"] = q.field()->to_string();
  j["symbol"] = to_json(q);
  j["verdict"] = verdict_name(r.verdict);
  if (r.witness) j["witness"] = to_json(*r.witness);
  if (r.cert) j["certificate"] = to_json(*r.cert);
  return j;
}

Json cmd_isomorphic(const Options& o) {
  const Symbols s = load_symbols(o);
  if (s.list.size() != 2) throw UsageError("isomorphic needs two symbols (--a/--b twice)");
  const IsoResult r = is_isomorphic(s.list[0], s.list[1], budget_for(o, s.budget));
  Json j = header("isomorphic");
  j["field"] = s.list[0].field()->to_string();
  j["verdict"] = tri_name(r.verdict);
  if (r.certificate) j["certificate"] = to_json(*r.certificate);
  return j;
}

Json cmd_norm_form(const Options& o) {
  std::optional<SearchBudget> ib;
  const QSymbol q = single_symbol(o, ib);
  const PfisterDesc d = norm_form(q);
  Json j = header("norm-form");
  j["field"] = q.field()->to_string();
  j["pfister"] = to_json(d);
  j["form"] = to_json(expand_pfister(d));
  return j;
}

Json cmd_common_slot(const Options& o) {
  const Symbols s = load_symbols(o);
  const auto r = common_left_slot(s.list, budget_for(o, s.budget));
  Json j = header("common-slot");
  j["field"] = s.list.front().field()->to_string();
  j["verdict"] = r ? "found" : "unknown";
  if (r) {
    j["slot"] = r->s.to_string();
    Json certs = Json::array();
    for (const auto& c : r->certs) certs.push_back(to_json(c));
    j["certificates"] = certs;
  }
  return j;
}

Json cmd_hyperbolic(const Options& o) {
  std::optional<SearchBudget> ib;
  const QuadForm q = load_form(o, ib);
  Json j = header("hyperbolic");
  j["field"] = q.field()->to_string();
  j["form"] = to_json(q);
  j["verdict"] = tri_name(is_hyperbolic(q, budget_for(o, ib)));
  return j;
}

Json cmd_witt(const Options& o) {
  std::optional<SearchBudget> ib;
  const QuadForm q = load_form(o, ib);
  const WittDecomposition w = witt_decompose(q, budget_for(o, ib));
  Json j = header("witt");
  j["field"] = q.field()->to_string();
  j["form"] = to_json(q);
  j["index"] = w.index;
  j["status"] = w.status == WittDecomposition::Status::exact ? "exact" : "lower_bound";
  j["anisotropic_part"] = to_json(w.aniso_part);
  if (w.cert) j["certificate"] = to_json(*w.cert);
  return j;
}

Json cmd_descend(const Options& o, bool triple) {
  const auto inst = load_instance(o);
  if (!inst) throw UsageError("descend needs --in");
  const SearchBudget b = budget_for(o, inst->budget);
  if (triple) {
    const auto* t = std::get_if<LinkedTriple>(&inst->payload);
    if (!t) throw UsageError("descend triple needs a \"triple\" instance, got \"" + inst->kind() + "\"");
    return to_json(triple_descend(*t, b));
  }
  const auto* q = std::get_if<QuadInstance>(&inst->payload);
  if (!q) throw UsageError("descend quad needs a \"quad\" instance, got \"" + inst->kind() + "\"");
  return to_json(quad_descend(*q, b));
}

Json cmd_verify(const Options& o, bool& valid) {
  if (o.report.empty() || o.in.empty()) throw UsageError("verify needs --report and --in");
  const DescentReport r = report_from_json(read_json(o.report, "report"));
  const auto inst = load_instance(o);
  if (const auto* t = std::get_if<LinkedTriple>(&inst->payload))
    valid = r.kind == DescentReport::Kind::Triple && verify_descent(r, *t);
  else if (const auto* q = std::get_if<QuadInstance>(&inst->payload))
    valid = r.kind == DescentReport::Kind::Quad && verify_descent(r, *q);
  else
    throw UsageError("verify needs a \"triple\" or \"quad\" instance");
  Json j = header("verify");
  j["valid"] = valid;
  j["case"] = r.case_tag;
  j["generators"] = r.generators.size();
  return j;
}

Json cmd_fixtures(const Options& o) {
  if (o.kind.empty()) throw UsageError("fixtures needs --kind; one of: " + [] {
    std::string s;
    for (const auto& k : fixture_kinds()) s += (s.empty() ? "" : ", ") + k;
    return s;
  }());
  FixtureParams p;
  p.n = o.n;
  p.m = o.m;
  p.variant = o.variant;
  if (const auto s = env_seed()) p.seed = *s;
  if (o.seed) p.seed = *o.seed;
  try {
    return to_json(make_fixture(o.kind, p));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw UsageError("cannot write " + o.out);
  f << text;
}

void add_input(CLI::App* c, Options& o) {
  c->add_option("--field", o.field, "Field declaration, e.g. \"F2^2(t1,t2)\"");
  c->add_option("--a", o.a, "Left slot; repeat for several symbols");
  c->add_option("--b", o.b, "Right slot; repeat for several symbols");
  c->add_option("--in", o.in, "Instance JSON file");
}

void add_budget(CLI::App* c, Options& o) {
  c->add_option("--budget-degree", o.budget_degree, "Degree bound for search coordinates");
  c->add_option("--budget-trials", o.budget_trials, "Random search trials");
  c->add_option("--seed", o.seed, "Search seed (default: PFISTER_SEED or 1)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app("Quadratic forms, quaternion symbols and descent in characteristic 2", "pfister");
  app.require_subcommand(1);
  app.add_option("--out", o.out, "Write JSON to this file instead of stdout");

  std::vector<CLI::App*> symbol_cmds;
  for (auto [name, help] : std::vector<std::pair<const char*, const char*>>{
           {"split", "Decide whether [a,b) is split"},
           {"isomorphic", "Compare two symbols"},
           {"norm-form", "Norm form <<b; a]] of [a,b)"},
           {"common-slot", "Rewrite symbols to a common left slot"},
           {"hyperbolic", "Is the form (or sum of norm forms) hyperbolic?"},
           {"witt", "Witt decomposition of the form (or sum of norm forms)"}}) {
    CLI::App* c = app.add_subcommand(name, help);
    add_input(c, o);
    add_budget(c, o);
    symbol_cmds.push_back(c);
  }
  CLI::App* descend = app.add_subcommand("descend", "Descend a linked triple or quadruple");
  descend->require_subcommand(1);
  CLI::App* d_triple = descend->add_subcommand("triple", "Triple descent");
  CLI::App* d_quad = descend->add_subcommand("quad", "Quadruple descent");
  for (CLI::App* c : {d_triple, d_quad}) {
    c->add_option("--in", o.in, "Instance JSON file")->required();
    add_budget(c, o);
  }
  CLI::App* verify = app.add_subcommand("verify", "Check a descent report against its instance");
  verify->add_option("--report", o.report, "Report JSON file")->required();
  verify->add_option("--in", o.in, "Instance JSON file")->required();
  CLI::App* fixtures = app.add_subcommand("fixtures", "Write a built-in instance");
  fixtures->add_option("--kind", o.kind, "Fixture kind");
  fixtures->add_option("--n", o.n, "Triple size");
  fixtures->add_option("--m", o.m, "Tuple length for canonical_monomial");
  fixtures->add_option("--variant", o.variant, "hyperbolic_triple variant: sum or norm");
  fixtures->add_option("--seed", o.seed, "Fixture seed (default: PFISTER_SEED or 1)");
  CLI::App* selftest = app.add_subcommand("selftest", "Run the acceptance suite");
  selftest->add_option("--only", o.only, "Criterion ids to run");
  for (CLI::App* c : {descend, verify, fixtures, selftest})
    if (c != descend) c->add_option("--out", o.out, "Write output to this file");
  for (CLI::App* c : symbol_cmds) c->add_option("--out", o.out, "Write JSON to this file");
  for (CLI::App* c : {d_triple, d_quad}) c->add_option("--out", o.out, "Write JSON to this file");

  std::vector<const char*> argv;
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (selftest->parsed()) {
      const auto results = run_acceptance(o.only);
      emit(o, format_results(results), out);
      return all_passed(results) ? kExitOk : kExitVerifyFailed;
    }
    Json result;
    int code = kExitOk;
    if (app.got_subcommand("split")) result = cmd_split(o);
    else if (app.got_subcommand("isomorphic")) result = cmd_isomorphic(o);
    else if (app.got_subcommand("norm-form")) result = cmd_norm_form(o);
    else if (app.got_subcommand("common-slot")) result = cmd_common_slot(o);
    else if (app.got_subcommand("hyperbolic")) result = cmd_hyperbolic(o);
    else if (app.got_subcommand("witt")) result = cmd_witt(o);
    else if (descend->parsed()) result = cmd_descend(o, d_triple->parsed());
    else if (fixtures->parsed()) result = cmd_fixtures(o);
    else if (verify->parsed()) {
      bool valid = false;
      result = cmd_verify(o, valid);
      if (!valid) code = kExitVerifyFailed;
    }
    emit(o, dump(result), out);
    return code;
  } catch (const Json::exception& e) {
    err << "error: malformed JSON: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace pfister
