#include "pfister/json_io.hpp"

#include <initializer_list>

namespace pfister {

namespace {

void expect_keys(const Json& j, std::initializer_list<const char*> required, std::initializer_list<const char*> optional,
                 const char* what) {
  if (!j.is_object()) throw SchemaError(std::string(what) + ": expected an object");
  for (const char* k : required)
    if (!j.contains(k)) throw SchemaError(std::string(what) + ": missing key \"" + k + "\"");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : required) known |= it.key() == k;
    for (const char* k : optional) known |= it.key() == k;
    if (!known) throw SchemaError(std::string(what) + ": unknown key \"" + it.key() + "\"");
  }
}

const Json& array_at(const Json& j, const char* key) {
  const Json& a = j.at(key);
  if (!a.is_array()) throw SchemaError(std::string("\"") + key + "\" must be an array");
  return a;
}

std::string str(const Json& j) {
  if (!j.is_string()) throw SchemaError("expected a string, got " + j.dump());
  return j.get<std::string>();
}

FieldElem elem(const Json& j, const FieldPtr& F) {
  if (!F) throw SchemaError("element " + j.dump() + " has no field");
  return F->parse_elem(str(j));
}

// Empty for certificates with no symbols.
FieldPtr field_at(const Json& j) {
  const std::string decl = str(j.at("field"));
  return decl.empty() ? nullptr : Field::parse(decl);
}

Json elems(const std::vector<FieldElem>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.to_string());
  return a;
}

std::vector<FieldElem> elems_from(const Json& a, const FieldPtr& F) {
  if (!a.is_array()) throw SchemaError("expected an array of elements");
  std::vector<FieldElem> v;
  for (const auto& x : a) v.push_back(elem(x, F));
  return v;
}

Json symbols(const std::vector<QSymbol>& v) {
  Json a = Json::array();
  for (const auto& s : v) a.push_back(to_json(s));
  return a;
}

std::vector<QSymbol> symbols_from(const Json& a, const FieldPtr& F) {
  if (!a.is_array()) throw SchemaError("expected an array of symbols");
  std::vector<QSymbol> v;
  for (const auto& x : a) v.push_back(symbol_from_json(x, F));
  return v;
}

Json move_json(const CertStep& s) {
  Json j;
  j["position"] = s.position;
  j["kind"] = move_kind_name(s.move.kind);
  if (s.move.lambda) j["lambda"] = s.move.lambda->to_string();
  if (s.move.alpha) j["alpha"] = Json::array({s.move.alpha->first.to_string(), s.move.alpha->second.to_string()});
  if (s.move.kind == RewriteMove::Kind::Exchange) j["partner"] = s.move.partner;
  return j;
}

CertStep move_from(const Json& j, const FieldPtr& F) {
  expect_keys(j, {"position", "kind"}, {"lambda", "alpha", "partner"}, "move");
  const auto kind = parse_move_kind(str(j.at("kind")));
  if (!kind) throw SchemaError("move: unknown kind " + j.at("kind").dump());
  RewriteMove m{*kind, std::nullopt, std::nullopt, -1};
  if (j.contains("lambda")) m.lambda = elem(j.at("lambda"), F);
  if (j.contains("alpha")) {
    const Json& a = j.at("alpha");
    if (!a.is_array() || a.size() != 2) throw SchemaError("move: alpha must be a pair");
    m.alpha = std::make_pair(elem(a[0], F), elem(a[1], F));
  }
  if (j.contains("partner")) m.partner = j.at("partner").get<int>();
  return CertStep{j.at("position").get<int>(), std::move(m)};
}

const char* report_kind_name(DescentReport::Kind k) { return k == DescentReport::Kind::Triple ? "triple" : "quad"; }

void check_version(const Json& j) {
  if (j.at("schema_version") != kSchemaVersion)
    throw SchemaError("unsupported schema_version " + j.at("schema_version").dump());
}

}  // namespace

Json to_json(const SearchBudget& b) {
  return Json{{"exhaustive_limit", b.exhaustive_limit},
              {"degree_bound", b.degree_bound},
              {"trials", b.trials},
              {"seed", b.seed},
              {"cert_attempts", b.cert_attempts}};
}

SearchBudget budget_from_json(const Json& j) {
  expect_keys(j, {}, {"exhaustive_limit", "degree_bound", "trials", "seed", "cert_attempts"}, "budget");
  SearchBudget b;
  if (j.contains("exhaustive_limit")) b.exhaustive_limit = j.at("exhaustive_limit").get<std::uint64_t>();
  if (j.contains("degree_bound")) b.degree_bound = j.at("degree_bound").get<int>();
  if (j.contains("trials")) b.trials = j.at("trials").get<int>();
  if (j.contains("seed")) b.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("cert_attempts")) b.cert_attempts = j.at("cert_attempts").get<int>();
  return b;
}

Json to_json(const QuadForm& q) {
  Json blocks = Json::array();
  for (const auto& b : q.blocks())
    blocks.push_back(Json{{"scale", b.scale.to_string()}, {"a", b.block.a.to_string()}, {"b", b.block.b.to_string()}});
  return Json{{"blocks", blocks}};
}

QuadForm form_from_json(const Json& j, const FieldPtr& F) {
  expect_keys(j, {"blocks"}, {}, "form");
  QuadForm q(F);
  for (const auto& b : array_at(j, "blocks")) {
    expect_keys(b, {"scale", "a", "b"}, {}, "block");
    q.add_block(elem(b.at("scale"), F), elem(b.at("a"), F), elem(b.at("b"), F));
  }
  return q;
}

Json to_json(const QSymbol& s) { return Json{{"a", s.a.to_string()}, {"b", s.b.to_string()}}; }

QSymbol symbol_from_json(const Json& j, const FieldPtr& F) {
  expect_keys(j, {"a", "b"}, {}, "symbol");
  return QSymbol(elem(j.at("a"), F), elem(j.at("b"), F));
}

Json to_json(const PfisterDesc& d) { return Json{{"bilinear", elems(d.bilinear)}, {"as_slot", d.as_slot.to_string()}}; }

PfisterDesc desc_from_json(const Json& j, const FieldPtr& F) {
  expect_keys(j, {"bilinear", "as_slot"}, {}, "pfister form");
  return PfisterDesc{elems_from(j.at("bilinear"), F), elem(j.at("as_slot"), F)};
}

Json to_json(const SplitWitness& w) { return Json{{"lambda", w.lambda.to_string()}, {"mu", w.mu.to_string()}}; }

SplitWitness witness_from_json(const Json& j, const FieldPtr& F) {
  expect_keys(j, {"lambda", "mu"}, {}, "split witness");
  return SplitWitness{elem(j.at("lambda"), F), elem(j.at("mu"), F)};
}

Json to_json(const Certificate& c) {
  Json moves = Json::array();
  for (const auto& s : c.moves) moves.push_back(move_json(s));
  const std::string field = c.start.empty() ? std::string() : c.start.front().field()->to_string();
  return Json{{"field", field}, {"start", symbols(c.start)}, {"moves", moves}, {"end", symbols(c.end)}};
}

Certificate certificate_from_json(const Json& j) {
  expect_keys(j, {"field", "start", "moves", "end"}, {}, "certificate");
  const FieldPtr F = field_at(j);
  Certificate c{symbols_from(j.at("start"), F), {}, symbols_from(j.at("end"), F)};
  for (const auto& m : array_at(j, "moves")) c.moves.push_back(move_from(m, F));
  return c;
}

Json to_json(const ProductSplitCert& c) {
  Json ws = Json::array();
  for (const auto& w : c.witnesses) ws.push_back(to_json(w));
  return Json{{"chain", to_json(c.chain)}, {"witnesses", ws}};
}

ProductSplitCert product_split_from_json(const Json& j) {
  expect_keys(j, {"chain", "witnesses"}, {}, "product split certificate");
  ProductSplitCert c{certificate_from_json(j.at("chain")), {}};
  const FieldPtr F = field_at(j.at("chain"));
  for (const auto& w : array_at(j, "witnesses")) c.witnesses.push_back(witness_from_json(w, F));
  return c;
}

Json to_json(const AnisoCert& c) {
  const Field& F = *c.form.field();
  Json j{{"kind", kind_name(c.kind)}, {"field", F.to_string()}, {"form", to_json(c.form)}};
  if (c.place) {
    Json p{{"var", F.var_name(c.place->var)}, {"infinity", c.place->at_infinity}};
    if (!c.place->at_infinity) p["poly"] = F.from_poly(c.place->poly).to_string();
    j["place"] = p;
  }
  if (!c.children.empty()) {
    Json ch = Json::array();
    for (const auto& k : c.children) ch.push_back(to_json(k));
    j["children"] = ch;
  }
  return j;
}

AnisoCert aniso_cert_from_json(const Json& j) {
  expect_keys(j, {"kind", "field", "form"}, {"place", "children"}, "anisotropy certificate");
  const FieldPtr F = field_at(j);
  if (!F) throw SchemaError("anisotropy certificate: empty field");
  AnisoCert c(form_from_json(j.at("form"), F));
  const std::string kind = str(j.at("kind"));
  bool known = false;
  for (auto k : {AnisoCert::Kind::Empty, AnisoCert::Kind::FiniteExhaustive, AnisoCert::Kind::Binary,
                 AnisoCert::Kind::Residue})
    if (kind == kind_name(k)) {
      c.kind = k;
      known = true;
    }
  if (!known) throw SchemaError("anisotropy certificate: unknown kind " + kind);
  if (j.contains("place")) {
    const Json& p = j.at("place");
    expect_keys(p, {"var", "infinity"}, {"poly"}, "place");
    const int var = F->var_index(str(p.at("var")));
    if (var < 0) throw SchemaError("place: unknown variable " + p.at("var").dump());
    if (p.at("infinity").get<bool>()) {
      c.place = infinity_place(*F, var);
    } else {
      if (!p.contains("poly")) throw SchemaError("place: missing key \"poly\"");
      const FieldElem e = elem(p.at("poly"), F);
      if (!e.is_polynomial()) throw SchemaError("place: poly must be a polynomial");
      c.place = poly_place(*F, var, e.num());
    }
  }
  if (j.contains("children"))
    for (const auto& k : array_at(j, "children")) c.children.push_back(aniso_cert_from_json(k));
  return c;
}

Json to_json(const FormCertificate& c) {
  Json steps = Json::array();
  for (const auto& s : c.steps) {
    if (s.kind == FormStep::Kind::ASShift)
      steps.push_back(Json{{"kind", "as_shift"}, {"lambda", s.lambda ? s.lambda->to_string() : std::string()}});
    else
      steps.push_back(Json{{"kind", "scale_by_value"}, {"slot", s.slot}, {"vector", elems(s.vector)}});
  }
  return Json{{"field", c.start.as_slot.field()->to_string()},
              {"start", to_json(c.start)},
              {"steps", steps},
              {"end", to_json(c.end)}};
}

FormCertificate form_certificate_from_json(const Json& j) {
  expect_keys(j, {"field", "start", "steps", "end"}, {}, "form certificate");
  const FieldPtr F = field_at(j);
  FormCertificate c{desc_from_json(j.at("start"), F), {}, desc_from_json(j.at("end"), F)};
  for (const auto& s : array_at(j, "steps")) {
    const std::string kind = str(s.at("kind"));
    if (kind == "as_shift") {
      expect_keys(s, {"kind", "lambda"}, {}, "form step");
      c.steps.push_back(FormStep{FormStep::Kind::ASShift, 0, {}, elem(s.at("lambda"), F)});
    } else if (kind == "scale_by_value") {
      expect_keys(s, {"kind", "slot", "vector"}, {}, "form step");
      c.steps.push_back(
          FormStep{FormStep::Kind::ScaleByValue, s.at("slot").get<int>(), elems_from(s.at("vector"), F), std::nullopt});
    } else {
      throw SchemaError("form step: unknown kind " + kind);
    }
  }
  return c;
}

Json to_json(const DescentReport& r) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = report_kind_name(r.kind);
  j["status"] = status_name(r.status);
  j["case"] = r.case_tag;
  Json gens = Json::array();
  for (std::size_t i = 0; i < r.generators.size(); ++i)
    gens.push_back(Json{{"name", r.generator_names.at(i)}, {"value", r.generators[i].to_string()}});
  if (!r.generators.empty()) j["field"] = r.generators.front().field()->to_string();
  j["generators"] = gens;
  if (r.descended_field) j["descended_field"] = r.descended_field->to_string();
  if (!r.forms.empty()) {
    Json a = Json::array();
    for (const auto& f : r.forms) a.push_back(to_json(f));
    j["forms"] = a;
    Json c = Json::array();
    for (const auto& f : r.form_certs) c.push_back(to_json(f));
    j["form_certificates"] = c;
  }
  if (r.aniso_cert) j["aniso_certificate"] = to_json(*r.aniso_cert);
  if (!r.symbols.empty()) {
    j["symbols"] = symbols(r.symbols);
    Json c = Json::array();
    for (const auto& s : r.symbol_certs) c.push_back(to_json(s));
    j["symbol_certificates"] = c;
  }
  if (r.product_split) j["product_split"] = to_json(*r.product_split);
  if (!r.c_values.empty()) {
    j["c_values"] = elems(r.c_values);
    j["c_values_field"] = r.c_values.front().field()->to_string();
  }
  if (r.c_sum_root) j["c_sum_root"] = r.c_sum_root->to_string();
  if (!r.h_verdicts.empty()) j["h_verdicts"] = r.h_verdicts;
  if (!r.permutation.empty()) j["permutation"] = r.permutation;
  j["notes"] = r.notes;
  return j;
}

DescentReport report_from_json(const Json& j) {
  expect_keys(j, {"schema_version", "kind", "status", "case", "generators", "notes"},
              {"field", "descended_field", "forms", "form_certificates", "aniso_certificate", "symbols",
               "symbol_certificates", "product_split", "c_values", "c_values_field", "c_sum_root", "h_verdicts",
               "permutation"},
              "report");
  check_version(j);
  DescentReport r;
  const std::string kind = str(j.at("kind"));
  if (kind == "triple") r.kind = DescentReport::Kind::Triple;
  else if (kind == "quad") r.kind = DescentReport::Kind::Quad;
  else throw SchemaError("report: unknown kind " + kind);
  const std::string status = str(j.at("status"));
  if (status == "success") r.status = DescentReport::Status::success;
  else if (status == "budget_exhausted") r.status = DescentReport::Status::budget_exhausted;
  else throw SchemaError("report: unknown status " + status);
  r.case_tag = str(j.at("case"));
  const Json& gens = array_at(j, "generators");
  if (!gens.empty()) {
    if (!j.contains("field")) throw SchemaError("report: generators need \"field\"");
    const FieldPtr F = field_at(j);
    for (const auto& g : gens) {
      expect_keys(g, {"name", "value"}, {}, "generator");
      r.generator_names.push_back(str(g.at("name")));
      r.generators.push_back(elem(g.at("value"), F));
    }
  }
  FieldPtr L;
  if (j.contains("descended_field")) r.descended_field = L = Field::parse(str(j.at("descended_field")));
  if (j.contains("forms")) {
    if (!L) throw SchemaError("report: forms need \"descended_field\"");
    for (const auto& f : array_at(j, "forms")) r.forms.push_back(desc_from_json(f, L));
  }
  if (j.contains("form_certificates"))
    for (const auto& c : array_at(j, "form_certificates")) r.form_certs.push_back(form_certificate_from_json(c));
  if (j.contains("aniso_certificate")) r.aniso_cert = aniso_cert_from_json(j.at("aniso_certificate"));
  if (j.contains("symbols")) {
    if (!L) throw SchemaError("report: symbols need \"descended_field\"");
    r.symbols = symbols_from(j.at("symbols"), L);
  }
  if (j.contains("symbol_certificates"))
    for (const auto& c : array_at(j, "symbol_certificates")) r.symbol_certs.push_back(certificate_from_json(c));
  if (j.contains("product_split")) r.product_split = product_split_from_json(j.at("product_split"));
  if (j.contains("c_values")) {
    if (!j.contains("c_values_field")) throw SchemaError("report: c_values need \"c_values_field\"");
    const FieldPtr F = Field::parse(str(j.at("c_values_field")));
    r.c_values = elems_from(j.at("c_values"), F);
    if (j.contains("c_sum_root")) r.c_sum_root = elem(j.at("c_sum_root"), F);
  }
  if (j.contains("h_verdicts")) r.h_verdicts = j.at("h_verdicts").get<std::vector<std::string>>();
  if (j.contains("permutation")) r.permutation = j.at("permutation").get<std::vector<int>>();
  r.notes = j.at("notes").get<std::vector<std::string>>();
  return r;
}

Json to_json(const Instance& inst) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["field"] = inst.field()->to_string();
  j["kind"] = inst.kind();
  Json p = std::visit(
      [](const auto& x) -> Json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, QuadForm>) {
          return to_json(x);
        } else if constexpr (std::is_same_v<T, QSymbol>) {
          return to_json(x);
        } else if constexpr (std::is_same_v<T, LinkedTriple>) {
          return Json{{"slots", elems(x.slots)}, {"b1", x.b1.to_string()}, {"b2", x.b2.to_string()}};
        } else if constexpr (std::is_same_v<T, QuadInstance>) {
          Json q{{"symbols", symbols(x.q)}};
          if (x.split_witness) q["split_witness"] = to_json(*x.split_witness);
          return q;
        } else {
          Json a = Json::array();
          for (const auto& d : x) a.push_back(to_json(d));
          return Json{{"forms", a}};
        }
      },
      inst.payload);
  j["payload"] = p;
  if (inst.budget) j["budget"] = to_json(*inst.budget);
  return j;
}

Instance instance_from_json(const Json& j) {
  expect_keys(j, {"schema_version", "field", "kind", "payload"}, {"budget"}, "instance");
  check_version(j);
  const FieldPtr F = field_at(j);
  const std::string kind = str(j.at("kind"));
  const Json& p = j.at("payload");
  std::optional<SearchBudget> budget;
  if (j.contains("budget")) budget = budget_from_json(j.at("budget"));
  if (kind == "form") return Instance{form_from_json(p, F), budget};
  if (kind == "symbol") return Instance{symbol_from_json(p, F), budget};
  if (kind == "triple") {
    expect_keys(p, {"slots", "b1", "b2"}, {}, "triple");
    return Instance{LinkedTriple(elems_from(p.at("slots"), F), elem(p.at("b1"), F), elem(p.at("b2"), F)), budget};
  }
  if (kind == "quad") {
    expect_keys(p, {"symbols"}, {"split_witness"}, "quad");
    QuadInstance q{symbols_from(p.at("symbols"), F), std::nullopt};
    if (q.q.size() != 4) throw SchemaError("quad: need four symbols");
    if (p.contains("split_witness")) q.split_witness = product_split_from_json(p.at("split_witness"));
    return Instance{std::move(q), budget};
  }
  if (kind == "pfister_tuple") {
    expect_keys(p, {"forms"}, {}, "pfister_tuple");
    std::vector<PfisterDesc> v;
    for (const auto& d : array_at(p, "forms")) v.push_back(desc_from_json(d, F));
    if (v.empty()) throw SchemaError("pfister_tuple: no forms");
    return Instance{std::move(v), budget};
  }
  throw SchemaError("instance: unknown kind " + kind);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace pfister
