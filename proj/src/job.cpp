#include "qlssmash/job.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <numeric>

#include "qlssmash/criteria.hpp"
#include "qlssmash/smash.hpp"

namespace qls {

using nlohmann::json;

namespace {

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string child(const std::string& path, std::size_t index) { return path + "/" + std::to_string(index); }

void require_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError(child(path, key), "unknown key");
  }
}

long get_int(const json& j, const std::string& path, long lo, long hi) {
  if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
  const long v = j.get<long>();
  if (v < lo || v > hi) {
    throw ConfigError(path, "value " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "]");
  }
  return v;
}

const json& member(const json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) throw ConfigError(child(path, key), "missing required key");
  return j.at(key);
}

std::vector<long> int_list(const json& j, const std::string& path, std::size_t length, long lo, long hi) {
  if (!j.is_array()) throw ConfigError(path, "expected an array");
  if (j.size() != length) {
    throw ConfigError(path, "expected " + std::to_string(length) + " entries, got " + std::to_string(j.size()));
  }
  std::vector<long> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(get_int(j[k], child(path, k), lo, hi));
  return out;
}

void collect_conductors(const json& j, const std::string& path, unsigned long& acc) {
  if (j.is_object()) {
    if (j.contains("zeta")) {
      const long n = get_int(j.at("zeta"), child(path, "zeta"), 1, kMaxConductor);
      acc = std::lcm(acc, static_cast<unsigned long>(n));
    }
    for (const auto& [k, v] : j.items()) collect_conductors(v, child(path, k), acc);
  } else if (j.is_array()) {
    for (std::size_t k = 0; k < j.size(); ++k) collect_conductors(j[k], child(path, k), acc);
  }
}

CycNumber at_conductor(const CycNumber& v, unsigned n) {
  return n % v.conductor() == 0 ? v.embed(n) : v;
}

std::string hex(const unsigned char* data, std::size_t len) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  for (std::size_t k = 0; k < len; ++k) {
    out += digits[data[k] >> 4];
    out += digits[data[k] & 15];
  }
  return out;
}

}  // namespace

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("internal", "SHA-256 digest failed");
  }
  return hex(md, len);
}

CycNumber parse_scalar(const json& j, const std::string& path) {
  if (j.is_number_integer()) return CycNumber(j.get<long>());
  if (!j.is_object()) throw ConfigError(path, "malformed scalar (expected integer or object, decimals are not allowed)");
  if (j.contains("zeta")) {
    require_keys(j, path, {"zeta", "pow"});
    const long n = get_int(j.at("zeta"), child(path, "zeta"), 1, kMaxConductor);
    const long k = j.contains("pow") ? get_int(j.at("pow"), child(path, "pow"), -1000000, 1000000) : 1;
    return CycNumber::root_of_unity(n, ((k % n) + n) % n);
  }
  if (j.contains("num")) {
    require_keys(j, path, {"num", "den"});
    const long num = get_int(j.at("num"), child(path, "num"), -1000000000L, 1000000000L);
    const long den = j.contains("den") ? get_int(j.at("den"), child(path, "den"), -1000000000L, 1000000000L) : 1;
    if (den == 0) throw ConfigError(child(path, "den"), "zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return CycNumber(q);
  }
  for (const char* op : {"add", "mul"}) {
    if (!j.contains(op)) continue;
    require_keys(j, path, {op});
    const json& items = j.at(op);
    const std::string p = child(path, op);
    if (!items.is_array()) throw ConfigError(p, "expected an array of scalars");
    CycNumber acc(std::string(op) == "add" ? 0 : 1);
    for (std::size_t k = 0; k < items.size(); ++k) {
      const CycNumber v = parse_scalar(items[k], child(p, k));
      if (std::string(op) == "add") acc += v;
      else acc *= v;
    }
    return acc;
  }
  throw ConfigError(path, "malformed scalar (expected one of zeta, num, add, mul)");
}

JobConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
  require_keys(root, "", {"name", "description", "group", "g", "chi", "taft", "p", "gamma", "x", "ordering",
                          "options", "smash_eval"});
  JobConfig cfg;
  cfg.digest = "sha256:" + sha256_hex(text);

  unsigned long conductor = 1;
  collect_conductors(root, "", conductor);

  auto scalar = [&](const json& j, const std::string& path) {
    try {
      return parse_scalar(j, path);
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      throw ConfigError(path, e.what(), e.code());
    }
  };

  if (root.contains("taft")) {
    if (root.contains("group") || root.contains("g") || root.contains("chi")) {
      throw ConfigError("/taft", "give either taft or group/g/chi, not both");
    }
    const json& t = root.at("taft");
    require_keys(t, "/taft", {"n", "m", "lambda", "alpha"});
    TaftDatum td;
    td.n = static_cast<int>(get_int(member(t, "/taft", "n"), "/taft/n", 1, kMaxConductor));
    td.m = static_cast<int>(get_int(member(t, "/taft", "m"), "/taft/m", 1, kMaxConductor));
    td.lambda = scalar(member(t, "/taft", "lambda"), "/taft/lambda");
    if (t.contains("alpha")) td.alpha = scalar(t.at("alpha"), "/taft/alpha");
    try {
      cfg.datum = td.to_datum();
    } catch (const Error& e) {
      throw ConfigError("/taft", e.what(), e.code());
    }
  } else {
    const json& grp = member(root, "", "group");
    require_keys(grp, "/group", {"factors"});
    const json& f = member(grp, "/group", "factors");
    if (!f.is_array()) throw ConfigError("/group/factors", "expected an array");
    std::vector<int> factors;
    for (std::size_t k = 0; k < f.size(); ++k) {
      factors.push_back(static_cast<int>(get_int(f[k], child("/group/factors", k), 1, kMaxConductor)));
    }
    AbelianGroup G(factors);
    if (G.order() > 4096) throw ConfigError("/group/factors", "group order above 4096", "size_limit");
    cfg.datum.group = G;
    const json& gl = member(root, "", "g");
    const json& cl = member(root, "", "chi");
    if (!gl.is_array()) throw ConfigError("/g", "expected an array of group elements");
    if (!cl.is_array()) throw ConfigError("/chi", "expected an array of characters");
    if (gl.size() != cl.size()) throw ConfigError("/chi", "g and chi must have the same length (the rank)");
    if (gl.size() > 8) throw ConfigError("/g", "rank above 8", "size_limit");
    for (std::size_t i = 0; i < gl.size(); ++i) {
      const auto gp = child("/g", i), cp = child("/chi", i);
      const auto ge = int_list(gl[i], gp, factors.size(), -1000000, 1000000);
      const auto ce = int_list(cl[i], cp, factors.size(), -1000000, 1000000);
      cfg.datum.g.push_back(G.element(ge));
      cfg.datum.chi.push_back(G.character(ce));
    }
  }
  conductor = std::lcm(conductor, static_cast<unsigned long>(cfg.datum.group.exponent()));
  if (conductor > kMaxConductor) {
    throw ConfigError("", "global conductor " + std::to_string(conductor) + " exceeds " +
                              std::to_string(kMaxConductor), "size_limit");
  }
  cfg.conductor = static_cast<unsigned>(conductor);

  const std::size_t theta = cfg.datum.g.size();
  const std::size_t rank = cfg.datum.group.rank();

  if (root.contains("p") || root.contains("gamma") || root.contains("x")) {
    const json& pj = member(root, "", "p");
    if (!pj.is_array() || pj.empty()) throw ConfigError("/p", "expected a non-empty square array");
    const std::size_t n = pj.size();
    if (n > 12) throw ConfigError("/p", "more than 12 variables", "size_limit");
    std::vector<std::vector<CycNumber>> p(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto rp = child("/p", i);
      if (!pj[i].is_array() || pj[i].size() != n) throw ConfigError(rp, "expected a row of " + std::to_string(n));
      for (std::size_t j = 0; j < n; ++j) p[i].push_back(at_conductor(scalar(pj[i][j], child(rp, j)), cfg.conductor));
    }
    ActionSpec spec;
    try {
      spec.p = PMatrix(std::move(p));
    } catch (const Error& e) {
      throw ConfigError("/p", e.what(), e.code());
    }

    if (root.contains("gamma")) {
      const json& gj = root.at("gamma");
      if (!gj.is_array() || gj.size() != rank) {
        throw ConfigError("/gamma", "expected one row per cyclic factor (" + std::to_string(rank) + ")");
      }
      for (std::size_t f = 0; f < rank; ++f) {
        const auto rp = child("/gamma", f);
        if (!gj[f].is_array() || gj[f].size() != n) throw ConfigError(rp, "expected a row of " + std::to_string(n));
        std::vector<CycNumber> row;
        for (std::size_t j = 0; j < n; ++j) {
          CycNumber v = at_conductor(scalar(gj[f][j], child(rp, j)), cfg.conductor);
          if (v.is_zero()) throw ConfigError(child(rp, j), "gamma entries must be nonzero");
          row.push_back(std::move(v));
        }
        spec.gamma.push_back(std::move(row));
      }
    } else {
      spec.gamma.assign(rank, std::vector<CycNumber>(n, CycNumber(1)));
    }

    spec.targets.assign(theta, std::vector<std::optional<SkewTarget>>(n));
    if (root.contains("x")) {
      const json& xj = root.at("x");
      if (!xj.is_array()) throw ConfigError("/x", "expected an array of skew-derivation values");
      for (std::size_t k = 0; k < xj.size(); ++k) {
        const auto tp = child("/x", k);
        require_keys(xj[k], tp, {"i", "j", "c", "beta"});
        if (theta == 0) throw ConfigError(tp, "no skew-primitive generators to act");
        const long i = get_int(member(xj[k], tp, "i"), child(tp, "i"), 1, static_cast<long>(theta));
        const long j = get_int(member(xj[k], tp, "j"), child(tp, "j"), 1, static_cast<long>(n));
        CycNumber c = xj[k].contains("c") ? at_conductor(scalar(xj[k].at("c"), child(tp, "c")), cfg.conductor)
                                          : CycNumber(1);
        const auto beta = int_list(member(xj[k], tp, "beta"), child(tp, "beta"), n, 0, 64);
        auto& slot = spec.targets[i - 1][j - 1];
        if (slot) throw ConfigError(tp, "duplicate value for x" + std::to_string(i) + "(u" + std::to_string(j) + ")");
        slot = SkewTarget{std::move(c), Monomial(beta.begin(), beta.end())};
      }
    }
    cfg.action = std::move(spec);
  }

  if (root.contains("ordering")) {
    const auto o = int_list(root.at("ordering"), "/ordering", theta, 1, static_cast<long>(theta));
    std::vector<std::size_t> ord;
    for (long v : o) ord.push_back(static_cast<std::size_t>(v - 1));
    std::vector<std::size_t> sorted = ord;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k < sorted.size(); ++k) {
      if (sorted[k] != k) throw ConfigError("/ordering", "expected a permutation of 1..theta");
    }
    cfg.ordering = std::move(ord);
  }

  if (root.contains("options")) {
    const json& o = root.at("options");
    require_keys(o, "/options", {"degree_cap", "strict", "size_limit", "validation_degree", "sample_degree",
                                 "samples"});
    if (o.contains("degree_cap")) cfg.options.degree_cap = static_cast<int>(get_int(o.at("degree_cap"), "/options/degree_cap", 0, 64));
    if (o.contains("strict")) {
      if (!o.at("strict").is_boolean()) throw ConfigError("/options/strict", "expected a boolean");
      cfg.options.strict = o.at("strict").get<bool>();
    }
    if (o.contains("size_limit")) cfg.options.size_limit = static_cast<std::size_t>(get_int(o.at("size_limit"), "/options/size_limit", 1, 1 << 20));
    if (o.contains("validation_degree")) cfg.options.validation_degree = static_cast<int>(get_int(o.at("validation_degree"), "/options/validation_degree", 0, 64));
    if (o.contains("sample_degree")) cfg.options.sample_degree = static_cast<int>(get_int(o.at("sample_degree"), "/options/sample_degree", 0, 16));
    if (o.contains("samples")) cfg.options.samples = static_cast<std::size_t>(get_int(o.at("samples"), "/options/samples", 0, 100000));
  }

  if (root.contains("smash_eval")) {
    const json& s = root.at("smash_eval");
    require_keys(s, "/smash_eval", {"lhs", "rhs"});
    if (!cfg.action) throw ConfigError("/smash_eval", "smash products need an action (p, gamma, x)");
    const std::size_t n = cfg.action->p.size();
    auto terms = [&](const char* key) {
      const std::string path = child("/smash_eval", key);
      const json& arr = member(s, "/smash_eval", key);
      if (!arr.is_array()) throw ConfigError(path, "expected an array of terms");
      std::vector<SmashTermSpec> out;
      for (std::size_t k = 0; k < arr.size(); ++k) {
        const auto tp = child(path, k);
        require_keys(arr[k], tp, {"c", "u", "x", "g"});
        SmashTermSpec t;
        t.coeff = arr[k].contains("c") ? at_conductor(scalar(arr[k].at("c"), child(tp, "c")), cfg.conductor)
                                       : CycNumber(1);
        const auto u = arr[k].contains("u") ? int_list(arr[k].at("u"), child(tp, "u"), n, 0, 64)
                                            : std::vector<long>(n, 0);
        const auto x = arr[k].contains("x") ? int_list(arr[k].at("x"), child(tp, "x"), theta, 0, 1024)
                                            : std::vector<long>(theta, 0);
        const auto g = arr[k].contains("g") ? int_list(arr[k].at("g"), child(tp, "g"), rank, -1000000, 1000000)
                                            : std::vector<long>(rank, 0);
        t.u.assign(u.begin(), u.end());
        t.x.assign(x.begin(), x.end());
        t.g = cfg.datum.group.element(g);
        out.push_back(std::move(t));
      }
      return out;
    };
    cfg.smash_lhs = terms("lhs");
    cfg.smash_rhs = terms("rhs");
  }
  return cfg;
}

json Report::to_json() const {
  json j = payload.is_object() ? payload : json::object();
  j["schema"] = schema;
  j["tool"] = tool;
  j["version"] = version;
  j["command"] = command;
  j["input_digest"] = input_digest;
  j["status"] = status;
  j["exit_code"] = exit_code;
  if (error) j["error"] = {{"code", error->code}, {"message", error->message}, {"path", error->path}};
  j["timing"] = {{"wall_ms", wall_ms}};
  return j;
}

Report Report::from_json(const json& j) {
  Report r;
  r.schema = j.at("schema").get<std::string>();
  r.tool = j.at("tool").get<std::string>();
  r.version = j.at("version").get<std::string>();
  r.command = j.at("command").get<std::string>();
  r.input_digest = j.at("input_digest").get<std::string>();
  r.status = j.at("status").get<std::string>();
  r.exit_code = j.at("exit_code").get<int>();
  if (j.contains("error")) {
    const json& e = j.at("error");
    r.error = ReportError{e.at("code").get<std::string>(), e.at("message").get<std::string>(),
                          e.at("path").get<std::string>()};
  }
  r.wall_ms = j.at("timing").at("wall_ms").get<double>();
  r.payload = j;
  for (const char* k : {"schema", "tool", "version", "command", "input_digest", "status", "exit_code", "error",
                        "timing"}) {
    r.payload.erase(k);
  }
  return r;
}

const std::vector<std::string>& job_commands() {
  static const std::vector<std::string> commands = {"validate", "hopf-check", "invariants",
                                                    "semiprime", "prime", "smash-eval"};
  return commands;
}

namespace {

constexpr const char* kScope =
    "Criteria are decided for quantum affine spaces (domains) with diagonal group actions and monomial "
    "skew-derivation values; the general left-annihilator criterion over arbitrary B-stable left ideals "
    "is not implemented.";

json exps_json(const std::vector<int>& e) { return json(e); }

json monomial_json(const Monomial& m) { return {{"exponents", exps_json(m)}, {"text", to_string(m)}}; }

json element_json(const QasElement& e) {
  json terms = json::array();
  for (const auto& [m, c] : e.terms()) terms.push_back({{"c", c.to_string()}, {"u", exps_json(m)}});
  std::string text;
  for (const auto& [m, c] : e.terms()) {
    if (!text.empty()) text += " + ";
    text += c.is_one() ? to_string(m) : "(" + c.to_string() + ")*" + to_string(m);
  }
  return {{"terms", terms}, {"text", text.empty() ? "0" : text}};
}

json cone_json(const InvariantCone& c) {
  json j = {{"kind", c.is_cone() ? "monomial_cone" : "capped_basis"}, {"text", c.to_string()}};
  if (c.is_cone()) {
    json mod = json::array();
    for (const auto& m : c.moduli) mod.push_back(m ? json(*m) : json(nullptr));
    j["moduli"] = mod;
  } else {
    j["degree_cap"] = c.degree_cap;
    j["dimension"] = c.basis.size();
  }
  return j;
}

json step_json(const NonvanishingResult& s) {
  json j = {{"x", s.x + 1}, {"domain", cone_json(s.domain)}, {"value", to_string(s.value)},
            {"certificate", s.certificate}};
  if (s.witness) j["witness"] = element_json(*s.witness);
  return j;
}

json ordering_json(const OrderingResult& r) {
  json ord = json::array();
  for (auto i : r.ordering) ord.push_back(i + 1);
  json steps = json::array();
  for (const auto& s : r.steps) steps.push_back(step_json(s));
  return {{"ordering", ord}, {"value", to_string(r.value)}, {"steps", steps}};
}

json checks_json(const std::vector<IdentityCheck>& checks) {
  json arr = json::array();
  for (const auto& c : checks) {
    json e = {{"name", c.name}, {"passed", c.passed}, {"cases", c.cases}};
    if (!c.passed) e["first_failure"] = c.first_failure;
    arr.push_back(e);
  }
  return arr;
}

json datum_json(const Bosonization& B) {
  const AbelianGroup& G = B.group();
  json q = json::array();
  for (std::size_t i = 0; i < B.rank(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < B.rank(); ++j) row.push_back(B.q(i, j).to_string());
    q.push_back(row);
  }
  return {{"group_factors", G.factor_orders()}, {"group_order", G.order()}, {"rank", B.rank()},
          {"nilpotency_orders", B.nilpotency_orders()}, {"dimension", B.dimension()}, {"q", q}};
}

json validation_json(const ActionValidation& v) {
  json arr = json::array();
  for (const auto& x : v.violations) {
    arr.push_back({{"check", x.check}, {"identity", x.identity}, {"witness", monomial_json(x.witness)}});
  }
  json j = {{"ok", v.ok}, {"degree_verified", v.degree_verified}, {"violations", arr}};
  if (!arr.empty()) j["first_failure"] = arr.front();
  return j;
}

json character_json(const Character& c) { return json(c.exps); }

void decide(const JobConfig& cfg, const ValidatedAction& va, bool prime, Report& r, bool strict) {
  InvariantAnalysis an(va, cfg.options.degree_cap);
  const Verdict v = prime ? an.prime() : an.semiprime();
  json& p = r.payload;
  p["verdict"] = to_string(v.value);
  p["degree_cap"] = v.degree_cap;
  p["reason"] = v.reason;
  p["scope"] = kScope;
  p["ordering_convention"] =
      "chain order: step k checks x_{ordering[k]} on the common kernel of the earlier x's";
  json ord = json::array();
  json wit = json::array();
  if (v.chosen) {
    for (auto i : v.chosen->ordering) ord.push_back(i + 1);
    for (const auto& s : v.chosen->steps) wit.push_back(step_json(s));
  }
  p["ordering"] = ord;
  p["witnesses"] = wit;
  json all = json::array();
  for (const auto& o : v.orderings) all.push_back(ordering_json(o));
  p["orderings"] = all;
  if (prime) {
    const auto& c = *v.coverage;
    json gens = json::array();
    for (std::size_t k = 0; k < c.generators.size(); ++k) {
      gens.push_back({{"element", element_json(c.generators[k])}, {"weight", character_json(c.weights[k])}});
    }
    json ws = json::array();
    for (const auto& [chi, a] : c.witnesses) ws.push_back({{"chi", character_json(chi)}, {"a", element_json(a)}});
    p["coverage_subgroup"] = {{"order", c.subgroup_order}, {"group_order", c.group_order},
                              {"covers_all", c.covers_all}, {"invariants", cone_json(c.invariants)},
                              {"generators", gens}, {"witnesses", ws}};
  } else {
    p["coverage_subgroup"] = nullptr;
  }
  if (v.value == VerdictValue::Unknown) {
    r.status = "unknown";
    r.exit_code = strict ? kExitUnknown : kExitOk;
  }
}

SmashElement smash_from(const SmashProduct& S, const std::vector<SmashTermSpec>& terms) {
  const Bosonization& B = S.module().algebra();
  SmashElement out;
  for (const auto& t : terms) {
    // x^x g as a product of generators, reduced through the algebra
    BElement h = B.one();
    for (std::size_t i = 0; i < t.x.size(); ++i) {
      for (int k = 0; k < t.x[i]; ++k) h = B.multiply(h, B.x(i));
    }
    h = B.multiply(h, B.group_element(t.g));
    out += t.coeff * S.make(QasElement::term(t.u), h);
  }
  return out;
}

json smash_json(const SmashElement& e) {
  json terms = json::array();
  for (const auto& [l, c] : e.terms()) {
    terms.push_back({{"c", c.to_string()}, {"u", exps_json(l.u)}, {"x", exps_json(l.h.x)}, {"g", exps_json(l.h.g.exps)}});
  }
  return {{"terms", terms}, {"text", to_string(e)}};
}

ValidatedAction validated(const JobConfig& cfg, const Bosonization& B, Report& r) {
  if (!cfg.action) throw ConfigError("/p", "this command needs an action (p, gamma, x)");
  ModuleAlgebra M(B, *cfg.action);
  try {
    return ValidatedAction(std::move(M), cfg.options.validation_degree);
  } catch (const ActionRejected& e) {
    r.payload["validation"] = validation_json(e.report());
    throw;
  }
}

void run_command(const std::string& command, const JobConfig& cfg, Report& r, bool strict) {
  Bosonization B = [&] {
    try {
      return Bosonization::create(cfg.datum);
    } catch (const Error& e) {
      throw ConfigError("/chi", e.what(), e.code());
    }
  }();
  r.payload["datum"] = datum_json(B);
  r.status = "ok";
  r.exit_code = kExitOk;

  if (command == "validate") {
    if (cfg.action) {
      const ModuleAlgebra M(B, *cfg.action);
      const ActionValidation v = validate_action(M, cfg.options.validation_degree);
      r.payload["validation"] = validation_json(v);
      if (!v.ok) {
        r.status = "failed";
        r.exit_code = kExitFailed;
      }
    }
    return;
  }

  if (command == "hopf-check") {
    auto checks = verify_bosonization(B, 64, cfg.options.samples);
    bool ok = all_passed(checks);
    r.payload["hopf_checks"] = checks_json(checks);
    if (B.dimension() <= cfg.options.size_limit) {
      const RadicalReport rad = radical_dimension(B, cfg.options.size_limit);
      r.payload["radical"] = {{"algebra_dimension", rad.algebra_dimension},
                              {"radical_dimension", rad.radical_dimension},
                              {"expected_dimension", rad.expected_dimension},
                              {"matches_nilpotent_span", rad.matches_nilpotent_span}};
      ok = ok && rad.radical_dimension == rad.expected_dimension && rad.matches_nilpotent_span;
    } else {
      r.payload["radical"] = {{"skipped", "dim B = " + std::to_string(B.dimension()) + " exceeds size_limit"}};
    }
    if (cfg.action) {
      const ModuleAlgebra M(B, *cfg.action);
      const ActionValidation v = validate_action(M, cfg.options.validation_degree);
      r.payload["validation"] = validation_json(v);
      ok = ok && v.ok;
      if (v.ok) {
        auto smash = verify_smash_identities(M, cfg.options.sample_degree, cfg.options.samples);
        r.payload["smash_checks"] = checks_json(smash);
        r.payload["sample_degree"] = cfg.options.sample_degree;
        ok = ok && all_passed(smash);
      }
    }
    if (!ok) {
      r.status = "failed";
      r.exit_code = kExitFailed;
    }
    return;
  }

  const ValidatedAction va = validated(cfg, B, r);
  r.payload["validation"] = validation_json(va.validation());

  if (command == "invariants") {
    InvariantAnalysis an(va, cfg.options.degree_cap);
    json kernels = json::array();
    for (std::size_t i = 0; i < B.rank(); ++i) {
      json k = {{"x", i + 1}, {"kernel", cone_json(an.kernel_of_x(i))}};
      std::size_t count = 0, j0 = 0;
      for (std::size_t j = 0; j < va.module().num_vars(); ++j) {
        if (cfg.action->targets[i][j]) {
          ++count;
          j0 = j;
        }
      }
      if (count == 1) k["effective_q"] = effective_q(va.module(), i, j0).to_string();
      kernels.push_back(k);
    }
    std::vector<std::size_t> ord(B.rank());
    std::iota(ord.begin(), ord.end(), 0);
    if (cfg.ordering) ord = *cfg.ordering;
    json chain = json::array();
    for (const auto& c : an.invariant_chain(ord)) chain.push_back(cone_json(c));
    json ordj = json::array();
    for (auto i : ord) ordj.push_back(i + 1);
    const InvariantCone rx = an.invariants();
    json weights = json::array();
    if (rx.is_cone()) {
      for (const auto& g : rx.generators()) {
        weights.push_back({{"element", monomial_json(g)}, {"weight", character_json(an.weight(g))}});
      }
    }
    r.payload["kernels"] = kernels;
    r.payload["ordering"] = ordj;
    r.payload["chain"] = chain;
    r.payload["invariants"] = cone_json(rx);
    r.payload["invariant_weights"] = weights;
    r.payload["degree_cap"] = cfg.options.degree_cap;
    return;
  }
  if (command == "semiprime" || command == "prime") {
    decide(cfg, va, command == "prime", r, strict);
    return;
  }
  if (command == "smash-eval") {
    if (!cfg.smash_lhs) throw ConfigError("/smash_eval", "smash-eval needs smash_eval.lhs and smash_eval.rhs");
    const SmashProduct S(va.module());
    const SmashElement a = smash_from(S, *cfg.smash_lhs);
    const SmashElement b = smash_from(S, *cfg.smash_rhs);
    r.payload["lhs"] = smash_json(a);
    r.payload["rhs"] = smash_json(b);
    r.payload["product"] = smash_json(S.multiply(a, b));
    return;
  }
  throw ConfigError("", "unknown command '" + command + "'");
}

}  // namespace

Report run_job(const std::string& command, const std::string& config_text, const std::optional<int>& degree_cap_override,
               bool strict) {
  const auto start = std::chrono::steady_clock::now();
  Report r;
  r.command = command;
  r.input_digest = "sha256:" + sha256_hex(config_text);
  try {
    if (std::find(job_commands().begin(), job_commands().end(), command) == job_commands().end()) {
      throw Error("invalid_input", "unknown command '" + command + "'");
    }
    JobConfig cfg = parse_config(config_text);
    if (degree_cap_override) {
      if (*degree_cap_override < 0 || *degree_cap_override > 64) {
        throw Error("invalid_input", "--degree-cap must be in [0, 64]");
      }
      cfg.options.degree_cap = *degree_cap_override;
    }
    run_command(command, cfg, r, strict || cfg.options.strict);
  } catch (const ConfigError& e) {
    r.status = "invalid_input";
    r.exit_code = kExitInvalid;
    r.error = ReportError{e.code(), e.what(), e.path()};
  } catch (const ActionRejected& e) {
    r.status = "invalid_input";
    r.exit_code = kExitInvalid;
    r.error = ReportError{e.code(), e.what(), "/x"};
  } catch (const Error& e) {
    r.status = "invalid_input";
    r.exit_code = kExitInvalid;
    r.error = ReportError{e.code(), e.what(), ""};
  } catch (const std::exception& e) {
    r.status = "invalid_input";
    r.exit_code = kExitInvalid;
    r.error = ReportError{"internal", e.what(), ""};
  }
  r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace qls
