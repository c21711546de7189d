#include "qlssmash/criteria.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "qlssmash/linalg.hpp"

namespace qls {

namespace {

// Capped kernels stop at the last degree that keeps the monomial count under this.
constexpr std::size_t kCappedMonomialBudget = 1500;

Monomial unit(std::size_t n, std::size_t j, int k = 1) {
  Monomial m(n, 0);
  m[j] = k;
  return m;
}

std::string elem_string(const QasElement& e) {
  if (e.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : e.terms()) {
    if (!first) out << " + ";
    first = false;
    if (c.is_one()) out << to_string(m);
    else out << "(" << c.to_string() << ")*" << to_string(m);
  }
  return out.str();
}

std::string x_name(std::size_t i) { return "x" + std::to_string(i + 1); }

// Kernel of x_i on the span of `monos`, as combinations of those monomials.
std::vector<QasElement> kernel_on(const ModuleAlgebra& M, std::size_t i, const std::vector<Monomial>& monos) {
  std::vector<QasElement> images;
  images.reserve(monos.size());
  std::map<Monomial, std::size_t> rows;
  for (const auto& m : monos) {
    images.push_back(M.act_skew_monomial(i, m));
    for (const auto& [t, c] : images.back().terms()) rows.try_emplace(t, rows.size());
  }
  std::vector<QasElement> out;
  if (rows.empty()) {
    for (const auto& m : monos) out.push_back(QasElement::term(m));
    return out;
  }
  CycMatrix A(rows.size(), monos.size());
  for (std::size_t c = 0; c < monos.size(); ++c) {
    for (const auto& [t, v] : images[c].terms()) A.at(rows.at(t), c) = v;
  }
  for (const auto& v : A.nullspace()) {
    QasElement e;
    for (std::size_t c = 0; c < monos.size(); ++c) e.add(monos[c], v[c]);
    out.push_back(std::move(e));
  }
  return out;
}

// Vectors in span(basis) whose coefficients vanish on every monomial failing `keep`.
template <class Keep>
std::vector<QasElement> restrict_span(const std::vector<QasElement>& basis, Keep keep) {
  std::map<Monomial, std::size_t> rows;
  for (const auto& v : basis) {
    for (const auto& [m, c] : v.terms()) {
      if (!keep(m)) rows.try_emplace(m, rows.size());
    }
  }
  if (rows.empty()) return basis;
  CycMatrix A(rows.size(), basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    for (const auto& [m, c] : basis[k].terms()) {
      auto it = rows.find(m);
      if (it != rows.end()) A.at(it->second, k) = c;
    }
  }
  std::vector<QasElement> out;
  for (const auto& v : A.nullspace()) {
    QasElement e;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (!v[k].is_zero()) e += v[k] * basis[k];
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<QasElement> intersect_spans(const std::vector<QasElement>& U, const std::vector<QasElement>& V) {
  if (U.empty() || V.empty()) return {};
  std::map<Monomial, std::size_t> rows;
  for (const auto* S : {&U, &V}) {
    for (const auto& v : *S) {
      for (const auto& [m, c] : v.terms()) rows.try_emplace(m, rows.size());
    }
  }
  CycMatrix A(rows.size(), U.size() + V.size());
  for (std::size_t k = 0; k < U.size(); ++k) {
    for (const auto& [m, c] : U[k].terms()) A.at(rows.at(m), k) = c;
  }
  for (std::size_t k = 0; k < V.size(); ++k) {
    for (const auto& [m, c] : V[k].terms()) A.at(rows.at(m), U.size() + k) = -c;
  }
  std::vector<QasElement> out;
  for (const auto& v : A.nullspace()) {
    QasElement e;
    for (std::size_t k = 0; k < U.size(); ++k) {
      if (!v[k].is_zero()) e += v[k] * U[k];
    }
    out.push_back(std::move(e));
  }
  return out;
}

int max_degree(const QasElement& e) {
  int d = 0;
  for (const auto& [m, c] : e.terms()) d = std::max(d, degree(m));
  return d;
}

InvariantCone capped(std::vector<QasElement> basis, int cap) {
  std::stable_sort(basis.begin(), basis.end(),
                   [](const QasElement& a, const QasElement& b) { return max_degree(a) < max_degree(b); });
  InvariantCone c;
  c.kind = InvariantCone::Kind::CappedBasis;
  c.degree_cap = cap;
  c.basis = std::move(basis);
  return c;
}

// Monomials of degree <= cap of a cone or of the whole space.
std::vector<Monomial> monomials_up_to(std::size_t n, int cap) {
  std::vector<Monomial> out;
  for (int d = 0; d <= cap; ++d) {
    auto part = monomials_of_degree(n, d);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace

InvariantCone InvariantCone::whole(std::size_t n) {
  InvariantCone c;
  c.moduli.assign(n, 1);
  return c;
}

bool InvariantCone::contains(const Monomial& a) const {
  if (!is_cone()) throw Error("invalid_input", "membership is only defined for monomial cones");
  for (std::size_t j = 0; j < moduli.size(); ++j) {
    if (!moduli[j]) {
      if (a[j] != 0) return false;
    } else if (a[j] % *moduli[j] != 0) {
      return false;
    }
  }
  return true;
}

std::vector<Monomial> InvariantCone::generators() const {
  std::vector<Monomial> out;
  for (std::size_t j = 0; j < moduli.size(); ++j) {
    if (moduli[j]) out.push_back(unit(moduli.size(), j, *moduli[j]));
  }
  return out;
}

std::string InvariantCone::to_string() const {
  std::ostringstream out;
  if (!is_cone()) {
    out << "span of " << basis.size() << " element(s) of degree <= " << degree_cap;
    return out.str();
  }
  std::vector<std::string> gens;
  for (std::size_t j = 0; j < moduli.size(); ++j) {
    if (!moduli[j]) continue;
    std::string g = "u" + std::to_string(j + 1);
    if (*moduli[j] != 1) g += "^" + std::to_string(*moduli[j]);
    gens.push_back(g);
  }
  out << "k";
  if (!gens.empty()) {
    out << "[";
    for (std::size_t k = 0; k < gens.size(); ++k) out << (k ? "," : "") << gens[k];
    out << "]";
  }
  return out.str();
}

InvariantCone intersect(const InvariantCone& a, const InvariantCone& b) {
  if (a.is_cone() && b.is_cone()) {
    InvariantCone c;
    c.moduli.resize(a.moduli.size());
    for (std::size_t j = 0; j < a.moduli.size(); ++j) {
      if (a.moduli[j] && b.moduli[j]) c.moduli[j] = std::lcm(*a.moduli[j], *b.moduli[j]);
    }
    return c;
  }
  if (a.is_cone() || b.is_cone()) {
    const InvariantCone& cone = a.is_cone() ? a : b;
    const InvariantCone& cap = a.is_cone() ? b : a;
    return capped(restrict_span(cap.basis, [&](const Monomial& m) { return cone.contains(m); }), cap.degree_cap);
  }
  const int cap = std::min(a.degree_cap, b.degree_cap);
  auto low = [cap](const Monomial& m) { return degree(m) <= cap; };
  return capped(intersect_spans(restrict_span(a.basis, low), restrict_span(b.basis, low)), cap);
}

std::vector<QasElement> kernel_in_degree(const ModuleAlgebra& M, std::size_t i, int d) {
  return kernel_on(M, i, monomials_of_degree(M.num_vars(), d));
}

std::string to_string(VerdictValue v) {
  switch (v) {
    case VerdictValue::Yes:
      return "Yes";
    case VerdictValue::No:
      return "No";
    case VerdictValue::Unknown:
      break;
  }
  return "Unknown";
}

CycNumber effective_q(const ModuleAlgebra& M, std::size_t i, std::size_t j) {
  const auto& t = M.spec().targets.at(i).at(j);
  if (!t) throw Error("invalid_input", x_name(i) + " has no target on u" + std::to_string(j + 1));
  const std::size_t n = M.num_vars();
  CycNumber w = M.group_scalar(M.algebra().datum().g[i], unit(n, j));
  for (std::size_t l = 0; l < n; ++l) {
    if (t->beta[l]) w *= M.space().p().at(j, l).pow(t->beta[l]);
  }
  return w;
}

InvariantAnalysis::InvariantAnalysis(const ValidatedAction& action, int degree_cap)
    : module_(action.module()), degree_cap_(degree_cap) {
  if (degree_cap < 0) throw Error("invalid_input", "degree cap must be >= 0");
  for (std::size_t i = 0; i < module_.algebra().rank(); ++i) kernels_.push_back(compute_kernel(i));
}

InvariantCone InvariantAnalysis::compute_kernel(std::size_t i) const {
  const std::size_t n = module_.num_vars();
  const auto& row = module_.spec().targets[i];
  std::vector<std::size_t> targets;
  for (std::size_t j = 0; j < n; ++j) {
    if (row[j]) targets.push_back(j);
  }
  if (targets.empty()) return InvariantCone::whole(n);
  if (targets.size() == 1 && row[targets[0]]->beta[targets[0]] == 0) {
    const std::size_t j = targets[0];
    InvariantCone c = InvariantCone::whole(n);
    const CycNumber w = effective_q(module_, i, j);
    if (w.is_one()) {
      c.moduli[j].reset();
    } else if (auto ord = mult_order(w)) {
      c.moduli[j] = static_cast<int>(*ord);
    } else {
      c.moduli[j].reset();
    }
    return c;
  }

  int cap = 0;
  std::size_t count = 1;
  while (cap < degree_cap_) {
    const std::size_t next = monomials_of_degree(n, cap + 1).size();
    if (count + next > kCappedMonomialBudget) break;
    count += next;
    ++cap;
  }
  int shift = -1;
  bool homogeneous = true;
  for (std::size_t j : targets) {
    const int s = degree(row[j]->beta);
    if (shift >= 0 && s != shift) homogeneous = false;
    shift = s;
  }
  std::vector<QasElement> basis;
  if (homogeneous) {
    for (int d = 0; d <= cap; ++d) {
      auto part = kernel_in_degree(module_, i, d);
      basis.insert(basis.end(), part.begin(), part.end());
    }
  } else {
    basis = kernel_on(module_, i, monomials_up_to(n, cap));
  }
  return capped(std::move(basis), cap);
}

const InvariantCone& InvariantAnalysis::kernel_of_x(std::size_t i) const {
  if (i >= kernels_.size()) throw Error("invalid_input", "x index out of range");
  return kernels_[i];
}

std::vector<InvariantCone> InvariantAnalysis::invariant_chain(const std::vector<std::size_t>& ordering) const {
  std::vector<InvariantCone> chain;
  InvariantCone r = InvariantCone::whole(module_.num_vars());
  for (std::size_t i : ordering) {
    r = intersect(r, kernel_of_x(i));
    chain.push_back(r);
  }
  return chain;
}

InvariantCone InvariantAnalysis::invariants() const {
  std::vector<std::size_t> all(kernels_.size());
  std::iota(all.begin(), all.end(), 0);
  if (all.empty()) return InvariantCone::whole(module_.num_vars());
  return invariant_chain(all).back();
}

NonvanishingResult InvariantAnalysis::nonvanishing_witness(std::size_t i, const InvariantCone& domain) const {
  NonvanishingResult r;
  r.x = i;
  r.domain = domain;
  if (domain.is_cone()) {
    // x_i is a twisted derivation and g_i preserves the cone, so x_i vanishes
    // on the cone iff it kills every algebra generator.
    for (const auto& g : domain.generators()) {
      const QasElement v = module_.act_skew_monomial(i, g);
      if (!v.is_zero()) {
        r.value = VerdictValue::Yes;
        r.witness = QasElement::term(g);
        r.certificate = x_name(i) + "(" + to_string(g) + ") = " + elem_string(v) + " != 0";
        return r;
      }
    }
    r.value = VerdictValue::No;
    r.certificate = "cone " + domain.to_string() + " ⊆ ker " + x_name(i);
    return r;
  }
  for (const auto& b : domain.basis) {
    const QasElement v = module_.act_skew(i, b);
    if (!v.is_zero()) {
      r.value = VerdictValue::Yes;
      r.witness = b;
      r.certificate = x_name(i) + "(" + elem_string(b) + ") = " + elem_string(v) + " != 0";
      return r;
    }
  }
  r.value = VerdictValue::Unknown;
  r.certificate = "no witness among elements of degree <= " + std::to_string(domain.degree_cap);
  return r;
}

OrderingResult InvariantAnalysis::check_ordering(const std::vector<std::size_t>& ordering) const {
  OrderingResult out;
  out.ordering = ordering;
  InvariantCone r = InvariantCone::whole(module_.num_vars());
  bool all_yes = true;
  for (std::size_t i : ordering) {
    out.steps.push_back(nonvanishing_witness(i, r));
    const VerdictValue v = out.steps.back().value;
    if (v == VerdictValue::No) {
      out.value = VerdictValue::No;
      return out;
    }
    if (v != VerdictValue::Yes) all_yes = false;
    r = intersect(r, kernel_of_x(i));
  }
  out.value = all_yes ? VerdictValue::Yes : VerdictValue::Unknown;
  return out;
}

Verdict InvariantAnalysis::semiprime() const {
  const std::size_t theta = kernels_.size();
  if (theta > kMaxDeciderRank) {
    throw Error("size_limit", "ordering search supports rank <= " + std::to_string(kMaxDeciderRank));
  }
  Verdict v;
  v.degree_cap = degree_cap_;
  // Permutations are enumerated in lexicographic order of the reversed chain,
  // so the reversed identity ordering (x_theta on R first) comes first.
  std::vector<std::size_t> perm(theta);
  std::iota(perm.begin(), perm.end(), 0);
  bool all_refuted = true;
  do {
    std::vector<std::size_t> chain(perm.rbegin(), perm.rend());
    OrderingResult r = check_ordering(chain);
    if (r.value != VerdictValue::No) all_refuted = false;
    if (r.value == VerdictValue::Yes && !v.chosen) v.chosen = r;
    v.orderings.push_back(std::move(r));
  } while (std::next_permutation(perm.begin(), perm.end()));

  if (v.chosen) {
    v.value = VerdictValue::Yes;
    v.reason = theta == 0 ? "no skew-primitive generators; the conditions are vacuous"
                          : "some ordering has every nonvanishing condition witnessed";
  } else if (all_refuted) {
    v.value = VerdictValue::No;
    v.chosen = v.orderings.front();
    v.reason = "every ordering has a nonvanishing condition refuted by cone inclusion";
  } else {
    v.value = VerdictValue::Unknown;
    for (const auto& r : v.orderings) {
      if (r.value == VerdictValue::Unknown) {
        v.chosen = r;
        break;
      }
    }
    v.reason = "no ordering decided within degree cap " + std::to_string(degree_cap_);
  }
  return v;
}

CoverageCertificate InvariantAnalysis::coverage(const InvariantCone& rx) const {
  const AbelianGroup& G = module_.algebra().group();
  const auto& A = module_.space();
  CoverageCertificate cert;
  cert.invariants = rx;
  cert.group_order = static_cast<std::size_t>(G.order());

  std::vector<QasElement> candidates;
  if (rx.is_cone()) {
    for (const auto& g : rx.generators()) candidates.push_back(QasElement::term(g));
  } else {
    // R^x is G-stable, so the weight components of its elements lie in R^x.
    for (const auto& b : rx.basis) {
      std::map<Character, QasElement> parts;
      for (const auto& [m, c] : b.terms()) parts[module_.weight(m)].add(m, c);
      for (auto& [w, e] : parts) candidates.push_back(std::move(e));
    }
  }

  GeneratedSubgroup sub = subgroup_generated(G, {});
  for (const auto& cand : candidates) {
    const Character w = module_.weight(cand.terms().begin()->first);
    if (std::find(sub.elements.begin(), sub.elements.end(), w) != sub.elements.end()) continue;
    cert.generators.push_back(cand);
    cert.weights.push_back(w);
    sub = subgroup_generated(G, cert.weights);
    if (sub.covers_all) break;
  }
  cert.subgroup_order = sub.order();
  cert.covers_all = sub.covers_all;

  std::vector<std::size_t> idx(sub.elements.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return sub.elements[a] < sub.elements[b]; });
  for (std::size_t k : idx) {
    const Character chi = char_inverse(G, sub.elements[k]);
    QasElement a = A.one();
    for (std::size_t j = 0; j < cert.generators.size(); ++j) {
      for (int e = 0; e < sub.words[k][j]; ++e) a = A.multiply(a, cert.generators[j]);
    }
    // weight(a) = sub.elements[k] = chi^{-1}, so g(a) = chi(g^{-1}) a
    cert.witnesses.emplace_back(chi, std::move(a));
  }
  std::sort(cert.witnesses.begin(), cert.witnesses.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return cert;
}

Verdict InvariantAnalysis::prime() const {
  Verdict v = semiprime();
  CoverageCertificate cov = coverage(invariants());
  const bool exact_coverage = cov.invariants.is_cone();
  const bool covers = cov.covers_all;
  v.coverage = std::move(cov);
  if (v.value == VerdictValue::No) {
    v.reason = "the nonvanishing chain fails for every ordering (not semiprime)";
  } else if (!covers && exact_coverage) {
    v.value = VerdictValue::No;
    v.reason = "the weights of R^x generate a proper subgroup of the character group";
  } else if (v.value == VerdictValue::Yes && covers) {
    v.reason = "a nonvanishing chain exists and the weights of R^x cover the character group";
  } else {
    v.value = VerdictValue::Unknown;
    v.reason = covers ? "no ordering decided within degree cap " + std::to_string(degree_cap_)
                      : "weights of R^x up to degree " + std::to_string(v.coverage->invariants.degree_cap) +
                            " do not cover the character group";
  }
  return v;
}

QasElement t_chi_evaluate(const ModuleAlgebra& M, const Character& chi, const QasElement& a) {
  const Bosonization& B = M.algebra();
  const AbelianGroup& G = B.group();
  G.require(chi);
  QasElement r = a;
  for (std::size_t i = B.rank(); i-- > 0;) {
    for (int k = 0; k + 1 < B.nilpotency_orders()[i] && !r.is_zero(); ++k) r = M.act_skew(i, r);
  }
  QasElement out;
  for (const auto& g : G.elements()) out += char_eval(G, chi, g) * M.act_group(g, r);
  return out * CycNumber(Rational(1, G.order()));
}

Verdict semiprime_decide(const ValidatedAction& action, int degree_cap) {
  return InvariantAnalysis(action, degree_cap).semiprime();
}

Verdict prime_decide(const ValidatedAction& action, int degree_cap) {
  return InvariantAnalysis(action, degree_cap).prime();
}

}  // namespace qls
