// Acceptance run: one PASS/FAIL line per criterion, with wall time against its
// limit. Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include "qlssmash/smash.hpp"
#include "support.hpp"

using namespace qls;
using qls::test::load_validated;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail << "failed: " << what << "; ";
    ok = ok && cond;
  }
};

QasElement mono(std::initializer_list<int> e) { return QasElement::term(Monomial(e)); }

InvariantCone cone(std::vector<std::optional<int>> m) {
  InvariantCone c;
  c.moduli = std::move(m);
  return c;
}

void not_semiprime(Outcome& o) {
  const Verdict v = semiprime_decide(load_validated("not_semiprime_n3"));
  o.require(v.value == VerdictValue::No, "verdict No");
  o.require(v.chosen && v.chosen->steps.back().certificate == "cone k[u1,u2^3] ⊆ ker x1", "certificate");
  if (v.chosen) o.detail << "verdict " << to_string(v.value) << ", " << v.chosen->steps.back().certificate;
}

void semiprime(Outcome& o) {
  for (int n : {3, 5}) {
    const Verdict v = semiprime_decide(load_validated("semiprime_n" + std::to_string(n)));
    o.require(v.value == VerdictValue::Yes, "verdict Yes for n=" + std::to_string(n));
    if (!v.chosen || v.chosen->steps.size() != 2) {
      o.require(false, "two-step chain");
      continue;
    }
    const auto& s0 = v.chosen->steps[0];
    const auto& s1 = v.chosen->steps[1];
    o.require(s0.x == 1 && s0.domain == InvariantCone::whole(3) && s0.witness == mono({0, 0, 1}), "x2 witness u3 on A");
    o.require(s1.x == 0 && s1.domain == cone({1, 1, n}) && s1.witness == mono({0, 1, 0}),
              "x1 witness u2 on k[u1,u2,u3^n]");
    o.detail << "n=" << n << ": " << to_string(v.value) << " (x2: u3 on A, x1: u2 on " << s1.domain.to_string()
             << ") ";
  }
}

void semiprime_not_prime(Outcome& o) {
  const Verdict v = prime_decide(load_validated("semiprime_not_prime_n3"));
  o.require(v.value == VerdictValue::No, "verdict No");
  o.require(v.coverage && v.coverage->subgroup_order == 3 && v.coverage->group_order == 9, "coverage 3 of 9");
  if (v.coverage) {
    o.detail << "verdict " << to_string(v.value) << ", coverage " << v.coverage->subgroup_order << " of "
             << v.coverage->group_order;
  }
}

void prime(Outcome& o) {
  const ValidatedAction va = load_validated("prime_4var");
  const Verdict v = prime_decide(va);
  o.require(v.value == VerdictValue::Yes, "verdict Yes");
  o.require(v.coverage && v.coverage->covers_all, "coverage of the character group");
  o.require(v.coverage && v.coverage->generators == std::vector<QasElement>{mono({1, 0, 0, 0}), mono({0, 1, 0, 0})},
            "generated by the weights of u1 and u2");
  if (v.coverage) {
    const AbelianGroup& G = va.module().algebra().group();
    std::vector<Character> w;
    for (const auto& g : v.coverage->generators) w.push_back(va.module().weight(g.terms().begin()->first));
    o.require(subgroup_generated(G, w).covers_all, "replayed coverage");
    o.detail << "verdict " << to_string(v.value) << ", coverage " << v.coverage->subgroup_order << " of "
             << v.coverage->group_order << " from weights of u1, u2";
  }
}

// Every datum over G with rank <= 2, with (g_1, chi_1) <= (g_2, chi_2) to skip
// relabelings.
std::vector<QlsDatum> all_data(const AbelianGroup& G) {
  std::vector<std::pair<GroupElement, Character>> pairs;
  for (const auto& g : G.elements()) {
    for (const auto& chi : G.characters()) {
      if (!char_eval(G, chi, g).is_one()) pairs.emplace_back(g, chi);
    }
  }
  std::vector<QlsDatum> out;
  out.push_back({G, {}, {}});
  for (const auto& [g, chi] : pairs) out.push_back({G, {g}, {chi}});
  for (std::size_t a = 0; a < pairs.size(); ++a) {
    for (std::size_t b = a; b < pairs.size(); ++b) {
      const auto& [g1, c1] = pairs[a];
      const auto& [g2, c2] = pairs[b];
      if (!(char_eval(G, c2, g1) * char_eval(G, c1, g2)).is_one()) continue;
      out.push_back({G, {g1, g2}, {c1, c2}});
    }
  }
  return out;
}

void idempotents(Outcome& o) {
  std::size_t data = 0;
  for (const auto& f : std::vector<std::vector<int>>{{2}, {3}, {2, 2}, {3, 3}}) {
    const AbelianGroup G(f);
    const auto chars = G.characters();
    for (const auto& d : all_data(G)) {
      ++data;
      const Bosonization B = Bosonization::create(d);
      std::vector<BElement> e;
      BElement sum;
      for (const auto& chi : chars) {
        e.push_back(B.e_chi(chi));
        sum += e.back();
      }
      o.require(sum == B.one(), "sum of e_chi is 1");
      for (std::size_t a = 0; a < chars.size(); ++a) {
        for (std::size_t b = 0; b < chars.size(); ++b) {
          o.require(B.multiply(e[a], e[b]) == (a == b ? e[a] : BElement()), "e_chi e_psi = delta e_chi");
        }
        for (const auto& h : G.elements()) {
          o.require(B.multiply(B.group_element(h), e[a]) == char_eval(G, chars[a], G.inverse(h)) * e[a],
                    "h e_chi = chi(h^-1) e_chi");
        }
        for (std::size_t i = 0; i < B.rank(); ++i) {
          o.require(B.multiply(e[a], B.x(i)) == B.multiply(B.x(i), B.e_chi(char_product(G, chars[a], d.chi[i]))),
                    "e_chi x_i = x_i e_{chi chi_i}");
        }
      }
      const BElement t0 = B.t_chi(G.trivial_character());
      for (const auto& b : B.basis()) {
        const BElement be = BElement::term(b);
        o.require(B.multiply(be, t0) == B.counit(be) * t0, "b t_0 = eps(b) t_0");
      }
    }
  }
  o.detail << data << " data over Z2, Z3, Z2xZ2, Z3xZ3 with rank <= 2";
}

void radical(Outcome& o) {
  const AbelianGroup Z2({2}), Z3({3});
  const std::vector<std::pair<std::string, QlsDatum>> cases = {
      {"Sweedler", {Z2, {Z2.element({1})}, {Z2.character({1})}}},
      {"Taft 3", TaftDatum{3, 3, CycNumber::root_of_unity(3, 1), CycNumber(0)}.to_datum()},
      {"Z3xZ3 rank 2", qls::test::load_config("prime_4var").datum},
  };
  const std::vector<std::size_t> expect = {2, 6, 72};
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const RadicalReport r = radical_dimension(Bosonization::create(cases[k].second));
    o.require(r.radical_dimension == expect[k] && r.expected_dimension == expect[k], cases[k].first);
    o.require(r.matches_nilpotent_span, cases[k].first + " radical is the x-span");
    o.detail << cases[k].first << ": " << r.radical_dimension << " ";
  }
}

void smash_identities(Outcome& o) {
  for (const char* name : {"semiprime_n3", "sweedler"}) {
    const auto checks = verify_smash_identities(load_validated(name).module(), 3, 200);
    for (const auto& c : checks) {
      o.require(c.passed, std::string(name) + " " + c.name + ": " + c.first_failure);
      if (c.name == "t_chi_absorption" || c.name == "pi_chi_multiplicative") {
        o.detail << name << " " << c.name << " " << c.cases << " cases; ";
      }
    }
  }
}

std::vector<std::string> bundled() {
  std::vector<std::string> names;
  for (const auto& e : std::filesystem::directory_iterator(std::string(QLS_DATA_DIR) + "/examples")) {
    if (e.path().extension() == ".json") names.push_back(e.path().stem().string());
  }
  std::sort(names.begin(), names.end());
  return names;
}

// Bundled configs that carry a valid action; configs without an action or with
// an invalid one have no kernels to compare.
std::vector<std::pair<std::string, ValidatedAction>> bundled_actions(std::size_t& skipped) {
  std::vector<std::pair<std::string, ValidatedAction>> out;
  for (const auto& name : bundled()) {
    const JobConfig cfg = qls::test::load_config(name);
    if (!cfg.action) {
      ++skipped;
      continue;
    }
    ModuleAlgebra M(Bosonization::create(cfg.datum), *cfg.action);
    if (!validate_action(M).ok) {
      ++skipped;
      continue;
    }
    out.emplace_back(name, ValidatedAction(std::move(M)));
  }
  return out;
}

void cones(Outcome& o) {
  std::size_t skipped = 0, kernels = 0;
  for (const auto& [name, va] : bundled_actions(skipped)) {
    const InvariantAnalysis an(va);
    const ModuleAlgebra& M = va.module();
    for (std::size_t i = 0; i < M.algebra().rank(); ++i) {
      ++kernels;
      const InvariantCone& k = an.kernel_of_x(i);
      o.require(k.is_cone(), name + " closed form");
      for (int d = 0; d <= 8 && k.is_cone(); ++d) {
        std::size_t in_cone = 0;
        for (const auto& a : monomials_of_degree(M.num_vars(), d)) {
          if (!k.contains(a)) continue;
          ++in_cone;
          o.require(M.act_skew_monomial(i, a).is_zero(), name + " cone monomial killed");
        }
        o.require(kernel_in_degree(M, i, d).size() == in_cone, name + " kernel dimension in degree " + std::to_string(d));
      }
    }
  }
  o.detail << kernels << " kernels compared in degrees 0..8 (" << skipped << " configs without a valid action)";
}

void consistency(Outcome& o) {
  std::size_t skipped = 0, specs = 0, primes = 0;
  for (const auto& [name, va] : bundled_actions(skipped)) {
    ++specs;
    if (prime_decide(va).value == VerdictValue::Yes) {
      ++primes;
      o.require(semiprime_decide(va).value == VerdictValue::Yes, name + " prime implies semiprime");
    }
  }
  std::size_t groups = 0;
  for (const auto& f : std::vector<std::vector<int>>{{}, {2}, {3}, {4}, {2, 2}, {5}, {6}, {7}, {8}, {2, 4},
                                                      {2, 2, 2}, {9}, {3, 3}, {10}, {11}, {12}, {2, 6},
                                                      {13}, {14}, {15}, {16}, {2, 8}, {4, 4}, {2, 2, 4},
                                                      {2, 2, 2, 2}}) {
    const AbelianGroup G(f);
    ++groups;
    for (const auto& chi : G.characters()) {
      for (const auto& psi : G.characters()) {
        const bool inverse = char_product(G, chi, psi) == G.trivial_character();
        o.require(char_sum(G, chi, psi) == (inverse ? 1 : 0), "orthogonality");
      }
    }
  }
  o.detail << primes << " prime of " << specs << " specs, all semiprime; orthogonality on " << groups
           << " groups of order <= 16";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "not semiprime, n = 3", 5, not_semiprime},
      {2, "semiprime, n = 3 and n = 5", 5, semiprime},
      {3, "semiprime but not prime, n = 3", 5, semiprime_not_prime},
      {4, "prime, four variables", 10, prime},
      {5, "idempotent and integral suite", 30, idempotents},
      {6, "radical dimensions", 60, radical},
      {7, "smash identity suite", 60, smash_identities},
      {8, "kernel cones against degreewise kernels", 60, cones},
      {9, "prime implies semiprime, character orthogonality", 60, consistency},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = s < c.limit_s;
    const bool pass = o.ok && in_time;
    if (!pass) ++failed;
    std::printf("%s criterion %d: %s [%.2f s, limit %.0f s] %s%s\n", pass ? "PASS" : "FAIL", c.id, c.name, s,
                c.limit_s, o.detail.str().c_str(), in_time ? "" : " (over time limit)");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
