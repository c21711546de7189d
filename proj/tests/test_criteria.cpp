#include <doctest.h>

#include <random>
#include <set>

#include "support.hpp"

using namespace qls;
using qls::test::load_module;
using qls::test::load_validated;
using qls::test::u;
using qls::test::zeta;

namespace {

std::optional<int> inf() { return std::nullopt; }

InvariantCone cone(std::vector<std::optional<int>> moduli) {
  InvariantCone c;
  c.moduli = std::move(moduli);
  return c;
}

std::vector<Monomial> up_to(std::size_t n, int d) {
  std::vector<Monomial> out;
  for (int k = 0; k <= d; ++k) {
    for (auto& m : monomials_of_degree(n, k)) out.push_back(m);
  }
  return out;
}

// Z2 acting on k_p[u1,u2,u3] with p23 = -1, g = diag(1,-1,-1), x(u2) = x(u3) = u1.
// The kernel of x contains u2 + u3, which is not a monomial.
ModuleAlgebra two_target() {
  const AbelianGroup G({2});
  Bosonization B = Bosonization::create({G, {G.element({1})}, {G.character({1})}});
  const CycNumber m1(-1);
  ActionSpec spec;
  spec.p = PMatrix(std::vector<std::vector<CycNumber>>{{1, 1, 1}, {1, 1, m1}, {1, m1, 1}});
  spec.gamma = {{1, m1, m1}};
  spec.targets = {{std::nullopt, SkewTarget{1, {1, 0, 0}}, SkewTarget{1, {1, 0, 0}}}};
  return ModuleAlgebra(std::move(B), std::move(spec));
}

// Independent degreewise kernel dimension: for single-target x_i every
// monomial maps to a multiple of one monomial, so the kernel is spanned by the
// killed monomials whenever the nonzero images are pairwise distinct.
std::optional<std::size_t> monomial_kernel_dim(const ModuleAlgebra& M, std::size_t i, int d) {
  std::set<Monomial> images;
  std::size_t killed = 0;
  for (const auto& a : monomials_of_degree(M.num_vars(), d)) {
    const QasElement v = M.act_skew_monomial(i, a);
    if (v.is_zero()) {
      ++killed;
      continue;
    }
    if (v.size() != 1 || !images.insert(v.terms().begin()->first).second) return std::nullopt;
  }
  return killed;
}

std::vector<std::size_t> iota(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = k;
  return v;
}

}  // namespace

TEST_SUITE("criteria") {
  TEST_CASE("cone basics") {
    const InvariantCone c = cone({1, 3, inf()});
    CHECK(c.to_string() == "k[u1,u2^3]");
    CHECK(c.contains({5, 3, 0}));
    CHECK_FALSE(c.contains({0, 1, 0}));
    CHECK_FALSE(c.contains({0, 0, 1}));
    CHECK(c.generators() == std::vector<Monomial>{{1, 0, 0}, {0, 3, 0}});
    CHECK(intersect(cone({2, 3, 1}), cone({3, inf(), 1})) == cone({6, inf(), 1}));
    CHECK(InvariantCone::whole(2) == cone({1, 1}));
  }

  TEST_CASE("kernel_of_x examples") {
    const InvariantAnalysis nsp(load_validated("not_semiprime_n3"));
    CHECK(nsp.kernel_of_x(0) == cone({1, 3}));
    CHECK(nsp.kernel_of_x(1) == cone({1, 3}));
    CHECK(nsp.kernel_of_x(0).to_string() == "k[u1,u2^3]");

    const InvariantAnalysis sp(load_validated("semiprime_n3"));
    CHECK(sp.kernel_of_x(1) == cone({1, 1, 3}));
    CHECK(sp.kernel_of_x(0) == cone({1, 3, 1}));
    const InvariantAnalysis sp5(load_validated("semiprime_n5"));
    CHECK(sp5.kernel_of_x(1) == cone({1, 1, 5}));

    const InvariantAnalysis fin(load_validated("prime_4var"));
    CHECK(fin.kernel_of_x(0) == cone({1, 1, 3, 1}));
    CHECK(fin.kernel_of_x(1) == cone({1, 1, 1, 3}));
  }

  TEST_CASE("invariant chain examples") {
    const InvariantAnalysis sp(load_validated("semiprime_n3"));
    const auto chain = sp.invariant_chain({1, 0});
    REQUIRE(chain.size() == 2);
    CHECK(chain[0] == cone({1, 1, 3}));
    CHECK(chain[1] == cone({1, 3, 3}));
    CHECK(sp.invariants() == cone({1, 3, 3}));

    const InvariantAnalysis sw(load_validated("sweedler"));
    CHECK(sw.invariant_chain({0}) == std::vector<InvariantCone>{sw.kernel_of_x(0)});

    const InvariantAnalysis nsp(load_validated("not_semiprime_n3"));
    CHECK(nsp.invariants() == cone({1, 3}));
  }

  TEST_CASE("closed-form cones equal the degreewise kernels up to degree 8") {
    for (const auto& name : qls::test::valid_examples()) {
      const ValidatedAction va = load_validated(name);
      const InvariantAnalysis an(va);
      const ModuleAlgebra& M = va.module();
      for (std::size_t i = 0; i < M.algebra().rank(); ++i) {
        const InvariantCone& k = an.kernel_of_x(i);
        REQUIRE(k.is_cone());
        for (int d = 0; d <= 8; ++d) {
          std::size_t in_cone = 0;
          for (const auto& a : monomials_of_degree(M.num_vars(), d)) {
            if (!k.contains(a)) continue;
            ++in_cone;
            CHECK(M.act_skew_monomial(i, a).is_zero());
          }
          const auto basis = kernel_in_degree(M, i, d);
          INFO(name << " x" << i + 1 << " degree " << d);
          CHECK(basis.size() == in_cone);
          for (const auto& b : basis) CHECK(M.act_skew(i, b).is_zero());
          const auto oracle = monomial_kernel_dim(M, i, d);
          REQUIRE(oracle.has_value());
          CHECK(*oracle == in_cone);
        }
      }
    }
  }

  TEST_CASE("nonvanishing examples") {
    const InvariantAnalysis sp(load_validated("semiprime_n3"));
    const auto r = sp.nonvanishing_witness(0, sp.kernel_of_x(1));
    CHECK(r.value == VerdictValue::Yes);
    CHECK(*r.witness == u({0, 1, 0}));

    const InvariantAnalysis nsp(load_validated("not_semiprime_n3"));
    const auto n = nsp.nonvanishing_witness(0, nsp.kernel_of_x(1));
    CHECK(n.value == VerdictValue::No);
    CHECK(n.certificate == "cone k[u1,u2^3] ⊆ ker x1");

    const auto constants = sp.nonvanishing_witness(0, cone({inf(), inf(), inf()}));
    CHECK(constants.value == VerdictValue::No);
  }

  TEST_CASE("verdict examples") {
    const Verdict nsp = semiprime_decide(load_validated("not_semiprime_n3"));
    CHECK(nsp.value == VerdictValue::No);
    REQUIRE(nsp.chosen);
    CHECK(nsp.chosen->ordering == std::vector<std::size_t>{1, 0});
    CHECK(nsp.chosen->steps.back().certificate == "cone k[u1,u2^3] ⊆ ker x1");
    CHECK(prime_decide(load_validated("not_semiprime_n3")).value == VerdictValue::No);

    for (const char* name : {"semiprime_n3", "semiprime_n5"}) {
      const Verdict sp = semiprime_decide(load_validated(name));
      CHECK(sp.value == VerdictValue::Yes);
      REQUIRE(sp.chosen);
      CHECK(sp.chosen->ordering == std::vector<std::size_t>{1, 0});
      CHECK(*sp.chosen->steps[0].witness == u({0, 0, 1}));
      CHECK(*sp.chosen->steps[1].witness == u({0, 1, 0}));
    }

    const Verdict spnp = prime_decide(load_validated("semiprime_not_prime_n3"));
    CHECK(spnp.value == VerdictValue::No);
    REQUIRE(spnp.coverage);
    CHECK(spnp.coverage->subgroup_order == 3);
    CHECK(spnp.coverage->group_order == 9);

    const Verdict fin = prime_decide(load_validated("prime_4var"));
    CHECK(fin.value == VerdictValue::Yes);
    REQUIRE(fin.coverage);
    CHECK(fin.coverage->covers_all);
    CHECK(fin.coverage->generators == std::vector<QasElement>{u({1, 0, 0, 0}), u({0, 1, 0, 0})});

    CHECK(semiprime_decide(load_validated("group_only")).value == VerdictValue::Yes);
  }

  TEST_CASE("certificate replay") {
    std::mt19937 rng(3);
    for (const auto& name : qls::test::valid_examples()) {
      const ValidatedAction va = load_validated(name);
      const ModuleAlgebra& M = va.module();
      const Verdict v = semiprime_decide(va);
      for (const auto& ord : v.orderings) {
        for (const auto& step : ord.steps) {
          if (step.value == VerdictValue::Yes) {
            REQUIRE(step.witness);
            CHECK_FALSE(M.act_skew(step.x, *step.witness).is_zero());
            for (const auto& [m, c] : step.witness->terms()) CHECK(step.domain.contains(m));
          } else if (step.value == VerdictValue::No) {
            REQUIRE(step.domain.is_cone());
            for (const auto& g : step.domain.generators()) CHECK(M.act_skew_monomial(step.x, g).is_zero());
            // random cone monomials of degree <= 8
            std::vector<Monomial> members;
            for (const auto& a : up_to(M.num_vars(), 8)) {
              if (step.domain.contains(a)) members.push_back(a);
            }
            REQUIRE_FALSE(members.empty());
            std::uniform_int_distribution<std::size_t> pick(0, members.size() - 1);
            for (int s = 0; s < 20; ++s) CHECK(M.act_skew_monomial(step.x, members[pick(rng)]).is_zero());
          }
        }
      }
    }
  }

  TEST_CASE("x-bar image meets the invariant cone when semiprime") {
    for (const auto& name : qls::test::valid_examples()) {
      const ValidatedAction va = load_validated(name);
      const ModuleAlgebra& M = va.module();
      const Bosonization& B = M.algebra();
      if (semiprime_decide(va).value != VerdictValue::Yes || B.rank() == 0) continue;
      const InvariantCone rx = InvariantAnalysis(va).invariants();
      const BLabel xbar = B.x_bar().terms().begin()->first;
      bool found = false;
      for (const auto& a : up_to(M.num_vars(), 8)) {
        const QasElement v = M.act_basis(xbar, QasElement::term(a));
        if (v.is_zero()) continue;
        for (const auto& [m, c] : v.terms()) {
          CHECK(rx.contains(m));
          for (std::size_t i = 0; i < B.rank(); ++i) CHECK(M.act_skew_monomial(i, m).is_zero());
        }
        found = true;
        break;
      }
      INFO(name);
      CHECK(found);
    }
  }

  TEST_CASE("rank one: x^{m-1}(R) is nonzero and lies in the kernel cone") {
    const ValidatedAction va = load_validated("sweedler");
    const ModuleAlgebra& M = va.module();
    const InvariantAnalysis an(va);
    const int m = M.algebra().nilpotency_orders()[0];
    bool found = false;
    for (const auto& a : up_to(M.num_vars(), 4)) {
      QasElement v = QasElement::term(a);
      for (int k = 0; k < m - 1; ++k) v = M.act_skew(0, v);
      if (v.is_zero()) continue;
      found = true;
      for (const auto& [mono, c] : v.terms()) CHECK(an.kernel_of_x(0).contains(mono));
    }
    CHECK(found);
  }

  TEST_CASE("prime implies semiprime on every bundled config") {
    for (const auto& name : qls::test::valid_examples()) {
      const ValidatedAction va = load_validated(name);
      if (prime_decide(va).value == VerdictValue::Yes) CHECK(semiprime_decide(va).value == VerdictValue::Yes);
    }
  }

  TEST_CASE("coverage subgroup does not depend on the chain ordering") {
    for (const char* name : {"semiprime_not_prime_n3", "prime_4var", "not_semiprime_n3"}) {
      const ValidatedAction va = load_validated(name);
      const InvariantAnalysis an(va);
      const AbelianGroup& G = va.module().algebra().group();
      const Verdict v = an.prime();
      REQUIRE(v.coverage);
      auto order = iota(va.module().algebra().rank());
      do {
        const InvariantCone rx = an.invariant_chain(order).back();
        CHECK(rx == an.invariants());
        std::vector<Character> ws;
        for (const auto& g : rx.generators()) ws.push_back(char_inverse(G, va.module().weight(g)));
        CHECK(subgroup_generated(G, ws).order() == v.coverage->subgroup_order);
      } while (std::next_permutation(order.begin(), order.end()));
    }
  }

  TEST_CASE("coverage witnesses realize their characters") {
    for (const char* name : {"semiprime_not_prime_n3", "prime_4var"}) {
      const ValidatedAction va = load_validated(name);
      const ModuleAlgebra& M = va.module();
      const AbelianGroup& G = M.algebra().group();
      const Verdict v = prime_decide(va);
      REQUIRE(v.coverage);
      CHECK(v.coverage->witnesses.size() == v.coverage->subgroup_order);
      for (const auto& [chi, a] : v.coverage->witnesses) {
        CHECK_FALSE(a.is_zero());
        for (const auto& [m, c] : a.terms()) CHECK(v.coverage->invariants.contains(m));
        for (const auto& g : G.elements()) CHECK(M.act_group(g, a) == char_eval(G, chi, G.inverse(g)) * a);
      }
    }
  }

  TEST_CASE("t_chi evaluation") {
    const ModuleAlgebra S = load_module("sweedler");
    const AbelianGroup& G = S.algebra().group();
    const Character nontrivial = G.character({1});
    CHECK(t_chi_evaluate(S, nontrivial, u({0, 1})) == u({1, 0}));
    CHECK(t_chi_evaluate(S, G.trivial_character(), u({0, 1})).is_zero());
    for (const auto& chi : G.characters()) CHECK(t_chi_evaluate(S, chi, S.space().one()).is_zero());

    // A monomial r with xbar(r) of weight psi has t_chi(r) != 0 iff psi = chi^{-1}.
    for (const char* name : {"semiprime_n3", "prime_4var"}) {
      const ModuleAlgebra M = load_module(name);
      const AbelianGroup& H = M.algebra().group();
      const BLabel xbar = M.algebra().x_bar().terms().begin()->first;
      int nonzero = 0;
      for (const auto& a : up_to(M.num_vars(), 5)) {
        const QasElement v = M.act_basis(xbar, QasElement::term(a));
        if (v.is_zero()) continue;
        ++nonzero;
        const Character psi = M.weight(v.terms().begin()->first);
        for (const auto& chi : H.characters()) {
          CHECK(t_chi_evaluate(M, chi, QasElement::term(a)).is_zero() != (psi == char_inverse(H, chi)));
        }
      }
      CHECK(nonzero > 0);
    }
  }

  TEST_CASE("multi-target kernel is a capped basis") {
    const ModuleAlgebra M = two_target();
    const auto val = validate_action(M);
    REQUIRE(val.ok);
    const ValidatedAction va(M);
    const InvariantAnalysis an(va, 6);
    const InvariantCone& k = an.kernel_of_x(0);
    CHECK_FALSE(k.is_cone());
    CHECK(k.degree_cap == 6);
    bool has_sum = false;
    for (const auto& b : k.basis) {
      CHECK(M.act_skew(0, b).is_zero());
      has_sum |= b.size() == 2 && b.coeff({0, 1, 0}) == -b.coeff({0, 0, 1}) && !b.coeff({0, 1, 0}).is_zero();
    }
    CHECK(has_sum);
    // dimension per degree against kernel_in_degree
    std::size_t total = 0;
    for (int d = 0; d <= 6; ++d) total += kernel_in_degree(M, 0, d).size();
    CHECK(k.basis.size() == total);

    const Verdict sp = an.semiprime();
    CHECK(sp.value == VerdictValue::Yes);
    const Verdict pr = an.prime();
    REQUIRE(pr.coverage);
    CHECK(pr.coverage->covers_all);
    CHECK(pr.value == VerdictValue::Yes);
  }

  TEST_CASE("rank limit") {
    const AbelianGroup G({2});
    QlsDatum d{G, {}, {}};
    for (int k = 0; k < 7; ++k) {
      d.g.push_back(G.element({1}));
      d.chi.push_back(G.character({1}));
    }
    ActionSpec spec;
    spec.p = PMatrix(std::vector<std::vector<CycNumber>>{{1}});
    spec.gamma = {{1}};
    spec.targets.assign(7, {std::nullopt});
    const ValidatedAction va(ModuleAlgebra(Bosonization::create(d), spec), 2);
    try {
      (void)semiprime_decide(va);
      FAIL("no throw");
    } catch (const Error& e) {
      CHECK(e.code() == "size_limit");
    }
  }
}
