#include "qlssmash/smash.hpp"

#include <random>
#include <sstream>

#include "qlssmash/criteria.hpp"

namespace qls {

std::string to_string(const SmashLabel& label) { return to_string(label.u) + "#" + to_string(label.h); }

std::string to_string(const SmashElement& e) {
  if (e.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [l, c] : e.terms()) {
    out << (first ? "" : " + ") << "(" << c.to_string() << ")*" << to_string(l);
    first = false;
  }
  return out.str();
}

SmashElement SmashProduct::one() const {
  return SmashElement::term({Monomial(module_.num_vars(), 0), module_.algebra().one().terms().begin()->first});
}

SmashElement SmashProduct::from_algebra(const QasElement& r) const { return make(r, module_.algebra().one()); }

SmashElement SmashProduct::from_hopf(const BElement& h) const { return make(module_.space().one(), h); }

SmashElement SmashProduct::make(const QasElement& r, const BElement& h) const {
  SmashElement out;
  for (const auto& [u, c] : r.terms()) {
    for (const auto& [l, d] : h.terms()) out.add(SmashLabel{u, l}, c * d);
  }
  return out;
}

SmashElement SmashProduct::multiply_basis(const SmashLabel& a, const SmashLabel& b) const {
  const Bosonization& B = module_.algebra();
  const auto& A = module_.space();
  SmashElement out;
  const QasElement r = QasElement::term(a.u);
  const QasElement rp = QasElement::term(b.u);
  const BTensor delta = B.comultiply_basis(a.h);
  for (const auto& [pair, c] : delta.terms()) {
    const auto hh = B.multiply_basis(pair.second, b.h);
    if (!hh) continue;
    const QasElement acted = module_.act_basis(pair.first, rp);
    if (acted.is_zero()) continue;
    const CycNumber s = c * CycNumber::root_of_unity(B.exponent(), hh->scalar_exp);
    const QasElement prod = A.multiply(r, acted);
    for (const auto& [u, d] : prod.terms()) out.add(SmashLabel{u, hh->label}, s * d);
  }
  return out;
}

SmashElement SmashProduct::multiply(const SmashElement& a, const SmashElement& b) const {
  SmashElement out;
  for (const auto& [la, ca] : a.terms()) {
    for (const auto& [lb, cb] : b.terms()) out += (ca * cb) * multiply_basis(la, lb);
  }
  return out;
}

SmashElement SmashProduct::pi_chi(const Character& chi, const SmashElement& a) const {
  const AbelianGroup& G = module_.algebra().group();
  G.require(chi);
  SmashElement out;
  for (const auto& [l, c] : a.terms()) out.add(l, c * char_eval(G, chi, l.h.g));
  return out;
}

namespace {

std::vector<Monomial> monomials_up_to(std::size_t n, int cap) {
  std::vector<Monomial> out;
  for (int d = 0; d <= cap; ++d) {
    auto part = monomials_of_degree(n, d);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace

std::vector<IdentityCheck> verify_smash_identities(const ModuleAlgebra& M, int sample_degree, std::size_t samples,
                                                   unsigned long seed) {
  const SmashProduct S(M);
  const Bosonization& B = M.algebra();
  const AbelianGroup& G = B.group();
  const auto& A = M.space();
  const auto monos = monomials_up_to(M.num_vars(), sample_degree);
  const auto basis = B.basis();
  const auto chars = G.characters();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick_mono(0, monos.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_basis(0, basis.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_char(0, chars.size() - 1);
  auto random_label = [&] { return SmashLabel{monos[pick_mono(rng)], basis[pick_basis(rng)]}; };

  std::vector<IdentityCheck> checks;
  const SmashElement t0 = S.from_hopf(B.t_chi(G.trivial_character()));

  {
    IdentityCheck c{"t_chi_absorption"};
    for (const auto& chi : chars) {
      const SmashElement tchi = S.from_hopf(B.t_chi(chi));
      for (const auto& m : monos) {
        ++c.cases;
        const QasElement r = QasElement::term(m);
        const SmashElement lhs = S.multiply(S.multiply(tchi, S.from_algebra(r)), t0);
        const SmashElement rhs = S.multiply(S.from_algebra(t_chi_evaluate(M, chi, r)), t0);
        if (!(lhs == rhs)) c.fail("t_chi r t_0 != t_chi(r) t_0 for chi=" + to_string(chi) + " r=" + to_string(m));
      }
    }
    checks.push_back(std::move(c));
  }

  {
    IdentityCheck c{"commutation"};
    for (const auto& m : monos) {
      const QasElement r = QasElement::term(m);
      const SmashElement rs = S.from_algebra(r);
      for (const auto& g : G.elements()) {
        ++c.cases;
        const SmashElement lhs = S.multiply(S.from_hopf(B.group_element(g)), rs);
        const SmashElement rhs = S.make(M.act_group(g, r), B.group_element(g));
        if (!(lhs == rhs)) c.fail("g r != g(r) g for g=" + to_string(g) + " r=" + to_string(m));
      }
      for (std::size_t i = 0; i < B.rank(); ++i) {
        ++c.cases;
        const SmashElement lhs = S.multiply(S.from_hopf(B.x(i)), rs);
        const SmashElement rhs =
            S.make(M.act_group(B.datum().g[i], r), B.x(i)) + S.from_algebra(M.act_skew(i, r));
        if (!(lhs == rhs)) {
          c.fail("x_i r != g_i(r) x_i + x_i(r) for i=" + std::to_string(i + 1) + " r=" + to_string(m));
        }
      }
    }
    checks.push_back(std::move(c));
  }

  {
    IdentityCheck c{"pi_chi_multiplicative"};
    for (std::size_t s = 0; s < samples; ++s) {
      ++c.cases;
      const auto chi = chars[pick_char(rng)];
      const SmashElement a = SmashElement::term(random_label());
      const SmashElement b = SmashElement::term(random_label());
      const SmashElement lhs = S.pi_chi(chi, S.multiply(a, b));
      const SmashElement rhs = S.multiply(S.pi_chi(chi, a), S.pi_chi(chi, b));
      if (!(lhs == rhs)) {
        c.fail("pi_chi(ab) != pi_chi(a) pi_chi(b) for chi=" + to_string(chi) + " a=" + to_string(a) +
               " b=" + to_string(b));
      }
    }
    checks.push_back(std::move(c));
  }

  {
    IdentityCheck c{"associativity"};
    for (std::size_t s = 0; s < samples; ++s) {
      ++c.cases;
      const SmashElement a = SmashElement::term(random_label());
      const SmashElement b = SmashElement::term(random_label());
      const SmashElement d = SmashElement::term(random_label());
      if (!(S.multiply(S.multiply(a, b), d) == S.multiply(a, S.multiply(b, d)))) {
        c.fail("(ab)c != a(bc) for a=" + to_string(a) + " b=" + to_string(b) + " c=" + to_string(d));
      }
    }
    checks.push_back(std::move(c));
  }

  {
    IdentityCheck c{"embeddings"};
    const auto low = monomials_up_to(M.num_vars(), std::min(sample_degree, 2));
    for (const auto& p : low) {
      for (const auto& q : low) {
        ++c.cases;
        const QasElement r = QasElement::term(p), s = QasElement::term(q);
        if (!(S.multiply(S.from_algebra(r), S.from_algebra(s)) == S.from_algebra(A.multiply(r, s)))) {
          c.fail("r -> r#1 not multiplicative on " + to_string(p) + ", " + to_string(q));
        }
      }
    }
    std::vector<BElement> gens;
    for (std::size_t f = 0; f < G.rank(); ++f) gens.push_back(B.group_element(G.generator(f)));
    for (std::size_t i = 0; i < B.rank(); ++i) gens.push_back(B.x(i));
    for (const auto& a : gens) {
      for (const auto& b : gens) {
        ++c.cases;
        if (!(S.multiply(S.from_hopf(a), S.from_hopf(b)) == S.from_hopf(B.multiply(a, b)))) {
          c.fail("b -> 1#b not multiplicative on generators");
        }
      }
    }
    checks.push_back(std::move(c));
  }

  {
    IdentityCheck c{"left_integral_absorption"};
    std::vector<BElement> hs;
    for (const auto& g : G.elements()) hs.push_back(B.group_element(g));
    for (std::size_t i = 0; i < B.rank(); ++i) hs.push_back(B.x(i));
    for (const auto& m : monos) {
      const QasElement r = QasElement::term(m);
      const SmashElement rt0 = S.multiply(S.from_algebra(r), t0);
      for (const auto& h : hs) {
        ++c.cases;
        const SmashElement lhs = S.multiply(S.from_hopf(h), rt0);
        const SmashElement rhs = S.multiply(S.from_algebra(M.act(h, r)), t0);
        if (!(lhs == rhs)) c.fail("h r t_0 != h(r) t_0 for r=" + to_string(m));
      }
    }
    checks.push_back(std::move(c));
  }
  return checks;
}

}  // namespace qls
