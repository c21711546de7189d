#include "qlssmash/hopf.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>
#include <tuple>

#include "qlssmash/error.hpp"
#include "qlssmash/linalg.hpp"

namespace qls {

struct Bosonization::Impl {
  QlsDatum datum;
  std::vector<int> m;
  long L = 1;
  std::vector<std::vector<long>> qexp;  // q_ij = zeta_L^qexp[i][j]
  std::vector<CycNumber> zeta;          // zeta_L^k

  mutable std::mutex cache_mutex;
  mutable std::map<std::vector<int>, BTensor> coproducts;

  const CycNumber& z(long k) const {
    k %= L;
    if (k < 0) k += L;
    return zeta[static_cast<std::size_t>(k)];
  }
};

namespace {

long mod(long a, long n) {
  long r = a % n;
  return r < 0 ? r + n : r;
}

}  // namespace

QlsDatum TaftDatum::to_datum() const {
  if (n < 1 || m < 1 || n % m != 0) {
    throw Error("invalid_input", "generalized Taft datum requires m | n");
  }
  if (!alpha.is_zero()) {
    throw Error("unsupported", "generalized Taft algebras with alpha != 0 are stored but not supported "
                               "by the arithmetic (x^m = 0 is assumed)");
  }
  const auto c = root_exponent(lambda, n);
  if (!c) throw Error("invalid_input", "Taft lambda must be an n-th root of unity");
  const auto ord = mult_order(lambda);
  if (!ord || *ord != m) throw Error("invalid_input", "Taft lambda must be a primitive m-th root of unity");
  AbelianGroup G({n});
  return QlsDatum{G, {G.element({1})}, {G.character({*c})}};
}

Bosonization Bosonization::create(QlsDatum datum) {
  if (datum.g.size() != datum.chi.size()) {
    throw Error("invalid_input", "g and chi lists must have the same length (the rank)");
  }
  const AbelianGroup& G = datum.group;
  for (const auto& g : datum.g) G.require(g);
  for (const auto& c : datum.chi) G.require(c);

  auto impl = std::make_shared<Impl>();
  impl->L = G.exponent();
  impl->zeta.reserve(static_cast<std::size_t>(impl->L));
  for (long k = 0; k < impl->L; ++k) impl->zeta.push_back(CycNumber::root_of_unity(impl->L, k));

  const std::size_t theta = datum.g.size();
  impl->qexp.assign(theta, std::vector<long>(theta, 0));
  for (std::size_t i = 0; i < theta; ++i) {
    for (std::size_t j = 0; j < theta; ++j) {
      impl->qexp[i][j] = char_eval_exponent(G, datum.chi[j], datum.g[i]);
    }
  }
  for (std::size_t i = 0; i < theta; ++i) {
    const long e = impl->qexp[i][i];
    const long order = impl->L / std::gcd(impl->L, e == 0 ? impl->L : e);
    if (e == 0 || order < 2) {
      throw Error("order_one", "chi_" + std::to_string(i + 1) + "(g_" + std::to_string(i + 1) +
                                   ") = 1, but m_i = ord(chi_i(g_i)) must be >= 2 (index " +
                                   std::to_string(i + 1) + ")");
    }
    impl->m.push_back(static_cast<int>(order));
  }
  for (std::size_t i = 0; i < theta; ++i) {
    for (std::size_t j = i + 1; j < theta; ++j) {
      if ((impl->qexp[i][j] + impl->qexp[j][i]) % impl->L != 0) {
        throw Error("braiding_mismatch", "chi_" + std::to_string(j + 1) + "(g_" + std::to_string(i + 1) + ") chi_" +
                                             std::to_string(i + 1) + "(g_" + std::to_string(j + 1) +
                                             ") != 1, so x_i x_j would vanish (indices " + std::to_string(i + 1) +
                                             "," + std::to_string(j + 1) + ")");
      }
    }
  }
  impl->datum = std::move(datum);
  return Bosonization(std::move(impl));
}

const QlsDatum& Bosonization::datum() const { return impl_->datum; }
const AbelianGroup& Bosonization::group() const { return impl_->datum.group; }
std::size_t Bosonization::rank() const { return impl_->m.size(); }
const std::vector<int>& Bosonization::nilpotency_orders() const { return impl_->m; }
long Bosonization::exponent() const { return impl_->L; }

CycNumber Bosonization::q(std::size_t i, std::size_t j) const { return impl_->z(impl_->qexp.at(i).at(j)); }
CycNumber Bosonization::lambda(std::size_t i) const { return q(i, i); }

std::size_t Bosonization::dimension() const {
  std::size_t d = static_cast<std::size_t>(group().order());
  for (int mi : impl_->m) d *= static_cast<std::size_t>(mi);
  return d;
}

std::vector<BLabel> Bosonization::basis() const {
  std::vector<BLabel> out;
  const auto elems = group().elements();
  std::vector<int> alpha(rank(), 0);
  while (true) {
    for (const auto& g : elems) out.push_back({alpha, g});
    std::size_t i = rank();
    while (i-- > 0) {
      if (++alpha[i] < impl_->m[i]) break;
      alpha[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

BElement Bosonization::one() const { return BElement::term({std::vector<int>(rank(), 0), group().identity()}); }

BElement Bosonization::group_element(const GroupElement& g) const {
  group().require(g);
  return BElement::term({std::vector<int>(rank(), 0), g});
}

BElement Bosonization::x(std::size_t i) const {
  if (i >= rank()) throw Error("invalid_input", "x index out of range");
  std::vector<int> alpha(rank(), 0);
  alpha[i] = 1;
  return BElement::term({alpha, group().identity()});
}

BElement Bosonization::x_bar() const {
  std::vector<int> alpha(rank());
  for (std::size_t i = 0; i < rank(); ++i) alpha[i] = impl_->m[i] - 1;
  return BElement::term({alpha, group().identity()});
}

std::optional<BasisProduct> Bosonization::multiply_basis(const BLabel& a, const BLabel& b) const {
  const std::size_t theta = rank();
  const AbelianGroup& G = group();
  long s = 0;
  std::vector<int> alpha(theta);
  for (std::size_t i = 0; i < theta; ++i) {
    alpha[i] = a.x[i] + b.x[i];
    if (alpha[i] >= impl_->m[i]) return std::nullopt;
    // g x_i = chi_i(g) x_i g
    if (b.x[i]) s += b.x[i] * char_eval_exponent(G, impl_->datum.chi[i], a.g);
  }
  // x_i^{a_i} x_j^{b_j} = q_ij^{a_i b_j} x_j^{b_j} x_i^{a_i} for i > j
  for (std::size_t i = 0; i < theta; ++i) {
    if (!a.x[i]) continue;
    for (std::size_t j = 0; j < i; ++j) {
      if (b.x[j]) s += static_cast<long>(a.x[i]) * b.x[j] * impl_->qexp[i][j];
    }
  }
  return BasisProduct{mod(s, impl_->L), {std::move(alpha), G.multiply(a.g, b.g)}};
}

BElement Bosonization::multiply(const BElement& a, const BElement& b) const {
  BElement out;
  for (const auto& [la, ca] : a.terms()) {
    for (const auto& [lb, cb] : b.terms()) {
      auto p = multiply_basis(la, lb);
      if (!p) continue;
      out.add(std::move(p->label), ca * cb * impl_->z(p->scalar_exp));
    }
  }
  return out;
}

BTensor Bosonization::tensor_multiply(const BTensor& a, const BTensor& b) const {
  BTensor out;
  for (const auto& [la, ca] : a.terms()) {
    for (const auto& [lb, cb] : b.terms()) {
      auto left = multiply_basis(la.first, lb.first);
      if (!left) continue;
      auto right = multiply_basis(la.second, lb.second);
      if (!right) continue;
      out.add({std::move(left->label), std::move(right->label)},
              ca * cb * impl_->z(left->scalar_exp + right->scalar_exp));
    }
  }
  return out;
}

const BTensor& Bosonization::comultiply_x(const std::vector<int>& alpha) const {
  {
    std::lock_guard lock(impl_->cache_mutex);
    if (auto it = impl_->coproducts.find(alpha); it != impl_->coproducts.end()) return it->second;
  }
  const GroupElement e = group().identity();
  const std::vector<int> zero(rank(), 0);
  BTensor result = BTensor::term({{zero, e}, {zero, e}});
  for (std::size_t i = 0; i < rank(); ++i) {
    std::vector<int> xi = zero;
    xi[i] = 1;
    // Delta(x_i) = g_i (x) x_i + x_i (x) 1
    BTensor dxi = BTensor::term({{zero, impl_->datum.g[i]}, {xi, e}});
    dxi.add({{xi, e}, {zero, e}}, CycNumber(1));
    for (int k = 0; k < alpha.at(i); ++k) result = tensor_multiply(result, dxi);
  }
  std::lock_guard lock(impl_->cache_mutex);
  return impl_->coproducts.try_emplace(alpha, std::move(result)).first->second;
}

BTensor Bosonization::comultiply_basis(const BLabel& label) const {
  const AbelianGroup& G = group();
  BTensor out;
  for (const auto& [pair, c] : comultiply_x(label.x).terms()) {
    BLabel left = pair.first;
    BLabel right = pair.second;
    left.g = G.multiply(left.g, label.g);
    right.g = G.multiply(right.g, label.g);
    out.add({std::move(left), std::move(right)}, c);
  }
  return out;
}

BTensor Bosonization::comultiply(const BElement& a) const {
  BTensor out;
  for (const auto& [l, c] : a.terms()) out += c * comultiply_basis(l);
  return out;
}

CycNumber Bosonization::counit(const BElement& a) const {
  CycNumber total;
  for (const auto& [l, c] : a.terms()) {
    bool grouplike = true;
    for (int e : l.x) grouplike = grouplike && e == 0;
    if (grouplike) total += c;
  }
  return total;
}

BElement Bosonization::e_chi(const Character& chi) const {
  const AbelianGroup& G = group();
  G.require(chi);
  const CycNumber inv_order = CycNumber(Rational(1, G.order()));
  BElement out;
  const std::vector<int> zero(rank(), 0);
  for (const auto& g : G.elements()) {
    out.add({zero, g}, impl_->z(char_eval_exponent(G, chi, g)) * inv_order);
  }
  return out;
}

BElement Bosonization::t_chi(const Character& chi) const { return multiply(e_chi(chi), x_bar()); }

BElement Bosonization::pi_chi(const Character& chi, const BElement& a) const {
  const AbelianGroup& G = group();
  G.require(chi);
  BElement out;
  for (const auto& [l, c] : a.terms()) out.add(l, c * impl_->z(char_eval_exponent(G, chi, l.g)));
  return out;
}

std::string to_string(const BLabel& label) {
  std::ostringstream out;
  out << "x^(";
  for (std::size_t i = 0; i < label.x.size(); ++i) out << (i ? "," : "") << label.x[i];
  out << ")*g" << to_string(label.g);
  return out.str();
}

namespace {

using Triple = std::tuple<BLabel, BLabel, BLabel>;
using BTensor3 = LinComb<Triple>;

// (Delta (x) id) Delta(b)
BTensor3 delta_left(const Bosonization& B, const BLabel& b) {
  BTensor3 out;
  const BTensor outer = B.comultiply_basis(b);
  for (const auto& [pair, c] : outer.terms()) {
    const BTensor left = B.comultiply_basis(pair.first);
    for (const auto& [inner, d] : left.terms()) {
      out.add({inner.first, inner.second, pair.second}, c * d);
    }
  }
  return out;
}

// (id (x) Delta) Delta(b)
BTensor3 delta_right(const Bosonization& B, const BLabel& b) {
  BTensor3 out;
  const BTensor outer = B.comultiply_basis(b);
  for (const auto& [pair, c] : outer.terms()) {
    const BTensor right = B.comultiply_basis(pair.second);
    for (const auto& [inner, d] : right.terms()) {
      out.add({pair.first, inner.first, inner.second}, c * d);
    }
  }
  return out;
}

bool is_grouplike(const BLabel& l) {
  for (int e : l.x) {
    if (e) return false;
  }
  return true;
}

}  // namespace

std::vector<IdentityCheck> verify_bosonization(const Bosonization& B, std::size_t exhaustive_limit,
                                               std::size_t samples, unsigned long seed) {
  const AbelianGroup& G = B.group();
  const auto basis = B.basis();
  const bool exhaustive = basis.size() <= exhaustive_limit;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
  std::vector<IdentityCheck> checks;

  auto el = [](const BLabel& l) { return BElement::term(l); };

  {
    IdentityCheck c{"associativity"};
    auto check = [&](const BLabel& a, const BLabel& b, const BLabel& d) {
      ++c.cases;
      const BElement lhs = B.multiply(B.multiply(el(a), el(b)), el(d));
      const BElement rhs = B.multiply(el(a), B.multiply(el(b), el(d)));
      if (!(lhs == rhs)) c.fail("(ab)c != a(bc) for a=" + to_string(a) + " b=" + to_string(b) + " c=" + to_string(d));
    };
    if (exhaustive) {
      for (const auto& a : basis)
        for (const auto& b : basis)
          for (const auto& d : basis) check(a, b, d);
    } else {
      for (std::size_t s = 0; s < samples; ++s) check(basis[pick(rng)], basis[pick(rng)], basis[pick(rng)]);
    }
    checks.push_back(std::move(c));
  }

  {
    IdentityCheck c{"coassociativity"};
    IdentityCheck counit{"counit"};
    for (const auto& b : basis) {
      ++c.cases;
      if (!(delta_left(B, b) == delta_right(B, b))) c.fail("(D(x)id)D != (id(x)D)D on " + to_string(b));
      ++counit.cases;
      BElement left, right;
      const BTensor delta = B.comultiply_basis(b);
      for (const auto& [pair, coeff] : delta.terms()) {
        if (is_grouplike(pair.first)) left.add(pair.second, coeff);
        if (is_grouplike(pair.second)) right.add(pair.first, coeff);
      }
      if (!(left == el(b)) || !(right == el(b))) counit.fail("counit law fails on " + to_string(b));
    }
    checks.push_back(std::move(c));
    checks.push_back(std::move(counit));
  }

  {
    IdentityCheck c{"coproduct_multiplicative"};
    auto check = [&](const BLabel& a, const BLabel& b) {
      ++c.cases;
      const BTensor lhs = B.comultiply(B.multiply(el(a), el(b)));
      const BTensor rhs = B.tensor_multiply(B.comultiply_basis(a), B.comultiply_basis(b));
      if (!(lhs == rhs)) c.fail("D(ab) != D(a)D(b) for a=" + to_string(a) + " b=" + to_string(b));
    };
    if (exhaustive) {
      for (const auto& a : basis)
        for (const auto& b : basis) check(a, b);
    } else {
      for (std::size_t s = 0; s < samples; ++s) check(basis[pick(rng)], basis[pick(rng)]);
    }
    checks.push_back(std::move(c));
  }

  const auto chars = G.characters();
  {
    IdentityCheck c{"idempotents"};
    BElement sum;
    for (const auto& chi : chars) {
      const BElement e = B.e_chi(chi);
      sum += e;
      for (const auto& psi : chars) {
        ++c.cases;
        const BElement prod = B.multiply(e, B.e_chi(psi));
        const BElement expect = (chi == psi) ? e : BElement();
        if (!(prod == expect)) c.fail("e_chi e_psi != delta e_chi for chi=" + to_string(chi) + " psi=" + to_string(psi));
      }
      for (const auto& h : G.elements()) {
        ++c.cases;
        const BElement hb = B.group_element(h);
        const BElement expect = char_eval(G, chi, G.inverse(h)) * e;
        if (!(B.multiply(hb, e) == expect) || !(B.multiply(e, hb) == expect)) {
          c.fail("h e_chi != chi(h^-1) e_chi for h=" + to_string(h) + " chi=" + to_string(chi));
        }
      }
      for (std::size_t i = 0; i < B.rank(); ++i) {
        ++c.cases;
        const Character shifted = char_product(G, chi, B.datum().chi[i]);
        if (!(B.multiply(e, B.x(i)) == B.multiply(B.x(i), B.e_chi(shifted)))) {
          c.fail("e_chi x_i != x_i e_{chi chi_i} for chi=" + to_string(chi) + " i=" + std::to_string(i + 1));
        }
      }
    }
    ++c.cases;
    if (!(sum == B.one())) c.fail("sum of e_chi != 1");
    checks.push_back(std::move(c));
  }

  {
    IdentityCheck c{"left_integral"};
    const BElement t0 = B.t_chi(G.trivial_character());
    for (const auto& b : basis) {
      ++c.cases;
      const BElement lhs = B.multiply(el(b), t0);
      const BElement rhs = B.counit(el(b)) * t0;
      if (!(lhs == rhs)) c.fail("b t_0 != eps(b) t_0 for b=" + to_string(b));
    }
    checks.push_back(std::move(c));
  }

  {
    IdentityCheck c{"pi_chi"};
    for (const auto& chi : chars) {
      auto check_pair = [&](const BLabel& a, const BLabel& b) {
        ++c.cases;
        const BElement lhs = B.pi_chi(chi, B.multiply(el(a), el(b)));
        const BElement rhs = B.multiply(B.pi_chi(chi, el(a)), B.pi_chi(chi, el(b)));
        if (!(lhs == rhs)) c.fail("pi_chi not multiplicative: chi=" + to_string(chi) + " a=" + to_string(a) + " b=" + to_string(b));
      };
      if (exhaustive) {
        for (const auto& a : basis)
          for (const auto& b : basis) check_pair(a, b);
      } else {
        for (std::size_t s = 0; s < samples; ++s) check_pair(basis[pick(rng)], basis[pick(rng)]);
      }
      for (const auto& psi : chars) {
        ++c.cases;
        const Character prod = char_product(G, chi, psi);
        if (!(B.pi_chi(chi, B.e_chi(psi)) == B.e_chi(prod))) {
          c.fail("pi_chi(e_psi) != e_{psi chi} for chi=" + to_string(chi) + " psi=" + to_string(psi));
        }
        const BElement sample = el(basis[pick(rng)]);
        if (!(B.pi_chi(chi, B.pi_chi(psi, sample)) == B.pi_chi(prod, sample))) {
          c.fail("pi_chi pi_psi != pi_{chi psi} for chi=" + to_string(chi) + " psi=" + to_string(psi));
        }
      }
      ++c.cases;
      if (!(B.pi_chi(char_inverse(G, chi), B.t_chi(chi)) == B.t_chi(G.trivial_character()))) {
        c.fail("pi_{chi^-1}(t_chi) != t_0 for chi=" + to_string(chi));
      }
    }
    checks.push_back(std::move(c));
  }
  return checks;
}

RadicalReport radical_dimension(const Bosonization& B, std::size_t size_limit) {
  const std::size_t dim = B.dimension();
  if (dim > size_limit) {
    throw Error("size_limit", "dim B = " + std::to_string(dim) + " exceeds the size limit " +
                                  std::to_string(size_limit));
  }
  const auto basis = B.basis();
  std::map<BLabel, std::size_t> index;
  for (std::size_t k = 0; k < basis.size(); ++k) index.emplace(basis[k], k);
  const long L = B.exponent();
  const unsigned conductor = static_cast<unsigned>(L);

  // trace[k] = tr(L_{b_k}) = sum_j [b_j] (b_k b_j)
  std::vector<CycNumber> trace(dim, CycNumber(Rational(0), conductor));
  for (std::size_t k = 0; k < dim; ++k) {
    for (std::size_t j = 0; j < dim; ++j) {
      auto p = B.multiply_basis(basis[k], basis[j]);
      if (p && p->label == basis[j]) trace[k] += CycNumber::root_of_unity(L, p->scalar_exp);
    }
  }

  CycMatrix gram(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      auto p = B.multiply_basis(basis[i], basis[j]);
      if (!p) continue;
      gram.at(i, j) = CycNumber::root_of_unity(L, p->scalar_exp) * trace[index.at(p->label)];
    }
  }

  RadicalReport r;
  r.algebra_dimension = dim;
  r.radical_dimension = dim - gram.rank();
  std::size_t nil = 1;
  for (int m : B.nilpotency_orders()) nil *= static_cast<std::size_t>(m);
  r.expected_dimension = static_cast<std::size_t>(B.group().order()) * (nil - 1);

  bool rows_vanish = true;
  for (std::size_t i = 0; i < dim && rows_vanish; ++i) {
    if (is_grouplike(basis[i])) continue;
    for (std::size_t j = 0; j < dim; ++j) {
      if (!gram.at(i, j).is_zero()) {
        rows_vanish = false;
        break;
      }
    }
  }
  r.matches_nilpotent_span = rows_vanish && r.radical_dimension == r.expected_dimension;
  return r;
}

}  // namespace qls
