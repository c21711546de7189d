#include "qlssmash/qas.hpp"

#include <numeric>
#include <sstream>

#include "qlssmash/error.hpp"

namespace qls {

namespace {

long mod(long a, long n) {
  long r = a % n;
  return r < 0 ? r + n : r;
}

// Exponent table for matrices/vectors whose entries are all roots of unity.
struct RootTable {
  long order = 1;
  std::vector<CycNumber> zeta;

  explicit RootTable(long n) : order(n) {
    zeta.reserve(static_cast<std::size_t>(n));
    for (long k = 0; k < n; ++k) zeta.push_back(CycNumber::root_of_unity(n, k));
  }
  const CycNumber& z(long k) const { return zeta[static_cast<std::size_t>(mod(k, order))]; }
};

}  // namespace

int degree(const Monomial& a) { return std::accumulate(a.begin(), a.end(), 0); }

std::string to_string(const Monomial& a) {
  std::ostringstream out;
  bool any = false;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (!a[j]) continue;
    if (any) out << "*";
    out << "u" << j + 1;
    if (a[j] > 1) out << "^" << a[j];
    any = true;
  }
  if (!any) out << "1";
  return out.str();
}

std::vector<Monomial> monomials_of_degree(std::size_t n, int d) {
  std::vector<Monomial> out;
  if (n == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  Monomial cur(n, 0);
  // Recursive fill: first variable takes the largest share first.
  auto rec = [&](auto&& self, std::size_t pos, int left) -> void {
    if (pos + 1 == n) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (int k = left; k >= 0; --k) {
      cur[pos] = k;
      self(self, pos + 1, left - k);
    }
    cur[pos] = 0;
  };
  rec(rec, 0, d);
  return out;
}

PMatrix::PMatrix(std::vector<std::vector<CycNumber>> entries) : entries_(std::move(entries)) {
  const std::size_t n = entries_.size();
  if (n == 0) throw Error("invalid_input", "p-matrix must have at least one row");
  for (std::size_t i = 0; i < n; ++i) {
    if (entries_[i].size() != n) throw Error("invalid_input", "p-matrix must be square");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!entries_[i][i].is_one()) {
      throw Error("invalid_input", "p-matrix needs p_ii = 1 (row " + std::to_string(i + 1) + ")");
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!(entries_[i][j] * entries_[j][i]).is_one()) {
        throw Error("invalid_input", "p-matrix needs p_ij p_ji = 1 (entry " + std::to_string(i + 1) + "," +
                                         std::to_string(j + 1) + ")");
      }
    }
  }
}

struct QuantumAffineSpace::Exponents {
  RootTable table;
  std::vector<std::vector<long>> e;
};

namespace {

std::optional<QuantumAffineSpace::Exponents> p_exponents(const PMatrix& p) {
  long n = 1;
  for (const auto& row : p.entries()) {
    for (const auto& v : row) n = std::lcm(n, static_cast<long>(v.conductor()));
  }
  if (n % 2) n *= 2;
  std::vector<std::vector<long>> e(p.size(), std::vector<long>(p.size(), 0));
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < p.size(); ++j) {
      auto k = root_exponent(p.at(i, j), n);
      if (!k) return std::nullopt;
      e[i][j] = *k;
    }
  }
  return QuantumAffineSpace::Exponents{RootTable(n), std::move(e)};
}

}  // namespace

QuantumAffineSpace::QuantumAffineSpace(PMatrix p) : p_(std::move(p)) {
  if (auto e = p_exponents(p_)) exps_ = std::make_shared<const Exponents>(std::move(*e));
}

QasElement QuantumAffineSpace::one() const { return QasElement::term(Monomial(num_vars(), 0)); }

QasElement QuantumAffineSpace::generator(std::size_t j) const {
  if (j >= num_vars()) throw Error("invalid_input", "variable index out of range");
  Monomial a(num_vars(), 0);
  a[j] = 1;
  return QasElement::term(a);
}

QasElement QuantumAffineSpace::monomial(const Monomial& a) const {
  if (a.size() != num_vars()) throw Error("invalid_input", "monomial has the wrong number of variables");
  return QasElement::term(a);
}

CycNumber QuantumAffineSpace::monomial_product_scalar(const Monomial& a, const Monomial& b) const {
  // u_i^{a_i} u_j^{b_j} = p_ij^{a_i b_j} u_j^{b_j} u_i^{a_i} for i > j
  if (exps_) {
    long e = 0;
    for (std::size_t i = 1; i < a.size(); ++i) {
      if (!a[i]) continue;
      for (std::size_t j = 0; j < i; ++j) e += exps_->e[i][j] * a[i] * b[j];
    }
    return exps_->table.z(e);
  }
  CycNumber s(1);
  for (std::size_t i = 1; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < i; ++j) {
      if (b[j]) s *= p_.at(i, j).pow(static_cast<long>(a[i]) * b[j]);
    }
  }
  return s;
}

QasElement QuantumAffineSpace::multiply(const QasElement& a, const QasElement& b) const {
  QasElement out;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      Monomial sum(ma.size());
      for (std::size_t j = 0; j < ma.size(); ++j) sum[j] = ma[j] + mb[j];
      out.add(std::move(sum), ca * cb * monomial_product_scalar(ma, mb));
    }
  }
  return out;
}

ModuleAlgebra::ModuleAlgebra(Bosonization algebra, ActionSpec spec)
    : algebra_(std::move(algebra)), spec_(std::move(spec)), space_(spec_.p) {
  const std::size_t n = space_.num_vars();
  const AbelianGroup& G = algebra_.group();
  if (spec_.gamma.size() != G.rank()) {
    throw Error("invalid_input", "gamma needs one row per cyclic factor of G (" + std::to_string(G.rank()) + ")");
  }
  for (const auto& row : spec_.gamma) {
    if (row.size() != n) throw Error("invalid_input", "each gamma row needs one entry per variable");
    for (const auto& v : row) {
      if (v.is_zero()) throw Error("invalid_input", "gamma entries must be nonzero");
    }
  }
  if (spec_.targets.empty()) spec_.targets.assign(algebra_.rank(), std::vector<std::optional<SkewTarget>>(n));
  if (spec_.targets.size() != algebra_.rank()) {
    throw Error("invalid_input", "skew targets need one row per x_i");
  }
  for (auto& row : spec_.targets) {
    if (row.size() != n) throw Error("invalid_input", "each skew-target row needs one entry per variable");
    for (auto& t : row) {
      if (!t) continue;
      if (t->beta.size() != n) throw Error("invalid_input", "skew target exponent has the wrong length");
      for (int e : t->beta) {
        if (e < 0) throw Error("invalid_input", "skew target exponents must be >= 0");
      }
      if (t->coeff.is_zero()) t.reset();
    }
  }

  std::vector<std::vector<long>> exps(G.rank(), std::vector<long>(n, 0));
  bool all = true;
  for (std::size_t f = 0; f < G.rank() && all; ++f) {
    for (std::size_t j = 0; j < n && all; ++j) {
      auto k = root_exponent(spec_.gamma[f][j], G.factor_orders()[f]);
      if (k) exps[f][j] = *k;
      else all = false;
    }
  }
  if (all) gamma_exp_ = std::move(exps);
}

CycNumber ModuleAlgebra::group_scalar(const GroupElement& g, const Monomial& a) const {
  const AbelianGroup& G = algebra_.group();
  G.require(g);
  if (gamma_exp_) {
    const long L = G.exponent();
    long e = 0;
    for (std::size_t f = 0; f < G.rank(); ++f) {
      if (!g.exps[f]) continue;
      long s = 0;
      for (std::size_t j = 0; j < a.size(); ++j) s += (*gamma_exp_)[f][j] * a[j];
      e += (L / G.factor_orders()[f]) * g.exps[f] * s;
    }
    return CycNumber::root_of_unity(L, mod(e, L));
  }
  CycNumber s(1);
  for (std::size_t f = 0; f < G.rank(); ++f) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (g.exps[f] && a[j]) s *= spec_.gamma[f][j].pow(static_cast<long>(g.exps[f]) * a[j]);
    }
  }
  return s;
}

QasElement ModuleAlgebra::act_group(const GroupElement& g, const QasElement& a) const {
  QasElement out;
  for (const auto& [m, c] : a.terms()) out.add(m, c * group_scalar(g, m));
  return out;
}

QasElement ModuleAlgebra::act_skew_monomial(std::size_t i, const Monomial& a) const {
  if (i >= algebra_.rank()) throw Error("invalid_input", "x index out of range");
  const auto& row = spec_.targets[i];
  const GroupElement& gi = algebra_.datum().g[i];
  const std::size_t n = a.size();
  QasElement out;
  // x(w_1 ... w_d) = sum_k g(w_1 ... w_{k-1}) x(w_k) w_{k+1} ... w_d
  Monomial prefix(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    for (int t = 0; t < a[j]; ++t) {
      if (row[j]) {
        Monomial suffix(n, 0);
        suffix[j] = a[j] - t - 1;
        for (std::size_t l = j + 1; l < n; ++l) suffix[l] = a[l];
        const SkewTarget& tgt = *row[j];
        Monomial mid(n);
        for (std::size_t l = 0; l < n; ++l) mid[l] = prefix[l] + tgt.beta[l];
        CycNumber c = group_scalar(gi, prefix) * tgt.coeff * space_.monomial_product_scalar(prefix, tgt.beta) *
                      space_.monomial_product_scalar(mid, suffix);
        Monomial total(n);
        for (std::size_t l = 0; l < n; ++l) total[l] = mid[l] + suffix[l];
        out.add(std::move(total), c);
      }
      ++prefix[j];
    }
  }
  return out;
}

QasElement ModuleAlgebra::act_skew(std::size_t i, const QasElement& a) const {
  QasElement out;
  for (const auto& [m, c] : a.terms()) out += c * act_skew_monomial(i, m);
  return out;
}

QasElement ModuleAlgebra::act_basis(const BLabel& h, const QasElement& a) const {
  QasElement r = act_group(h.g, a);
  for (std::size_t i = algebra_.rank(); i-- > 0;) {
    for (int k = 0; k < h.x[i] && !r.is_zero(); ++k) r = act_skew(i, r);
  }
  return r;
}

QasElement ModuleAlgebra::act(const BElement& h, const QasElement& a) const {
  QasElement out;
  for (const auto& [l, c] : h.terms()) out += c * act_basis(l, a);
  return out;
}

Character ModuleAlgebra::weight(const Monomial& a) const {
  const AbelianGroup& G = algebra_.group();
  if (!gamma_exp_) {
    throw Error("invalid_input", "weights need every gamma to be a d_f-th root of unity");
  }
  std::vector<long> exps(G.rank(), 0);
  for (std::size_t f = 0; f < G.rank(); ++f) {
    for (std::size_t j = 0; j < a.size(); ++j) exps[f] += (*gamma_exp_)[f][j] * a[j];
  }
  return G.character(exps);
}

namespace {

Monomial unit(std::size_t n, std::size_t j) {
  Monomial m(n, 0);
  m[j] = 1;
  return m;
}

QasElement target_of(const ModuleAlgebra& M, std::size_t i, std::size_t j) {
  const auto& t = M.spec().targets[i][j];
  if (!t) return {};
  return QasElement::term(t->beta, t->coeff);
}

// x_i applied to the (unreduced) word u_s u_t.
QasElement skew_on_word(const ModuleAlgebra& M, std::size_t i, std::size_t s, std::size_t t) {
  const auto& A = M.space();
  const std::size_t n = M.num_vars();
  const GroupElement& gi = M.algebra().datum().g[i];
  QasElement first = A.multiply(M.act_group(gi, A.generator(s)), target_of(M, i, t));
  QasElement second = A.multiply(target_of(M, i, s), A.generator(t));
  (void)n;
  return first + second;
}

std::string elem_string(const QasElement& e) {
  if (e.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : e.terms()) {
    out << (first ? "" : " + ") << "(" << c.to_string() << ")*" << to_string(m);
    first = false;
  }
  return out.str();
}

}  // namespace

ActionValidation validate_action(const ModuleAlgebra& M, int degree_cap) {
  ActionValidation report;
  const Bosonization& B = M.algebra();
  const AbelianGroup& G = B.group();
  const std::size_t n = M.num_vars();
  const std::size_t theta = B.rank();
  const auto& A = M.space();

  auto violate = [&](std::string check, std::string identity, Monomial witness) {
    report.ok = false;
    report.violations.push_back({std::move(check), std::move(identity), std::move(witness)});
  };

  // (e) each generator eigenvalue is a root of unity of order dividing d_f
  for (std::size_t f = 0; f < G.rank(); ++f) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!M.spec().gamma[f][j].pow(G.factor_orders()[f]).is_one()) {
        violate("e", "gamma(g" + std::to_string(f + 1) + ", u" + std::to_string(j + 1) + ")^" +
                         std::to_string(G.factor_orders()[f]) + " != 1",
                unit(n, j));
      }
    }
  }

  // (b) g x_i = chi_i(g) x_i g on generators u_j, for each cyclic generator g
  for (std::size_t f = 0; f < G.rank(); ++f) {
    const GroupElement g = G.generator(f);
    for (std::size_t i = 0; i < theta; ++i) {
      const CycNumber chi_g = char_eval(G, B.datum().chi[i], g);
      for (std::size_t j = 0; j < n; ++j) {
        const QasElement uj = A.generator(j);
        const QasElement lhs = M.act_group(g, M.act_skew(i, uj));
        const QasElement rhs = chi_g * M.act_skew(i, M.act_group(g, uj));
        if (!(lhs == rhs)) {
          violate("b", "g" + std::to_string(f + 1) + " x" + std::to_string(i + 1) + " != chi" +
                           std::to_string(i + 1) + "(g" + std::to_string(f + 1) + ") x" + std::to_string(i + 1) +
                           " g" + std::to_string(f + 1) + ": " + elem_string(lhs) + " vs " + elem_string(rhs),
                  unit(n, j));
        }
      }
    }
  }

  // (c) x_i x_j = chi_j(g_i) x_j x_i for i != j
  for (std::size_t i = 0; i < theta; ++i) {
    for (std::size_t k = 0; k < theta; ++k) {
      if (i == k) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const QasElement uj = A.generator(j);
        const QasElement lhs = M.act_skew(i, M.act_skew(k, uj));
        const QasElement rhs = B.q(i, k) * M.act_skew(k, M.act_skew(i, uj));
        if (!(lhs == rhs)) {
          violate("c", "x" + std::to_string(i + 1) + " x" + std::to_string(k + 1) + " != chi" + std::to_string(k + 1) +
                           "(g" + std::to_string(i + 1) + ") x" + std::to_string(k + 1) + " x" +
                           std::to_string(i + 1),
                  unit(n, j));
        }
      }
    }
  }

  // (a) x_i(u_s u_t - p_st u_t u_s) = 0 on unreduced words
  for (std::size_t i = 0; i < theta; ++i) {
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t t = s + 1; t < n; ++t) {
        const QasElement value = skew_on_word(M, i, s, t) - A.p().at(s, t) * skew_on_word(M, i, t, s);
        if (!value.is_zero()) {
          Monomial w(n, 0);
          ++w[s];
          ++w[t];
          violate("a", "x" + std::to_string(i + 1) + "(u" + std::to_string(s + 1) + "u" + std::to_string(t + 1) +
                           " - p" + std::to_string(s + 1) + std::to_string(t + 1) + " u" + std::to_string(t + 1) +
                           "u" + std::to_string(s + 1) + ") = " + elem_string(value),
                  w);
        }
      }
    }
  }

  // (d) x_i^{m_i} = 0 on all monomials up to the degree cap
  for (std::size_t i = 0; i < theta; ++i) {
    const int mi = B.nilpotency_orders()[i];
    bool found = false;
    for (int d = 0; d <= degree_cap && !found; ++d) {
      for (const auto& mono : monomials_of_degree(n, d)) {
        QasElement r = QasElement::term(mono);
        for (int k = 0; k < mi && !r.is_zero(); ++k) r = M.act_skew(i, r);
        if (!r.is_zero()) {
          violate("d", "x" + std::to_string(i + 1) + "^" + std::to_string(mi) + " != 0", mono);
          found = true;
          break;
        }
      }
    }
  }
  report.degree_verified = degree_cap;
  return report;
}

namespace {

std::string rejection_message(const ActionValidation& r) {
  const auto* f = r.first_failure();
  if (!f) return "action rejected";
  return "action is not a module algebra: check (" + f->check + ") " + f->identity + " [witness " +
         to_string(f->witness) + "]";
}

}  // namespace

ActionRejected::ActionRejected(ActionValidation report)
    : Error("invalid_action", rejection_message(report)), report_(std::move(report)) {}

ValidatedAction::ValidatedAction(ModuleAlgebra module, int degree_cap)
    : module_(std::move(module)), validation_(validate_action(module_, degree_cap)) {
  if (!validation_.ok) throw ActionRejected(validation_);
}

}  // namespace qls
