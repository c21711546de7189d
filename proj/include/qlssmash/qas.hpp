#pragma once

// Quantum affine spaces k_p[u_1..u_n] (u_i u_j = p_ij u_j u_i) with a diagonal
// action of G and single-monomial skew-derivation values for the x_i.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qlssmash/error.hpp"
#include "qlssmash/hopf.hpp"

namespace qls {

/// Exponent tuple of a normal-form monomial u_1^{a_1} ... u_n^{a_n}.
using Monomial = std::vector<int>;
using QasElement = LinComb<Monomial>;

int degree(const Monomial& a);
std::string to_string(const Monomial& a);

/// All monomials of total degree d in n variables, lexicographically descending
/// exponent order (u_1^d first).
std::vector<Monomial> monomials_of_degree(std::size_t n, int d);

class PMatrix {
 public:
  PMatrix() = default;
  /// Requires a square matrix with p_ii = 1 and p_ij p_ji = 1.
  explicit PMatrix(std::vector<std::vector<CycNumber>> entries);

  std::size_t size() const noexcept { return entries_.size(); }
  const CycNumber& at(std::size_t i, std::size_t j) const { return entries_.at(i).at(j); }
  const std::vector<std::vector<CycNumber>>& entries() const noexcept { return entries_; }

 private:
  std::vector<std::vector<CycNumber>> entries_;
};

class QuantumAffineSpace {
 public:
  QuantumAffineSpace() = default;
  explicit QuantumAffineSpace(PMatrix p);

  std::size_t num_vars() const noexcept { return p_.size(); }
  const PMatrix& p() const noexcept { return p_; }

  QasElement one() const;
  QasElement generator(std::size_t j) const;
  QasElement monomial(const Monomial& a) const;

  /// u^a u^b = scalar * u^(a+b).
  CycNumber monomial_product_scalar(const Monomial& a, const Monomial& b) const;
  QasElement multiply(const QasElement& a, const QasElement& b) const;

  struct Exponents;

 private:
  PMatrix p_;
  // set when every p_ij is a root of unity
  std::shared_ptr<const Exponents> exps_;
};

struct SkewTarget {
  CycNumber coeff;
  Monomial beta;
};

/// Raw action data. gamma[f][j] is the eigenvalue of the f-th cyclic generator
/// of G on u_j; targets[i][j] is x_i(u_j) (nullopt means zero).
struct ActionSpec {
  PMatrix p;
  std::vector<std::vector<CycNumber>> gamma;
  std::vector<std::vector<std::optional<SkewTarget>>> targets;
};

/// A bosonization acting on a quantum affine space. Construction checks only
/// shapes; module-algebra identities are checked by validate_action.
class ModuleAlgebra {
 public:
  ModuleAlgebra(Bosonization algebra, ActionSpec spec);

  const Bosonization& algebra() const noexcept { return algebra_; }
  const QuantumAffineSpace& space() const noexcept { return space_; }
  const ActionSpec& spec() const noexcept { return spec_; }
  std::size_t num_vars() const noexcept { return space_.num_vars(); }

  /// Eigenvalue of g on u^a.
  CycNumber group_scalar(const GroupElement& g, const Monomial& a) const;

  QasElement act_group(const GroupElement& g, const QasElement& a) const;
  /// x_i via the twisted Leibniz rule, leftmost factor first.
  QasElement act_skew(std::size_t i, const QasElement& a) const;
  QasElement act_skew_monomial(std::size_t i, const Monomial& a) const;
  /// x^b g acting: x_1^{b_1}(... x_theta^{b_theta}(g(r))).
  QasElement act_basis(const BLabel& h, const QasElement& a) const;
  QasElement act(const BElement& h, const QasElement& a) const;

  /// Character by which G scales u^a. Throws Error("invalid_input") when some
  /// gamma is not a character value.
  Character weight(const Monomial& a) const;

 private:
  Bosonization algebra_;
  ActionSpec spec_;
  QuantumAffineSpace space_;
  // gamma exponents: gamma[f][j] = zeta_{d_f}^gamma_exp[f][j], when available
  std::optional<std::vector<std::vector<long>>> gamma_exp_;
};

struct ActionViolation {
  std::string check;  // "a".."e"
  std::string identity;
  Monomial witness;
};

struct ActionValidation {
  bool ok = true;
  int degree_verified = 0;
  std::vector<ActionViolation> violations;

  const ActionViolation* first_failure() const { return violations.empty() ? nullptr : &violations.front(); }
};

/// Generator-level checks (e) gamma orders, (b) g x_i = chi_i(g) x_i g,
/// (c) x_i x_j = chi_j(g_i) x_j x_i, (a) x_i preserves the defining relations,
/// and (d) x_i^{m_i} = 0 on every monomial of degree <= degree_cap.
ActionValidation validate_action(const ModuleAlgebra& M, int degree_cap = 12);

/// A module algebra that passed validate_action. The deciders only accept this.
class ValidatedAction {
 public:
  /// Throws ActionRejected when validation fails.
  explicit ValidatedAction(ModuleAlgebra module, int degree_cap = 12);

  const ModuleAlgebra& module() const noexcept { return module_; }
  const ActionValidation& validation() const noexcept { return validation_; }

 private:
  ModuleAlgebra module_;
  ActionValidation validation_;
};

class ActionRejected : public Error {
 public:
  explicit ActionRejected(ActionValidation report);
  const ActionValidation& report() const noexcept { return report_; }

 private:
  ActionValidation report_;
};

}  // namespace qls
