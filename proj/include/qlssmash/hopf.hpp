#pragma once

// The bosonization B(G, g, chi) of a quantum linear space: generated by the
// grouplikes of G and (g_i, 1)-skew-primitives x_1..x_theta subject to
//   g x_i = chi_i(g) x_i g,   x_i^{m_i} = 0,   x_i x_j = chi_j(g_i) x_j x_i.
// Elements are stored on the PBW basis x_1^{a_1} ... x_theta^{a_theta} g.

#include <compare>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "qlssmash/checks.hpp"
#include "qlssmash/group.hpp"
#include "qlssmash/lincomb.hpp"

namespace qls {

struct QlsDatum {
  AbelianGroup group;
  std::vector<GroupElement> g;
  std::vector<Character> chi;
};

/// Generalized Taft algebra T_n(lambda, m, alpha).
struct TaftDatum {
  int n = 2;
  int m = 2;
  CycNumber lambda = CycNumber(-1);
  CycNumber alpha = CycNumber(0);

  /// Rank-1 datum over Z_n. Throws Error("unsupported") when alpha != 0 and
  /// Error("invalid_input") unless m | n and ord(lambda) == m.
  QlsDatum to_datum() const;
};

struct BLabel {
  std::vector<int> x;  // PBW exponents, 0 <= x[i] < m_i
  GroupElement g;
  auto operator<=>(const BLabel&) const = default;
};

using BElement = LinComb<BLabel>;
using BTensor = LinComb<std::pair<BLabel, BLabel>>;

/// Product of two basis labels: zeta_L^scalar_exp * label, or nothing when an
/// x-exponent reaches its nilpotency order.
struct BasisProduct {
  long scalar_exp = 0;
  BLabel label;
};

class Bosonization {
 public:
  /// Validates the datum: lengths, group membership, and m_i = ord(chi_i(g_i)) >= 2.
  /// Throws Error("order_one") naming the first index with chi_i(g_i) == 1, and
  /// Error("braiding_mismatch") unless chi_j(g_i) chi_i(g_j) == 1 for i != j.
  static Bosonization create(QlsDatum datum);

  const QlsDatum& datum() const;
  const AbelianGroup& group() const;
  std::size_t rank() const;
  const std::vector<int>& nilpotency_orders() const;
  /// Root-of-unity order used for every structure constant (group exponent).
  long exponent() const;

  /// q_ij = chi_j(g_i).
  CycNumber q(std::size_t i, std::size_t j) const;
  /// lambda_i = chi_i(g_i).
  CycNumber lambda(std::size_t i) const;

  std::size_t dimension() const;
  std::vector<BLabel> basis() const;

  BElement one() const;
  BElement group_element(const GroupElement& g) const;
  BElement x(std::size_t i) const;
  /// x_1^{m_1-1} ... x_theta^{m_theta-1}.
  BElement x_bar() const;

  std::optional<BasisProduct> multiply_basis(const BLabel& a, const BLabel& b) const;
  BElement multiply(const BElement& a, const BElement& b) const;

  /// Coproduct of a PBW x-monomial (identity group part); cached per pattern.
  const BTensor& comultiply_x(const std::vector<int>& alpha) const;
  BTensor comultiply_basis(const BLabel& label) const;
  BTensor comultiply(const BElement& a) const;
  BTensor tensor_multiply(const BTensor& a, const BTensor& b) const;
  CycNumber counit(const BElement& a) const;

  BElement e_chi(const Character& chi) const;
  BElement t_chi(const Character& chi) const;
  /// x^a g -> chi(g) x^a g.
  BElement pi_chi(const Character& chi, const BElement& a) const;

 private:
  struct Impl;
  explicit Bosonization(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<Impl> impl_;
};

/// Structural identity suite for B: associativity, coassociativity, counit,
/// character idempotents, left integral t_0, and pi_chi. Exhaustive over the
/// basis when dim B <= exhaustive_limit, otherwise on `samples` random triples.
std::vector<IdentityCheck> verify_bosonization(const Bosonization& B,
                                               std::size_t exhaustive_limit = 64,
                                               std::size_t samples = 200,
                                               unsigned long seed = 0x5eed);

struct RadicalReport {
  std::size_t algebra_dimension = 0;
  std::size_t radical_dimension = 0;
  /// |G| (prod m_i - 1).
  std::size_t expected_dimension = 0;
  /// Radical equals span{x^a g : a != 0}.
  bool matches_nilpotent_span = false;
};

/// Jacobson radical of B as the radical of the trace form
/// T(a, b) = tr(L_{ab}) (characteristic zero). Throws Error("size_limit")
/// when dim B exceeds size_limit.
RadicalReport radical_dimension(const Bosonization& B, std::size_t size_limit = 4096);

std::string to_string(const BLabel& label);

}  // namespace qls
