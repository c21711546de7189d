#pragma once

// Invariant subalgebras R^<x_i>, the chain R_k, and the semiprime/prime
// deciders for smash products over quantum affine spaces.

#include <optional>
#include <string>
#include <vector>

#include "qlssmash/qas.hpp"

namespace qls {

/// A subalgebra of A given either as a monomial cone (u^a belongs iff M_j | a_j,
/// with M_j = nullopt meaning a_j = 0) or as an exact basis of its part of
/// degree <= degree_cap.
struct InvariantCone {
  enum class Kind { MonomialCone, CappedBasis };

  Kind kind = Kind::MonomialCone;
  std::vector<std::optional<int>> moduli;
  int degree_cap = 0;
  std::vector<QasElement> basis;

  static InvariantCone whole(std::size_t n);

  bool is_cone() const noexcept { return kind == Kind::MonomialCone; }
  bool contains(const Monomial& a) const;
  /// Algebra generators u_j^{M_j} of a cone, in variable order.
  std::vector<Monomial> generators() const;
  std::string to_string() const;

  friend bool operator==(const InvariantCone&, const InvariantCone&) = default;
};

InvariantCone intersect(const InvariantCone& a, const InvariantCone& b);

/// Exact kernel of x_i on the span of the degree-d monomials.
std::vector<QasElement> kernel_in_degree(const ModuleAlgebra& M, std::size_t i, int d);

enum class VerdictValue { Yes, No, Unknown };
std::string to_string(VerdictValue v);

struct NonvanishingResult {
  VerdictValue value = VerdictValue::Unknown;
  std::size_t x = 0;
  InvariantCone domain;
  /// Element of the domain with x(witness) != 0 (Yes only).
  std::optional<QasElement> witness;
  /// Human-readable proof: witness value, cone inclusion, or the exhausted cap.
  std::string certificate;
};

struct OrderingResult {
  /// Chain order: R_k is the common kernel of x_{ordering[0..k-1]}, and step k
  /// asks whether x_{ordering[k]} is nonzero on R_k. Indices are 0-based.
  std::vector<std::size_t> ordering;
  VerdictValue value = VerdictValue::Unknown;
  std::vector<NonvanishingResult> steps;
};

struct CoverageCertificate {
  InvariantCone invariants;  // R^x
  std::vector<QasElement> generators;  // elements of R^x whose weights were used
  std::vector<Character> weights;
  std::size_t subgroup_order = 0;
  std::size_t group_order = 0;
  bool covers_all = false;
  /// For each character chi in the subgroup generated by the weights, an
  /// element a of R^x with g(a) = chi(g^{-1}) a, given as a product of the
  /// generators. Ordered by chi.
  std::vector<std::pair<Character, QasElement>> witnesses;
};

struct Verdict {
  VerdictValue value = VerdictValue::Unknown;
  int degree_cap = 0;
  /// The ordering that decided the verdict (first satisfying ordering for Yes).
  std::optional<OrderingResult> chosen;
  std::vector<OrderingResult> orderings;
  std::optional<CoverageCertificate> coverage;
  std::string reason;
};

/// Module action of t_chi = e_chi x_1^{m_1-1} ... x_theta^{m_theta-1}: x_theta
/// acts first, then the averaging r -> (1/|G|) sum_g chi(g) g(r).
QasElement t_chi_evaluate(const ModuleAlgebra& M, const Character& chi, const QasElement& a);

inline constexpr int kDefaultDegreeCap = 16;
inline constexpr std::size_t kMaxDeciderRank = 6;

class InvariantAnalysis {
 public:
  explicit InvariantAnalysis(const ValidatedAction& action, int degree_cap = kDefaultDegreeCap);

  const ModuleAlgebra& module() const noexcept { return module_; }
  int degree_cap() const noexcept { return degree_cap_; }

  /// Closed-form cone when x_i has a single target x_i(u_j) = c u^b with
  /// b_j = 0; otherwise an exact capped kernel.
  const InvariantCone& kernel_of_x(std::size_t i) const;
  /// [R_1, ..., R_theta] along the chain order.
  std::vector<InvariantCone> invariant_chain(const std::vector<std::size_t>& ordering) const;
  /// R^x, the common kernel of all x_i.
  InvariantCone invariants() const;

  NonvanishingResult nonvanishing_witness(std::size_t i, const InvariantCone& domain) const;
  OrderingResult check_ordering(const std::vector<std::size_t>& ordering) const;

  Verdict semiprime() const;
  Verdict prime() const;

  Character weight(const Monomial& a) const { return module_.weight(a); }
  QasElement t_chi_evaluate(const Character& chi, const QasElement& a) const {
    return qls::t_chi_evaluate(module_, chi, a);
  }

 private:
  InvariantCone compute_kernel(std::size_t i) const;
  CoverageCertificate coverage(const InvariantCone& rx) const;

  ModuleAlgebra module_;
  int degree_cap_;
  std::vector<InvariantCone> kernels_;
};

Verdict semiprime_decide(const ValidatedAction& action, int degree_cap = kDefaultDegreeCap);
Verdict prime_decide(const ValidatedAction& action, int degree_cap = kDefaultDegreeCap);

/// Effective q-scalar w of a single-target x_i(u_j) = c u^b:
/// x_i(u_j^k) = [k]_w c u^b u_j^{k-1}.
CycNumber effective_q(const ModuleAlgebra& M, std::size_t i, std::size_t j);

}  // namespace qls
