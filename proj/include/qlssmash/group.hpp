#pragma once

// Finite abelian groups Z_{d_1} x ... x Z_{d_r}, their elements, and their
// character groups. Characters are exponent tuples: chi = (c_1, ..., c_r)
// evaluates as chi(a) = prod zeta_{d_i}^(c_i a_i).

#include <compare>
#include <string>
#include <vector>

#include "qlssmash/cyclotomic.hpp"

namespace qls {

struct GroupElement {
  std::vector<int> exps;
  auto operator<=>(const GroupElement&) const = default;
};

struct Character {
  std::vector<int> exps;
  auto operator<=>(const Character&) const = default;
};

std::string to_string(const GroupElement& g);
std::string to_string(const Character& chi);

class AbelianGroup {
 public:
  AbelianGroup() = default;
  /// Each factor order must be >= 1. An empty list is the trivial group.
  explicit AbelianGroup(std::vector<int> factor_orders);

  const std::vector<int>& factor_orders() const noexcept { return factors_; }
  std::size_t rank() const noexcept { return factors_.size(); }
  long order() const noexcept { return order_; }
  /// lcm of the factor orders; every character value is a power of zeta_exponent.
  long exponent() const noexcept { return exponent_; }

  GroupElement identity() const;
  GroupElement generator(std::size_t factor) const;
  /// Reduces arbitrary integer exponents componentwise.
  GroupElement element(const std::vector<long>& exps) const;
  GroupElement multiply(const GroupElement& a, const GroupElement& b) const;
  GroupElement inverse(const GroupElement& a) const;
  GroupElement power(const GroupElement& a, long k) const;
  long element_order(const GroupElement& a) const;

  /// All elements / all characters, in lexicographic exponent order.
  std::vector<GroupElement> elements() const;
  std::vector<Character> characters() const;

  Character trivial_character() const;
  Character character(const std::vector<long>& exps) const;

  bool contains(const GroupElement& g) const;
  bool contains(const Character& chi) const;

  /// Throws Error("group_mismatch") unless the tuple belongs to this group.
  void require(const GroupElement& g) const;
  void require(const Character& chi) const;

  bool operator==(const AbelianGroup& other) const { return factors_ == other.factors_; }

 private:
  bool in_range(const std::vector<int>& exps) const;

  std::vector<int> factors_;
  long order_ = 1;
  long exponent_ = 1;
};

/// chi(g) = zeta_exponent^k; returns k in [0, exponent).
long char_eval_exponent(const AbelianGroup& G, const Character& chi, const GroupElement& g);

CycNumber char_eval(const AbelianGroup& G, const Character& chi, const GroupElement& g);
Character char_product(const AbelianGroup& G, const Character& chi, const Character& psi);
Character char_inverse(const AbelianGroup& G, const Character& chi);
Character char_power(const AbelianGroup& G, const Character& chi, long k);

/// (1/|G|) sum_g (chi * psi)(g), computed by summing the cyclotomic values.
Rational char_sum(const AbelianGroup& G, const Character& chi, const Character& psi);

struct GeneratedSubgroup {
  std::vector<Character> elements;
  /// words[k][j] = multiplicity of gens[j] in a product equal to elements[k].
  std::vector<std::vector<int>> words;
  bool covers_all = false;

  std::size_t order() const noexcept { return elements.size(); }
};

/// Breadth-first product closure of `gens` inside the dual group.
GeneratedSubgroup subgroup_generated(const AbelianGroup& G, const std::vector<Character>& gens);

}  // namespace qls
