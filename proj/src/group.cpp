#include "qlssmash/group.hpp"

#include <deque>
#include <map>
#include <numeric>
#include <sstream>

#include "qlssmash/error.hpp"

namespace qls {

namespace {

long mod(long a, long n) {
  long r = a % n;
  return r < 0 ? r + n : r;
}

std::string tuple_string(const std::vector<int>& v) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  out << ")";
  return out.str();
}

}  // namespace

std::string to_string(const GroupElement& g) { return tuple_string(g.exps); }
std::string to_string(const Character& chi) { return tuple_string(chi.exps); }

AbelianGroup::AbelianGroup(std::vector<int> factor_orders) : factors_(std::move(factor_orders)) {
  for (int d : factors_) {
    if (d < 1) throw Error("invalid_input", "group factor orders must be >= 1");
    order_ *= d;
    exponent_ = std::lcm(exponent_, static_cast<long>(d));
  }
}

GroupElement AbelianGroup::identity() const { return {std::vector<int>(factors_.size(), 0)}; }

GroupElement AbelianGroup::generator(std::size_t factor) const {
  if (factor >= factors_.size()) throw Error("invalid_input", "group generator index out of range");
  GroupElement g = identity();
  g.exps[factor] = factors_[factor] == 1 ? 0 : 1;
  return g;
}

GroupElement AbelianGroup::element(const std::vector<long>& exps) const {
  if (exps.size() != factors_.size()) {
    throw Error("group_mismatch", "group element has " + std::to_string(exps.size()) +
                                      " components, group has rank " +
                                      std::to_string(factors_.size()));
  }
  GroupElement g;
  g.exps.reserve(exps.size());
  for (std::size_t i = 0; i < exps.size(); ++i) {
    g.exps.push_back(static_cast<int>(mod(exps[i], factors_[i])));
  }
  return g;
}

Character AbelianGroup::character(const std::vector<long>& exps) const {
  GroupElement g = element(exps);
  return {std::move(g.exps)};
}

GroupElement AbelianGroup::multiply(const GroupElement& a, const GroupElement& b) const {
  require(a);
  require(b);
  GroupElement r = a;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    r.exps[i] = static_cast<int>((a.exps[i] + b.exps[i]) % factors_[i]);
  }
  return r;
}

GroupElement AbelianGroup::inverse(const GroupElement& a) const { return power(a, -1); }

GroupElement AbelianGroup::power(const GroupElement& a, long k) const {
  require(a);
  GroupElement r = a;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    r.exps[i] = static_cast<int>(mod(static_cast<long>(a.exps[i]) * k, factors_[i]));
  }
  return r;
}

long AbelianGroup::element_order(const GroupElement& a) const {
  require(a);
  long ord = 1;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const long d = factors_[i];
    ord = std::lcm(ord, d / std::gcd(d, static_cast<long>(a.exps[i])));
  }
  return ord;
}

std::vector<GroupElement> AbelianGroup::elements() const {
  std::vector<GroupElement> out;
  out.reserve(static_cast<std::size_t>(order_));
  GroupElement cur = identity();
  for (long k = 0; k < order_; ++k) {
    out.push_back(cur);
    for (std::size_t i = factors_.size(); i-- > 0;) {
      if (++cur.exps[i] < factors_[i]) break;
      cur.exps[i] = 0;
    }
  }
  return out;
}

std::vector<Character> AbelianGroup::characters() const {
  std::vector<Character> out;
  out.reserve(static_cast<std::size_t>(order_));
  for (auto& g : elements()) out.push_back({std::move(g.exps)});
  return out;
}

Character AbelianGroup::trivial_character() const { return {std::vector<int>(factors_.size(), 0)}; }

bool AbelianGroup::in_range(const std::vector<int>& exps) const {
  if (exps.size() != factors_.size()) return false;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] < 0 || exps[i] >= factors_[i]) return false;
  }
  return true;
}

bool AbelianGroup::contains(const GroupElement& g) const { return in_range(g.exps); }
bool AbelianGroup::contains(const Character& chi) const { return in_range(chi.exps); }

void AbelianGroup::require(const GroupElement& g) const {
  if (!contains(g)) throw Error("group_mismatch", "element " + to_string(g) + " is not in the group");
}

void AbelianGroup::require(const Character& chi) const {
  if (!contains(chi)) {
    throw Error("group_mismatch", "character " + to_string(chi) + " is not in the dual group");
  }
}

long char_eval_exponent(const AbelianGroup& G, const Character& chi, const GroupElement& g) {
  G.require(chi);
  G.require(g);
  const long L = G.exponent();
  long k = 0;
  for (std::size_t i = 0; i < G.rank(); ++i) {
    const long d = G.factor_orders()[i];
    k += static_cast<long>(chi.exps[i]) * g.exps[i] % d * (L / d);
  }
  return mod(k, L);
}

CycNumber char_eval(const AbelianGroup& G, const Character& chi, const GroupElement& g) {
  return CycNumber::root_of_unity(G.exponent(), char_eval_exponent(G, chi, g));
}

Character char_product(const AbelianGroup& G, const Character& chi, const Character& psi) {
  G.require(chi);
  G.require(psi);
  Character r = chi;
  for (std::size_t i = 0; i < G.rank(); ++i) {
    r.exps[i] = (chi.exps[i] + psi.exps[i]) % G.factor_orders()[i];
  }
  return r;
}

Character char_power(const AbelianGroup& G, const Character& chi, long k) {
  G.require(chi);
  Character r = chi;
  for (std::size_t i = 0; i < G.rank(); ++i) {
    r.exps[i] = static_cast<int>(mod(static_cast<long>(chi.exps[i]) * k, G.factor_orders()[i]));
  }
  return r;
}

Character char_inverse(const AbelianGroup& G, const Character& chi) { return char_power(G, chi, -1); }

Rational char_sum(const AbelianGroup& G, const Character& chi, const Character& psi) {
  const Character prod = char_product(G, chi, psi);
  CycNumber total(Rational(0), static_cast<unsigned>(G.exponent()));
  for (const auto& g : G.elements()) total += char_eval(G, prod, g);
  total /= CycNumber(G.order());
  auto r = total.as_rational();
  if (!r) throw Error("internal", "character sum is not rational");
  return *r;
}

GeneratedSubgroup subgroup_generated(const AbelianGroup& G, const std::vector<Character>& gens) {
  for (const auto& c : gens) G.require(c);
  GeneratedSubgroup out;
  std::map<Character, std::size_t> seen;
  std::deque<std::size_t> queue;

  auto visit = [&](Character c, std::vector<int> word) {
    if (seen.count(c)) return;
    seen.emplace(c, out.elements.size());
    queue.push_back(out.elements.size());
    out.elements.push_back(std::move(c));
    out.words.push_back(std::move(word));
  };

  visit(G.trivial_character(), std::vector<int>(gens.size(), 0));
  while (!queue.empty()) {
    const std::size_t k = queue.front();
    queue.pop_front();
    for (std::size_t j = 0; j < gens.size(); ++j) {
      std::vector<int> word = out.words[k];
      ++word[j];
      visit(char_product(G, out.elements[k], gens[j]), std::move(word));
    }
  }
  out.covers_all = static_cast<long>(out.elements.size()) == G.order();
  return out;
}

}  // namespace qls
