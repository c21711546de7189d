#pragma once

// The smash product A # B on the basis u^a # x^b g with
// (r # h)(r' # h') = sum r (h_1 . r') # h_2 h'.

#include <compare>
#include <string>
#include <vector>

#include "qlssmash/checks.hpp"
#include "qlssmash/qas.hpp"

namespace qls {

struct SmashLabel {
  Monomial u;
  BLabel h;
  auto operator<=>(const SmashLabel&) const = default;
};

using SmashElement = LinComb<SmashLabel>;

std::string to_string(const SmashLabel& label);
std::string to_string(const SmashElement& e);

class SmashProduct {
 public:
  explicit SmashProduct(ModuleAlgebra module) : module_(std::move(module)) {}

  const ModuleAlgebra& module() const noexcept { return module_; }

  SmashElement one() const;
  /// r # 1
  SmashElement from_algebra(const QasElement& r) const;
  /// 1 # h
  SmashElement from_hopf(const BElement& h) const;
  /// r # h
  SmashElement make(const QasElement& r, const BElement& h) const;

  SmashElement multiply_basis(const SmashLabel& a, const SmashLabel& b) const;
  SmashElement multiply(const SmashElement& a, const SmashElement& b) const;

  /// Identity on A and on the x_i, g -> chi(g) g.
  SmashElement pi_chi(const Character& chi, const SmashElement& a) const;

 private:
  ModuleAlgebra module_;
};

/// Identity suite on A # B: (a) t_chi r t_0 = t_chi(r) t_0 for every character
/// and monomial r of degree <= sample_degree, (b) g r = g(r) g and
/// x_i r = g_i(r) x_i + x_i(r), (c) pi_chi multiplicativity and (d)
/// associativity on `samples` random pairs/triples, plus the two algebra
/// embeddings and left-integral absorption b r t_0 = b(r) t_0.
std::vector<IdentityCheck> verify_smash_identities(const ModuleAlgebra& module, int sample_degree = 3,
                                                   std::size_t samples = 200, unsigned long seed = 0x5eed);

}  // namespace qls
