#pragma once

#include <map>
#include <utility>

#include "qlssmash/cyclotomic.hpp"

namespace qls {

/// Sparse linear combination over CycNumber, keyed by an ordered basis label.
/// Zero coefficients are never stored.
template <class Label>
class LinComb {
 public:
  using Terms = std::map<Label, CycNumber>;

  LinComb() = default;

  static LinComb term(Label label, CycNumber coeff = CycNumber(1)) {
    LinComb r;
    r.add(std::move(label), coeff);
    return r;
  }

  void add(const Label& label, const CycNumber& coeff) {
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(label, coeff);
    if (inserted) return;
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }

  void add(Label&& label, const CycNumber& coeff) {
    if (coeff.is_zero()) return;
    auto it = terms_.find(label);
    if (it == terms_.end()) {
      terms_.emplace(std::move(label), coeff);
      return;
    }
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  CycNumber coeff(const Label& label) const {
    auto it = terms_.find(label);
    return it == terms_.end() ? CycNumber() : it->second;
  }

  LinComb& operator+=(const LinComb& rhs) {
    for (const auto& [l, c] : rhs.terms_) add(l, c);
    return *this;
  }

  LinComb& operator-=(const LinComb& rhs) {
    for (const auto& [l, c] : rhs.terms_) add(l, -c);
    return *this;
  }

  LinComb& operator*=(const CycNumber& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [l, c] : terms_) c *= s;
    return *this;
  }

  friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
  friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
  friend LinComb operator*(const CycNumber& s, LinComb a) { return a *= s; }
  friend LinComb operator*(LinComb a, const CycNumber& s) { return a *= s; }

  friend bool operator==(const LinComb& a, const LinComb& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto it = b.terms_.begin();
    for (const auto& [l, c] : a.terms_) {
      if (!(l == it->first) || !(c == it->second)) return false;
      ++it;
    }
    return true;
  }

 private:
  Terms terms_;
};

}  // namespace qls
