#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_N).
//
// An element of conductor N is stored in the power basis 1, z, ..., z^(phi(N)-1)
// of Q[X]/Phi_N(X), so equality at a common conductor is a coefficient
// comparison. Operands of different conductors are lifted to the lcm.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qls {

using Rational = mpq_class;
using Integer = mpz_class;

/// Largest conductor the library will build a field for.
inline constexpr unsigned kMaxConductor = 1024;

/// Integer coefficients of Phi_n, lowest degree first. Cached, thread-safe.
const std::vector<Integer>& cyclotomic_polynomial(unsigned n);

/// Euler's phi.
unsigned euler_phi(unsigned n);

class CycNumber {
 public:
  CycNumber();
  CycNumber(long value);  // NOLINT(google-explicit-constructor)
  explicit CycNumber(const Rational& value, unsigned conductor = 1);

  /// zeta_n^k. Rejects n == 0.
  static CycNumber root_of_unity(long n, long k);

  /// Builds sum c_k X^k reduced modulo Phi_conductor; `coeffs` may be longer
  /// than phi(conductor).
  static CycNumber from_polynomial(unsigned conductor, std::vector<Rational> coeffs);

  unsigned conductor() const noexcept { return conductor_; }
  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

  bool is_zero() const;
  bool is_one() const;
  std::optional<Rational> as_rational() const;

  /// Image in Q(zeta_m); m must be a multiple of conductor().
  CycNumber embed(unsigned m) const;

  /// The same number written at conductor n, if it lies in Q(zeta_n).
  std::optional<CycNumber> restrict_to(unsigned n) const;

  /// Throws Error("division_by_zero") for zero.
  CycNumber inverse() const;
  CycNumber pow(long e) const;

  CycNumber operator-() const;
  CycNumber& operator+=(const CycNumber& rhs);
  CycNumber& operator-=(const CycNumber& rhs);
  CycNumber& operator*=(const CycNumber& rhs);
  CycNumber& operator/=(const CycNumber& rhs);

  friend CycNumber operator+(CycNumber a, const CycNumber& b) { return a += b; }
  friend CycNumber operator-(CycNumber a, const CycNumber& b) { return a -= b; }
  friend CycNumber operator*(CycNumber a, const CycNumber& b) { return a *= b; }
  friend CycNumber operator/(CycNumber a, const CycNumber& b) { return a /= b; }
  friend bool operator==(const CycNumber& a, const CycNumber& b);

  /// Human-readable power-basis expression, e.g. "1/2 - 3*z12^2".
  std::string to_string() const;

 private:
  CycNumber(unsigned conductor, std::vector<Rational> coeffs);

  unsigned conductor_;
  std::vector<Rational> coeffs_;
};

enum class ArithOp { Add, Sub, Mul, Div };

/// Exact field operation on a and b after embedding both into the field of
/// conductor lcm(N_a, N_b).
CycNumber cyc_arith(const CycNumber& a, const CycNumber& b, ArithOp op);

/// Least k >= 1 with a^k == 1, or nullopt when a is not a root of unity.
/// Throws Error("division_by_zero") for a == 0.
std::optional<long> mult_order(const CycNumber& a);

/// If a == zeta_n^k for some k, returns k in [0, n).
std::optional<long> root_exponent(const CycNumber& a, long n);

}  // namespace qls
