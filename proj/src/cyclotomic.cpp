#include "qlssmash/cyclotomic.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

#include "qlssmash/error.hpp"

namespace qls {

namespace {

using Poly = std::vector<Rational>;

struct Field {
  unsigned conductor = 1;
  unsigned phi = 1;
  std::vector<Integer> modulus;   // Phi_N, monic, degree phi
  std::vector<Poly> powers;       // zeta^k for k in [0, N), each of length phi
};

void trim(Poly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

// Reduces p in place modulo the monic integer polynomial `m` and pads to deg m.
void reduce_mod(Poly& p, const std::vector<Integer>& m) {
  const std::size_t deg = m.size() - 1;
  for (std::size_t top = p.size(); top-- > deg;) {
    if (sgn(p[top]) == 0) continue;
    const Rational c = p[top];
    const std::size_t shift = top - deg;
    for (std::size_t i = 0; i < deg; ++i) {
      if (sgn(m[i]) != 0) p[shift + i] -= c * m[i];
    }
    p[top] = 0;
  }
  p.resize(deg);
}

std::vector<Integer> compute_cyclotomic(unsigned n);

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

std::map<unsigned, std::vector<Integer>>& phi_cache() {
  static std::map<unsigned, std::vector<Integer>> c;
  return c;
}

std::map<unsigned, std::unique_ptr<Field>>& field_cache() {
  static std::map<unsigned, std::unique_ptr<Field>> c;
  return c;
}

// Exact division of integer polynomials by a monic divisor.
std::vector<Integer> divide_exact(std::vector<Integer> num, const std::vector<Integer>& den) {
  const std::size_t dd = den.size() - 1;
  std::vector<Integer> quot(num.size() - dd);
  for (std::size_t top = num.size(); top-- > dd;) {
    const Integer c = num[top];
    quot[top - dd] = c;
    if (sgn(c) == 0) continue;
    for (std::size_t i = 0; i <= dd; ++i) num[top - dd + i] -= c * den[i];
  }
  for (std::size_t i = 0; i < dd; ++i) {
    if (sgn(num[i]) != 0) throw Error("internal", "cyclotomic division left a remainder");
  }
  return quot;
}

// Caller holds cache_mutex().
const std::vector<Integer>& cyclotomic_locked(unsigned n) {
  auto& cache = phi_cache();
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  auto poly = compute_cyclotomic(n);
  return cache.emplace(n, std::move(poly)).first->second;
}

std::vector<Integer> compute_cyclotomic(unsigned n) {
  // X^n - 1 divided by Phi_d for every proper divisor d of n.
  std::vector<Integer> num(n + 1);
  num[0] = -1;
  num[n] = 1;
  for (unsigned d = 1; d < n; ++d) {
    if (n % d == 0) num = divide_exact(std::move(num), cyclotomic_locked(d));
  }
  return num;
}

const Field& field(unsigned n) {
  if (n == 0 || n > kMaxConductor) {
    throw Error("size_limit", "conductor " + std::to_string(n) + " outside [1, " +
                                  std::to_string(kMaxConductor) + "]");
  }
  std::lock_guard lock(cache_mutex());
  auto& cache = field_cache();
  if (auto it = cache.find(n); it != cache.end()) return *it->second;

  auto f = std::make_unique<Field>();
  f->conductor = n;
  f->modulus = cyclotomic_locked(n);
  f->phi = static_cast<unsigned>(f->modulus.size() - 1);
  f->powers.reserve(n);
  Poly cur(f->phi);
  cur[0] = 1;
  for (unsigned k = 0; k < n; ++k) {
    f->powers.push_back(cur);
    Poly next(f->phi + 1);
    for (unsigned i = 0; i < f->phi; ++i) next[i + 1] = cur[i];
    reduce_mod(next, f->modulus);
    cur = std::move(next);
  }
  return *cache.emplace(n, std::move(f)).first->second;
}

long mod(long a, long n) {
  long r = a % n;
  return r < 0 ? r + n : r;
}

// Polynomial helpers over Q for the extended Euclidean algorithm.
Poly poly_sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

void poly_divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  r = a;
  trim(r);
  q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, Rational(0));
  const Rational lead = b.back();
  while (!r.empty() && r.size() >= b.size()) {
    const std::size_t shift = r.size() - b.size();
    const Rational c = r.back() / lead;
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] -= c * b[i];
    r.pop_back();
    trim(r);
  }
  trim(q);
}

}  // namespace

const std::vector<Integer>& cyclotomic_polynomial(unsigned n) {
  if (n == 0) throw Error("invalid_input", "cyclotomic polynomial of order 0");
  return field(n).modulus;
}

unsigned euler_phi(unsigned n) {
  unsigned result = n;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

CycNumber::CycNumber() : conductor_(1), coeffs_(1) {}

CycNumber::CycNumber(long value) : conductor_(1), coeffs_{Rational(value)} {}

CycNumber::CycNumber(const Rational& value, unsigned conductor)
    : conductor_(conductor), coeffs_(field(conductor).phi) {
  coeffs_[0] = value;
  coeffs_[0].canonicalize();
}

CycNumber::CycNumber(unsigned conductor, std::vector<Rational> coeffs)
    : conductor_(conductor), coeffs_(std::move(coeffs)) {}

CycNumber CycNumber::root_of_unity(long n, long k) {
  if (n <= 0) throw Error("invalid_input", "root_of_unity requires N >= 1");
  const Field& f = field(static_cast<unsigned>(n));
  return CycNumber(f.conductor, f.powers[static_cast<std::size_t>(mod(k, n))]);
}

CycNumber CycNumber::from_polynomial(unsigned conductor, std::vector<Rational> coeffs) {
  const Field& f = field(conductor);
  if (coeffs.size() < f.phi) coeffs.resize(f.phi);
  reduce_mod(coeffs, f.modulus);
  return CycNumber(conductor, std::move(coeffs));
}

bool CycNumber::is_zero() const {
  for (const auto& c : coeffs_) {
    if (sgn(c) != 0) return false;
  }
  return true;
}

bool CycNumber::is_one() const {
  if (coeffs_[0] != 1) return false;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) != 0) return false;
  }
  return true;
}

std::optional<Rational> CycNumber::as_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) != 0) return std::nullopt;
  }
  return coeffs_[0];
}

CycNumber CycNumber::embed(unsigned m) const {
  if (m == conductor_) return *this;
  if (m == 0 || m % conductor_ != 0) {
    throw Error("invalid_input", "cannot embed conductor " + std::to_string(conductor_) +
                                     " into " + std::to_string(m));
  }
  const Field& target = field(m);
  const unsigned step = m / conductor_;
  Poly out(target.phi);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (sgn(coeffs_[k]) == 0) continue;
    const Poly& zk = target.powers[k * step];
    for (unsigned i = 0; i < target.phi; ++i) {
      if (sgn(zk[i]) != 0) out[i] += coeffs_[k] * zk[i];
    }
  }
  return CycNumber(m, std::move(out));
}

std::optional<CycNumber> CycNumber::restrict_to(unsigned n) const {
  if (n == conductor_) return *this;
  const unsigned big = std::lcm(n, conductor_);
  const CycNumber self = embed(big);
  const Field& small = field(n);
  const Field& large = field(big);
  const unsigned step = big / n;

  // Solve sum_k c_k * zeta_big^(k*step) == self for c in Q^phi(n).
  const unsigned rows = large.phi;
  const unsigned cols = small.phi;
  std::vector<Poly> aug(rows, Poly(cols + 1));
  for (unsigned k = 0; k < cols; ++k) {
    const Poly& col = large.powers[k * step];
    for (unsigned r = 0; r < rows; ++r) aug[r][k] = col[r];
  }
  for (unsigned r = 0; r < rows; ++r) aug[r][cols] = self.coeffs_[r];

  std::vector<int> pivot_col;
  unsigned row = 0;
  for (unsigned c = 0; c < cols && row < rows; ++c) {
    unsigned p = row;
    while (p < rows && sgn(aug[p][c]) == 0) ++p;
    if (p == rows) continue;
    std::swap(aug[p], aug[row]);
    const Rational inv = 1 / aug[row][c];
    for (unsigned j = c; j <= cols; ++j) aug[row][j] *= inv;
    for (unsigned r = 0; r < rows; ++r) {
      if (r == row || sgn(aug[r][c]) == 0) continue;
      const Rational f = aug[r][c];
      for (unsigned j = c; j <= cols; ++j) aug[r][j] -= f * aug[row][j];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++row;
  }
  for (unsigned r = row; r < rows; ++r) {
    if (sgn(aug[r][cols]) != 0) return std::nullopt;
  }
  Poly out(cols);
  for (unsigned r = 0; r < row; ++r) out[static_cast<unsigned>(pivot_col[r])] = aug[r][cols];
  return CycNumber(n, std::move(out));
}

CycNumber CycNumber::inverse() const {
  if (is_zero()) throw Error("division_by_zero", "inverse of zero in cyclotomic field");
  if (auto r = as_rational()) return CycNumber(1 / *r, conductor_);

  // Extended Euclid: s * a + t * Phi = gcd = const.
  const Field& f = field(conductor_);
  Poly a = coeffs_;
  trim(a);
  Poly m(f.modulus.begin(), f.modulus.end());
  Poly r0 = m, r1 = a;
  Poly s0, s1{Rational(1)};
  while (r1.size() > 1) {
    Poly q, rem;
    poly_divmod(r0, r1, q, rem);
    Poly s2 = poly_sub(s0, poly_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // Phi_N is irreducible, so the final remainder is a nonzero constant.
  const Rational g = r1.front();
  for (auto& c : s1) c /= g;
  return from_polynomial(conductor_, std::move(s1));
}

CycNumber CycNumber::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  CycNumber result(Rational(1), conductor_);
  CycNumber base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

CycNumber CycNumber::operator-() const {
  CycNumber r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

namespace {

void align(CycNumber& a, CycNumber& b) {
  if (a.conductor() == b.conductor()) return;
  const unsigned m = std::lcm(a.conductor(), b.conductor());
  a = a.embed(m);
  b = b.embed(m);
}

}  // namespace

CycNumber& CycNumber::operator+=(const CycNumber& rhs) {
  if (rhs.conductor_ != conductor_) {
    CycNumber b = rhs;
    align(*this, b);
    return *this += b;
  }
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  return *this;
}

CycNumber& CycNumber::operator-=(const CycNumber& rhs) {
  if (rhs.conductor_ != conductor_) {
    CycNumber b = rhs;
    align(*this, b);
    return *this -= b;
  }
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  return *this;
}

CycNumber& CycNumber::operator*=(const CycNumber& rhs) {
  if (rhs.conductor_ != conductor_) {
    CycNumber b = rhs;
    align(*this, b);
    return *this *= b;
  }
  if (coeffs_.size() == 1) {
    coeffs_[0] *= rhs.coeffs_[0];
    return *this;
  }
  const std::size_t n = coeffs_.size();
  Poly prod(2 * n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(rhs.coeffs_[j]) != 0) prod[i + j] += coeffs_[i] * rhs.coeffs_[j];
    }
  }
  reduce_mod(prod, field(conductor_).modulus);
  coeffs_ = std::move(prod);
  return *this;
}

CycNumber& CycNumber::operator/=(const CycNumber& rhs) { return *this *= rhs.inverse(); }

bool operator==(const CycNumber& a, const CycNumber& b) {
  if (a.conductor_ == b.conductor_) return a.coeffs_ == b.coeffs_;
  CycNumber x = a, y = b;
  align(x, y);
  return x.coeffs_ == y.coeffs_;
}

std::string CycNumber::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const Rational& c = coeffs_[k];
    if (sgn(c) == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) out << "-";
    } else {
      out << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      out << mag.get_str();
      continue;
    }
    if (mag != 1) out << mag.get_str() << "*";
    out << "z" << conductor_;
    if (k > 1) out << "^" << k;
  }
  if (first) out << "0";
  return out.str();
}

CycNumber cyc_arith(const CycNumber& a, const CycNumber& b, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
    case ArithOp::Div: return a / b;
  }
  throw Error("internal", "unknown arithmetic op");
}

std::optional<long> mult_order(const CycNumber& a) {
  if (a.is_zero()) throw Error("division_by_zero", "mult_order of zero");
  // Roots of unity in Q(zeta_N) have order dividing lcm(N, 2).
  const long n = a.conductor();
  const long bound = (n % 2 == 0) ? n : 2 * n;
  if (!a.pow(bound).is_one()) return std::nullopt;
  for (long d = 1; d <= bound; ++d) {
    if (bound % d == 0 && a.pow(d).is_one()) return d;
  }
  return bound;
}

std::optional<long> root_exponent(const CycNumber& a, long n) {
  if (n <= 0) throw Error("invalid_input", "root_exponent requires n >= 1");
  if (a.is_zero()) return std::nullopt;
  if (!a.pow(n).is_one()) return std::nullopt;
  for (long k = 0; k < n; ++k) {
    if (CycNumber::root_of_unity(n, k) == a) return k;
  }
  return std::nullopt;
}

}  // namespace qls
