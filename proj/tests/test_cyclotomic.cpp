#include <doctest.h>

#include <random>

#include "support.hpp"

using namespace qls;
using qls::test::numeric;
using qls::test::zeta;

namespace {

bool close(std::complex<long double> a, std::complex<long double> b) { return std::abs(a - b) < 1e-9L; }

// Integer polynomial evaluation at a complex point, lowest degree first.
std::complex<long double> eval_poly(const std::vector<Integer>& c, std::complex<long double> z) {
  std::complex<long double> acc = 0;
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + static_cast<long double>(c[k].get_d());
  return acc;
}

// Pool of random elements at mixed conductors.
std::vector<CycNumber> pool(std::mt19937& rng, std::size_t count) {
  const std::vector<long> conductors = {1, 2, 3, 4, 5, 6, 8, 9, 12, 15};
  std::uniform_int_distribution<long> pick(0, conductors.size() - 1), num(-7, 7), den(1, 5), pw(0, 40);
  std::vector<CycNumber> out;
  for (std::size_t s = 0; s < count; ++s) {
    CycNumber a;
    for (int t = 0; t < 3; ++t) {
      const long n = conductors[pick(rng)];
      a += CycNumber(Rational(num(rng), den(rng))) * zeta(n, pw(rng));
    }
    out.push_back(a);
  }
  return out;
}

}  // namespace

TEST_SUITE("cyclotomic") {
  TEST_CASE("root_of_unity examples") {
    CHECK(zeta(4).pow(2) == CycNumber(-1));
    CHECK(zeta(3) + zeta(3, 2) == CycNumber(-1));
    CHECK(zeta(6, 3) == CycNumber(-1));
    CHECK(zeta(7, 0).is_one());
    CHECK(zeta(5, -1) == zeta(5, 4));
    CHECK_THROWS_AS(CycNumber::root_of_unity(0, 1), Error);
  }

  TEST_CASE("arithmetic examples") {
    CHECK(cyc_arith(zeta(8), zeta(8, 7), ArithOp::Mul).is_one());
    const CycNumber a = CycNumber(Rational(3, 4)) + zeta(5, 2);
    CHECK(cyc_arith(a, CycNumber(), ArithOp::Add) == a);
    CHECK(cyc_arith(CycNumber(1), zeta(3), ArithOp::Div) == zeta(3, 2));
    CHECK(cyc_arith(a, a, ArithOp::Sub).is_zero());
    CHECK_THROWS_AS(cyc_arith(a, CycNumber(), ArithOp::Div), Error);
    try {
      (void)CycNumber().inverse();
      FAIL("no throw");
    } catch (const Error& e) {
      CHECK(e.code() == "division_by_zero");
    }
  }

  TEST_CASE("mult_order examples") {
    CHECK(mult_order(zeta(12, 4)) == 3);
    CHECK(mult_order(CycNumber(1)) == 1);
    CHECK_FALSE(mult_order(CycNumber(2)).has_value());
    CHECK(mult_order(CycNumber(-1)) == 2);
    CHECK(mult_order(-zeta(3)) == 6);
    CHECK_FALSE(mult_order(zeta(5) + zeta(5, 2)).has_value());
    CHECK_THROWS_AS(mult_order(CycNumber()), Error);
  }

  TEST_CASE("mult_order agrees with gcd formula") {
    for (long n = 1; n <= 40; ++n) {
      for (long k = 0; k < n; ++k) CHECK(mult_order(zeta(n, k)) == n / std::gcd(n, k));
    }
  }

  TEST_CASE("Phi_N vanishes at zeta_N") {
    for (unsigned n = 1; n <= 60; ++n) {
      const auto& phi = cyclotomic_polynomial(n);
      CHECK(phi.size() == euler_phi(n) + 1);
      std::vector<Rational> c(phi.begin(), phi.end());
      CHECK(CycNumber::from_polynomial(n, c).is_zero());
      const long double pi = 3.141592653589793238462643383279502884L;
      CHECK(std::abs(eval_poly(phi, std::polar(1.0L, 2 * pi / n))) < 1e-8L);
    }
  }

  TEST_CASE("field axioms on a random pool, exact and against complex values") {
    std::mt19937 rng(7);
    const auto xs = pool(rng, 24);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const CycNumber& a = xs[i];
      const CycNumber& b = xs[(i + 5) % xs.size()];
      const CycNumber& c = xs[(i + 11) % xs.size()];
      CHECK((a + b) + c == a + (b + c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      CHECK((a * b) * c == a * (b * c));
      CHECK(close(numeric(a * b), numeric(a) * numeric(b)));
      CHECK(close(numeric(a + b), numeric(a) + numeric(b)));
      if (!a.is_zero()) {
        CHECK((a * a.inverse()).is_one());
        CHECK(close(numeric(b / a), numeric(b) / numeric(a)));
      }
    }
  }

  TEST_CASE("embedding round trip and restriction") {
    std::mt19937 rng(11);
    for (const auto& a : pool(rng, 20)) {
      for (unsigned k : {2u, 3u, 5u}) {
        const unsigned m = a.conductor() * k;
        const CycNumber big = a.embed(m);
        CHECK(big.conductor() == m);
        CHECK(big == a);
        const auto back = big.restrict_to(a.conductor());
        REQUIRE(back.has_value());
        CHECK(back->conductor() == a.conductor());
        CHECK(*back == a);
        CHECK(close(numeric(big), numeric(a)));
      }
    }
    CHECK_FALSE(zeta(3).embed(6).restrict_to(2).has_value());
    CHECK(CycNumber(Rational(5, 3)).embed(12).as_rational() == Rational(5, 3));
  }

  TEST_CASE("equality is canonical across conductors") {
    CHECK(zeta(6) == -zeta(3, 2));
    CHECK(zeta(4) * zeta(4) == CycNumber(-1));
    CHECK(zeta(12, 3) == zeta(4));
    CHECK_FALSE(zeta(3) == zeta(3, 2));
  }

  TEST_CASE("root_exponent") {
    CHECK(root_exponent(zeta(3, 2), 6) == 4);
    CHECK(root_exponent(CycNumber(1), 5) == 0);
    CHECK_FALSE(root_exponent(zeta(4), 6).has_value());
    CHECK_FALSE(root_exponent(CycNumber(2), 6).has_value());
  }
}
