#include <doctest.h>

#include "branchmod/error.hpp"
#include "branchmod/series.hpp"

using namespace branchmod;

namespace {

TruncatedSeries from(std::vector<long> coeffs, Int precision) {
  TruncatedSeries s(precision);
  for (std::size_t i = 0; i < coeffs.size(); ++i) s.set_coeff(static_cast<Int>(i), Rational(coeffs[i]));
  return s;
}

}  // namespace

TEST_CASE("orders and the zero-to-precision marker") {
  TruncatedSeries z(10);
  CHECK_FALSE(z.order().has_value());
  CHECK(z.is_zero());
  CHECK_THROWS_AS(z.leading(), Error);
  const auto m = TruncatedSeries::monomial(Rational(3, 2), 4, 10);
  CHECK(m.order() == 4);
  CHECK(m.leading() == Rational(3, 2));
  CHECK(TruncatedSeries::monomial(Rational(1), 12, 10).is_zero());
  CHECK_THROWS_AS(m.coeff(10), Error);
}

TEST_CASE("arithmetic keeps the smaller precision") {
  const auto a = from({1, 2, 3}, 8);
  const auto b = from({0, 1}, 5);
  CHECK((a + b).precision() == 5);
  CHECK((a - b).precision() == 5);
  CHECK((a * b).precision() == 5);
  const auto p = a * b;
  CHECK(p.coeff(1) == 1);
  CHECK(p.coeff(2) == 2);
  CHECK(p.coeff(3) == 3);
  CHECK(p.coeff(4) == 0);
  CHECK((a * Rational(1, 3)).coeff(2) == 1);
}

TEST_CASE("shift and derivatives") {
  const auto a = from({0, 0, 5, 7}, 6);
  const auto s = a.shifted(3);
  CHECK(s.precision() == 9);
  CHECK(s.order() == 5);
  const auto d = a.derivative();
  CHECK(d.precision() == 5);
  CHECK(d.coeff(1) == 10);
  CHECK(d.coeff(2) == 21);
  const auto e = a.euler_derivative();
  CHECK(e.precision() == 6);
  CHECK(e.coeff(2) == 10);
  CHECK(e.coeff(3) == 21);
  CHECK(a.truncated(3).precision() == 3);
  CHECK(a.pow(2).order() == 4);
}

TEST_CASE("subtract_shifted matches the explicit form") {
  auto a = from({0, 0, 0, 0, 4, 1, 9}, 10);
  const auto b = from({0, 2, 3}, 10);
  auto expected = a - b.shifted(3) * Rational(2);
  a.subtract_shifted(Rational(2), 3, b);
  for (Int k = 0; k < 10; ++k) CHECK(a.coeff(k) == expected.coeff(k));
  CHECK(a.order() == 5);
}

TEST_CASE("polynomials") {
  Polynomial p{Rational(1), Rational(1)};
  const auto sq = poly_mul(p, p);
  CHECK(sq == Polynomial{Rational(1), Rational(2), Rational(1)});
  Polynomial q{Rational(0), Rational(1)};
  poly_add_scaled(q, Rational(-1), 1, Polynomial{Rational(1)});
  CHECK(q.empty());
  const auto s = substitute_power(sq, 3, 7);
  CHECK(s.coeff(0) == 1);
  CHECK(s.coeff(3) == 2);
  CHECK(s.coeff(6) == 1);
  CHECK(to_string(Rational(-3, 6)) == "-1/2");
  CHECK(to_string(Rational(4)) == "4");
}
