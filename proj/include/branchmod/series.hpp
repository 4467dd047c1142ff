#pragma once

// Power series in t with exact rational coefficients, known modulo t^N.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "branchmod/pair_class.hpp"

namespace branchmod {

using Rational = mpq_class;

std::string to_string(const Rational& q);  // "p/q", or "p" when q = 1

// A series known modulo t^precision: coefficients of t^0 .. t^{precision-1}
// are exact, nothing is claimed beyond.
class TruncatedSeries {
 public:
  TruncatedSeries() = default;
  explicit TruncatedSeries(Int precision);

  static TruncatedSeries monomial(const Rational& c, Int exponent, Int precision);

  Int precision() const { return static_cast<Int>(coeffs_.size()); }
  const Rational& coeff(Int k) const;
  void set_coeff(Int k, const Rational& c);

  // nullopt when the series vanishes to the known precision (order >= N).
  std::optional<Int> order() const;
  // Coefficient at order(); requires a nonzero series.
  const Rational& leading() const;
  bool is_zero() const { return !order().has_value(); }

  TruncatedSeries& operator+=(const TruncatedSeries& rhs);
  TruncatedSeries& operator-=(const TruncatedSeries& rhs);
  TruncatedSeries& operator*=(const Rational& c);
  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(TruncatedSeries a, const Rational& c) { return a *= c; }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);

  // Multiplication by t^k; raises the precision by k.
  TruncatedSeries shifted(Int k) const;
  // d/dt; lowers the precision by one.
  TruncatedSeries derivative() const;
  // t d/dt; keeps the precision.
  TruncatedSeries euler_derivative() const;
  TruncatedSeries truncated(Int precision) const;
  TruncatedSeries pow(Int k) const;

  // a - c t^k b without materialising the shifted copy.
  void subtract_shifted(const Rational& c, Int k, const TruncatedSeries& b);

 private:
  std::vector<Rational> coeffs_;
};

// Polynomial in one variable (index = degree), exact rational coefficients.
using Polynomial = std::vector<Rational>;

void trim(Polynomial& p);
Polynomial poly_mul(const Polynomial& a, const Polynomial& b);
void poly_add_scaled(Polynomial& a, const Rational& c, Int shift, const Polynomial& b);
// p(t^n) as a series.
TruncatedSeries substitute_power(const Polynomial& p, Int n, Int precision);

}  // namespace branchmod
