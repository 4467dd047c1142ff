#include "branchmod/series.hpp"

#include <algorithm>

#include "branchmod/error.hpp"

namespace branchmod {

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

TruncatedSeries::TruncatedSeries(Int precision)
    : coeffs_(static_cast<std::size_t>(std::max<Int>(precision, 0))) {}

TruncatedSeries TruncatedSeries::monomial(const Rational& c, Int exponent, Int precision) {
  TruncatedSeries s(precision);
  if (exponent < precision) s.coeffs_[static_cast<std::size_t>(exponent)] = c;
  return s;
}

const Rational& TruncatedSeries::coeff(Int k) const {
  if (k < 0 || k >= precision())
    fail(ErrorCode::ZeroToPrecision, "coefficient of t^" + std::to_string(k) + " is not known");
  return coeffs_[static_cast<std::size_t>(k)];
}

void TruncatedSeries::set_coeff(Int k, const Rational& c) {
  if (k < 0 || k >= precision())
    fail(ErrorCode::ZeroToPrecision, "t^" + std::to_string(k) + " is beyond the precision");
  coeffs_[static_cast<std::size_t>(k)] = c;
}

std::optional<Int> TruncatedSeries::order() const {
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    if (sgn(coeffs_[k]) != 0) return static_cast<Int>(k);
  return std::nullopt;
}

const Rational& TruncatedSeries::leading() const {
  const auto o = order();
  if (!o) fail(ErrorCode::ZeroToPrecision, "series vanishes to its precision");
  return coeffs_[static_cast<std::size_t>(*o)];
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& rhs) {
  if (rhs.precision() < precision()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& rhs) {
  if (rhs.precision() < precision()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(const Rational& c) {
  for (auto& x : coeffs_) x *= c;
  return *this;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  const Int prec = std::min(a.precision(), b.precision());
  TruncatedSeries out(prec);
  Rational tmp;
  for (Int i = 0; i < prec; ++i) {
    const auto& ai = a.coeffs_[static_cast<std::size_t>(i)];
    if (sgn(ai) == 0) continue;
    for (Int j = 0; i + j < prec; ++j) {
      const auto& bj = b.coeffs_[static_cast<std::size_t>(j)];
      if (sgn(bj) == 0) continue;
      tmp = ai * bj;
      out.coeffs_[static_cast<std::size_t>(i + j)] += tmp;
    }
  }
  return out;
}

TruncatedSeries TruncatedSeries::shifted(Int k) const {
  TruncatedSeries out(precision() + k);
  for (Int i = 0; i < precision(); ++i) out.coeffs_[static_cast<std::size_t>(i + k)] = coeffs_[static_cast<std::size_t>(i)];
  return out;
}

TruncatedSeries TruncatedSeries::derivative() const {
  TruncatedSeries out(precision() - 1);
  for (Int i = 1; i < precision(); ++i)
    out.coeffs_[static_cast<std::size_t>(i - 1)] = coeffs_[static_cast<std::size_t>(i)] * static_cast<long>(i);
  return out;
}

TruncatedSeries TruncatedSeries::euler_derivative() const {
  TruncatedSeries out(precision());
  for (Int i = 1; i < precision(); ++i)
    out.coeffs_[static_cast<std::size_t>(i)] = coeffs_[static_cast<std::size_t>(i)] * static_cast<long>(i);
  return out;
}

TruncatedSeries TruncatedSeries::truncated(Int new_precision) const {
  TruncatedSeries out = *this;
  if (new_precision < precision()) out.coeffs_.resize(static_cast<std::size_t>(new_precision));
  return out;
}

TruncatedSeries TruncatedSeries::pow(Int k) const {
  TruncatedSeries out = monomial(Rational(1), 0, precision());
  for (Int i = 0; i < k; ++i) out = out * *this;
  return out;
}

void TruncatedSeries::subtract_shifted(const Rational& c, Int k, const TruncatedSeries& b) {
  const Int prec = std::min(precision(), b.precision() + k);
  coeffs_.resize(static_cast<std::size_t>(prec));
  Rational tmp;
  for (Int i = k; i < prec; ++i) {
    const auto& bi = b.coeffs_[static_cast<std::size_t>(i - k)];
    if (sgn(bi) == 0) continue;
    tmp = c * bi;
    coeffs_[static_cast<std::size_t>(i)] -= tmp;
  }
}

void trim(Polynomial& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
  if (a.empty() || b.empty()) return {};
  Polynomial out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  trim(out);
  return out;
}

void poly_add_scaled(Polynomial& a, const Rational& c, Int shift, const Polynomial& b) {
  if (a.size() < b.size() + static_cast<std::size_t>(shift)) a.resize(b.size() + static_cast<std::size_t>(shift));
  for (std::size_t j = 0; j < b.size(); ++j) a[j + static_cast<std::size_t>(shift)] += c * b[j];
  trim(a);
}

TruncatedSeries substitute_power(const Polynomial& p, Int n, Int precision) {
  TruncatedSeries out(precision);
  for (std::size_t j = 0; j < p.size(); ++j) {
    const Int e = static_cast<Int>(j) * n;
    if (e >= precision) break;
    out.set_coeff(e, p[j]);
  }
  return out;
}

}  // namespace branchmod
