#include <doctest.h>

#include <map>
#include <set>

#include "branchmod/apery.hpp"
#include "branchmod/error.hpp"
#include "branchmod/oracle.hpp"
#include "support/reference.hpp"

using namespace branchmod;

namespace {

SpecializedCurve cusp_467() {
  const auto pair = plain_branch(4, {6, 7});
  return specialize_with(pair, {{6, Rational(1)}, {7, Rational(1)}}, auto_precision(pair));
}

FormCombination combination(std::vector<MonomialForm> gens, std::vector<Polynomial> coeffs) {
  FormCombination f;
  f.generators = std::move(gens);
  f.coefficients = std::move(coeffs);
  return f;
}

}  // namespace

TEST_CASE("specialization is deterministic and generic") {
  const auto pair = plain_branch(6, {9, 10});
  const auto a = specialize(pair, 7);
  const auto b = specialize(pair, 7);
  CHECK(a.coefficients == b.coefficients);
  CHECK(a.precision == auto_precision(pair));
  CHECK(a.precision == 42 + 19 + 12);
  CHECK(sgn(a.coefficients.at(9)) != 0);
  CHECK(sgn(a.coefficients.at(10)) != 0);
  const auto ladder = exponent_ladder(pair);
  for (const auto& [beta, c] : a.coefficients) {
    CHECK(ladder.contains(beta));
    CHECK(beta < a.precision);
    CHECK(abs(c) <= 9);
    CHECK(sgn(c) != 0);
  }
  CHECK(specialize(pair, 8).coefficients != a.coefficients);
  // doubling keeps the coefficients already drawn
  const auto big = a.with_precision(2 * a.precision);
  for (const auto& [beta, c] : a.coefficients) CHECK(big.coefficients.at(beta) == c);
  CHECK(a.x().order() == 6);
}

TEST_CASE("fixture override") {
  const auto c = cusp_467();
  const auto y = c.y();
  CHECK(y.order() == 6);
  CHECK(y.coeff(7) == 1);
  CHECK(y.coeff(8) == 0);
  CHECK_THROWS_AS(specialize_with(plain_branch(4, {6, 7}), {{5, Rational(1)}}, 20), Error);
  CHECK_THROWS_AS(specialize_with(plain_branch(4, {6, 7}), {{6, Rational(1)}}, 20), Error);
}

TEST_CASE("pullback orders on (t^4, t^6 + t^7)") {
  const auto c = cusp_467();
  CHECK(pullback_order(c, {0, 0, Differential::Dx}) == 4);
  CHECK(pullback_order(c, {0, 1, Differential::Dx}) == 10);
  const auto f = combination({{0, 1, Differential::Dx}, {1, 0, Differential::Dy}}, {{Rational(3)}, {Rational(-2)}});
  CHECK(pullback_order(c, f) == 11);
}

TEST_CASE("explicit Apery forms against integer polynomials") {
  // x = t^4, y = t^6 + t^7; the forms dx, dy, 3y dx - 2x dy, d(y^2 - x^3)
  using reference::Poly;
  const Poly x = reference::monomial(1, 4);
  const Poly y = reference::add(reference::monomial(1, 6), reference::monomial(1, 7));
  const Poly dx = reference::euler(x);
  const Poly dy = reference::euler(y);
  CHECK(reference::order(dx) == 4);
  CHECK(reference::order(dy) == 6);
  const Poly third = reference::add(reference::mul(reference::monomial(3, 0), reference::mul(y, dx)),
                                    reference::mul(x, dy), -2);
  CHECK(reference::order(third) == 11);
  const Poly f = reference::add(reference::mul(y, y), reference::mul(x, reference::mul(x, x)), -1);
  CHECK(reference::order(reference::euler(f)) == 13);

  const auto result = module_apery(cusp_467(), 0, 0);
  CHECK(result.apery == std::vector<Int>{4, 6, 11, 13});
}

TEST_CASE("module Apery sets") {
  CHECK(module_apery(cusp_467(), 0, 0).apery == std::vector<Int>{4, 6, 11, 13});
  CHECK(module_apery(specialize(plain_branch(2, {3}), 1), 0, 0).apery == std::vector<Int>{2, 3});
  const auto pair = plain_branch(6, {9, 10});
  std::set<std::vector<Int>> seen;
  for (std::uint64_t s : {1u, 2u, 3u}) seen.insert(module_apery(specialize(pair, s), 0, 0).apery);
  CHECK(seen.size() == 1);
  CHECK(*seen.begin() == semimodule(pair).sorted_apery());
}

TEST_CASE("returned forms realize their orders") {
  for (const auto& pair : {plain_branch(4, {6, 7}), plain_branch(6, {9, 10}), validate_pair(4, {6, 9}, 4, 1, 1),
                           validate_pair(2, {5}, 4, 0, 1)}) {
    const auto curve = specialize(pair, 5);
    const auto result = module_apery(curve, pair.delta_x(), pair.delta_y());
    REQUIRE(static_cast<Int>(result.forms.size()) == pair.n());
    std::set<Int> residues;
    for (std::size_t i = 0; i < result.forms.size(); ++i) {
      CHECK(result.forms[i].order == result.apery[i]);
      CHECK(pullback_order(curve, result.forms[i]) == result.apery[i]);
      residues.insert(result.apery[i] % pair.n());
    }
    CHECK(static_cast<Int>(residues.size()) == pair.n());
  }
}

TEST_CASE("order additivity") {
  const auto curve = specialize(plain_branch(4, {6, 9}), 3);
  for (Int q = 0; q < 4; ++q)
    for (auto d : {Differential::Dx, Differential::Dy}) {
      const Int base = pullback_order(curve, {0, q, d});
      for (Int k = 1; k <= 3; ++k) CHECK(pullback_order(curve, {k, q, d}) == base + 4 * k);
    }
}

TEST_CASE("semigroup witness through approximate roots") {
  for (const auto& pair : {plain_branch(6, {9, 10}), plain_branch(4, {6, 7}), plain_branch(8, {12, 14, 15}),
                           plain_branch(6, {8, 9})}) {
    CAPTURE(pair.to_string());
    const auto sgd = derive_invariants(pair);
    const auto curve = specialize(pair, 2);
    std::vector<TruncatedSeries> roots{curve.x()};
    for (int l = 1; l <= pair.g(); ++l) {
      roots.push_back(approximate_root_series(curve, l));
      CHECK(roots.back().order() == sgd.bar_betas[static_cast<std::size_t>(l - 1)]);
    }
    const auto gens = sgd.generators();
    // products f_0^k0 ... f_g^kg with exponents in {0, 1, 2}
    std::vector<int> k(roots.size(), 0);
    for (;;) {
      std::size_t i = 0;
      while (i < k.size() && k[i] == 2) k[i++] = 0;
      if (i == k.size()) break;
      ++k[i];
      TruncatedSeries f = TruncatedSeries::monomial(Rational(1), 0, curve.precision);
      Int expected = 0;
      for (std::size_t j = 0; j < k.size(); ++j) {
        f = f * roots[j].pow(k[j]);
        expected += k[j] * gens[j];
      }
      if (expected >= curve.precision) continue;
      CHECK(differential_order(f) == expected);
      CHECK(semigroup_contains(sgd, expected));
    }
  }
}

TEST_CASE("verify_class reports") {
  const auto r = verify_class(plain_branch(4, {6, 7}), {1, 2, 3});
  CHECK(r.all_match());
  CHECK(r.expected == std::vector<Int>{4, 6, 11, 13});
  for (const auto& s : r.seeds) CHECK(s.oracle == std::vector<Int>{4, 6, 11, 13});
  CHECK(verify_class(plain_branch(2, {3}), {1}).seeds.front().oracle == std::vector<Int>{2, 3});
  const auto dy = verify_class(validate_pair(2, {5}, 4, 0, 1), {1});
  CHECK(dy.all_match());
  CHECK(dy.seeds.front().oracle == std::vector<Int>{4, 7});
}

TEST_CASE("precision failures") {
  const auto curve = specialize(plain_branch(6, {9, 10}), 1, 12);
  CHECK_THROWS_AS(pullback_order(curve, {0, 3, Differential::Dy}), Error);
  ReductionOptions once;
  once.allow_retry = false;
  try {
    module_apery(curve, 0, 0, once);
    FAIL("expected PrecisionExhausted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PrecisionExhausted);
  }
  // one doubling is not enough from precision 12 either
  CHECK_THROWS_AS(module_apery(curve, 0, 0), Error);
  const auto report = verify_class(plain_branch(6, {9, 10}), {1}, 12);
  CHECK_FALSE(report.all_match());
  CHECK_FALSE(report.seeds.front().error.empty());
}

TEST_CASE("shuffled reduction order") {
  for (const auto& pair : {plain_branch(4, {6, 7}), plain_branch(6, {9, 10}), validate_pair(6, {8, 9}, 6, 1, 1)}) {
    const auto curve = specialize(pair, 1);
    const auto plain = module_apery(curve, pair.delta_x(), pair.delta_y()).apery;
    for (std::uint64_t s : {11u, 12u, 13u}) {
      ReductionOptions opts;
      opts.shuffle_seed = s;
      CHECK(module_apery(curve, pair.delta_x(), pair.delta_y(), opts).apery == plain);
    }
  }
}

TEST_CASE("module generators") {
  const auto plain = module_generators(2, 0, 0);
  CHECK(plain.size() == 4);
  CHECK(plain[1] == MonomialForm{0, 0, Differential::Dy});
  const auto x_div = module_generators(2, 1, 0);
  CHECK(x_div[1] == MonomialForm{1, 0, Differential::Dy});
  const auto y_div = module_generators(2, 0, 1);
  CHECK(y_div[0] == MonomialForm{0, 0, Differential::Dy});
  CHECK(y_div[1] == MonomialForm{0, 1, Differential::Dx});
  CHECK(to_string(MonomialForm{2, 1, Differential::Dy}) == "x^2 y dy");
}
