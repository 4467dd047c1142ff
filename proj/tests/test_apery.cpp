#include <doctest.h>

#include "branchmod/apery.hpp"
#include "branchmod/error.hpp"
#include "branchmod/harness.hpp"

using namespace branchmod;

TEST_CASE("Apery orders of the fixtures") {
  CHECK(apery_orders(plain_branch(2, {3})).apery() == std::vector<Int>{2, 3});
  CHECK(apery_orders(plain_branch(4, {6, 7})).apery() == std::vector<Int>{4, 6, 11, 13});
  CHECK(apery_orders(validate_pair(2, {5}, 4, 0, 1)).apery() == std::vector<Int>{4, 7});
  CHECK(apery_orders(plain_branch(6, {9, 10})).apery() == std::vector<Int>{6, 9, 16, 19, 26, 29});
}

TEST_CASE("tables have 2n entries and keep the leading exponents") {
  const auto t = apery_orders(plain_branch(4, {6, 7}));
  CHECK(t.a.size() == 8);
  CHECK(t.b.size() == 8);
  CHECK(t.order(1) == 4);
  CHECK(t.leading(1) == 4);
  CHECK(t.leading(2) == 6);
}

TEST_CASE("unsuitable presentations are refused") {
  CHECK_THROWS_AS(apery_orders(validate_pair(4, {2, 3}, 2, 1, 0)), Error);
  try {
    apery_orders(validate_pair(4, {2, 3}, 2, 1, 0));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsuitablePresentation);
  }
}

TEST_CASE("updates add exactly one ladder gap") {
  for (const auto& pair : random_classes(30, 3)) {
    const auto ladder = exponent_ladder(pair);
    AperyOptions options;
    int updates = 0;
    options.on_update = [&](const AperyUpdate& u, const AperyTable&) {
      ++updates;
      CHECK(u.k < u.s);
      CHECK(u.new_b == next_exponent(ladder, u.d));
      CHECK(u.new_a - u.old_a == u.new_b - u.d);
    };
    apery_orders(pair, options);
    CHECK(updates > 0);
  }
}

TEST_CASE("shuffled conflict order gives the same Apery set") {
  for (const auto& pair : random_classes(40, 9))
    for (std::uint64_t seed : {1u, 2u, 3u}) CHECK(check_shuffled_apery(pair, seed).ok);
}

TEST_CASE("semimodule membership") {
  const auto sm = semimodule(plain_branch(4, {6, 7}));
  CHECK(sm.contains(11));
  CHECK_FALSE(sm.contains(7));
  CHECK(sm.provenance() == Provenance::Plain);
  CHECK(sm.members_upto(12) == std::vector<Int>{4, 6, 8, 10, 11, 12});

  const auto cusp = semimodule(plain_branch(2, {3}));
  CHECK(cusp.members_upto(6) == std::vector<Int>{2, 3, 4, 5, 6});

  CHECK(semimodule(plain_branch(6, {9, 10})).contains(19));
  CHECK_THROWS_AS(Semimodule(4, {4, 8, 11, 13}, Provenance::Plain), Error);
}

TEST_CASE("singular semimodules") {
  CHECK(singular_semimodule(plain_branch(4, {6, 7})).sorted_apery() == std::vector<Int>{8, 10, 11, 13});
  CHECK(singular_semimodule(plain_branch(2, {3})).sorted_apery() == std::vector<Int>{4, 5});
  CHECK(singular_semimodule(validate_pair(2, {5}, 4, 0, 1)).sorted_apery() == std::vector<Int>{6, 7});
  const auto both = validate_pair(4, {6, 7}, 4, 1, 1);
  CHECK(singular_semimodule(both).sorted_apery() == semimodule(both).sorted_apery());
  CHECK(singular_semimodule(both).provenance() == Provenance::Singular);
}

TEST_CASE("semimodule of a smooth branch") {
  CHECK(semimodule_any(validate_pair(1, {}, 1, 1, 0, true)).apery_values() == std::vector<Int>{1});
  CHECK(semimodule_any(validate_pair(1, {}, 3, 1, 1, true)).apery_values() == std::vector<Int>{4});
}

TEST_CASE("cofinite differences") {
  const CofiniteSet same({8, 10, 11}, 12, true);
  CHECK(cofinite_diff_count(same, same) == 0);

  const CofiniteSet a({4}, 6, true);  // all >= 4 except 5
  const CofiniteSet b({}, 6, true);   // all >= 6
  CHECK(cofinite_diff_count(a, b) == 1);
  CHECK(cofinite_difference(a, b) == std::vector<Int>{4});

  const CofiniteSet c({2, 4}, 5, true);
  const CofiniteSet d({}, 5, true);
  CHECK(cofinite_diff_count(c, d) == 2);

  const CofiniteSet finite({1, 2}, 3, false);
  CHECK_THROWS_AS(cofinite_diff_count(c, finite), Error);
  CHECK(cofinite_diff_count(finite, c) == 1);
  CHECK(cofinite_includes(c, d));
  CHECK_FALSE(cofinite_includes(d, c));

  const auto from_sm = CofiniteSet::from_semimodule(semimodule(plain_branch(4, {6, 7})), -4);
  CHECK(from_sm.contains(0));
  CHECK_FALSE(from_sm.contains(1));
  CHECK(from_sm.contains(200));
}
