#pragma once

// Generic semimodule of Kahler-differential values of a pair class.
//
// apery_orders() runs the level-by-level order computation: the table holds
// the generic contact orders a(1..2n) of a family of 1-forms together with
// their current leading exponents b(1..2n). At every level the stage-0 family
// is built from the previous level and the next approximate root, then pairs
// with congruent orders are resolved by the substitution that raises the
// larger order from d to next(d) in the exponent ladder. The first n entries
// of the final table are the Apery set of the semimodule.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "branchmod/pair_class.hpp"

namespace branchmod {

struct AperyTable {
  Int n = 0;
  std::vector<Int> a;  // a[0] is a(1)
  std::vector<Int> b;

  Int order(int index) const { return a.at(static_cast<std::size_t>(index - 1)); }
  Int leading(int index) const { return b.at(static_cast<std::size_t>(index - 1)); }
  std::vector<Int> apery() const;
};

// Reported after every conflict resolution.
struct AperyUpdate {
  int level = 0;  // l + 1, the level being built
  Int d = 0;
  int s = 0;  // updated index (1-based)
  int k = 0;  // partner index, k < s
  Int old_a = 0, new_a = 0;
  Int old_b = 0, new_b = 0;
};

struct AperyOptions {
  // When set, conflict pairs are visited in a pseudo-random order drawn from
  // this seed instead of the ascending (s, k) sweep.
  std::optional<std::uint64_t> shuffle_seed;
  std::function<void(const AperyUpdate&, const AperyTable&)> on_update;
  // Called once per level after stage 0 and after the last d-step.
  std::function<void(int level, const AperyTable&)> on_level;
};

AperyTable apery_orders(const PairClass& pair, const AperyOptions& options = {});

enum class Provenance { Plain, Singular, Shifted };

std::string_view to_string(Provenance p);

// A set of integers closed under +n, given by one minimum per residue class.
class Semimodule {
 public:
  Semimodule() = default;
  Semimodule(Int n, std::vector<Int> apery_values, Provenance provenance);

  Int n() const { return n_; }
  const std::vector<Int>& apery_values() const { return values_; }
  Provenance provenance() const { return provenance_; }

  bool contains(Int m) const;
  Int max_apery() const;
  Int min() const;
  std::vector<Int> members_upto(Int bound) const;
  // The Apery values sorted ascending.
  std::vector<Int> sorted_apery() const;

 private:
  Int n_ = 0;
  std::vector<Int> values_;
  std::vector<Int> by_residue_;
  Provenance provenance_ = Provenance::Plain;
};

Semimodule semimodule(const PairClass& pair);
Semimodule singular_semimodule(const PairClass& pair);
// Same, for a table that has already been computed.
Semimodule semimodule_from_table(const PairClass& pair, const AperyTable& table);
Semimodule singular_from_table(const PairClass& pair, const AperyTable& table);

// Semimodule of a pair class that is allowed to be smooth (n = 1); for n >= 2
// this is semimodule(pair).
Semimodule semimodule_any(const PairClass& pair);

// Finite description of a set of integers: explicit members below a
// threshold plus, optionally, every integer from the threshold on.
class CofiniteSet {
 public:
  CofiniteSet() = default;
  CofiniteSet(std::vector<Int> members, Int threshold, bool tail);

  static CofiniteSet from_semimodule(const Semimodule& sm, Int shift = 0);
  static CofiniteSet from_ladder(const ExponentLadder& ladder);

  const std::vector<Int>& members() const { return members_; }
  Int threshold() const { return threshold_; }
  bool tail() const { return tail_; }
  bool contains(Int m) const;
  CofiniteSet shifted(Int k) const;

  friend bool operator==(const CofiniteSet&, const CofiniteSet&) = default;

 private:
  std::vector<Int> members_;
  Int threshold_ = 0;
  bool tail_ = false;
};

// Exact cardinality of A \ B; throws InfiniteDifference when A has a tail
// that B does not cover.
Int cofinite_diff_count(const CofiniteSet& a, const CofiniteSet& b);

// Members of A \ B (same preconditions as cofinite_diff_count).
std::vector<Int> cofinite_difference(const CofiniteSet& a, const CofiniteSet& b);

// A subset of B?
bool cofinite_includes(const CofiniteSet& b, const CofiniteSet& a);

}  // namespace branchmod
