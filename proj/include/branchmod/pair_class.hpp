#pragma once

// Topological data of an irreducible plane branch together with a
// normal-crossings divisor E contained in {xy = 0}: validation, the classical
// invariants (gcd chain, semigroup generators, conductor) and the exponent
// ladder describing which Puiseux coefficients may be nonzero in the class.

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace branchmod {

using Int = std::int64_t;

// Stands for beta_{g+1}; orders above every exponent.
inline constexpr Int kInfinity = std::numeric_limits<Int>::max();

struct CharacteristicSequence {
  Int n = 0;
  std::vector<Int> betas;

  friend bool operator==(const CharacteristicSequence&, const CharacteristicSequence&) = default;
};

class PairClass {
 public:
  PairClass() = default;

  Int n() const { return chars_.n; }
  int g() const { return static_cast<int>(chars_.betas.size()); }
  const std::vector<Int>& betas() const { return chars_.betas; }
  const CharacteristicSequence& chars() const { return chars_; }
  Int beta0() const { return beta0_; }
  int delta_x() const { return delta_x_; }
  int delta_y() const { return delta_y_; }
  int delta_sum() const { return delta_x_ + delta_y_; }
  bool divisor_empty() const { return delta_x_ == 0 && delta_y_ == 0; }

  // beta_j for 0 <= j <= g + 1, with beta_{g+1} = kInfinity.
  Int beta(int j) const;

  std::string to_string() const;

  friend bool operator==(const PairClass&, const PairClass&) = default;

 private:
  friend PairClass validate_pair(Int, std::vector<Int>, Int, int, int, bool);

  CharacteristicSequence chars_;
  Int beta0_ = 0;
  int delta_x_ = 0;
  int delta_y_ = 0;
};

// Validates the raw data and returns the class, or throws Error naming the
// violated invariant. allow_smooth admits n = 1 with no characteristic
// exponents; only the blow-up machinery needs that.
PairClass validate_pair(Int n, std::vector<Int> betas, Int beta0, int delta_x, int delta_y,
                        bool allow_smooth = false);

// Convenience: beta0 defaults to beta_1 and E to the empty divisor.
PairClass plain_branch(Int n, std::vector<Int> betas);

struct SemigroupData {
  std::vector<Int> bar_betas;  // bar beta_1 .. bar beta_g
  std::vector<Int> e;          // e_0 .. e_g
  std::vector<Int> n_seq;      // n_1 .. n_g
  std::vector<Int> nu;         // nu_0 .. nu_g
  Int n = 0;
  Int conductor = 0;

  // Semigroup generators n, bar beta_1, ..., bar beta_g.
  std::vector<Int> generators() const;
};

SemigroupData derive_invariants(const PairClass& pair);

// Dynamic programming over the generators up to max(m, conductor).
bool semigroup_contains(const SemigroupData& sgd, Int m);

// Members of the semigroup in [0, bound].
std::vector<Int> semigroup_members(const SemigroupData& sgd, Int bound);

class ExponentLadder {
 public:
  struct Stratum {
    Int start = 0;
    Int modulus = 1;
    friend bool operator==(const Stratum&, const Stratum&) = default;
  };

  ExponentLadder() = default;
  explicit ExponentLadder(std::vector<Stratum> entries);

  const std::vector<Stratum>& entries() const { return entries_; }
  bool contains(Int m) const;
  Int min() const;
  // Least m with every integer >= m a member.
  Int cofinite_from() const;
  std::vector<Int> members_upto(Int bound) const;

  friend bool operator==(const ExponentLadder&, const ExponentLadder&) = default;

 private:
  std::vector<Stratum> entries_;
};

ExponentLadder exponent_ladder(const PairClass& pair);

// Smallest member strictly greater than beta; beta must be a member.
Int next_exponent(const ExponentLadder& ladder, Int beta);
// Largest member strictly smaller than beta; fails on the minimum.
Int prev_exponent(const ExponentLadder& ladder, Int beta);

}  // namespace branchmod
