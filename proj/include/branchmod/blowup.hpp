#pragma once

// Point blow-up acting on pair classes, following the infinitely near points
// of a generic branch. Exponent sets are regenerated explicitly at each step
// and the characteristic exponents re-derived by a gcd-drop scan, so the
// fixed-x transform and the coordinate swap share one mechanism.

#include <vector>

#include "branchmod/pair_class.hpp"

namespace branchmod {

// A pair class in a presentation with beta0 >= n (x = 0 not tangent), so n is
// the multiplicity of the branch. n = 1 is allowed.
class SuitableState {
 public:
  explicit SuitableState(PairClass pair);

  const PairClass& pair() const { return pair_; }
  Int multiplicity() const { return pair_.n(); }
  // Number of divisor components through the point.
  int divisor_count() const { return pair_.delta_sum(); }

  friend bool operator==(const SuitableState&, const SuitableState&) = default;

 private:
  PairClass pair_;
};

// Strict transform in the chart x = x1, y = x1 y1, keeping the x-order n. The
// result may be unsuitable (beta0 < n).
PairClass blow_up_fixed_x(const PairClass& pair);

// Identity on suitable classes; otherwise swaps the roles of x and y.
SuitableState suitabilize(const PairClass& pair);

// suitabilize(blow_up_fixed_x(state)).
SuitableState blow_up(const SuitableState& state);

struct Trajectory {
  std::vector<SuitableState> states;  // P_0, P_1, ...
  std::vector<Int> mults;             // nu_j
  std::vector<int> deltas;            // delta_j
  int stop_index = 0;                 // first j with nu_j == 1, or -1
};

// Blows up until the multiplicity first equals 1 (that state included).
Trajectory trajectory(const SuitableState& state);

// States P_0 .. P_length, continuing past multiplicity 1.
Trajectory extended_trajectory(const SuitableState& state, int length);

// Indices 1 <= iota <= bound whose point lies on exactly one divisor component.
std::vector<int> sliding_divisors(const SuitableState& state, int bound);

// theta(iota) = nu_{iota-1} + sum_{j=1}^{iota-1} nu_j.
Int fanning_exponent(const SuitableState& state, int iota);

// The exponents reached by the fanning map, up to bound: the exponent set,
// plus the multiples of n below beta0 when y = 0 is not in E.
std::vector<Int> variation_exponents(const SuitableState& state, Int bound);

}  // namespace branchmod
