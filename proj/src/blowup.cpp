#include "branchmod/blowup.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "branchmod/error.hpp"

namespace branchmod {

namespace {

// Explicit listing of an exponent set: every member below `bound`, and the
// set is known to contain all integers >= bound.
struct ExponentSet {
  std::vector<Int> members;
  Int bound = 0;
};

Int listing_bound(const PairClass& pair) {
  if (pair.g() == 0) return pair.beta0() + pair.n() + 2;
  const auto sgd = derive_invariants(pair);
  return std::max(pair.beta(pair.g()), pair.beta0()) + sgd.bar_betas.back() + pair.n() + 2;
}

ExponentSet list_exponents(const PairClass& pair) {
  const auto ladder = exponent_ladder(pair);
  ExponentSet set;
  set.bound = listing_bound(pair);
  for (Int m : ladder.members_upto(set.bound - 1)) set.members.push_back(m);
  return set;
}

// Builds the class with multiplicity n, divisor flags and the given explicit
// exponent set. beta0 is the minimum of the set when y = 0 is in E; otherwise
// the coordinate y may absorb every term below beta_1, so beta0 = beta_1.
PairClass class_from_exponents(Int n, const ExponentSet& set, int delta_x, int delta_y) {
  std::vector<Int> chars;
  Int gcd = n;
  for (Int m : set.members) {
    const Int next = std::gcd(gcd, m);
    if (next != gcd) chars.push_back(m);
    gcd = next;
  }
  if (gcd != 1) {
    // the listing must reach the cofinite part, where the gcd collapses to 1
    std::ostringstream msg;
    msg << "exponent listing up to " << set.bound << " does not reach gcd 1";
    fail(ErrorCode::IterationCap, msg.str());
  }
  Int beta0 = set.members.front();
  if (delta_y == 0 && n >= 2) beta0 = chars.front();
  auto pair = validate_pair(n, chars, beta0, delta_x, delta_y, /*allow_smooth=*/true);

  // The regenerated listing must be exactly the ladder of the new class.
  const auto ladder = exponent_ladder(pair);
  for (Int m = beta0; m < set.bound; ++m) {
    const bool listed = std::binary_search(set.members.begin(), set.members.end(), m);
    if (listed != ladder.contains(m)) {
      std::ostringstream msg;
      msg << "exponent " << m << " disagrees with the ladder of " << pair.to_string();
      fail(ErrorCode::CrossCheckFailure, msg.str());
    }
  }
  return pair;
}

}  // namespace

SuitableState::SuitableState(PairClass pair) : pair_(std::move(pair)) {
  if (pair_.beta0() < pair_.n())
    fail(ErrorCode::UnsuitablePresentation, "beta0 < n in " + pair_.to_string());
}

PairClass blow_up_fixed_x(const PairClass& pair) {
  const Int n = pair.n();
  if (pair.beta0() < n)
    fail(ErrorCode::UnsuitablePresentation, "blow-up needs beta0 >= n: " + pair.to_string());
  const auto old_set = list_exponents(pair);
  ExponentSet shifted;
  shifted.bound = old_set.bound - n;
  for (Int m : old_set.members)
    if (m > n) shifted.members.push_back(m - n);
  // y = 0 keeps passing through the new point only if the branch was tangent to it
  const int delta_y = (pair.delta_y() == 1 && pair.beta0() > n) ? 1 : 0;
  return class_from_exponents(n, shifted, /*delta_x=*/1, delta_y);
}

SuitableState suitabilize(const PairClass& pair) {
  if (pair.beta0() >= pair.n()) return SuitableState(pair);
  // Unsuitable: beta0 = beta_1 < n. In the swapped coordinates the branch
  // has order b0 and the new exponents are m + (e - b0) for e > b0.
  const Int m = pair.n();
  const Int b0 = pair.beta0();
  const auto old_set = list_exponents(pair);
  ExponentSet swapped;
  swapped.bound = m + old_set.bound - b0;
  swapped.members.push_back(m);
  for (Int e : old_set.members)
    if (e > b0) swapped.members.push_back(m + (e - b0));
  return SuitableState(class_from_exponents(b0, swapped, pair.delta_y(), pair.delta_x()));
}

SuitableState blow_up(const SuitableState& state) {
  return suitabilize(blow_up_fixed_x(state.pair()));
}

namespace {

void record(Trajectory& t, const SuitableState& s) {
  t.states.push_back(s);
  t.mults.push_back(s.multiplicity());
  t.deltas.push_back(s.divisor_count());
}

Int step_cap(const SuitableState& state) {
  const auto& p = state.pair();
  return 4 * (p.beta(std::max(p.g(), 0)) + p.beta0() + p.n()) + 16;
}

}  // namespace

Trajectory trajectory(const SuitableState& state) {
  Trajectory t;
  t.stop_index = -1;
  record(t, state);
  const Int cap = step_cap(state);
  while (t.mults.back() != 1) {
    if (static_cast<Int>(t.states.size()) > cap)
      fail(ErrorCode::IterationCap, "resolution did not terminate for " + state.pair().to_string());
    record(t, blow_up(t.states.back()));
  }
  t.stop_index = static_cast<int>(t.states.size()) - 1;
  return t;
}

Trajectory extended_trajectory(const SuitableState& state, int length) {
  Trajectory t;
  t.stop_index = -1;
  record(t, state);
  for (int i = 1; i <= length; ++i) record(t, blow_up(t.states.back()));
  for (std::size_t i = 0; i < t.mults.size(); ++i)
    if (t.mults[i] == 1) {
      t.stop_index = static_cast<int>(i);
      break;
    }
  return t;
}

std::vector<int> sliding_divisors(const SuitableState& state, int bound) {
  std::vector<int> out;
  if (bound < 1) return out;
  const auto t = extended_trajectory(state, bound);
  for (int i = 1; i <= bound; ++i)
    if (t.deltas[static_cast<std::size_t>(i)] == 1) out.push_back(i);
  return out;
}

Int fanning_exponent(const SuitableState& state, int iota) {
  if (iota < 1) fail(ErrorCode::NotASlidingDivisor, "sliding divisors start at 1");
  const auto t = extended_trajectory(state, iota);
  if (t.deltas[static_cast<std::size_t>(iota)] != 1)
    fail(ErrorCode::NotASlidingDivisor,
         std::to_string(iota) + " is a satellite point for " + state.pair().to_string());
  Int theta = t.mults[static_cast<std::size_t>(iota - 1)];
  for (int j = 1; j <= iota - 1; ++j) theta += t.mults[static_cast<std::size_t>(j)];
  return theta;
}

std::vector<Int> variation_exponents(const SuitableState& state, Int bound) {
  const auto& p = state.pair();
  const auto ladder = exponent_ladder(p);
  std::vector<Int> out;
  for (Int m = 1; m <= bound; ++m) {
    const bool low_multiple = p.delta_y() == 0 && m % p.n() == 0 && m >= p.n() && m < p.beta0();
    if (ladder.contains(m) || low_multiple) out.push_back(m);
  }
  return out;
}

}  // namespace branchmod
