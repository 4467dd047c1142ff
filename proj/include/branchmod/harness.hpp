#pragma once

// Random valid classes and the cross-assertions run on each of them.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "branchmod/pair_class.hpp"

namespace branchmod {

struct RandomClassOptions {
  Int max_n = 24;
  int max_g = 3;
  Int exponent_cap_factor = 6;  // beta_g <= factor * n
};

// n uniform in [4, max_n]; a divisor chain e_0 = n > e_1 > ... > e_g = 1 and
// beta_j = e_j * u with u prime to e_{j-1}/e_j, n < beta_1 < ... < beta_g.
// The same seed always yields the same list.
std::vector<PairClass> random_classes(std::size_t count, std::uint64_t seed,
                                      const RandomClassOptions& options = {});

struct Check {
  std::string name;
  bool ok = false;
  std::string detail;  // failure description, empty on success
};

// genzmer == geometric == sum of theta increments, and per-step agreement.
Check check_dimension_agreement(const PairClass& pair);
// blowup_step_difference on every singular point of the resolution.
Check check_step_law(const PairClass& pair);
// Shift law against apery_orders on the suitabilized blow-up, up to c + 4n.
Check check_intrinsic(const PairClass& pair);
// Residues, monotonicity, generator hits, closure under the semigroup and,
// for plain branches, containment of the semigroup up to c + 2n.
Check check_apery_invariants(const PairClass& pair);
// theta-hat over sliding divisors up to (resolution length + 5).
Check check_theta_bijection(const PairClass& pair);
// Shuffled conflict order gives the same Apery set.
Check check_shuffled_apery(const PairClass& pair, std::uint64_t shuffle_seed);

struct ClassReport {
  PairClass pair;
  std::vector<Check> checks;
  bool ok() const;
};

ClassReport check_class(const PairClass& pair, bool with_theta = true);

struct BatchOptions {
  std::size_t count = 200;
  std::uint64_t seed = 1;
  RandomClassOptions classes;
  std::size_t theta_every = 1;  // theta-hat check on every k-th class
  unsigned threads = 0;         // 0: hardware concurrency
};

struct BatchReport {
  std::vector<ClassReport> classes;
  std::map<std::string, std::size_t> failures;  // check name -> failing classes
  std::map<std::string, std::size_t> runs;      // check name -> classes checked
  bool ok() const;
};

BatchReport run_batch(const BatchOptions& options);

}  // namespace branchmod
