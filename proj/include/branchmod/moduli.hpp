#pragma once

// Generic moduli dimension of an equisingularity class, computed two ways:
// as a sum of sigma(nu_j + delta_j) along the resolution, and as a count of
// exponents not reached by singular 1-forms. Per-step set differences tie the
// two together.

#include <optional>
#include <vector>

#include "branchmod/apery.hpp"
#include "branchmod/blowup.hpp"
#include "branchmod/pair_class.hpp"

namespace branchmod {

// (m-2)(m-4)/4 for even m, (m-3)^2/4 for odd m.
Int sigma(Int m);

struct GenzmerDimension {
  Int total = 0;
  std::vector<Int> per_step;  // sigma(nu_j + delta_j), one entry per singular point
};

GenzmerDimension genzmer_dimension(const SuitableState& state);

// #(E \ (Lambda_o - n)) for a plain branch (E empty).
Int geometric_dimension(const PairClass& pair);

// Semimodule of the blown-up class, obtained from the Apery table of `pair`
// by subtracting n * floor((j - 1 + dx + dy) / 2) from a(j).
Semimodule parallel_shift_semimodule(const PairClass& pair);

struct StepDifference {
  Int count = 0;
  Int sigma = 0;
  std::vector<Int> members;  // (n + Lambda_1) \ Lambda_o
};

// Throws InclusionViolated or SigmaMismatch when the counts disagree.
StepDifference blowup_step_difference(const PairClass& pair);

// #((nu_i + Lambda_{i+1}) \ Lambda_{i,o}) for every singular point of the
// resolution, each semimodule computed on its own suitable presentation.
std::vector<Int> theta_increment_counts(const SuitableState& state);

// Same, but throws CrossCheckFailure when an entry differs from sigma.
std::vector<Int> theta_increments(const SuitableState& state);

// sigma(nu + delta) for the points between the first smooth point and the
// first point where the branch is smooth and transverse to a nonempty divisor.
std::vector<Int> resolution_tail_sigmas(const SuitableState& state);

struct DimensionReport {
  Int genzmer = 0;
  std::optional<Int> geometric;  // only for plain branches
  std::vector<Int> per_step_sigma;
  std::vector<Int> per_step_theta_increments;
  bool agree = false;
};

DimensionReport dimension_report(const PairClass& pair);

// Compares the integer sets represented by two semimodules on [lo, bound].
bool same_set_upto(const Semimodule& a, const Semimodule& b, Int bound);

}  // namespace branchmod
