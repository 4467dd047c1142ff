#include "branchmod/moduli.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "branchmod/error.hpp"

namespace branchmod {

Int sigma(Int m) {
  if (m % 2 == 0) return (m - 2) * (m - 4) / 4;
  return (m - 3) * (m - 3) / 4;
}

GenzmerDimension genzmer_dimension(const SuitableState& state) {
  if (state.multiplicity() < 2)
    fail(ErrorCode::MultiplicityTooSmall, "the branch is already smooth");
  const auto t = trajectory(state);
  GenzmerDimension out;
  for (int j = 0; j < t.stop_index; ++j) {
    const Int s = sigma(t.mults[static_cast<std::size_t>(j)] + t.deltas[static_cast<std::size_t>(j)]);
    out.per_step.push_back(s);
    out.total += s;
  }
  return out;
}

Int geometric_dimension(const PairClass& pair) {
  if (!pair.divisor_empty() || pair.beta0() != pair.beta(1))
    fail(ErrorCode::NotPlainBranch, "geometric dimension is defined for E = {} only");
  const auto exponents = CofiniteSet::from_ladder(exponent_ladder(pair));
  const auto reached = CofiniteSet::from_semimodule(singular_semimodule(pair), -pair.n());
  return cofinite_diff_count(exponents, reached);
}

Semimodule parallel_shift_semimodule(const PairClass& pair) {
  const auto table = apery_orders(pair);
  const Int n = pair.n();
  std::vector<Int> values;
  for (int j = 1; j <= n; ++j) values.push_back(table.order(j) - n * ((j - 1 + pair.delta_sum()) / 2));
  return Semimodule(n, std::move(values), Provenance::Shifted);
}

StepDifference blowup_step_difference(const PairClass& pair) {
  const Int n = pair.n();
  const auto shifted = CofiniteSet::from_semimodule(parallel_shift_semimodule(pair), n);
  const auto singular = CofiniteSet::from_semimodule(singular_semimodule(pair));
  if (!cofinite_includes(shifted, singular))
    fail(ErrorCode::InclusionViolated,
         "Lambda_o is not contained in n + Lambda_1 for " + pair.to_string());
  StepDifference out;
  out.members = cofinite_difference(shifted, singular);
  out.count = static_cast<Int>(out.members.size());
  out.sigma = sigma(n + pair.delta_sum());
  if (out.count != out.sigma) {
    std::ostringstream msg;
    msg << "difference count " << out.count << " != sigma(" << n + pair.delta_sum()
        << ") = " << out.sigma << " for " << pair.to_string();
    fail(ErrorCode::SigmaMismatch, msg.str());
  }
  return out;
}

std::vector<Int> theta_increment_counts(const SuitableState& state) {
  const auto t = trajectory(state);
  std::vector<Int> out;
  for (int i = 0; i < t.stop_index; ++i) {
    const auto& here = t.states[static_cast<std::size_t>(i)].pair();
    const auto& next = t.states[static_cast<std::size_t>(i + 1)].pair();
    const auto lifted = CofiniteSet::from_semimodule(semimodule_any(next), here.n());
    const auto singular = CofiniteSet::from_semimodule(singular_semimodule(here));
    out.push_back(cofinite_diff_count(lifted, singular));
  }
  return out;
}

std::vector<Int> theta_increments(const SuitableState& state) {
  const auto counts = theta_increment_counts(state);
  const auto t = trajectory(state);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const Int expected = sigma(t.mults[i] + t.deltas[i]);
    if (counts[i] != expected) {
      std::ostringstream msg;
      msg << "step " << i << " of " << state.pair().to_string() << ": increment " << counts[i]
          << " != sigma(" << t.mults[i] + t.deltas[i] << ") = " << expected;
      fail(ErrorCode::CrossCheckFailure, msg.str());
    }
  }
  return counts;
}

std::vector<Int> resolution_tail_sigmas(const SuitableState& state) {
  const auto head = trajectory(state);
  auto transverse = [](const SuitableState& s) {
    const auto& p = s.pair();
    return p.n() == 1 && p.delta_sum() == 1 && (p.delta_y() == 0 || p.beta0() == 1);
  };
  std::vector<Int> out;
  SuitableState current = head.states.back();
  const Int cap = current.pair().beta0() + 8;
  for (Int steps = 0; !transverse(current); ++steps) {
    if (steps > cap) fail(ErrorCode::IterationCap, "no transverse point reached");
    out.push_back(sigma(current.multiplicity() + current.divisor_count()));
    current = blow_up(current);
  }
  return out;
}

DimensionReport dimension_report(const PairClass& pair) {
  const SuitableState state(pair);
  DimensionReport report;
  const auto genzmer = genzmer_dimension(state);
  report.genzmer = genzmer.total;
  report.per_step_sigma = genzmer.per_step;
  report.per_step_theta_increments = theta_increment_counts(state);
  const Int theta_sum = std::accumulate(report.per_step_theta_increments.begin(),
                                        report.per_step_theta_increments.end(), Int{0});
  report.agree = theta_sum == report.genzmer &&
                 report.per_step_theta_increments == report.per_step_sigma;
  if (pair.divisor_empty()) {
    report.geometric = geometric_dimension(pair);
    report.agree = report.agree && *report.geometric == report.genzmer;
  }
  return report;
}

bool same_set_upto(const Semimodule& a, const Semimodule& b, Int bound) {
  const Int lo = std::min(a.min(), b.min());
  for (Int m = lo; m <= bound; ++m)
    if (a.contains(m) != b.contains(m)) return false;
  return true;
}

}  // namespace branchmod
