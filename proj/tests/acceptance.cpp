// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "branchmod/apery.hpp"
#include "branchmod/error.hpp"
#include "branchmod/harness.hpp"
#include "branchmod/moduli.hpp"
#include "branchmod/oracle.hpp"

using namespace branchmod;

namespace {

constexpr std::uint64_t kSuiteSeed = 20240601;
constexpr std::size_t kSuiteSize = 200;
constexpr std::size_t kThetaEvery = 4;  // 50-class sub-suite

std::string list(const std::vector<Int>& v) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  out << '}';
  return out.str();
}

struct Outcome {
  bool ok = true;
  std::ostringstream detail;
  void expect(bool cond, const std::string& what) {
    if (cond) return;
    if (!ok) detail << "; ";
    ok = false;
    detail << what;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int report(const std::string& id, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto start = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.expect(false, std::string("exception: ") + e.what());
  }
  std::cout << id << ' ' << (o.ok ? "PASS" : "FAIL") << "  " << title << " (" << seconds_since(start) << " s)";
  if (!o.ok) std::cout << "  " << o.detail.str();
  std::cout << '\n';
  return o.ok ? 0 : 1;
}

std::vector<PairClass> fixtures() {
  return {plain_branch(2, {3}), plain_branch(4, {6, 7}), validate_pair(2, {5}, 4, 0, 1),
          plain_branch(6, {9, 10}), plain_branch(4, {9})};
}

// Plain, x-divisor and every valid y-divisor presentation of each class.
std::vector<PairClass> oracle_classes() {
  const std::vector<std::pair<Int, std::vector<Int>>> base{{2, {3}},     {2, {5}},     {4, {6, 7}}, {4, {6, 9}},
                                                           {6, {9, 10}}, {6, {8, 9}},  {4, {9}}};
  std::vector<PairClass> out;
  for (const auto& [n, betas] : base)
    for (int dx : {0, 1}) {
      out.push_back(validate_pair(n, betas, betas.front(), dx, 0));
      for (Int b0 = n; b0 <= betas.front(); ++b0) {
        try {
          out.push_back(validate_pair(n, betas, b0, dx, 1));
        } catch (const Error&) {
        }
      }
    }
  return out;
}

void check_batch_criterion(Outcome& o, const BatchReport& batch, const std::string& name) {
  const auto runs = batch.runs.count(name) ? batch.runs.at(name) : 0;
  const auto fails = batch.failures.count(name) ? batch.failures.at(name) : 0;
  o.expect(runs > 0, "no " + name + " runs");
  o.expect(fails == 0, std::to_string(fails) + " of " + std::to_string(runs) + " classes failed");
  if (fails == 0) return;
  int shown = 0;
  for (const auto& c : batch.classes)
    for (const auto& check : c.checks)
      if (check.name == name && !check.ok && shown++ < 3) o.expect(false, check.detail);
}

}  // namespace

int main() {
  int failures = 0;

  failures += report("AC1", "fixture identities", [](Outcome& o) {
    const auto sgd = derive_invariants(plain_branch(6, {9, 10}));
    o.expect(sgd.e == std::vector<Int>{6, 3, 1}, "e = " + list(sgd.e));
    o.expect(sgd.bar_betas == std::vector<Int>{9, 19}, "bar betas = " + list(sgd.bar_betas));
    const std::vector<std::pair<PairClass, std::vector<Int>>> apery{
        {plain_branch(2, {3}), {2, 3}},
        {plain_branch(4, {6, 7}), {4, 6, 11, 13}},
        {validate_pair(2, {5}, 4, 0, 1), {4, 7}}};
    for (const auto& [pair, expected] : apery) {
      const auto got = semimodule(pair).sorted_apery();
      o.expect(got == expected, pair.to_string() + " apery " + list(got));
    }
    const auto d23 = dimension_report(plain_branch(2, {3}));
    o.expect(d23.genzmer == 0 && d23.agree, "dimension (2;3) = " + std::to_string(d23.genzmer));
    const auto d6 = dimension_report(plain_branch(6, {9, 10}));
    o.expect(d6.genzmer == 3 && d6.geometric == 3 && d6.agree, "dimension (6;9,10) = " + std::to_string(d6.genzmer));
    o.expect(d6.per_step_sigma == std::vector<Int>{2, 0, 1}, "per-step sigma " + list(d6.per_step_sigma));
    const auto d49 = dimension_report(plain_branch(4, {9}));
    o.expect(d49.genzmer == 1 && d49.geometric == 1 && d49.agree, "dimension (4;9) = " + std::to_string(d49.genzmer));
  });

  failures += report("AC2", "oracle equivalence on 3 seeds with precision doubling", [](Outcome& o) {
    const auto start = Clock::now();
    const auto classes = oracle_classes();
    for (const auto& pair : classes) {
      const auto r = verify_class(pair, {1, 2, 3});
      for (const auto& s : r.seeds) {
        o.expect(s.error.empty(), pair.to_string() + " seed " + std::to_string(s.seed) + ": " + s.error);
        o.expect(s.match, pair.to_string() + " seed " + std::to_string(s.seed) + " oracle " + list(s.oracle) +
                              " vs " + list(r.expected));
        o.expect(s.stable_under_doubling, pair.to_string() + " unstable under doubling");
      }
    }
    const double elapsed = seconds_since(start);
    o.expect(elapsed < 10.0, "took " + std::to_string(elapsed) + " s");
    o.expect(classes.size() >= 28, "only " + std::to_string(classes.size()) + " presentations");
  });

  BatchOptions options;
  options.count = kSuiteSize;
  options.seed = kSuiteSeed;
  options.theta_every = kThetaEvery;
  const auto batch_start = Clock::now();
  const auto batch = run_batch(options);
  const double batch_seconds = seconds_since(batch_start);

  std::cout << "suite: " << kSuiteSize << " classes, seed " << kSuiteSeed << ", " << batch_seconds << " s\n";
  failures += report("AC3", "randomized genzmer == geometric == theta sum", [&](Outcome& o) {
    o.expect(batch.classes.size() == kSuiteSize, "suite has " + std::to_string(batch.classes.size()) + " classes");
    for (const auto& c : batch.classes) {
      o.expect(c.pair.n() <= 24 && c.pair.g() <= 3 && c.pair.betas().back() <= 6 * c.pair.n(),
               "class out of range: " + c.pair.to_string());
    }
    check_batch_criterion(o, batch, "dimension");
    o.expect(batch_seconds < 60.0, "suite took " + std::to_string(batch_seconds) + " s");
  });
  failures += report("AC4", "per-step law and inclusion", [&](Outcome& o) { check_batch_criterion(o, batch, "step-law"); });
  failures += report("AC5", "intrinsic shift law", [&](Outcome& o) { check_batch_criterion(o, batch, "intrinsic"); });
  failures += report("AC6", "Apery structural invariants",
                     [&](Outcome& o) { check_batch_criterion(o, batch, "apery-invariants"); });
  failures += report("AC7", "theta-hat bijection on the 50-class sub-suite", [&](Outcome& o) {
    o.expect(batch.runs.count("theta-bijection") && batch.runs.at("theta-bijection") == 50,
             "sub-suite size differs from 50");
    check_batch_criterion(o, batch, "theta-bijection");
  });

  failures += report("AC8", "shuffled conflict and reduction orders", [](Outcome& o) {
    for (const auto& pair : fixtures()) {
      const auto expected = apery_orders(pair).apery();
      for (std::uint64_t s : {101u, 202u, 303u}) {
        AperyOptions a;
        a.shuffle_seed = s;
        const auto shuffled = apery_orders(pair, a).apery();
        o.expect(shuffled == expected, pair.to_string() + " shuffled apery_orders " + list(shuffled));
        const auto curve = specialize(pair, 1);
        ReductionOptions r;
        r.shuffle_seed = s;
        const auto oracle = module_apery(curve, pair.delta_x(), pair.delta_y(), r).apery;
        o.expect(oracle == semimodule(pair).sorted_apery(), pair.to_string() + " shuffled oracle " + list(oracle));
      }
    }
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
  return failures == 0 ? 0 : 1;
}
