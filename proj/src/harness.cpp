#include "branchmod/harness.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include "branchmod/apery.hpp"
#include "branchmod/blowup.hpp"
#include "branchmod/error.hpp"
#include "branchmod/moduli.hpp"

namespace branchmod {

namespace {

// Number of prime factors counted with multiplicity.
int big_omega(Int m) {
  int count = 0;
  for (Int p = 2; p * p <= m; ++p)
    while (m % p == 0) {
      m /= p;
      ++count;
    }
  return count + (m > 1 ? 1 : 0);
}

std::vector<Int> proper_divisors(Int m) {
  std::vector<Int> out;
  for (Int d = 1; d < m; ++d)
    if (m % d == 0) out.push_back(d);
  return out;
}

template <class T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& xs) {
  return xs[rng() % xs.size()];
}

std::optional<PairClass> draw_class(std::mt19937_64& rng, const RandomClassOptions& options) {
  const Int lo = 4;
  const Int hi = std::max(lo, options.max_n);
  const Int n = lo + static_cast<Int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  const int g_max = std::min(options.max_g, big_omega(n));
  const int g = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(g_max));

  // e_0 = n > e_1 > ... > e_g = 1, each e_j with enough prime factors left
  std::vector<Int> e{n};
  for (int j = 1; j <= g; ++j) {
    std::vector<Int> choices;
    for (Int d : proper_divisors(e.back()))
      if (j == g ? d == 1 : big_omega(d) >= g - j && d > 1) choices.push_back(d);
    e.push_back(pick(rng, choices));
  }

  const Int cap = options.exponent_cap_factor * n;
  std::vector<Int> betas;
  Int previous = n;
  for (int j = 1; j <= g; ++j) {
    Int tail = 0;
    for (int k = j + 1; k <= g; ++k) tail += e[static_cast<std::size_t>(k)];
    const Int ej = e[static_cast<std::size_t>(j)];
    const Int ratio = e[static_cast<std::size_t>(j - 1)] / ej;
    std::vector<Int> choices;
    for (Int u = previous / ej + 1; ej * u <= cap - tail; ++u)
      if (std::gcd(u, ratio) == 1) choices.push_back(ej * u);
    if (choices.empty()) return std::nullopt;
    previous = pick(rng, choices);
    betas.push_back(previous);
  }
  return plain_branch(n, betas);
}

template <class F>
Check run_check(std::string name, const PairClass& pair, F&& body) {
  Check c;
  c.name = std::move(name);
  try {
    c.detail = body();
    c.ok = c.detail.empty();
  } catch (const Error& e) {
    c.ok = false;
    c.detail = e.what();
  }
  if (!c.ok) c.detail = pair.to_string() + ": " + c.detail;
  return c;
}

std::string list(const std::vector<Int>& xs) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? "," : "") << xs[i];
  out << ')';
  return out.str();
}

}  // namespace

std::vector<PairClass> random_classes(std::size_t count, std::uint64_t seed,
                                      const RandomClassOptions& options) {
  std::mt19937_64 rng(seed);
  std::vector<PairClass> out;
  while (out.size() < count)
    if (auto c = draw_class(rng, options)) out.push_back(std::move(*c));
  return out;
}

Check check_dimension_agreement(const PairClass& pair) {
  return run_check("dimension", pair, [&]() -> std::string {
    const auto report = dimension_report(pair);
    const auto theta = std::accumulate(report.per_step_theta_increments.begin(),
                                       report.per_step_theta_increments.end(), Int{0});
    std::ostringstream msg;
    if (report.geometric && *report.geometric != report.genzmer)
      msg << "genzmer " << report.genzmer << " != geometric " << *report.geometric << "; ";
    if (theta != report.genzmer) msg << "genzmer " << report.genzmer << " != theta sum " << theta << "; ";
    if (!report.agree) msg << "per-step sigma " << list(report.per_step_sigma) << " vs theta "
                           << list(report.per_step_theta_increments);
    return msg.str();
  });
}

Check check_step_law(const PairClass& pair) {
  return run_check("step-law", pair, [&]() -> std::string {
    const auto t = trajectory(SuitableState(pair));
    for (int i = 0; i < t.stop_index; ++i) blowup_step_difference(t.states[static_cast<std::size_t>(i)].pair());
    return {};
  });
}

Check check_intrinsic(const PairClass& pair) {
  return run_check("intrinsic", pair, [&]() -> std::string {
    const auto sgd = derive_invariants(pair);
    const Int bound = sgd.conductor + 4 * pair.n();
    const auto shifted = parallel_shift_semimodule(pair);
    const auto direct = semimodule_any(suitabilize(blow_up_fixed_x(pair)).pair());
    if (!same_set_upto(shifted, direct, bound)) {
      std::ostringstream msg;
      msg << "shift law " << list(shifted.sorted_apery()) << " differs from direct "
          << list(direct.sorted_apery()) << " below " << bound;
      return msg.str();
    }
    return {};
  });
}

Check check_apery_invariants(const PairClass& pair) {
  return run_check("apery-invariants", pair, [&]() -> std::string {
    const Int n = pair.n();
    const auto sgd = derive_invariants(pair);
    std::ostringstream msg;
    AperyOptions options;
    options.on_level = [&](int level, const AperyTable& table) {
      const auto size = static_cast<std::size_t>(2 * sgd.nu[static_cast<std::size_t>(level)]);
      const auto top = std::min(size, static_cast<std::size_t>(n));
      if (!std::is_sorted(table.a.begin(), table.a.begin() + static_cast<std::ptrdiff_t>(top)))
        msg << "a not monotone at level " << level << "; ";
    };
    const auto table = apery_orders(pair, options);
    std::vector<Int> residues;
    for (Int v : table.apery()) residues.push_back(v % n);
    std::sort(residues.begin(), residues.end());
    if (std::adjacent_find(residues.begin(), residues.end()) != residues.end())
      msg << "a(1..n) not distinct mod n; ";
    if (!std::is_sorted(table.a.begin(), table.a.begin() + static_cast<std::ptrdiff_t>(n)))
      msg << "a(1..n) not non-decreasing; ";
    if (pair.divisor_empty())
      for (int l = 0; l < pair.g(); ++l) {
        const int idx = static_cast<int>(2 * sgd.nu[static_cast<std::size_t>(l)]);
        if (table.order(idx) != sgd.bar_betas[static_cast<std::size_t>(l)])
          msg << "a(" << idx << ") = " << table.order(idx) << " != bar beta " << sgd.bar_betas[static_cast<std::size_t>(l)] << "; ";
      }
    const auto sm = semimodule_from_table(pair, table);
    if (pair.divisor_empty())
      for (Int m : semigroup_members(sgd, sgd.conductor + 2 * n))
        if (m != 0 && !sm.contains(m)) {
          msg << "semigroup element " << m << " missing from the semimodule; ";
          break;
        }
    for (Int a : sm.sorted_apery())
      for (Int gen : sgd.generators())
        if (!sm.contains(a + gen)) {
          msg << a << " + " << gen << " missing from the semimodule; ";
          break;
        }
    return msg.str();
  });
}

Check check_theta_bijection(const PairClass& pair) {
  return run_check("theta-bijection", pair, [&]() -> std::string {
    const SuitableState state(pair);
    const int bound = trajectory(state).stop_index + 5;
    const auto slid = sliding_divisors(state, bound);
    std::vector<Int> image;
    for (int iota : slid) image.push_back(fanning_exponent(state, iota));
    if (image.empty()) return "no sliding divisors";
    if (std::adjacent_find(image.begin(), image.end(), std::greater_equal<>()) != image.end())
      return "theta-hat not strictly increasing: " + list(image);
    const auto expected = variation_exponents(state, image.back());
    if (image != expected) return "image " + list(image) + " != variation exponents " + list(expected);
    return {};
  });
}

Check check_shuffled_apery(const PairClass& pair, std::uint64_t shuffle_seed) {
  return run_check("shuffled-apery", pair, [&]() -> std::string {
    AperyOptions options;
    options.shuffle_seed = shuffle_seed;
    const auto plain = apery_orders(pair).apery();
    const auto shuffled = apery_orders(pair, options).apery();
    if (plain != shuffled) return "shuffled " + list(shuffled) + " != " + list(plain);
    return {};
  });
}

bool ClassReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
}

ClassReport check_class(const PairClass& pair, bool with_theta) {
  ClassReport r;
  r.pair = pair;
  r.checks.push_back(check_dimension_agreement(pair));
  r.checks.push_back(check_step_law(pair));
  r.checks.push_back(check_intrinsic(pair));
  r.checks.push_back(check_apery_invariants(pair));
  if (with_theta) r.checks.push_back(check_theta_bijection(pair));
  return r;
}

bool BatchReport::ok() const {
  return std::all_of(classes.begin(), classes.end(), [](const ClassReport& c) { return c.ok(); });
}

BatchReport run_batch(const BatchOptions& options) {
  const auto classes = random_classes(options.count, options.seed, options.classes);
  BatchReport report;
  report.classes.resize(classes.size());
  const std::size_t every = std::max<std::size_t>(options.theta_every, 1);

  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(classes.size(), 1)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < classes.size(); i = next++)
      report.classes[i] = check_class(classes[i], i % every == 0);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (const auto& c : report.classes)
    for (const auto& check : c.checks) {
      ++report.runs[check.name];
      if (!check.ok) ++report.failures[check.name];
    }
  return report;
}

}  // namespace branchmod
