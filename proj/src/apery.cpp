#include "branchmod/apery.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "branchmod/error.hpp"

namespace branchmod {

namespace {

Int mod(Int v, Int n) {
  Int r = v % n;
  return r < 0 ? r + n : r;
}

bool distinct_mod(const std::vector<Int>& values, Int n) {
  std::set<Int> seen;
  for (Int v : values)
    if (!seen.insert(mod(v, n)).second) return false;
  return true;
}

struct Conflict {
  int s;
  int k;
};

// Working state of one run of the order computation.
class OrderEngine {
 public:
  OrderEngine(const PairClass& pair, const AperyOptions& options)
      : pair_(pair),
        sgd_(derive_invariants(pair)),
        ladder_(exponent_ladder(pair)),
        options_(options) {
    if (options_.shuffle_seed) rng_.seed(*options_.shuffle_seed);
  }

  AperyTable run() {
    const Int n = pair_.n();
    table_.n = n;
    table_.a.assign(static_cast<std::size_t>(2 * n), 0);
    table_.b.assign(static_cast<std::size_t>(2 * n), 0);
    initialize();
    const int g = pair_.g();
    for (int l = 0; l < g; ++l) {
      stage_zero(l);
      if (options_.on_level) options_.on_level(l + 1, table_);
      resolve_level(l);
      if (options_.on_level) options_.on_level(l + 1, table_);
    }
    const auto apery = table_.apery();
    if (!distinct_mod(apery, n)) {
      std::ostringstream msg;
      msg << "a(1..n) not distinct modulo n for " << pair_.to_string();
      fail(ErrorCode::PostconditionViolation, msg.str());
    }
    return table_;
  }

 private:
  Int& a(int i) { return table_.a[static_cast<std::size_t>(i - 1)]; }
  Int& b(int i) { return table_.b[static_cast<std::size_t>(i - 1)]; }

  void initialize() {
    const Int n = pair_.n();
    if (pair_.delta_y() == 0) {
      a(1) = n;
      b(1) = n;
      a(2) = n * pair_.delta_x() + pair_.beta(1);
      b(2) = pair_.beta(1);
    } else {
      a(1) = n * pair_.delta_x() + pair_.beta0();
      b(1) = pair_.beta0();
      a(2) = n + pair_.beta(1);
      b(2) = pair_.beta(1);
    }
  }

  // Multiplying the level-l family by powers 1 .. n_{l+1} - 1 of the next
  // approximate root. (The loop stops at n_{l+1} - 1: exponent n_{l+1} would
  // write past index 2 nu_{l+1}.)
  void stage_zero(int l) {
    const Int nu_l = sgd_.nu[static_cast<std::size_t>(l)];
    const Int n_next = sgd_.n_seq[static_cast<std::size_t>(l)];
    const Int bar = sgd_.bar_betas[static_cast<std::size_t>(l)];
    for (Int k = 1; k <= n_next - 1; ++k) {
      for (Int s = 1; s <= 2 * nu_l; ++s) {
        const int idx = static_cast<int>(2 * k * nu_l + s);
        a(idx) = k * bar + a(static_cast<int>(s));
        b(idx) = pair_.beta(l + 1);
      }
    }
  }

  std::vector<Conflict> conflicts(int size, Int d) {
    std::vector<Conflict> out;
    const Int n = pair_.n();
    for (int s = 2; s <= size; ++s)
      for (int k = 1; k < s; ++k)
        if (mod(a(s) - a(k), n) == 0 && std::max(b(s), b(k)) == d) out.push_back({s, k});
    return out;
  }

  // Resolves every conflict at exponent d; returns the number of updates at
  // indices s <= n.
  int resolve_at(int level, int size, Int d) {
    const Int n = pair_.n();
    const Int next = next_exponent(ladder_, d);
    int low_updates = 0;
    auto apply = [&](Conflict c) {
      AperyUpdate u{level, d, c.s, c.k, a(c.s), a(c.s) + next - d, b(c.s), next};
      a(c.s) = u.new_a;
      b(c.s) = u.new_b;
      if (c.s <= n) ++low_updates;
      if (options_.on_update) options_.on_update(u, table_);
    };
    if (options_.shuffle_seed) {
      for (;;) {
        auto found = conflicts(size, d);
        if (found.empty()) break;
        std::uniform_int_distribution<std::size_t> pick(0, found.size() - 1);
        apply(found[pick(rng_)]);
      }
      return low_updates;
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (int s = 2; s <= size; ++s) {
        for (int k = 1; k < s; ++k) {
          if (mod(a(s) - a(k), n) == 0 && std::max(b(s), b(k)) == d) {
            apply({s, k});
            changed = true;
            break;
          }
        }
      }
    }
    return low_updates;
  }

  void resolve_level(int l) {
    const int size = static_cast<int>(2 * sgd_.nu[static_cast<std::size_t>(l + 1)]);
    const bool final_level = (l + 1 == pair_.g());
    const Int limit = pair_.beta(l + 2);
    const Int cap = 4 * (pair_.beta(pair_.g()) + sgd_.conductor) + 16;
    Int d = pair_.beta(l + 1);
    for (Int steps = 0;; ++steps) {
      if (steps > cap) {
        std::ostringstream msg;
        msg << "level " << l + 1 << " exceeded " << cap << " d-steps for " << pair_.to_string();
        fail(ErrorCode::NonTermination, msg.str());
      }
      const int low_updates = resolve_at(l + 1, size, d);
      d = next_exponent(ladder_, d);
      if (final_level) {
        if (low_updates == 0) break;
      } else if (d >= limit) {
        break;
      }
    }
  }

  const PairClass& pair_;
  SemigroupData sgd_;
  ExponentLadder ladder_;
  const AperyOptions& options_;
  std::mt19937_64 rng_;
  AperyTable table_;
};

}  // namespace

std::vector<Int> AperyTable::apery() const {
  return {a.begin(), a.begin() + static_cast<std::ptrdiff_t>(n)};
}

AperyTable apery_orders(const PairClass& pair, const AperyOptions& options) {
  if (pair.n() < 2) fail(ErrorCode::MultiplicityTooSmall, "the order computation needs n >= 2");
  if (pair.beta0() < pair.n())
    fail(ErrorCode::UnsuitablePresentation,
         "beta0 < n in " + pair.to_string() + "; suitabilize the presentation first");
  return OrderEngine(pair, options).run();
}

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::Plain: return "plain";
    case Provenance::Singular: return "singular";
    case Provenance::Shifted: return "shifted";
  }
  return "unknown";
}

Semimodule::Semimodule(Int n, std::vector<Int> apery_values, Provenance provenance)
    : n_(n), values_(std::move(apery_values)), provenance_(provenance) {
  if (n_ < 1 || static_cast<Int>(values_.size()) != n_)
    fail(ErrorCode::PostconditionViolation, "a semimodule needs exactly n Apery values");
  by_residue_.assign(static_cast<std::size_t>(n_), kInfinity);
  for (Int v : values_) {
    auto& slot = by_residue_[static_cast<std::size_t>(mod(v, n_))];
    if (slot != kInfinity)
      fail(ErrorCode::PostconditionViolation, "Apery values are not distinct modulo n");
    slot = v;
  }
}

bool Semimodule::contains(Int m) const {
  return m >= by_residue_[static_cast<std::size_t>(mod(m, n_))];
}

Int Semimodule::max_apery() const { return *std::max_element(values_.begin(), values_.end()); }

Int Semimodule::min() const { return *std::min_element(values_.begin(), values_.end()); }

std::vector<Int> Semimodule::members_upto(Int bound) const {
  std::vector<Int> out;
  for (Int m = min(); m <= bound; ++m)
    if (contains(m)) out.push_back(m);
  return out;
}

std::vector<Int> Semimodule::sorted_apery() const {
  auto v = values_;
  std::sort(v.begin(), v.end());
  return v;
}

Semimodule semimodule_from_table(const PairClass& pair, const AperyTable& table) {
  return Semimodule(pair.n(), table.apery(), Provenance::Plain);
}

Semimodule singular_from_table(const PairClass& pair, const AperyTable& table) {
  auto values = table.apery();
  const Int n = pair.n();
  switch (pair.delta_sum()) {
    case 0:
      values[0] += n;
      values[1] += n;
      break;
    case 1:
      values[0] += n;
      break;
    default:
      break;
  }
  return Semimodule(n, std::move(values), Provenance::Singular);
}

Semimodule semimodule(const PairClass& pair) {
  return semimodule_from_table(pair, apery_orders(pair));
}

Semimodule singular_semimodule(const PairClass& pair) {
  return singular_from_table(pair, apery_orders(pair));
}

Semimodule semimodule_any(const PairClass& pair) {
  if (pair.n() >= 2) return semimodule(pair);
  // Smooth branch: generated by dx when y = 0 is not in E, otherwise by
  // x^dx dy (contact beta0 + dx).
  const Int v = pair.delta_y() == 0 ? 1 : pair.delta_x() + pair.beta0();
  return Semimodule(1, {v}, Provenance::Plain);
}

CofiniteSet::CofiniteSet(std::vector<Int> members, Int threshold, bool tail)
    : members_(std::move(members)), threshold_(threshold), tail_(tail) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (!members_.empty() && members_.back() >= threshold_)
    fail(ErrorCode::PostconditionViolation, "explicit members must lie below the threshold");
}

CofiniteSet CofiniteSet::from_semimodule(const Semimodule& sm, Int shift) {
  const Int top = sm.max_apery();
  std::vector<Int> members;
  for (Int m = sm.min(); m < top; ++m)
    if (sm.contains(m)) members.push_back(m + shift);
  return CofiniteSet(std::move(members), top + shift, true);
}

CofiniteSet CofiniteSet::from_ladder(const ExponentLadder& ladder) {
  const Int top = ladder.cofinite_from();
  std::vector<Int> members;
  for (Int m = ladder.min(); m < top; ++m)
    if (ladder.contains(m)) members.push_back(m);
  return CofiniteSet(std::move(members), top, true);
}

bool CofiniteSet::contains(Int m) const {
  if (m >= threshold_) return tail_;
  return std::binary_search(members_.begin(), members_.end(), m);
}

CofiniteSet CofiniteSet::shifted(Int k) const {
  auto members = members_;
  for (auto& m : members) m += k;
  return CofiniteSet(std::move(members), threshold_ + k, tail_);
}

std::vector<Int> cofinite_difference(const CofiniteSet& a, const CofiniteSet& b) {
  if (a.tail() && !b.tail())
    fail(ErrorCode::InfiniteDifference, "A has an infinite tail that B does not contain");
  std::vector<Int> out;
  for (Int m : a.members())
    if (!b.contains(m)) out.push_back(m);
  if (a.tail())
    for (Int m = a.threshold(); m < b.threshold(); ++m)
      if (!b.contains(m)) out.push_back(m);
  return out;
}

Int cofinite_diff_count(const CofiniteSet& a, const CofiniteSet& b) {
  return static_cast<Int>(cofinite_difference(a, b).size());
}

bool cofinite_includes(const CofiniteSet& b, const CofiniteSet& a) {
  if (a.tail() && !b.tail()) return false;
  return cofinite_difference(a, b).empty();
}

}  // namespace branchmod
