#include "branchmod/pair_class.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "branchmod/error.hpp"

namespace branchmod {

namespace {

std::string join(const std::vector<Int>& xs) {
  std::ostringstream out;
  for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? "," : "") << xs[i];
  return out.str();
}

}  // namespace

Int PairClass::beta(int j) const {
  if (j == 0) return beta0_;
  if (j == g() + 1) return kInfinity;
  return chars_.betas.at(static_cast<std::size_t>(j - 1));
}

std::string PairClass::to_string() const {
  std::ostringstream out;
  out << "n=" << n() << " b=" << join(betas()) << " b0=" << beta0_ << " dx=" << delta_x_
      << " dy=" << delta_y_;
  return out.str();
}

PairClass validate_pair(Int n, std::vector<Int> betas, Int beta0, int delta_x, int delta_y,
                        bool allow_smooth) {
  if (n < 1 || (n < 2 && !allow_smooth))
    fail(ErrorCode::MultiplicityTooSmall, "multiplicity n = " + std::to_string(n) + " < 2");
  if (n == 1 && !betas.empty())
    fail(ErrorCode::GcdChainStall, "a smooth branch has no characteristic exponents");
  if (n >= 2 && betas.empty())
    fail(ErrorCode::NonIncreasingExponents, "at least one characteristic exponent is required");
  for (std::size_t i = 0; i < betas.size(); ++i) {
    if (betas[i] <= 0 || (i > 0 && betas[i] <= betas[i - 1]))
      fail(ErrorCode::NonIncreasingExponents,
           "exponents must be positive and strictly increasing: " + join(betas));
  }
  Int e = n;
  for (Int b : betas) {
    Int next = std::gcd(e, b);
    if (next == e)
      fail(ErrorCode::GcdChainStall,
           std::to_string(b) + " is a multiple of e = " + std::to_string(e));
    e = next;
  }
  if (e != 1) fail(ErrorCode::GcdNotOne, "e_g = " + std::to_string(e) + " != 1");
  if ((delta_x != 0 && delta_x != 1) || (delta_y != 0 && delta_y != 1))
    fail(ErrorCode::BadFlag, "divisor flags must be 0 or 1");
  if (beta0 < 1) fail(ErrorCode::BadBeta0, "beta0 must be positive");
  if (!betas.empty()) {
    const Int b1 = betas.front();
    if (beta0 > b1)
      fail(ErrorCode::BadBeta0, "beta0 = " + std::to_string(beta0) + " exceeds beta1");
    if (beta0 % n != 0 && beta0 != b1)
      fail(ErrorCode::BadBeta0,
           "beta0 = " + std::to_string(beta0) + " is neither a multiple of n nor beta1");
    if (delta_y == 0 && beta0 != b1)
      fail(ErrorCode::DeltaYZeroBeta0, "dy = 0 requires beta0 = beta1");
  }
  PairClass pair;
  pair.chars_ = CharacteristicSequence{n, std::move(betas)};
  pair.beta0_ = beta0;
  pair.delta_x_ = delta_x;
  pair.delta_y_ = delta_y;
  return pair;
}

PairClass plain_branch(Int n, std::vector<Int> betas) {
  const Int b1 = betas.empty() ? 0 : betas.front();
  return validate_pair(n, std::move(betas), b1, 0, 0);
}

std::vector<Int> SemigroupData::generators() const {
  std::vector<Int> gens{n};
  gens.insert(gens.end(), bar_betas.begin(), bar_betas.end());
  return gens;
}

SemigroupData derive_invariants(const PairClass& pair) {
  SemigroupData sgd;
  sgd.n = pair.n();
  const int g = pair.g();
  sgd.e.push_back(pair.n());
  sgd.nu.push_back(1);
  for (int m = 1; m <= g; ++m) {
    sgd.e.push_back(std::gcd(sgd.e.back(), pair.beta(m)));
    sgd.n_seq.push_back(sgd.e[m - 1] / sgd.e[m]);
    sgd.nu.push_back(pair.n() / sgd.e[m]);
  }
  for (int j = 1; j <= g; ++j) {
    if (j == 1) {
      sgd.bar_betas.push_back(pair.beta(1));
    } else {
      const Int prev = sgd.bar_betas.back();
      sgd.bar_betas.push_back(sgd.n_seq[j - 2] * prev - pair.beta(j - 1) + pair.beta(j));
    }
  }
  Int c = -pair.n() + 1;
  for (int j = 0; j < g; ++j) c += (sgd.n_seq[j] - 1) * sgd.bar_betas[j];
  sgd.conductor = c;
  return sgd;
}

std::vector<Int> semigroup_members(const SemigroupData& sgd, Int bound) {
  if (bound < 0) return {};
  std::vector<char> reach(static_cast<std::size_t>(bound) + 1, 0);
  reach[0] = 1;
  for (Int gen : sgd.generators()) {
    for (Int v = gen; v <= bound; ++v)
      if (reach[v - gen]) reach[v] = 1;
  }
  std::vector<Int> out;
  for (Int v = 0; v <= bound; ++v)
    if (reach[v]) out.push_back(v);
  return out;
}

bool semigroup_contains(const SemigroupData& sgd, Int m) {
  if (m < 0) return false;
  const Int bound = std::max(m, sgd.conductor);
  std::vector<char> reach(static_cast<std::size_t>(bound) + 1, 0);
  reach[0] = 1;
  for (Int gen : sgd.generators())
    for (Int v = gen; v <= bound; ++v)
      if (reach[v - gen]) reach[v] = 1;
  return reach[m] != 0;
}

ExponentLadder::ExponentLadder(std::vector<Stratum> entries) : entries_(std::move(entries)) {}

bool ExponentLadder::contains(Int m) const {
  return std::any_of(entries_.begin(), entries_.end(), [m](const Stratum& s) {
    return m >= s.start && m % s.modulus == 0;
  });
}

Int ExponentLadder::min() const {
  Int lo = kInfinity;
  for (const auto& s : entries_) {
    // smallest multiple of the modulus that is >= start
    Int first = ((s.start + s.modulus - 1) / s.modulus) * s.modulus;
    lo = std::min(lo, first);
  }
  return lo;
}

Int ExponentLadder::cofinite_from() const {
  for (const auto& s : entries_)
    if (s.modulus == 1) {
      Int from = s.start;
      while (from > min() && contains(from - 1)) --from;
      return from;
    }
  return kInfinity;
}

std::vector<Int> ExponentLadder::members_upto(Int bound) const {
  std::vector<Int> out;
  for (Int m = std::max<Int>(min(), 0); m <= bound; ++m)
    if (contains(m)) out.push_back(m);
  return out;
}

ExponentLadder exponent_ladder(const PairClass& pair) {
  std::vector<ExponentLadder::Stratum> entries;
  Int modulus = std::gcd(pair.n(), pair.beta0());
  entries.push_back({pair.beta0(), modulus});
  for (int j = 1; j <= pair.g(); ++j) {
    modulus = std::gcd(modulus, pair.beta(j));
    entries.push_back({pair.beta(j), modulus});
  }
  return ExponentLadder(std::move(entries));
}

Int next_exponent(const ExponentLadder& ladder, Int beta) {
  if (!ladder.contains(beta))
    fail(ErrorCode::NotAMember, std::to_string(beta) + " is not in the exponent set");
  for (Int m = beta + 1;; ++m)
    if (ladder.contains(m)) return m;
}

Int prev_exponent(const ExponentLadder& ladder, Int beta) {
  if (!ladder.contains(beta))
    fail(ErrorCode::NotAMember, std::to_string(beta) + " is not in the exponent set");
  for (Int m = beta - 1; m >= ladder.min(); --m)
    if (ladder.contains(m)) return m;
  fail(ErrorCode::NotAMember, std::to_string(beta) + " is the minimum of the exponent set");
}

}  // namespace branchmod
