#include "branchmod/oracle.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "branchmod/apery.hpp"
#include "branchmod/error.hpp"

namespace branchmod {

namespace {

Rational draw_coefficient(std::mt19937_64& rng) {
  const auto v = static_cast<long>(rng() % 18);
  return Rational(v < 9 ? v - 9 : v - 8);
}

void fill_seeded(SpecializedCurve& curve) {
  std::mt19937_64 rng(*curve.seed);
  const auto ladder = exponent_ladder(curve.pair);
  curve.coefficients.clear();
  for (Int beta : ladder.members_upto(curve.precision - 1)) curve.coefficients[beta] = draw_coefficient(rng);
}

}  // namespace

TruncatedSeries SpecializedCurve::x() const { return TruncatedSeries::monomial(Rational(1), pair.n(), precision); }

TruncatedSeries SpecializedCurve::y() const {
  TruncatedSeries s(precision);
  for (const auto& [beta, c] : coefficients)
    if (beta < precision) s.set_coeff(beta, c);
  return s;
}

SpecializedCurve SpecializedCurve::with_precision(Int new_precision) const {
  SpecializedCurve out = *this;
  out.precision = new_precision;
  if (seed) fill_seeded(out);
  return out;
}

Int auto_precision(const PairClass& pair) {
  const auto sgd = derive_invariants(pair);
  const Int bar_g = sgd.bar_betas.empty() ? pair.beta0() : sgd.bar_betas.back();
  return sgd.conductor + bar_g + 2 * pair.n();
}

namespace {

void require_oracle_class(const PairClass& pair) {
  if (pair.n() < 2) fail(ErrorCode::MultiplicityTooSmall, "the oracle needs n >= 2");
  if (pair.beta0() < pair.n())
    fail(ErrorCode::UnsuitablePresentation, "the oracle needs beta0 >= n: " + pair.to_string());
}

void check_leading_coefficients(const SpecializedCurve& curve) {
  std::vector<Int> required{curve.pair.beta0()};
  for (Int b : curve.pair.betas()) required.push_back(b);
  for (Int b : required) {
    if (b >= curve.precision) continue;
    const auto it = curve.coefficients.find(b);
    if (it == curve.coefficients.end() || sgn(it->second) == 0)
      fail(ErrorCode::PostconditionViolation,
           "coefficient of t^" + std::to_string(b) + " must be nonzero");
  }
}

}  // namespace

SpecializedCurve specialize(const PairClass& pair, std::uint64_t seed, std::optional<Int> precision) {
  require_oracle_class(pair);
  SpecializedCurve curve;
  curve.pair = pair;
  curve.seed = seed;
  curve.precision = precision.value_or(auto_precision(pair));
  fill_seeded(curve);
  check_leading_coefficients(curve);
  return curve;
}

SpecializedCurve specialize_with(const PairClass& pair, std::map<Int, Rational> coefficients,
                                 Int precision) {
  require_oracle_class(pair);
  const auto ladder = exponent_ladder(pair);
  for (const auto& [beta, c] : coefficients)
    if (!ladder.contains(beta))
      fail(ErrorCode::NotAMember, std::to_string(beta) + " is not an exponent of " + pair.to_string());
  SpecializedCurve curve;
  curve.pair = pair;
  curve.precision = precision;
  for (auto& [beta, c] : coefficients)
    if (sgn(c) != 0) curve.coefficients[beta] = c;
  check_leading_coefficients(curve);
  return curve;
}

std::string to_string(const MonomialForm& form) {
  std::ostringstream out;
  auto factor = [&](const char* name, Int power) {
    if (power == 0) return;
    out << name;
    if (power > 1) out << '^' << power;
    out << ' ';
  };
  factor("x", form.x_power);
  factor("y", form.y_power);
  out << (form.d == Differential::Dx ? "dx" : "dy");
  return out.str();
}

std::vector<MonomialForm> module_generators(Int n, int delta_x, int delta_y) {
  std::vector<MonomialForm> out;
  for (Int j = 0; j < n; ++j) {
    if (delta_y == 1) {
      out.push_back({delta_x, j, Differential::Dy});
      out.push_back({0, j + 1, Differential::Dx});
    } else {
      out.push_back({0, j, Differential::Dx});
      out.push_back({delta_x, j, Differential::Dy});
    }
  }
  return out;
}

namespace {

// Pullbacks of generators sharing the powers of y.
class PullbackCache {
 public:
  explicit PullbackCache(const SpecializedCurve& curve)
      : curve_(curve), n_(curve.pair.n()), y_(curve.y()), dy_(y_.euler_derivative()) {
    powers_.push_back(TruncatedSeries::monomial(Rational(1), 0, curve.precision));
  }

  TruncatedSeries form(const MonomialForm& f) {
    while (static_cast<Int>(powers_.size()) <= f.y_power) powers_.push_back(powers_.back() * y_);
    TruncatedSeries base = powers_[static_cast<std::size_t>(f.y_power)];
    base = f.d == Differential::Dx
               ? base.shifted(n_) * Rational(static_cast<long>(n_))
               : base * dy_;
    return base.shifted(n_ * f.x_power).truncated(curve_.precision);
  }

 private:
  const SpecializedCurve& curve_;
  Int n_;
  TruncatedSeries y_;
  TruncatedSeries dy_;
  std::vector<TruncatedSeries> powers_;
};

Int require_order(const TruncatedSeries& s, const std::string& what) {
  const auto o = s.order();
  if (!o) fail(ErrorCode::ZeroToPrecision, what + " vanishes to precision " + std::to_string(s.precision()));
  return *o;
}

TruncatedSeries combine(const SpecializedCurve& curve, const std::vector<TruncatedSeries>& pulled,
                        const std::vector<Polynomial>& coefficients) {
  const Int n = curve.pair.n();
  TruncatedSeries out(curve.precision);
  for (std::size_t i = 0; i < coefficients.size(); ++i)
    for (std::size_t d = 0; d < coefficients[i].size(); ++d)
      if (sgn(coefficients[i][d]) != 0)
        out.subtract_shifted(-coefficients[i][d], static_cast<Int>(d) * n, pulled[i]);
  return out;
}

}  // namespace

TruncatedSeries pullback_series(const SpecializedCurve& curve, const MonomialForm& form) {
  return PullbackCache(curve).form(form);
}

Int pullback_order(const SpecializedCurve& curve, const MonomialForm& form) {
  return require_order(pullback_series(curve, form), to_string(form));
}

TruncatedSeries pullback_series(const SpecializedCurve& curve, const FormCombination& form) {
  PullbackCache cache(curve);
  std::vector<TruncatedSeries> pulled;
  for (const auto& g : form.generators) pulled.push_back(cache.form(g));
  return combine(curve, pulled, form.coefficients);
}

Int pullback_order(const SpecializedCurve& curve, const FormCombination& form) {
  return require_order(pullback_series(curve, form), "form combination");
}

namespace {

struct NeedsPrecision {
  std::string reason;
};

struct Element {
  TruncatedSeries series;
  std::vector<Polynomial> coefficients;
  Int order = 0;
};

ModuleApery eliminate(const SpecializedCurve& curve, int delta_x, int delta_y,
                      const ReductionOptions& options) {
  const Int n = curve.pair.n();
  const auto gens = module_generators(n, delta_x, delta_y);
  PullbackCache cache(curve);
  std::vector<TruncatedSeries> pulled;
  for (const auto& g : gens) pulled.push_back(cache.form(g));

  std::vector<Element> elems;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    Element e;
    e.series = pulled[i];
    e.coefficients.assign(gens.size(), Polynomial{});
    e.coefficients[i] = Polynomial{Rational(1)};
    const auto o = e.series.order();
    if (!o) continue;
    e.order = *o;
    elems.push_back(std::move(e));
  }

  std::optional<std::mt19937_64> rng;
  if (options.shuffle_seed) rng.emplace(*options.shuffle_seed);

  ModuleApery result;
  const Int cap = static_cast<Int>(gens.size()) * (curve.precision + 1) + 16;
  for (;;) {
    // conflicts: pairs (pivot, target) in one residue class, pivot order <= target order
    std::vector<std::pair<std::size_t, std::size_t>> conflicts;
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (std::size_t j = 0; j < elems.size(); ++j) {
        if (i == j || elems[i].order % n != elems[j].order % n) continue;
        const bool pivot_first = elems[i].order < elems[j].order ||
                                 (elems[i].order == elems[j].order && i < j);
        if (!pivot_first) continue;
        conflicts.emplace_back(i, j);
        // smallest pivot order, then smallest target order, then indices
        auto key = [&](const std::pair<std::size_t, std::size_t>& c) {
          return std::make_tuple(elems[c.first].order, elems[c.second].order, c.first, c.second);
        };
        if (!best || key({i, j}) < key(*best)) best = std::make_pair(i, j);
      }
    if (conflicts.empty()) break;
    if (++result.reductions > cap) fail(ErrorCode::IterationCap, "order elimination did not terminate");
    auto [pi, ti] = rng ? conflicts[(*rng)() % conflicts.size()] : *best;
    const Element& pivot = elems[pi];
    Element& target = elems[ti];
    const Int shift = target.order - pivot.order;
    const Rational c = target.series.leading() / pivot.series.leading();
    target.series.subtract_shifted(c, shift, pivot.series);
    for (std::size_t g = 0; g < gens.size(); ++g)
      if (!pivot.coefficients[g].empty())
        poly_add_scaled(target.coefficients[g], -c, shift / n, pivot.coefficients[g]);
    const auto o = target.series.order();
    // vanishing to precision: either torsion or of order >= N, where the
    // survivors of lower order already cover its residue class
    if (o)
      target.order = *o;
    else
      elems.erase(elems.begin() + static_cast<std::ptrdiff_t>(ti));
  }

  if (static_cast<Int>(elems.size()) != n) {
    std::ostringstream msg;
    msg << elems.size() << " of " << n << " residue classes reached at precision " << curve.precision;
    throw NeedsPrecision{msg.str()};
  }
  std::sort(elems.begin(), elems.end(), [](const Element& a, const Element& b) { return a.order < b.order; });
  for (auto& e : elems) {
    result.apery.push_back(e.order);
    FormCombination f;
    f.generators = gens;
    f.coefficients = std::move(e.coefficients);
    f.order = e.order;
    result.forms.push_back(std::move(f));
  }
  result.precision = curve.precision;
  return result;
}

}  // namespace

ModuleApery module_apery(const SpecializedCurve& curve, int delta_x, int delta_y,
                         const ReductionOptions& options) {
  if (delta_x < 0 || delta_x > 1 || delta_y < 0 || delta_y > 1)
    fail(ErrorCode::BadFlag, "divisor flags must be 0 or 1");
  try {
    return eliminate(curve, delta_x, delta_y, options);
  } catch (const NeedsPrecision& first) {
    if (!options.allow_retry) fail(ErrorCode::PrecisionExhausted, first.reason);
    try {
      return eliminate(curve.with_precision(2 * curve.precision), delta_x, delta_y, options);
    } catch (const NeedsPrecision& second) {
      fail(ErrorCode::PrecisionExhausted, second.reason);
    }
  }
}

bool VerifyReport::all_match() const {
  return !seeds.empty() && std::all_of(seeds.begin(), seeds.end(), [](const SeedReport& s) {
    return s.match && s.stable_under_doubling;
  });
}

VerifyReport verify_class(const PairClass& pair, const std::vector<std::uint64_t>& seeds,
                          std::optional<Int> precision) {
  VerifyReport report;
  report.pair = pair;
  report.expected = semimodule(pair).sorted_apery();
  for (auto seed : seeds) {
    SeedReport sr;
    sr.seed = seed;
    try {
      const auto curve = specialize(pair, seed, precision);
      const auto first = module_apery(curve, pair.delta_x(), pair.delta_y());
      sr.oracle = first.apery;
      sr.match = first.apery == report.expected;
      ReductionOptions once;
      once.allow_retry = false;
      const auto second =
          module_apery(curve.with_precision(2 * first.precision), pair.delta_x(), pair.delta_y(), once);
      sr.stable_under_doubling = second.apery == first.apery;
    } catch (const Error& e) {
      sr.error = e.what();
    }
    report.seeds.push_back(std::move(sr));
  }
  return report;
}

TruncatedSeries approximate_root_series(const SpecializedCurve& curve, int l) {
  const auto& pair = curve.pair;
  if (l < 1 || l > pair.g()) fail(ErrorCode::NotAMember, "approximate roots are indexed 1..g");
  const auto sgd = derive_invariants(pair);
  const Int e = sgd.e[static_cast<std::size_t>(l - 1)];
  const Int nu = pair.n() / e;
  const Int beta_l = pair.beta(l);

  // phi(s) with s = t^e: the truncation of y below beta_l
  Polynomial phi;
  for (const auto& [beta, c] : curve.coefficients) {
    if (beta >= beta_l) break;
    if (beta % e != 0) fail(ErrorCode::PostconditionViolation, "exponent below beta_l not divisible by e");
    const auto i = static_cast<std::size_t>(beta / e);
    if (phi.size() <= i) phi.resize(i + 1);
    phi[i] = c;
  }

  // power sums over the conjugates phi(zeta s), as polynomials in x = s^nu
  std::vector<Polynomial> p(static_cast<std::size_t>(nu + 1));
  Polynomial power{Rational(1)};
  for (Int m = 1; m <= nu; ++m) {
    power = poly_mul(power, phi);
    Polynomial pm;
    for (std::size_t i = 0; i < power.size(); i += static_cast<std::size_t>(nu)) {
      const auto j = i / static_cast<std::size_t>(nu);
      if (pm.size() <= j) pm.resize(j + 1);
      pm[j] = power[i] * static_cast<long>(nu);
    }
    trim(pm);
    p[static_cast<std::size_t>(m)] = std::move(pm);
  }

  // Newton identities: k E_k = sum_{i=1}^k (-1)^{i-1} E_{k-i} p_i
  std::vector<Polynomial> el(static_cast<std::size_t>(nu + 1));
  el[0] = Polynomial{Rational(1)};
  for (Int k = 1; k <= nu; ++k) {
    Polynomial acc;
    for (Int i = 1; i <= k; ++i) {
      const Rational sign = (i % 2 == 1) ? Rational(1) : Rational(-1);
      poly_add_scaled(acc, sign / static_cast<long>(k), 0,
                      poly_mul(el[static_cast<std::size_t>(k - i)], p[static_cast<std::size_t>(i)]));
    }
    el[static_cast<std::size_t>(k)] = std::move(acc);
  }

  // f_l = sum_k (-1)^k E_k(x) y^{nu-k}
  const auto y = curve.y();
  TruncatedSeries out(curve.precision);
  TruncatedSeries ypow = TruncatedSeries::monomial(Rational(1), 0, curve.precision);
  for (Int k = nu; k >= 0; --k) {
    const Rational sign = (k % 2 == 0) ? Rational(1) : Rational(-1);
    out += substitute_power(el[static_cast<std::size_t>(k)], pair.n(), curve.precision) * ypow * sign;
    ypow = ypow * y;
  }
  return out;
}

Int differential_order(const TruncatedSeries& series) {
  return require_order(series.euler_derivative(), "df");
}

}  // namespace branchmod
