#pragma once

// Ground truth on concrete curves: specialize a branch of the class with
// exact rational coefficients, pull monomial 1-forms back along the
// parametrization and eliminate orders to obtain the Apery set of the module.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "branchmod/pair_class.hpp"
#include "branchmod/series.hpp"

namespace branchmod {

// x = t^n, y = sum a_beta t^beta over ladder members beta < precision.
struct SpecializedCurve {
  PairClass pair;
  std::map<Int, Rational> coefficients;
  std::optional<std::uint64_t> seed;  // empty for hand-written fixtures
  Int precision = 0;

  TruncatedSeries x() const;
  TruncatedSeries y() const;
  // The same curve known to a different precision. Seeded curves redraw with
  // the same stream, so existing coefficients are kept; fixtures pad with 0.
  SpecializedCurve with_precision(Int new_precision) const;
};

// conductor + bar beta_g + 2n.
Int auto_precision(const PairClass& pair);

// Nonzero integer coefficients in [-9, 9] drawn in increasing exponent order.
SpecializedCurve specialize(const PairClass& pair, std::uint64_t seed,
                            std::optional<Int> precision = std::nullopt);

// Fixture hook: every exponent must be a ladder member and a_{beta0},
// a_{beta_1}, ..., a_{beta_g} must be present and nonzero.
SpecializedCurve specialize_with(const PairClass& pair, std::map<Int, Rational> coefficients,
                                 Int precision);

enum class Differential { Dx, Dy };

// x^p y^q dx or x^p y^q dy.
struct MonomialForm {
  Int x_power = 0;
  Int y_power = 0;
  Differential d = Differential::Dx;

  friend bool operator==(const MonomialForm&, const MonomialForm&) = default;
};

std::string to_string(const MonomialForm& form);

// The 2n generators of the module of forms preserving the divisor.
std::vector<MonomialForm> module_generators(Int n, int delta_x, int delta_y);

// t * Gamma^* omega / dt, whose order is nu(omega).
TruncatedSeries pullback_series(const SpecializedCurve& curve, const MonomialForm& form);
// Throws ZeroToPrecision when the pullback vanishes to the curve precision.
Int pullback_order(const SpecializedCurve& curve, const MonomialForm& form);

// sum_i P_i(x) * generator_i.
struct FormCombination {
  std::vector<MonomialForm> generators;
  std::vector<Polynomial> coefficients;  // one polynomial in x per generator
  Int order = 0;
};

TruncatedSeries pullback_series(const SpecializedCurve& curve, const FormCombination& form);
Int pullback_order(const SpecializedCurve& curve, const FormCombination& form);

struct ReductionOptions {
  std::optional<std::uint64_t> shuffle_seed;  // random conflict choice
  bool allow_retry = true;                    // one automatic precision doubling
};

struct ModuleApery {
  std::vector<Int> apery;  // ascending
  std::vector<FormCombination> forms;  // forms[i] realizes apery[i]
  Int precision = 0;                   // precision that produced the answer
  int reductions = 0;
};

ModuleApery module_apery(const SpecializedCurve& curve, int delta_x, int delta_y,
                         const ReductionOptions& options = {});

struct SeedReport {
  std::uint64_t seed = 0;
  std::vector<Int> oracle;  // empty when an error occurred
  bool match = false;
  bool stable_under_doubling = false;
  std::string error;
};

struct VerifyReport {
  PairClass pair;
  std::vector<Int> expected;  // apery_orders, ascending
  std::vector<SeedReport> seeds;

  bool all_match() const;
};

VerifyReport verify_class(const PairClass& pair, const std::vector<std::uint64_t>& seeds,
                          std::optional<Int> precision = std::nullopt);

// f_l(Gamma(t)) for the approximate root f_l of y-degree nu_{l-1}, 1 <= l <= g.
// f_0 = x is handled by curve.x().
TruncatedSeries approximate_root_series(const SpecializedCurve& curve, int l);

// nu(df) for f with f(Gamma(t)) = series: the order of t d/dt of the series.
Int differential_order(const TruncatedSeries& series);

}  // namespace branchmod
