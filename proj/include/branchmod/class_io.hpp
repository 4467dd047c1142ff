#pragma once

// Class literals and JSON renderings of every computed object.
//
// Text literal:  n=6 b=9,10 b0=9 dx=0 dy=0   (b0 defaults to beta_1, flags to 0)
// JSON literal:  {"n":6,"betas":[9,10],"beta0":9,"dx":0,"dy":0}

#include <string_view>

#include "json.hpp"

#include "branchmod/apery.hpp"
#include "branchmod/blowup.hpp"
#include "branchmod/moduli.hpp"
#include "branchmod/oracle.hpp"
#include "branchmod/pair_class.hpp"

namespace branchmod {

using Json = nlohmann::ordered_json;

// Either form; a leading '{' selects JSON. Syntax errors throw ParseError
// with "line L, column C"; semantic errors throw the validation code.
PairClass parse_class(std::string_view text, bool allow_smooth = false);

Json class_json(const PairClass& pair);
PairClass class_from_json(const Json& j, bool allow_smooth = false);

Json invariants_json(const PairClass& pair);
Json ladder_json(const ExponentLadder& ladder);
Json table_json(const AperyTable& table);
Json semimodule_json(const Semimodule& sm, Int upto);
Json trajectory_json(const Trajectory& t);
Json dimension_json(const DimensionReport& report);
Json step_difference_json(const StepDifference& d);
Json form_json(const FormCombination& form);
Json verify_json(const VerifyReport& report);

}  // namespace branchmod
