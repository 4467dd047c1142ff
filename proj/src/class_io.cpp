#include "branchmod/class_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <optional>
#include <sstream>

#include "branchmod/error.hpp"

namespace branchmod {

namespace {

struct Position {
  int line = 1;
  int column = 1;
};

Position position_of(std::string_view text, std::size_t offset) {
  Position p;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++p.line;
      p.column = 1;
    } else {
      ++p.column;
    }
  }
  return p;
}

[[noreturn]] void parse_error(std::string_view text, std::size_t offset, const std::string& what) {
  const auto p = position_of(text, offset);
  fail(ErrorCode::ParseError,
       "line " + std::to_string(p.line) + ", column " + std::to_string(p.column) + ": " + what);
}

Int parse_int(std::string_view text, std::size_t offset, std::string_view token) {
  Int value = 0;
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (token.empty() || ec != std::errc{} || ptr != last)
    parse_error(text, offset, "expected an integer, found '" + std::string(token) + "'");
  return value;
}

struct Fields {
  std::optional<Int> n;
  std::optional<std::vector<Int>> betas;
  std::optional<Int> beta0;
  std::optional<Int> dx;
  std::optional<Int> dy;
};

int flag_value(const std::optional<Int>& v) { return v ? static_cast<int>(*v) : 0; }

PairClass build(const Fields& f, bool allow_smooth) {
  std::vector<Int> betas = f.betas.value_or(std::vector<Int>{});
  const Int beta0 = f.beta0 ? *f.beta0 : (betas.empty() ? 1 : betas.front());
  const Int dx = f.dx.value_or(0);
  const Int dy = f.dy.value_or(0);
  if (dx < 0 || dx > 1 || dy < 0 || dy > 1) fail(ErrorCode::BadFlag, "divisor flags must be 0 or 1");
  return validate_pair(*f.n, std::move(betas), beta0, flag_value(f.dx), flag_value(f.dy), allow_smooth);
}

PairClass parse_text(std::string_view text, bool allow_smooth) {
  Fields f;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    const std::string_view token = text.substr(start, i - start);
    const auto eq = token.find('=');
    if (eq == std::string_view::npos)
      parse_error(text, start, "expected key=value, found '" + std::string(token) + "'");
    const std::string_view key = token.substr(0, eq);
    const std::string_view value = token.substr(eq + 1);
    const std::size_t value_at = start + eq + 1;
    auto once = [&](bool seen) {
      if (seen) parse_error(text, start, "duplicate key '" + std::string(key) + "'");
    };
    if (key == "n") {
      once(f.n.has_value());
      f.n = parse_int(text, value_at, value);
    } else if (key == "b") {
      once(f.betas.has_value());
      std::vector<Int> betas;
      std::size_t pos = 0;
      while (!value.empty()) {
        const auto comma = value.find(',', pos);
        const auto piece = value.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        betas.push_back(parse_int(text, value_at + pos, piece));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
      }
      f.betas = std::move(betas);
    } else if (key == "b0") {
      once(f.beta0.has_value());
      f.beta0 = parse_int(text, value_at, value);
    } else if (key == "dx") {
      once(f.dx.has_value());
      f.dx = parse_int(text, value_at, value);
    } else if (key == "dy") {
      once(f.dy.has_value());
      f.dy = parse_int(text, value_at, value);
    } else {
      parse_error(text, start, "unknown key '" + std::string(key) + "'");
    }
  }
  if (!f.n) parse_error(text, text.size(), "missing key 'n'");
  if (!f.betas && !(allow_smooth && *f.n == 1)) parse_error(text, text.size(), "missing key 'b'");
  return build(f, allow_smooth);
}

std::size_t key_offset(std::string_view text, std::string_view key) {
  const auto at = text.find("\"" + std::string(key) + "\"");
  return at == std::string_view::npos ? 0 : at;
}

Fields fields_from_json(const Json& j, std::string_view text) {
  if (!j.is_object()) parse_error(text, 0, "a class literal must be a JSON object");
  Fields f;
  auto integer = [&](const char* key) -> std::optional<Int> {
    if (!j.contains(key)) return std::nullopt;
    const auto& v = j.at(key);
    if (!v.is_number_integer()) parse_error(text, key_offset(text, key), std::string("'") + key + "' must be an integer");
    return v.get<Int>();
  };
  for (const auto& [key, value] : j.items()) {
    if (key != "n" && key != "betas" && key != "beta0" && key != "dx" && key != "dy")
      parse_error(text, key_offset(text, key), "unknown key '" + key + "'");
  }
  f.n = integer("n");
  if (!f.n) parse_error(text, 0, "missing key 'n'");
  if (j.contains("betas")) {
    const auto& b = j.at("betas");
    if (!b.is_array()) parse_error(text, key_offset(text, "betas"), "'betas' must be an array");
    std::vector<Int> betas;
    for (const auto& x : b) {
      if (!x.is_number_integer()) parse_error(text, key_offset(text, "betas"), "'betas' must hold integers");
      betas.push_back(x.get<Int>());
    }
    f.betas = std::move(betas);
  }
  f.beta0 = integer("beta0");
  f.dx = integer("dx");
  f.dy = integer("dy");
  return f;
}

}  // namespace

PairClass parse_class(std::string_view text, bool allow_smooth) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::parse_error& e) {
      const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
      std::string what = e.what();
      const auto colon = what.rfind(": ");
      parse_error(text, at, colon == std::string::npos ? what : what.substr(colon + 2));
    }
    auto f = fields_from_json(j, text);
    if (!f.betas && !(allow_smooth && *f.n == 1)) parse_error(text, 0, "missing key 'betas'");
    return build(f, allow_smooth);
  }
  return parse_text(text, allow_smooth);
}

Json class_json(const PairClass& pair) {
  return Json{{"n", pair.n()},
              {"betas", pair.betas()},
              {"beta0", pair.beta0()},
              {"dx", pair.delta_x()},
              {"dy", pair.delta_y()}};
}

PairClass class_from_json(const Json& j, bool allow_smooth) {
  const std::string text = j.dump();
  auto f = fields_from_json(j, text);
  if (!f.betas && !(allow_smooth && *f.n == 1)) parse_error(text, 0, "missing key 'betas'");
  return build(f, allow_smooth);
}

Json ladder_json(const ExponentLadder& ladder) {
  Json out = Json::array();
  for (const auto& s : ladder.entries()) out.push_back(Json{{"start", s.start}, {"modulus", s.modulus}});
  return out;
}

Json invariants_json(const PairClass& pair) {
  const auto sgd = derive_invariants(pair);
  return Json{{"class", class_json(pair)},
              {"e", sgd.e},
              {"barBetas", sgd.bar_betas},
              {"nSeq", sgd.n_seq},
              {"nu", sgd.nu},
              {"conductor", sgd.conductor},
              {"generators", sgd.generators()},
              {"ladder", ladder_json(exponent_ladder(pair))}};
}

Json table_json(const AperyTable& table) {
  return Json{{"a", table.a}, {"b", table.b}, {"apery", table.apery()}, {"n", table.n}};
}

Json semimodule_json(const Semimodule& sm, Int upto) {
  const Int conductor = sm.max_apery() - sm.n() + 1;
  std::vector<Int> gaps;
  for (Int m = sm.min(); m < conductor; ++m)
    if (!sm.contains(m)) gaps.push_back(m);
  return Json{{"n", sm.n()},
              {"provenance", std::string(to_string(sm.provenance()))},
              {"apery", sm.sorted_apery()},
              {"min", sm.min()},
              {"conductor", conductor},
              {"gaps", gaps},
              {"upto", upto},
              {"members", sm.members_upto(upto)}};
}

Json trajectory_json(const Trajectory& t) {
  Json steps = Json::array();
  for (std::size_t i = 0; i < t.states.size(); ++i) {
    const auto& p = t.states[i].pair();
    steps.push_back(Json{{"step", i},
                         {"n", p.n()},
                         {"beta0", p.beta0()},
                         {"chars", p.betas()},
                         {"dx", p.delta_x()},
                         {"dy", p.delta_y()},
                         {"nu", t.mults[i]},
                         {"delta", t.deltas[i]},
                         {"class", class_json(p)}});
  }
  return Json{{"steps", steps}, {"stopIndex", t.stop_index}};
}

Json dimension_json(const DimensionReport& report) {
  Json out{{"genzmer", report.genzmer}};
  out["geometric"] = report.geometric ? Json(*report.geometric) : Json(nullptr);
  out["perStepSigma"] = report.per_step_sigma;
  out["perStepThetaIncrements"] = report.per_step_theta_increments;
  out["agree"] = report.agree;
  return out;
}

Json step_difference_json(const StepDifference& d) {
  return Json{{"count", d.count}, {"sigma", d.sigma}, {"members", d.members}};
}

Json form_json(const FormCombination& form) {
  Json terms = Json::array();
  for (std::size_t i = 0; i < form.generators.size(); ++i) {
    const auto& poly = form.coefficients[i];
    if (poly.empty()) continue;
    Json coeffs = Json::array();
    for (std::size_t d = 0; d < poly.size(); ++d)
      if (sgn(poly[d]) != 0) coeffs.push_back(Json::array({static_cast<Int>(d), to_string(poly[d])}));
    terms.push_back(Json{{"generator", i + 1}, {"form", to_string(form.generators[i])}, {"coefficients", coeffs}});
  }
  return Json{{"order", form.order}, {"terms", terms}};
}

Json verify_json(const VerifyReport& report) {
  Json seeds = Json::array();
  for (const auto& s : report.seeds) {
    Json j{{"seed", s.seed}, {"oracle", s.oracle}, {"match", s.match}, {"stableUnderDoubling", s.stable_under_doubling}};
    if (!s.error.empty()) j["error"] = s.error;
    seeds.push_back(std::move(j));
  }
  return Json{{"class", class_json(report.pair)},
              {"expected", report.expected},
              {"seeds", seeds},
              {"allMatch", report.all_match()}};
}

}  // namespace branchmod
