#include "branchmod/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "branchmod/class_io.hpp"
#include "branchmod/error.hpp"
#include "branchmod/harness.hpp"

namespace branchmod {

namespace {

std::string join(const std::vector<Int>& xs, const char* sep = " ") {
  std::ostringstream out;
  for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? sep : "") << xs[i];
  return out.str();
}

void row(std::ostream& out, const std::string& label, const std::string& value) {
  out << std::left << std::setw(24) << label << value << '\n';
}

// Seeds from BRANCHMOD_SEED ("7" or "1,2,3") when the flag is absent.
std::optional<std::vector<std::uint64_t>> env_seeds() {
  const char* raw = std::getenv("BRANCHMOD_SEED");
  if (!raw || !*raw) return std::nullopt;
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(raw);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    try {
      std::size_t used = 0;
      seeds.push_back(std::stoull(piece, &used));
      if (used != piece.size()) throw std::invalid_argument(piece);
    } catch (const std::exception&) {
      fail(ErrorCode::ParseError, "BRANCHMOD_SEED must be a comma-separated list of integers");
    }
  }
  return seeds;
}

struct Outcome {
  Json doc;
  std::string text;
  int code = kExitOk;
};

Outcome do_invariants(const PairClass& pair) {
  Outcome o;
  o.doc = invariants_json(pair);
  const auto sgd = derive_invariants(pair);
  std::ostringstream out;
  row(out, "class", pair.to_string());
  row(out, "e", join(sgd.e));
  row(out, "bar betas", join(sgd.bar_betas));
  row(out, "n_j", join(sgd.n_seq));
  row(out, "nu", join(sgd.nu));
  row(out, "conductor", std::to_string(sgd.conductor));
  row(out, "semigroup generators", join(sgd.generators()));
  std::ostringstream ladder;
  for (const auto& s : exponent_ladder(pair).entries()) ladder << s.start << "+" << s.modulus << "N ";
  row(out, "exponent ladder", ladder.str());
  o.text = out.str();
  return o;
}

Outcome do_exponents(const PairClass& pair, std::optional<Int> upto) {
  const auto ladder = exponent_ladder(pair);
  const Int bound = upto.value_or(ladder.cofinite_from() + pair.n());
  Outcome o;
  const auto members = ladder.members_upto(bound);
  o.doc = Json{{"class", class_json(pair)}, {"ladder", ladder_json(ladder)}, {"upto", bound},
               {"cofiniteFrom", ladder.cofinite_from()}, {"exponents", members}};
  std::ostringstream out;
  out << "exponents up to " << bound << ": " << join(members) << '\n';
  out << "every integer >= " << ladder.cofinite_from() << " is an exponent\n";
  o.text = out.str();
  return o;
}

Outcome do_apery(const PairClass& pair) {
  const auto table = apery_orders(pair);
  Outcome o;
  o.doc = table_json(table);
  o.doc["class"] = class_json(pair);
  std::ostringstream out;
  out << std::right << std::setw(5) << "j" << std::setw(10) << "a(j)" << std::setw(10) << "b(j)" << '\n';
  for (std::size_t i = 0; i < table.a.size(); ++i) {
    out << std::setw(5) << i + 1 << std::setw(10) << table.a[i] << std::setw(10) << table.b[i];
    if (static_cast<Int>(i + 1) == table.n) out << "   <- n";
    out << '\n';
  }
  out << "apery set: " << join(table.apery()) << '\n';
  o.text = out.str();
  return o;
}

Outcome do_semimodule(const PairClass& pair, std::optional<Int> upto, const std::string& kind) {
  Semimodule sm;
  if (kind == "plain")
    sm = semimodule_any(pair);
  else if (kind == "singular")
    sm = singular_semimodule(pair);
  else
    sm = parallel_shift_semimodule(pair);
  const Int bound = upto.value_or(sm.max_apery() + sm.n());
  Outcome o;
  o.doc = semimodule_json(sm, bound);
  o.doc["class"] = class_json(pair);
  std::ostringstream out;
  out << to_string(sm.provenance()) << " semimodule, apery set " << join(sm.sorted_apery()) << '\n';
  out << "members up to " << bound << ": " << join(sm.members_upto(bound)) << '\n';
  std::vector<Int> gaps = o.doc["gaps"].get<std::vector<Int>>();
  out << "gaps above the minimum: " << (gaps.empty() ? "none" : join(gaps)) << '\n';
  o.text = out.str();
  return o;
}

Outcome do_trajectory(const PairClass& pair, std::optional<int> extend) {
  const SuitableState state(pair);
  const auto t = extend ? extended_trajectory(state, *extend) : trajectory(state);
  Outcome o;
  o.doc = trajectory_json(t);
  o.doc["class"] = class_json(pair);
  std::ostringstream out;
  out << std::right << std::setw(5) << "step" << std::setw(5) << "n" << std::setw(7) << "beta0" << "  "
      << std::left << std::setw(16) << "chars" << std::right << std::setw(4) << "dx" << std::setw(4) << "dy"
      << std::setw(6) << "nu_j" << std::setw(9) << "delta_j" << '\n';
  for (std::size_t i = 0; i < t.states.size(); ++i) {
    const auto& p = t.states[i].pair();
    out << std::setw(5) << i << std::setw(5) << p.n() << std::setw(7) << p.beta0() << "  " << std::left
        << std::setw(16) << (p.g() ? join(p.betas(), ",") : "-") << std::right << std::setw(4) << p.delta_x()
        << std::setw(4) << p.delta_y() << std::setw(6) << t.mults[i] << std::setw(9) << t.deltas[i] << '\n';
  }
  o.text = out.str();
  return o;
}

Outcome do_dimension(const PairClass& pair) {
  const auto report = dimension_report(pair);
  Outcome o;
  o.doc = dimension_json(report);
  o.doc["class"] = class_json(pair);
  std::ostringstream out;
  row(out, "genzmer", std::to_string(report.genzmer));
  row(out, "geometric", report.geometric ? std::to_string(*report.geometric) : "n/a (E not empty)");
  row(out, "per-step sigma", join(report.per_step_sigma));
  row(out, "per-step theta", join(report.per_step_theta_increments));
  row(out, "agree", report.agree ? "true" : "false");
  o.text = out.str();
  o.code = report.agree ? kExitOk : kExitCrossCheck;
  return o;
}

Outcome do_verify(const PairClass& pair, const std::vector<std::uint64_t>& seeds,
                  std::optional<Int> precision, const std::string& emit_forms) {
  const auto report = verify_class(pair, seeds, precision);
  Outcome o;
  o.doc = verify_json(report);
  std::ostringstream out;
  out << "algorithm: " << join(report.expected) << '\n';
  for (const auto& s : report.seeds) {
    out << "seed " << s.seed << ": ";
    if (!s.error.empty())
      out << "error " << s.error;
    else
      out << join(s.oracle) << (s.match ? "  match" : "  MISMATCH")
          << (s.stable_under_doubling ? "" : "  (unstable under doubling)");
    out << '\n';
  }
  out << (report.all_match() ? "all seeds match\n" : "verification failed\n");
  if (!emit_forms.empty() && !seeds.empty()) {
    const auto curve = specialize(pair, seeds.front(), precision);
    const auto result = module_apery(curve, pair.delta_x(), pair.delta_y());
    Json forms = Json::array();
    for (const auto& f : result.forms) forms.push_back(form_json(f));
    Json doc{{"class", class_json(pair)}, {"seed", seeds.front()}, {"precision", result.precision},
             {"forms", forms}};
    std::ofstream file(emit_forms);
    if (!file) fail(ErrorCode::ParseError, "cannot write " + emit_forms);
    file << doc.dump(2) << '\n';
    out << "forms written to " << emit_forms << '\n';
  }
  o.text = out.str();
  o.code = report.all_match() ? kExitOk : kExitCrossCheck;
  return o;
}

Outcome do_batch(const BatchOptions& options) {
  const auto report = run_batch(options);
  Outcome o;
  Json checks = Json::object();
  for (const auto& [name, runs] : report.runs) {
    const auto it = report.failures.find(name);
    checks[name] = Json{{"runs", runs}, {"failures", it == report.failures.end() ? 0 : it->second}};
  }
  Json failed = Json::array();
  for (const auto& c : report.classes)
    for (const auto& check : c.checks)
      if (!check.ok) failed.push_back(Json{{"class", class_json(c.pair)}, {"check", check.name}, {"detail", check.detail}});
  o.doc = Json{{"count", options.count}, {"seed", options.seed}, {"maxN", options.classes.max_n},
               {"maxG", options.classes.max_g}, {"checks", checks}, {"failures", failed}, {"ok", report.ok()}};
  std::ostringstream out;
  out << options.count << " classes, seed " << options.seed << '\n';
  for (const auto& [name, counts] : checks.items())
    out << "  " << std::left << std::setw(20) << name << counts["runs"].get<std::size_t>() << " runs, "
        << counts["failures"].get<std::size_t>() << " failures\n";
  for (const auto& f : failed) out << "FAIL " << f["check"].get<std::string>() << ": " << f["detail"].get<std::string>() << '\n';
  out << (report.ok() ? "all checks passed\n" : "batch failed\n");
  o.text = out.str();
  o.code = report.ok() ? kExitOk : kExitCrossCheck;
  return o;
}

std::string joined(const std::vector<std::string>& tokens) {
  std::string s;
  for (const auto& t : tokens) s += (s.empty() ? "" : " ") + t;
  return s;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kahler-differential semimodules and moduli dimensions of plane branches", "branchmod"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "Emit one JSON document on standard output");

  std::vector<std::string> literal;
  auto add_class = [&](CLI::App* sub) {
    sub->add_option("class", literal, "Class literal, e.g. n=6 b=9,10 b0=9 dx=0 dy=0, or a JSON object")
        ->required();
    sub->add_flag("--json", json, "Emit one JSON document on standard output");
  };

  std::optional<Int> upto;
  std::optional<int> extend;
  std::string kind = "plain";
  std::vector<std::uint64_t> seeds;
  std::optional<Int> precision;
  std::string emit_forms;
  BatchOptions batch;
  std::optional<std::uint64_t> batch_seed;

  auto* invariants = app.add_subcommand("invariants", "Semigroup invariants and exponent ladder");
  add_class(invariants);
  auto* exponents = app.add_subcommand("exponents", "Exponents of the class up to a bound");
  add_class(exponents);
  exponents->add_option("--upto", upto, "Upper bound");
  auto* apery = app.add_subcommand("apery", "Apery table of the generic semimodule");
  add_class(apery);
  auto* semimod = app.add_subcommand("semimodule", "Membership listing and gaps");
  add_class(semimod);
  semimod->add_option("--upto", upto, "Upper bound");
  semimod->add_option("--kind", kind, "plain, singular or shifted")
      ->check(CLI::IsMember({"plain", "singular", "shifted"}));
  auto* traj = app.add_subcommand("trajectory", "Blow-up trajectory down to a smooth point");
  add_class(traj);
  traj->add_option("--extend", extend, "Number of blow-ups to perform instead")->check(CLI::NonNegativeNumber);
  auto* dimension = app.add_subcommand("dimension", "Generic moduli dimension by both methods");
  add_class(dimension);
  auto* verify = app.add_subcommand("verify", "Compare with the power-series oracle");
  add_class(verify);
  verify->add_option("--seeds", seeds, "Specialization seeds")->delimiter(',');
  verify->add_option("--precision", precision, "Series precision")->check(CLI::PositiveNumber);
  verify->add_option("--emit-forms", emit_forms, "Write the Apery-basis forms of the first seed as JSON");
  auto* batch_cmd = app.add_subcommand("batch", "Cross-assertions on random classes");
  batch_cmd->add_flag("--json", json, "Emit one JSON document on standard output");
  batch_cmd->add_option("--count", batch.count, "Number of classes")->check(CLI::NonNegativeNumber);
  batch_cmd->add_option("--max-n", batch.classes.max_n, "Largest multiplicity")->check(CLI::Range(Int{4}, Int{200}));
  batch_cmd->add_option("--max-g", batch.classes.max_g, "Largest number of characteristic exponents")
      ->check(CLI::Range(1, 8));
  batch_cmd->add_option("--seed", batch_seed, "Generator seed");
  batch_cmd->add_option("--theta-every", batch.theta_every, "Run the theta-hat check on every k-th class")
      ->check(CLI::PositiveNumber);
  batch_cmd->add_option("--threads", batch.threads, "Worker threads, 0 for all cores");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    if (json) out << Json{{"error", {{"code", "Usage"}, {"message", e.what()}}}}.dump(2) << '\n';
    return kExitUsage;
  }

  const auto* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  Outcome o;
  try {
    if (name == "batch") {
      if (batch_seed)
        batch.seed = *batch_seed;
      else if (auto env = env_seeds())
        batch.seed = env->front();
      o = do_batch(batch);
    } else {
      const auto pair = parse_class(joined(literal));
      if (name == "invariants") o = do_invariants(pair);
      else if (name == "exponents") o = do_exponents(pair, upto);
      else if (name == "apery") o = do_apery(pair);
      else if (name == "semimodule") o = do_semimodule(pair, upto, kind);
      else if (name == "trajectory") o = do_trajectory(pair, extend);
      else if (name == "dimension") o = do_dimension(pair);
      else {
        if (seeds.empty()) seeds = env_seeds().value_or(std::vector<std::uint64_t>{1, 2, 3});
        o = do_verify(pair, seeds, precision, emit_forms);
      }
    }
  } catch (const Error& e) {
    const int code = is_cross_check(e.code()) ? kExitCrossCheck : kExitValidation;
    err << "error: " << e.what() << '\n';
    if (json)
      out << Json{{"command", name}, {"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}}}.dump(2)
          << '\n';
    return code;
  }

  if (json) {
    Json doc{{"command", name}};
    for (auto& [k, v] : o.doc.items()) doc[k] = v;
    doc["exitCode"] = o.code;
    out << doc.dump(2) << '\n';
  } else {
    out << o.text;
  }
  return o.code;
}

}  // namespace branchmod
