#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "branchmod/class_io.hpp"
#include "branchmod/cli.hpp"

using namespace branchmod;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_command(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

}  // namespace

TEST_CASE("apery prints the Apery set") {
  const auto r = run({"apery", "n=4", "b=6,7"});
  CHECK(r.code == 0);
  CHECK(r.out.find("apery set: 4 6 11 13") != std::string::npos);
}

TEST_CASE("dimension reports both methods") {
  const auto r = run({"dimension", "n=6", "b=9,10"});
  CHECK(r.code == 0);
  CHECK(r.out.find("genzmer                 3") != std::string::npos);
  CHECK(r.out.find("geometric               3") != std::string::npos);
  CHECK(r.out.find("agree                   true") != std::string::npos);
  const auto j = Json::parse(run({"dimension", "n=6", "b=9,10", "--json"}).out);
  CHECK(j["genzmer"] == 3);
  CHECK(j["geometric"] == 3);
  CHECK(j["agree"] == true);
}

TEST_CASE("invariants as JSON") {
  const auto r = run({"invariants", "n=6", "b=9,10", "--json"});
  CHECK(r.code == 0);
  const auto j = Json::parse(r.out);
  CHECK(j["command"] == "invariants");
  CHECK(j["e"] == Json({6, 3, 1}));
  CHECK(j["barBetas"] == Json({9, 19}));
  CHECK(parse_class(j["class"].dump()) == plain_branch(6, {9, 10}));
  // the global flag works before the subcommand too
  CHECK(Json::parse(run({"--json", "invariants", "n=6", "b=9,10"}).out)["e"] == Json({6, 3, 1}));
}

TEST_CASE("JSON class literal on the command line") {
  const auto r = run({"apery", R"({"n":2,"betas":[5],"beta0":4,"dy":1})", "--json"});
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out)["apery"] == Json({4, 7}));
}

TEST_CASE("exponents, semimodule and trajectory") {
  const auto e = Json::parse(run({"exponents", "n=4", "b=6,7", "--upto", "9", "--json"}).out);
  CHECK(e["exponents"] == Json({6, 7, 8, 9}));
  const auto s = Json::parse(run({"semimodule", "n=4", "b=6,7", "--upto", "12", "--json"}).out);
  CHECK(s["members"] == Json({4, 6, 8, 10, 11, 12}));
  const auto sh = Json::parse(run({"semimodule", "n=4", "b=6,7", "--kind", "shifted", "--json"}).out);
  CHECK(sh["apery"] == Json({4, 6, 7, 9}));
  const auto t = run({"trajectory", "n=6", "b=9,10"});
  CHECK(t.code == 0);
  CHECK(t.out.find("nu_j") != std::string::npos);
  const auto tj = Json::parse(run({"trajectory", "n=6", "b=9,10", "--json"}).out);
  CHECK(tj["steps"].size() == 4);
  const auto ext = Json::parse(run({"trajectory", "n=2", "b=5", "--extend", "4", "--json"}).out);
  CHECK(ext["steps"].size() == 5);
}

TEST_CASE("verify") {
  const auto r = run({"verify", "n=4", "b=6,7", "--json"});
  CHECK(r.code == 0);
  const auto j = Json::parse(r.out);
  CHECK(j["allMatch"] == true);
  CHECK(j["seeds"].size() == 3);

  const auto path = (std::filesystem::temp_directory_path() / "branchmod_forms_test.json").string();
  const auto f = run({"verify", "n=4", "b=6,7", "--seeds", "5", "--emit-forms", path});
  CHECK(f.code == 0);
  std::ifstream in(path);
  const auto forms = Json::parse(in);
  CHECK(forms["forms"].size() == 4);
  CHECK(forms["forms"][2]["order"] == 11);
  std::filesystem::remove(path);

  const auto low = run({"verify", "n=6", "b=9,10", "--seeds", "1", "--precision", "12"});
  CHECK(low.code == 1);
}

TEST_CASE("seed environment variable") {
  setenv("BRANCHMOD_SEED", "4,9", 1);
  const auto j = Json::parse(run({"verify", "n=2", "b=3", "--json"}).out);
  unsetenv("BRANCHMOD_SEED");
  REQUIRE(j["seeds"].size() == 2);
  CHECK(j["seeds"][0]["seed"] == 4);
  CHECK(j["seeds"][1]["seed"] == 9);
}

TEST_CASE("batch is reproducible") {
  const std::vector<std::string> args{"batch", "--count", "15", "--max-n", "16", "--seed", "3", "--json"};
  const auto a = run(args);
  const auto b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto j = Json::parse(a.out);
  CHECK(j["ok"] == true);
  CHECK(j["checks"]["dimension"]["runs"] == 15);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"apery"}).code == 2);
  CHECK(run({"exponents", "n=4", "b=6,7", "--upto", "many"}).code == 2);
  const auto invalid = run({"apery", "n=4", "b=6,8"});
  CHECK(invalid.code == 3);
  CHECK(invalid.err.find("GcdChainStall") != std::string::npos);
  const auto parse = run({"apery", "n=4", "b=6,x", "--json"});
  CHECK(parse.code == 3);
  CHECK(Json::parse(parse.out)["error"]["code"] == "ParseError");
  CHECK(run({"apery", "n=4", "b=2,3", "b0=2", "dx=1"}).code == 3);
  CHECK(run({"--help"}).code == 0);
}
