#include <doctest.h>

#include <functional>
#include <sstream>

#include "topomono/catalog.hpp"
#include "topomono/cli.hpp"
#include "topomono/preorder.hpp"

using namespace topomono;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

Json machine(std::vector<std::string> args) {
  args.push_back("--output");
  args.push_back("machine");
  return Json::parse(run(args).out);
}

const std::string docs = TOPOMONO_DOCS_DIR;

void leaves(const Json& j, const std::function<void(const Json&)>& f) {
  if (j.is_object() || j.is_array()) {
    for (const auto& e : j) leaves(e, f);
  } else {
    f(j);
  }
}

}  // namespace

TEST_CASE("usage errors exit 3") {
  CHECK(run({}).code == 3);
  CHECK(run({"frobnicate"}).code == 3);
  CHECK(run({"check-preorder", "--source", "semion"}).code == 3);
  CHECK(run({"check-preorder", "--source", "semion", "--target", "trivial", "--mode", "x"}).code == 3);
  CHECK(run({"validate", "/nonexistent.json"}).code == 3);
  CHECK(run({"invariants", "semion", "--tol", "-1"}).code == 3);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("catalog list and export") {
  const auto list = machine({"catalog", "list"});
  CHECK(list["result"]["models"].size() == catalog_names().size());
  const auto r = run({"catalog", "export", "fibonacci"});
  CHECK(r.code == 0);
  const auto md = category_from_json(Json::parse(r.out));
  CHECK(md.S() == resolve_catalog("fibonacci").S());
}

TEST_CASE("validate") {
  CHECK(run({"validate", "decohered_toric_code"}).code == 0);
  const auto strict = run({"validate", "decohered_toric_code", "--strict"});
  CHECK(strict.code == 1);
  CHECK(strict.out.find("modularity") != std::string::npos);
  CHECK(run({"validate", docs + "/toric_code.json", "--strict"}).code == 0);
  CHECK(run({"validate", docs + "/e-embed.json"}).code == 0);
}

TEST_CASE("invariants") {
  const auto j = machine({"invariants", docs + "/semion.json"});
  CHECK(j["exit_code"] == 0);
  CHECK(j["result"]["global_dim_sq"] == 2.0);
  CHECK(j["result"]["theta"][1] == Json::array({0.0, 1.0}));
}

TEST_CASE("check-preorder verdicts and exit codes") {
  const auto sem = run({"check-preorder", "--source", "semion", "--target", "trivial", "--mode", "full"});
  CHECK(sem.code == 1);
  CHECK(sem.out.find("verdict: OBSTRUCTED") != std::string::npos);
  const auto j = machine({"check-preorder", "--source", "semion", "--target", "trivial"});
  CHECK(j["result"]["twist"]["verdict"] == "OBSTRUCTED");
  CHECK(j["result"]["twist"]["obstruction"]["exhaustive"] == true);

  const auto dec = machine({"check-preorder", "--source", docs + "/decohered_toric_code.json",
                            "--target", "toric_code_z2"});
  CHECK(dec["exit_code"] == 0);
  CHECK(dec["result"]["verdict"] == "NO-OBSTRUCTION");
  CHECK(dec["result"]["statement"] == kNoObstructionStatement);
  CHECK(dec["result"]["functor"]["certificates"].size() >= 2);

  CHECK(run({"check-preorder", "--source", "semion", "--target", "fibonacci", "--mode", "s",
             "--multistart", "1", "--iters", "5"})
            .code == 2);
  CHECK(run({"check-preorder", "--source", "toric_code_z2", "--target", "toric_code_z2", "--mode",
             "twist"})
            .code == 0);
}

TEST_CASE("verify-lemmas") {
  const auto r = run({"verify-lemmas", "toric_code_z2", "--samples", "100", "--seed", "7"});
  CHECK(r.code == 0);
  CHECK(r.out.find("two_path_double_braiding") != std::string::npos);
  CHECK(r.out.find("agreed: 100/100") != std::string::npos);
  const auto fib = machine({"verify-lemmas", "fibonacci", "--samples", "20"});
  CHECK(fib["result"]["pointed"] == false);
  CHECK(fib["exit_code"] == 0);
}

TEST_CASE("transport") {
  const auto j = machine({"transport", "--functor", docs + "/e-embed.json"});
  CHECK(j["exit_code"] == 0);
  for (const auto& [k, v] : j["result"]["residuals"].items()) CHECK(v.get<double>() < 1e-10);
  const auto rnd = machine({"transport", "--functor", docs + "/e-embed.json", "--deform", "random",
                            "--seed", "9"});
  CHECK(rnd["exit_code"] == 0);
  CHECK(rnd["result"]["all_pass"] == true);
}

TEST_CASE("machine reports are deterministic and carry the same data as text") {
  const std::vector<std::vector<std::string>> cases{
      {"check-preorder", "--source", "decohered_toric_code", "--target", "toric_code_z2"},
      {"verify-lemmas", "double_semion", "--samples", "30", "--seed", "3"},
      {"transport", "--functor", docs + "/e-embed.json", "--deform", "random"},
      {"invariants", "ising"}};
  for (const auto& args : cases) {
    auto m = args;
    m.insert(m.end(), {"--output", "machine"});
    const auto a = run(m), b = run(m);
    CHECK(a.out == b.out);
    const auto text = run(args).out;
    leaves(Json::parse(a.out), [&](const Json& leaf) {
      if (leaf.is_string() && (leaf == "machine" || leaf == "--output")) return;
      const std::string s = leaf.is_string() ? leaf.get<std::string>() : leaf.dump();
      CHECK_MESSAGE(text.find(s) != std::string::npos, s);
    });
  }
}

TEST_CASE("timing only when asked") {
  CHECK_FALSE(machine({"invariants", "semion"}).contains("timing_ms"));
  CHECK(machine({"invariants", "semion", "--timing"}).contains("timing_ms"));
}
