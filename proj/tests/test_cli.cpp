#include "polyent_app/app.hpp"

#include "polyent/state_io.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "polyent");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = polyent::app::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(POLYENT_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "polyent_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

double value_of(const CliRun& r) { return json::parse(r.out)["results"][0]["value"].get<double>(); }

}  // namespace

TEST(CliCompute, Remark1Ue) {
  const CliRun r = run({"compute", "--builtin", "remark1", "--measure", "ue", "--cut", "AB"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(value_of(r), 5.0 / 3.0 - std::log2(3.0), 1e-4);
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["results"][0]["bound_direction"], "upper-estimate");
  EXPECT_EQ(doc["results"][0]["certificate"]["type"], "povm");
  EXPECT_EQ(doc["config"]["seed"], 1);
}

TEST(CliCompute, GhzUeVanishes) {
  const CliRun r = run({"compute", "--builtin", "ghz3", "--measure", "ue", "--cut", "AB"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_LE(std::abs(value_of(r)), 1e-6);
}

TEST(CliCompute, WConcurrenceAcrossCut) {
  const CliRun r = run({"compute", "--builtin", "w3", "--measure", "concurrence", "--cut", "A|BC"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(value_of(r), 2 * std::sqrt(2.0) / 3, 1e-12);
  EXPECT_EQ(json::parse(r.out)["results"][0]["cut"], "A|BC");
}

TEST(CliCompute, ClosedFormsAndRoutes) {
  EXPECT_NEAR(value_of(run({"compute", "--builtin", "bell", "--measure", "mutual_info"})), 2.0, 1e-12);
  EXPECT_NEAR(value_of(run({"compute", "--builtin", "bell", "--measure", "entropy", "--cut", "A"})), 1.0, 1e-12);
  EXPECT_NEAR(value_of(run({"compute", "--measure", "curly_e", "--x", "1"})), 1.0, 1e-15);
  EXPECT_NEAR(value_of(run({"compute", "--builtin", "max_mixed(2,2)", "--measure", "coherent_info"})), -1.0, 1e-12);
  const CliRun p = run({"compute", "--builtin", "bell", "--measure", "ue", "--route", "purification", "--restarts", "2"});
  ASSERT_EQ(p.code, 0) << p.err;
  EXPECT_NEAR(value_of(p), 1.0, 1e-6);
  const CliRun l = run({"compute", "--builtin", "ghz4", "--measure", "localizable_ea", "--cut", "A|C|D", "--restarts", "2"});
  ASSERT_EQ(l.code, 0) << l.err;
  EXPECT_NEAR(value_of(l), 1.0, 1e-6);
  EXPECT_EQ(run({"compute", "--builtin", "ghz3", "--measure", "thm1_bound", "--cut", "AB"}).code, 0);
}

TEST(CliCompute, StateFileInput) {
  const fs::path f = scratch("state.json");
  std::ofstream(f) << polyent::format_state(polyent::bell());
  const CliRun r = run({"compute", "--state", f.string(), "--measure", "eof"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(value_of(r), 1.0, 1e-12);
}

TEST(CliCompute, CsvFormat) {
  const CliRun r = run({"compute", "--builtin", "bell", "--measure", "concurrence", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("measure,state,cut,value", 0), 0u);
}

TEST(CliCompute, InputErrorsExitTwo) {
  EXPECT_EQ(run({"compute", "--builtin", "nope", "--measure", "ue"}).code, 2);
  EXPECT_EQ(run({"compute", "--builtin", "bell", "--measure", "nope"}).code, 2);
  EXPECT_EQ(run({"compute", "--builtin", "bell", "--measure", "ue", "--cut", "AZ"}).code, 2);
  EXPECT_EQ(run({"compute", "--builtin", "ghz3", "--measure", "ue", "--cut", "ABC"}).code, 2);
  EXPECT_EQ(run({"compute", "--builtin", "w4", "--measure", "concurrence", "--cut", "AB|C"}).code, 2);
  const fs::path bad = scratch("bad.json");
  std::ofstream(bad) << "{\"kind\": \"pure\", \"dims\": [2], ";
  EXPECT_EQ(run({"compute", "--state", bad.string(), "--measure", "entropy"}).code, 2);
  EXPECT_EQ(run({"compute", "--state", scratch("missing.json").string(), "--measure", "entropy"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST(CliVerify, ThreeTangleSuitePasses) {
  const CliRun r = run({"verify", "--suite", "three_tangle", "--samples", "200", "--seed", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["results"].size(), 200u);
  EXPECT_TRUE(doc["summary"]["violations"].empty());
  EXPECT_TRUE(doc["summary"]["runtime_ms"].is_null());
  EXPECT_EQ(doc["config"]["suite"], "three_tangle");
}

TEST(CliVerify, Remark1PrintsFacts) {
  const CliRun r = run({"verify", "--suite", "remark1"});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* fact : {"remark1.S_A", "remark1.member_concurrence", "remark1.E_a", "remark1.E_u", "remark1.rank",
                           "remark1.ppt"}) {
    EXPECT_NE(r.err.find(fact), std::string::npos) << fact;
  }
}

TEST(CliVerify, ViolationExitsOne) {
  const CliRun r = run({"verify", "--suite", "three_qubit_polygamy", "--samples", "10", "--tol", "-0.05"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("violation:"), std::string::npos);
  EXPECT_FALSE(json::parse(r.out)["summary"]["violations"].empty());
}

TEST(CliVerify, UnknownSuiteExitsTwo) {
  EXPECT_EQ(run({"verify", "--suite", "bogus"}).code, 2);
  EXPECT_EQ(run({"verify", "--suite", "kw_identity", "--dims", "2,x"}).code, 2);
}

TEST(CliVerify, CsvAndTiming) {
  const CliRun c = run({"verify", "--suite", "coa_polygamy", "--samples", "3", "--format", "csv"});
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(c.out.rfind("check,state,seed,index", 0), 0u);
  const CliRun t = run({"verify", "--suite", "coa_polygamy", "--samples", "3", "--timing"});
  EXPECT_TRUE(json::parse(t.out)["summary"]["runtime_ms"].is_number());
}

TEST(CliVerify, SamplerOverride) {
  const CliRun r = run({"verify", "--suite", "kw_identity", "--samples", "4", "--dims", "3,2,2"});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const auto& res : json::parse(r.out)["results"]) {
    EXPECT_EQ(res["state"].get<std::string>().rfind("haar_pure(3,2,2)", 0), 0u);
  }
}

TEST(CliSample, PureStatesAreNormalized) {
  const CliRun r = run({"sample", "--dims", "2,2,2", "--kind", "pure", "--count", "3", "--seed", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto states = polyent::parse_state_list(r.out);
  ASSERT_EQ(states.size(), 3u);
  for (const auto& s : states) {
    EXPECT_EQ(s.vector().size(), 8);
    EXPECT_NEAR(s.vector().norm(), 1.0, 1e-12);
  }
}

TEST(CliSample, MixedRankTwo) {
  const CliRun r = run({"sample", "--dims", "2,2", "--kind", "mixed", "--rank", "2", "--count", "1", "--seed", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto states = polyent::parse_state_list(r.out);
  ASSERT_EQ(states.size(), 1u);
  const polyent::CMatrix rho = states[0].density();
  EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
  EXPECT_GE(polyent::min_eigenvalue(rho), -1e-12);
  EXPECT_EQ(polyent::numerical_rank(rho), 2);
}

TEST(CliSample, InvalidDimsExitTwo) {
  EXPECT_EQ(run({"sample", "--dims", "1,2"}).code, 2);
  EXPECT_EQ(run({"sample", "--dims", "2,2", "--kind", "mixed", "--rank", "9"}).code, 2);
  EXPECT_EQ(run({"sample", "--dims", "2,2", "--kind", "weird"}).code, 2);
}

TEST(CliBinary, ExitCodesAndByteIdenticalOutput) {
  const fs::path a = scratch("a.json"), b = scratch("b.json");
  fs::remove(a);
  fs::remove(b);
  ASSERT_EQ(run_binary("sample --dims 2,2,2 --kind pure --count 3 --seed 5 --out " + a.string()), 0);
  ASSERT_EQ(run_binary("sample --dims 2,2,2 --kind pure --count 3 --seed 5 --out " + b.string()), 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_FALSE(slurp(a).empty());
  for (const auto& entry : fs::directory_iterator(a.parent_path())) {
    EXPECT_EQ(entry.path().string().find(".tmp."), std::string::npos) << entry.path();
  }
  EXPECT_EQ(run_binary("verify --suite bogus"), 2);
  EXPECT_EQ(run_binary("verify --suite three_qubit_polygamy --samples 20 --tol -0.05"), 1);
  EXPECT_EQ(run_binary("verify --suite curly_e_property"), 0);
  EXPECT_EQ(run_binary("--help"), 0);
}

TEST(CliEnvironment, PrefixedVariablesOverrideDefaults) {
  ::setenv("POLYENT_SEED", "42", 1);
  const CliRun r = run({"verify", "--suite", "three_tangle", "--samples", "2"});
  const CliRun flag = run({"verify", "--suite", "three_tangle", "--samples", "2", "--seed", "3"});
  ::unsetenv("POLYENT_SEED");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["config"]["seed"], 42);
  EXPECT_EQ(json::parse(flag.out)["config"]["seed"], 3);
}
