// Acceptance run: one line per criterion, nonzero exit if any fails.

#include "polyent/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace polyent;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

void require(Outcome& o, bool ok, const std::string& what) {
  if (!ok) {
    o.pass = false;
    o.detail += (o.detail.empty() ? "" : "; ") + what;
  }
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

double value(const CheckResult& r, const std::string& name) {
  for (const auto& [k, v] : r.values)
    if (k == name) return v;
  return std::nan("");
}

SuiteReport suite(const std::string& name, std::size_t samples, std::uint64_t seed, SamplerSpec sampler = {}) {
  SuiteConfig c;
  c.samples = samples;
  c.seed = seed;
  c.sampler = std::move(sampler);
  return run_suite(name, c);
}

std::string summary(const SuiteReport& r) {
  return r.suite + ": " + std::to_string(r.results.size()) + " results, " + std::to_string(r.violations.size()) +
         " violations, worst margin " + num(r.worst_margin);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome remark1() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const SuiteReport r = run_remark1();
  const double secs = seconds_since(t0);
  auto fact = [&](const std::string& name) -> const CheckResult& {
    for (const auto& x : r.results)
      if (x.check == "remark1." + name) return x;
    throw std::runtime_error("missing fact " + name);
  };
  const double ea = fact("E_a").lhs, eu = fact("E_u").lhs;
  require(o, std::abs(ea - (std::log2(3.0) - 2.0 / 3.0)) <= 1e-4, "E_a(rho_AC) = " + num(ea));
  require(o, std::abs(eu - (5.0 / 3.0 - std::log2(3.0))) <= 1e-4, "E_u(rho_AB) = " + num(eu));
  require(o, fact("rank").lhs == 3.0, "rank");
  require(o, fact("ppt").rhs >= -1e-9, "PPT");
  require(o, -fact("member_concurrence").margin <= 1e-6, "member concurrence");
  require(o, r.violations.empty(), "fact violations");
  require(o, secs <= 60.0, "runtime " + num(secs) + " s");
  o.detail = "E_a " + num(ea) + ", E_u " + num(eu) + ", rank " + num(fact("rank").lhs) + ", PT min " +
             num(fact("ppt").rhs) + (o.detail.empty() ? "" : "; FAILED: " + o.detail);
  return o;
}

Outcome three_tangle() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const SuiteReport r = suite("three_tangle", 200, 7);
  const double secs = seconds_since(t0);
  double worst = 0.0;
  for (const auto& x : r.results) worst = std::max(worst, -x.margin);
  require(o, r.results.size() == 200 && r.violations.empty(), "violations");
  require(o, worst <= 1e-8, "residual " + num(worst));
  require(o, secs <= 10.0, "runtime " + num(secs) + " s");
  o.detail = summary(r) + ", max residual " + num(worst) + (o.detail.empty() ? "" : "; FAILED: " + o.detail);
  return o;
}

Outcome three_qubit() {
  Outcome o;
  const SuiteReport closed = suite("three_qubit_polygamy", 200, 1);
  const SuiteReport opt = suite("tripartite_polygamy", 200, 1);
  require(o, closed.violations.empty() && closed.worst_margin >= -1e-8, "closed-form path");
  require(o, opt.violations.empty() && opt.worst_margin >= -1e-3, "optimizer path");
  std::size_t escalated = 0;
  for (const auto& x : opt.results) escalated += x.escalated;
  o.detail = summary(closed) + "; " + summary(opt) + ", escalated " + std::to_string(escalated) +
             (o.detail.empty() ? "" : "; FAILED: " + o.detail);
  return o;
}

Outcome four_qubit() {
  Outcome o;
  const SuiteReport a = suite("nqubit_polygamy", 100, 1);
  const SuiteReport b = suite("coa_polygamy", 100, 1);
  require(o, a.results.size() == 100 && a.violations.empty(), "entropy polygamy");
  require(o, b.results.size() == 100 && b.violations.empty(), "concurrence polygamy");
  o.detail = summary(a) + "; " + summary(b) + (o.detail.empty() ? "" : "; FAILED: " + o.detail);
  return o;
}

Outcome higher_dimension() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const SuiteReport a = suite("tripartite_polygamy", 50, 1, {{DimList{3, 3, 3}}, {}});
  const SuiteReport b = suite("tripartite_polygamy", 50, 1, {{DimList{2, 3, 4}}, {}});
  const double secs = seconds_since(t0);
  require(o, a.violations.empty() && a.worst_margin >= -1e-3, "(3,3,3)");
  require(o, b.violations.empty() && b.worst_margin >= -1e-3, "(2,3,4)");
  require(o, secs <= 600.0, "runtime " + num(secs) + " s");
  o.detail = "(3,3,3) " + summary(a) + "; (2,3,4) " + summary(b) + ", " + num(secs) + " s" +
             (o.detail.empty() ? "" : "; FAILED: " + o.detail);
  return o;
}

Outcome omega() {
  Outcome o;
  const SuiteReport r = suite("omega_identities", 50, 3);
  std::set<std::string> db;
  double worst_identity = 0.0, worst_defect = 0.0, worst_half = 0.0;
  for (const auto& x : r.results) {
    for (const char* k : {"residual_x", "residual_y", "residual_xy"}) worst_identity = std::max(worst_identity, value(x, k));
    worst_defect = std::max(worst_defect, value(x, "chi0") + value(x, "chi1") - value(x, "mutual_information"));
    worst_half = std::max(worst_half, value(x, "povm_value") - 0.5 * value(x, "mutual_information"));
    db.insert(x.state.substr(0, x.state.find(' ')));
  }
  require(o, r.violations.empty(), "violations");
  require(o, worst_identity <= 1e-9, "identity residual " + num(worst_identity));
  require(o, worst_defect <= 1e-9, "defect sum exceeds I by " + num(worst_defect));
  require(o, worst_half <= 1e-9, "measurement value exceeds I/2 by " + num(worst_half));
  o.detail = summary(r) + ", identity residual " + num(worst_identity) + ", " + std::to_string(db.size()) +
             " dimension pairs" + (o.detail.empty() ? "" : "; FAILED: " + o.detail);
  return o;
}

Outcome koashi_winter() {
  Outcome o;
  const SuiteReport r = suite("kw_identity", 500, 1);
  double worst = 0.0;
  for (const auto& x : r.results) worst = std::max(worst, -x.margin);
  require(o, r.results.size() == 500 && r.violations.empty(), "violations");
  require(o, worst <= 1e-10, "residual " + num(worst));
  o.detail = summary(r) + ", max residual " + num(worst) + (o.detail.empty() ? "" : "; FAILED: " + o.detail);
  return o;
}

Outcome curly_grid() {
  Outcome o;
  const SuiteReport r = suite("curly_e_property", 0, 1);
  int points = 0;
  for (const auto& x : r.results) points += static_cast<int>(value(x, "points"));
  require(o, r.results.size() == 201, "rows");
  require(o, r.worst_margin >= -1e-12, "worst " + num(r.worst_margin));
  o.detail = summary(r) + ", " + std::to_string(points) + " grid points" +
             (o.detail.empty() ? "" : "; FAILED: " + o.detail);
  return o;
}

Outcome seeded() {
  Outcome o;
  std::string parts;
  for (const char* name : {"subadd", "upper_bound", "mixed_tradeoff", "cor2_tradeoff"}) {
    const SuiteReport r = suite(name, 50, 1);
    bool tol_ok = true;
    for (const auto& x : r.results) tol_ok &= x.tolerance == 1e-9;
    require(o, r.results.size() == 50 && r.violations.empty() && tol_ok, name);
    parts += (parts.empty() ? "" : "; ") + summary(r);
  }
  o.detail = parts + (o.detail.empty() ? "" : "; FAILED: " + o.detail);
  return o;
}

Outcome analytic() {
  Outcome o;
  const DimList ab{2, 2};
  const double g = ue_direct(ghz(3).reduced({0, 1}), ab, {}).value;
  const double m = ue_direct(max_mixed(ab).density(), ab, {}).value;
  const double b = ue_direct(bell().density(), ab, {}).value;
  const double ic = coherent_information(bell().density(), ab);
  require(o, std::abs(g) <= 1e-6, "GHZ");
  require(o, std::abs(m) <= 1e-6, "I/4");
  require(o, std::abs(b - 1.0) <= 1e-6, "Bell");
  require(o, std::abs(b - std::max(ic, 0.0)) <= 1e-6, "coherent-information bound not tight");
  o.detail = "GHZ " + num(g) + ", I/4 " + num(m) + ", Bell " + num(b) + " (I_c " + num(ic) + ")" +
             (o.detail.empty() ? "" : "; FAILED: " + o.detail);
  return o;
}

Outcome determinism() {
  Outcome o;
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "polyent_acceptance";
  fs::create_directories(dir);
  std::string bytes[2];
  int codes[2];
  for (int k = 0; k < 2; ++k) {
    const fs::path out = dir / ("all_" + std::to_string(k) + ".json");
    fs::remove(out);
    const std::string cmd = std::string(POLYENT_CLI_PATH) + " verify --suite all --samples 50 --seed 1 --out " +
                            out.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    codes[k] = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    bytes[k] = os.str();
  }
  require(o, !bytes[0].empty(), "empty report");
  require(o, bytes[0] == bytes[1], "reports differ");
  require(o, codes[0] == 0 && codes[1] == 0, "exit codes " + std::to_string(codes[0]) + "," + std::to_string(codes[1]));
  o.detail = "two runs, " + std::to_string(bytes[0].size()) + " bytes each, exit " + std::to_string(codes[0]) +
             (o.detail.empty() ? "" : "; FAILED: " + o.detail);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"separable state with nonzero unlocalizable entanglement", remark1},
      {"three-tangle identity on 200 three-qubit states", three_tangle},
      {"three-qubit polygamy, closed-form and optimizer paths", three_qubit},
      {"four-qubit polygamy in entropy and concurrence", four_qubit},
      {"tripartite polygamy on (3,3,3) and (2,3,4)", higher_dimension},
      {"Omega-state identities and defect bounds", omega},
      {"per-measurement Koashi-Winter identity on 500 pairs", koashi_winter},
      {"curly-E subadditivity on the quarter-disk grid", curly_grid},
      {"seeded constructions on 50 instances each", seeded},
      {"analytic values for GHZ, maximally mixed and Bell", analytic},
      {"byte-identical reports for the full suite", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += !o.pass;
    std::printf("criterion %2zu %s: %s [%s] (%.1f s)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
