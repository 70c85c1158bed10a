#include "polyent_app/app.hpp"

#include "polyent/measures.hpp"
#include "polyent/state_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <unistd.h>

#ifndef POLYENT_VERSION
#define POLYENT_VERSION "0.0.0"
#endif

namespace polyent::app {

namespace {

using json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

json complex_data(const CMatrix& m) {
  json data = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back({number(m(i, j).real()), number(m(i, j).imag())});
  return data;
}

json complex_data(const CVector& v) {
  json data = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) data.push_back({number(v(i).real()), number(v(i).imag())});
  return data;
}

json povm_json(const Povm& p) {
  json j;
  j["type"] = "povm";
  j["outcomes"] = p.size();
  j["dim"] = p.dim();
  j["elements"] = json::array();
  for (const auto& e : p.elements) j["elements"].push_back(complex_data(e));
  return j;
}

json certificate_json(const Certificate& cert) {
  if (const auto* p = std::get_if<Povm>(&cert)) return povm_json(*p);
  if (const auto* pp = std::get_if<ProductPovm>(&cert)) {
    json j;
    j["type"] = "product_povm";
    j["first"] = povm_json(pp->first);
    j["second"] = povm_json(pp->second);
    return j;
  }
  if (const auto* e = std::get_if<Ensemble>(&cert)) {
    json j;
    j["type"] = "ensemble";
    j["members"] = e->members.size();
    j["dims"] = e->dims.values();
    j["weights"] = json::array();
    for (double w : e->weights) j["weights"].push_back(number(w));
    j["states"] = json::array();
    for (const auto& m : e->members) j["states"].push_back(complex_data(m));
    return j;
  }
  return nullptr;
}

json search_json(const OptimResult& res) {
  json j;
  j["origin"] = res.origin;
  j["outcome_count"] = res.outcome_count;
  j["converged"] = res.converged;
  j["events"] = res.events;
  j["restarts"] = json::array();
  for (const auto& t : res.trace) {
    j["restarts"].push_back({{"origin", t.origin},
                             {"outcomes", t.outcomes},
                             {"initial", number(t.initial)},
                             {"value", number(t.value)},
                             {"iterations", t.iterations},
                             {"converged", t.converged}});
  }
  return j;
}

json config_json(const RunConfig& c) {
  json j;
  j["seed"] = c.seed;
  j["restarts"] = c.restarts;
  j["max_iterations"] = c.max_iterations;
  j["povm_card"] = c.povm_card;
  j["outcome_cap"] = c.outcome_cap;
  j["tolerance"] = c.tolerance ? number(*c.tolerance) : json(nullptr);
  j["format"] = c.format == Format::json ? "json" : "csv";
  j["timing"] = c.timing;
  return j;
}

json result_json(const CheckResult& r) {
  json j;
  j["check"] = r.check;
  j["state"] = r.state;
  j["seed"] = r.seed;
  j["index"] = r.index;
  j["optimizer_seed"] = r.optimizer_seed;
  j["lhs"] = number(r.lhs);
  j["rhs"] = number(r.rhs);
  j["margin"] = number(r.margin);
  j["tolerance"] = number(r.tolerance);
  j["classification"] = to_string(r.classification);
  j["pass"] = r.pass;
  j["escalated"] = r.escalated;
  json values = json::object();
  for (const auto& [k, v] : r.values) values[k] = number(v);
  j["values"] = values;
  j["certificates"] = r.certificates;
  j["notes"] = r.notes;
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string csv_number(double v) {
  if (!std::isfinite(v)) return "";
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw UsageError(std::string("invalid ") + what + ": '" + text + "'");
    }
    if (used != item.size()) throw UsageError(std::string("invalid ") + what + ": '" + text + "'");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError(std::string("empty ") + what);
  return out;
}

DimList parse_dims(const std::string& text) {
  const auto v = parse_int_list(text, "dims");
  for (int d : v)
    if (d < 2) throw UsageError("dims must be integers >= 2, got '" + text + "'");
  return DimList(v);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void emit(const RunConfig& cfg, const std::string& content, std::ostream& out) {
  if (cfg.out.empty()) {
    out << content;
  } else {
    write_atomic(cfg.out, content);
  }
}

// ---------------------------------------------------------------------------
// compute

struct ComputeArgs {
  std::string state_file;
  std::string builtin;
  std::string measure;
  std::string cut;
  std::string route = "direct";
  std::optional<double> x;
};

const std::vector<std::string>& measure_names() {
  static const std::vector<std::string> names = {"entropy", "mutual_info", "coherent_info", "curly_e", "concurrence",
                                                 "coa",     "eof",         "eoa",           "hv",      "ue",
                                                 "ue_product", "localizable_ea", "thm1_bound"};
  return names;
}

MeasureValue exact(double v) {
  MeasureValue m;
  m.value = v;
  return m;
}

void require_parts(const std::vector<std::vector<int>>& parts, std::size_t n, const std::string& measure) {
  if (parts.size() != n) {
    throw UsageError("measure " + measure + " needs a cut with " + std::to_string(n) + " parts, got " +
                     std::to_string(parts.size()));
  }
}

bool two_qubit(const MultipartiteState& s) { return s.dims() == DimList{2, 2}; }

MeasureValue compute_measure(const ComputeArgs& a, const MultipartiteState& state, const RunConfig& cfg,
                             std::vector<std::vector<int>>& parts) {
  const OptimConfig oc = cfg.optim();
  const std::string& m = a.measure;
  parts = a.cut.empty() ? std::vector<std::vector<int>>{} : parse_cut(a.cut, state);
  if (parts.empty())
    for (int i = 0; i < static_cast<int>(state.subsystems()); ++i) parts.push_back({i});

  if (m == "entropy") {
    std::vector<int> all;
    for (const auto& p : parts) all.insert(all.end(), p.begin(), p.end());
    return exact(entropy(regroup(state, {all}).density()));
  }
  if (m == "ue_product" || m == "localizable_ea") {
    require_parts(parts, 3, m);
    const MultipartiteState g = regroup(state, parts);
    const ProductRoles roles{0, 1, 2};
    return m == "ue_product" ? ue_product(g, roles, oc) : localizable_ea(g, roles, oc);
  }
  require_parts(parts, 2, m);
  const MultipartiteState g = regroup(state, parts);
  const CMatrix rho = g.density();
  const DimList& d = g.dims();
  if (m == "mutual_info") return exact(mutual_information(rho, d));
  if (m == "coherent_info") return exact(coherent_information(rho, d));
  if (m == "concurrence") {
    if (g.is_pure()) return exact(concurrence_pure(g.vector(), d, {0}));
    if (two_qubit(g)) return exact(concurrence_2q(rho));
    throw UsageError("concurrence of a mixed state needs two qubits");
  }
  if (m == "coa") return two_qubit(g) ? exact(coa_2q(rho)) : coa_roof(rho, d, oc);
  if (m == "eof") return two_qubit(g) ? exact(eof_2q(rho)) : eof_roof(rho, d, oc);
  if (m == "eoa") return eoa_roof(rho, d, oc);
  if (m == "hv") return henderson_vedral(rho, d, oc);
  if (m == "ue") {
    if (a.route == "purification") return ue_via_purification(rho, d, oc);
    return ue_direct(rho, d, oc);
  }
  if (m == "thm1_bound") {
    const Thm1Bound t = thm1_povm_bound(rho, d);
    MeasureValue v = exact(t.value);
    v.direction = BoundDirection::upper_estimate;
    v.certificate = t.povm;
    return v;
  }
  throw UsageError("unknown measure: " + m);
}

std::string part_string(const MultipartiteState& state, const std::vector<std::vector<int>>& parts) {
  std::string s;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    if (p) s += '|';
    for (int i : parts[p]) s += state.labels()[i];
  }
  return s;
}

int cmd_compute(const ComputeArgs& a, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (a.measure != "curly_e" && a.state_file.empty() == a.builtin.empty()) {
    throw UsageError("compute needs exactly one of --state or --builtin");
  }
  const auto start = std::chrono::steady_clock::now();
  std::optional<MultipartiteState> state;
  std::string source;
  if (!a.builtin.empty()) {
    state = builtin_state(a.builtin);
    source = "builtin:" + a.builtin;
  } else if (!a.state_file.empty()) {
    state = parse_state(read_file(a.state_file));
    source = "file:" + std::filesystem::path(a.state_file).filename().string();
  }
  std::vector<std::vector<int>> parts;
  MeasureValue v;
  if (a.measure == "curly_e") {
    if (!a.x) throw UsageError("curly_e needs --x");
    v = exact(curly_e(*a.x));
  } else {
    v = compute_measure(a, *state, cfg, parts);
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  json res;
  res["measure"] = a.measure;
  res["state"] = source;
  res["cut"] = state ? part_string(*state, parts) : "";
  if (a.x) res["x"] = *a.x;
  if (a.measure == "ue") res["route"] = a.route;
  res["value"] = number(v.value);
  res["method"] = to_string(v.method);
  res["bound_direction"] = to_string(v.direction);
  res["certificate"] = certificate_json(v.certificate);
  res["search"] = v.search ? search_json(*v.search) : json(nullptr);

  std::string content;
  if (cfg.format == Format::json) {
    json doc;
    doc["version"] = POLYENT_VERSION;
    doc["command"] = "compute";
    doc["config"] = config_json(cfg);
    doc["results"] = json::array({res});
    doc["summary"] = {{"runtime_ms", cfg.timing ? number(ms) : json(nullptr)}};
    content = doc.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "measure,state,cut,value,method,bound_direction,origin,outcome_count,converged\n";
    os << csv_field(a.measure) << ',' << csv_field(source) << ',' << csv_field(res["cut"].get<std::string>()) << ','
       << csv_number(v.value) << ',' << to_string(v.method) << ',' << to_string(v.direction) << ','
       << (v.search ? csv_field(v.search->origin) : "") << ',' << (v.search ? std::to_string(v.search->outcome_count) : "")
       << ',' << (v.search ? (v.search->converged ? "true" : "false") : "") << '\n';
    content = os.str();
  }
  emit(cfg, content, out);
  err << a.measure << " = " << std::setprecision(12) << v.value << " (" << to_string(v.direction) << ")\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::string suite;
  std::size_t samples = 50;
  std::uint64_t first_index = 0;
  std::vector<std::string> dims;
  std::string ranks;
};

int cmd_verify(const VerifyArgs& a, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!is_suite(a.suite)) throw UsageError("unknown suite: " + a.suite);
  SuiteConfig sc;
  sc.samples = a.samples;
  sc.seed = cfg.seed;
  sc.first_index = a.first_index;
  sc.optim = cfg.optim();
  sc.tolerance = cfg.tolerance;
  for (const auto& group : a.dims) {
    std::stringstream ss(group);
    std::string item;
    while (std::getline(ss, item, ';'))
      if (!item.empty()) sc.sampler.dims.push_back(parse_dims(item));
  }
  if (!a.ranks.empty()) sc.sampler.ranks = parse_int_list(a.ranks, "ranks");

  const SuiteReport rep = run_suite(a.suite, sc);
  emit(cfg, cfg.format == Format::json ? suite_report_json(rep, cfg, sc) : suite_report_csv(rep), out);

  if (a.suite == "remark1") {
    for (const auto& r : rep.results) {
      err << r.check << ": lhs " << std::setprecision(10) << r.lhs << " rhs " << r.rhs << " margin " << r.margin
          << ' ' << (r.pass ? "pass" : "FAIL") << '\n';
    }
  }
  for (std::size_t i : rep.violations) {
    const auto& r = rep.results[i];
    err << "violation: " << r.check << " [" << r.state << "] seed " << r.seed << " index " << r.index << " lhs "
        << std::setprecision(12) << r.lhs << " rhs " << r.rhs << " margin " << r.margin << " tol " << r.tolerance
        << '\n';
  }
  err << "suite " << rep.suite << ": " << rep.results.size() << " results, " << rep.violations.size()
      << " violations, worst margin " << std::setprecision(6) << rep.worst_margin << ", " << std::fixed
      << std::setprecision(0) << rep.runtime_ms << " ms\n"
      << std::defaultfloat;
  return rep.violations.empty() ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------------------
// sample

struct SampleArgs {
  std::string dims;
  std::string kind = "pure";
  int rank = 0;
  std::size_t count = 1;
  std::uint64_t first_index = 0;
};

int cmd_sample(const SampleArgs& a, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (a.dims.empty()) throw UsageError("sample needs --dims");
  if (cfg.format != Format::json) throw UsageError("sample writes JSON only");
  const DimList dims = parse_dims(a.dims);
  const int rank = a.rank > 0 ? a.rank : dims.total();
  if (a.kind == "mixed" && rank > dims.total()) throw UsageError("rank exceeds the total dimension");
  std::vector<MultipartiteState> states;
  for (std::size_t i = 0; i < a.count; ++i) {
    const std::uint64_t index = a.first_index + i;
    if (a.kind == "pure") {
      states.push_back(random_pure(dims, cfg.seed, index));
    } else if (a.kind == "mixed") {
      states.push_back(random_mixed(dims, rank, cfg.seed, index));
    } else if (a.kind == "product") {
      states.push_back(random_product_pure(dims, cfg.seed, index));
    } else if (a.kind == "separable") {
      states.push_back(random_separable(dims, a.rank > 0 ? a.rank : 2, cfg.seed, index));
    } else {
      throw UsageError("unknown kind: " + a.kind);
    }
  }
  emit(cfg, format_state_list(states) + "\n", out);
  err << "sampled " << states.size() << " " << a.kind << " states on " << dims.to_string() << '\n';
  return kExitOk;
}

void add_run_options(CLI::App& sub, RunConfig& cfg, std::string& format) {
  sub.add_option("--seed", cfg.seed, "Master seed")->envname("POLYENT_SEED");
  sub.add_option("--restarts", cfg.restarts, "Random restarts per search")->envname("POLYENT_RESTARTS")
      ->check(CLI::NonNegativeNumber);
  sub.add_option("--max-iterations", cfg.max_iterations, "Sweeps per local search")
      ->envname("POLYENT_MAX_ITERATIONS")
      ->check(CLI::PositiveNumber);
  sub.add_option("--povm-card", cfg.povm_card, "Outcomes per measured factor (0 = automatic)")
      ->envname("POLYENT_POVM_CARD")
      ->check(CLI::NonNegativeNumber);
  sub.add_option("--outcome-cap", cfg.outcome_cap, "Escalation ceiling (0 = one above start, -1 = off)")
      ->envname("POLYENT_OUTCOME_CAP");
  sub.add_option("--tol", cfg.tolerance, "Override check tolerances")->envname("POLYENT_TOL");
  sub.add_option("--out", cfg.out, "Output file (stdout when absent)")->envname("POLYENT_OUT");
  sub.add_option("--format", format, "json or csv")->envname("POLYENT_FORMAT")->check(CLI::IsMember({"json", "csv"}));
  sub.add_flag("--timing", cfg.timing, "Record runtime in the report")->envname("POLYENT_TIMING");
}

}  // namespace

OptimConfig RunConfig::optim() const {
  OptimConfig c;
  c.restarts = restarts;
  c.max_iterations = max_iterations;
  c.seed = seed;
  c.outcome_count = povm_card;
  c.outcome_cap = outcome_cap;
  return c;
}

std::vector<std::string> builtin_names() {
  return {"ghz2", "ghz3", "ghz4", "w3", "w4", "bell", "remark1", "max_mixed(d1,d2,...)"};
}

MultipartiteState builtin_state(const std::string& name) {
  if (name == "ghz2") return ghz(2);
  if (name == "ghz3") return ghz(3);
  if (name == "ghz4") return ghz(4);
  if (name == "w3") return w_state(3);
  if (name == "w4") return w_state(4);
  if (name == "bell") return bell();
  if (name == "remark1") return remark1_state();
  const std::string prefix = "max_mixed";
  if (name.rfind(prefix, 0) == 0) {
    std::string rest = name.substr(prefix.size());
    if (rest.size() >= 2 && rest.front() == '(' && rest.back() == ')') {
      rest = rest.substr(1, rest.size() - 2);
    } else if (!rest.empty() && rest.front() == ':') {
      rest = rest.substr(1);
    } else {
      throw UsageError("max_mixed needs dimensions, e.g. max_mixed(2,2)");
    }
    return max_mixed(parse_dims(rest));
  }
  throw UsageError("unknown builtin: " + name);
}

std::vector<std::vector<int>> parse_cut(const std::string& cut, const MultipartiteState& state) {
  std::vector<std::string> groups;
  if (cut.find('|') != std::string::npos) {
    std::stringstream ss(cut);
    std::string g;
    while (std::getline(ss, g, '|')) groups.push_back(g);
  } else {
    for (char ch : cut) groups.emplace_back(1, ch);
  }
  std::vector<std::vector<int>> parts;
  std::vector<bool> used(state.subsystems(), false);
  for (const auto& g : groups) {
    std::vector<int> part;
    for (char ch : g) {
      if (ch == ' ') continue;
      const int idx = state.index_of(std::string(1, ch));
      if (idx < 0) throw UsageError(std::string("unknown subsystem label '") + ch + "' in cut '" + cut + "'");
      if (used[idx]) throw UsageError("subsystem repeated in cut '" + cut + "'");
      used[idx] = true;
      part.push_back(idx);
    }
    if (part.empty()) throw UsageError("empty part in cut '" + cut + "'");
    parts.push_back(std::move(part));
  }
  return parts;
}

std::string suite_report_json(const SuiteReport& report, const RunConfig& config, const SuiteConfig& suite) {
  json doc;
  doc["version"] = POLYENT_VERSION;
  doc["command"] = "verify";
  json cfg = config_json(config);
  cfg["suite"] = report.suite;
  cfg["samples"] = suite.samples;
  cfg["first_index"] = suite.first_index;
  json dims = json::array();
  for (const auto& d : suite.sampler.dims) dims.push_back(d.values());
  cfg["dims"] = dims;
  cfg["ranks"] = suite.sampler.ranks;
  doc["config"] = cfg;
  doc["results"] = json::array();
  for (const auto& r : report.results) doc["results"].push_back(result_json(r));
  json viol = json::array();
  for (std::size_t i : report.violations) {
    const auto& r = report.results[i];
    viol.push_back({{"result", i}, {"check", r.check}, {"index", r.index}, {"margin", number(r.margin)}});
  }
  doc["summary"] = {{"results", report.results.size()},
                    {"violations", viol},
                    {"worst_margin", number(report.worst_margin)},
                    {"runtime_ms", config.timing ? number(report.runtime_ms) : json(nullptr)}};
  return doc.dump(2) + "\n";
}

std::string suite_report_csv(const SuiteReport& report) {
  std::ostringstream os;
  os << "check,state,seed,index,optimizer_seed,lhs,rhs,margin,tolerance,classification,pass,escalated\n";
  for (const auto& r : report.results) {
    os << csv_field(r.check) << ',' << csv_field(r.state) << ',' << r.seed << ',' << r.index << ',' << r.optimizer_seed
       << ',' << csv_number(r.lhs) << ',' << csv_number(r.rhs) << ',' << csv_number(r.margin) << ','
       << csv_number(r.tolerance) << ',' << to_string(r.classification) << ',' << (r.pass ? "true" : "false") << ','
       << (r.escalated ? "true" : "false") << '\n';
  }
  return os.str();
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw UsageError("cannot write " + tmp.string());
    f << content;
    f.flush();
    if (!f) throw UsageError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw UsageError("cannot rename into " + target.string() + ": " + ec.message());
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement measures and polygamy checks", "polyent"};
  app.set_version_flag("--version", POLYENT_VERSION);
  app.require_subcommand(1);

  RunConfig cfg;
  std::string format = "json";

  ComputeArgs ca;
  auto* compute = app.add_subcommand("compute", "Evaluate one measure on a state");
  compute->add_option("--state", ca.state_file, "State file (JSON)");
  compute->add_option("--builtin", ca.builtin, "Named state: ghz2-4, w3, w4, bell, remark1, max_mixed(d,...)");
  compute->add_option("--measure", ca.measure, "Measure name")->required()->check(CLI::IsMember(measure_names()));
  compute->add_option("--cut", ca.cut, "Parts by label, e.g. AB or A|BC");
  compute->add_option("--route", ca.route, "ue route: direct or purification")
      ->check(CLI::IsMember({"direct", "purification"}));
  compute->add_option("--x", ca.x, "Argument of curly_e");
  add_run_options(*compute, cfg, format);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run a check suite");
  verify->add_option("--suite", va.suite, "Suite name or all")->required();
  verify->add_option("--samples", va.samples, "Samples per check")->envname("POLYENT_SAMPLES");
  verify->add_option("--first-index", va.first_index, "Index of the first sample");
  verify->add_option("--dims", va.dims, "Sampler dims, e.g. 3,3,3 (repeatable or ';'-separated)");
  verify->add_option("--ranks", va.ranks, "Sampler ranks, e.g. 1,2");
  add_run_options(*verify, cfg, format);

  SampleArgs sa;
  auto* sample = app.add_subcommand("sample", "Draw random states");
  sample->add_option("--dims", sa.dims, "Subsystem dims, e.g. 2,2,2")->required();
  sample->add_option("--kind", sa.kind, "pure, mixed, product or separable")
      ->check(CLI::IsMember({"pure", "mixed", "product", "separable"}));
  sample->add_option("--rank", sa.rank, "Rank (mixed) or component count (separable)");
  sample->add_option("--count", sa.count, "Number of states");
  sample->add_option("--first-index", sa.first_index, "Index of the first sample");
  add_run_options(*sample, cfg, format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  cfg.format = format == "csv" ? Format::csv : Format::json;

  try {
    if (*compute) return cmd_compute(ca, cfg, out, err);
    if (*verify) return cmd_verify(va, cfg, out, err);
    if (*sample) return cmd_sample(sa, cfg, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace polyent::app
