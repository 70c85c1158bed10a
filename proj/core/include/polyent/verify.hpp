#pragma once

#include "polyent/measures.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace polyent {

enum class CheckId {
  kw_identity,
  lemma1_equiv,
  subadd,
  lower_bound,
  upper_bound,
  omega_identities,
  tripartite_polygamy,
  curly_e_property,
  three_tangle,
  three_qubit_polygamy,
  rank2_bounds,
  coa_polygamy,
  nqubit_polygamy,
  zero_ue_separable,
  mixed_tradeoff,
  cor2_tradeoff,
};

/// How a numerical pass relates to the true statement.
///   exact: closed forms or algebraic identities.
///   conservative: estimate directions make a pass imply the true inequality.
///   conservative_by_seeding: the seeded candidate realizes the proof's
///     construction, so a failure means an implementation bug.
///   optimizer_dependent: compares estimates with mixed directions.
///   sanity: a pass is necessary but not sufficient.
enum class Classification { exact, conservative, conservative_by_seeding, optimizer_dependent, sanity };

std::string to_string(CheckId id);
std::string to_string(Classification c);
std::optional<CheckId> check_from_string(const std::string& name);
const std::vector<CheckId>& all_checks();
Classification classification_of(CheckId id);
double default_tolerance(CheckId id);
/// True when the check's value comes from a search (eligible for the
/// escalation re-run).
bool uses_optimizer(CheckId id);

struct CheckOptions {
  OptimConfig optim;
  std::optional<double> tolerance;
  /// kw_identity: POVM on B; computational basis when absent.
  std::optional<Povm> povm;
  /// subadd: second factor sigma; rho itself when absent.
  std::optional<MultipartiteState> partner;
  /// curly_e_property: grid row evaluated and grid resolution.
  int grid_row = 0;
  int grid_size = 201;
};

struct CheckResult {
  std::string check;
  std::string state;
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
  std::uint64_t optimizer_seed = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  /// rhs - lhs for inequalities lhs <= rhs; -|residual| for identities.
  double margin = 0.0;
  double tolerance = 0.0;
  Classification classification = Classification::exact;
  bool pass = false;
  bool escalated = false;
  /// Named constituent values, in computation order.
  std::vector<std::pair<std::string, double>> values;
  /// One-line summaries of the certificates behind optimized values.
  std::vector<std::string> certificates;
  std::vector<std::string> notes;
};

/// Evaluate one check on one state. Throws DimensionError when the state
/// does not fit the check.
CheckResult run_check(CheckId id, const MultipartiteState& state, const CheckOptions& options);

/// Overrides for the default sampler of a suite; lists are cycled by index.
struct SamplerSpec {
  std::vector<DimList> dims;
  std::vector<int> ranks;
};

struct SuiteConfig {
  std::size_t samples = 50;
  std::uint64_t seed = 1;
  std::uint64_t first_index = 0;
  /// Base optimizer settings; the seed is replaced per sample.
  OptimConfig optim;
  std::optional<double> tolerance;
  SamplerSpec sampler;
};

struct SuiteReport {
  std::string suite;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<CheckResult> results;
  /// Indices into `results` of the failed checks.
  std::vector<std::size_t> violations;
  double worst_margin = 0.0;
  double runtime_ms = 0.0;
};

/// Check suites, "remark1" and "all".
std::vector<std::string> suite_names();
bool is_suite(const std::string& name);

/// Deterministic sweep. Failures of optimizer-backed checks are re-run once
/// with four times the restarts; the re-run result is the one recorded.
SuiteReport run_suite(const std::string& suite, const SuiteConfig& config);

/// The 2 x 2 x 3 separable-yet-unlocalizable example, fact by fact.
SuiteReport run_remark1(const OptimConfig& config = {});

/// Optimizer seed used for sample `index` of a check under a suite seed.
std::uint64_t sample_optimizer_seed(std::uint64_t seed, CheckId id, std::uint64_t index);

}  // namespace polyent
