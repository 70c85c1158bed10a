#pragma once

#include "polyent/linalg.hpp"
#include "polyent/states.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace polyent {

enum class Objective { minimize, maximize };

/// Search settings shared by every optimizer-backed measure.
///
/// A candidate is a list of isometries, one per measured factor: n x k with
/// W^dagger W = I, row x holding the components of outcome x (for a POVM,
/// M_x = r_x^dagger r_x; for a decomposition, u_{x i}).
struct OptimConfig {
  int restarts = 32;
  int max_iterations = 400;
  double step_tolerance = 1e-7;
  double value_tolerance = 1e-9;
  std::uint64_t seed = 1;
  /// Outcomes per factor; 0 picks min(r^2, 2r + 2) for rank/dimension r.
  int outcome_count = 0;
  /// Largest outcome count escalation may reach; 0 means one step above the
  /// starting count, negative disables escalation.
  int outcome_cap = 0;
  /// Caller candidates, each with one isometry per factor. Shorter candidates
  /// are padded with zero rows.
  std::vector<std::vector<CMatrix>> seeds;
};

struct RestartRecord {
  std::string origin;  // "eigen", "fourier", "thm1", "seed:3", "random:7", ...
  int outcomes = 0;
  double initial = 0.0;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct OptimResult {
  /// Extremum of the reported objective over every candidate.
  double value = 0.0;
  /// Achieving candidate, one isometry per factor.
  std::vector<CMatrix> isometries;
  std::string origin;
  std::vector<RestartRecord> trace;
  /// True when the winning local search met the step tolerance.
  bool converged = false;
  int outcome_count = 0;
  std::vector<std::string> events;
};

/// Member-level score on the normalized reduced state of the first
/// subsystem. Entropy and concurrence have fast paths.
struct PureScore {
  enum class Kind { entropy, concurrence, custom } kind = Kind::entropy;
  std::function<double(const CMatrix&)> custom;

  static PureScore entropy() { return {}; }
  static PureScore concurrence() { return {Kind::concurrence, {}}; }
};

/// Extremize sum_j p_j score(phi_j) over decompositions
/// sqrt(p_j) |phi_j> = sum_i u_{ji} sqrt(lambda_i) |e_i> of a bipartite rho.
OptimResult optimize_decomposition(const CMatrix& rho, const DimList& dims, Objective objective, const PureScore& score,
                                   const OptimConfig& config);

/// Extremize S(target) - sum_x p_x S(target^x) over rank-1 POVMs on subsystem
/// `measured` of a pure state.
OptimResult optimize_povm(const CVector& psi, const DimList& dims, int target, int measured, Objective objective,
                          const OptimConfig& config);

/// As optimize_povm with product POVMs {M_x (x) N_y} on two subsystems.
/// The result holds the two marginal isometries.
OptimResult optimize_product_povm(const CVector& psi, const DimList& dims, int target, std::pair<int, int> measured,
                                  Objective objective, const OptimConfig& config);

/// Extremize S(rho_A) - sum_x p_x S(rho_A^x) over rank-1 POVMs on B of a
/// mixed bipartite rho_AB.
OptimResult optimize_mixed_povm(const CMatrix& rho_ab, const DimList& dims, Objective objective,
                                const OptimConfig& config);

/// Default outcome count min(r^2, 2r + 2), never below r.
int default_outcome_count(int r);

/// Candidate isometries (n x d) used for POVM searches on a subsystem whose
/// reduced state is `rho_measured`: computational, Fourier, eigenbasis,
/// Fourier over the eigenbasis, and the half-and-half mixture of the last two.
struct PovmCandidate {
  std::string origin;
  CMatrix isometry;
};
std::vector<PovmCandidate> povm_pool(const CMatrix& rho_measured);

/// Decomposition of a bipartite rho realized by the isometry u (n x r) in
/// the frame of its eigenvectors with eigenvalue above 1e-12, largest first.
/// Members with weight below 1e-14 are dropped.
Ensemble ensemble_from_isometry(const CMatrix& rho, const DimList& dims, const CMatrix& u);

/// Rank-1 POVM from isometry rows, skipping rows with squared norm below 1e-14.
Povm povm_from_isometry(const CMatrix& w);

}  // namespace polyent
