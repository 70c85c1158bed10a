#pragma once

#include "polyent/linalg.hpp"
#include "polyent/rng.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace polyent {

enum class StateKind { pure, mixed };

/// A pure vector or density matrix together with its subsystem structure.
///
/// Invariants are checked on construction: a pure state has unit norm within
/// 1e-10; a mixed state is Hermitian, PSD (min eigenvalue >= -1e-10) and has
/// unit trace within 1e-9.
class MultipartiteState {
 public:
  static MultipartiteState pure(CVector psi, DimList dims, std::vector<std::string> labels = {});
  static MultipartiteState mixed(CMatrix rho, DimList dims, std::vector<std::string> labels = {});

  StateKind kind() const { return kind_; }
  bool is_pure() const { return kind_ == StateKind::pure; }
  const DimList& dims() const { return dims_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t subsystems() const { return dims_.size(); }

  /// State vector; throws DomainError for mixed states.
  const CVector& vector() const;
  /// Density matrix (|psi><psi| for pure states).
  CMatrix density() const;
  /// Reduced density matrix on `keep`.
  CMatrix reduced(std::span<const int> keep) const;
  CMatrix reduced(std::initializer_list<int> keep) const;

  /// Index of the subsystem with the given label, or -1.
  int index_of(const std::string& label) const;

 private:
  MultipartiteState(StateKind kind, CVector psi, CMatrix rho, DimList dims, std::vector<std::string> labels);

  StateKind kind_;
  CVector psi_;
  CMatrix rho_;
  DimList dims_;
  std::vector<std::string> labels_;
};

/// Default labels "A", "B", ... for n subsystems.
std::vector<std::string> default_labels(std::size_t n);

/// Merge subsystems into parts (each part listed in order) and trace out the
/// subsystems not mentioned. A pure input stays pure only when nothing is
/// traced out. Part labels are the concatenated member labels.
MultipartiteState regroup(const MultipartiteState& state, const std::vector<std::vector<int>>& parts);

/// Measurement on one subsystem: positive operators summing to identity.
struct Povm {
  std::vector<CMatrix> elements;
  bool rank1 = false;

  /// Rank-1 POVM whose element x is r_x^dagger r_x for row r_x of the
  /// isometry `w` (n x d, w^dagger w = I). Row x holds the components <m_x|b>.
  static Povm from_isometry(const CMatrix& w);
  /// Projective measurement onto the columns of a unitary.
  static Povm from_basis(const CMatrix& basis);

  int dim() const;
  std::size_t size() const { return elements.size(); }
  /// Max-abs entry of sum(elements) - I.
  double completeness_residual() const;
  /// Throws DomainError unless completeness holds within `tol`, every element
  /// is PSD, and (for rank1) every element has numerical rank <= 1.
  void validate(double tol = 1e-9) const;
};

/// Rows of an isometry reproducing a rank-1 POVM (up to a phase per row).
CMatrix isometry_from_povm(const Povm& povm);

/// Product measurement {M_x (x) N_y} on two subsystems.
struct ProductPovm {
  Povm first;
  Povm second;
};

/// Weighted pure states realizing a density matrix.
struct Ensemble {
  std::vector<double> weights;
  std::vector<CVector> members;  // normalized
  DimList dims;

  CMatrix density() const;
};

/// Weighted density matrices, e.g. induced ensembles on one subsystem.
struct StateEnsemble {
  std::vector<double> weights;
  std::vector<CMatrix> states;  // unit trace

  CMatrix average() const;
};

// ---------------------------------------------------------------------------
// Named states.

MultipartiteState ghz(int n);
MultipartiteState w_state(int n);
/// (|00> + |11>) / sqrt(2).
MultipartiteState bell();
/// I / D on the given dims.
MultipartiteState max_mixed(const DimList& dims);

/// The 2 x 2 x 3 state (|x>_AC|0>_B + |y>_AC|1>_B)/sqrt(2) with
/// |x> = (|02> + sqrt2 |10>)/sqrt3 and |y> = (|12> + sqrt2 |01>)/sqrt3.
/// Subsystem order is A, B, C.
MultipartiteState remark1_state();

/// Components of the two orthogonal AC vectors used by remark1_state.
CVector remark1_x();
CVector remark1_y();

// ---------------------------------------------------------------------------
// Fourier basis, generalized Paulis, dephasing channels.

/// Columns e~_j = d^{-1/2} sum_k w^{jk} e_k, w = exp(2 pi i / d), for the
/// reference basis given as the columns of `basis`.
CMatrix fourier_basis(const CMatrix& basis);
/// Fourier basis of the computational basis, as a list of vectors.
std::vector<CVector> fourier_basis(int d);

/// Z = sum_j w^j |e_j><e_j| relative to the columns of `basis`.
CMatrix pauli_z(const CMatrix& basis);
CMatrix pauli_z(int d);
/// X = sum_j |e_{j+1 mod d}><e_j| relative to the columns of `basis`.
CMatrix pauli_x(const CMatrix& basis);
CMatrix pauli_x(int d);

/// Dephasing in the `basis` columns: sum_i |e_i><e_i| sigma |e_i><e_i|.
CMatrix channel_m0(const CMatrix& sigma, const CMatrix& basis);
/// Dephasing in the Fourier basis built from `basis`.
CMatrix channel_m1(const CMatrix& sigma, const CMatrix& basis);
/// (1/d) sum_k U^k sigma U^{-k}; with U = Z or X this is M0 or M1.
CMatrix twirl(const CMatrix& sigma, const CMatrix& unitary);

/// Classical-quantum state
///   (1/d_B^2) sum_{x,y} |x><x| (x) |y><y| (x) (I (x) X^x Z^y) rho (I (x) Z^-y X^-x)
/// kept block-diagonally: only the d_B^2 conditional AB blocks are stored.
/// The Paulis are taken in the eigenbasis of rho_B.
class OmegaState {
 public:
  OmegaState(const CMatrix& rho_ab, const DimList& dims);

  int dim_a() const { return dim_a_; }
  int dim_b() const { return dim_b_; }
  /// Eigenbasis of rho_B used for Z and X (columns).
  const CMatrix& basis() const { return basis_; }
  /// Normalized conditional state on AB for register values (x, y).
  const CMatrix& block(int x, int y) const { return blocks_[x * dim_b_ + y]; }
  /// Sum of (1/d_B^2) tr(block) over all registers.
  double trace() const;

  CMatrix marginal_ab() const;
  /// Conditional AB state given X = x (averaged over y), and the analogue for y.
  CMatrix conditional_x(int x) const;
  CMatrix conditional_y(int y) const;

  double entropy_x() const;
  double entropy_y() const;
  double entropy_xy() const;
  double entropy_ab() const;
  double entropy_xab() const;
  double entropy_yab() const;
  double entropy_xyab() const;

  double mutual_x_ab() const;
  double mutual_y_ab() const;
  double mutual_xy_ab() const;

 private:
  int dim_a_;
  int dim_b_;
  CMatrix basis_;
  std::vector<CMatrix> blocks_;
};

OmegaState omega_state(const CMatrix& rho_ab, const DimList& dims);

// ---------------------------------------------------------------------------
// Measurement on one subsystem.

struct DroppedOutcome {
  std::size_t outcome;
  double probability;
};

struct MeasurementRecord {
  /// Probability of every POVM outcome, dropped ones included.
  std::vector<double> probabilities;
  /// Outcome index of each surviving member.
  std::vector<std::size_t> kept_outcomes;
  /// Post-measurement states on the remaining subsystems (original order).
  StateEnsemble post;
  DimList remaining_dims;
  /// Outcomes with probability below 1e-14 and their total mass.
  std::vector<DroppedOutcome> dropped;
  double dropped_mass = 0.0;
};

inline constexpr double kOutcomeFloor = 1e-14;

MeasurementRecord measure_on_subsystem(const MultipartiteState& state, const Povm& povm, int sys);

// ---------------------------------------------------------------------------
// Sampling. All samplers are pure functions of (arguments, seed, index).

/// Haar unitary: QR of a complex Ginibre matrix with phases fixed by diag(R).
CMatrix random_unitary(int d, std::uint64_t seed, std::uint64_t index = 0);
/// First `cols` columns of a Haar unitary of size rows.
CMatrix random_isometry(int rows, int cols, CounterRng& rng);
/// Normalized complex Gaussian vector.
MultipartiteState random_pure(const DimList& dims, std::uint64_t seed, std::uint64_t index = 0);
/// Partial trace of a Haar pure state on dims (x) C^rank.
MultipartiteState random_mixed(const DimList& dims, int rank, std::uint64_t seed, std::uint64_t index = 0);
/// Rank-1 POVM with n outcomes on C^d from the rows of a Haar isometry.
Povm random_povm(int d, int n, std::uint64_t seed, std::uint64_t index = 0);
/// Tensor product of independent Haar pure states on each subsystem.
MultipartiteState random_product_pure(const DimList& dims, std::uint64_t seed, std::uint64_t index = 0);
/// Convex mixture of k Haar product pure states with weights uniform on the
/// simplex; separable by construction and of rank <= k.
MultipartiteState random_separable(const DimList& dims, int k, std::uint64_t seed, std::uint64_t index = 0);

}  // namespace polyent
