#pragma once

#include "polyent/entropy.hpp"
#include "polyent/optim.hpp"
#include "polyent/states.hpp"

#include <array>
#include <optional>
#include <string>
#include <variant>

namespace polyent {

enum class Method { closed_form, optimized };

/// Which side of the true value an estimate can sit on.
enum class BoundDirection { exact, lower_estimate, upper_estimate };

using Certificate = std::variant<std::monostate, Povm, ProductPovm, Ensemble>;

struct MeasureValue {
  double value = 0.0;
  Method method = Method::closed_form;
  BoundDirection direction = BoundDirection::exact;
  Certificate certificate;
  /// Search metadata for optimized values.
  std::optional<OptimResult> search;
};

std::string to_string(Method m);
std::string to_string(BoundDirection d);

// ---------------------------------------------------------------------------
// Closed forms.

/// I(A:B) = S(A) + S(B) - S(AB) of a bipartite state.
double mutual_information(const CMatrix& rho_ab, const DimList& dims);
/// S(A) - S(AB); may be negative.
double coherent_information(const CMatrix& rho_ab, const DimList& dims);

/// H(1/2 + sqrt(1 - x^2) / 2) for x in [0, 1].
double curly_e(double x);

/// sqrt(2 (1 - tr rho_S^2)) for the side S of a pure state.
double concurrence_pure(const CVector& psi, const DimList& dims, std::span<const int> side);
double concurrence_pure(const CVector& psi, const DimList& dims, std::initializer_list<int> side);

/// Square roots of the eigenvalues of rho (sy x sy) rho^* (sy x sy), sorted
/// descending, for a two-qubit state. Computed as singular values of
/// X^T (sy x sy) X with rho = X X^dagger, which keeps full precision near zero.
std::array<double, 4> spin_flip_values(const CMatrix& rho);

/// max(0, l1 - l2 - l3 - l4).
double concurrence_2q(const CMatrix& rho);
/// l1 + l2 + l3 + l4.
double coa_2q(const CMatrix& rho);
/// curly_e(concurrence_2q(rho)).
double eof_2q(const CMatrix& rho);

/// S(sum p_i rho_i) - sum p_i S(rho_i).
double holevo_chi(const StateEnsemble& ensemble);

// ---------------------------------------------------------------------------
// Roofs and measurement-based measures.

/// Convex roof of the target-entropy over decompositions (upper estimate).
MeasureValue eof_roof(const CMatrix& rho, const DimList& dims, const OptimConfig& config);
/// Concave roof of the target-entropy (lower estimate).
MeasureValue eoa_roof(const CMatrix& rho, const DimList& dims, const OptimConfig& config);
/// Concave roof of the pure-state concurrence (lower estimate).
MeasureValue coa_roof(const CMatrix& rho, const DimList& dims, const OptimConfig& config);

/// max over rank-1 POVMs on B of S(A) - sum p_x S(A^x) (lower estimate).
MeasureValue henderson_vedral(const CMatrix& rho_ab, const DimList& dims, const OptimConfig& config);

/// min over rank-1 POVMs on B of S(A) - sum p_x S(A^x), searched on rho_AB
/// itself (upper estimate).
MeasureValue ue_direct(const CMatrix& rho_ab, const DimList& dims, const OptimConfig& config);

/// S(A) - E_a(rho_AC) on a purification |psi>_ABC, with E_a from the
/// decomposition search on rho_AC (upper estimate).
MeasureValue ue_via_purification(const CMatrix& rho_ab, const DimList& dims, const OptimConfig& config);

/// Subsystem roles for product-measurement quantities: `target` keeps its
/// state, `first` and `second` are measured, everything else is left alone.
struct ProductRoles {
  int target = 0;
  int first = 1;
  int second = 2;
};

/// max over product rank-1 POVMs on first and second of
/// sum p_xy S(target^xy) (lower estimate). A mixed input is purified first.
MeasureValue localizable_ea(const MultipartiteState& state, const ProductRoles& roles, const OptimConfig& config);

/// S(target) minus the same optimum found as a minimization
/// (upper estimate); certificate is the product POVM.
MeasureValue ue_product(const MultipartiteState& state, const ProductRoles& roles, const OptimConfig& config);

/// sum_x p_x S(target^x) for a given POVM on `measured`.
double average_conditional_entropy(const MultipartiteState& state, const Povm& povm, int measured, int target);

struct Thm1Bound {
  /// S(A) - sum_x p_x S(A^x) for the half-and-half POVM.
  double value = 0.0;
  /// Entropy defects of the ensembles induced by measuring B in the
  /// eigenbasis of rho_B and in its Fourier basis.
  double chi0 = 0.0;
  double chi1 = 0.0;
  Povm povm;
};

/// The 2 d_B outcome POVM {|e_i><e_i|/2, |e~_j><e~_j|/2} on B built from the
/// eigenbasis of rho_B, and its measured value.
Thm1Bound thm1_povm_bound(const CMatrix& rho_ab, const DimList& dims);

}  // namespace polyent
