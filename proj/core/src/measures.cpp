#include "polyent/measures.hpp"

#include <algorithm>
#include <cmath>

namespace polyent {

std::string to_string(Method m) { return m == Method::closed_form ? "closed-form" : "optimized"; }

std::string to_string(BoundDirection d) {
  switch (d) {
    case BoundDirection::exact:
      return "exact";
    case BoundDirection::lower_estimate:
      return "lower-estimate";
    case BoundDirection::upper_estimate:
      return "upper-estimate";
  }
  return "exact";
}

namespace {

void require_bipartite(const CMatrix& rho, const DimList& dims, const char* what) {
  if (dims.size() != 2) throw DimensionError(std::string(what) + ": needs a bipartite state");
  if (rho.rows() != dims.total() || rho.cols() != dims.total()) {
    throw DimensionError(std::string(what) + ": shape does not match dims " + dims.to_string());
  }
}

void require_two_qubit(const CMatrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4) throw DimensionError("two-qubit formula needs a 4 x 4 density matrix");
}

MeasureValue optimized(const OptimResult& res, BoundDirection dir, Certificate cert) {
  MeasureValue out;
  out.value = res.value;
  out.method = Method::optimized;
  out.direction = dir;
  out.certificate = std::move(cert);
  out.search = res;
  return out;
}

MeasureValue roof(const CMatrix& rho, const DimList& dims, Objective obj, const PureScore& score,
                  const OptimConfig& config) {
  require_bipartite(rho, dims, "roof");
  const OptimResult res = optimize_decomposition(rho, dims, obj, score, config);
  Ensemble ens = ensemble_from_isometry(rho, dims, res.isometries.front());
  return optimized(res, obj == Objective::minimize ? BoundDirection::upper_estimate : BoundDirection::lower_estimate,
                   std::move(ens));
}

void check_roles(const MultipartiteState& state, const ProductRoles& roles) {
  const int n = static_cast<int>(state.subsystems());
  for (int s : {roles.target, roles.first, roles.second}) {
    if (s < 0 || s >= n) throw DimensionError("product roles: subsystem index out of range");
  }
  if (roles.target == roles.first || roles.target == roles.second || roles.first == roles.second) {
    throw DimensionError("product roles must name three distinct subsystems");
  }
}

struct PureView {
  CVector psi;
  DimList dims;
};

PureView as_pure(const MultipartiteState& state) {
  if (state.is_pure()) return {state.vector(), state.dims()};
  Purification pur = purify(state.density(), state.dims());
  return {std::move(pur.psi), std::move(pur.dims)};
}

OptimResult product_search(const MultipartiteState& state, const ProductRoles& roles, const OptimConfig& config) {
  check_roles(state, roles);
  const PureView view = as_pure(state);
  return optimize_product_povm(view.psi, view.dims, roles.target, {roles.first, roles.second}, Objective::minimize,
                               config);
}

}  // namespace

double mutual_information(const CMatrix& rho_ab, const DimList& dims) {
  require_bipartite(rho_ab, dims, "mutual_information");
  return entropy(partial_trace(rho_ab, dims, {0})) + entropy(partial_trace(rho_ab, dims, {1})) - entropy(rho_ab);
}

double coherent_information(const CMatrix& rho_ab, const DimList& dims) {
  require_bipartite(rho_ab, dims, "coherent_information");
  return entropy(partial_trace(rho_ab, dims, {0})) - entropy(rho_ab);
}

double curly_e(double x) {
  if (!(x >= 0.0 && x <= 1.0 + 1e-12)) throw DomainError("curly_e: argument outside [0, 1]");
  x = std::min(x, 1.0);
  return binary_entropy(0.5 + 0.5 * std::sqrt(std::max(0.0, 1.0 - x * x)));
}

double concurrence_pure(const CVector& psi, const DimList& dims, std::span<const int> side) {
  const CMatrix r = reduced_density(psi, dims, side);
  const double purity = (r * r).trace().real();
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - purity)));
}

double concurrence_pure(const CVector& psi, const DimList& dims, std::initializer_list<int> side) {
  return concurrence_pure(psi, dims, std::span<const int>(side.begin(), side.size()));
}

std::array<double, 4> spin_flip_values(const CMatrix& rho) {
  require_two_qubit(rho);
  require_hermitian(rho, "spin_flip_values");
  const auto eig = eig_hermitian(rho);
  CMatrix x = eig.vectors;
  for (int i = 0; i < 4; ++i) x.col(i) *= std::sqrt(std::max(eig.values(i), 0.0));
  CMatrix yy = CMatrix::Zero(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const CMatrix tau = x.transpose() * yy * x;
  Eigen::JacobiSVD<CMatrix> svd(tau);
  const RVector sv = svd.singularValues();
  std::array<double, 4> out{};
  for (int i = 0; i < 4; ++i) out[i] = sv(i);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double concurrence_2q(const CMatrix& rho) {
  const auto l = spin_flip_values(rho);
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

double coa_2q(const CMatrix& rho) {
  const auto l = spin_flip_values(rho);
  return l[0] + l[1] + l[2] + l[3];
}

double eof_2q(const CMatrix& rho) { return curly_e(concurrence_2q(rho)); }

double holevo_chi(const StateEnsemble& ensemble) {
  if (ensemble.states.empty()) return 0.0;
  double avg = 0.0;
  for (std::size_t i = 0; i < ensemble.states.size(); ++i) avg += ensemble.weights[i] * entropy(ensemble.states[i]);
  return entropy(ensemble.average()) - avg;
}

MeasureValue eof_roof(const CMatrix& rho, const DimList& dims, const OptimConfig& config) {
  return roof(rho, dims, Objective::minimize, PureScore::entropy(), config);
}

MeasureValue eoa_roof(const CMatrix& rho, const DimList& dims, const OptimConfig& config) {
  return roof(rho, dims, Objective::maximize, PureScore::entropy(), config);
}

MeasureValue coa_roof(const CMatrix& rho, const DimList& dims, const OptimConfig& config) {
  return roof(rho, dims, Objective::maximize, PureScore::concurrence(), config);
}

MeasureValue henderson_vedral(const CMatrix& rho_ab, const DimList& dims, const OptimConfig& config) {
  require_bipartite(rho_ab, dims, "henderson_vedral");
  const OptimResult res = optimize_mixed_povm(rho_ab, dims, Objective::maximize, config);
  return optimized(res, BoundDirection::lower_estimate, povm_from_isometry(res.isometries.front()));
}

MeasureValue ue_direct(const CMatrix& rho_ab, const DimList& dims, const OptimConfig& config) {
  require_bipartite(rho_ab, dims, "ue_direct");
  const OptimResult res = optimize_mixed_povm(rho_ab, dims, Objective::minimize, config);
  return optimized(res, BoundDirection::upper_estimate, povm_from_isometry(res.isometries.front()));
}

MeasureValue ue_via_purification(const CMatrix& rho_ab, const DimList& dims, const OptimConfig& config) {
  require_bipartite(rho_ab, dims, "ue_via_purification");
  const Purification pur = purify(rho_ab, dims);
  const CMatrix rho_ac = reduced_density(pur.psi, pur.dims, {0, 2});
  const DimList ac{dims[0], pur.ancilla_dim};
  MeasureValue ea = eoa_roof(rho_ac, ac, config);
  const double s_a = entropy(partial_trace(rho_ab, dims, {0}));
  ea.value = s_a - ea.value;
  ea.search->value = ea.value;
  ea.direction = BoundDirection::upper_estimate;
  return ea;
}

MeasureValue localizable_ea(const MultipartiteState& state, const ProductRoles& roles, const OptimConfig& config) {
  const OptimResult res = product_search(state, roles, config);
  const double s_t = entropy(state.reduced({roles.target}));
  MeasureValue out = optimized(res, BoundDirection::lower_estimate,
                               ProductPovm{povm_from_isometry(res.isometries[0]), povm_from_isometry(res.isometries[1])});
  out.value = s_t - res.value;
  return out;
}

MeasureValue ue_product(const MultipartiteState& state, const ProductRoles& roles, const OptimConfig& config) {
  const OptimResult res = product_search(state, roles, config);
  return optimized(res, BoundDirection::upper_estimate,
                   ProductPovm{povm_from_isometry(res.isometries[0]), povm_from_isometry(res.isometries[1])});
}

double average_conditional_entropy(const MultipartiteState& state, const Povm& povm, int measured, int target) {
  if (measured == target) throw DimensionError("target and measured subsystem must differ");
  if (target < 0 || target >= static_cast<int>(state.subsystems())) throw DimensionError("target out of range");
  const MeasurementRecord rec = measure_on_subsystem(state, povm, measured);
  const int t = target > measured ? target - 1 : target;
  double acc = 0.0;
  for (std::size_t i = 0; i < rec.post.states.size(); ++i) {
    const CMatrix& post = rec.post.states[i];
    const CMatrix local = rec.remaining_dims.size() == 1 ? post : partial_trace(post, rec.remaining_dims, {t});
    acc += rec.post.weights[i] * entropy(local);
  }
  return acc;
}

Thm1Bound thm1_povm_bound(const CMatrix& rho_ab, const DimList& dims) {
  require_bipartite(rho_ab, dims, "thm1_povm_bound");
  const MultipartiteState state = MultipartiteState::mixed(rho_ab, dims);
  const CMatrix e = eig_hermitian(partial_trace(rho_ab, dims, {1})).vectors;
  const CMatrix ef = fourier_basis(e);

  Thm1Bound out;
  out.povm.rank1 = true;
  for (const CMatrix* basis : {&e, &ef}) {
    for (Eigen::Index k = 0; k < basis->cols(); ++k) {
      out.povm.elements.emplace_back(0.5 * basis->col(k) * basis->col(k).adjoint());
    }
  }
  const double s_a = entropy(partial_trace(rho_ab, dims, {0}));
  out.value = s_a - average_conditional_entropy(state, out.povm, 1, 0);
  out.chi0 = holevo_chi(measure_on_subsystem(state, Povm::from_basis(e), 1).post);
  out.chi1 = holevo_chi(measure_on_subsystem(state, Povm::from_basis(ef), 1).post);
  return out;
}

}  // namespace polyent
