#include "polyent/states.hpp"

#include "polyent/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <numeric>

namespace polyent {

namespace {

cplx root_of_unity(int d, long long power) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(power % d) / d;
  return {std::cos(angle), std::sin(angle)};
}

void check_labels(const std::vector<std::string>& labels, const DimList& dims) {
  if (labels.size() != dims.size()) throw DimensionError("label count does not match subsystem count");
}

// Move subsystem `sys` to the end; returns the permutation used.
std::vector<int> order_with_last(std::size_t n, int sys) {
  std::vector<int> order;
  for (int i = 0; i < static_cast<int>(n); ++i)
    if (i != sys) order.push_back(i);
  order.push_back(sys);
  return order;
}

}  // namespace

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(i < 26 ? std::string(1, static_cast<char>('A' + i)) : "S" + std::to_string(i));
  }
  return out;
}

MultipartiteState::MultipartiteState(StateKind kind, CVector psi, CMatrix rho, DimList dims, std::vector<std::string> labels)
    : kind_(kind), psi_(std::move(psi)), rho_(std::move(rho)), dims_(std::move(dims)), labels_(std::move(labels)) {
  if (labels_.empty()) labels_ = default_labels(dims_.size());
  check_labels(labels_, dims_);
}

MultipartiteState MultipartiteState::pure(CVector psi, DimList dims, std::vector<std::string> labels) {
  if (dims.empty()) throw DimensionError("state needs at least one subsystem");
  if (psi.size() != dims.total()) throw DimensionError("vector length does not match dims " + dims.to_string());
  if (!psi.allFinite()) throw DomainError("state vector has non-finite entries");
  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > 1e-10) throw DomainError("pure state is not normalized (norm " + std::to_string(norm) + ")");
  return MultipartiteState(StateKind::pure, std::move(psi), CMatrix(), std::move(dims), std::move(labels));
}

MultipartiteState MultipartiteState::mixed(CMatrix rho, DimList dims, std::vector<std::string> labels) {
  if (dims.empty()) throw DimensionError("state needs at least one subsystem");
  if (rho.rows() != rho.cols() || rho.rows() != dims.total()) {
    throw DimensionError("density matrix shape does not match dims " + dims.to_string());
  }
  if (!rho.allFinite()) throw DomainError("density matrix has non-finite entries");
  require_hermitian(rho, "mixed state");
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > 1e-9) throw DomainError("density matrix trace is " + std::to_string(tr));
  if (min_eigenvalue(rho) < -1e-10) throw DomainError("density matrix is not positive semidefinite");
  CMatrix herm = 0.5 * (rho + rho.adjoint());
  return MultipartiteState(StateKind::mixed, CVector(), std::move(herm), std::move(dims), std::move(labels));
}

const CVector& MultipartiteState::vector() const {
  if (!is_pure()) throw DomainError("state is mixed; no state vector");
  return psi_;
}

CMatrix MultipartiteState::density() const { return is_pure() ? CMatrix(psi_ * psi_.adjoint()) : rho_; }

CMatrix MultipartiteState::reduced(std::span<const int> keep) const {
  return is_pure() ? reduced_density(psi_, dims_, keep) : partial_trace(rho_, dims_, keep);
}

CMatrix MultipartiteState::reduced(std::initializer_list<int> keep) const {
  return reduced(std::span<const int>(keep.begin(), keep.size()));
}

int MultipartiteState::index_of(const std::string& label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  return it == labels_.end() ? -1 : static_cast<int>(it - labels_.begin());
}

MultipartiteState regroup(const MultipartiteState& state, const std::vector<std::vector<int>>& parts) {
  const int n = static_cast<int>(state.subsystems());
  std::vector<int> order;
  std::vector<int> seen(n, 0);
  std::vector<int> part_dims;
  std::vector<std::string> part_labels;
  for (const auto& part : parts) {
    if (part.empty()) throw DimensionError("regroup: empty part");
    int d = 1;
    std::string label;
    for (int s : part) {
      if (s < 0 || s >= n || seen[s]++) throw DimensionError("regroup: invalid or repeated subsystem");
      order.push_back(s);
      d *= state.dims()[s];
      label += state.labels()[s];
    }
    part_dims.push_back(d);
    part_labels.push_back(label);
  }
  const int kept = static_cast<int>(order.size());
  for (int i = 0; i < n; ++i)
    if (!seen[i]) order.push_back(i);

  const DimList permuted_dims = state.dims().select(order);
  std::vector<int> keep(kept);
  std::iota(keep.begin(), keep.end(), 0);
  DimList new_dims(part_dims);

  if (state.is_pure()) {
    CVector psi = permute_subsystems(state.vector(), state.dims(), order);
    if (kept == n) return MultipartiteState::pure(std::move(psi), new_dims, part_labels);
    return MultipartiteState::mixed(reduced_density(psi, permuted_dims, keep), new_dims, part_labels);
  }
  CMatrix rho = permute_subsystems(state.density(), state.dims(), order);
  if (kept < n) rho = partial_trace(rho, permuted_dims, keep);
  return MultipartiteState::mixed(std::move(rho), new_dims, part_labels);
}

// ---------------------------------------------------------------------------

Povm Povm::from_isometry(const CMatrix& w) {
  Povm out;
  out.rank1 = true;
  out.elements.reserve(w.rows());
  for (Eigen::Index x = 0; x < w.rows(); ++x) {
    const auto row = w.row(x);
    out.elements.emplace_back(row.adjoint() * row);
  }
  return out;
}

Povm Povm::from_basis(const CMatrix& basis) {
  Povm out;
  out.rank1 = true;
  for (Eigen::Index k = 0; k < basis.cols(); ++k) out.elements.emplace_back(basis.col(k) * basis.col(k).adjoint());
  return out;
}

int Povm::dim() const { return elements.empty() ? 0 : static_cast<int>(elements.front().rows()); }

double Povm::completeness_residual() const {
  if (elements.empty()) return std::numeric_limits<double>::infinity();
  CMatrix sum = CMatrix::Zero(dim(), dim());
  for (const auto& m : elements) sum += m;
  return max_abs_diff(sum, CMatrix::Identity(dim(), dim()));
}

void Povm::validate(double tol) const {
  if (elements.empty()) throw DomainError("POVM has no elements");
  for (const auto& m : elements) {
    if (m.rows() != dim() || m.cols() != dim()) throw DimensionError("POVM elements have inconsistent shapes");
    if (min_eigenvalue(m) < -tol) throw DomainError("POVM element is not positive semidefinite");
    if (rank1 && numerical_rank(m, tol) > 1) throw DomainError("POVM element is not rank one");
  }
  const double residual = completeness_residual();
  if (!(residual <= tol)) throw DomainError("POVM elements do not sum to identity (residual " + std::to_string(residual) + ")");
}

CMatrix isometry_from_povm(const Povm& povm) {
  const int d = povm.dim();
  CMatrix w(static_cast<Eigen::Index>(povm.size()), d);
  for (std::size_t x = 0; x < povm.size(); ++x) {
    const auto eig = eig_hermitian(povm.elements[x]);
    const double top = eig.values(d - 1);
    if (numerical_rank(povm.elements[x], 1e-9) > 1) {
      throw DomainError("isometry_from_povm: element is not rank one");
    }
    const CVector m = std::sqrt(std::max(top, 0.0)) * eig.vectors.col(d - 1);
    w.row(x) = m.adjoint();
  }
  return w;
}

CMatrix Ensemble::density() const {
  const int n = dims.total();
  CMatrix rho = CMatrix::Zero(n, n);
  for (std::size_t i = 0; i < members.size(); ++i) rho += weights[i] * members[i] * members[i].adjoint();
  return rho;
}

CMatrix StateEnsemble::average() const {
  if (states.empty()) return CMatrix();
  CMatrix avg = CMatrix::Zero(states.front().rows(), states.front().cols());
  for (std::size_t i = 0; i < states.size(); ++i) avg += weights[i] * states[i];
  return avg;
}

// ---------------------------------------------------------------------------

MultipartiteState ghz(int n) {
  if (n < 2) throw DimensionError("ghz needs n >= 2");
  const int total = 1 << n;
  CVector psi = CVector::Zero(total);
  psi(0) = std::numbers::sqrt2 / 2.0;
  psi(total - 1) = std::numbers::sqrt2 / 2.0;
  return MultipartiteState::pure(std::move(psi), DimList(std::vector<int>(n, 2)));
}

MultipartiteState w_state(int n) {
  if (n < 2) throw DimensionError("w state needs n >= 2");
  CVector psi = CVector::Zero(1 << n);
  const double amp = 1.0 / std::sqrt(static_cast<double>(n));
  for (int k = 0; k < n; ++k) psi(1 << k) = amp;
  return MultipartiteState::pure(std::move(psi), DimList(std::vector<int>(n, 2)));
}

MultipartiteState bell() { return ghz(2); }

MultipartiteState max_mixed(const DimList& dims) {
  const int n = dims.total();
  return MultipartiteState::mixed(CMatrix::Identity(n, n) / static_cast<double>(n), dims);
}

CVector remark1_x() {
  // A (x) C with dims (2, 3): index = 3a + c.
  CVector x = CVector::Zero(6);
  x(0 * 3 + 2) = 1.0 / std::sqrt(3.0);
  x(1 * 3 + 0) = std::sqrt(2.0) / std::sqrt(3.0);
  return x;
}

CVector remark1_y() {
  CVector y = CVector::Zero(6);
  y(1 * 3 + 2) = 1.0 / std::sqrt(3.0);
  y(0 * 3 + 1) = std::sqrt(2.0) / std::sqrt(3.0);
  return y;
}

MultipartiteState remark1_state() {
  const CVector x = remark1_x();
  const CVector y = remark1_y();
  // Order A, B, C: index = (a * 2 + b) * 3 + c.
  CVector psi = CVector::Zero(12);
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 3; ++c) {
      psi((a * 2 + 0) * 3 + c) = x(a * 3 + c) / std::sqrt(2.0);
      psi((a * 2 + 1) * 3 + c) = y(a * 3 + c) / std::sqrt(2.0);
    }
  return MultipartiteState::pure(std::move(psi), DimList{2, 2, 3});
}

// ---------------------------------------------------------------------------

CMatrix fourier_basis(const CMatrix& basis) {
  const int d = static_cast<int>(basis.cols());
  CMatrix dft(d, d);
  for (int k = 0; k < d; ++k)
    for (int j = 0; j < d; ++j) dft(k, j) = root_of_unity(d, static_cast<long long>(j) * k) / std::sqrt(static_cast<double>(d));
  return basis * dft;
}

std::vector<CVector> fourier_basis(int d) {
  if (d < 2) throw DimensionError("fourier basis needs d >= 2");
  const CMatrix f = fourier_basis(CMatrix::Identity(d, d));
  std::vector<CVector> out;
  for (int j = 0; j < d; ++j) out.emplace_back(f.col(j));
  return out;
}

CMatrix pauli_z(const CMatrix& basis) {
  const int d = static_cast<int>(basis.cols());
  CVector phases(d);
  for (int j = 0; j < d; ++j) phases(j) = root_of_unity(d, j);
  return basis * phases.asDiagonal() * basis.adjoint();
}

CMatrix pauli_z(int d) {
  if (d < 2) throw DimensionError("pauli_z needs d >= 2");
  return pauli_z(CMatrix::Identity(d, d));
}

CMatrix pauli_x(const CMatrix& basis) {
  const int d = static_cast<int>(basis.cols());
  CMatrix shift = CMatrix::Zero(d, d);
  for (int j = 0; j < d; ++j) shift((j + 1) % d, j) = 1.0;
  return basis * shift * basis.adjoint();
}

CMatrix pauli_x(int d) {
  if (d < 2) throw DimensionError("pauli_x needs d >= 2");
  return pauli_x(CMatrix::Identity(d, d));
}

CMatrix channel_m0(const CMatrix& sigma, const CMatrix& basis) {
  const int d = static_cast<int>(basis.cols());
  CMatrix out = CMatrix::Zero(sigma.rows(), sigma.cols());
  for (int i = 0; i < d; ++i) {
    const CVector e = basis.col(i);
    const cplx w = e.dot(sigma * e);
    out += w * e * e.adjoint();
  }
  return out;
}

CMatrix channel_m1(const CMatrix& sigma, const CMatrix& basis) { return channel_m0(sigma, fourier_basis(basis)); }

CMatrix twirl(const CMatrix& sigma, const CMatrix& unitary) {
  const int d = static_cast<int>(unitary.rows());
  CMatrix out = CMatrix::Zero(sigma.rows(), sigma.cols());
  CMatrix power = CMatrix::Identity(d, d);
  for (int k = 0; k < d; ++k) {
    out += power * sigma * power.adjoint();
    power = unitary * power;
  }
  return out / static_cast<double>(d);
}

// ---------------------------------------------------------------------------

OmegaState::OmegaState(const CMatrix& rho_ab, const DimList& dims) {
  if (dims.size() != 2) throw DimensionError("omega_state needs a bipartite state");
  if (rho_ab.rows() != dims.total() || rho_ab.cols() != dims.total()) throw DimensionError("omega_state: shape mismatch");
  dim_a_ = dims[0];
  dim_b_ = dims[1];
  basis_ = eig_hermitian(partial_trace(rho_ab, dims, {1})).vectors;
  const CMatrix z = pauli_z(basis_);
  const CMatrix x = pauli_x(basis_);
  const CMatrix id_a = CMatrix::Identity(dim_a_, dim_a_);
  blocks_.reserve(static_cast<std::size_t>(dim_b_) * dim_b_);
  CMatrix xpow = CMatrix::Identity(dim_b_, dim_b_);
  for (int xi = 0; xi < dim_b_; ++xi) {
    CMatrix zpow = CMatrix::Identity(dim_b_, dim_b_);
    for (int yi = 0; yi < dim_b_; ++yi) {
      const CMatrix u = tensor(id_a, CMatrix(xpow * zpow));
      blocks_.emplace_back(u * rho_ab * u.adjoint());
      zpow = z * zpow;
    }
    xpow = x * xpow;
  }
}

double OmegaState::trace() const {
  double t = 0.0;
  for (const auto& b : blocks_) t += b.trace().real();
  return t / (static_cast<double>(dim_b_) * dim_b_);
}

CMatrix OmegaState::marginal_ab() const {
  CMatrix m = CMatrix::Zero(blocks_.front().rows(), blocks_.front().cols());
  for (const auto& b : blocks_) m += b;
  return m / (static_cast<double>(dim_b_) * dim_b_);
}

CMatrix OmegaState::conditional_x(int x) const {
  CMatrix m = CMatrix::Zero(blocks_.front().rows(), blocks_.front().cols());
  for (int y = 0; y < dim_b_; ++y) m += block(x, y);
  return m / static_cast<double>(dim_b_);
}

CMatrix OmegaState::conditional_y(int y) const {
  CMatrix m = CMatrix::Zero(blocks_.front().rows(), blocks_.front().cols());
  for (int x = 0; x < dim_b_; ++x) m += block(x, y);
  return m / static_cast<double>(dim_b_);
}

// Register marginals follow from block traces; every block has unit trace
// for a unit-trace input, but the traces are used rather than assumed.
double OmegaState::entropy_x() const {
  std::vector<double> p(dim_b_, 0.0);
  const double w = 1.0 / (static_cast<double>(dim_b_) * dim_b_);
  for (int x = 0; x < dim_b_; ++x)
    for (int y = 0; y < dim_b_; ++y) p[x] += w * block(x, y).trace().real();
  return shannon(p);
}

double OmegaState::entropy_y() const {
  std::vector<double> p(dim_b_, 0.0);
  const double w = 1.0 / (static_cast<double>(dim_b_) * dim_b_);
  for (int x = 0; x < dim_b_; ++x)
    for (int y = 0; y < dim_b_; ++y) p[y] += w * block(x, y).trace().real();
  return shannon(p);
}

double OmegaState::entropy_xy() const {
  std::vector<double> p;
  const double w = 1.0 / (static_cast<double>(dim_b_) * dim_b_);
  for (const auto& b : blocks_) p.push_back(w * b.trace().real());
  return shannon(p);
}

double OmegaState::entropy_ab() const { return entropy(marginal_ab()); }

// Joint entropy theorem: S(sum_i p_i |i><i| (x) rho_i) = H(p) + sum_i p_i S(rho_i).
double OmegaState::entropy_xab() const {
  double s = entropy_x();
  for (int x = 0; x < dim_b_; ++x) {
    const CMatrix c = conditional_x(x);
    const double p = c.trace().real() / dim_b_;
    s += p * entropy(c / c.trace().real());
  }
  return s;
}

double OmegaState::entropy_yab() const {
  double s = entropy_y();
  for (int y = 0; y < dim_b_; ++y) {
    const CMatrix c = conditional_y(y);
    const double p = c.trace().real() / dim_b_;
    s += p * entropy(c / c.trace().real());
  }
  return s;
}

double OmegaState::entropy_xyab() const {
  double s = entropy_xy();
  const double w = 1.0 / (static_cast<double>(dim_b_) * dim_b_);
  for (const auto& b : blocks_) {
    const double t = b.trace().real();
    s += w * t * entropy(b / t);
  }
  return s;
}

double OmegaState::mutual_x_ab() const { return entropy_x() + entropy_ab() - entropy_xab(); }
double OmegaState::mutual_y_ab() const { return entropy_y() + entropy_ab() - entropy_yab(); }
double OmegaState::mutual_xy_ab() const { return entropy_xy() + entropy_ab() - entropy_xyab(); }

OmegaState omega_state(const CMatrix& rho_ab, const DimList& dims) { return OmegaState(rho_ab, dims); }

// ---------------------------------------------------------------------------

MeasurementRecord measure_on_subsystem(const MultipartiteState& state, const Povm& povm, int sys) {
  const int n = static_cast<int>(state.subsystems());
  if (sys < 0 || sys >= n) throw DimensionError("measure_on_subsystem: subsystem index out of range");
  const int d = state.dims()[sys];
  if (povm.dim() != d) throw DimensionError("POVM dimension does not match the measured subsystem");
  if (n < 2) throw DimensionError("measure_on_subsystem: nothing left after measuring");

  const auto order = order_with_last(state.subsystems(), sys);
  std::vector<int> rest(order.begin(), order.end() - 1);
  MeasurementRecord rec;
  rec.remaining_dims = state.dims().select(rest);
  const int dr = rec.remaining_dims.total();

  // Unnormalized conditional operator: tr_sys[(I (x) M) rho] as F M^T F^dagger
  // for pure states, or the blockwise contraction for density matrices.
  CMatrix f;
  CMatrix rho;
  if (state.is_pure()) {
    const CVector psi = permute_subsystems(state.vector(), state.dims(), order);
    f = Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(psi.data(), dr, d);
  } else {
    rho = permute_subsystems(state.density(), state.dims(), order);
  }

  for (std::size_t x = 0; x < povm.size(); ++x) {
    const CMatrix& m = povm.elements[x];
    CMatrix cond;
    if (state.is_pure()) {
      cond = f * m.transpose() * f.adjoint();
    } else {
      cond = CMatrix::Zero(dr, dr);
      for (int b = 0; b < d; ++b)
        for (int bp = 0; bp < d; ++bp) {
          const cplx mw = m(bp, b);
          if (mw == cplx(0.0)) continue;
          for (int r = 0; r < dr; ++r)
            for (int rp = 0; rp < dr; ++rp) cond(r, rp) += mw * rho(r * d + b, rp * d + bp);
        }
    }
    const double p = cond.trace().real();
    rec.probabilities.push_back(p);
    if (p < kOutcomeFloor) {
      rec.dropped.push_back({x, p});
      rec.dropped_mass += std::max(p, 0.0);
      continue;
    }
    rec.kept_outcomes.push_back(x);
    rec.post.weights.push_back(p);
    rec.post.states.emplace_back(cond / p);
  }
  return rec;
}

// ---------------------------------------------------------------------------

namespace {

CMatrix haar_unitary(int d, CounterRng& rng) {
  CMatrix g(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) g(i, j) = rng.complex_normal();
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix& r = qr.matrixQR();
  for (int k = 0; k < d; ++k) {
    const cplx rk = r(k, k);
    const double mag = std::abs(rk);
    q.col(k) *= (mag > 0.0 ? rk / mag : cplx(1.0));
  }
  return q;
}

CVector gaussian_unit_vector(int n, CounterRng& rng) {
  CVector v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.complex_normal();
  return v / v.norm();
}

}  // namespace

CMatrix random_unitary(int d, std::uint64_t seed, std::uint64_t index) {
  if (d < 1) throw DimensionError("random_unitary: dimension must be positive");
  CounterRng rng(seed, stream_id(StreamFamily::unitary, index));
  return haar_unitary(d, rng);
}

CMatrix random_isometry(int rows, int cols, CounterRng& rng) {
  if (cols > rows) throw DimensionError("random_isometry: more columns than rows");
  return haar_unitary(rows, rng).leftCols(cols);
}

MultipartiteState random_pure(const DimList& dims, std::uint64_t seed, std::uint64_t index) {
  CounterRng rng(seed, stream_id(StreamFamily::pure_state, index));
  return MultipartiteState::pure(gaussian_unit_vector(dims.total(), rng), dims);
}

MultipartiteState random_mixed(const DimList& dims, int rank, std::uint64_t seed, std::uint64_t index) {
  if (rank < 1 || rank > dims.total()) throw DimensionError("random_mixed: rank must be in [1, total dimension]");
  CounterRng rng(seed, stream_id(StreamFamily::mixed_state, index));
  const CVector psi = gaussian_unit_vector(dims.total() * rank, rng);
  std::vector<int> keep(dims.size());
  std::iota(keep.begin(), keep.end(), 0);
  CMatrix rho = reduced_density(psi, dims.appended(rank), keep);
  rho /= rho.trace().real();
  return MultipartiteState::mixed(std::move(rho), dims);
}

Povm random_povm(int d, int n, std::uint64_t seed, std::uint64_t index) {
  if (n < d) throw DimensionError("random_povm: need at least d outcomes");
  CounterRng rng(seed, stream_id(StreamFamily::povm, index));
  return Povm::from_isometry(random_isometry(n, d, rng));
}

MultipartiteState random_product_pure(const DimList& dims, std::uint64_t seed, std::uint64_t index) {
  CounterRng rng(seed, stream_id(StreamFamily::product_state, index));
  CVector psi = CVector::Ones(1);
  for (int d : dims) psi = tensor(psi, gaussian_unit_vector(d, rng));
  return MultipartiteState::pure(psi / psi.norm(), dims);
}

MultipartiteState random_separable(const DimList& dims, int k, std::uint64_t seed, std::uint64_t index) {
  if (k < 1) throw DimensionError("random_separable: need at least one component");
  CounterRng rng(seed, stream_id(StreamFamily::separable_state, index));
  std::vector<double> weights(k);
  for (auto& w : weights) w = -std::log(1.0 - rng.uniform());
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  const int n = dims.total();
  CMatrix rho = CMatrix::Zero(n, n);
  for (int c = 0; c < k; ++c) {
    CVector psi = CVector::Ones(1);
    for (int d : dims) psi = tensor(psi, gaussian_unit_vector(d, rng));
    psi /= psi.norm();
    rho += (weights[c] / total) * psi * psi.adjoint();
  }
  rho /= rho.trace().real();
  return MultipartiteState::mixed(std::move(rho), dims);
}

}  // namespace polyent
