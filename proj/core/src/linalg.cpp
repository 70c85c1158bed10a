#include "polyent/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace polyent {

namespace {

void validate_dims(const std::vector<int>& dims) {
  for (int d : dims) {
    if (d < 1) throw DimensionError("subsystem dimension must be positive, got " + std::to_string(d));
  }
}

// Flat offsets of every kept / traced multi-index, so that
// full_index = kept_offsets[k] + traced_offsets[t].
struct SplitIndex {
  std::vector<int> kept_offsets;
  std::vector<int> traced_offsets;
};

std::vector<int> strides_of(const DimList& dims) {
  std::vector<int> strides(dims.size(), 1);
  for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i) strides[i] = strides[i + 1] * dims[i + 1];
  return strides;
}

std::vector<int> offsets_for(const DimList& dims, const std::vector<int>& strides, const std::vector<int>& subsystems) {
  int count = 1;
  for (int s : subsystems) count *= dims[s];
  std::vector<int> offsets(count, 0);
  std::vector<int> digits(subsystems.size(), 0);
  for (int idx = 0; idx < count; ++idx) {
    int off = 0;
    for (std::size_t j = 0; j < subsystems.size(); ++j) off += digits[j] * strides[subsystems[j]];
    offsets[idx] = off;
    for (int j = static_cast<int>(subsystems.size()) - 1; j >= 0; --j) {
      if (++digits[j] < dims[subsystems[j]]) break;
      digits[j] = 0;
    }
  }
  return offsets;
}

SplitIndex split_index(const DimList& dims, std::span<const int> keep) {
  std::vector<int> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) throw DimensionError("duplicate subsystem in keep set");
  for (int k : kept) {
    if (k < 0 || k >= static_cast<int>(dims.size())) throw DimensionError("subsystem index out of range: " + std::to_string(k));
  }
  std::vector<int> traced;
  for (int i = 0; i < static_cast<int>(dims.size()); ++i) {
    if (!std::binary_search(kept.begin(), kept.end(), i)) traced.push_back(i);
  }
  const auto strides = strides_of(dims);
  return {offsets_for(dims, strides, kept), offsets_for(dims, strides, traced)};
}

void require_square(const CMatrix& m, const DimList& dims) {
  if (m.rows() != m.cols()) throw DimensionError("matrix is not square");
  if (m.rows() != dims.total()) {
    throw DimensionError("matrix dimension " + std::to_string(m.rows()) + " does not match dims " + dims.to_string());
  }
}

// One complex Jacobi rotation zeroing a(p,q). With b = a(p,q) = |b| e^{i phi},
// J = diag(1, e^{-i phi}) * R(theta) where R is the real symmetric rotation.
// Works on raw column-major storage: these loops sit on the optimizer's hot
// path.
void jacobi_rotate(cplx* a, cplx* v, int n, int p, int q) {
  const cplx b = a[q * n + p];
  const double mag2 = b.real() * b.real() + b.imag() * b.imag();
  if (mag2 == 0.0) return;
  const double mag = std::sqrt(mag2);
  const cplx phase = b / mag;  // e^{i phi}
  const cplx phase_conj = std::conj(phase);
  const double app = a[p * n + p].real();
  const double aqq = a[q * n + q].real();
  const double zeta = (aqq - app) / (2.0 * mag);
  const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  const cplx s_conj = s * phase_conj;
  const cplx s_ph = s * phase;

  // Columns: A <- A J.
  cplx* colp = a + static_cast<std::ptrdiff_t>(p) * n;
  cplx* colq = a + static_cast<std::ptrdiff_t>(q) * n;
  for (int k = 0; k < n; ++k) {
    const cplx akp = colp[k];
    const cplx akq = colq[k];
    colp[k] = c * akp - s_conj * akq;
    colq[k] = s * akp + c * phase_conj * akq;
  }
  // Rows: A <- J^dagger A.
  for (int k = 0; k < n; ++k) {
    const cplx apk = a[k * n + p];
    const cplx aqk = a[k * n + q];
    a[k * n + p] = c * apk - s_ph * aqk;
    a[k * n + q] = s * apk + c * phase * aqk;
  }
  a[q * n + p] = 0.0;
  a[p * n + q] = 0.0;
  a[p * n + p] = a[p * n + p].real();
  a[q * n + q] = a[q * n + q].real();

  if (v != nullptr) {
    cplx* vp = v + static_cast<std::ptrdiff_t>(p) * n;
    cplx* vq = v + static_cast<std::ptrdiff_t>(q) * n;
    for (int k = 0; k < n; ++k) {
      const cplx vkp = vp[k];
      const cplx vkq = vq[k];
      vp[k] = c * vkp - s_conj * vkq;
      vq[k] = s * vkp + c * phase_conj * vkq;
    }
  }
}

void jacobi_sweeps(CMatrix& m, CMatrix* vm) {
  const int n = static_cast<int>(m.rows());
  cplx* a = m.data();
  cplx* v = vm != nullptr ? vm->data() : nullptr;
  const double scale = std::max(1e-300, m.squaredNorm());
  constexpr int kMaxSweeps = 64;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (int q = 1; q < n; ++q)
      for (int p = 0; p < q; ++p) off += std::norm(a[q * n + p]);
    if (off <= 1e-30 * scale) return;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) jacobi_rotate(a, v, n, p, q);
  }
}

double clip(double x) { return (x < 0.0 && x >= -kEigenClip) ? 0.0 : x; }

}  // namespace

DimList::DimList(std::initializer_list<int> dims) : dims_(dims) { validate_dims(dims_); }

DimList::DimList(std::vector<int> dims) : dims_(std::move(dims)) { validate_dims(dims_); }

int DimList::total() const {
  return std::accumulate(dims_.begin(), dims_.end(), 1, std::multiplies<>());
}

DimList DimList::select(std::span<const int> subsystems) const {
  std::vector<int> out;
  out.reserve(subsystems.size());
  for (int s : subsystems) {
    if (s < 0 || s >= static_cast<int>(dims_.size())) throw DimensionError("subsystem index out of range");
    out.push_back(dims_[s]);
  }
  return DimList(std::move(out));
}

DimList DimList::appended(int dim) const {
  auto out = dims_;
  out.push_back(dim);
  return DimList(std::move(out));
}

std::string DimList::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < dims_.size(); ++i) os << (i ? "," : "") << dims_[i];
  os << ')';
  return os.str();
}

CMatrix tensor(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CVector tensor(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

CMatrix partial_trace(const CMatrix& m, const DimList& dims, std::span<const int> keep) {
  require_square(m, dims);
  const auto split = split_index(dims, keep);
  const auto& ko = split.kept_offsets;
  const auto& to = split.traced_offsets;
  const int dk = static_cast<int>(ko.size());
  CMatrix out = CMatrix::Zero(dk, dk);
  for (int i = 0; i < dk; ++i)
    for (int j = 0; j < dk; ++j) {
      cplx acc = 0.0;
      for (int t : to) acc += m(ko[i] + t, ko[j] + t);
      out(i, j) = acc;
    }
  return out;
}

CMatrix partial_trace(const CMatrix& m, const DimList& dims, std::initializer_list<int> keep) {
  return partial_trace(m, dims, std::span<const int>(keep.begin(), keep.size()));
}

CMatrix reduced_density(const CVector& psi, const DimList& dims, std::span<const int> keep) {
  if (psi.size() != dims.total()) throw DimensionError("vector length does not match dims " + dims.to_string());
  const auto split = split_index(dims, keep);
  const auto& ko = split.kept_offsets;
  const auto& to = split.traced_offsets;
  CMatrix f(ko.size(), to.size());
  for (std::size_t i = 0; i < ko.size(); ++i)
    for (std::size_t t = 0; t < to.size(); ++t) f(i, t) = psi(ko[i] + to[t]);
  return f * f.adjoint();
}

CMatrix reduced_density(const CVector& psi, const DimList& dims, std::initializer_list<int> keep) {
  return reduced_density(psi, dims, std::span<const int>(keep.begin(), keep.size()));
}

CMatrix partial_transpose(const CMatrix& m, const DimList& dims, int sys) {
  require_square(m, dims);
  if (sys < 0 || sys >= static_cast<int>(dims.size())) throw DimensionError("subsystem index out of range");
  const auto strides = strides_of(dims);
  const int stride = strides[sys];
  const int d = dims[sys];
  const int n = static_cast<int>(m.rows());
  CMatrix out(n, n);
  for (int i = 0; i < n; ++i) {
    const int di = (i / stride) % d;
    for (int j = 0; j < n; ++j) {
      const int dj = (j / stride) % d;
      const int ii = i + (dj - di) * stride;
      const int jj = j + (di - dj) * stride;
      out(ii, jj) = m(i, j);
    }
  }
  return out;
}

namespace {

std::vector<int> permutation_map(const DimList& dims, std::span<const int> order) {
  if (order.size() != dims.size()) throw DimensionError("permutation length does not match dims");
  std::vector<int> seen(dims.size(), 0);
  for (int o : order) {
    if (o < 0 || o >= static_cast<int>(dims.size()) || seen[o]++) throw DimensionError("invalid subsystem permutation");
  }
  const auto old_strides = strides_of(dims);
  const DimList new_dims = dims.select(order);
  std::vector<int> moved_strides(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) moved_strides[k] = old_strides[order[k]];
  // Offsets in the old layout of every new multi-index.
  std::vector<int> map(dims.total());
  std::vector<int> digits(order.size(), 0);
  for (int idx = 0; idx < dims.total(); ++idx) {
    int off = 0;
    for (std::size_t k = 0; k < order.size(); ++k) off += digits[k] * moved_strides[k];
    map[idx] = off;
    for (int k = static_cast<int>(order.size()) - 1; k >= 0; --k) {
      if (++digits[k] < new_dims[k]) break;
      digits[k] = 0;
    }
  }
  return map;
}

}  // namespace

CVector permute_subsystems(const CVector& psi, const DimList& dims, std::span<const int> order) {
  if (psi.size() != dims.total()) throw DimensionError("vector length does not match dims");
  const auto map = permutation_map(dims, order);
  CVector out(psi.size());
  for (std::size_t i = 0; i < map.size(); ++i) out(i) = psi(map[i]);
  return out;
}

CMatrix permute_subsystems(const CMatrix& m, const DimList& dims, std::span<const int> order) {
  require_square(m, dims);
  const auto map = permutation_map(dims, order);
  const int n = static_cast<int>(map.size());
  CMatrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = m(map[i], map[j]);
  return out;
}

double hermiticity_defect(const CMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

void require_hermitian(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols()) throw DimensionError(std::string(what) + ": matrix is not square");
  const double defect = hermiticity_defect(m);
  if (!(defect <= kHermitianTol)) {
    throw DomainError(std::string(what) + ": matrix is not Hermitian (defect " + std::to_string(defect) + ")");
  }
}

EigenDecomposition eig_hermitian(const CMatrix& m) {
  require_hermitian(m, "eig_hermitian");
  const int n = static_cast<int>(m.rows());
  CMatrix a = 0.5 * (m + m.adjoint());
  CMatrix v = CMatrix::Identity(n, n);
  jacobi_sweeps(a, &v);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return a(x, x).real() < a(y, y).real(); });
  EigenDecomposition out{RVector(n), CMatrix(n, n)};
  for (int k = 0; k < n; ++k) {
    out.values(k) = clip(a(order[k], order[k]).real());
    out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

void eigvalsh_inplace(CMatrix& a, RVector& out) {
  const int n = static_cast<int>(a.rows());
  out.resize(n);
  if (n == 1) {
    out(0) = clip(a(0, 0).real());
    return;
  }
  if (n == 2) {
    const double x = a(0, 0).real();
    const double d = a(1, 1).real();
    const double mean = 0.5 * (x + d);
    const double r = std::hypot(0.5 * (x - d), std::abs(0.5 * (a(0, 1) + std::conj(a(1, 0)))));
    out(0) = clip(mean - r);
    out(1) = clip(mean + r);
    return;
  }
  jacobi_sweeps(a, nullptr);
  for (int k = 0; k < n; ++k) out(k) = a(k, k).real();
  std::sort(out.data(), out.data() + n);
  for (int k = 0; k < n; ++k) out(k) = clip(out(k));
}

RVector eigvalsh(const CMatrix& m) {
  require_hermitian(m, "eigvalsh");
  CMatrix a = 0.5 * (m + m.adjoint());
  RVector out;
  eigvalsh_inplace(a, out);
  return out;
}

Purification purify(const CMatrix& rho, const DimList& dims) {
  require_square(rho, dims);
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > 1e-9) throw DomainError("purify: trace is " + std::to_string(tr) + ", expected 1");
  const auto eig = eig_hermitian(rho);
  if (eig.values(0) < -1e-10) throw DomainError("purify: matrix is not positive semidefinite");
  std::vector<int> support;
  for (int k = static_cast<int>(eig.values.size()) - 1; k >= 0; --k) {
    if (eig.values(k) > kEigenClip) support.push_back(k);
  }
  const int r = static_cast<int>(support.size());
  Purification out{CVector::Zero(rho.rows() * r), dims.appended(r), r};
  for (int i = 0; i < r; ++i) {
    const double w = std::sqrt(eig.values(support[i]));
    for (Eigen::Index k = 0; k < rho.rows(); ++k) out.psi(k * r + i) = w * eig.vectors(k, support[i]);
  }
  return out;
}

CMatrix sqrt_psd(const CMatrix& m) {
  const auto eig = eig_hermitian(m);
  if (eig.values.size() > 0 && eig.values(0) < -1e-10) throw DomainError("sqrt_psd: negative eigenvalue");
  RVector root = eig.values.cwiseMax(0.0).cwiseSqrt();
  return eig.vectors * root.asDiagonal() * eig.vectors.adjoint();
}

int numerical_rank(const CMatrix& m, double threshold) {
  const RVector ev = eigvalsh(m);
  return static_cast<int>((ev.array() > threshold).count());
}

double min_eigenvalue(const CMatrix& m) {
  const RVector ev = eigvalsh(m);
  return ev.size() ? ev(0) : 0.0;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("max_abs_diff: shape mismatch");
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace polyent
