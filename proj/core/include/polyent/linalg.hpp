#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyent {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Raised when matrix shapes, subsystem dimensions or index sets disagree.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an operation that requires a Hermitian / PSD / normalized
/// operand receives something else.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kEigenClip = 1e-12;

/// Ordered list of subsystem dimensions.
///
/// Tensor convention shared by the whole library: subsystem 0 is the most
/// significant index, so for dims (d0, d1, d2) the basis state |i0 i1 i2>
/// has flat index (i0 * d1 + i1) * d2 + i2.
class DimList {
 public:
  DimList() = default;
  DimList(std::initializer_list<int> dims);
  explicit DimList(std::vector<int> dims);

  std::size_t size() const { return dims_.size(); }
  bool empty() const { return dims_.empty(); }
  int operator[](std::size_t i) const { return dims_[i]; }
  const std::vector<int>& values() const { return dims_; }
  auto begin() const { return dims_.begin(); }
  auto end() const { return dims_.end(); }

  /// Product of all dimensions.
  int total() const;
  /// Dimensions of the listed subsystems, in the order given.
  DimList select(std::span<const int> subsystems) const;
  /// Dimension list with one extra subsystem appended.
  DimList appended(int dim) const;

  std::string to_string() const;

  friend bool operator==(const DimList&, const DimList&) = default;

 private:
  std::vector<int> dims_;
};

/// Kronecker product, `a` on the more significant index.
CMatrix tensor(const CMatrix& a, const CMatrix& b);
CVector tensor(const CVector& a, const CVector& b);

/// Reduced operator on the subsystems in `keep` (any order given; the result
/// keeps the original subsystem ordering). Trace-preserving.
CMatrix partial_trace(const CMatrix& m, const DimList& dims, std::span<const int> keep);
CMatrix partial_trace(const CMatrix& m, const DimList& dims, std::initializer_list<int> keep);

/// Reduced density matrix of a pure vector, computed as F F^dagger without
/// materializing |psi><psi|.
CMatrix reduced_density(const CVector& psi, const DimList& dims, std::span<const int> keep);
CMatrix reduced_density(const CVector& psi, const DimList& dims, std::initializer_list<int> keep);

/// Transpose on the index pair of subsystem `sys`.
CMatrix partial_transpose(const CMatrix& m, const DimList& dims, int sys);

/// Reorder subsystems: new subsystem k is old subsystem order[k].
CVector permute_subsystems(const CVector& psi, const DimList& dims, std::span<const int> order);
CMatrix permute_subsystems(const CMatrix& m, const DimList& dims, std::span<const int> order);

/// Max-abs entry of M - M^dagger.
double hermiticity_defect(const CMatrix& m);
void require_hermitian(const CMatrix& m, const char* what);

struct EigenDecomposition {
  RVector values;   // ascending
  CMatrix vectors;  // columns, unitary
};

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
///
/// Sweep order is fixed (p < q, row-major), so results are bitwise
/// reproducible. Eigenvalues in [-1e-12, 0) are clipped to zero.
EigenDecomposition eig_hermitian(const CMatrix& m);

/// Eigenvalues only (ascending, clipped as above). 1x1 and 2x2 inputs use the
/// closed form; larger inputs use the same Jacobi sweeps without accumulating
/// vectors.
RVector eigvalsh(const CMatrix& m);

/// Unchecked variant for matrices Hermitian by construction; `a` is
/// overwritten.
void eigvalsh_inplace(CMatrix& a, RVector& out);

/// Purification of `rho` onto original (x) ancilla.
struct Purification {
  CVector psi;
  DimList dims;  // original dims followed by the ancilla dimension
  int ancilla_dim = 0;
};

/// Ancilla dimension equals rank(rho) counted as eigenvalues > 1e-12.
Purification purify(const CMatrix& rho, const DimList& dims);

/// PSD square root V diag(sqrt(lambda)) V^dagger.
CMatrix sqrt_psd(const CMatrix& m);

/// Number of eigenvalues above `threshold`.
int numerical_rank(const CMatrix& m, double threshold = 1e-10);

double min_eigenvalue(const CMatrix& m);

/// Max-abs entry of the difference.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

}  // namespace polyent
