#pragma once

// Independent reference implementations used only by tests.

#include "polyent/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <vector>

namespace oracle {

using polyent::CMatrix;
using polyent::CVector;
using polyent::RVector;

inline std::vector<int> digits(int flat, const std::vector<int>& dims) {
  std::vector<int> d(dims.size());
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
    d[k] = flat % dims[k];
    flat /= dims[k];
  }
  return d;
}

inline int flatten(const std::vector<int>& d, const std::vector<int>& dims) {
  int f = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) f = f * dims[k] + d[k];
  return f;
}

/// Partial trace by enumerating every pair of full multi-indices.
inline CMatrix partial_trace(const CMatrix& m, const std::vector<int>& dims, const std::vector<int>& keep) {
  std::vector<int> kd;
  for (int k : keep) kd.push_back(dims[k]);
  int n = 1;
  for (int d : kd) n *= d;
  CMatrix out = CMatrix::Zero(n, n);
  const int total = static_cast<int>(m.rows());
  for (int i = 0; i < total; ++i)
    for (int j = 0; j < total; ++j) {
      const auto di = digits(i, dims);
      const auto dj = digits(j, dims);
      bool diag = true;
      for (std::size_t k = 0; k < dims.size() && diag; ++k) {
        bool kept = false;
        for (int q : keep) kept |= q == static_cast<int>(k);
        if (!kept && di[k] != dj[k]) diag = false;
      }
      if (!diag) continue;
      std::vector<int> ki, kj;
      for (int q : keep) {
        ki.push_back(di[q]);
        kj.push_back(dj[q]);
      }
      out(flatten(ki, kd), flatten(kj, kd)) += m(i, j);
    }
  return out;
}

inline RVector eigenvalues(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()));
  return es.eigenvalues();
}

/// Von Neumann entropy in bits via Eigen's solver.
inline double entropy(const CMatrix& rho) {
  const RVector ev = eigenvalues(rho);
  double s = 0.0;
  for (int i = 0; i < ev.size(); ++i)
    if (ev(i) > 1e-15) s -= ev(i) * std::log2(ev(i));
  return s;
}

/// Wootters concurrence from the eigenvalues of sqrt(sqrt(rho) rho~ sqrt(rho)).
inline std::vector<double> spin_flip_values(const CMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho);
  const RVector ev = es.eigenvalues().cwiseMax(0.0);
  const CMatrix root = es.eigenvectors() * ev.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
  CMatrix yy = CMatrix::Zero(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const CMatrix tilde = yy * rho.conjugate() * yy;
  const CMatrix r = root * tilde * root;
  RVector l = eigenvalues(r).cwiseMax(0.0).cwiseSqrt();
  std::vector<double> out(l.data(), l.data() + 4);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

inline double binary_entropy(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1 - x) * std::log2(1 - x);
}

}  // namespace oracle
