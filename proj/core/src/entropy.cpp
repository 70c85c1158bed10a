#include "polyent/entropy.hpp"

#include <cmath>

namespace polyent {

double shannon(std::span<const double> p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h;
}

double shannon(const RVector& p) { return shannon(std::span<const double>(p.data(), p.size())); }

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("binary_entropy: argument outside [0, 1]");
  const double pair[2] = {x, 1.0 - x};
  return shannon(std::span<const double>(pair, 2));
}

double entropy(const CMatrix& rho) {
  const RVector ev = eigvalsh(rho);
  return shannon(ev);
}

}  // namespace polyent
