#pragma once

#include "polyent/linalg.hpp"

#include <span>

namespace polyent {

// All entropies are in bits with 0 log 0 = 0.

/// Shannon entropy of a spectrum or distribution; entries <= 0 contribute 0.
double shannon(std::span<const double> p);
double shannon(const RVector& p);

/// H(x) = -x log2 x - (1-x) log2(1-x) for x in [0, 1].
double binary_entropy(double x);

/// Von Neumann entropy of a density matrix.
double entropy(const CMatrix& rho);

}  // namespace polyent
