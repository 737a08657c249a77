#pragma once

#include <vector>

namespace plurirand {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre rule on [-1, 1], nodes ascending. Newton iteration on the
// three-term recurrence; accurate to machine precision for n up to several
// thousand.
QuadratureRule gauss_legendre(int n);

// Same rule mapped to [a, b].
QuadratureRule gauss_legendre(int n, double a, double b);

}  // namespace plurirand
