#pragma once

#include <vector>

namespace prmt {

/// Gauss-Legendre rule mapped affinely to [x0, x0+length].
struct Quadrature {
  double x0 = 0;
  double length = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
  int n() const { return static_cast<int>(nodes.size()); }
};

/// Nodes/weights on [-1, 1], Newton iteration on Legendre polynomials.
void gauss_legendre_unit(int n, std::vector<double>& x, std::vector<double>& w);

/// Throws InvalidParams unless L > 0 and n >= 4 (n >= 1 for the unit rule).
Quadrature build_quadrature(double x0, double L, int n);

}  // namespace prmt
