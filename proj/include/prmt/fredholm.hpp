#pragma once

#include <span>
#include <vector>

#include "prmt/painleve.hpp"
#include "prmt/quadrature.hpp"

namespace prmt::fredholm {

/// Symmetrized Nystrom discretization of the Airy operator on (x0, x0+L):
/// matrix(i,j) = sqrt(w_i) A(n_i, n_j) sqrt(w_j), so det(I - matrix)
/// approximates the Fredholm determinant.
struct DiscretizedOperator {
  Quadrature quad;
  std::vector<double> matrix;  // row-major n x n, symmetric
  std::vector<double> sqrt_w;
  std::vector<double> ai;   // Ai at nodes
  std::vector<double> aip;  // Ai' at nodes
  int n() const { return quad.n(); }
};

struct Options {
  double L = 16.0;
  int n = 96;
};

DiscretizedOperator build_airy_operator(double x0, double L, int n);

/// F_0(x) = det(1 - A_x) with an (L,n)-refinement check.
/// Throws NotConverged if doubling n moves the value by more than 1e-8.
double f0_fredholm(double x, const Options& opt = {});

/// Solves (I - K) y = samples in symmetrized coordinates, returns y at nodes.
std::vector<double> resolvent_apply(const DiscretizedOperator& op,
                                    std::span<const double> samples);

/// f(x,w) = 1 - <(1-A_x)^{-1} C_w, Ai> over (x, inf).
double f_fredholm(double x, double w, const Options& opt = {});
/// g(x,w) = -((1-A_x)^{-1} C_w)(x), boundary value by Nystrom extension.
double g_fredholm(double x, double w, const Options& opt = {});

/// Spike parameters with confluent clustering (threshold 1e-6).
struct SpikeVector {
  std::vector<double> ws;                        // as given
  std::vector<std::vector<int>> clusters;        // indices grouped by proximity
  static SpikeVector make(std::vector<double> ws, double delta_confluent = 1e-6);
  bool all_distinct() const;
};

/// F_k by the inner-product determinant definition (distinct spikes only).
double fk_definition(double x, const SpikeVector& spikes, const Options& opt = {});

/// F_k by the (w + D_x)-derivative determinant formula, with divided-difference
/// columns on clustered spikes (exact l'Hospital limits via the Lax algebra).
double fk_determinant(double x, const SpikeVector& spikes,
                      const painleve::PainleveTable& table);

struct Moments {
  double mean, sd;
};
/// Mean and standard deviation of F_k, k=0..3, integrating the tabulated CDF
/// on [-12, 9] (step 0.05) through a cubic spline.
Moments moments(int k, const painleve::PainleveTable& table);

}  // namespace prmt::fredholm
