#pragma once

#include <span>
#include <vector>

namespace prmt::special {

/// Airy function Ai(u) on the real line.
/// Maclaurin series on [-4.5, 1.5]; saddle-point contour quadrature of the
/// oscillatory integral representation outside. Relative accuracy ~1e-13
/// (relative to the local envelope on the oscillatory side).
double airy_ai(double u);
double airy_ai_prime(double u);

struct AiryPair {
  double ai;
  double aip;
};
AiryPair airy_both(double u);

/// log(Ai(u)) for u > 0 (no underflow; used for exponentially scaled work).
double airy_ai_log(double u);

/// Airy kernel (Ai(u)Ai'(v) - Ai'(u)Ai(v))/(u - v), diagonal limit
/// Ai'(m)^2 - m Ai(m)^2 at m = (u+v)/2 when |u - v| <= 1e-6.
double airy_kernel(double u, double v);

/// Cauchy-type Airy transform C_w(u): contour integral of
/// e^{i(a^3/3 + ua)}/(w + ia)/(2 pi) over the two rays
/// a = i b0 + r e^{i pi/6}, a = i b0 + r e^{5 i pi/6}, b0 = min(0,w) - 1,
/// so the pole a = iw stays above the contour for all real w.
double cauchy_airy(double u, double w);

/// s^(m)(u; w_1..w_m) = sum_j [prod_{l != j} 1/(w_l - w_j)] C_{w_j}(u).
/// Requires pairwise distinct ws (separation > 1e-8).
double s_m(double u, std::span<const double> ws);

/// t^(m)(v; w_1..w_{m-1}) = prod_j (w_j - D_v) Ai(v), reduced to
/// P(v) Ai(v) + Q(v) Ai'(v) via Ai'' = v Ai. Empty ws gives Ai(v).
double t_m(double v, std::span<const double> ws);

/// Integer-order Bessel J_k and modified Bessel I_k by Miller backward
/// recurrence with series normalization.
double bessel_j(int k, double x);
double bessel_i(int k, double x);
/// All orders 0..kmax in one backward pass.
std::vector<double> bessel_j_array(int kmax, double x);
std::vector<double> bessel_i_array(int kmax, double x);

}  // namespace prmt::special
