#include "prmt/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>

#include "prmt/errors.hpp"
#include "prmt/quadrature.hpp"

namespace prmt::special {

namespace {

using cd = std::complex<double>;

constexpr double kAi0 = 0.35502805388781723926;    // 3^{-2/3}/Gamma(2/3)
constexpr double kAip0 = -0.25881940379280679841;  // -3^{-1/3}/Gamma(1/3)

// Maclaurin series; u'' = x u splits the solution space into the two
// standard series f (even-ish) and g (odd-ish).
AiryPair airy_series(double x) {
  const double x3 = x * x * x;
  double af = 1.0, f = 1.0, fp = 0.0;  // f = sum a_k x^{3k}
  double bg = x, g = x, gp = 1.0;      // g = sum b_k x^{3k+1}
  for (int k = 0; k < 60; ++k) {
    const double afn = af * x3 / ((3.0 * k + 2.0) * (3.0 * k + 3.0));
    const double bgn = bg * x3 / ((3.0 * k + 3.0) * (3.0 * k + 4.0));
    f += afn;
    g += bgn;
    // derivative terms: d/dx a_{k+1} x^{3k+3} = (3k+3) a_{k+1} x^{3k+2}
    fp += afn / x * (3.0 * k + 3.0);
    gp += bgn / x * (3.0 * k + 4.0);
    af = afn;
    bg = bgn;
    if (std::abs(afn) + std::abs(bgn) < 1e-18 * (std::abs(f) + std::abs(g))) break;
  }
  if (x == 0.0) {
    fp = 0.0;
    gp = 1.0;
  }
  return {kAi0 * f + kAip0 * g, kAi0 * fp + kAip0 * gp};
}

// Adaptive panel integration with a 24-point rule; subdivides until the
// half-panel refinement is below tol.
template <class F>
cd gl_panel(const F& fn, double a, double b) {
  static std::vector<double> xs, ws;
  if (xs.empty()) gauss_legendre_unit(24, xs, ws);
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  cd acc = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) acc += ws[i] * fn(c + h * xs[i]);
  return acc * h;
}

template <class F>
cd gl_adaptive(const F& fn, double a, double b, double tol, int depth = 0) {
  const cd whole = gl_panel(fn, a, b);
  const double m = 0.5 * (a + b);
  const cd split = gl_panel(fn, a, m) + gl_panel(fn, m, b);
  if (std::abs(whole - split) <= tol || depth > 24) return split;
  return gl_adaptive(fn, a, m, 0.5 * tol, depth + 1) +
         gl_adaptive(fn, m, b, 0.5 * tol, depth + 1);
}

// Saddle-point quadrature for x >= 1.5 through a = i sqrt(x):
//   Ai(x)  = e^{-z}/pi * int_0^inf e^{-sqrt(x) s^2} cos(s^3/3) ds
//   Ai'(x) = e^{-z}/pi * int_0^inf e^{-sqrt(x) s^2} (-sqrt(x) cos - s sin)(s^3/3) ds
// with z = (2/3) x^{3/2}. Returns scaled values (without e^{-z}).
struct ScaledPos {
  double ai, aip, zeta;
};
ScaledPos airy_pos_scaled(double x) {
  const double sx = std::sqrt(x);
  const double zeta = 2.0 / 3.0 * x * sx;
  const double S = std::sqrt(45.0 / sx);
  auto fn = [sx](double s) -> cd {
    const double p = s * s * s / 3.0;
    const double e = std::exp(-sx * s * s);
    return {e * std::cos(p), e * (-sx * std::cos(p) - s * std::sin(p))};
  };
  cd v = gl_adaptive(fn, 0.0, S, 1e-17);
  return {v.real() / M_PI, v.imag() / M_PI, zeta};
}

// Two-part contour for x <= -4.5: real segment [0, rho] plus the descent ray
// a = rho + s e^{i pi/4}, rho = sqrt(-x).  Ai = (1/pi) Re(I1 + I2).
AiryPair airy_neg(double x) {
  const double rho = std::sqrt(-x);
  const double xi = 2.0 / 3.0 * rho * rho * rho;
  auto seg = [rho](double p) -> cd {
    const double ps = p * p * p / 3.0 - rho * rho * p;
    const cd e = std::exp(cd(0.0, ps));
    return e;
  };
  auto seg_d = [rho](double p) -> cd {
    const double ps = p * p * p / 3.0 - rho * rho * p;
    return cd(0.0, p) * std::exp(cd(0.0, ps));
  };
  const cd eip4(std::cos(M_PI / 4), std::sin(M_PI / 4));
  const double c = std::sqrt(2.0) / 6.0;
  // ray decay: rho s^2 + c s^3 >= 45
  double S = std::sqrt(45.0 / rho);
  while (rho * S * S + c * S * S * S < 45.0) S *= 1.3;
  auto ray = [&](double s) -> cd {
    const cd ph = cd(-rho * s * s - c * s * s * s, -xi - c * s * s * s);
    return std::exp(ph);
  };
  auto ray_d = [&](double s) -> cd {
    const cd a = cd(rho, 0.0) + s * eip4;
    return cd(0.0, 1.0) * a * ray(s);
  };
  const cd I1 = gl_adaptive(seg, 0.0, rho, 1e-16);
  const cd I2 = eip4 * gl_adaptive(ray, 0.0, S, 1e-16);
  const cd D1 = gl_adaptive(seg_d, 0.0, rho, 1e-16);
  const cd D2 = eip4 * gl_adaptive(ray_d, 0.0, S, 1e-16);
  return {(I1 + I2).real() / M_PI, (D1 + D2).real() / M_PI};
}

}  // namespace

AiryPair airy_both(double u) {
  if (u >= -4.5 && u <= 1.5) return airy_series(u);
  if (u > 1.5) {
    ScaledPos s = airy_pos_scaled(u);
    if (s.zeta > 700.0) return {0.0, 0.0};
    const double e = std::exp(-s.zeta);
    return {e * s.ai, e * s.aip};
  }
  return airy_neg(u);
}

double airy_ai(double u) { return airy_both(u).ai; }
double airy_ai_prime(double u) { return airy_both(u).aip; }

double airy_ai_log(double u) {
  if (u <= 1.5) {
    double v = airy_ai(u);
    if (!(v > 0.0)) throw InvalidParams("airy_ai_log: Ai(u) <= 0");
    return std::log(v);
  }
  ScaledPos s = airy_pos_scaled(u);
  return -s.zeta + std::log(s.ai);
}

double airy_kernel(double u, double v) {
  constexpr double kDiag = 1e-6;
  if (std::abs(u - v) <= kDiag) {
    const double m = 0.5 * (u + v);
    AiryPair p = airy_both(m);
    return p.aip * p.aip - m * p.ai * p.ai;
  }
  AiryPair pu = airy_both(u);
  AiryPair pv = airy_both(v);
  return (pu.ai * pv.aip - pu.aip * pv.ai) / (u - v);
}

double cauchy_airy(double u, double w) {
  if (w < -0.5) {
    // decaying solution of C' = Ai - wC picked by the contour:
    // C_w(u) = -int_0^inf e^{w tau} Ai(u + tau) d tau  (w < 0)
    double acc = 0.0, tau = 0.0;
    for (int blk = 0; blk < 2000; ++blk) {
      auto fn = [&](double t) -> cd { return std::exp(w * t) * airy_ai(u + t); };
      acc += gl_adaptive(fn, tau, tau + 2.0, 1e-16).real();
      tau += 2.0;
      const double env = (u + tau > 1.0) ? std::exp(airy_ai_log(u + tau)) : 0.6;
      if (std::exp(w * tau) * env < 1e-19) return -acc;
    }
    throw QuadratureNotConverged("cauchy_airy: convolution tail did not certify");
  }
  const double b0 = std::min(0.0, w) - 0.6;
  const cd dir(std::cos(M_PI / 6), std::sin(M_PI / 6));
  auto fn = [&](double r) -> cd {
    const cd a = cd(0.0, b0) + r * dir;
    const cd ph = cd(0.0, 1.0) * (a * a * a / 3.0 + u * a);
    return std::exp(ph) / (w + cd(0.0, 1.0) * a);
  };
  // march in blocks until the integrand magnitude certifies the tail
  double hi = 0.0, peak = 1e-30;
  cd acc = 0.0;
  for (int blk = 0; blk < 40; ++blk) {
    const double lo = hi;
    hi += 1.0;
    acc += gl_adaptive(fn, lo, hi, 1e-15 * std::max(1.0, peak));
    double mag = std::abs(fn(hi));
    peak = std::max(peak, mag);
    if (hi > 2.0 && mag < 1e-18 * std::max(1.0, peak)) {
      return (acc * dir).real() / M_PI;
    }
  }
  throw QuadratureNotConverged("cauchy_airy: contour tail did not certify");
}

namespace {
// polynomial in v, ascending coefficients
struct Poly {
  std::vector<double> c;
  double eval(double v) const {
    double r = 0.0;
    for (size_t i = c.size(); i-- > 0;) r = r * v + c[i];
    return r;
  }
};
Poly deriv(const Poly& p) {
  Poly d;
  if (p.c.size() > 1) {
    d.c.resize(p.c.size() - 1);
    for (size_t i = 1; i < p.c.size(); ++i) d.c[i - 1] = p.c[i] * static_cast<double>(i);
  }
  return d;
}
Poly shift_v(const Poly& p) {  // v * p
  Poly r;
  r.c.assign(p.c.size() + 1, 0.0);
  for (size_t i = 0; i < p.c.size(); ++i) r.c[i + 1] = p.c[i];
  return r;
}
Poly axpy(double a, const Poly& x, const Poly& y, double sy = 1.0) {  // a*x + sy*y
  Poly r;
  r.c.assign(std::max(x.c.size(), y.c.size()), 0.0);
  for (size_t i = 0; i < x.c.size(); ++i) r.c[i] += a * x.c[i];
  for (size_t i = 0; i < y.c.size(); ++i) r.c[i] += sy * y.c[i];
  return r;
}
}  // namespace

double s_m(double u, std::span<const double> ws) {
  const size_t m = ws.size();
  if (m == 0) throw InvalidParams("s_m: m >= 1 required");
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j)
      if (std::abs(ws[i] - ws[j]) <= 1e-8)
        throw ConfluentParameters("s_m: parameters closer than 1e-8");
  double acc = 0.0;
  for (size_t j = 0; j < m; ++j) {
    double pr = 1.0;
    for (size_t l = 0; l < m; ++l)
      if (l != j) pr /= (ws[l] - ws[j]);
    acc += pr * cauchy_airy(u, ws[j]);
  }
  return acc;
}

double t_m(double v, std::span<const double> ws) {
  // t = P Ai + Q Ai'; (w - D)(P Ai + Q Ai') = (wP - P' - vQ) Ai + (wQ - P - Q') Ai'
  Poly P{{1.0}}, Q{{}};
  for (double w : ws) {
    Poly Pn = axpy(w, P, axpy(-1.0, deriv(P), shift_v(Q), -1.0));
    Poly Qn = axpy(w, Q, axpy(-1.0, P, deriv(Q), -1.0));
    P = Pn;
    Q = Qn;
  }
  AiryPair a = airy_both(v);
  return P.eval(v) * a.ai + Q.eval(v) * a.aip;
}

namespace {

std::vector<double> bessel_backward(int kmax, double x, bool modified) {
  // Miller: downward recurrence, normalized by
  //   J: 1 = J_0 + 2 sum J_{2m};  I: e^x = I_0 + 2 sum I_m.
  std::vector<double> out(kmax + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }
  const double xa = std::abs(x);
  const int start =
      std::max(kmax, static_cast<int>(xa)) +
      static_cast<int>(2.0 * std::sqrt(40.0 * std::max<double>(kmax + 1.0, xa))) + 60;
  double fp1 = 0.0, f = 1e-300, norm = 0.0;
  for (int n = start; n >= 1; --n) {
    const double fm1 = (modified ? 1.0 : -1.0) * fp1 + (2.0 * n / xa) * f;
    fp1 = f;
    f = fm1;
    if (n - 1 <= kmax) out[n - 1] = f;
    if (modified) {
      if (n - 1 >= 1) norm += 2.0 * f;
    } else {
      if ((n - 1) % 2 == 0 && n - 1 >= 2) norm += 2.0 * f;
    }
    if (std::abs(f) > 1e250) {
      const double s = 1e-250;
      f *= s;
      fp1 *= s;
      norm *= s;
      for (double& v : out) v *= s;
    }
  }
  norm += f;  // order-0 term
  const double scale = (modified ? std::exp(xa) : 1.0) / norm;
  for (double& v : out) v *= scale;
  if (x < 0.0)  // J_k(-x) = (-1)^k J_k(x), same for I_k
    for (int k = 1; k <= kmax; k += 2) out[k] = -out[k];
  return out;
}

}  // namespace

std::vector<double> bessel_j_array(int kmax, double x) { return bessel_backward(kmax, x, false); }
std::vector<double> bessel_i_array(int kmax, double x) { return bessel_backward(kmax, x, true); }

double bessel_j(int k, double x) {
  const int ka = std::abs(k);
  double v = bessel_j_array(ka, x)[ka];
  if (k < 0 && (ka % 2) == 1) v = -v;
  return v;
}

double bessel_i(int k, double x) {
  const int ka = std::abs(k);
  return bessel_i_array(ka, x)[ka];
}

}  // namespace prmt::special
