#include "prmt/painleve.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "prmt/detail/lax_algebra.hpp"
#include "prmt/errors.hpp"
#include "prmt/quadrature.hpp"
#include "prmt/special_functions.hpp"

namespace prmt::painleve {

namespace {

using cd = std::complex<double>;
using Eigen::MatrixXd;
using Eigen::VectorXd;

// ---------------------------------------------------------------- panels

struct ChebPanel {
  int P;
  VectorXd y;     // Lobatto nodes on [-1,1], ascending
  MatrixXd D;     // differentiation matrix
  VectorXd wint;  // Clenshaw-Curtis weights
  VectorXd bary;  // barycentric weights

  explicit ChebPanel(int P_) : P(P_), y(P_), D(P_, P_), wint(P_), bary(P_) {
    for (int j = 0; j < P; ++j) y[j] = -std::cos(M_PI * j / (P - 1));
    for (int j = 0; j < P; ++j) {
      double b = (j == 0 || j == P - 1) ? 0.5 : 1.0;
      bary[j] = ((j % 2) ? -1.0 : 1.0) * b;
    }
    for (int i = 0; i < P; ++i) {
      double s = 0;
      for (int j = 0; j < P; ++j)
        if (i != j) {
          D(i, j) = (bary[j] / bary[i]) / (y[i] - y[j]);
          s += D(i, j);
        }
      D(i, i) = -s;
    }
    // weights integrating the Chebyshev interpolant exactly
    MatrixXd V(P, P);
    VectorXd mom(P);
    for (int m = 0; m < P; ++m) {
      for (int j = 0; j < P; ++j) V(m, j) = std::cos(m * std::acos(std::clamp(y[j], -1.0, 1.0)));
      mom[m] = (m % 2 == 1) ? 0.0 : 2.0 / (1.0 - m * m);
    }
    wint = V.fullPivLu().solve(mom);
  }

  double interp(const VectorXd& vals, double t) const {
    double num = 0, den = 0;
    for (int j = 0; j < P; ++j) {
      double d = t - y[j];
      if (std::abs(d) < 1e-14) return vals[j];
      double q = bary[j] / d;
      num += q * vals[j];
      den += q;
    }
    return num / den;
  }
};

// tail integrals of Ai beyond the table (u ~ -Ai there)
double ai_tail(double x, int power) {  // int_x^inf (s-x)^power Ai(s)^(power==2?2:...)...
  // power 1: int Ai ; power 2: int Ai^2 ; power 3: int (s-x) Ai^2
  std::vector<double> xs, ws;
  gauss_legendre_unit(48, xs, ws);
  const double L = 16.0;
  double acc = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    double s = x + 0.5 * L * (xs[i] + 1.0);
    double w = 0.5 * L * ws[i];
    double a = special::airy_ai(s);
    if (power == 1)
      acc += w * a;
    else if (power == 2)
      acc += w * a * a;
    else
      acc += w * (s - x) * a * a;
  }
  return acc;
}

// 6-node uniform-grid helpers (grid descending, spacing h > 0)

void quintic_weights(const double* xi, double lo, double hi, double* w) {
  // weights integrating the degree-5 interpolant on nodes xi over [lo,hi]
  Eigen::Matrix<double, 6, 6> V;
  Eigen::Matrix<double, 6, 1> mom;
  for (int m = 0; m < 6; ++m) {
    for (int j = 0; j < 6; ++j) V(m, j) = std::pow(xi[j], m);
    mom[m] = (std::pow(hi, m + 1) - std::pow(lo, m + 1)) / (m + 1);
  }
  Eigen::Map<Eigen::Matrix<double, 6, 1>>(w) = V.fullPivLu().solve(mom);
}

double quintic_point(const std::vector<double>& grid, const std::vector<double>& vals, double x) {
  // barycentric weights for 6 uniform nodes: (-1)^j C(5,j)
  static constexpr double kLam[6] = {1.0, -5.0, 10.0, -10.0, 5.0, -1.0};
  const int m = static_cast<int>(grid.size());
  const double h = grid[0] - grid[1];
  int k = static_cast<int>(std::floor((grid[0] - x) / h));  // x in [grid[k+1], grid[k]]
  int s = std::clamp(k - 2, 0, m - 6);
  double num = 0, den = 0;
  for (int j = 0; j < 6; ++j) {
    double d = x - grid[s + j];
    if (std::abs(d) < 1e-13) return vals[s + j];
    double q = kLam[j] / d;
    num += q * vals[s + j];
    den += q;
  }
  return num / den;
}

}  // namespace

double PainleveTable::u_at(double x) const {
  if (x > x_max + 1e-12) return -special::airy_ai(x);
  if (x < x_min - 1e-9) throw InvalidParams("PainleveTable: x below table range");
  return quintic_point(grid, u, std::min(x, x_max));
}
double PainleveTable::u_prime_at(double x) const {
  if (x > x_max + 1e-12) return -special::airy_ai_prime(x);
  if (x < x_min - 1e-9) throw InvalidParams("PainleveTable: x below table range");
  return quintic_point(grid, u_prime, std::min(x, x_max));
}
double PainleveTable::v_at(double x) const {
  if (x > x_max + 1e-12) return -ai_tail(x, 2);
  if (x < x_min - 1e-9) throw InvalidParams("PainleveTable: x below table range");
  return quintic_point(grid, v, std::min(x, x_max));
}
double PainleveTable::E_at(double x) const {
  if (x > x_max + 1e-12) return std::exp(-ai_tail(x, 1));
  if (x < x_min - 1e-9) throw InvalidParams("PainleveTable: x below table range");
  return quintic_point(grid, E, std::min(x, x_max));
}
double PainleveTable::log_f0_at(double x) const {
  if (x > x_max + 1e-12) return -ai_tail(x, 3);
  if (x < x_min - 1e-9) throw InvalidParams("PainleveTable: x below table range");
  return quintic_point(grid, log_f0, std::min(x, x_max));
}

namespace {

void finalize_log_f0(PainleveTable& t) {
  // log F0(x) = int_x^inf v, cumulated over the uniform grid from the top
  const int m = static_cast<int>(t.grid.size());
  const double h = t.step();
  t.log_f0.assign(m, 0.0);
  double tail = -ai_tail(t.x_max, 3);  // int_{xmax}^inf v = -int (s-xmax) Ai^2
  t.log_f0[0] = tail;
  double xi[6] = {0, 1, 2, 3, 4, 5}, w[6];
  for (int k = 1; k < m; ++k) {
    int s = std::clamp(k - 3, 0, m - 6);
    quintic_weights(xi, k - 1.0 - s, k - 0.0 - s, w);  // unitless stencil coordinates
    double seg = 0;
    for (int j = 0; j < 6; ++j) seg += h * w[j] * t.v[s + j];
    t.log_f0[k] = t.log_f0[k - 1] + seg;  // v<0 integrated downward adds negative area
  }
}

}  // namespace

PainleveTable solve_hastings_mcleod(double x_min, double x_max, double tol) {
  if (x_min < -12.0 - 1e-9) throw InvalidParams("solve_hastings_mcleod: x_min >= -12");
  if (x_max < 8.0) throw InvalidParams("solve_hastings_mcleod: x_max >= 8");
  if (tol < 1e-12) throw InvalidParams("solve_hastings_mcleod: tol >= 1e-12");

  const int P = 12;
  const double range = x_max - x_min;
  const int K = std::max(8, static_cast<int>(std::ceil(range / 0.75)));
  const double hp = range / K;
  static const ChebPanel panel(P);
  const int N = K * (P - 1) + 1;

  auto node_x = [&](int p, int j) { return x_min + p * hp + 0.5 * hp * (panel.y[j] + 1.0); };
  auto gidx = [&](int p, int j) { return p * (P - 1) + j; };

  const double uL = -std::sqrt(-x_min / 2.0) *
                    (1.0 + 1.0 / (8.0 * std::pow(x_min, 3)) - 73.0 / (128.0 * std::pow(x_min, 6)) +
                     10657.0 / (1024.0 * std::pow(x_min, 9)));
  const double uR = -special::airy_ai(x_max);

  VectorXd U(N);
  for (int p = 0; p < K; ++p)
    for (int j = 0; j < P; ++j) {
      double x = node_x(p, j);
      double a = special::airy_ai(x);
      U[gidx(p, j)] = -std::sqrt(a * a + std::max(-x, 0.0) / 2.0);
    }

  const MatrixXd D2 = panel.D * panel.D;
  const double s1 = 2.0 / hp, s2 = s1 * s1;

  auto residual = [&](const VectorXd& uu) {
    VectorXd R = VectorXd::Zero(N);
    R[0] = uu[0] - uL;
    R[N - 1] = uu[N - 1] - uR;
    for (int p = 0; p < K; ++p) {
      for (int j = 1; j <= P - 2; ++j) {
        double acc = 0;
        for (int k = 0; k < P; ++k) acc += D2(j, k) * uu[gidx(p, k)];
        double x = node_x(p, j), uv = uu[gidx(p, j)];
        R[gidx(p, j)] = s2 * acc - 2.0 * uv * uv * uv - x * uv;
      }
      if (p < K - 1) {  // C^1 matching at the shared node
        double dl = 0, dr = 0;
        for (int k = 0; k < P; ++k) {
          dl += panel.D(P - 1, k) * uu[gidx(p, k)];
          dr += panel.D(0, k) * uu[gidx(p + 1, k)];
        }
        R[gidx(p, P - 1)] = s1 * (dl - dr);
      }
    }
    return R;
  };

  VectorXd R = residual(U);
  bool converged = false;
  for (int it = 0; it < 40; ++it) {
    MatrixXd J = MatrixXd::Zero(N, N);
    J(0, 0) = 1.0;
    J(N - 1, N - 1) = 1.0;
    for (int p = 0; p < K; ++p) {
      for (int j = 1; j <= P - 2; ++j) {
        int r = gidx(p, j);
        for (int k = 0; k < P; ++k) J(r, gidx(p, k)) += s2 * D2(j, k);
        double x = node_x(p, j), uv = U[r];
        J(r, r) += -6.0 * uv * uv - x;
      }
      if (p < K - 1) {
        int r = gidx(p, P - 1);
        for (int k = 0; k < P; ++k) {
          J(r, gidx(p, k)) += s1 * panel.D(P - 1, k);
          J(r, gidx(p + 1, k)) -= s1 * panel.D(0, k);
        }
      }
    }
    VectorXd step = J.partialPivLu().solve(-R);
    double rn = R.lpNorm<Eigen::Infinity>();
    double lam = 1.0;
    VectorXd Un, Rn;
    for (int back = 0; back < 12; ++back) {
      Un = U + lam * step;
      Rn = residual(Un);
      if (Rn.lpNorm<Eigen::Infinity>() < rn || rn < 1e-11) break;
      lam *= 0.5;
    }
    U = Un;
    R = Rn;
    if (step.lpNorm<Eigen::Infinity>() * lam < 1e-13 && R.lpNorm<Eigen::Infinity>() < 1e-10) {
      converged = true;
      break;
    }
  }
  if (!converged) throw BvpNotConverged("solve_hastings_mcleod: Newton did not converge");

  // nodal derivative per panel
  std::vector<VectorXd> un(K), upn(K);
  for (int p = 0; p < K; ++p) {
    un[p].resize(P);
    for (int j = 0; j < P; ++j) un[p][j] = U[gidx(p, j)];
    upn[p] = s1 * (panel.D * un[p]);
  }

  // panel integrals of u and u^2
  std::vector<double> iu(K), iu2(K);
  for (int p = 0; p < K; ++p) {
    double a = 0, b = 0;
    for (int j = 0; j < P; ++j) {
      a += panel.wint[j] * un[p][j];
      b += panel.wint[j] * un[p][j] * un[p][j];
    }
    iu[p] = a * hp / 2.0;
    iu2[p] = b * hp / 2.0;
  }
  std::vector<double> sufu(K + 1, 0.0), sufu2(K + 1, 0.0);
  for (int p = K - 1; p >= 0; --p) {
    sufu[p] = sufu[p + 1] + iu[p];
    sufu2[p] = sufu2[p + 1] + iu2[p];
  }
  const double tail_u = -ai_tail(x_max, 1);   // int_{xmax}^inf u
  const double tail_u2 = ai_tail(x_max, 2);   // int_{xmax}^inf u^2

  std::vector<double> gx, gw;
  gauss_legendre_unit(16, gx, gw);
  auto partial = [&](int p, double x, bool square) {
    // int_x^{panel p right edge} of u or u^2
    double b = x_min + (p + 1) * hp;
    double acc = 0;
    for (size_t i = 0; i < gx.size(); ++i) {
      double s = x + 0.5 * (b - x) * (gx[i] + 1.0);
      double t = 2.0 * (s - (x_min + p * hp)) / hp - 1.0;
      double uv = panel.interp(un[p], t);
      acc += 0.5 * (b - x) * gw[i] * (square ? uv * uv : uv);
    }
    return acc;
  };

  PainleveTable t;
  t.x_min = x_min;
  t.x_max = x_max;
  t.tol = tol;
  const int m = static_cast<int>(std::lround(range / 0.02)) + 1;
  const double hg = range / (m - 1);
  t.grid.resize(m);
  t.u.resize(m);
  t.u_prime.resize(m);
  t.v.resize(m);
  t.E.resize(m);
  for (int k = 0; k < m; ++k) {
    double x = x_max - k * hg;
    if (k == m - 1) x = x_min;
    t.grid[k] = x;
    int p = std::clamp(static_cast<int>((x - x_min) / hp), 0, K - 1);
    double tc = 2.0 * (x - (x_min + p * hp)) / hp - 1.0;
    t.u[k] = panel.interp(un[p], tc);
    t.u_prime[k] = panel.interp(upn[p], tc);
    double int_u = partial(p, x, false) + sufu[p + 1] + tail_u;
    double int_u2 = partial(p, x, true) + sufu2[p + 1] + tail_u2;
    t.E[k] = std::exp(int_u);
    t.v[k] = -int_u2;
  }
  finalize_log_f0(t);
  return t;
}

double f0_painleve(double x, const PainleveTable& table) {
  return std::exp(table.log_f0_at(x));
}

// ---------------------------------------------------------------- dopri5

namespace {

struct Vec2 {
  cd a, b;
};
inline Vec2 operator+(Vec2 x, Vec2 y) { return {x.a + y.a, x.b + y.b}; }
inline Vec2 operator*(double s, Vec2 x) { return {s * x.a, s * x.b}; }

template <class Rhs>
Vec2 dopri5(const Rhs& rhs, double t0, double t1, Vec2 y, double rtol, double atol) {
  if (t0 == t1) return y;
  const double dir = (t1 > t0) ? 1.0 : -1.0;
  double h = dir * std::min(0.1, std::abs(t1 - t0));
  double t = t0;
  const int kMaxSteps = 2000000;
  for (int step = 0; step < kMaxSteps; ++step) {
    if ((t - t1) * dir >= 0.0) return y;
    if ((t + h - t1) * dir > 0.0) h = t1 - t;
    Vec2 k1 = rhs(t, y);
    Vec2 k2 = rhs(t + h / 5, y + (h / 5) * k1);
    Vec2 k3 = rhs(t + 3 * h / 10, y + (3 * h / 40) * k1 + (9 * h / 40) * k2);
    Vec2 k4 = rhs(t + 4 * h / 5, y + (44 * h / 45) * k1 + (-56 * h / 15) * k2 + (32 * h / 9) * k3);
    Vec2 k5 = rhs(t + 8 * h / 9, y + (19372 * h / 6561) * k1 + (-25360 * h / 2187) * k2 +
                                     (64448 * h / 6561) * k3 + (-212 * h / 729) * k4);
    Vec2 k6 = rhs(t + h, y + (9017 * h / 3168) * k1 + (-355 * h / 33) * k2 +
                             (46732 * h / 5247) * k3 + (49 * h / 176) * k4 +
                             (-5103 * h / 18656) * k5);
    Vec2 y5 = y + (35 * h / 384) * k1 + (500 * h / 1113) * k3 + (125 * h / 192) * k4 +
              (-2187 * h / 6784) * k5 + (11 * h / 84) * k6;
    Vec2 k7 = rhs(t + h, y5);
    Vec2 y4 = y + (5179 * h / 57600) * k1 + (7571 * h / 16695) * k3 + (393 * h / 640) * k4 +
              (-92097 * h / 339200) * k5 + (187 * h / 2100) * k6 + (h / 40) * k7;
    double e1 = std::abs(y5.a - y4.a) / (atol + rtol * std::max(std::abs(y.a), std::abs(y5.a)));
    double e2 = std::abs(y5.b - y4.b) / (atol + rtol * std::max(std::abs(y.b), std::abs(y5.b)));
    double err = std::max(e1, e2);
    if (err <= 1.0 || std::abs(h) < 1e-14) {
      t += h;
      y = y5;
    }
    double f = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
    h *= std::clamp(f, 0.2, 5.0);
  }
  throw NotConverged("dopri5: step budget exhausted");
}

// fastest Lax mode has log-magnitude alpha(w) = w^3/3 - x w
double alpha_fn(double w, double x) { return w * w * w / 3.0 - x * w; }

double min_alpha_on_path(double wt, double x) {
  double lo = std::min(0.0, wt), hi = std::max(0.0, wt);
  double m = std::min(alpha_fn(0.0, x), alpha_fn(wt, x));
  if (x > 0) {
    double r = std::sqrt(x);
    if (r > lo && r < hi) m = std::min(m, alpha_fn(r, x));
    if (-r > lo && -r < hi) m = std::min(m, alpha_fn(-r, x));
  }
  return m;
}

struct LaxRhsW {
  double u, up, x;
  Vec2 eval(cd w, Vec2 y) const {
    return {u * u * y.a + (-w * u - up) * y.b,
            (-w * u + up) * y.a + (w * w - x - u * u) * y.b};
  }
};

}  // namespace

LaxState lax_propagate_x(double x_from, double x_to, cd w, LaxState state,
                         const PainleveTable& table) {
  if (x_from == x_to) return state;
  auto rhs = [&](double x, Vec2 y) -> Vec2 {
    double uv = table.u_at(x);
    return {uv * y.b, uv * y.a - w * y.b};
  };
  Vec2 y = dopri5(rhs, x_from, x_to, {state.f, state.g}, 1e-12, 1e-14);
  return {y.a, y.b};
}

namespace {

LaxState lax_direct(double x, cd w, const PainleveTable& table) {
  const double u = table.u_at(x), up = table.u_prime_at(x), Ex = table.E_at(x);
  LaxRhsW sys{u, up, x};
  auto rhs = [&](double s, Vec2 y) -> Vec2 {
    // straight segment from 0 to w parametrized by s in [0,1]
    Vec2 d = sys.eval(s * w, y);
    return {w * d.a, w * d.b};
  };
  Vec2 y = dopri5(rhs, 0.0, 1.0, {cd(Ex), cd(-Ex)}, 1e-12, 1e-14);
  return {y.a, y.b};
}

// w > 0 with a dominant growing mode: normalize a backward sweep from the
// recessive direction at W = w + 2.
LaxState lax_backward_normalized(double x, double w, const PainleveTable& table) {
  const double u = table.u_at(x), up = table.u_prime_at(x), Ex = table.E_at(x);
  const double W = w + 2.0;
  const double r = u / W - up / (W * W) + u * (x + u * u) / (W * W * W);
  LaxRhsW sys{u, up, x};
  auto rhs = [&](double s, Vec2 y) -> Vec2 { return sys.eval(cd(s), y); };
  Vec2 at_w = dopri5(rhs, W, w, {cd(1.0), cd(r)}, 1e-13, 1e-16);
  Vec2 at_0 = dopri5(rhs, w, 0.0, at_w, 1e-13, 1e-16);
  const cd c = Ex / at_0.a;
  return {c * at_w.a, c * at_w.b};
}

// w < 0, x near/above w^2 (the Gaussian transition regime): propagate the
// exponentially scaled pair (f, h), g = -e^{w^3/3 - xw} h, in x from data
// f = 1, h = 1 at large x, where phi/psi are evaluated through logs.
LaxState lax_erf_route(double x, double w, const PainleveTable& table) {
  const double x0 = std::max({w * w + 6.0 * std::sqrt(2.0 * std::abs(w)), x + 6.0, 12.0});
  auto log_mu = [&](double s) {  // log|u(s)|, u < 0
    return (s > table.x_max) ? special::airy_ai_log(s) : std::log(-table.u_at(s));
  };
  auto rhs = [&](double s, Vec2 y) -> Vec2 {
    const double lm = log_mu(s);
    const double ephi = std::exp(lm + w * w * w / 3.0 - s * w);
    const double epsi = std::exp(lm + s * w - w * w * w / 3.0);
    return {ephi * y.b, epsi * y.a};
  };
  Vec2 y = dopri5(rhs, x0, x, {cd(1.0), cd(1.0)}, 1e-12, 1e-14);
  const double a = alpha_fn(w, x);
  if (a > 700.0) throw InvalidParams("lax_propagate_w: g overflows in this regime");
  return {y.a, -std::exp(a) * y.b};
}

}  // namespace

LaxState lax_propagate_w(double x, cd w, const PainleveTable& table) {
  if (std::abs(w) < 1e-13) {
    const double Ex = table.E_at(x);
    return {cd(Ex), cd(-Ex)};
  }
  if (std::abs(w.imag()) < 1e-14) {
    const double wr = w.real();
    const double M = alpha_fn(wr, x) - min_alpha_on_path(wr, x);
    if (M <= 12.0) return lax_direct(x, cd(wr), table);
    if (wr > 0) return lax_backward_normalized(x, wr, table);
    return lax_erf_route(x, wr, table);
  }
  // complex w: sample the fast-mode magnitude along the segment
  double mn = 0.0, at_end = (w * w * w / 3.0 - x * w).real();
  for (int i = 1; i <= 32; ++i) {
    cd ws = (i / 32.0) * w;
    mn = std::min(mn, (ws * ws * ws / 3.0 - x * ws).real());
  }
  if (at_end - mn > 14.0)
    throw InvalidParams("lax_propagate_w: complex w in mode-amplifying region");
  return lax_direct(x, w, table);
}

// ---------------------------------------------------------------- algebra

namespace {

using detail::LaxExpr;

const LaxExpr& wdx_expr(int j) {
  static std::vector<LaxExpr> cache{LaxExpr::f_of()};
  while (static_cast<int>(cache.size()) <= j) cache.push_back(detail::apply_wdx(cache.back()));
  return cache[j];
}

}  // namespace

double wdx_pow(int j, double x, double w, const PainleveTable& table) {
  if (j < 0 || j > 5) throw InvalidParams("wdx_pow: 0 <= j <= 5");
  LaxState s = lax_propagate_w(x, cd(w), table);
  const double u = table.u_at(x), up = table.u_prime_at(x);
  const LaxExpr& e = wdx_expr(j);
  return e.cf.eval(u, up, x, w) * s.f.real() + e.cg.eval(u, up, x, w) * s.g.real();
}

double wdx_pow_w_deriv(int r, int j, double x, double w, const PainleveTable& table) {
  if (j < 0 || j > 5 || r < 0 || r > 5) throw InvalidParams("wdx_pow_w_deriv: orders in 0..5");
  LaxState s = lax_propagate_w(x, cd(w), table);
  const double u = table.u_at(x), up = table.u_prime_at(x);
  LaxExpr e = wdx_expr(j);
  for (int i = 0; i < r; ++i) e = detail::apply_dw(e);
  return e.cf.eval(u, up, x, w) * s.f.real() + e.cg.eval(u, up, x, w) * s.g.real();
}

WDerivStack lax_w_derivatives(int a_max, double x, double w, const PainleveTable& table) {
  if (a_max < 0 || a_max > 5) throw InvalidParams("lax_w_derivatives: a_max in 0..5");
  LaxState s = lax_propagate_w(x, cd(w), table);
  const double u = table.u_at(x), up = table.u_prime_at(x);
  WDerivStack out;
  LaxExpr ef = LaxExpr::f_of(), eg = LaxExpr::g_of();
  for (int a = 0; a <= a_max; ++a) {
    out.f.push_back(ef.cf.eval(u, up, x, w) * s.f.real() + ef.cg.eval(u, up, x, w) * s.g.real());
    out.g.push_back(eg.cf.eval(u, up, x, w) * s.f.real() + eg.cg.eval(u, up, x, w) * s.g.real());
    ef = detail::apply_dw(ef);
    eg = detail::apply_dw(eg);
  }
  return out;
}

F123 f123(double x, const PainleveTable& table) {
  const double F0 = f0_painleve(x, table);
  const double Ex = table.E_at(x);
  const double u = table.u_at(x), up = table.u_prime_at(x);
  const double q = x + 2.0 * u * u + 2.0 * up;
  F123 r;
  r.f1 = F0 * Ex;
  r.f2 = F0 * Ex * Ex * (1.0 + u * q);
  r.f3 = F0 * Ex * Ex * Ex * (1.0 + 2.0 * u * q + 0.5 * (u * u - up) * q * q);
  return r;
}

std::pair<double, double> ode_residuals(double x, double w, const PainleveTable& table) {
  const double u = table.u_at(x), up = table.u_prime_at(x);
  if (std::abs(w * u + up) <= 1e-6)
    throw SingularCoefficient("ode_residuals: |w u + u'| <= 1e-6");
  LaxState s = lax_propagate_w(x, cd(w), table);
  const double f = s.f.real(), g = s.g.real();
  const double fx = u * g;
  const double gx = u * f - w * g;
  const double fxx = up * g + u * gx;
  const double r1 = -fxx + (up / u - w) * fx + u * u * f;
  const double fw = u * u * f - (w * u + up) * g;
  // second w-derivative from the symbolic stack
  LaxExpr e = detail::apply_dw(detail::apply_dw(LaxExpr::f_of()));
  const double fww = e.cf.eval(u, up, x, w) * f + e.cg.eval(u, up, x, w) * g;
  const double r2 = -fww + (u / (w * u + up) + w * w - x) * fw +
                    (-u * u * u / (w * u + up) + std::pow(u, 4) + x * u * u - up * up) * f;
  return {r1, r2};
}

// ---------------------------------------------------------------- dump/load

void dump_table(const PainleveTable& t, std::ostream& os) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "# painleve-hm %.17g %.17g %zu %.17g\n", t.x_min, t.x_max,
                t.grid.size(), t.tol);
  os << buf;
  for (size_t i = 0; i < t.grid.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %.17g %.17g\n", t.grid[i], t.u[i],
                  t.u_prime[i], t.v[i], t.E[i]);
    os << buf;
  }
}

PainleveTable load_table(std::istream& is) {
  std::string head;
  std::getline(is, head);
  PainleveTable t;
  size_t m = 0;
  if (std::sscanf(head.c_str(), "# painleve-hm %lg %lg %zu %lg", &t.x_min, &t.x_max, &m, &t.tol) !=
      4)
    throw InvalidParams("load_table: bad header");
  t.grid.resize(m);
  t.u.resize(m);
  t.u_prime.resize(m);
  t.v.resize(m);
  t.E.resize(m);
  for (size_t i = 0; i < m; ++i) {
    std::string line;
    if (!std::getline(is, line)) throw InvalidParams("load_table: truncated");
    if (std::sscanf(line.c_str(), "%lg %lg %lg %lg %lg", &t.grid[i], &t.u[i], &t.u_prime[i],
                    &t.v[i], &t.E[i]) != 5)
      throw InvalidParams("load_table: bad row");
  }
  finalize_log_f0(t);
  return t;
}

}  // namespace prmt::painleve
