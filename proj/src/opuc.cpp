#include "prmt/opuc.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "prmt/errors.hpp"
#include "prmt/special_functions.hpp"

namespace prmt::opuc {

namespace {
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
}  // namespace

LaurentSymbol LaurentSymbol::exp_tz_family(double t) {
  if (!(t > 0)) throw InvalidParams("exp_tz_family: t > 0");
  LaurentSymbol s;
  s.t = t;
  // bandwidth: I_K(2t) below 1e-18 of I_0(2t)
  int K = 8;
  std::vector<double> I;
  for (;;) {
    I = special::bessel_i_array(K, 2.0 * t);
    if (I[K] < 1e-18 * I[0] || K > 4000) break;
    K = K * 3 / 2 + 8;
  }
  while (K > 1 && I[K - 1] < 1e-18 * I[0]) --K;
  s.K = K;
  s.coeffs.resize(2 * K + 1);
  for (int k = -K; k <= K; ++k) s.coeffs[k + K] = I[std::abs(k)];
  s.Klog = 1;
  s.log_coeffs = {cd(t), cd(0), cd(t)};
  // psi bandwidth: |J_k(2t)| below 1e-19 absolute
  int Kp = K + 8;
  std::vector<double> J;
  for (;;) {
    J = special::bessel_j_array(Kp, 2.0 * t);
    if (std::abs(J[Kp]) < 1e-19 || Kp > 8000) break;
    Kp = Kp * 3 / 2 + 8;
  }
  s.Kpsi = Kp;
  s.psi.resize(2 * Kp + 1);
  s.psi_inv.resize(2 * Kp + 1);
  for (int k = -Kp; k <= Kp; ++k) {
    double v = J[std::abs(k)];
    if (k < 0 && (k % 2) != 0) v = -v;  // J_{-k} = (-1)^k J_k
    s.psi[k + Kp] = v;
    s.psi_inv[k + Kp] = (k % 2 == 0) ? v : -v;  // (psi^{-1})_k = (-1)^k psi_k
  }
  return s;
}

LaurentSymbol LaurentSymbol::from_coeffs(std::vector<cd> ck, int K) {
  if (static_cast<int>(ck.size()) != 2 * K + 1)
    throw InvalidParams("from_coeffs: size must be 2K+1");
  LaurentSymbol s;
  s.K = K;
  s.coeffs = std::move(ck);
  return s;
}

namespace {

// log-determinant with row scaling so huge symbol families stay in range
cd toeplitz_logdet_impl(const LaurentSymbol& sym, int n) {
  if (n < 0) throw InvalidParams("toeplitz_det: n >= 0");
  if (n == 0) return cd(0.0, 0.0);
  double scale = 0.0;
  for (int k = -sym.K; k <= sym.K; ++k) scale = std::max(scale, std::abs(sym.coeff(k)));
  if (scale == 0.0) throw InvalidParams("toeplitz_det: zero symbol");

  bool real_sym = true;
  for (int k = -sym.K; k <= sym.K && real_sym; ++k)
    if (sym.coeff(k).imag() != 0.0) real_sym = false;

  if (real_sym) {
    MatrixXd T(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) T(i, j) = sym.coeff(i - j).real() / scale;
    Eigen::PartialPivLU<MatrixXd> lu(T);
    double ld = 0.0, sg = lu.permutationP().determinant();
    for (int i = 0; i < n; ++i) {
      double d = lu.matrixLU()(i, i);
      if (d < 0) sg = -sg;
      ld += std::log(std::abs(d));
    }
    return cd(ld + n * std::log(scale), sg > 0 ? 0.0 : M_PI);
  }
  MatrixXcd T(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) T(i, j) = sym.coeff(i - j) / scale;
  Eigen::PartialPivLU<MatrixXcd> lu(T);
  double ld = 0.0, arg = 0.0;
  double psign = lu.permutationP().determinant();
  for (int i = 0; i < n; ++i) {
    cd d = lu.matrixLU()(i, i);
    ld += std::log(std::abs(d));
    arg += std::arg(d);
  }
  if (psign < 0) arg += M_PI;
  return cd(ld + n * std::log(scale), arg);
}

}  // namespace

cd toeplitz_logdet(const LaurentSymbol& sym, int n) { return toeplitz_logdet_impl(sym, n); }

cd toeplitz_det(const LaurentSymbol& sym, int n) {
  if (n == 0) return cd(1.0);
  cd ld = toeplitz_logdet_impl(sym, n);
  return std::exp(ld.real()) * cd(std::cos(ld.imag()), std::sin(ld.imag()));
}

LaurentSymbol symbol_times_linear(const LaurentSymbol& sym, cd z, RootVariant variant) {
  LaurentSymbol out;
  out.t = sym.t;
  out.K = sym.K + 1;
  out.coeffs.assign(2 * out.K + 1, cd(0));
  for (int k = -out.K; k <= out.K; ++k) {
    if (variant == RootVariant::outer_root)
      out.coeffs[k + out.K] = sym.coeff(k) - z * sym.coeff(k + 1);
    else
      out.coeffs[k + out.K] = z * sym.coeff(k) - sym.coeff(k - 1);
  }
  return out;
}

cd pi_star_toeplitz(const LaurentSymbol& sym, int n, cd z) {
  if (n == 0) return cd(1.0);
  LaurentSymbol shifted = symbol_times_linear(sym, z, RootVariant::outer_root);
  cd ld = toeplitz_logdet_impl(shifted, n) - toeplitz_logdet_impl(sym, n);
  return std::exp(ld);
}

cd pi_toeplitz(const LaurentSymbol& sym, int n, cd z) {
  if (n == 0) return cd(1.0);
  LaurentSymbol shifted = symbol_times_linear(sym, z, RootVariant::inner_root);
  cd ld = toeplitz_logdet_impl(shifted, n) - toeplitz_logdet_impl(sym, n);
  return std::exp(ld);
}

QrVectors qr_vectors(const LaurentSymbol& sym, cd z, int dim) {
  if (!sym.factored()) throw InvalidParams("qr_vectors: symbol lacks Wiener-Hopf data");
  if (std::abs(z) >= 0.999)
    throw SeriesNotConverged("qr_vectors: series form needs |z| < 0.999");
  QrVectors out;
  out.Q.resize(dim);
  out.R.assign(dim, cd(0));
  for (int j = 0; j < dim; ++j) out.Q[j] = sym.psi_inv_at(j + 1);
  double psimax = 0;
  for (double v : sym.psi) psimax = std::max(psimax, std::abs(v));
  cd zp = z;
  for (int m = 1;; ++m) {
    for (int k = 0; k < dim; ++k) out.R[k] += zp * sym.psi_at(m - k - 1);
    if (std::abs(zp) * psimax < 1e-17) break;
    zp *= z;
    if (m > 100000) throw SeriesNotConverged("qr_vectors: R series stalled");
  }
  return out;
}

UvVectors uv_vectors(const LaurentSymbol& sym, cd z, int dim) {
  if (!sym.factored()) throw InvalidParams("uv_vectors: symbol lacks Wiener-Hopf data");
  if (std::abs(z) <= 1.001)
    throw SeriesNotConverged("uv_vectors: series form needs |z| > 1.001");
  UvVectors out;
  out.U.assign(dim, cd(0));
  out.V.resize(dim);
  for (int k = 0; k < dim; ++k) out.V[k] = sym.psi_at(-k - 1);
  double pmax = 0;
  for (double v : sym.psi_inv) pmax = std::max(pmax, std::abs(v));
  cd zi = 1.0 / z, zp = zi;
  for (int m = 1;; ++m) {
    for (int j = 0; j < dim; ++j) out.U[j] += zp * sym.psi_inv_at(j + 1 - m);
    if (std::abs(zp) * pmax < 1e-17) break;
    zp *= zi;
    if (m > 100000) throw SeriesNotConverged("uv_vectors: U series stalled");
  }
  return out;
}

namespace {

// (I - P_n AB P_n) block on [n, dim) with the inner sum over m in [0, dim+extra)
MatrixXd ab_block(const LaurentSymbol& sym, int n, int dim, const OperatorOptions& opt) {
  const int D = dim - n;
  if (D <= 0) throw InvalidParams("operator block: dim > n required");
  const int m_hi = dim + opt.dim_inner_extra;
  MatrixXd A(D, m_hi), B(m_hi, D);
  for (int a = 0; a < D; ++a)
    for (int m = 0; m < m_hi; ++m) {
      double v = sym.psi_inv_at(n + a + m + 1) / opt.wh_const;
      if (opt.sign_flag && ((n + a + m) % 2 != 0)) v = -v;
      A(a, m) = v;
    }
  for (int m = 0; m < m_hi; ++m)
    for (int b = 0; b < D; ++b) {
      double v = sym.psi_at(-(m + n + b) - 1) * opt.wh_const;
      if (opt.sign_flag && ((m + n + b) % 2 != 0)) v = -v;
      B(m, b) = v;
    }
  return A * B;
}

cd bracket(const LaurentSymbol& sym, int n, int dim, const OperatorOptions& opt,
           const std::vector<cd>& Qfull, const std::vector<cd>& Rfull) {
  const int D = dim - n;
  MatrixXd AB = ab_block(sym, n, dim, opt);
  MatrixXd M = MatrixXd::Identity(D, D) - AB;
  VectorXd qre(D), qim(D);
  VectorXcd r(D);
  for (int i = 0; i < D; ++i) {
    cd qv = Qfull[n + i], rv = Rfull[n + i];
    if (opt.sign_flag && (n + i) % 2 != 0) {
      qv = -qv;
      rv = -rv;
    }
    qre[i] = qv.real();
    qim[i] = qv.imag();
    r[i] = rv;
  }
  Eigen::PartialPivLU<MatrixXd> lu(M);
  VectorXd yre = lu.solve(qre), yim = lu.solve(qim);
  cd ip = 0;
  for (int i = 0; i < D; ++i) ip += cd(yre[i], yim[i]) * r[i];  // real inner product
  return cd(1.0) - ip;
}

}  // namespace

cd pi_star_operator(const LaurentSymbol& sym, int n, cd z, int dim,
                    const OperatorOptions& opt) {
  if (!sym.factored()) throw InvalidParams("pi_star_operator: symbol lacks Wiener-Hopf data");
  QrVectors qr = qr_vectors(sym, z, dim);
  // wh_const scaling: Q -> Q/c, R -> c R
  for (auto& v : qr.Q) v /= opt.wh_const;
  for (auto& v : qr.R) v *= opt.wh_const;
  cd pre = 0;
  for (int k = 1; k <= sym.Klog; ++k) pre += sym.log_coeff(k) * std::pow(z, k);
  return std::exp(-pre) * bracket(sym, n, dim, opt, qr.Q, qr.R);
}

cd pi_operator(const LaurentSymbol& sym, int n, cd z, int dim, const OperatorOptions& opt) {
  if (!sym.factored()) throw InvalidParams("pi_operator: symbol lacks Wiener-Hopf data");
  UvVectors uv = uv_vectors(sym, z, dim);
  for (auto& v : uv.U) v /= opt.wh_const;
  for (auto& v : uv.V) v *= opt.wh_const;
  cd pre = 0;
  for (int k = 1; k <= sym.Klog; ++k) pre += sym.log_coeff(-k) * std::pow(z, -k);
  return std::pow(z, n) * std::exp(-pre) * bracket(sym, n, dim, opt, uv.U, uv.V);
}

GcboPair gcbo_check(const LaurentSymbol& sym, int n, int dim) {
  if (!sym.factored()) throw InvalidParams("gcbo_check: symbol lacks Wiener-Hopf data");
  cd logG = sym.log_coeff(0);
  cd logE = 0;
  for (int k = 1; k <= sym.Klog; ++k)
    logE += static_cast<double>(k) * sym.log_coeff(k) * sym.log_coeff(-k);
  cd ld = toeplitz_logdet_impl(sym, n);
  cd lhs = std::exp(ld - static_cast<double>(n) * logG - logE);

  const int D = dim - n;
  MatrixXd AB = ab_block(sym, n, dim, OperatorOptions{});
  MatrixXd M = MatrixXd::Identity(D, D) - AB;
  double rhs = M.partialPivLu().determinant();
  return {lhs, cd(rhs)};
}

ScalingProbe scaling_probe(double t, double x, double w,
                           const painleve::PainleveTable& table) {
  if (t < 10.0) throw InvalidParams("scaling_probe: t >= 10");
  const double t3 = std::cbrt(t);
  const int n = static_cast<int>(std::floor(2.0 * t + x * t3));
  const double z = -1.0 + w / t3;

  LaurentSymbol sym = LaurentSymbol::exp_tz_family(t);
  const int D = static_cast<int>(14.0 * t3) + 50;
  const int dim = n + D;

  // R by contour continuation: circle of radius rho (pole z inside picks up
  // no residue; outside adds z^{k+1} psi(z)); |psi| on the circle stays
  // within e^{t(rho - 1/rho)}, so rho - 1 ~ 3/t keeps the integrand tame.
  double rho = 1.0 + 3.0 / t;
  if (std::abs(std::abs(z) - rho) < 1.5 / t) rho = 1.0 + 6.0 / t;
  const int N = std::max(8192, static_cast<int>(64.0 * t));
  std::vector<cd> R(dim, cd(0));
  const double lrho = std::log(rho);
  for (int j = 0; j < N; ++j) {
    const double th = 2.0 * M_PI * j / N;
    const cd b = rho * cd(std::cos(th), std::sin(th));
    const cd base = (z / (b - z)) * std::exp(t * (b - 1.0 / b));
    cd bp = std::exp(cd((n + 1) * lrho, (n + 1) * th));  // b^{n+1}
    for (int k = n; k < dim; ++k) {
      R[k] += bp * base;
      bp *= b;
    }
  }
  for (int k = n; k < dim; ++k) R[k] /= static_cast<double>(N);
  if (std::abs(z) > rho) {
    // residue at b = z: z^{k+1} psi(z), via logs (z < 0 here)
    const double lz = std::log(std::abs(z));
    const double ex = t * (z - 1.0 / z);
    for (int k = n; k < dim; ++k) {
      double mag = (k + 1) * lz + ex;
      if (mag > 700.0) throw NotConverged("scaling_probe: residue overflow");
      double sgn = ((k + 1) % 2 == 0) ? 1.0 : -1.0;  // z < 0
      R[k] += sgn * std::exp(mag);
    }
  }
  std::vector<cd> Q(dim, cd(0));
  for (int j = n; j < dim; ++j) Q[j] = sym.psi_inv_at(j + 1);

  cd br = bracket(sym, n, dim, OperatorOptions{}, Q, R);
  painleve::LaxState s = painleve::lax_propagate_w(x, cd(w), table);
  return {br.real(), s.f.real()};
}

}  // namespace prmt::opuc
