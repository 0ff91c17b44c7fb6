#pragma once

#include <complex>
#include <vector>

#include "prmt/painleve.hpp"

namespace prmt::opuc {

using cd = std::complex<double>;

/// Bandlimited symbol on the unit circle: coeffs[k+K] = f_k for |k| <= K,
/// with Fourier data of log(phi) and the Wiener-Hopf ratio psi = phi+/phi-.
/// The e^{t(z+1/z)} family carries exact Bessel data: phi_k = I_k(2t),
/// psi_k = J_k(2t), (psi^{-1})_k = (-1)^k J_k(2t), (log phi)_{+-1} = t.
struct LaurentSymbol {
  int K = 0;
  std::vector<cd> coeffs;          // phi_k, k in [-K, K]
  std::vector<cd> log_coeffs;      // (log phi)_k, k in [-Klog, Klog]
  int Klog = 0;
  std::vector<double> psi;         // psi_k, k in [-Kpsi, Kpsi]; empty if unfactored
  std::vector<double> psi_inv;     // (psi^{-1})_k
  int Kpsi = 0;
  double t = 0;                    // family parameter when applicable

  static LaurentSymbol exp_tz_family(double t);
  /// Raw coefficients (Toeplitz-route only; no Wiener-Hopf data).
  static LaurentSymbol from_coeffs(std::vector<cd> ck, int K);

  cd coeff(int k) const {
    return (k < -K || k > K) ? cd(0) : coeffs[k + K];
  }
  cd log_coeff(int k) const {
    return (k < -Klog || k > Klog) ? cd(0) : log_coeffs[k + Klog];
  }
  double psi_at(int k) const { return (k < -Kpsi || k > Kpsi) ? 0.0 : psi[k + Kpsi]; }
  double psi_inv_at(int k) const {
    return (k < -Kpsi || k > Kpsi) ? 0.0 : psi_inv[k + Kpsi];
  }
  bool factored() const { return !psi.empty(); }
};

/// det(phi_{i-j})_{0<=i,j<n}; n = 0 gives 1.
cd toeplitz_det(const LaurentSymbol& sym, int n);
/// log of the same: real part log|D_n|, imaginary part arg D_n.
cd toeplitz_logdet(const LaurentSymbol& sym, int n);

enum class RootVariant { outer_root, inner_root };
/// outer_root: phi(w) -> (1 - z/w) phi(w); inner_root: phi(w) -> (z - w) phi(w).
LaurentSymbol symbol_times_linear(const LaurentSymbol& sym, cd z, RootVariant variant);

/// pi_n^*(z) = D_n(phi_z)/D_n(phi) and pi_n(z) = D_n(phi^z)/D_n(phi).
cd pi_star_toeplitz(const LaurentSymbol& sym, int n, cd z);
cd pi_toeplitz(const LaurentSymbol& sym, int n, cd z);

struct QrVectors {
  std::vector<cd> Q, R;
};
struct UvVectors {
  std::vector<cd> U, V;
};
/// Q(j) = (psi^{-1})_{j+1}; R(k) = sum_{m>=1} z^m psi_{m-k-1} (|z| < 0.999).
QrVectors qr_vectors(const LaurentSymbol& sym, cd z, int dim);
/// U(j) = sum_{m>=1} z^{-m} (psi^{-1})_{j+1-m} (|z| > 1.001); V(k) = psi_{-k-1}.
UvVectors uv_vectors(const LaurentSymbol& sym, cd z, int dim);

struct OperatorOptions {
  bool sign_flag = false;   // (-1)^{j+m} conjugation of A,B,Q,R
  double wh_const = 1.0;    // psi -> c psi, psi^{-1} -> psi^{-1}/c
  int dim_inner_extra = 40; // inner AB sum runs to dim + extra
};

/// Discrete-operator representation on the index block [n, dim).
cd pi_star_operator(const LaurentSymbol& sym, int n, cd z, int dim,
                    const OperatorOptions& opt = {});
cd pi_operator(const LaurentSymbol& sym, int n, cd z, int dim,
               const OperatorOptions& opt = {});

struct GcboPair {
  cd lhs, rhs;
};
/// lhs = D_n(phi)/(G^n E); rhs = det(1 - P_n A B P_n) truncated at dim.
GcboPair gcbo_check(const LaurentSymbol& sym, int n, int dim);

struct ScalingProbe {
  double lhs;    // e^{tz} pi_n^*(z) at n = [2t + x t^{1/3}], z = -1 + w/t^{1/3}
  double f_ref;  // f(x, w) from the Lax route
};
ScalingProbe scaling_probe(double t, double x, double w,
                           const painleve::PainleveTable& table);

}  // namespace prmt::opuc
