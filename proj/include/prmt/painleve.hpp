#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

namespace prmt::painleve {

/// Gridded Hastings-McLeod data: u'' = 2u^3 + xu with u ~ -Ai at +infinity.
/// grid is stored descending (x_max first). v(x) = int_inf^x u^2 ds <= 0,
/// E(x) = exp{int_x^inf u ds}. Evaluation uses quintic local interpolation;
/// x > x_max falls back to the -Ai asymptotic regime.
struct PainleveTable {
  double x_min = 0, x_max = 0, tol = 0;
  std::vector<double> grid, u, u_prime, v, E;
  std::vector<double> log_f0;  // derived, not part of the dump format

  double step() const { return grid.size() > 1 ? grid[0] - grid[1] : 0.0; }
  double u_at(double x) const;
  double u_prime_at(double x) const;
  double v_at(double x) const;
  double E_at(double x) const;
  double log_f0_at(double x) const;
};

PainleveTable solve_hastings_mcleod(double x_min = -12.0, double x_max = 12.0,
                                    double tol = 1e-12);

/// F_0(x) = exp(-int_x^inf (s-x) u(s)^2 ds).
double f0_painleve(double x, const PainleveTable& table);

struct LaxState {
  std::complex<double> f, g;
};

/// Solves d/dw (f,g) = [[u^2, -wu-u'], [-wu+u', w^2-x-u^2]] (f,g) from
/// (E(x), -E(x)) at w=0. Real w is supported on the whole validated range
/// via mode-stabilized routes; complex w on the region where direct
/// propagation is stable.
LaxState lax_propagate_w(double x, std::complex<double> w, const PainleveTable& table);

/// Propagates d/dx (f,g) = [[0, u], [u, -w]] (f,g) from x_from to x_to.
LaxState lax_propagate_x(double x_from, double x_to, std::complex<double> w,
                         LaxState state, const PainleveTable& table);

/// (w + D_x)^j f(x,w) evaluated exactly as a polynomial in (f,g,u,u',x,w),
/// closing derivatives with u'' = 2u^3 + xu. 0 <= j <= 5.
double wdx_pow(int j, double x, double w, const PainleveTable& table);

struct WDerivStack {
  std::vector<double> f, g;  // d^a/dw^a for a = 0..a_max
};
WDerivStack lax_w_derivatives(int a_max, double x, double w, const PainleveTable& table);

/// Entry D_w^r { (w + D_x)^j f } at (x, w); the confluent-determinant kernel.
double wdx_pow_w_deriv(int r, int j, double x, double w, const PainleveTable& table);

struct F123 {
  double f1, f2, f3;
};
/// Closed forms F_1 = F0 E, F_2 = F0 E^2 {1+u(x+2u^2+2u')},
/// F_3 = F0 E^3 {1 + 2u(x+2u^2+2u') + (u^2-u')(x+2u^2+2u')^2/2}.
F123 f123(double x, const PainleveTable& table);

/// Residuals of the two second-order ODEs satisfied by f (x-equation and
/// w-equation), with all derivatives taken from the Lax structure.
/// Throws SingularCoefficient when |w u + u'| <= 1e-6.
std::pair<double, double> ode_residuals(double x, double w, const PainleveTable& table);

/// Plain-text dump: "# painleve-hm x_min x_max m tol" then rows "x u u' v E"
/// at 17 significant digits. Bit-exact round trip.
void dump_table(const PainleveTable& table, std::ostream& os);
PainleveTable load_table(std::istream& is);

}  // namespace prmt::painleve
