#pragma once

// Exact polynomial calculus for expressions c_f(u,u',x,w) f + c_g(u,u',x,w) g
// where (f,g) solves the Painleve II Lax pair. D_x closes through
// u'' = 2u^3 + xu; D_w through the w-equation of the pair.

#include <array>
#include <cmath>
#include <map>

namespace prmt::painleve::detail {

using Mono = std::array<int, 4>;  // exponents of (u, u', x, w)

struct Poly4 {
  std::map<Mono, double> t;

  static Poly4 constant(double c) {
    Poly4 p;
    if (c != 0.0) p.t[{0, 0, 0, 0}] = c;
    return p;
  }
  static Poly4 var(int which, int pow = 1, double c = 1.0) {
    Poly4 p;
    Mono m{0, 0, 0, 0};
    m[which] = pow;
    p.t[m] = c;
    return p;
  }
  void add_term(const Mono& m, double c) {
    if (c == 0.0) return;
    auto [it, fresh] = t.emplace(m, c);
    if (!fresh && (it->second += c) == 0.0) t.erase(it);
  }
  Poly4 operator+(const Poly4& o) const {
    Poly4 r = *this;
    for (const auto& [m, c] : o.t) r.add_term(m, c);
    return r;
  }
  Poly4 operator-(const Poly4& o) const {
    Poly4 r = *this;
    for (const auto& [m, c] : o.t) r.add_term(m, -c);
    return r;
  }
  Poly4 operator*(const Poly4& o) const {
    Poly4 r;
    for (const auto& [m1, c1] : t)
      for (const auto& [m2, c2] : o.t)
        r.add_term({m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2], m1[3] + m2[3]}, c1 * c2);
    return r;
  }
  Poly4 scaled(double s) const {
    Poly4 r;
    for (const auto& [m, c] : t) r.add_term(m, s * c);
    return r;
  }
  double eval(double u, double up, double x, double w) const {
    double acc = 0.0;
    for (const auto& [m, c] : t)
      acc += c * std::pow(u, m[0]) * std::pow(up, m[1]) * std::pow(x, m[2]) * std::pow(w, m[3]);
    return acc;
  }
};

// d/dx with u -> u', u' -> 2u^3 + xu, x -> 1.
inline Poly4 dx(const Poly4& p) {
  Poly4 r;
  for (const auto& [m, c] : p.t) {
    if (m[0] > 0)
      r.add_term({m[0] - 1, m[1] + 1, m[2], m[3]}, c * m[0]);
    if (m[1] > 0) {
      r.add_term({m[0] + 3, m[1] - 1, m[2], m[3]}, 2.0 * c * m[1]);
      r.add_term({m[0] + 1, m[1] - 1, m[2] + 1, m[3]}, c * m[1]);
    }
    if (m[2] > 0) r.add_term({m[0], m[1], m[2] - 1, m[3]}, c * m[2]);
  }
  return r;
}

// plain partial d/dw of the coefficient polynomial
inline Poly4 dw_coeff(const Poly4& p) {
  Poly4 r;
  for (const auto& [m, c] : p.t)
    if (m[3] > 0) r.add_term({m[0], m[1], m[2], m[3] - 1}, c * m[3]);
  return r;
}

struct LaxExpr {
  Poly4 cf, cg;

  static LaxExpr f_of() { return {Poly4::constant(1.0), Poly4::constant(0.0)}; }
  static LaxExpr g_of() { return {Poly4::constant(0.0), Poly4::constant(1.0)}; }
};

// (w + D_x) applied through f' = u g, g' = u f - w g.
inline LaxExpr apply_wdx(const LaxExpr& e) {
  const Poly4 u = Poly4::var(0), w = Poly4::var(3);
  LaxExpr r;
  r.cf = w * e.cf + dx(e.cf) + u * e.cg;
  r.cg = u * e.cf + dx(e.cg);
  return r;
}

// D_w through df/dw = u^2 f - (wu + u') g, dg/dw = (-wu + u') f + (w^2 - x - u^2) g.
inline LaxExpr apply_dw(const LaxExpr& e) {
  const Poly4 u = Poly4::var(0), up = Poly4::var(1), x = Poly4::var(2), w = Poly4::var(3);
  const Poly4 u2 = u * u;
  LaxExpr r;
  r.cf = dw_coeff(e.cf) + e.cf * u2 + e.cg * (up - w * u);
  r.cg = dw_coeff(e.cg) - e.cf * (w * u + up) + e.cg * (w * w - x - u2);
  return r;
}

}  // namespace prmt::painleve::detail
