#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "prmt/errors.hpp"

namespace prmt::detail {

// Natural cubic spline on an ascending grid, with exact piecewise integrals
// of S(x) and x S(x).
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> x, std::vector<double> y)
      : x_(std::move(x)), y_(std::move(y)) {
    const size_t n = x_.size();
    if (n < 3 || y_.size() != n) throw InvalidParams("CubicSpline: need >= 3 points");
    m_.assign(n, 0.0);
    std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), d(n, 0.0);
    b[0] = 1.0;
    b[n - 1] = 1.0;
    for (size_t i = 1; i + 1 < n; ++i) {
      double h0 = x_[i] - x_[i - 1], h1 = x_[i + 1] - x_[i];
      a[i] = h0 / 6.0;
      b[i] = (h0 + h1) / 3.0;
      c[i] = h1 / 6.0;
      d[i] = (y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0;
    }
    for (size_t i = 1; i < n; ++i) {  // Thomas
      double w = a[i] / b[i - 1];
      b[i] -= w * c[i - 1];
      d[i] -= w * d[i - 1];
    }
    m_[n - 1] = d[n - 1] / b[n - 1];
    for (size_t i = n - 1; i-- > 0;) m_[i] = (d[i] - c[i] * m_[i + 1]) / b[i];
  }

  double operator()(double xq) const {
    size_t i = locate(xq);
    double h = x_[i + 1] - x_[i], t0 = x_[i + 1] - xq, t1 = xq - x_[i];
    return (m_[i] * t0 * t0 * t0 + m_[i + 1] * t1 * t1 * t1) / (6.0 * h) +
           (y_[i] / h - m_[i] * h / 6.0) * t0 + (y_[i + 1] / h - m_[i + 1] * h / 6.0) * t1;
  }

  // int_a^b S(x) dx (a <= b, clipped to the grid)
  double integrate(double a, double b) const { return integral_core(a, b, false); }
  // int_a^b x S(x) dx
  double integrate_x(double a, double b) const { return integral_core(a, b, true); }

 private:
  size_t locate(double xq) const {
    size_t i = std::upper_bound(x_.begin(), x_.end(), xq) - x_.begin();
    return std::clamp<size_t>(i == 0 ? 0 : i - 1, 0, x_.size() - 2);
  }

  double integral_core(double a, double b, bool with_x) const {
    a = std::max(a, x_.front());
    b = std::min(b, x_.back());
    if (b <= a) return 0.0;
    double acc = 0.0;
    for (size_t i = locate(a); i + 1 < x_.size() && x_[i] < b; ++i) {
      double lo = std::max(a, x_[i]), hi = std::min(b, x_[i + 1]);
      if (hi <= lo) continue;
      // 8-point Gauss-Legendre is exact for deg <= 15 >= cubic * linear
      static const double gx[4] = {0.1834346424956498, 0.5255324099163290,
                                   0.7966664774136267, 0.9602898564975363};
      static const double gw[4] = {0.3626837833783620, 0.3137066458778873,
                                   0.2223810344533745, 0.1012285362903763};
      double c = 0.5 * (lo + hi), r = 0.5 * (hi - lo);
      for (int q = 0; q < 4; ++q) {
        for (double s : {c - r * gx[q], c + r * gx[q]}) {
          double v = (*this)(s);
          acc += r * gw[q] * (with_x ? s * v : v);
        }
      }
    }
    return acc;
  }

  std::vector<double> x_, y_, m_;
};

}  // namespace prmt::detail
