#include "prmt/quadrature.hpp"

#include <cmath>
#include <mutex>
#include <unordered_map>

#include "prmt/errors.hpp"

namespace prmt {

void gauss_legendre_unit(int n, std::vector<double>& x, std::vector<double>& w) {
  if (n < 1) throw InvalidParams("gauss_legendre_unit: n >= 1 required");
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) {
        // one clean-up iteration
        p0 = 1.0;
        p1 = 0.0;
        for (int j = 0; j < n; ++j) {
          double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
        }
        pp = n * (z * p0 - p1) / (z * z - 1.0);
        z -= p0 / pp;
        break;
      }
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    double wi = 2.0 / ((1.0 - z * z) * pp * pp);
    w[i] = wi;
    w[n - 1 - i] = wi;
  }
  if (n % 2 == 1) x[n / 2] = 0.0;
}

namespace {
// unit rules are reused heavily (kernel builds, saddle quadratures)
const std::vector<double>* cached_unit(int n, bool want_weights, const std::vector<double>** wout) {
  static std::mutex mu;
  static std::unordered_map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) {
    std::vector<double> x, w;
    gauss_legendre_unit(n, x, w);
    it = cache.emplace(n, std::make_pair(std::move(x), std::move(w))).first;
  }
  if (wout) *wout = &it->second.second;
  (void)want_weights;
  return &it->second.first;
}
}  // namespace

Quadrature build_quadrature(double x0, double L, int n) {
  if (!(L > 0.0)) throw InvalidParams("build_quadrature: L > 0 required");
  if (n < 4) throw InvalidParams("build_quadrature: n >= 4 required");
  const std::vector<double>* wu = nullptr;
  const std::vector<double>* xu = cached_unit(n, true, &wu);
  Quadrature q;
  q.x0 = x0;
  q.length = L;
  q.nodes.resize(n);
  q.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    q.nodes[i] = x0 + 0.5 * L * ((*xu)[i] + 1.0);
    q.weights[i] = 0.5 * L * (*wu)[i];
  }
  return q;
}

}  // namespace prmt
