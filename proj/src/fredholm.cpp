#include "prmt/fredholm.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "prmt/detail/lax_algebra.hpp"
#include "prmt/detail/spline.hpp"
#include "prmt/errors.hpp"
#include "prmt/special_functions.hpp"

namespace prmt::fredholm {

namespace {
using Eigen::MatrixXd;
using Eigen::VectorXd;

MatrixXd as_matrix(const DiscretizedOperator& op) {
  return Eigen::Map<const MatrixXd>(op.matrix.data(), op.n(), op.n());
}

double logdet_i_minus(const MatrixXd& K, double* sign = nullptr) {
  MatrixXd A = MatrixXd::Identity(K.rows(), K.cols()) - K;
  Eigen::PartialPivLU<MatrixXd> lu(A);
  double ld = 0.0, s = lu.permutationP().determinant();
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    double d = lu.matrixLU()(i, i);
    if (d < 0) s = -s;
    ld += std::log(std::abs(d));
  }
  if (sign) *sign = s;
  return ld;
}
}  // namespace

DiscretizedOperator build_airy_operator(double x0, double L, int n) {
  DiscretizedOperator op;
  op.quad = build_quadrature(x0, L, n);
  op.sqrt_w.resize(n);
  op.ai.resize(n);
  op.aip.resize(n);
  for (int i = 0; i < n; ++i) {
    op.sqrt_w[i] = std::sqrt(op.quad.weights[i]);
    auto p = special::airy_both(op.quad.nodes[i]);
    op.ai[i] = p.ai;
    op.aip[i] = p.aip;
  }
  op.matrix.assign(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    const double ni = op.quad.nodes[i];
    op.matrix[static_cast<size_t>(i) * n + i] =
        op.quad.weights[i] * (op.aip[i] * op.aip[i] - ni * op.ai[i] * op.ai[i]);
    for (int j = i + 1; j < n; ++j) {
      double k = (op.ai[i] * op.aip[j] - op.aip[i] * op.ai[j]) / (ni - op.quad.nodes[j]);
      double v = op.sqrt_w[i] * k * op.sqrt_w[j];
      op.matrix[static_cast<size_t>(i) * n + j] = v;
      op.matrix[static_cast<size_t>(j) * n + i] = v;
    }
  }
  if (x0 >= -10.0) {
    // spectral radius must stay below 1 (roundoff margin at the far left)
    VectorXd v = VectorXd::Ones(n).normalized();
    MatrixXd K = as_matrix(op);
    double lam = 0;
    for (int it = 0; it < 60; ++it) {
      v = (K * v).eval();
      lam = v.norm();
      v /= lam;
    }
    if (lam >= 1.0 + 1e-10)
      throw NotConverged("build_airy_operator: spectral radius >= 1");
  }
  return op;
}

double f0_fredholm(double x, const Options& opt) {
  if (x < -10.0) throw InvalidParams("f0_fredholm: validated range is x >= -10");
  DiscretizedOperator op = build_airy_operator(x, opt.L, opt.n);
  double d1 = std::exp(logdet_i_minus(as_matrix(op)));
  DiscretizedOperator op2 = build_airy_operator(x, opt.L, 2 * opt.n);
  double d2 = std::exp(logdet_i_minus(as_matrix(op2)));
  if (std::abs(d1 - d2) > 1e-8)
    throw NotConverged("f0_fredholm: quadrature refinement moved the determinant");
  return d1;
}

std::vector<double> resolvent_apply(const DiscretizedOperator& op,
                                    std::span<const double> samples) {
  const int n = op.n();
  if (static_cast<int>(samples.size()) != n)
    throw InvalidParams("resolvent_apply: sample size mismatch");
  MatrixXd A = MatrixXd::Identity(n, n) - as_matrix(op);
  VectorXd b(n);
  for (int i = 0; i < n; ++i) b[i] = op.sqrt_w[i] * samples[i];
  VectorXd y = A.partialPivLu().solve(b);
  double res = (A * y - b).lpNorm<Eigen::Infinity>();
  if (!(res < 1e-9 * std::max(1.0, b.lpNorm<Eigen::Infinity>())))
    throw SingularSystem("resolvent_apply: residual too large");
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = y[i] / op.sqrt_w[i];
  return out;
}

namespace {

// resolvent image of C_w plus the pieces f/g need
struct ResolvedCw {
  std::vector<double> c;  // C_w at nodes
  std::vector<double> y;  // (1-A)^{-1} C_w at nodes
};

ResolvedCw resolve_cw(const DiscretizedOperator& op, double w) {
  ResolvedCw r;
  const int n = op.n();
  r.c.resize(n);
  for (int i = 0; i < n; ++i) r.c[i] = special::cauchy_airy(op.quad.nodes[i], w);
  r.y = resolvent_apply(op, r.c);
  return r;
}

}  // namespace

double f_fredholm(double x, double w, const Options& opt) {
  if (x < -8.0 || std::abs(w) > 4.0)
    throw InvalidParams("f_fredholm: validated range is x >= -8, |w| <= 4");
  DiscretizedOperator op = build_airy_operator(x, opt.L, opt.n);
  ResolvedCw r = resolve_cw(op, w);
  double ip = 0;
  for (int i = 0; i < op.n(); ++i) ip += op.quad.weights[i] * r.y[i] * op.ai[i];
  return 1.0 - ip;
}

double g_fredholm(double x, double w, const Options& opt) {
  if (x < -8.0 || std::abs(w) > 4.0)
    throw InvalidParams("g_fredholm: validated range is x >= -8, |w| <= 4");
  DiscretizedOperator op = build_airy_operator(x, opt.L, opt.n);
  ResolvedCw r = resolve_cw(op, w);
  // Nystrom extension of the resolvent image to the boundary point x
  double v = special::cauchy_airy(x, w);
  for (int j = 0; j < op.n(); ++j)
    v += op.quad.weights[j] * special::airy_kernel(x, op.quad.nodes[j]) * r.y[j];
  return -v;
}

SpikeVector SpikeVector::make(std::vector<double> ws, double delta_confluent) {
  if (ws.empty()) throw InvalidParams("SpikeVector: k >= 1 required");
  SpikeVector sv;
  sv.ws = std::move(ws);
  std::vector<int> order(sv.ws.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return sv.ws[a] < sv.ws[b]; });
  for (int idx : order) {
    if (!sv.clusters.empty() &&
        std::abs(sv.ws[idx] - sv.ws[sv.clusters.back().back()]) <= delta_confluent)
      sv.clusters.back().push_back(idx);
    else
      sv.clusters.push_back({idx});
  }
  return sv;
}

bool SpikeVector::all_distinct() const {
  for (const auto& c : clusters)
    if (c.size() > 1) return false;
  return true;
}

double fk_definition(double x, const SpikeVector& spikes, const Options& opt) {
  const int k = static_cast<int>(spikes.ws.size());
  if (k > 6) throw InvalidParams("fk_definition: k <= 6");
  if (!spikes.all_distinct())
    throw ConfluentParameters("fk_definition: clustered spikes need fk_determinant");
  DiscretizedOperator op = build_airy_operator(x, opt.L, opt.n);
  const int n = op.n();

  // C_{w_j} at nodes, once per spike
  std::vector<std::vector<double>> cw(k, std::vector<double>(n));
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < n; ++i) cw[j][i] = special::cauchy_airy(op.quad.nodes[i], spikes.ws[j]);

  MatrixXd M = MatrixXd::Identity(k, k);
  for (int m = 1; m <= k; ++m) {
    std::vector<double> s(n, 0.0);
    for (int j = 0; j < m; ++j) {
      double pr = 1.0;
      for (int l = 0; l < m; ++l)
        if (l != j) pr /= (spikes.ws[l] - spikes.ws[j]);
      for (int i = 0; i < n; ++i) s[i] += pr * cw[j][i];
    }
    std::vector<double> y = resolvent_apply(op, s);
    for (int nn = 1; nn <= k; ++nn) {
      double ip = 0;
      std::span<const double> tws(spikes.ws.data(), nn - 1);
      for (int i = 0; i < n; ++i)
        ip += op.quad.weights[i] * y[i] * special::t_m(op.quad.nodes[i], tws);
      M(m - 1, nn - 1) -= ip;
    }
  }
  double f0 = std::exp(logdet_i_minus(as_matrix(op)));
  return f0 * M.determinant();
}

double fk_determinant(double x, const SpikeVector& spikes,
                      const painleve::PainleveTable& table) {
  const int k = static_cast<int>(spikes.ws.size());
  if (k > 6) throw InvalidParams("fk_determinant: k <= 6");
  using painleve::detail::LaxExpr;

  std::vector<LaxExpr> wdx(k);
  wdx[0] = LaxExpr::f_of();
  for (int j = 1; j < k; ++j) wdx[j] = painleve::detail::apply_wdx(wdx[j - 1]);

  // cluster representatives in ascending order (clusters built sorted)
  std::vector<double> rep;
  std::vector<int> mult;
  for (const auto& c : spikes.clusters) {
    double s = 0;
    for (int idx : c) s += spikes.ws[idx];
    rep.push_back(s / c.size());
    mult.push_back(static_cast<int>(c.size()));
  }

  MatrixXd M(k, k);
  int row = 0;
  const double u = table.u_at(x), up = table.u_prime_at(x);
  for (size_t c = 0; c < rep.size(); ++c) {
    painleve::LaxState s = painleve::lax_propagate_w(x, rep[c], table);
    double rfac = 1.0;
    std::vector<LaxExpr> cur = wdx;
    for (int r = 0; r < mult[c]; ++r) {
      if (r > 0) {
        rfac *= r;
        for (int j = 0; j < k; ++j) cur[j] = painleve::detail::apply_dw(cur[j]);
      }
      for (int j = 0; j < k; ++j)
        M(row, j) = (cur[j].cf.eval(u, up, x, rep[c]) * s.f.real() +
                     cur[j].cg.eval(u, up, x, rep[c]) * s.g.real()) /
                    rfac;
      ++row;
    }
  }

  double denom = 1.0;
  for (size_t a = 0; a < rep.size(); ++a)
    for (size_t b = a + 1; b < rep.size(); ++b)
      denom *= std::pow(rep[b] - rep[a], mult[a] * mult[b]);

  const double f0 = painleve::f0_painleve(x, table);
  return f0 * M.determinant() / denom;
}

Moments moments(int k, const painleve::PainleveTable& table) {
  if (k < 0 || k > 3) throw InvalidParams("moments: 0 <= k <= 3");
  const double lo = -12.0, hi = 9.0, step = 0.05;
  const int m = static_cast<int>(std::lround((hi - lo) / step)) + 1;
  std::vector<double> xs(m), F(m);
  for (int i = 0; i < m; ++i) {
    double x = lo + i * step;
    xs[i] = x;
    if (k == 0) {
      F[i] = painleve::f0_painleve(x, table);
    } else {
      auto f = painleve::f123(x, table);
      F[i] = (k == 1) ? f.f1 : (k == 2) ? f.f2 : f.f3;
    }
  }
  if (F.front() > 1e-7 || 1.0 - F.back() > 1e-7)
    throw NotConverged("moments: CDF tails not negligible on [-12, 9]");
  detail::CubicSpline S(xs, F);
  const double mean = (hi - 0.0) - S.integrate(0.0, hi) - S.integrate(lo, 0.0);
  const double ex2 =
      2.0 * (0.5 * hi * hi - S.integrate_x(0.0, hi)) + 2.0 * (-S.integrate_x(lo, 0.0));
  return {mean, std::sqrt(ex2 - mean * mean)};
}

}  // namespace prmt::fredholm
