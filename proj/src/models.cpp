#include "prmt/models.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <queue>
#include <thread>

#include "prmt/errors.hpp"

namespace prmt::models {

double lpp_sample(const LppConfig& cfg, CounterRng& rng) {
  if (cfg.N < 1 || cfg.M < 1) throw InvalidParams("lpp_sample: N, M >= 1");
  for (double m : cfg.spike_means)
    if (!(m > 0)) throw InvalidParams("lpp_sample: means must be positive");
  const auto N = static_cast<size_t>(cfg.N);
  std::vector<double> row(N, 0.0);  // row[i] = T(i+1, j) as j advances
  for (std::int64_t j = 0; j < cfg.M; ++j) {
    double left = 0.0;
    for (size_t i = 0; i < N; ++i) {
      const double mean = i < cfg.spike_means.size() ? cfg.spike_means[i] : 1.0;
      const double x = rng.exponential(mean);
      left = std::max(left, row[i]) + x;
      row[i] = left;
    }
  }
  return row[N - 1];
}

double scale_null(double L, std::int64_t M, double gamma) {
  const double lam = L / static_cast<double>(M);
  const double c = (1.0 + 1.0 / gamma) * (1.0 + 1.0 / gamma);
  return (lam - c) * gamma / std::pow(1.0 + gamma, 4.0 / 3.0) *
         std::pow(static_cast<double>(M), 2.0 / 3.0);
}

std::vector<double> bbp2_spike_means(double gamma, std::int64_t M, std::span<const double> ws) {
  std::vector<double> out;
  out.reserve(ws.size());
  const double m13 = std::cbrt(static_cast<double>(M));
  for (double w : ws) {
    double l = 1.0 + 1.0 / gamma - std::pow(1.0 + gamma, 1.5) * w / (gamma * m13);
    if (!(l > 0)) throw InvalidParams("bbp2_spike_means: non-positive mean");
    out.push_back(l);
  }
  return out;
}

double scale_supercritical(double L, std::int64_t M, double gamma, double l1) {
  if (!(l1 > 1.0 + 1.0 / gamma)) throw InvalidParams("scale_supercritical: need l1 > 1 + 1/gamma");
  const double g2 = 1.0 / (gamma * gamma);
  const double center = l1 + l1 * g2 / (l1 - 1.0);
  const double var = l1 * l1 - l1 * l1 * g2 / ((l1 - 1.0) * (l1 - 1.0));
  if (!(var > 0)) throw InvalidParams("scale_supercritical: non-positive variance");
  const double lam = L / static_cast<double>(M);
  return (lam - center) * std::sqrt(static_cast<double>(M)) / std::sqrt(var);
}

double gue_max_sample(int k, CounterRng& rng) {
  if (k < 1 || k > 8) throw InvalidParams("gue_max_sample: 1 <= k <= 8");
  using cdd = std::complex<double>;
  if (k == 1) return rng.gaussian();
  Eigen::MatrixXcd H(k, k);
  const double s = std::sqrt(0.5);
  for (int i = 0; i < k; ++i) {
    H(i, i) = rng.gaussian();
    for (int j = i + 1; j < k; ++j) {
      cdd v(s * rng.gaussian(), s * rng.gaussian());
      H(i, j) = v;
      H(j, i) = std::conj(v);
    }
  }
  if (k == 2) {
    double a = H(0, 0).real(), d = H(1, 1).real();
    double ab2 = std::norm(H(0, 1));
    return 0.5 * (a + d) + std::sqrt(0.25 * (a - d) * (a - d) + ab2);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

bool tasep_count_via_duality(int m, double t_time, const LppConfig& cfg, CounterRng& rng,
                             int M_probe) {
  if (m + M_probe < 1 || M_probe < 1) throw InvalidParams("tasep_count_via_duality: bad probe");
  LppConfig c = cfg;
  c.N = m + M_probe;
  c.M = M_probe;
  return lpp_sample(c, rng) <= t_time;
}

std::vector<std::int64_t> tasep_event_sim(int num_particles,
                                          std::span<const double> rates_first_r_jumps,
                                          double t_end, CounterRng& rng) {
  if (num_particles < 1) throw InvalidParams("tasep_event_sim: num_particles >= 1");
  const int r = static_cast<int>(rates_first_r_jumps.size());
  std::vector<std::int64_t> pos(num_particles);
  std::vector<std::int64_t> jumps(num_particles, 0);
  for (int j = 0; j < num_particles; ++j) pos[j] = 1 - j;

  auto mean_of = [&](int j) {
    const std::int64_t i = jumps[j];  // next jump is the (i+1)-th
    return i < r ? rates_first_r_jumps[i] : 1.0;
  };
  auto blocked = [&](int j) { return j > 0 && pos[j - 1] - pos[j] == 1; };

  using Ev = std::pair<double, int>;
  std::priority_queue<Ev, std::vector<Ev>, std::greater<>> q;
  std::vector<double> armed(num_particles, -1.0);  // tentative time or -1
  for (int j = 0; j < num_particles; ++j)
    if (!blocked(j)) {
      armed[j] = rng.exponential(mean_of(j));
      q.emplace(armed[j], j);
    }
  while (!q.empty()) {
    auto [t, j] = q.top();
    q.pop();
    if (t != armed[j]) continue;  // stale entry
    if (t > t_end) break;
    armed[j] = -1.0;
    if (blocked(j)) continue;  // suppressed; re-armed when the blocker moves
    pos[j] += 1;
    jumps[j] += 1;
    if (!blocked(j)) {
      armed[j] = t + rng.exponential(mean_of(j));
      q.emplace(armed[j], j);
    }
    const int f = j + 1;  // follower may be freed; fresh clock by memorylessness
    if (f < num_particles && armed[f] < 0 && !blocked(f)) {
      armed[f] = t + rng.exponential(mean_of(f));
      q.emplace(armed[f], f);
    }
  }
  return pos;
}

int count_right_of(std::span<const std::int64_t> positions, std::int64_t m) {
  int c = 0;
  for (auto p : positions)
    if (p > m) ++c;
  return c;
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw InvalidParams("ks_statistic: need samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (size_t i = 0; i < samples.size(); ++i) {
    const double F = cdf(samples[i]);
    d = std::max(d, std::max((i + 1) / n - F, F - i / n));
  }
  return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw InvalidParams("ks_two_sample: need samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() -
                             static_cast<double>(j) / b.size()));
  }
  return d;
}

SimResult run_lpp_campaign(const LppConfig& cfg, int samples, int threads,
                           const std::function<double(double)>& scale_fn) {
  if (samples < 1) throw InvalidParams("run_lpp_campaign: samples >= 1");
  SimResult res;
  res.samples.assign(samples, 0.0);
  res.seed = cfg.seed;
  res.streams = samples;
  threads = std::max(1, threads);
  auto worker = [&](int lo, int hi) {
    for (int s = lo; s < hi; ++s) {
      CounterRng rng(cfg.seed, static_cast<std::uint64_t>(s));
      res.samples[s] = scale_fn(lpp_sample(cfg, rng));
    }
  };
  if (threads == 1) {
    worker(0, samples);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (samples + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      int lo = t * chunk, hi = std::min(samples, lo + chunk);
      if (lo < hi) pool.emplace_back(worker, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  return res;
}

}  // namespace prmt::models
