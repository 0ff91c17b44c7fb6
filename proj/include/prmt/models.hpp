#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "prmt/rng.hpp"

namespace prmt::models {

/// Last passage percolation with exponential site weights: column i has mean
/// spike_means[i] for i < r and mean 1 beyond.
struct LppConfig {
  std::int64_t N = 1;  // columns
  std::int64_t M = 1;  // rows, M >= N in the gamma^2 = M/N >= 1 convention
  std::vector<double> spike_means;
  std::uint64_t seed = 0;
};

/// One draw of L(N, M) by the rolling-row dynamic program.
double lpp_sample(const LppConfig& cfg, CounterRng& rng);

/// (L/M - (1+1/gamma)^2) * gamma/(1+gamma)^{4/3} * M^{2/3}.
double scale_null(double L, std::int64_t M, double gamma);

/// Critical-window means l_j = 1 + 1/gamma - (1+gamma)^{3/2} w_j/(gamma M^{1/3}).
std::vector<double> bbp2_spike_means(double gamma, std::int64_t M, std::span<const double> ws);

/// (L/M - (l1 + l1 gamma^{-2}/(l1-1))) * sqrt(M) / sqrt(l1^2 - l1^2 gamma^{-2}/(l1-1)^2).
double scale_supercritical(double L, std::int64_t M, double gamma, double l1);

/// Largest eigenvalue of a k x k GUE draw (diagonal N(0,1), off-diagonal
/// complex with unit total variance).
double gue_max_sample(int k, CounterRng& rng);

/// Indicator of {#(m, t) >= M_probe} via the duality #(m,t) >= M <=> L(m+M, M) <= t.
bool tasep_count_via_duality(int m, double t_time, const LppConfig& cfg, CounterRng& rng,
                             int M_probe);

/// Exact continuous-time TASEP with step initial data x_j(0) = 1-j; particle j
/// jumps at rate 1/rates[i] for its i-th jump while i <= r, rate 1 after.
/// Returns final positions.
std::vector<std::int64_t> tasep_event_sim(int num_particles,
                                          std::span<const double> rates_first_r_jumps,
                                          double t_end, CounterRng& rng);

int count_right_of(std::span<const std::int64_t> positions, std::int64_t m);

/// Scaled Monte Carlo sample set with its seed manifest.
struct SimResult {
  std::vector<double> samples;
  double center = 0, scale = 1;
  std::uint64_t seed = 0;
  int streams = 0;
};

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Parallel LPP campaign: sample s uses stream id s, so the result is
/// bit-identical for any worker count.
SimResult run_lpp_campaign(const LppConfig& cfg, int samples, int threads,
                           const std::function<double(double)>& scale_fn);

}  // namespace prmt::models
