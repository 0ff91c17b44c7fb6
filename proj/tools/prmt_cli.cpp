// prmt: tabulation, identity verification, and simulation front end.

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "prmt/detail/spline.hpp"
#include "prmt/errors.hpp"
#include "prmt/fredholm.hpp"
#include "prmt/models.hpp"
#include "prmt/opuc.hpp"
#include "prmt/painleve.hpp"
#include "prmt/special_functions.hpp"

namespace {

using prmt::fredholm::Options;
using prmt::fredholm::SpikeVector;
using prmt::painleve::PainleveTable;

constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitConvergence = 3;
constexpr int kExitRouteDisagree = 4;
constexpr int kExitTolerance = 5;

std::string fmt(double v) {  // shortest round-trip, locale-free
  char buf[40];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

struct RunConfig {
  double quad_L = 16.0;
  int quad_n = 96;
  double painleve_xmin = -12.0, painleve_xmax = 12.0, painleve_tol = 1e-12;
  std::uint64_t sim_seed = 1;
  int sim_samples = 2000;
  int sim_threads = 1;

  void load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw prmt::InvalidParams("config: cannot open " + path);
    std::string line;
    while (std::getline(in, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
      auto eq = line.find('=');
      if (eq == std::string::npos) throw prmt::InvalidParams("config: missing '=' in: " + line);
      auto trim = [](std::string s) {
        size_t a = s.find_first_not_of(" \t\r\n"), b = s.find_last_not_of(" \t\r\n");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
      };
      std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
      if (key == "quad.n")
        quad_n = std::stoi(val);
      else if (key == "quad.L")
        quad_L = std::stod(val);
      else if (key == "painleve.xmin")
        painleve_xmin = std::stod(val);
      else if (key == "painleve.xmax")
        painleve_xmax = std::stod(val);
      else if (key == "painleve.tol")
        painleve_tol = std::stod(val);
      else if (key == "sim.seed")
        sim_seed = std::stoull(val);
      else if (key == "sim.samples")
        sim_samples = std::stoi(val);
      else if (key == "sim.threads")
        sim_threads = std::stoi(val);
      else
        throw prmt::InvalidParams("config: unknown key '" + key + "'");
    }
  }
};

const PainleveTable& shared_table(const RunConfig& cfg) {
  static std::optional<PainleveTable> table;
  if (!table)
    table = prmt::painleve::solve_hastings_mcleod(cfg.painleve_xmin, cfg.painleve_xmax,
                                                  cfg.painleve_tol);
  return *table;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

// reference CDF of F_k via the Painleve route, spline-tabulated
std::function<double(double)> reference_cdf(const std::string& dist,
                                            const std::vector<double>& ws,
                                            const RunConfig& cfg) {
  const PainleveTable& t = shared_table(cfg);
  const double lo = -12.0, hi = 9.0, step = 0.05;
  const int m = static_cast<int>(std::lround((hi - lo) / step)) + 1;
  std::vector<double> xs(m), F(m);
  for (int i = 0; i < m; ++i) {
    double x = lo + i * step;
    xs[i] = x;
    if (dist == "f0") {
      F[i] = prmt::painleve::f0_painleve(x, t);
    } else if (dist == "fk") {
      F[i] = prmt::fredholm::fk_determinant(x, SpikeVector::make(ws), t);
    } else {
      auto f = prmt::painleve::f123(x, t);
      F[i] = dist == "f1" ? f.f1 : dist == "f2" ? f.f2 : f.f3;
    }
  }
  auto spline = std::make_shared<prmt::detail::CubicSpline>(xs, F);
  return [spline, lo, hi](double x) {
    if (x <= lo) return 0.0;
    if (x >= hi) return 1.0;
    return std::clamp((*spline)(x), 0.0, 1.0);
  };
}

// ------------------------------------------------------------- tabulate

int cmd_tabulate(const std::string& dist, const std::string& wlist, double xmin, double xmax,
                 double step, const std::string& route, bool density, const std::string& out,
                 const RunConfig& cfg) {
  if (xmax < xmin || step <= 0) throw prmt::InvalidParams("tabulate: bad grid");
  std::vector<double> ws;
  if (dist == "fk") {
    if (wlist.empty()) throw prmt::InvalidParams("tabulate: --dist fk needs --w");
    ws = parse_list(wlist);
  }
  const bool wants_painleve = route == "painleve" || route == "both";
  const bool wants_fredholm = route == "fredholm" || route == "both";
  if ((dist == "f1" || dist == "f2" || dist == "f3") && wants_fredholm)
    throw prmt::InvalidParams(
        "tabulate: " + dist + " is an all-confluent case; only --route painleve applies");

  Options fopt{cfg.quad_L, cfg.quad_n};
  const int m = static_cast<int>(std::floor((xmax - xmin) / step + 1e-9)) + 1;
  std::vector<double> xs(m), val(m), alt(m);
  for (int i = 0; i < m; ++i) {
    double x = xmin + i * step;
    xs[i] = x;
    if (dist == "f0") {
      if (wants_painleve) val[i] = prmt::painleve::f0_painleve(x, shared_table(cfg));
      if (wants_fredholm) alt[i] = prmt::fredholm::f0_fredholm(x, fopt);
    } else if (dist == "fk") {
      SpikeVector sv = SpikeVector::make(ws);
      if (wants_painleve) val[i] = prmt::fredholm::fk_determinant(x, sv, shared_table(cfg));
      if (wants_fredholm) alt[i] = prmt::fredholm::fk_definition(x, sv, fopt);
    } else {
      auto f = prmt::painleve::f123(x, shared_table(cfg));
      val[i] = dist == "f1" ? f.f1 : dist == "f2" ? f.f2 : f.f3;
    }
    if (route == "fredholm") val[i] = alt[i];
  }

  std::ofstream ofs;
  std::ostream* os = &std::cout;
  if (!out.empty()) {
    ofs.open(out, std::ios::binary);
    if (!ofs) throw prmt::InvalidParams("tabulate: cannot open " + out);
    os = &ofs;
  }
  double maxdiff = 0;
  // 5-point derivative stencils (centered; one-sided at the edges)
  auto ddx = [&](int i) {
    static const double c0[5] = {-25, 48, -36, 16, -3};
    static const double c1[5] = {-3, -10, 18, -6, 1};
    static const double cc[5] = {1, -8, 0, 8, -1};
    const double* c;
    int s;
    if (i <= 1) {
      c = (i == 0) ? c0 : c1;
      s = 0;
    } else if (i >= m - 2) {
      c = (i == m - 1) ? c0 : c1;
      s = m - 1;  // mirrored
    } else {
      c = cc;
      s = i - 2;
    }
    double acc = 0;
    if (i >= m - 2 && m >= 5) {
      for (int j = 0; j < 5; ++j) acc -= c[j] * val[s - j];
    } else {
      for (int j = 0; j < 5; ++j) acc += c[j] * val[s + j];
    }
    return acc / (12.0 * step);
  };

  if (route == "both")
    *os << (density ? "x,F,dFdx,diff\n" : "x,value,diff\n");
  else
    *os << (density ? "x,F,dFdx\n" : "x,value\n");
  for (int i = 0; i < m; ++i) {
    *os << fmt(xs[i]) << ',' << fmt(val[i]);
    if (density) *os << ',' << fmt(ddx(i));
    if (route == "both") {
      double d = val[i] - alt[i];
      maxdiff = std::max(maxdiff, std::abs(d));
      *os << ',' << fmt(d);
    }
    *os << '\n';
  }
  if (route == "both" && maxdiff > 1e-6) {
    std::cerr << "route disagreement: max |diff| = " << fmt(maxdiff) << "\n";
    return kExitRouteDisagree;
  }
  return 0;
}

// ------------------------------------------------------------- moments

int cmd_moments(int k, const RunConfig& cfg) {
  auto mo = prmt::fredholm::moments(k, shared_table(cfg));
  std::cout << k << ',' << fmt(mo.mean) << ',' << fmt(mo.sd) << '\n';
  static const double lo_mean[4] = {-1.772, -0.495, 0.543, 1.445};
  static const double hi_mean[4] = {-1.771, -0.494, 0.544, 1.446};
  static const double lo_sd[4] = {0.90, 1.11, 1.18, 1.21};
  static const double hi_sd[4] = {0.91, 1.12, 1.19, 1.22};
  bool ok = mo.mean >= lo_mean[k] && mo.mean <= hi_mean[k] && mo.sd >= lo_sd[k] &&
            mo.sd < hi_sd[k];
  return ok ? 0 : kExitTolerance;
}

// ------------------------------------------------------------- verify

struct SuiteResult {
  bool pass;
  double max_err;
};

SuiteResult suite_thm11(int trials, std::uint64_t seed, const RunConfig& cfg) {
  const PainleveTable& t = shared_table(cfg);
  Options fopt{cfg.quad_L, cfg.quad_n};
  prmt::models::CounterRng rng(seed, 0);
  double max_err = 0;
  for (int k = 1; k <= 3; ++k) {
    for (int tr = 0; tr < trials; ++tr) {
      std::vector<double> ws(k);
      for (;;) {
        for (int i = 0; i < k; ++i) ws[i] = 2.0 * rng.uniform() - 1.0;
        bool sep = true;
        for (int i = 0; i < k && sep; ++i)
          for (int j = i + 1; j < k; ++j)
            if (std::abs(ws[i] - ws[j]) < 1e-3) sep = false;
        if (sep) break;
      }
      SpikeVector sv = SpikeVector::make(ws);
      for (double x : {-1.0, 0.0, 1.0}) {
        double a = prmt::fredholm::fk_definition(x, sv, fopt);
        double b = prmt::fredholm::fk_determinant(x, sv, t);
        max_err = std::max(max_err, std::abs(a - b));
      }
    }
  }
  return {max_err <= 1e-6, max_err};
}

SuiteResult suite_thm12(const RunConfig& cfg) {
  const PainleveTable& t = shared_table(cfg);
  Options fopt{cfg.quad_L, cfg.quad_n};
  double max_err = 0;
  for (double x : {-4.0, -2.0, 0.0, 2.0})
    for (double w : {-1.5, -0.5, 0.0, 0.5, 1.5}) {
      double a = prmt::fredholm::f_fredholm(x, w, fopt);
      double b = prmt::painleve::lax_propagate_w(x, w, t).f.real();
      max_err = std::max(max_err, std::abs(a - b));
    }
  return {max_err <= 1e-6, max_err};
}

SuiteResult suite_lemma(const RunConfig& cfg) {
  const PainleveTable& t = shared_table(cfg);
  Options fopt{cfg.quad_L, cfg.quad_n};
  bool pass = true;
  double max_rel_err = 0;
  auto check = [&](double err, double tol) {
    max_rel_err = std::max(max_rel_err, err / tol);
    if (err > tol) pass = false;
  };
  // reality under complex-capable propagation
  for (double x : {-2.0, 0.0, 2.0})
    for (double w : {-1.0, 0.5, 1.5}) {
      auto s = prmt::painleve::lax_propagate_w(x, std::complex<double>(w, 0.0), t);
      check(std::max(std::abs(s.f.imag()), std::abs(s.g.imag())), 1e-10);
    }
  // f(x, 0) = E(x) through the Fredholm route
  for (double x : {-2.0, 0.0, 2.0})
    check(std::abs(prmt::fredholm::f_fredholm(x, 0.0, fopt) - t.E_at(x)), 1e-7);
  // reflection identity at (-1, 0.7) and (0, 0.8)
  for (auto [x, w] : {std::pair{-1.0, 0.7}, std::pair{0.0, 0.8}}) {
    auto sp = prmt::painleve::lax_propagate_w(x, w, t);
    auto sm = prmt::painleve::lax_propagate_w(x, -w, t);
    double e = std::abs(sp.f.real() + sm.g.real() * std::exp(w * w * w / 3.0 - x * w));
    check(e, 1e-6);
  }
  // Lax residuals on the Fredholm-route pair, centered differences
  const double h = 1e-4;
  for (double x : {-2.0, 0.0, 2.0})
    for (double w : {-1.0, 0.5}) {
      double u = t.u_at(x);
      double f0 = prmt::fredholm::f_fredholm(x, w, fopt);
      double g0 = prmt::fredholm::g_fredholm(x, w, fopt);
      double fx = (prmt::fredholm::f_fredholm(x + h, w, fopt) -
                   prmt::fredholm::f_fredholm(x - h, w, fopt)) /
                  (2 * h);
      double gx = (prmt::fredholm::g_fredholm(x + h, w, fopt) -
                   prmt::fredholm::g_fredholm(x - h, w, fopt)) /
                  (2 * h);
      check(std::abs(fx - u * g0), 1e-4);
      check(std::abs(gx - (u * f0 - w * g0)), 1e-4);
    }
  // w -> +-infinity limits probed at |w| = 5, x = 2
  {
    auto sp = prmt::painleve::lax_propagate_w(2.0, 5.0, t);
    auto sm = prmt::painleve::lax_propagate_w(2.0, -5.0, t);
    check(std::abs(sp.f.real() - 1.0), 1e-2);
    check(std::abs(sm.f.real()), 1e-2);
    check(std::abs(sp.g.real()), 1e-2);
  }
  // Gaussian transition: f(w^2 + y sqrt(2|w|), w) -> Phi(y) at w = -4
  for (double y : {-1.0, 0.0, 1.0}) {
    double w = -4.0;
    double x = w * w + y * std::sqrt(2.0 * std::abs(w));
    double f = prmt::painleve::lax_propagate_w(x, w, t).f.real();
    double phi = 0.5 * std::erfc(-y / std::sqrt(2.0));
    check(std::abs(f - phi), 0.02);
  }
  return {pass, max_rel_err};
}

SuiteResult suite_opuc(const RunConfig&) {
  auto sym = prmt::opuc::LaurentSymbol::exp_tz_family(1.0);
  double max_err = 0;
  const std::complex<double> zin(0.3, 0.2), zout(1.5, 0.0);
  for (int n : {2, 5, 10}) {
    auto a = prmt::opuc::pi_star_operator(sym, n, zin, 60);
    auto b = prmt::opuc::pi_star_toeplitz(sym, n, zin);
    max_err = std::max(max_err, std::abs(a - b));
    auto c = prmt::opuc::pi_operator(sym, n, zout, 60);
    auto d = prmt::opuc::pi_toeplitz(sym, n, zout);
    max_err = std::max(max_err, std::abs(c - d));
  }
  return {max_err <= 1e-10, max_err};
}

SuiteResult suite_gcbo(const RunConfig&) {
  auto sym = prmt::opuc::LaurentSymbol::exp_tz_family(1.0);
  double max_err = 0;
  for (int n : {1, 4, 8}) {
    auto p = prmt::opuc::gcbo_check(sym, n, 60);
    max_err = std::max(max_err, std::abs(p.lhs - p.rhs));
  }
  return {max_err <= 1e-11, max_err};
}

SuiteResult suite_scaling(const RunConfig& cfg) {
  const PainleveTable& t = shared_table(cfg);
  bool pass = true;
  double max_final = 0;
  for (double w : {-0.5, 0.0, 0.5}) {
    double prev = 1e9;
    double err = 0;
    for (double tt : {50.0, 100.0, 200.0}) {
      auto p = prmt::opuc::scaling_probe(tt, 0.0, w, t);
      err = std::abs(p.lhs - p.f_ref);
      if (err >= prev) pass = false;
      prev = err;
    }
    max_final = std::max(max_final, err);
    if (err > 0.05) pass = false;
  }
  return {pass, max_final};
}

int cmd_verify(const std::string& suite, int trials, std::uint64_t seed, const RunConfig& cfg) {
  std::vector<std::pair<std::string, SuiteResult>> results;
  auto run = [&](const std::string& name) {
    if (name == "thm11") results.emplace_back(name, suite_thm11(trials, seed, cfg));
    if (name == "thm12") results.emplace_back(name, suite_thm12(cfg));
    if (name == "lemma") results.emplace_back(name, suite_lemma(cfg));
    if (name == "opuc") results.emplace_back(name, suite_opuc(cfg));
    if (name == "gcbo") results.emplace_back(name, suite_gcbo(cfg));
    if (name == "scaling") results.emplace_back(name, suite_scaling(cfg));
  };
  if (suite == "all")
    for (const char* s : {"thm11", "thm12", "lemma", "opuc", "gcbo", "scaling"}) run(s);
  else
    run(suite);
  if (results.empty()) throw prmt::InvalidParams("verify: unknown suite " + suite);
  bool all = true;
  for (auto& [name, r] : results) {
    std::cout << (r.pass ? "PASS " : "FAIL ") << name << ' ' << fmt(r.max_err) << '\n';
    all = all && r.pass;
  }
  return all ? 0 : kExitVerifyFail;
}

// ------------------------------------------------------------- simulate

void write_samples_csv(const std::string& path, const prmt::models::SimResult& res,
                       const std::vector<double>& raw) {
  if (path.empty()) return;
  std::ofstream ofs(path, std::ios::binary);
  if (!ofs) throw prmt::InvalidParams("simulate: cannot open " + path);
  ofs << "# seed=" << res.seed << " streams=" << res.streams << "\n";
  ofs << "index,raw,scaled\n";
  for (size_t i = 0; i < res.samples.size(); ++i)
    ofs << i << ',' << fmt(raw[i]) << ',' << fmt(res.samples[i]) << '\n';
}

int cmd_simulate_lpp(std::int64_t rows, std::int64_t cols, const std::string& spikes,
                     const std::string& bbp2w, int samples, std::uint64_t seed,
                     const std::string& compare, const std::string& wlist,
                     const std::string& out, int threads, const RunConfig& cfg) {
  prmt::models::LppConfig lc;
  lc.M = rows;
  lc.N = cols;
  lc.seed = seed;
  const double gamma = std::sqrt(static_cast<double>(rows) / static_cast<double>(cols));
  if (!spikes.empty()) lc.spike_means = parse_list(spikes);
  if (!bbp2w.empty()) {
    auto ws = parse_list(bbp2w);
    lc.spike_means = prmt::models::bbp2_spike_means(gamma, rows, ws);
  }

  double tol = 1e9;
  std::function<double(double)> scale;
  if (compare == "gk") {
    if (lc.spike_means.empty())
      throw prmt::InvalidParams("simulate: gk comparison needs supercritical --spikes");
    const double l1 = lc.spike_means[0];
    scale = [=](double L) { return prmt::models::scale_supercritical(L, rows, gamma, l1); };
    tol = 0.08;
  } else {
    scale = [=](double L) { return prmt::models::scale_null(L, rows, gamma); };
    if (compare == "f0") tol = 0.10;
    if (compare == "f1" || compare == "fk" || compare == "f2" || compare == "f3") tol = 0.12;
  }

  auto res = prmt::models::run_lpp_campaign(lc, samples, threads, scale);
  std::vector<double> raw(res.samples.size());
  for (size_t s = 0; s < raw.size(); ++s) {
    prmt::models::CounterRng rng(seed, s);
    raw[s] = prmt::models::lpp_sample(lc, rng);
  }
  write_samples_csv(out, res, raw);

  double ks = -1;
  if (compare == "gk") {
    int k = 0;
    for (double m : lc.spike_means)
      if (std::abs(m - lc.spike_means[0]) < 1e-12) ++k;
    std::vector<double> ref(res.samples.size());
    for (size_t s = 0; s < ref.size(); ++s) {
      prmt::models::CounterRng rng(seed + 1, s);
      ref[s] = prmt::models::gue_max_sample(k, rng);
    }
    ks = prmt::models::ks_two_sample(res.samples, ref);
  } else if (!compare.empty()) {
    auto cdf = reference_cdf(compare, wlist.empty() ? std::vector<double>{} : parse_list(wlist),
                             cfg);
    ks = prmt::models::ks_statistic(res.samples, cdf);
  }
  if (ks >= 0) {
    std::cout << "KS=" << fmt(ks) << " n=" << samples << '\n';
    if (ks > tol) return kExitTolerance;
  }
  return 0;
}

int cmd_simulate_tasep(int particles, double t_end, const std::string& rates, int m, int samples,
                       std::uint64_t seed, int probe, const std::string& out, bool holes) {
  std::vector<double> rell = rates.empty() ? std::vector<double>{} : parse_list(rates);
  std::vector<double> counts(samples);
  for (int s = 0; s < samples; ++s) {
    prmt::models::CounterRng rng(seed, static_cast<std::uint64_t>(s));
    auto pos = prmt::models::tasep_event_sim(particles, rell, t_end, rng);
    int c = prmt::models::count_right_of(pos, m);
    counts[s] = holes ? c + m : c;  // hole count H(m,t) = #(m,t) + m
  }
  if (!out.empty()) {
    std::ofstream ofs(out, std::ios::binary);
    if (!ofs) throw prmt::InvalidParams("simulate: cannot open " + out);
    ofs << "# seed=" << seed << " streams=" << samples << "\n";
    ofs << "index,raw,scaled\n";
    for (int s = 0; s < samples; ++s)
      ofs << s << ',' << fmt(counts[s]) << ',' << fmt(counts[s]) << '\n';
  }
  if (probe > 0) {
    // duality cross-check: P(#(m, t) >= probe) = P(L(m+probe, probe) <= t)
    prmt::models::LppConfig lc;
    lc.spike_means = rell;
    std::vector<double> ind(samples);
    for (int s = 0; s < samples; ++s) {
      prmt::models::CounterRng rng(seed + 1, static_cast<std::uint64_t>(s));
      ind[s] = prmt::models::tasep_count_via_duality(m, t_end, lc, rng, probe) ? 1.0 : 0.0;
    }
    std::vector<double> ev(samples);
    for (int s = 0; s < samples; ++s) ev[s] = counts[s] >= probe ? 1.0 : 0.0;
    double ks = prmt::models::ks_two_sample(ev, ind);
    std::cout << "KS=" << fmt(ks) << " n=" << samples << '\n';
    if (ks > 0.02) return kExitTolerance;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized Tracy-Widom distributions, OPUC identities, LPP/TASEP simulation"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path;
  if (const char* env = std::getenv("PRMT_CONFIG")) config_path = env;
  app.add_option("--config", config_path, "key = value config file");

  // tabulate
  auto* tab = app.add_subcommand("tabulate", "tabulate a distribution as CSV");
  std::string dist = "f0", wlist, route = "painleve", out;
  double xmin = -6, xmax = 4, step = 0.1;
  bool density = false;
  tab->add_option("--dist", dist)->check(CLI::IsMember({"f0", "f1", "f2", "f3", "fk"}));
  tab->add_option("--w", wlist, "comma list of spikes (fk)");
  tab->add_option("--xmin", xmin);
  tab->add_option("--xmax", xmax);
  tab->add_option("--step", step);
  tab->add_option("--route", route)->check(CLI::IsMember({"fredholm", "painleve", "both"}));
  tab->add_flag("--density", density, "emit dF/dx by 5-point differences");
  tab->add_option("--out", out);

  // moments
  auto* mom = app.add_subcommand("moments", "mean/sd of F_k");
  int mk = 0;
  mom->add_option("--k", mk)->check(CLI::Range(0, 3));

  // verify
  auto* ver = app.add_subcommand("verify", "identity verification suites");
  std::string suite = "all";
  int trials = 20;
  std::uint64_t vseed = 7;
  ver->add_option("--suite", suite)
      ->check(CLI::IsMember({"thm11", "thm12", "lemma", "opuc", "gcbo", "scaling", "all"}));
  ver->add_option("--trials", trials);
  ver->add_option("--seed", vseed);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Monte Carlo campaigns");
  sim->require_subcommand(1);
  auto* lpp = sim->add_subcommand("lpp", "last passage percolation");
  std::int64_t rows = 400, cols = 400;
  std::string spikes, bbp2w, compare, simout, simw;
  int samples = 0;
  std::uint64_t sseed = 0;
  int threads = 0;
  lpp->add_option("--rows", rows);
  lpp->add_option("--cols", cols);
  lpp->add_option("--spikes", spikes, "comma list of column means");
  lpp->add_option("--bbp2-w", bbp2w, "critical-window w list");
  lpp->add_option("--samples", samples);
  lpp->add_option("--seed", sseed);
  lpp->add_option("--threads", threads);
  lpp->add_option("--compare", compare)
      ->check(CLI::IsMember({"f0", "f1", "f2", "f3", "fk", "gk"}));
  lpp->add_option("--w", simw, "spikes for fk reference");
  lpp->add_option("--out", simout);

  auto* tas = sim->add_subcommand("tasep", "exclusion process");
  int particles = 32, tm = 0, probe = 0, tsamples = 0;
  double t_end = 6.0;
  std::string rates, tout;
  bool holes = false;
  std::uint64_t tseed = 0;
  tas->add_option("--particles", particles);
  tas->add_option("--t-end", t_end);
  tas->add_option("--rates", rates, "slow-start means l_1..l_r");
  tas->add_option("--m", tm, "site for #(m, t)");
  tas->add_option("--samples", tsamples);
  tas->add_option("--seed", tseed);
  tas->add_option("--duality-probe", probe, "M for the duality cross-check");
  tas->add_flag("--holes", holes, "report hole counts H(m,t)");
  tas->add_option("--out", tout);

  try {
    app.parse(argc, argv);
    if (!config_path.empty()) cfg.load_file(config_path);

    if (tab->parsed()) return cmd_tabulate(dist, wlist, xmin, xmax, step, route, density, out, cfg);
    if (mom->parsed()) return cmd_moments(mk, cfg);
    if (ver->parsed()) return cmd_verify(suite, trials, vseed, cfg);
    if (lpp->parsed())
      return cmd_simulate_lpp(rows, cols, spikes, bbp2w, samples ? samples : cfg.sim_samples,
                              sseed ? sseed : cfg.sim_seed, compare, simw, simout,
                              threads ? threads : cfg.sim_threads, cfg);
    if (tas->parsed())
      return cmd_simulate_tasep(particles, t_end, rates, tm,
                                tsamples ? tsamples : cfg.sim_samples,
                                tseed ? tseed : cfg.sim_seed, probe, tout, holes);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  } catch (const prmt::InvalidParams& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const prmt::NumericsError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConvergence;
  }
  return kExitUsage;
}
