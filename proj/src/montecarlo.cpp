#include "pdmp/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "json.hpp"
#include "pdmp/analysis.hpp"
#include "pdmp/embedded.hpp"
#include "pdmp/flow.hpp"
#include "pdmp/hazard.hpp"
#include "pdmp/kernel.hpp"
#include "pdmp/rng.hpp"
#include "pdmp/simulate.hpp"

namespace pdmp::mc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <typename Body>
void parallel_for(std::size_t n, int threads, const Body& body) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const std::size_t k = static_cast<std::size_t>(threads);
  std::vector<std::thread> pool;
  pool.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t lo = n * j / k;
    const std::size_t hi = n * (j + 1) / k;
    pool.emplace_back([lo, hi, &body] {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

struct Moments {
  double mean;
  double std_err;
  std::size_t n;
};

// Deterministic two-pass moments over the contributing entries, in index order.
Moments moments(const std::vector<double>& value, const std::vector<char>& ok) {
  std::vector<double> kept;
  kept.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (ok[i]) kept.push_back(value[i]);
  }
  const std::size_t k = kept.size();
  if (k == 0) throw Error("estimate: every path was censored");
  const double mean = pairwise_sum(kept) / static_cast<double>(k);
  if (k == 1) return {mean, 0.0, k};
  std::vector<double> dev(k);
  for (std::size_t i = 0; i < k; ++i) dev[i] = (kept[i] - mean) * (kept[i] - mean);
  const double var = pairwise_sum(dev) / static_cast<double>(k - 1);
  return {mean, std::sqrt(var / static_cast<double>(k)), k};
}

}  // namespace

EstimateCI estimate(const Model& m, const Functional& f, std::size_t n,
                    std::uint64_t seed, int threads) {
  if (n == 0) throw std::invalid_argument("estimate: need n > 0");
  std::vector<double> value(n, 0.0);
  std::vector<char> ok(n, 0);

  StopRule return_stop;
  if (const auto* rt = std::get_if<ReturnTime>(&f)) {
    return_stop.hit_zero = true;
    return_stop.max_jumps = rt->max_jumps;
    return_stop.value_cap = kXMax;
    if (std::isfinite(rt->horizon)) {
      return_stop.horizon = rt->horizon;
    } else {
      try {
        return_stop.horizon = 1e6 * expected_return_time(m, 0.0);
      } catch (const Error&) {
        // no u(0)-scale available; run unguarded in time
      }
    }
  }

  parallel_for(n, threads, [&](std::size_t i) {
    RandomStream rng(seed, i);
    std::visit(
        [&](const auto& fun) {
          using T = std::decay_t<decltype(fun)>;
          if constexpr (std::is_same_v<T, ExitAtZero>) {
            value[i] = first_exit(m, fun.x, fun.b, rng).at_zero ? 1.0 : 0.0;
            ok[i] = 1;
          } else if constexpr (std::is_same_v<T, HeightExceeds>) {
            value[i] = first_exit(m, 0.0, fun.b, rng).at_zero ? 0.0 : 1.0;
            ok[i] = 1;
          } else if constexpr (std::is_same_v<T, ReturnTime>) {
            const Trajectory traj = simulate_path(m, fun.x, return_stop, rng);
            if (traj.terminal.kind == Terminal::Kind::HitZero) {
              value[i] = traj.terminal.time;
              ok[i] = 1;
            }
          } else {
            static_assert(std::is_same_v<T, JumpTimeMean>);
            const JumpTimeSample s = sample_jump_time(m, fun.x, rng);
            if (s.is_at()) {
              value[i] = s.t;
              ok[i] = 1;
            }
          }
        },
        f);
  });

  const Moments mo = moments(value, ok);
  return {mo.mean, mo.std_err, mo.n, n - mo.n};
}

std::vector<BinCheck> occupation_vs_speed(const Model& m,
                                          const std::vector<double>& edges,
                                          std::size_t n_excursions, std::uint64_t seed,
                                          int threads) {
  if (edges.size() < 2 || !std::is_sorted(edges.begin(), edges.end())) {
    throw std::invalid_argument("occupation_vs_speed: need ascending bin edges");
  }
  const BoundaryReport rep = classify(m);
  if (rep.recurrence != Recurrence::positive_recurrent) {
    throw NotPositiveRecurrentError("occupation_vs_speed: model is not positive recurrent");
  }
  const SpeedDensity sd = speed_density(m);
  const std::size_t nbins = edges.size() - 1;

  StopRule stop;
  stop.hit_zero = true;
  stop.max_jumps = 1000000;
  stop.value_cap = kXMax;

  std::vector<std::vector<double>> occ(nbins, std::vector<double>(n_excursions, 0.0));
  std::vector<double> len(n_excursions, 0.0);
  std::vector<char> ok(n_excursions, 0);

  parallel_for(n_excursions, threads, [&](std::size_t i) {
    RandomStream rng(seed, i);
    const Trajectory traj = simulate_path(m, 0.0, stop, rng);
    if (traj.terminal.kind != Terminal::Kind::HitZero) return;
    ok[i] = 1;
    len[i] = traj.terminal.time;
    for (std::size_t b = 0; b < nbins; ++b) {
      occ[b][i] = occupation_time(m, traj, edges[b], edges[b + 1]);
    }
  });

  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < n_excursions; ++i) {
    if (ok[i]) kept.push_back(i);
  }
  if (kept.empty()) throw Error("occupation_vs_speed: every excursion was censored");
  const std::size_t k = kept.size();
  std::vector<double> lv(k);
  for (std::size_t i = 0; i < k; ++i) lv[i] = len[kept[i]];
  const double mean_len = pairwise_sum(lv) / static_cast<double>(k);

  std::vector<BinCheck> out(nbins);
  std::vector<double> ov(k), dev(k);
  for (std::size_t b = 0; b < nbins; ++b) {
    for (std::size_t i = 0; i < k; ++i) ov[i] = occ[b][kept[i]];
    const double mean_occ = pairwise_sum(ov) / static_cast<double>(k);
    const double ratio = mean_occ / mean_len;
    // delta-method variance of the ratio estimator
    for (std::size_t i = 0; i < k; ++i) {
      const double r = ov[i] - ratio * lv[i];
      dev[i] = r * r;
    }
    const double var =
        k > 1 ? pairwise_sum(dev) / static_cast<double>(k - 1) : 0.0;
    const double se = std::sqrt(var / static_cast<double>(k)) / mean_len;
    const double analytic = integrate(
        [&sd](double y) { return sd.density(y); }, edges[b], edges[b + 1]);
    double z = 0.0;
    if (se > 0.0) {
      z = (ratio - analytic) / se;
    } else if (std::abs(ratio - analytic) > 1e-12) {
      z = kInf;
    }
    out[b] = {edges[b], edges[b + 1], ratio, analytic, z};
  }
  return out;
}

AtomCheck atom_mass_check(const Model& m, double x, double t, std::size_t n,
                          std::uint64_t seed, int threads) {
  if (!(t > 0.0)) throw std::invalid_argument("atom_mass_check: need t > 0");
  if (m.i_infinity_finite() && t >= m.i_infinity(x)) {
    throw std::invalid_argument("atom_mass_check: need t < I_infinity(x)");
  }
  StopRule stop;
  stop.horizon = t;
  std::vector<double> value(n, 0.0);
  parallel_for(n, threads, [&](std::size_t i) {
    RandomStream rng(seed, i);
    const Trajectory traj = simulate_path(m, x, stop, rng);
    value[i] = traj.events.empty() ? 1.0 : 0.0;
  });
  const double frac = pairwise_sum(value) / static_cast<double>(n);
  return {frac, survival(m, x, t), n};
}

double ks_statistic(const std::vector<double>& sorted, const std::vector<double>& cdf_at,
                    const std::vector<double>& cdf_left) {
  const std::size_t n = sorted.size();
  if (n == 0 || cdf_at.size() != n || cdf_left.size() != n) {
    throw std::invalid_argument("ks_statistic: inconsistent inputs");
  }
  double d = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && sorted[j + 1] == sorted[i]) ++j;
    const double below = static_cast<double>(i) / static_cast<double>(n);
    const double above = static_cast<double>(j + 1) / static_cast<double>(n);
    d = std::max(d, std::abs(cdf_left[i] - below));
    d = std::max(d, std::abs(cdf_at[i] - above));
    i = j + 1;
  }
  return d;
}

namespace {

VerificationCheck band_check(const std::string& name, double target, double est,
                             double se) {
  const double z = se > 0.0 ? (est - target) / se
                            : (std::abs(est - target) < 1e-12 ? 0.0 : kInf);
  return {name, target, est, se, z, std::abs(z) <= 3.0};
}

}  // namespace

std::vector<VerificationCheck> run_verification(const Model& m, const VerifyOptions& opt) {
  std::vector<VerificationCheck> out;
  const ValidationReport val = m.validate();
  const BoundaryReport rep = classify(m);
  const double x0 = 1.0;
  const std::size_t n = std::max<std::size_t>(opt.n, 100);

  // jump-time mean (needs the first jump to happen almost surely)
  if (val.assumption1) {
    const double target = expected_jump_time(m, x0);
    if (std::isfinite(target)) {
      const EstimateCI ci = estimate(m, JumpTimeMean{x0}, n, opt.seed, opt.threads);
      out.push_back(band_check("jump_time_mean[x=1]", target, ci.mean, ci.std_err));
    }
  }

  // marginal atom at the median jump time
  {
    const double gx = m.gamma_anti(x0);
    const double slack = m.gamma_anti_infinity() - gx;
    const double q = std::min(std::log(2.0), slack / 2.0);
    if (q > 0.0) {
      const double t = m.travel_time(x0, m.gamma_anti_inverse(gx + q));
      const AtomCheck ac = atom_mass_check(m, x0, t, n, opt.seed + 1, opt.threads);
      const double p = ac.analytic_atom;
      const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
      out.push_back(band_check("atom_mass[x=1,t=median]", p, ac.empirical_atom, se));
    }
  }

  const bool scale_ok =
      m.separable() && m.h0() > 0.0 && val.assumption1 && val.assumption2;

  if (scale_ok) {
    const double p_down = 1.0 - exit_prob_up(m, 0.5, 2.0);
    const EstimateCI ci = estimate(m, ExitAtZero{0.5, 2.0}, n, opt.seed + 2, opt.threads);
    const double se = std::sqrt(p_down * (1.0 - p_down) / static_cast<double>(n));
    out.push_back(band_check("exit_at_zero[x=0.5,b=2]", p_down, ci.mean, se));
  }

  if (scale_ok && val.assumption1 && val.assumption2) {
    // embedded one-step law from x = 1 against the transition CDF
    std::vector<double> samples(n);
    parallel_for(n, opt.threads, [&](std::size_t i) {
      RandomStream rng(opt.seed + 3, i);
      samples[i] = sample_embedded_step(m, x0, rng).z;
    });
    std::sort(samples.begin(), samples.end());
    const std::vector<double> cdf = embedded_cdf_batch(m, x0, samples);
    const double atom = embedded_cdf(m, x0, 0.0);
    std::vector<double> cdf_left(cdf);
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (samples[i] == 0.0) cdf_left[i] = cdf[i] - atom;
    }
    const double d = ks_statistic(samples, cdf, cdf_left);
    const double bound = 1.63 / std::sqrt(static_cast<double>(n));
    out.push_back({"embedded_ks[x=1]", bound, d, bound / 1.63, d / (bound / 1.63),
                   d < bound});
  }

  if (rep.recurrence == Recurrence::positive_recurrent && scale_ok) {
    const double u0 = expected_return_time(m, 0.0);
    const std::size_t nret = std::max<std::size_t>(n / 2, 100);
    const EstimateCI ci = estimate(m, ReturnTime{}, nret, opt.seed + 4, opt.threads);
    out.push_back(band_check("return_time[x=0]", u0, ci.mean, ci.std_err));

    const double p_exc = 1.0 - excursion_height_cdf(m, 1.0);
    const EstimateCI hc = estimate(m, HeightExceeds{1.0}, n, opt.seed + 5, opt.threads);
    const double se = std::sqrt(p_exc * (1.0 - p_exc) / static_cast<double>(n));
    out.push_back(band_check("height_exceeds[b=1]", p_exc, hc.mean, se));

    std::vector<double> edges;
    for (int i = 0; i <= 10; ++i) edges.push_back(0.4 * i);
    const auto bins =
        occupation_vs_speed(m, edges, std::max<std::size_t>(n / 2, 100), opt.seed + 6,
                            opt.threads);
    double worst = 0.0;
    for (const BinCheck& b : bins) worst = std::max(worst, std::abs(b.z));
    out.push_back({"occupation_vs_speed[10 bins on [0,4]]", 0.0, worst, 1.0, worst,
                   worst < 4.0});
  }
  return out;
}

std::string verification_to_json(const std::vector<VerificationCheck>& checks) {
  nlohmann::json arr = nlohmann::json::array();
  for (const VerificationCheck& c : checks) {
    nlohmann::json j;
    j["check"] = c.check;
    j["target"] = c.target;
    j["estimate"] = c.estimate;
    j["stderr"] = c.std_err;
    j["z"] = c.z;
    j["pass"] = c.pass;
    arr.push_back(j);
  }
  return arr.dump(2);
}

}  // namespace pdmp::mc
