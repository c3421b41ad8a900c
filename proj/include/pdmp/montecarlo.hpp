#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "pdmp/model.hpp"

namespace pdmp::mc {

/// Monte Carlo point estimate. Guard-terminated paths are counted in
/// `censored` and excluded from the mean, never silently dropped.
struct EstimateCI {
  double mean;
  double std_err;  // sample std / sqrt(n)
  std::size_t n;   // contributing paths
  std::size_t censored;
};

struct ExitAtZero {
  double x;
  double b;
};
struct ReturnTime {
  double x = 0.0;
  std::uint64_t max_jumps = 1000000;
  double horizon = std::numeric_limits<double>::infinity();  // auto: u(0)-scale
};
struct HeightExceeds {
  double b;
};
struct JumpTimeMean {
  double x;
};
using Functional = std::variant<ExitAtZero, ReturnTime, HeightExceeds, JumpTimeMean>;

/// Unbiased mean with standard error; deterministic given (seed, n) and
/// independent of the thread count (per-trajectory child streams plus
/// pairwise aggregation).
EstimateCI estimate(const Model& m, const Functional& f, std::size_t n,
                    std::uint64_t seed, int threads = 1);

struct BinCheck {
  double lo;
  double hi;
  double empirical;  // mean occupation per excursion / mean excursion length
  double analytic;   // integral of the speed density over the bin
  double z;
};

/// Occupation-time identity: the invariant mass of each bin equals the mean
/// occupation per excursion out of 0 divided by the mean excursion length.
std::vector<BinCheck> occupation_vs_speed(const Model& m,
                                          const std::vector<double>& edges,
                                          std::size_t n_excursions, std::uint64_t seed,
                                          int threads = 1);

struct AtomCheck {
  double empirical_atom;  // fraction of paths with no jump by t
  double analytic_atom;   // survival(x, t)
  std::size_t n;
};

AtomCheck atom_mass_check(const Model& m, double x, double t, std::size_t n,
                          std::uint64_t seed, int threads = 1);

struct VerificationCheck {
  std::string check;
  double target;
  double estimate;
  double std_err;
  double z;
  bool pass;
};

struct VerifyOptions {
  std::size_t n = 20000;
  std::uint64_t seed = 1;
  int threads = 1;
};

/// Battery pitting simulation against every analytic formula that applies to
/// the given model; checks pass inside a 3-sigma band.
std::vector<VerificationCheck> run_verification(const Model& m,
                                                const VerifyOptions& opt = {});

std::string verification_to_json(const std::vector<VerificationCheck>& checks);

/// Kolmogorov-Smirnov distance between the empirical law of `sorted` and a
/// CDF given by its values at the sample points (`cdf_at`) and its left
/// limits there (`cdf_left`, equal to cdf_at at continuity points).
double ks_statistic(const std::vector<double>& sorted, const std::vector<double>& cdf_at,
                    const std::vector<double>& cdf_left);

}  // namespace pdmp::mc
