#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "pdmp/model.hpp"
#include "pdmp/rng.hpp"

namespace pdmp {

/// Composable stopping rules; at least one must be set. Deterministic
/// crossings (level, horizon, cap) are computed from travel times, never by
/// stepping, so the engine carries zero discretization error.
struct StopRule {
  bool hit_zero = false;
  std::optional<double> hit_level;
  std::optional<double> horizon;
  std::optional<std::uint64_t> max_jumps;
  std::optional<double> value_cap;

  bool any() const {
    return hit_zero || hit_level || horizon || max_jumps || value_cap;
  }
};

struct JumpEvent {
  double t;
  double pre;   // value immediately before the jump
  double post;  // value immediately after; exactly 0.0 on a disaster
};

struct Terminal {
  enum class Kind {
    HitZero,
    HitLevel,
    Horizon,
    JumpBudget,
    ReachedInfinity,
    ExplosionSuspected
  };
  Kind kind;
  double time;
  double value;              // state at termination
  double partial_sum = 0.0;  // running sum of e(Z_k); ExplosionSuspected diagnostic
};

const char* to_string(Terminal::Kind k);

struct Trajectory {
  double start;
  std::vector<JumpEvent> events;
  Terminal terminal;
};

/// Event-driven exact simulation. Jump times come from inverting the
/// integrated hazard along the flow, jump targets from the kernel's inverse
/// CDF with an exact atom at 0.
Trajectory simulate_path(const Model& m, double x, const StopRule& stop,
                         RandomStream& rng);

struct FirstExit {
  bool at_zero;
  double time;
};

/// Runs until the path either lands on 0 or the flow crosses b.
FirstExit first_exit(const Model& m, double x, double b, RandomStream& rng);

/// CSV with header t,x_pre,x_post,kind; jump rows then one terminal row whose
/// kind column carries the status string. Floats use 17 significant digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

/// Exact occupation time of [lo, hi) during one trajectory (flow segments are
/// clipped through travel times, so this is quadrature-free and exact).
double occupation_time(const Model& m, const Trajectory& traj, double lo, double hi);

}  // namespace pdmp
