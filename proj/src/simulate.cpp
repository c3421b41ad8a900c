#include "pdmp/simulate.hpp"

#include <cmath>
#include <cstdio>
#include <deque>
#include <stdexcept>

#include "pdmp/flow.hpp"
#include "pdmp/hazard.hpp"
#include "pdmp/kernel.hpp"

namespace pdmp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
// Sum of e(Z_k) counts as converged when the last 100 terms add less than
// this relative amount; diagnostic only, tunable.
constexpr double kExplosionRelTol = 1e-6;
constexpr int kExplosionWindow = 100;
}  // namespace

const char* to_string(Terminal::Kind k) {
  switch (k) {
    case Terminal::Kind::HitZero: return "hit_zero";
    case Terminal::Kind::HitLevel: return "hit_level";
    case Terminal::Kind::Horizon: return "horizon";
    case Terminal::Kind::JumpBudget: return "jump_budget";
    case Terminal::Kind::ReachedInfinity: return "reached_infinity";
    case Terminal::Kind::ExplosionSuspected: return "explosion_suspected";
  }
  return "?";
}

Trajectory simulate_path(const Model& m, double x, const StopRule& stop,
                         RandomStream& rng) {
  if (!stop.any()) throw std::invalid_argument("simulate_path: empty stop rule");
  if (x < 0.0) throw std::invalid_argument("simulate_path: need x >= 0");

  Trajectory traj;
  traj.start = x;
  double t = 0.0;
  double cur = x;

  if (cur == 0.0 && !m.i_zero_finite()) {
    traj.terminal = {Terminal::Kind::HitZero, 0.0, 0.0, 0.0};
    return traj;
  }

  const bool track_explosion = m.i_infinity_finite() && stop.max_jumps.has_value();
  std::deque<double> sums;  // last partial sums of e(Z_k)
  double esum = 0.0;

  for (;;) {
    // crossing threshold in value space: lowest of level and cap above cur
    double crossing_value = kInf;
    bool crossing_is_level = false;
    if (stop.hit_level) {
      if (cur >= *stop.hit_level) {
        traj.terminal = {Terminal::Kind::HitLevel, t, *stop.hit_level, esum};
        return traj;
      }
      crossing_value = *stop.hit_level;
      crossing_is_level = true;
    }
    if (stop.value_cap && *stop.value_cap < crossing_value) {
      if (cur >= *stop.value_cap) {
        traj.terminal = {m.i_infinity_finite() ? Terminal::Kind::ReachedInfinity
                                               : Terminal::Kind::HitLevel,
                         t, *stop.value_cap, esum};
        return traj;
      }
      crossing_value = *stop.value_cap;
      crossing_is_level = false;
    }

    const JumpDraw draw = sample_jump(m, cur, rng);

    // candidate event before the horizon check: either the jump or a
    // deterministic crossing/blow-up, decided in value space (exact)
    double dt_cand;
    enum { kJump, kCross, kBlowup, kNone } cand;
    if (draw.sample.is_at() && draw.pre_jump < crossing_value) {
      dt_cand = draw.sample.t;
      cand = kJump;
    } else if (std::isfinite(crossing_value)) {
      dt_cand = m.travel_time(cur, crossing_value);
      cand = kCross;
    } else if (draw.sample.kind == JumpTimeSample::Kind::AtBlowup) {
      dt_cand = draw.sample.t;  // = I_infinity(cur)
      cand = kBlowup;
    } else {
      dt_cand = kInf;
      cand = kNone;
    }

    if (stop.horizon) {
      const double dt_hor = std::max(0.0, *stop.horizon - t);
      if (dt_hor <= dt_cand) {
        const FlowPoint end = flow_at(m, cur, dt_hor);
        if (end.at_infinity()) {
          traj.terminal = {Terminal::Kind::ReachedInfinity,
                           t + m.travel_time(cur, kXMax), kXMax, esum};
        } else {
          traj.terminal = {Terminal::Kind::Horizon, *stop.horizon, end.value, esum};
        }
        return traj;
      }
    }

    switch (cand) {
      case kNone:
        throw Error(
            "simulate_path: the path grows forever and no horizon, level or cap "
            "rule applies");
      case kBlowup:
        traj.terminal = {Terminal::Kind::ReachedInfinity, t + dt_cand, kInf, esum};
        return traj;
      case kCross:
        traj.terminal = {crossing_is_level || !m.i_infinity_finite()
                             ? Terminal::Kind::HitLevel
                             : Terminal::Kind::ReachedInfinity,
                         t + dt_cand, crossing_value, esum};
        return traj;
      case kJump:
        break;
    }

    t += dt_cand;
    const double post = sample_after_jump(m, draw.pre_jump, rng);
    traj.events.push_back({t, draw.pre_jump, post});
    cur = post;

    if (post == 0.0) {
      if (stop.hit_zero) {
        traj.terminal = {Terminal::Kind::HitZero, t, 0.0, esum};
        return traj;
      }
      if (!m.i_zero_finite()) {
        // stuck in the absorbing state: nothing further can happen
        if (stop.horizon) {
          traj.terminal = {Terminal::Kind::Horizon, *stop.horizon, 0.0, esum};
        } else {
          traj.terminal = {Terminal::Kind::HitZero, t, 0.0, esum};
        }
        return traj;
      }
    }

    if (track_explosion) {
      esum += expected_jump_time(m, cur);
      sums.push_back(esum);
      if (sums.size() > static_cast<std::size_t>(kExplosionWindow) + 1) sums.pop_front();
    }
    if (stop.max_jumps && traj.events.size() >= *stop.max_jumps) {
      const bool converged = track_explosion &&
                             sums.size() == static_cast<std::size_t>(kExplosionWindow) + 1 &&
                             esum - sums.front() <= kExplosionRelTol * esum;
      traj.terminal = {converged ? Terminal::Kind::ExplosionSuspected
                                 : Terminal::Kind::JumpBudget,
                       t, cur, esum};
      return traj;
    }
  }
}

FirstExit first_exit(const Model& m, double x, double b, RandomStream& rng) {
  if (!(x >= 0.0 && b > x)) throw std::invalid_argument("first_exit: need 0 <= x < b");
  StopRule stop;
  stop.hit_zero = true;
  stop.hit_level = b;
  const Trajectory traj = simulate_path(m, x, stop, rng);
  if (traj.terminal.kind == Terminal::Kind::HitZero) return {true, traj.terminal.time};
  if (traj.terminal.kind == Terminal::Kind::HitLevel) return {false, traj.terminal.time};
  throw Error("first_exit: path terminated by neither boundary");
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  char buf[256];
  out << "t,x_pre,x_post,kind\n";
  for (const JumpEvent& e : traj.events) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,jump\n", e.t, e.pre, e.post);
    out << buf;
  }
  const Terminal& fin = traj.terminal;
  std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,terminal:%s", fin.time, fin.value,
                fin.value, to_string(fin.kind));
  out << buf;
  if (fin.kind == Terminal::Kind::ExplosionSuspected) {
    std::snprintf(buf, sizeof(buf), ";partial_sum=%.17g", fin.partial_sum);
    out << buf;
  }
  out << "\n";
}

double occupation_time(const Model& m, const Trajectory& traj, double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  double total = 0.0;
  double from = traj.start;
  auto add_segment = [&](double p, double q) {
    const double a = std::max(p, lo);
    const double b = std::min(q, hi);
    if (b > a) total += m.travel_time(a, b);
  };
  for (const JumpEvent& e : traj.events) {
    add_segment(from, e.pre);
    from = e.post;
  }
  if (std::isfinite(traj.terminal.value) && traj.terminal.value > from) {
    add_segment(from, traj.terminal.value);
  } else if (std::isinf(traj.terminal.value)) {
    add_segment(from, hi);
  }
  return total;
}

}  // namespace pdmp
