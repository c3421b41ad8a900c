#include "pdmp/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "pdmp/kernel.hpp"

namespace pdmp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_scale_kernel(const Model& m) {
  if (!m.separable() || !(m.h0() > 0.0)) {
    throw UnsupportedKernelError(
        "scale function needs a separable kernel with h(0) > 0");
  }
  if (!m.gamma_zero_finite()) {
    throw Error("scale function needs Gamma integrable at 0 (Assumption 2)");
  }
}

// Exponents are combined before exponentiating: h and e^{Gamma} can overflow
// individually while their ratio stays tame.
Fn scale_integrand(const Model& m) {
  return [&m](double y) {
    return m.gamma(y) * std::exp(m.gamma_anti(y) - m.log_h(y));
  };
}

// Unnormalized speed integrand h/alpha * e^{-Gamma}.
Fn speed_integrand(const Model& m) {
  return [&m](double y) {
    return std::exp(m.log_h(y) - m.gamma_anti(y)) / m.alpha(y);
  };
}

bool speed_integrable_at_zero(const Model& m) {
  // h(0) > 0: integrability at 0 matches that of 1/alpha. h(0) = 0 only for
  // the linear kernel, where h(y)/alpha(y) ~ y^{1 - a}.
  return m.h0() > 0.0 ? m.i_zero_finite() : m.alpha_exponent_zero() < 2.0;
}

}  // namespace

const char* to_string(ZeroClass c) {
  switch (c) {
    case ZeroClass::regular: return "regular";
    case ZeroClass::exit: return "exit";
    case ZeroClass::entrance: return "entrance";
    case ZeroClass::natural: return "natural";
  }
  return "?";
}

const char* to_string(InfinityClass c) {
  return c == InfinityClass::accessible ? "accessible" : "inaccessible";
}

const char* to_string(Recurrence r) {
  switch (r) {
    case Recurrence::positive_recurrent: return "positive_recurrent";
    case Recurrence::null_recurrent: return "null_recurrent";
    case Recurrence::transient_absorbed_at_zero: return "transient_absorbed_at_zero";
    case Recurrence::transient_to_infinity: return "transient_to_infinity";
    case Recurrence::hits_infinity_finite_time_possible:
      return "hits_infinity_finite_time_possible";
    case Recurrence::unknown_no_scale: return "unknown (no scale function)";
  }
  return "?";
}

double scale_s(const Model& m, double x) {
  require_scale_kernel(m);
  if (x < 0.0) throw std::invalid_argument("scale_s: need x >= 0");
  if (x == 0.0) return 0.0;
  return integrate(scale_integrand(m), 0.0, x);
}

double scale_s_infinity(const Model& m) {
  require_scale_kernel(m);
  const Fn f = scale_integrand(m);
  const double body = integrate(f, 0.0, 1.0);
  const Improper tail = integrate_to_infinity(f, 1.0);
  if (tail.divergent) return kInf;
  return body + tail.value;
}

double exit_prob_up(const Model& m, double x, double b) {
  if (!(x >= 0.0 && b > x)) throw std::invalid_argument("exit_prob_up: need 0 <= x < b");
  require_scale_kernel(m);
  const double kappa = 1.0 / m.h0();
  return (kappa + scale_s(m, x)) / (kappa + scale_s(m, b));
}

double excursion_height_cdf(const Model& m, double b) {
  if (!(b > 0.0)) throw std::invalid_argument("excursion_height_cdf: need b > 0");
  require_scale_kernel(m);
  if (!m.i_zero_finite()) {
    throw ZeroNotReflectingError("excursion heights need 0 reflecting (I_0 < inf)");
  }
  const double kappa = 1.0 / m.h0();
  const double sb = scale_s(m, b);
  return sb / (kappa + sb);
}

SpeedDensity speed_density(const Model& m) {
  if (!m.separable()) {
    throw UnsupportedKernelError("speed density needs a separable kernel");
  }
  SpeedDensity sd;
  sd.mass = kInf;
  if (m.gamma_zero_finite() && speed_integrable_at_zero(m)) {
    const Fn f = speed_integrand(m);
    const double body = integrate(f, 0.0, 1.0);
    const Improper tail = integrate_to_infinity(f, 1.0);
    if (!tail.divergent) sd.mass = body + tail.value;
  }
  sd.normalizable = std::isfinite(sd.mass);
  sd.C = sd.normalizable ? 1.0 / sd.mass : 1.0;
  const double c = sd.C;
  sd.density = [&m, c](double y) {
    return c * std::exp(m.log_h(y) - m.gamma_anti(y)) / m.alpha(y);
  };
  return sd;
}

BoundaryReport classify(const Model& m) {
  BoundaryReport rep;
  const double probe = 1.0;
  const bool reachable_from_inside = disaster_prob(m, probe) > 0.0;
  const bool leaves_zero = m.i_zero_finite();
  rep.zero_class = reachable_from_inside
                       ? (leaves_zero ? ZeroClass::regular : ZeroClass::exit)
                       : (leaves_zero ? ZeroClass::entrance : ZeroClass::natural);
  rep.infinity_class =
      m.i_infinity_finite() ? InfinityClass::accessible : InfinityClass::inaccessible;
  if (m.i_infinity_finite() && !m.gamma_infinity_finite()) {
    rep.notes.push_back(
        "Gamma(inf) = inf: a jump interrupts the flow before blow-up almost surely; "
        "+inf can only be approached through an accumulation of jumps");
  }

  rep.s_infinity = kNaN;
  rep.pi_mass = kNaN;
  if (m.separable()) {
    rep.pi_mass = speed_density(m).mass;
  }

  if (!m.separable() || !(m.h0() > 0.0)) {
    rep.recurrence = Recurrence::unknown_no_scale;
    rep.notes.push_back("no scale function: kernel not separable with h(0) > 0");
    return rep;
  }
  if (m.gamma_infinity_finite() || !m.gamma_zero_finite()) {
    rep.recurrence = Recurrence::unknown_no_scale;
    rep.notes.push_back("scale-based classification needs Assumptions 1 and 2");
    return rep;
  }

  rep.s_infinity = scale_s_infinity(m);
  if (std::isinf(rep.s_infinity)) {
    if (m.i_zero_finite()) {
      rep.recurrence = std::isfinite(rep.pi_mass) ? Recurrence::positive_recurrent
                                                  : Recurrence::null_recurrent;
      if (rep.recurrence == Recurrence::positive_recurrent &&
          m.alpha_exponent_zero() > 0.0) {
        rep.notes.push_back(
            "alpha(0) = 0: the return-time boundary value u(0+) = 1/(C h(0)) is used "
            "although the drift degenerates at 0");
      }
    } else {
      rep.recurrence = Recurrence::transient_absorbed_at_zero;
    }
  } else {
    rep.recurrence = m.i_infinity_finite()
                         ? Recurrence::hits_infinity_finite_time_possible
                         : Recurrence::transient_to_infinity;
  }
  return rep;
}

double expected_return_time(const Model& m, double x) {
  if (x < 0.0) throw std::invalid_argument("expected_return_time: need x >= 0");
  const BoundaryReport rep = classify(m);
  if (rep.recurrence != Recurrence::positive_recurrent) {
    throw NotPositiveRecurrentError(
        "expected return time needs a positive recurrent model");
  }
  const SpeedDensity sd = speed_density(m);
  const double u0 = 1.0 / (sd.C * m.h0());
  if (x == 0.0) return u0;

  // u(x) - u(0) = int_0^x [ gamma(y) K(y) - 1/alpha(y) ] dy with
  // K(y) = int_y^inf e^{-(Gamma(z)-Gamma(y))} h(z)/(h(y) alpha(z)) dz.
  // Every exponent is a difference, so the factors stay bounded even where
  // s(y) or h(y) overflow on their own.
  Fn outer = [&m](double y) {
    const double lh = m.log_h(y);
    Fn inner = [&m, y, lh](double z) {
      return std::exp(m.log_h(z) - lh - m.gamma_between(y, z)) / m.alpha(z);
    };
    const double k = integrate_to_infinity(inner, y).value_or_inf();
    return m.gamma(y) * k - 1.0 / m.alpha(y);
  };
  return u0 + integrate(outer, 0.0, x, Tolerance{1e-8, 1e-8, 50000});
}

EmbeddedInvariant embedded_invariant(const Model& m) {
  if (!m.separable()) {
    throw UnsupportedKernelError("embedded invariant law needs a separable kernel");
  }
  if (!m.gamma_zero_finite()) {
    throw Error("embedded invariant law needs Gamma integrable at 0");
  }
  if (m.h0() > 0.0) {
    const BoundaryReport rep = classify(m);
    if (rep.recurrence != Recurrence::positive_recurrent) {
      throw NotPositiveRecurrentError("embedded invariant law needs positive recurrence");
    }
  }

  // Everything is a ratio against pi(beta), so the speed normalization cancels:
  // use the unnormalized pi-tilde(z) beta(z) = gamma(z) h(z) e^{-Gamma(z)}.
  Fn pib = [&m](double z) {
    return m.gamma(z) * std::exp(m.log_h(z) - m.gamma_anti(z));
  };
  const double body = integrate(pib, 0.0, 1.0);
  const Improper tail = integrate_to_infinity(pib, 1.0);
  if (tail.divergent) throw Error("pi(beta) diverges: embedded invariant undefined");
  const double pib_total = body + tail.value;
  if (!(pib_total > 0.0) || !std::isfinite(pib_total)) {
    throw Error("pi(beta) is degenerate: embedded invariant undefined");
  }

  Fn atom_integrand = [&m, pib](double z) { return pib(z) * kernel_cdf(m, z, 0.0); };
  const double atom_num = integrate(atom_integrand, 0.0, 1.0) +
                          integrate_to_infinity(atom_integrand, 1.0).value_or_inf();

  EmbeddedInvariant inv;
  inv.atom_at_zero = atom_num / pib_total;
  inv.density = [&m, pib_total](double y) {
    Fn tail_integrand = [&m](double z) { return m.gamma(z) * std::exp(-m.gamma_anti(z)); };
    const double t = integrate_to_infinity(tail_integrand, y).value_or_inf();
    return m.h_prime(y) * t / pib_total;
  };
  return inv;
}

}  // namespace pdmp
