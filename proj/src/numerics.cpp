#include "pdmp/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <stdexcept>

namespace pdmp {

namespace {

// Gauss-Kronrod 7-15 nodes/weights (positive half; node 7 is the midpoint).
constexpr double kNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kWeightK[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss-7 weights attach to the odd-index Kronrod nodes and the midpoint.
constexpr double kWeightG[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelEstimate {
  double integral;
  double error;
};

PanelEstimate gk15(const Fn& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(mid);
  double k15 = kWeightK[7] * fc;
  double g7 = kWeightG[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kNodes[i];
    const double fsum = f(mid - dx) + f(mid + dx);
    k15 += kWeightK[i] * fsum;
    if (i % 2 == 1) g7 += kWeightG[i / 2] * fsum;
  }
  k15 *= half;
  g7 *= half;
  return {k15, std::abs(k15 - g7)};
}

}  // namespace

double integrate(const Fn& f, double a, double b, const Tolerance& tol) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw std::invalid_argument("integrate: endpoints must be finite");
  }
  if (a == b) return 0.0;
  if (b < a) return -integrate(f, b, a, tol);

  struct Seg {
    double a, b, integral, error;
    bool operator<(const Seg& o) const { return error < o.error; }
  };
  std::priority_queue<Seg> heap;
  double total = 0.0;
  double err_active = 0.0;
  auto push = [&](double lo, double hi) {
    const PanelEstimate e = gk15(f, lo, hi);
    if (!std::isfinite(e.integral)) {
      const double sign = std::isnan(e.integral)
                              ? std::numeric_limits<double>::quiet_NaN()
                              : (e.integral > 0 ? 1.0 : -1.0);
      throw NonFiniteIntegralError("non-finite integrand contribution", sign);
    }
    heap.push({lo, hi, e.integral, e.error});
    total += e.integral;
    err_active += e.error;
  };
  push(a, b);

  // global control, worst segment first: required for endpoint power
  // singularities, whose error and value shrink at the same rate
  int splits = 0;
  double err_frozen = 0.0;
  while (err_active + err_frozen > std::max(tol.abs, tol.rel * std::abs(total))) {
    if (heap.empty()) break;
    const Seg s = heap.top();
    heap.pop();
    err_active -= s.error;
    const double width_floor = 8.0 * std::numeric_limits<double>::epsilon() *
                               std::max({std::abs(s.a), std::abs(s.b), 1e-300});
    if (s.b - s.a <= width_floor) {
      err_frozen += s.error;  // cannot refine further at this scale
      continue;
    }
    if (++splits > tol.max_subdivisions) {
      throw IntegrationError("quadrature subdivision budget exhausted", total,
                             err_active + err_frozen + s.error);
    }
    total -= s.integral;
    const double mid = 0.5 * (s.a + s.b);
    push(s.a, mid);
    push(mid, s.b);
  }
  if (!std::isfinite(total)) {
    throw NonFiniteIntegralError("non-finite integral", total > 0 ? 1.0 : -1.0);
  }
  return total;
}

Improper integrate_to_infinity(const Fn& f, double a, const Tolerance& tol) {
  // Panels start at unit width regardless of a: integrands localized near the
  // left endpoint must be seen by the first panels' nodes.
  double lo = a;
  double width = 1.0;
  double total = 0.0;
  double prev_inc = std::numeric_limits<double>::infinity();
  int small_in_a_row = 0;
  int stubborn_in_a_row = 0;
  int sign_flips = 0;
  double last_sign = 0.0;

  for (int k = 0; k < 80; ++k) {
    double hi = lo + width;
    double inc;
    try {
      inc = integrate(f, lo, hi, tol);
    } catch (const NonFiniteIntegralError& e) {
      if (e.sign >= 0.0) return {total, true};
      throw;
    }
    total += inc;
    if (!std::isfinite(total)) return {total, true};

    const double small = std::max(tol.abs, tol.rel * std::abs(total));
    if (std::abs(inc) <= small) {
      if (++small_in_a_row >= 2 && k >= 8) return {total, false};
      stubborn_in_a_row = 0;
    } else {
      small_in_a_row = 0;
      const double sign = inc > 0 ? 1.0 : -1.0;
      if (last_sign != 0.0 && sign != last_sign) ++sign_flips;
      last_sign = sign;
      // significant increments that also refuse geometric decay signal
      // divergence; a clean decay ratio keeps the doubling going
      if (std::abs(inc) >= 0.99 * std::abs(prev_inc)) {
        if (++stubborn_in_a_row >= 8) {
          if (sign_flips >= 2) {
            throw OscillatoryIntegralError("improper integral oscillates without settling");
          }
          return {total, true};
        }
      } else {
        stubborn_in_a_row = 0;
      }
    }
    prev_inc = inc;
    lo = hi;
    width *= 2.0;
  }
  if (sign_flips >= 2) {
    throw OscillatoryIntegralError("improper integral oscillates without settling");
  }
  // Tail still contributing after 64 doublings: report divergent rather than
  // ever returning a silently truncated finite value.
  return {total, true};
}

double invert_monotone(const Fn& g, double target, double lo, double hi,
                       const Tolerance& tol) {
  double flo = g(lo) - target;
  if (flo > tol.abs) throw NoRootError("target below g(lo)");
  if (std::abs(flo) <= tol.abs && flo >= 0.0) return lo;

  double fhi;
  if (std::isinf(hi)) {
    double width = std::max(1.0, std::abs(lo));
    hi = lo + width;
    fhi = g(hi) - target;
    int doublings = 0;
    while (fhi < 0.0) {
      if (++doublings > 1100 || !std::isfinite(hi)) {
        throw NoRootError("bracket expansion failed: target above sup g");
      }
      width *= 2.0;
      hi = lo + width;
      fhi = g(hi) - target;
    }
  } else {
    fhi = g(hi) - target;
    if (fhi < -tol.abs) throw NoRootError("target above g(hi)");
  }
  if (std::abs(fhi) <= tol.abs) return hi;

  // Brent's method on g - target.
  double a = lo, b = hi, fa = flo, fb = fhi;
  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int iter = 0; iter < 200; ++iter) {
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 =
        2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 1e-300;
    const double xm = 0.5 * (c - b);
    if (std::abs(fb) <= tol.abs || std::abs(xm) <= tol1 || fb == 0.0) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      const double s = fb / fa;
      double p, q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
    fb = g(b) - target;
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
  }
  return b;
}

CumulativeIntegral::CumulativeIntegral(Fn f, double head, bool anchored, double x_lo,
                                       double x_hi)
    : f_(std::move(f)), head0_(anchored ? 0.0 : head) {
  nodes_.push_back(x_lo);
  for (double x = x_lo; x < x_hi;) {
    x = std::min(x * 2.0, x_hi);
    nodes_.push_back(x);
  }
  prefix_.resize(nodes_.size());
  prefix_[0] = head0_;
  const Tolerance panel_tol{1e-14, 1e-13, 4000};
  for (std::size_t k = 1; k < nodes_.size(); ++k) {
    prefix_[k] = prefix_[k - 1] + integrate(f_, nodes_[k - 1], nodes_[k], panel_tol);
  }
}

std::size_t CumulativeIntegral::panel_of(double x) const {
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
  if (it == nodes_.begin()) return 0;
  return static_cast<std::size_t>(it - nodes_.begin()) - 1;
}

double CumulativeIntegral::primitive(double x) const {
  const Tolerance part_tol{1e-13, 1e-12, 8000};
  if (x <= 0.0) return 0.0;  // only meaningful when the head is finite
  if (x < nodes_.front()) return head0_ - integrate(f_, x, nodes_.front(), part_tol);
  if (x > nodes_.back()) return prefix_.back() + integrate(f_, nodes_.back(), x, part_tol);
  const std::size_t k = std::min(panel_of(x), nodes_.size() - 2);
  return prefix_[k] + integrate(f_, nodes_[k], x, part_tol);
}

double CumulativeIntegral::between(double x, double y) const {
  if (y < x) return -between(y, x);
  if (x == y) return 0.0;
  const Tolerance part_tol{1e-13, 1e-12, 8000};
  if (x >= nodes_.front() && y <= nodes_.back() && panel_of(x) == panel_of(y)) {
    return integrate(f_, x, y, part_tol);
  }
  return primitive(y) - primitive(x);
}

double CumulativeIntegral::inverse(double target) const {
  const Tolerance root_tol{1e-12, 1e-12, 8000};
  if (target <= prefix_.front()) {
    if (head0_ == 0.0 && target <= 0.0 && target >= -1e-300) return nodes_.front();
    const double lo = head0_ == 0.0 ? nodes_.front() * 1e-30 : 0.0;
    return invert_monotone([this](double z) { return primitive(z); }, target, lo,
                           nodes_.front(), root_tol);
  }
  if (target >= prefix_.back()) {
    return invert_monotone([this](double z) { return primitive(z); }, target,
                           nodes_.back(), std::numeric_limits<double>::infinity(),
                           root_tol);
  }
  auto it = std::upper_bound(prefix_.begin(), prefix_.end(), target);
  const std::size_t k = static_cast<std::size_t>(it - prefix_.begin()) - 1;
  const Tolerance part_tol{1e-13, 1e-12, 8000};
  return invert_monotone(
      [this, k, part_tol](double z) {
        return prefix_[k] + integrate(f_, nodes_[k], z, part_tol);
      },
      target, nodes_[k], nodes_[k + 1], root_tol);
}

double pairwise_sum(const double* v, std::size_t n) {
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()); }

}  // namespace pdmp
