#include "lebedev/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "lebedev/error.hpp"

namespace lebedev::quad {

namespace {

// Kronrod abscissae (descending, last is the centre) and weights; the
// 7-point Gauss rule uses the odd-indexed abscissae.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kRuleEvaluations = 15;
constexpr int kMaxWindows = 64;
// Tail probes taken after each semi-infinite window.
constexpr int kProbeEvaluations = 3;

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  double raw_error;
  double abs_value;
  int panel;
};

bool by_error(const Segment& lhs, const Segment& rhs) { return lhs.error < rhs.error; }

// Global adaptive integrator over a growing set of panels. Always bisects
// the segment with the largest error estimate.
class Adaptive {
 public:
  Adaptive(Integrand f, const QuadratureConfig& cfg) : f_(f), cfg_(cfg) {}

  // Starts a new initial panel; each one adds max_subdivisions to the budget.
  void add_panel(double a, double b, int panel) {
    ++panels_;
    add(a, b, panel);
  }

  void add(double a, double b, int panel) {
    segments_.push_back(apply_rule(a, b, panel));
    std::push_heap(segments_.begin(), segments_.end(), by_error);
  }

  bool refine() {
    for (;;) {
      const double target = cfg_.target(value());
      if (error() <= target) return true;
      // Only the rounding floor is left; bisection cannot lower it.
      if (raw_error() <= target) return false;
      if (bisections_ >= static_cast<long>(cfg_.max_subdivisions) * panels_) return false;
      if (evaluations_ + 2 * kRuleEvaluations + kProbeEvaluations > cfg_.max_evaluations) {
        return false;
      }
      std::pop_heap(segments_.begin(), segments_.end(), by_error);
      const Segment worst = segments_.back();
      const double mid = 0.5 * (worst.a + worst.b);
      if (!(mid > worst.a && mid < worst.b)) {
        std::push_heap(segments_.begin(), segments_.end(), by_error);
        return false;
      }
      segments_.pop_back();
      add(worst.a, mid, worst.panel);
      add(mid, worst.b, worst.panel);
      ++bisections_;
    }
  }

  double value() const {
    CompensatedSum s;
    for (const auto& seg : segments_) s.add(seg.value);
    return s.value();
  }

  double error() const {
    double e = 0.0;
    for (const auto& seg : segments_) e += seg.error;
    return e;
  }

  double raw_error() const {
    double e = 0.0;
    for (const auto& seg : segments_) e += seg.raw_error;
    return e;
  }

  double abs_value() const {
    double e = 0.0;
    for (const auto& seg : segments_) e += seg.abs_value;
    return e;
  }

  // Sum of per-panel totals, smallest magnitude first.
  double panel_sum() const {
    std::vector<Segment> sorted = segments_;
    std::sort(sorted.begin(), sorted.end(), [](const Segment& l, const Segment& r) {
      return l.panel != r.panel ? l.panel < r.panel : l.a < r.a;
    });
    std::vector<double> totals;
    for (std::size_t i = 0; i < sorted.size();) {
      CompensatedSum s;
      const int panel = sorted[i].panel;
      for (; i < sorted.size() && sorted[i].panel == panel; ++i) s.add(sorted[i].value);
      totals.push_back(s.value());
    }
    std::stable_sort(totals.begin(), totals.end(),
                     [](double l, double r) { return std::abs(l) < std::abs(r); });
    CompensatedSum s;
    for (double t : totals) s.add(t);
    return s.value();
  }

  long evaluations() const { return evaluations_; }

  double eval(double t) {
    const double v = f_(t);
    ++evaluations_;
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "integrand returned " << v << " at t=" << t;
      throw Error(ErrorCode::NonFiniteEvaluation, msg.str());
    }
    return v;
  }

 private:
  Segment apply_rule(double a, double b, int panel) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = eval(centre);
    double gauss = fc * kWg[3];
    double kronrod = fc * kWgk[7];
    double abs_sum = std::abs(kronrod);
    for (int j = 0; j < 7; ++j) {
      const double dx = half * kXgk[j];
      const double f1 = eval(centre - dx);
      const double f2 = eval(centre + dx);
      kronrod += kWgk[j] * (f1 + f2);
      abs_sum += kWgk[j] * (std::abs(f1) + std::abs(f2));
      if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
    }
    const double raw = std::abs(kronrod - gauss) * std::abs(half);
    const double abs_value = abs_sum * std::abs(half);
    return {a, b, kronrod * half, std::max(raw, kEps * abs_value), raw, abs_value, panel};
  }

  Integrand f_;
  const QuadratureConfig& cfg_;
  std::vector<Segment> segments_;
  long bisections_ = 0;
  long panels_ = 0;
  long evaluations_ = 0;
};

void check_interval(double a, double b) {
  if (!(std::isfinite(a) && std::isfinite(b) && a < b)) {
    std::ostringstream msg;
    msg << "need finite a < b, got [" << a << ", " << b << "]";
    throw Error(ErrorCode::InvalidInterval, msg.str());
  }
}

void check_abel_argument(double x) {
  if (!(std::isfinite(x) && x > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "Abel integral needs x > 0");
  }
}

}  // namespace

void QuadratureConfig::validate() const {
  const bool ok = abs_tol >= 0.0 && rel_tol >= 0.0 && abs_tol + rel_tol > 0.0 &&
                  max_subdivisions >= 1 && max_evaluations >= kRuleEvaluations &&
                  decay_cutoff > 0.0 && std::isfinite(abs_tol) && std::isfinite(rel_tol);
  if (!ok) throw Error(ErrorCode::InvalidArgument, "invalid quadrature configuration");
}

double QuadratureConfig::target(double value) const {
  return std::max(abs_tol, rel_tol * std::abs(value));
}

QuadratureResult integrate_finite(Integrand f, double a, double b, const QuadratureConfig& cfg) {
  cfg.validate();
  check_interval(a, b);
  Adaptive engine(f, cfg);
  engine.add_panel(a, b, 0);
  const bool converged = engine.refine();
  return {engine.value(), engine.error(), engine.evaluations(), converged};
}

QuadratureResult integrate_semi_infinite(Integrand f, double a, const QuadratureConfig& cfg,
                                         const std::function<double(double)>& envelope) {
  cfg.validate();
  if (!std::isfinite(a)) throw Error(ErrorCode::InvalidInterval, "lower limit must be finite");

  Adaptive engine(f, cfg);
  std::vector<double> probes;
  double left = a;
  double width = 1.0;
  bool converged = true;
  double tail = 0.0;
  for (int window = 0;; ++window) {
    const double right = left + width;
    if (window > 0 && engine.evaluations() + kRuleEvaluations + kProbeEvaluations > cfg.max_evaluations) {
      converged = false;
      break;
    }
    engine.add_panel(left, right, window);
    converged = engine.refine();

    double env = 0.0;
    if (envelope) {
      env = std::abs(envelope(right));
    } else {
      for (double t : {right - 0.5 * width, right - 0.25 * width, right}) {
        env = std::max(env, std::abs(engine.eval(t)));
      }
      probes.push_back(env);
      const std::size_t k = probes.size();
      if (k >= 3 && env > 0.0 && probes[k - 1] >= probes[k - 2] && probes[k - 2] >= probes[k - 3]) {
        std::ostringstream msg;
        msg << "integrand magnitude not decaying up to t=" << right;
        throw Error(ErrorCode::TailNotDecaying, msg.str());
      }
    }
    tail = env * width;
    if (tail <= cfg.decay_cutoff * engine.abs_value()) break;
    if (window + 1 >= kMaxWindows) {
      converged = false;
      break;
    }
    left = right;
    width *= 2.0;
  }
  return {engine.value(), engine.error() + tail, engine.evaluations(), converged};
}

QuadratureResult integrate_half_line(Integrand f, const QuadratureConfig& cfg,
                                     const std::function<double(double)>& envelope) {
  // x = exp(-s) maps (0, 1] to [0, inf) and turns log-periodic behaviour
  // at the origin into plain periodic behaviour.
  auto near = [&](double s) {
    const double x = std::exp(-s);
    return x == 0.0 ? 0.0 : f(x) * x;
  };
  const auto head = integrate_semi_infinite(near, 0.0, cfg);
  const auto tail = integrate_semi_infinite(f, 1.0, cfg, envelope);
  return {head.value + tail.value, head.error_estimate + tail.error_estimate,
          head.evaluations + tail.evaluations, head.converged && tail.converged};
}

QuadratureResult integrate_abel_lower(Integrand g, double x, const QuadratureConfig& cfg) {
  check_abel_argument(x);
  auto transformed = [&](double theta) { return g(x * std::sin(theta)); };
  return integrate_finite(transformed, 0.0, 0.5 * std::numbers::pi, cfg);
}

QuadratureResult integrate_abel_upper(Integrand g, double x, const QuadratureConfig& cfg,
                                      const std::function<double(double)>& envelope) {
  check_abel_argument(x);
  auto transformed = [&](double v) { return g(x * std::cosh(v)); };
  std::function<double(double)> env_v;
  if (envelope) env_v = [&](double v) { return envelope(x * std::cosh(v)); };
  return integrate_semi_infinite(transformed, 0.0, cfg, env_v);
}

QuadratureResult integrate_periodic_oscillatory(Integrand f, int n, const QuadratureConfig& cfg,
                                                Parity parity) {
  cfg.validate();
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "oscillation index must be >= 1");
  if (parity == Parity::Even) return {0.0, 0.0, 0, true};

  const double freq = static_cast<double>(n);
  auto integrand = [&](double u) { return f(u) * std::sin(freq * u); };
  Adaptive engine(integrand, cfg);
  const int first = parity == Parity::Odd ? 0 : -n;
  for (int k = first; k < n; ++k) {
    const double a = k * std::numbers::pi / freq;
    const double b = (k + 1) * std::numbers::pi / freq;
    engine.add_panel(a, b, k - first);
  }
  const bool converged = engine.refine();
  const double scale = parity == Parity::Odd ? 2.0 : 1.0;
  return {scale * engine.panel_sum(), scale * engine.error(), engine.evaluations(), converged};
}

}  // namespace lebedev::quad
