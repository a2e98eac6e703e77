#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "lhz/interp.hpp"

namespace lhz {

double Tradeoff::operator()(double at) const {
  if (is_zero() || at >= cap()) return 0.0;
  if (at <= 0.0) return top();
  const auto k = static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), at) - x.begin()) - 1;
  const double frac = (at - x[k]) / (x[k + 1] - x[k]);
  return y[k] + frac * (y[k + 1] - y[k]);
}

double Tradeoff::inverse(double level) const {
  if (is_zero() || level >= top()) return 0.0;
  if (level <= 0.0) return cap();
  std::size_t k = 0;
  while (y[k + 1] >= level) ++k;
  const double frac = (y[k] - level) / (y[k] - y[k + 1]);
  return x[k] + frac * (x[k + 1] - x[k]);
}

Tradeoff scalar_tradeoff(double b, double c) {
  if (!(b >= 0.0) || !(c >= 0.0)) throw DomainError("tradeoff endpoints must be nonnegative");
  if (b == 0.0 || c == 0.0) return {{0.0}, {0.0}};
  return {{0.0, c}, {b, 0.0}};
}

Tradeoff l1_linf_tradeoff(const StepRearrangement& g, double w0, double w1) {
  if (g.is_zero()) return {{0.0}, {0.0}};
  const auto& t = g.knots();
  const auto& w = g.levels();
  Tradeoff out;
  out.x.push_back(0.0);
  out.y.push_back(w0 * g.mass());
  for (std::size_t i = w.size(); i-- > 0;) {
    out.x.push_back(w1 * w[i]);
    out.y.push_back(w0 * std::max(0.0, g.mass_to_knot(i) - w[i] * t[i]));
  }
  return out;
}

SequenceCouple::SequenceCouple(double a0_, double q0_, double a1_, double q1_)
    : a0(a0_), q0(q0_), a1(a1_), q1(q1_) {
  if (!std::isfinite(a0) || !std::isfinite(a1)) throw DomainError("couple weights must be finite");
  if (!(q0 >= 1.0) || !(q1 >= 1.0))
    throw DomainError("K-functional solver supports exponents in [1, inf] only");
}

namespace {

double pnorm(const std::vector<double>& v, double q) {
  double acc = 0.0;
  for (double e : v) acc = std::isinf(q) ? std::max(acc, e) : acc + std::pow(e, q);
  return std::isinf(q) ? acc : std::pow(acc, 1.0 / q);
}

struct Minimum {
  double at = 0.0;
  double value = kInf;
  bool converged = true;
};

// Coarse scan then Brent around the best cell; f only needs to be unimodal.
template <class F>
Minimum scan_minimize(F f, double lo, double hi, int cells) {
  Minimum best;
  const double step = (hi - lo) / cells;
  int arg = 0;
  for (int i = 0; i <= cells; ++i) {
    const double s = lo + step * i;
    const double v = f(s);
    if (v < best.value) best = {s, v, true}, arg = i;
  }
  const double a = lo + step * std::max(arg - 1, 0);
  const double b = lo + step * std::min(arg + 1, cells);
  std::uintmax_t iters = 200;
  const auto [x, v] = boost::math::tools::brent_find_minima(f, a, b, 40, iters);
  if (v < best.value) best = {x, v, true};
  best.converged = iters < 200;
  return best;
}

// Same, over a sorted list of sample points.  f may be flat at either end,
// so Brent runs next to both ends of the run of best samples.
template <class F>
Minimum scan_points_minimize(F f, std::vector<double> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<double> v(pts.size());
  Minimum best;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    v[i] = f(pts[i]);
    if (v[i] < best.value) best = {pts[i], v[i], true};
  }
  std::size_t first = pts.size(), last = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (v[i] == best.value) first = std::min(first, i), last = i;
  for (std::size_t arg : {first, last}) {
    const double a = pts[arg == 0 ? 0 : arg - 1];
    const double b = pts[std::min(arg + 1, pts.size() - 1)];
    if (!(b > a)) continue;
    std::uintmax_t iters = 200;
    const auto [x, fx] = boost::math::tools::brent_find_minima(f, a, b, 40, iters);
    if (fx < best.value) best = {x, fx, true};
    best.converged = best.converged && iters < 200;
  }
  return best;
}

// Golden section for a convex function on [a, b]; robust at kinks where
// parabolic steps stall.
template <class F>
double golden_convex(F f, double a, double b, int iters = 200) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters && b - a > 1e-17 * b; ++i) {
    if (fc <= fd) {
      b = d, d = c, fd = fc;
      c = b - g * (b - a), fc = f(c);
    } else {
      a = c, c = d, fc = fd;
      d = a + g * (b - a), fd = f(d);
    }
  }
  return std::min(fc, fd);
}

constexpr double kLogSpan = 120.0;

// min over lambda of N0(psi_u(min(lambda, cap_u))) + t lambda
double solve_sup_side1(double t, std::span<const Tradeoff> c, double q0, Minimum& info) {
  double maxcap = 0.0;
  for (const auto& tr : c) maxcap = std::max(maxcap, tr.cap());
  std::vector<double> buf(c.size());
  auto f = [&](double s) {
    const double lambda = std::exp2(s);
    for (std::size_t i = 0; i < c.size(); ++i) buf[i] = c[i](std::min(lambda, c[i].cap()));
    return pnorm(buf, q0) + t * lambda;
  };
  const double hi = std::log2(maxcap);
  info = scan_minimize(f, hi - kLogSpan, hi, static_cast<int>(kLogSpan));
  // F is convex in lambda, so the minimizer lies between the neighbours of the
  // best scan point; its kinks are the levels
  double best = info.value;
  for (const auto& tr : c)
    for (double x : tr.x)
      if (x > 0.0) best = std::min(best, f(std::log2(x)));
  const double s0 = std::floor(info.at - (hi - kLogSpan)) + (hi - kLogSpan);
  best = std::min(best, golden_convex([&](double lam) { return f(std::log2(lam)); }, std::exp2(s0 - 1.0),
                                      std::exp2(std::min(s0 + 2.0, hi))));
  return best;
}

// min over level s of s + t N1(psi_u^{-1}(s))
double solve_sup_side0(double t, std::span<const Tradeoff> c, double q1, Minimum& info) {
  double maxtop = 0.0;
  for (const auto& tr : c) maxtop = std::max(maxtop, tr.top());
  std::vector<double> buf(c.size());
  auto f = [&](double s) {
    const double level = std::exp2(s);
    for (std::size_t i = 0; i < c.size(); ++i) buf[i] = c[i].inverse(level);
    return level + t * pnorm(buf, q1);
  };
  const double hi = std::log2(maxtop);
  info = scan_minimize(f, hi - kLogSpan, hi, static_cast<int>(kLogSpan));
  double best = info.value;
  for (const auto& tr : c)
    for (double y : tr.y)
      if (y > 0.0) best = std::min(best, f(std::log2(y)));
  const double s0 = std::floor(info.at - (hi - kLogSpan)) + (hi - kLogSpan);
  best = std::min(best, golden_convex([&](double level) { return f(std::log2(level)); }, std::exp2(s0 - 1.0),
                                      std::exp2(std::min(s0 + 2.0, hi))));
  return best;
}

// argmin over [0, cap] of psi^{q0}/q0 + 2^{lmu} x^{q1}/q1.  The stationarity
// condition s psi^{q0-1} = mu x^{q1-1} is compared in log form.
double coordinate_argmin(const Tradeoff& tr, double lmu, double q0, double q1) {
  const double lnmu = lmu * std::numbers::ln2;
  for (std::size_t k = 0; k + 1 < tr.x.size(); ++k) {
    const double l = tr.x[k], r = tr.x[k + 1];
    const double s = (tr.y[k] - tr.y[k + 1]) / (r - l);
    const double lns = std::log(s);
    auto psi = [&](double at) { return tr.y[k] - s * (at - l); };
    // G increases along the segment; the minimizer is where it crosses 0
    auto G = [&](double at) {
      const double a = q1 == 1.0 ? 0.0 : (q1 - 1.0) * std::log(at);
      const double b = q0 == 1.0 ? 0.0 : (q0 - 1.0) * std::log(psi(at));
      return lnmu + a - lns - b;
    };
    if (G(l) >= 0.0) return l;
    if (G(r) < 0.0) continue;
    if (q0 == 1.0) return std::clamp(std::exp((lns - lnmu) / (q1 - 1.0)), l, r);
    if (q1 == 1.0) return std::clamp(l + (tr.y[k] - std::exp((lnmu - lns) / (q0 - 1.0))) / s, l, r);
    auto step = [&](double at) {
      return std::make_pair(G(at), (q1 - 1.0) / at + (q0 - 1.0) * s / psi(at));
    };
    std::uintmax_t iters = 100;
    return boost::math::tools::newton_raphson_iterate(step, 0.5 * (l + r), l, r, 40, iters);
  }
  return tr.cap();
}

double solve_pareto(double t, std::span<const Tradeoff> c, double q0, double q1, Minimum& info) {
  std::vector<double> a(c.size()), b(c.size());
  auto f = [&](double lmu) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      b[i] = coordinate_argmin(c[i], lmu, q0, q1);
      a[i] = c[i](b[i]);
    }
    return pnorm(a, q0) + t * pnorm(b, q1);
  };
  // log2 mu at which some coordinate minimizer sits on a kink; between these
  // f is smooth
  std::vector<double> pts;
  const double ln2 = std::numbers::ln2;
  for (const auto& tr : c) {
    for (std::size_t k = 0; k + 1 < tr.x.size(); ++k) {
      const double s = (tr.y[k] - tr.y[k + 1]) / (tr.x[k + 1] - tr.x[k]);
      for (double at : {tr.x[k], tr.x[k + 1]}) {
        const double psi = tr(at);
        if (!(at > 0.0) || (q0 != 1.0 && !(psi > 0.0))) continue;
        const double a = q1 == 1.0 ? 0.0 : (q1 - 1.0) * std::log(at);
        const double b = q0 == 1.0 ? 0.0 : (q0 - 1.0) * std::log(psi);
        pts.push_back((std::log(s) + b - a) / ln2);
      }
    }
  }
  double lo = kInf, hi = -kInf;
  for (const auto& tr : c) {
    const double m = q0 * std::log2(tr.top()) - q1 * std::log2(tr.cap());
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  }
  for (double p : pts) lo = std::min(lo, p), hi = std::max(hi, p);
  lo -= kLogSpan;
  hi += kLogSpan;
  for (double x = lo; x < hi; x += 4.0) pts.push_back(x);
  pts.push_back(hi);
  info = scan_points_minimize(f, std::move(pts));
  return info.value;
}

}  // namespace

KResult minimize_split(double t, std::span<const Tradeoff> coords, double q0, double q1) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("K-functional needs 0 < t < inf");
  if (!(q0 >= 1.0) || !(q1 >= 1.0))
    throw DomainError("K-functional solver supports exponents in [1, inf] only");
  std::vector<Tradeoff> c;
  for (const auto& tr : coords)
    if (!tr.is_zero()) c.push_back(tr);
  KResult res;
  if (c.empty()) return res;

  std::vector<double> tops, caps;
  for (const auto& tr : c) tops.push_back(tr.top()), caps.push_back(tr.cap());
  const double e0 = pnorm(tops, q0);
  const double e1 = t * pnorm(caps, q1);
  res.upper_bound = std::min(e0, e1);

  double best = res.upper_bound;
  Minimum info;
  const bool inf0 = std::isinf(q0), inf1 = std::isinf(q1);
  if (q0 == 1.0 && q1 == 1.0) {
    double sum = 0.0;
    for (const auto& tr : c) {
      double m = kInf;
      for (std::size_t k = 0; k < tr.x.size(); ++k) m = std::min(m, tr.y[k] + t * tr.x[k]);
      sum += m;
    }
    best = std::min(best, sum);
  } else if (inf1) {
    best = std::min(best, solve_sup_side1(t, c, q0, info));
  } else if (inf0) {
    best = std::min(best, solve_sup_side0(t, c, q1, info));
  } else {
    best = std::min(best, solve_pareto(t, c, q0, q1, info));
  }
  res.value = best;
  res.converged = info.converged && std::isfinite(best);
  return res;
}

KResult k_functional(double t, const WeightedSeq& y, const SequenceCouple& couple) {
  std::vector<Tradeoff> c;
  for (int u = kFirstAnnulus; u < y.end_index(); ++u)
    c.push_back(scalar_tradeoff(std::exp2(u * couple.a0) * y[u], std::exp2(u * couple.a1) * y[u]));
  return minimize_split(t, c, couple.q0, couple.q1);
}

double k_functional_l1_linf(const StepRearrangement& g, double t) {
  if (!(t > 0.0)) throw DomainError("K-functional needs t > 0");
  return g.integral(0.0, t);
}

double k_functional_l1_linf(const RadialStepFunction& f, double t) {
  return k_functional_l1_linf(rearrangement(f), t);
}

namespace {

std::vector<Tradeoff> herz_tradeoffs(const AnnulusProfile& profile, const SequenceCouple& couple) {
  std::vector<Tradeoff> c;
  for (int u = kFirstAnnulus; u < profile.end_index(); ++u)
    c.push_back(l1_linf_tradeoff(profile[u], std::exp2(u * couple.a0), std::exp2(u * couple.a1)));
  return c;
}

}  // namespace

KResult k_functional_herz_l1_linf(double t, const AnnulusProfile& profile,
                                  const SequenceCouple& couple) {
  return minimize_split(t, herz_tradeoffs(profile, couple), couple.q0, couple.q1);
}

// ---------------------------------------------------------------------------
// K curves

namespace {

int normalizing_exponent(double top) {
  if (!(top > 0.0)) return 0;
  int e = 0;
  std::frexp(top, &e);
  return e;
}

void add_slope_kinks(const std::vector<Tradeoff>& c, std::vector<double>& kinks) {
  for (const auto& tr : c)
    for (std::size_t k = 0; k + 1 < tr.x.size(); ++k)
      kinks.push_back((tr.y[k] - tr.y[k + 1]) / (tr.x[k + 1] - tr.x[k]));
  std::sort(kinks.begin(), kinks.end());
  kinks.erase(std::unique(kinks.begin(), kinks.end()), kinks.end());
}

}  // namespace

KCurve sequence_curve(const WeightedSeq& y, const SequenceCouple& couple) {
  double top = 0.0;
  for (double v : y.entries()) top = std::max(top, v);
  const int e = normalizing_exponent(top);
  const WeightedSeq yn = y.scaled(std::ldexp(1.0, -e));

  std::vector<Tradeoff> c;
  for (int u = kFirstAnnulus; u < yn.end_index(); ++u)
    c.push_back(scalar_tradeoff(std::exp2(u * couple.a0) * yn[u], std::exp2(u * couple.a1) * yn[u]));

  KCurve curve;
  curve.scale = std::ldexp(1.0, e);
  curve.norm0 = ell_norm(yn, couple.a0, couple.q0);
  curve.norm1 = ell_norm(yn, couple.a1, couple.q1);
  if (couple.q0 == 1.0 && couple.q1 == 1.0) add_slope_kinks(c, curve.kinks);
  const double q0 = couple.q0, q1 = couple.q1;
  curve.k = [c = std::move(c), q0, q1](double t) { return minimize_split(t, c, q0, q1); };
  return curve;
}

KCurve l1_linf_curve(const RadialStepFunction& f) {
  auto g = rearrangement(f);
  const int e = normalizing_exponent(g.sup());
  g = g.scaled(std::ldexp(1.0, -e));
  KCurve curve;
  curve.scale = std::ldexp(1.0, e);
  curve.norm0 = g.mass();
  curve.norm1 = g.sup();
  curve.kinks.assign(g.knots().begin() + 1, g.knots().end());
  curve.k = [g = std::move(g)](double t) {
    const double v = k_functional_l1_linf(g, t);
    return KResult{v, true, std::min(g.mass(), t * g.sup())};
  };
  return curve;
}

KCurve herz_l1_linf_curve(const RadialStepFunction& f, const SequenceCouple& couple) {
  double top = 0.0;
  for (double v : f.values()) top = std::max(top, std::abs(v));
  const int e = normalizing_exponent(top);
  const AnnulusProfile profile(f.scaled(std::ldexp(1.0, -e)));
  auto c = herz_tradeoffs(profile, couple);

  KCurve curve;
  curve.scale = std::ldexp(1.0, e);
  curve.norm0 = hl_norm(profile, {couple.a0, 1.0, couple.q0, 1.0});
  curve.norm1 = hl_norm(profile, {couple.a1, kInf, couple.q1, kInf});
  if (couple.q0 == 1.0 && couple.q1 == 1.0) add_slope_kinks(c, curve.kinks);
  const double q0 = couple.q0, q1 = couple.q1;
  curve.k = [c = std::move(c), q0, q1](double t) { return minimize_split(t, c, q0, q1); };
  return curve;
}

KInvariantReport check_k_invariants(const KCurve& curve, std::span<const double> ts, double slack) {
  KInvariantReport rep;
  std::vector<double> k;
  for (double t : ts) k.push_back(curve(t));
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double bound = curve.scale * std::min(curve.norm0, ts[i] * curve.norm1);
    if (k[i] > bound * (1.0 + slack)) rep.below_endpoints = false;
    if (i + 1 < ts.size()) {
      if (k[i + 1] < k[i] * (1.0 - slack)) rep.monotone = false;
      if (k[i + 1] / ts[i + 1] > (k[i] / ts[i]) * (1.0 + slack)) rep.ratio_nonincreasing = false;
    }
    if (i + 2 < ts.size()) {
      const double w = (ts[i + 1] - ts[i]) / (ts[i + 2] - ts[i]);
      const double chord = k[i] + w * (k[i + 2] - k[i]);
      if (k[i + 1] < chord - slack * std::max(chord, k[i + 1])) rep.concave = false;
    }
  }
  return rep;
}

}  // namespace lhz
