// Independent reference computations for the tests.  Nothing here calls the
// library's norm or solver code; inputs are read through the plain accessors.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "lhz/corpus.hpp"
#include "lhz/rearrange.hpp"

namespace oracle {

inline constexpr double inf = std::numeric_limits<double>::infinity();

// (measure, |value|) per shell, straight from the breakpoints.
inline std::vector<std::pair<double, double>> shells(const lhz::RadialStepFunction& f) {
  std::vector<std::pair<double, double>> out;
  const auto& rho = f.breakpoints();
  const double omega = f.dim() == 1 ? 2.0 : f.dim() == 2 ? M_PI : f.dim() == 3 ? 4.0 * M_PI / 3.0 : 0.0;
  for (std::size_t i = 0; i < f.values().size(); ++i)
    out.push_back({omega * (std::pow(rho[i + 1], f.dim()) - std::pow(rho[i], f.dim())), std::abs(f.values()[i])});
  return out;
}

inline double mu(const lhz::RadialStepFunction& f, double alpha) {
  double m = 0.0;
  for (auto [w, v] : shells(f))
    if (v > alpha) m += w;
  return m;
}

// f*(t) = inf{alpha >= 0 : mu(alpha) <= t} by bisection on alpha.
inline double f_star(const lhz::RadialStepFunction& f, double t) {
  double hi = 0.0;
  for (auto [w, v] : shells(f)) hi = std::max(hi, v);
  if (mu(f, 0.0) <= t) return 0.0;
  double lo = 0.0;  // mu(lo) > t, mu(hi) <= t
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (mu(f, mid) <= t ? hi : lo) = mid;
  }
  return hi;
}

// f*(t) = inf{alpha : mu(alpha) <= t}; the inf is attained at 0 or some |v|,
// so trying every candidate level is exact.
inline double f_star_candidates(const lhz::RadialStepFunction& f, double t) {
  double best = 0.0;
  bool zero_ok = mu(f, 0.0) <= t;
  if (zero_ok) return 0.0;
  best = inf;
  for (double v : f.values()) {
    const double a = std::abs(v);
    if (a < best && mu(f, a) <= t) best = a;
  }
  return best;
}

// Adaptive Simpson on [a, b], tolerance relative to the first estimate.
inline double simpson(const std::function<double(double)>& g, double a, double b, double rtol, int depth = 24) {
  auto rec = [&](auto&& self, double a, double b, double fa, double fm, double fb, double whole, double tol,
                 int depth) -> double {
    const double m = 0.5 * (a + b), lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = g(lm), frm = g(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm), right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) return left + right + (left + right - whole) / 15.0;
    return self(self, a, m, fa, flm, fm, left, tol / 2, depth - 1) + self(self, m, b, fm, frm, fb, right, tol / 2, depth - 1);
  };
  const double fa = g(a), fb = g(b), fm = g(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return rec(rec, a, b, fa, fm, fb, whole, rtol * std::max(std::abs(whole), 1e-300), depth);
}

// integral of f* over [0, t] from the sorted shells
inline double f_star_integral(const lhz::RadialStepFunction& f, double t) {
  auto s = shells(f);
  std::sort(s.begin(), s.end(), [](auto x, auto y) { return x.second > y.second; });
  double acc = 0.0, at = 0.0;
  for (auto [w, v] : s) {
    const double take = std::min(w, std::max(0.0, t - at));
    acc += take * v;
    at += w;
  }
  return acc;
}

// ||f||_{L^{p,r}} with f** (starred) or f*, by quadrature in s = log t.
inline double lorentz_by_quadrature(const lhz::RadialStepFunction& f, double p, double r, bool starred) {
  const double total = mu(f, 0.0);
  if (total == 0.0) return 0.0;
  auto s = shells(f);
  std::sort(s.begin(), s.end(), [](auto x, auto y) { return x.second > y.second; });
  // f* read off the sorted shells; f** from the running mass
  auto prof = [&](double t) {
    double at = 0.0, mass = 0.0;
    for (auto [w, v] : s) {
      if (t < at + w) return starred ? (mass + v * (t - at)) / t : v;
      at += w;
      mass += v * w;
    }
    return starred ? mass / t : 0.0;
  };
  if (std::isinf(r)) {
    // quasi: sup of v * mu(|f| >= v)^{1/p}; starred: knots and the stationary
    // point (p-1)A/w of t^{1/p-1}(A + w t) on each segment
    double best = 0.0, at = 0.0, F = 0.0;
    for (auto [w, v] : s) {
      const double A = F - v * at;
      const double t0 = at, t1 = at + w;
      auto g = [&](double t) { return std::pow(t, 1.0 / p - 1.0) * (A + v * t); };
      if (starred) {
        best = std::max(best, g(t1));
        const double ts = (p - 1.0) * A / v;
        if (ts > t0 && ts < t1) best = std::max(best, g(ts));
      }
      F += v * w;
      at = t1;
    }
    if (!starred) {
      for (auto [w, v] : s) {
        double m = 0.0;
        for (auto [w2, v2] : s)
          if (v2 >= v) m += w2;
        best = std::max(best, v * std::pow(m, 1.0 / p));
      }
    }
    return best;
  }
  // breakpoints of f* are the cumulative measures; integrate between them
  std::vector<double> knots{0.0};
  for (auto [w, v] : s) knots.push_back(knots.back() + w);
  auto g = [&](double x) {
    const double t = std::exp(x);
    return std::pow(std::pow(t, 1.0 / p) * prof(t), r);
  };
  const double lo = std::log(knots[1]) - 60.0;
  double acc = 0.0;
  double x0 = lo;
  for (std::size_t j = 1; j < knots.size(); ++j) {
    if (knots[j] == knots[j - 1]) continue;
    const double x1 = std::log(knots[j]);
    // f* jumps at the knot itself, so pin the level on the closed segment
    const double level = s[j - 1].second;
    auto gj = [&](double x) { return starred ? g(x) : std::pow(std::exp(x / p) * level, r); };
    const int pieces = std::max(1, static_cast<int>(std::ceil(x1 - x0)));
    for (int k = 0; k < pieces; ++k)
      acc += simpson(gj, x0 + (x1 - x0) * k / pieces, x0 + (x1 - x0) * (k + 1) / pieces, 1e-13);
    x0 = x1;
  }
  // analytic part below lo: f* constant = top there
  const double top = s.front().second;
  acc += std::pow(top, r) * std::exp(lo * r / p) * p / r;
  // past the support f** = M / t, so the tail is M^r T^{r/p - r} / (r - r/p)
  if (starred) {
    const double M = f_star_integral(f, total), T = std::exp(x0);
    acc += std::pow(M, r) * std::pow(T, r / p - r) / (r - r / p);
  }
  return std::pow(acc, 1.0 / r);
}

// Plain L^p norm of a radial step function.
inline double lp(const lhz::RadialStepFunction& f, double p) {
  double acc = 0.0;
  for (auto [w, v] : shells(f)) acc += w * std::pow(v, p);
  return std::pow(acc, 1.0 / p);
}

// Minimize a function on [0,1]^n: grid of the given step, then repeated
// zooming around the best point.
inline double grid_zoom_min(const std::function<double(const std::vector<double>&)>& F, std::size_t n,
                            double step = 0.02, int zooms = 20) {
  std::vector<double> best(n, 0.0), x(n, 0.0);
  double fbest = inf;
  std::vector<double> centre(n, 0.5);
  double half = 0.5;
  double h = step;
  for (int level = 0; level <= zooms; ++level) {
    const int m = static_cast<int>(std::lround(2.0 * half / h));
    std::vector<int> idx(n, 0);
    while (true) {
      for (std::size_t d = 0; d < n; ++d) x[d] = std::clamp(centre[d] - half + idx[d] * h, 0.0, 1.0);
      const double v = F(x);
      if (v < fbest) fbest = v, best = x;
      std::size_t d = 0;
      while (d < n && ++idx[d] > m) idx[d++] = 0;
      if (d == n) break;
    }
    centre = best;
    half = 2.0 * h;
    h = half / 10.0;
  }
  return fbest;
}

inline double weighted_norm(const std::vector<double>& z, const std::vector<int>& u, double a, double q) {
  double acc = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double w = std::exp2(u[i] * a) * std::abs(z[i]);
    acc = std::isinf(q) ? std::max(acc, w) : acc + std::pow(w, q);
  }
  return std::isinf(q) ? acc : std::pow(acc, 1.0 / q);
}

// K(t) for a three-or-so coordinate weighted sequence couple by direct search
// over splits s_i in [0, 1].  With a sup norm on one side the problem reduces
// to one bound on that side (each coordinate takes the largest share the
// bound allows), searched by ternary search; grid + zoom otherwise.
inline double k_search(double t, const std::vector<double>& y, const std::vector<int>& u, double a0, double q0,
                       double a1, double q1) {
  const std::size_t n = y.size();
  auto objective = [&](const std::vector<double>& s) {
    std::vector<double> z0(n), z1(n);
    for (std::size_t i = 0; i < n; ++i) z0[i] = (1.0 - s[i]) * y[i], z1[i] = s[i] * y[i];
    return weighted_norm(z0, u, a0, q0) + t * weighted_norm(z1, u, a1, q1);
  };
  double best = grid_zoom_min(objective, n);
  auto ternary = [&](auto&& split, double hi) {
    auto G = [&](double b) {
      std::vector<double> s(n);
      for (std::size_t i = 0; i < n; ++i) s[i] = split(i, b);
      return objective(s);
    };
    double lo = 0.0;
    for (int k = 0; k < 300; ++k) {
      const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
      if (G(m1) < G(m2))
        hi = m2;
      else
        lo = m1;
    }
    return G(0.5 * (lo + hi));
  };
  double top = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    top = std::max({top, std::exp2(u[i] * a0) * y[i], std::exp2(u[i] * a1) * y[i]});
  if (std::isinf(q1))
    best = std::min(best, ternary([&](std::size_t i, double lam) { return std::min(1.0, lam / (std::exp2(u[i] * a1) * y[i])); }, top));
  if (std::isinf(q0))
    best = std::min(best, ternary([&](std::size_t i, double L) { return std::max(0.0, 1.0 - L / (std::exp2(u[i] * a0) * y[i])); }, top));
  return best;
}

}  // namespace oracle
