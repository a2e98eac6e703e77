#include "lhz/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace lhz {

double unit_ball_volume(int dim) {
  if (dim < 1) throw DomainError("dimension must be positive");
  switch (dim) {
    case 1: return 2.0;
    case 2: return std::numbers::pi;
    case 3: return 4.0 * std::numbers::pi / 3.0;
    default:
      return std::pow(std::numbers::pi, 0.5 * dim) / std::tgamma(0.5 * dim + 1.0);
  }
}

double shell_measure(int dim, double rho_lo, double rho_hi) {
  if (dim == 1) return 2.0 * (rho_hi - rho_lo);
  return unit_ball_volume(dim) * (std::pow(rho_hi, dim) - std::pow(rho_lo, dim));
}

// ---------------------------------------------------------------------------
// RadialStepFunction

RadialStepFunction::RadialStepFunction(int dim, std::vector<double> breakpoints,
                                       std::vector<double> values)
    : dim_(dim) {
  if (dim < 1) throw DomainError("dimension must be positive");
  if (breakpoints.empty() || breakpoints.front() != 0.0)
    throw DomainError("breakpoints must start at 0");
  if (values.size() + 1 != breakpoints.size())
    throw DomainError("need exactly one value per shell");
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i] > breakpoints[i - 1]) || !std::isfinite(breakpoints[i]))
      throw DomainError("breakpoints must be finite and strictly increasing");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw DomainError("shell values must be finite");
  }

  // canonical form: merge equal neighbours, trim the zero tail
  breakpoints_.assign(1, 0.0);
  values_.clear();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!values_.empty() && values_.back() == values[i]) {
      breakpoints_.back() = breakpoints[i + 1];
    } else {
      values_.push_back(values[i]);
      breakpoints_.push_back(breakpoints[i + 1]);
    }
  }
  while (!values_.empty() && values_.back() == 0.0) {
    values_.pop_back();
    breakpoints_.pop_back();
  }
}

RadialStepFunction RadialStepFunction::zero(int dim) { return RadialStepFunction(dim, {0.0}, {}); }

RadialStepFunction RadialStepFunction::from_shell_measures(int dim, std::span<const double> measures,
                                                           std::span<const double> values) {
  if (measures.size() != values.size()) throw DomainError("measures and values differ in length");
  const double omega = unit_ball_volume(dim);
  std::vector<double> rho{0.0};
  double enclosed = 0.0;
  for (double m : measures) {
    if (!(m > 0.0)) throw DomainError("shell measures must be positive");
    enclosed += m;
    rho.push_back(dim == 1 ? enclosed / 2.0 : std::pow(enclosed / omega, 1.0 / dim));
  }
  return RadialStepFunction(dim, std::move(rho), std::vector<double>(values.begin(), values.end()));
}

RadialStepFunction RadialStepFunction::shell_indicator(int dim, double rho_lo, double rho_hi,
                                                       double value) {
  if (!(rho_lo >= 0.0) || !(rho_hi > rho_lo)) throw DomainError("empty shell");
  if (rho_lo == 0.0) return RadialStepFunction(dim, {0.0, rho_hi}, {value});
  return RadialStepFunction(dim, {0.0, rho_lo, rho_hi}, {0.0, value});
}

double RadialStepFunction::shell_measure(std::size_t i) const {
  return lhz::shell_measure(dim_, breakpoints_[i], breakpoints_[i + 1]);
}

double RadialStepFunction::operator()(double radius) const {
  if (radius < 0.0) radius = -radius;
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), radius);
  if (it == breakpoints_.end()) return 0.0;
  return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

double RadialStepFunction::support_measure() const {
  double total = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] != 0.0) total += shell_measure(i);
  }
  return total;
}

double RadialStepFunction::integral_abs() const {
  double total = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) total += std::abs(values_[i]) * shell_measure(i);
  return total;
}

bool RadialStepFunction::nonnegative() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v >= 0.0; });
}

std::vector<MeasuredValue> RadialStepFunction::pieces() const {
  std::vector<MeasuredValue> out;
  out.reserve(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] != 0.0) out.push_back({shell_measure(i), values_[i]});
  }
  return out;
}

namespace {

// Union of breakpoints, then evaluate a binary op shellwise.
template <typename Op>
RadialStepFunction combine(const RadialStepFunction& f, const RadialStepFunction& g, Op op) {
  if (f.dim() != g.dim()) throw DomainError("functions live in different dimensions");
  std::vector<double> rho;
  rho.reserve(f.breakpoints().size() + g.breakpoints().size());
  std::set_union(f.breakpoints().begin(), f.breakpoints().end(), g.breakpoints().begin(),
                 g.breakpoints().end(), std::back_inserter(rho));
  std::vector<double> values(rho.size() - 1);
  for (std::size_t i = 0; i + 1 < rho.size(); ++i) values[i] = op(f(rho[i]), g(rho[i]));
  return RadialStepFunction(f.dim(), std::move(rho), std::move(values));
}

}  // namespace

RadialStepFunction RadialStepFunction::restricted(double rho_lo, double rho_hi) const {
  if (!(rho_hi > rho_lo)) return zero(dim_);
  std::vector<double> rho{0.0};
  std::vector<double> vals;
  if (rho_lo > 0.0) {
    rho.push_back(rho_lo);
    vals.push_back(0.0);
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double lo = std::max(breakpoints_[i], rho_lo);
    const double hi = std::min(breakpoints_[i + 1], rho_hi);
    if (!(hi > lo)) continue;
    if (lo > rho.back()) {
      rho.push_back(lo);
      vals.push_back(0.0);
    }
    rho.push_back(hi);
    vals.push_back(values_[i]);
  }
  return RadialStepFunction(dim_, std::move(rho), std::move(vals));
}

RadialStepFunction RadialStepFunction::abs() const {
  std::vector<double> vals(values_.size());
  std::transform(values_.begin(), values_.end(), vals.begin(), [](double v) { return std::abs(v); });
  return RadialStepFunction(dim_, breakpoints_, std::move(vals));
}

RadialStepFunction RadialStepFunction::scaled(double factor) const {
  std::vector<double> vals(values_.size());
  std::transform(values_.begin(), values_.end(), vals.begin(), [=](double v) { return factor * v; });
  return RadialStepFunction(dim_, breakpoints_, std::move(vals));
}

RadialStepFunction operator+(const RadialStepFunction& f, const RadialStepFunction& g) {
  return combine(f, g, [](double x, double y) { return x + y; });
}

RadialStepFunction operator*(const RadialStepFunction& f, const RadialStepFunction& g) {
  return combine(f, g, [](double x, double y) { return x * y; });
}

double distribution(const RadialStepFunction& f, double alpha) {
  if (!(alpha >= 0.0)) throw DomainError("distribution level must be nonnegative");
  double total = 0.0;
  for (std::size_t i = 0; i < f.shell_count(); ++i) {
    if (std::abs(f.values()[i]) > alpha) total += f.shell_measure(i);
  }
  return total;
}

// ---------------------------------------------------------------------------
// StepRearrangement

StepRearrangement StepRearrangement::from_pieces(std::span<const MeasuredValue> pieces) {
  std::vector<MeasuredValue> sorted;
  sorted.reserve(pieces.size());
  for (const auto& p : pieces) {
    if (!(p.measure >= 0.0) || !std::isfinite(p.measure)) throw DomainError("invalid piece measure");
    if (p.measure > 0.0 && p.value != 0.0) sorted.push_back({p.measure, std::abs(p.value)});
  }
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const MeasuredValue& a, const MeasuredValue& b) { return a.value > b.value; });

  StepRearrangement out;
  double t = 0.0;
  for (const auto& p : sorted) {
    t += p.measure;
    if (!out.levels_.empty() && out.levels_.back() == p.value) {
      out.knots_.back() = t;
    } else {
      out.levels_.push_back(p.value);
      out.knots_.push_back(t);
    }
  }
  out.cumulative_.assign(out.knots_.size(), 0.0);
  for (std::size_t j = 0; j < out.levels_.size(); ++j) {
    out.cumulative_[j + 1] =
        out.cumulative_[j] + out.levels_[j] * (out.knots_[j + 1] - out.knots_[j]);
  }
  return out;
}

double StepRearrangement::operator()(double t) const {
  if (t < 0.0) throw DomainError("rearrangement evaluated at negative argument");
  auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
  if (it == knots_.end()) return 0.0;
  return levels_[static_cast<std::size_t>(it - knots_.begin()) - 1];
}

double StepRearrangement::distribution(double alpha) const {
  // levels are strictly decreasing: count those above alpha
  auto it = std::partition_point(levels_.begin(), levels_.end(), [=](double w) { return w > alpha; });
  return knots_[static_cast<std::size_t>(it - levels_.begin())];
}

double StepRearrangement::integral(double from, double to) const {
  if (!(to > from)) return 0.0;
  auto primitive = [this](double t) {
    if (t >= knots_.back()) return cumulative_.back();
    auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
    const auto j = static_cast<std::size_t>(it - knots_.begin()) - 1;
    return cumulative_[j] + levels_[j] * (t - knots_[j]);
  };
  return primitive(to) - primitive(from);
}

double StepRearrangement::average(double t) const {
  if (!(t > 0.0)) throw DomainError("average rearrangement needs t > 0");
  if (levels_.empty()) return 0.0;
  if (t <= knots_[1]) return levels_[0];
  return integral(0.0, t) / t;
}

StepRearrangement StepRearrangement::scaled(double factor) const {
  std::vector<MeasuredValue> pieces;
  for (std::size_t j = 0; j < levels_.size(); ++j)
    pieces.push_back({knots_[j + 1] - knots_[j], factor * levels_[j]});
  return from_pieces(pieces);
}

StepRearrangement rearrangement(const RadialStepFunction& f) {
  const auto p = f.pieces();
  return StepRearrangement::from_pieces(p);
}

// ---------------------------------------------------------------------------

SumBoundReport sum_bound_check(std::span<const RadialStepFunction> fs, double t,
                               std::span<const double> weights) {
  if (fs.empty()) throw DomainError("sum bound needs at least one function");
  if (!(t > 0.0)) throw DomainError("sum bound needs t > 0");
  if (weights.size() != fs.size()) throw DomainError("one weight per function required");
  double wsum = 0.0;
  for (double c : weights) {
    if (!(c > 0.0)) throw DomainError("weights must be positive");
    wsum += c;
  }
  if (std::abs(wsum - 1.0) > 1e-12) throw DomainError("weights must sum to 1");

  RadialStepFunction total = RadialStepFunction::zero(fs.front().dim());
  SumBoundReport report;
  for (std::size_t n = 0; n < fs.size(); ++n) {
    if (!fs[n].nonnegative()) throw DomainError("sum bound is stated for nonnegative functions");
    total = total + fs[n];
    const auto g = rearrangement(fs[n]);
    report.rhs_weighted += g.average(t) + g.integral(weights[n] * t, t) / t;
    report.rhs_avg += 2.0 * g.average(t / 3.0);
  }
  const auto sum_star = rearrangement(total);
  report.lhs_weighted = sum_star(3.0 * t);
  report.lhs_avg = sum_star(t);
  report.pass = report.lhs_weighted <= report.rhs_weighted && report.lhs_avg <= report.rhs_avg;
  return report;
}

}  // namespace lhz
