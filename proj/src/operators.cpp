#include "lhz/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lhz {

GridFunction1D::GridFunction1D(double half_width, std::vector<double> values)
    : half_width_(half_width), values_(std::move(values)) {
  if (!(half_width_ > 0.0) || !std::isfinite(half_width_))
    throw DomainError("grid half width must be positive and finite");
  if (values_.empty() || values_.size() % 2 != 0) throw DomainError("grid needs an even, nonzero cell count");
  for (double v : values_)
    if (!std::isfinite(v)) throw DomainError("grid values must be finite");
}

GridFunction1D GridFunction1D::indicator(double half_width, std::size_t cells, double lo, double hi,
                                         double value) {
  return sampled(half_width, cells, [&](double x) { return (x >= lo && x < hi) ? value : 0.0; });
}

GridFunction1D GridFunction1D::refined() const {
  std::vector<double> v;
  v.reserve(2 * values_.size());
  for (double x : values_) v.insert(v.end(), {x, x});
  return {half_width_, std::move(v)};
}

GridFunction1D GridFunction1D::scaled(double factor) const {
  auto v = values_;
  for (double& x : v) x *= factor;
  return {half_width_, std::move(v)};
}

GridFunction1D operator+(const GridFunction1D& f, const GridFunction1D& g) {
  if (f.half_width_ != g.half_width_ || f.cells() != g.cells())
    throw DomainError("grid functions live on different grids");
  auto v = f.values_;
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += g.values_[i];
  return {f.half_width_, std::move(v)};
}

namespace {

void push_interval(std::vector<AnnulusProfile::Entry>& entries, double x0, double x1, double v) {
  if (v == 0.0) return;
  double lo = std::abs(x0), hi = std::abs(x1);
  if (lo > hi) std::swap(lo, hi);
  if (x0 < 0.0 && x1 > 0.0) {
    push_interval(entries, x0, 0.0, v);
    push_interval(entries, 0.0, x1, v);
    return;
  }
  for (int u = annulus_index(lo); annulus_inner_radius(u) < hi; ++u) {
    const double a = std::max(lo, annulus_inner_radius(u));
    const double b = std::min(hi, annulus_outer_radius(u));
    if (b > a) entries.push_back({u, {b - a, v}});
  }
}

}  // namespace

AnnulusProfile GridFunction1D::profile() const {
  std::vector<AnnulusProfile::Entry> entries;
  for (std::size_t i = 0; i < cells(); ++i) push_interval(entries, edge(i), edge(i + 1), values_[i]);
  return AnnulusProfile::from_entries(entries);
}

double GridFunction1D::lp_norm(double p) const {
  if (!(p > 0.0)) throw DomainError("L^p exponent must be positive");
  double acc = 0.0;
  for (double v : values_) acc = std::isinf(p) ? std::max(acc, std::abs(v)) : acc + std::pow(std::abs(v), p);
  return std::isinf(p) ? acc : std::pow(acc * cell_width(), 1.0 / p);
}

std::string to_string(OperatorKind kind) { return kind == OperatorKind::maximal ? "maximal" : "hilbert"; }

OperatorKind parse_operator(const std::string& name) {
  if (name == "maximal") return OperatorKind::maximal;
  if (name == "hilbert") return OperatorKind::hilbert;
  throw DomainError("unknown operator '" + name + "'");
}

// ---------------------------------------------------------------------------
// maximal operator

namespace {

std::vector<double> prefix_mass(const GridFunction1D& f) {
  const double h = f.cell_width();
  std::vector<double> P(f.cells() + 1, 0.0);
  for (std::size_t i = 0; i < f.cells(); ++i) P[i + 1] = P[i] + std::abs(f.values()[i]) * h;
  return P;
}

}  // namespace

GridFunction1D maximal_operator(const GridFunction1D& f) {
  const std::size_t n = f.cells();
  const double h = f.cell_width();
  const auto P = prefix_mass(f);
  std::vector<double> out(n, 0.0);

  // full-cell intervals [E_j, E_k], j <= i < k, via suffix maxima over k
  std::vector<double> S(n + 2, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    S[n + 1] = 0.0;
    for (std::size_t k = n; k > j; --k)
      S[k] = std::max(S[k + 1], (P[k] - P[j]) / (static_cast<double>(k - j) * h));
    for (std::size_t i = j; i < n; ++i) out[i] = std::max(out[i], S[i + 1]);
  }
  // intervals with the centre as an endpoint
  for (std::size_t i = 0; i < n; ++i) {
    const double half = 0.5 * std::abs(f.values()[i]) * h;
    for (std::size_t j = 0; j <= i; ++j)
      out[i] = std::max(out[i], (P[i] - P[j] + half) / (static_cast<double>(i - j) * h + 0.5 * h));
    for (std::size_t k = i + 1; k <= n; ++k)
      out[i] = std::max(out[i], (half + P[k] - P[i + 1]) / (static_cast<double>(k - i - 1) * h + 0.5 * h));
  }
  return {f.half_width(), std::move(out)};
}

double maximal_at(const GridFunction1D& f, double x) {
  const std::size_t n = f.cells();
  const auto P = prefix_mass(f);
  auto mass_to = [&](double s) {
    if (s <= f.edge(0)) return 0.0;
    if (s >= f.edge(n)) return P[n];
    const auto i = std::min(n - 1, static_cast<std::size_t>((s - f.edge(0)) / f.cell_width()));
    return P[i] + std::abs(f.values()[i]) * (s - f.edge(i));
  };
  // candidate endpoints: grid edges and x
  std::vector<double> left{x}, right{x};
  for (std::size_t k = 0; k <= n; ++k) {
    const double e = f.edge(k);
    if (e < x) left.push_back(e);
    if (e > x) right.push_back(e);
  }
  double best = 0.0;
  const double mx = mass_to(x);
  std::vector<double> ml;
  for (double a : left) ml.push_back(mass_to(a));
  for (double b : right) {
    const double mb = mass_to(b);
    for (std::size_t j = 0; j < left.size(); ++j) {
      const double a = left[j];
      if (b > a) best = std::max(best, (mb - ml[j]) / (b - a));
    }
  }
  for (std::size_t j = 1; j < left.size(); ++j) best = std::max(best, (mx - ml[j]) / (x - left[j]));
  if (x > f.edge(0) && x < f.edge(n)) {
    const auto i = std::min(n - 1, static_cast<std::size_t>((x - f.edge(0)) / f.cell_width()));
    best = std::max(best, std::abs(f.values()[i]));
  }
  return best;
}

// ---------------------------------------------------------------------------
// Hilbert transform

GridFunction1D hilbert_transform(const GridFunction1D& f) {
  const std::size_t n = f.cells();
  // integral over a cell at offset d of dy / (x - y), in units where h = 1
  std::vector<double> K(n, 0.0);
  for (std::size_t d = 1; d < n; ++d) {
    const double dd = static_cast<double>(d);
    K[d] = std::log(dd + 0.5) - std::log(dd - 0.5);
  }
  std::vector<double> out(n, 0.0);
  const auto& v = f.values();
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < i; ++j) acc += v[j] * K[i - j];
    for (std::size_t j = i + 1; j < n; ++j) acc -= v[j] * K[j - i];
    out[i] = acc / std::numbers::pi;
  }
  return {f.half_width(), std::move(out)};
}

double hilbert_at(const GridFunction1D& f, double x) {
  // telescoped per-cell log primitives: sum over edges of jump * ln|x - E_k|
  const std::size_t n = f.cells();
  const auto& v = f.values();
  double acc = 0.0;
  for (std::size_t k = 0; k <= n; ++k) {
    const double jump = (k < n ? v[k] : 0.0) - (k > 0 ? v[k - 1] : 0.0);
    if (jump == 0.0) continue;
    acc += jump * std::log(std::abs(x - f.edge(k)));
  }
  return acc / std::numbers::pi;
}

AnnulusProfile image_profile(OperatorKind kind, const GridFunction1D& f, int depth) {
  if (kind == OperatorKind::maximal) return maximal_operator(f).profile();
  const auto Hf = hilbert_transform(f);
  const auto& v = f.values();
  const std::size_t n = f.cells();
  auto singular = [&](std::size_t k) { return (k < n ? v[k] : 0.0) != (k > 0 ? v[k - 1] : 0.0); };
  std::vector<AnnulusProfile::Entry> entries;
  // geometric pieces of [e, e + w] shrinking toward e (w may be negative)
  auto graded = [&](double e, double w) {
    for (int k = 0; k < depth; ++k) {
      const double x0 = e + std::ldexp(w, -k - 1), x1 = e + std::ldexp(w, -k);
      push_interval(entries, std::min(x0, x1), std::max(x0, x1), hilbert_at(f, 0.5 * (x0 + x1)));
    }
    const double x1 = e + std::ldexp(w, -depth);
    push_interval(entries, std::min(e, x1), std::max(e, x1), hilbert_at(f, 0.5 * (e + x1)));
  };
  const double h = f.cell_width();
  for (std::size_t i = 0; i < n; ++i) {
    const bool left = singular(i), right = singular(i + 1);
    if (!left && !right) {
      push_interval(entries, f.edge(i), f.edge(i + 1), Hf.values()[i]);
    } else if (left && right) {
      graded(f.edge(i), 0.5 * h);
      graded(f.edge(i + 1), -0.5 * h);
    } else if (left) {
      graded(f.edge(i), h);
    } else {
      graded(f.edge(i + 1), -h);
    }
  }
  return AnnulusProfile::from_entries(entries);
}

GridFunction1D apply(OperatorKind kind, const GridFunction1D& f) {
  return kind == OperatorKind::maximal ? maximal_operator(f) : hilbert_transform(f);
}

double apply_at(OperatorKind kind, const GridFunction1D& f, double x) {
  return kind == OperatorKind::maximal ? maximal_at(f, x) : hilbert_at(f, x);
}

double size_integral(const GridFunction1D& f, double x) {
  double acc = 0.0;
  for (std::size_t j = 0; j < f.cells(); ++j) {
    const double v = f.values()[j];
    if (v == 0.0) continue;
    const double a = f.edge(j), b = f.edge(j + 1);
    if (x > a && x < b) return kInf;
    acc += std::abs(v) * std::abs(std::log(std::abs(x - a)) - std::log(std::abs(x - b)));
  }
  return acc;
}

namespace {

// max |Tf| / size integral over centres at least `margin` cells off the support
double size_ratio(OperatorKind kind, const GridFunction1D& f, std::size_t margin, std::size_t& points) {
  const std::size_t n = f.cells();
  std::vector<char> near(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    if (f.values()[j] == 0.0) continue;
    const std::size_t lo = j >= margin ? j - margin : 0;
    const std::size_t hi = std::min(n - 1, j + margin);
    for (std::size_t i = lo; i <= hi; ++i) near[i] = 1;
  }
  const auto Tf = apply(kind, f);
  double best = 0.0;
  points = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (near[i]) continue;
    ++points;
    const double denom = size_integral(f, f.centre(i));
    if (denom > 0.0) best = std::max(best, std::abs(Tf.values()[i]) / denom);
  }
  return best;
}

}  // namespace

SizeConditionReport size_condition_check(OperatorKind kind, const GridFunction1D& f, std::size_t margin) {
  SizeConditionReport rep;
  const bool zero = std::all_of(f.values().begin(), f.values().end(), [](double v) { return v == 0.0; });
  if (zero) {
    rep.points = f.cells();
    rep.pass = true;
    return rep;
  }
  rep.max_ratio = size_ratio(kind, f, margin, rep.points);
  if (rep.points == 0) throw DomainError("no evaluation points off the support");
  std::size_t refined_points = 0;
  rep.max_ratio_refined = size_ratio(kind, f.refined(), 2 * margin + 1, refined_points);
  const double drift = std::abs(rep.max_ratio_refined - rep.max_ratio) / rep.max_ratio;
  rep.pass = std::isfinite(rep.max_ratio) && std::isfinite(rep.max_ratio_refined) && drift <= 0.05;
  return rep;
}

// ---------------------------------------------------------------------------
// annulus interaction

namespace {

double log2_indicator_norm(int dim, int u, double p, double r) {
  const double scale = std::isinf(r) ? 0.0 : std::log2(p / r) / r;
  return scale + std::log2(annulus_measure(dim, u)) / p;
}

}  // namespace

InteractionReport annulus_interaction_bound(int u, int v, int dim, const LorentzParams& params) {
  if (!(params.p > 1.0) || std::isinf(params.p) || !(params.r >= 1.0))
    throw DomainError("annulus interaction bound needs 1 < p < inf and 1 <= r <= inf");
  if (u < kFirstAnnulus || v < kFirstAnnulus) throw DomainError("annulus index below -1");
  if (dim < 1) throw DomainError("dimension must be positive");
  const auto dual = params.conjugate();
  InteractionReport rep;
  rep.log2_lhs = -static_cast<double>(u) * dim + log2_indicator_norm(dim, u, params.p, params.r) +
                 log2_indicator_norm(dim, v, dual.p, dual.r);
  rep.rhs_exponent = (dim / dual.p) * (v - u);
  rep.constant = std::exp2(rep.log2_lhs - rep.rhs_exponent);
  return rep;
}

InteractionScan annulus_interaction_scan(int dim, const LorentzParams& params, int lo, int hi) {
  InteractionScan scan;
  scan.min_ratio = kInf;
  for (int u = lo; u <= hi; ++u) {
    for (int v = lo; v <= hi; ++v) {
      const auto rep = annulus_interaction_bound(u, v, dim, params);
      if (rep.constant > scan.constant) {
        scan.constant = rep.constant;
        scan.worst_u = u;
        scan.worst_v = v;
      }
      scan.min_ratio = std::min(scan.min_ratio, rep.constant);
    }
  }
  scan.finite = std::isfinite(scan.constant) && scan.constant > 0.0;
  return scan;
}

// ---------------------------------------------------------------------------
// boundedness

std::string sweep_gate(OperatorKind op, const HerzParams& params) {
  const double p = params.p;
  if (!(p > 1.0) || std::isinf(p)) return "needs 1 < p < inf";
  if (!(params.q >= 1.0)) return "needs q >= 1";
  if (!(params.r >= 1.0)) return "needs r >= 1";
  const double pc = conjugate_exponent(p);
  if (!(params.a > -1.0 / p && params.a < 1.0 / pc)) return "a outside (-N/p, N/p')";
  if (op == OperatorKind::hilbert && std::isinf(params.r))
    return "Calderon-Zygmund bound needs r < inf (no L^{p,inf} bound for this route)";
  return {};
}

std::vector<HerzParams> sweep_grid(std::span<const double> ps, std::span<const double> qs,
                                   std::span<const double> rs) {
  std::vector<HerzParams> grid;
  for (double p : ps) {
    const double unit = 1.0 / std::max(p, conjugate_exponent(p));
    for (int k = -2; k <= 2; ++k)
      for (double q : qs)
        for (double r : rs) grid.emplace_back(0.2 * k * unit, p, q, r);
  }
  return grid;
}

BoundednessReport boundedness_sweep(OperatorKind op, std::span<const GridFunction1D> corpus,
                                    std::span<const HerzParams> grid, double drift_tol) {
  struct Prepared {
    AnnulusProfile f, Tf, f2, Tf2;
  };
  std::vector<Prepared> prep;
  for (const auto& f : corpus) {
    const auto fr = f.refined();
    prep.push_back({f.profile(), image_profile(op, f), fr.profile(), image_profile(op, fr)});
  }

  BoundednessReport rep;
  rep.op = op;
  rep.drift_tol = drift_tol;
  rep.pass = true;
  for (const auto& params : grid) {
    SweepCell cell;
    cell.params = params;
    cell.excluded = sweep_gate(op, params);
    cell.in_range = cell.excluded.empty();
    if (!cell.in_range) {
      rep.cells.push_back(cell);
      continue;
    }
    bool finite = true;
    for (const auto& pr : prep) {
      const double nf = hl_norm(pr.f, params);
      if (nf == 0.0) continue;
      const double r1 = hl_norm(pr.Tf, params) / nf;
      const double r2 = hl_norm(pr.Tf2, params) / hl_norm(pr.f2, params);
      finite = finite && std::isfinite(r1) && std::isfinite(r2);
      cell.max_ratio = std::max(cell.max_ratio, r1);
      cell.max_ratio_refined = std::max(cell.max_ratio_refined, r2);
      cell.drift = std::max(cell.drift, std::abs(r2 - r1) / r1);
    }
    cell.pass = finite && cell.drift <= drift_tol;
    rep.pass = rep.pass && cell.pass;
    rep.cells.push_back(cell);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// out-of-range witness

namespace {

double witness_ratio(const HerzParams& params, double half_width, int v) {
  const auto cells = static_cast<std::size_t>(std::lround(8.0 * half_width));  // h = 1/4
  const double lo = annulus_inner_radius(v), hi = annulus_outer_radius(v);
  const auto f = GridFunction1D::sampled(half_width, cells, [&](double x) {
    const double ax = std::abs(x);
    return (ax >= lo && ax < hi) ? 1.0 : 0.0;
  });
  return hl_norm(maximal_operator(f).profile(), params) / hl_norm(f.profile(), params);
}

}  // namespace

WitnessReport out_of_range_witness(const HerzParams& params, int V, int window_steps) {
  if (!(params.p > 1.0) || std::isinf(params.p)) throw DomainError("witness needs 1 < p < inf");
  if (!(params.a >= 1.0 / conjugate_exponent(params.p)))
    throw DomainError("witness family probes a >= N/p' only");
  if (V < 1 || V > 12) throw DomainError("witness family size must lie in [1, 12]");
  WitnessReport rep;
  rep.half_width = std::ldexp(1.0, V + 2);
  for (int v = 1; v <= V; ++v) rep.ratios_by_v.push_back(witness_ratio(params, rep.half_width, v));
  rep.applicable = V >= 2;
  rep.growing = rep.applicable;
  for (std::size_t i = 1; i < rep.ratios_by_v.size(); ++i)
    rep.growing = rep.growing && rep.ratios_by_v[i] > rep.ratios_by_v[i - 1];

  for (int k = 0; k < window_steps; ++k)
    rep.ratios_by_window.push_back(witness_ratio(params, std::ldexp(1.0, 3 + k), 1));
  rep.window_growing = rep.ratios_by_window.size() >= 2;
  for (std::size_t i = 1; i < rep.ratios_by_window.size(); ++i)
    rep.window_growing = rep.window_growing && rep.ratios_by_window[i] > rep.ratios_by_window[i - 1];
  return rep;
}

InterpolatedBoundednessReport interpolated_boundedness_check(OperatorKind op, double p, double q,
                                                             double a,
                                                             std::span<const GridFunction1D> corpus) {
  if (op != OperatorKind::hilbert) throw DomainError("interpolated boundedness needs a linear operator");
  if (!(p > 1.0) || std::isinf(p)) throw DomainError("needs 1 < p < inf");
  if (!(q > 0.0) || std::isinf(q)) throw DomainError("needs 0 < q < inf");
  if (!(a > -1.0 / p && a < 1.0 / conjugate_exponent(p))) throw DomainError("a outside (-N/p, N/p')");

  const HerzParams params(a, p, q, q);
  InterpolatedBoundednessReport rep;
  bool finite = true;
  for (const auto& f : corpus) {
    const auto pf = f.profile();
    const double nf = hl_norm(pf, params);
    if (nf == 0.0) continue;
    const double ratio = hl_norm(image_profile(op, f), params) / nf;
    rep.ratios.push_back(ratio);
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    finite = finite && std::isfinite(ratio);
  }
  rep.pass = finite && !rep.ratios.empty();
  if (q >= 1.0) {
    const HerzParams cell[] = {params};
    const auto sweep = boundedness_sweep(op, corpus, cell);
    rep.sweep_ratio = sweep.cells.front().max_ratio;
    rep.gap = std::abs(rep.sweep_ratio - rep.max_ratio) / rep.max_ratio;
    rep.pass = rep.pass && rep.gap <= 1e-6;
  }
  return rep;
}

}  // namespace lhz
