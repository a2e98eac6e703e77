#include <algorithm>
#include <cmath>
#include <sstream>
#include <functional>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "lhz/interp.hpp"

namespace lhz {

InterpolationResult interpolation_norm(const KCurve& curve, const InterpolationParams& params) {
  const double theta = params.theta, q = params.q;
  const bool sup_form = std::isinf(q);
  if (sup_form ? !(theta >= 0.0 && theta <= 1.0) : !(theta > 0.0 && theta < 1.0))
    throw DomainError("theta must lie in (0,1), or in [0,1] when q = inf");
  if (!(q > 0.0)) throw DomainError("interpolation exponent q must be positive");
  if (params.octaves < 1 || params.per_octave < 4)
    throw DomainError("log grid needs at least one octave and four nodes per octave");

  InterpolationResult res;
  if (!(curve.norm0 > 0.0) || !(curve.norm1 > 0.0)) return res;

  const double centre = std::round(std::log2(curve.norm0 / curve.norm1));
  const double lo = centre - params.octaves, hi = centre + params.octaves;
  res.window_lo = lo;
  res.window_hi = hi;

  // panel edges in log2 t: uniform, plus the kinks of K
  const int panels_per_octave = params.per_octave / 4;
  const double width = 1.0 / (sup_form ? params.per_octave : panels_per_octave);
  std::vector<double> edges;
  const int n = static_cast<int>(std::lround((hi - lo) / width));
  for (int i = 0; i <= n; ++i) edges.push_back(lo + width * i);
  for (double t : curve.kinks) {
    const double s = std::log2(t);
    if (s > lo && s < hi) edges.push_back(s);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  auto kval = [&](double s) {
    const auto r = curve.k(std::exp2(s));
    res.converged = res.converged && r.converged;
    return r.value;
  };
  const double tmin = std::exp2(lo), tmax = std::exp2(hi);
  const double kmin = kval(lo), kmax = kval(hi);

  if (sup_form) {
    std::vector<double> k;
    for (double s : edges) k.push_back(kval(s));
    double best = 0.0, bound = 0.0;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      best = std::max(best, std::exp2(-theta * edges[i]) * k[i]);
      if (i + 1 < edges.size()) bound = std::max(bound, std::exp2(-theta * edges[i]) * k[i + 1]);
    }
    const double tail_lo = std::pow(tmin, 1.0 - theta) * curve.norm1;
    const double tail_hi = theta > 0.0 ? std::pow(tmax, -theta) * curve.norm0 : curve.norm0;
    res.value = curve.scale * best;
    res.lower = res.value;
    res.upper = curve.scale * std::max({bound, tail_lo, tail_hi, best});
    return res;
  }

  using boost::math::quadrature::gauss;
  auto integrand = [&](double s) { return std::pow(std::exp2(-theta * s) * kval(s), q); };
  double interior = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    interior += gauss<double, 4>::integrate(integrand, edges[i], edges[i + 1]);
  interior *= std::numbers::ln2;

  const double left = std::pow(tmin, (1.0 - theta) * q) / ((1.0 - theta) * q);
  const double right = std::pow(tmax, -theta * q) / (theta * q);
  const double low_tail = std::pow(kmin / tmin, q) * left + std::pow(kmax, q) * right;
  const double high_tail = std::pow(curve.norm1, q) * left + std::pow(curve.norm0, q) * right;

  res.lower = curve.scale * std::pow(interior + low_tail, 1.0 / q);
  res.upper = curve.scale * std::pow(interior + high_tail, 1.0 / q);
  res.value = curve.scale * std::pow(interior + 0.5 * (low_tail + high_tail), 1.0 / q);
  return res;
}

// ---------------------------------------------------------------------------
// retract / coretract

WeightedSeq retract_L(const RadialStepFunction& f, const LorentzParams& base) {
  return AnnulusProfile(f).scores(base);
}

RadialStepFunction coretract_M(std::span<const AnnulusPiece> pieces) {
  RadialStepFunction out = RadialStepFunction::zero(pieces.empty() ? 1 : pieces.front().f.dim());
  for (const auto& piece : pieces) {
    const auto inside = piece.f.restricted(annulus_inner_radius(piece.u), annulus_outer_radius(piece.u));
    if (!(inside == piece.f))
      throw DomainError("coretraction piece reaches outside A_" + std::to_string(piece.u));
    out = out + piece.f;
  }
  return out;
}

RadialStepFunction coretract_M(const WeightedSeq& y, std::span<const AnnulusPiece> witnesses,
                               const LorentzParams& base) {
  std::vector<AnnulusPiece> scaled;
  for (const auto& w : witnesses) {
    const double target = y[w.u];
    if (target == 0.0) continue;
    const double n = lorentz_norm(w.f, base);
    if (!(n > 0.0)) throw DomainError("witness on A_" + std::to_string(w.u) + " vanishes");
    scaled.push_back({w.u, w.f.scaled(target / n)});
  }
  for (int u = kFirstAnnulus; u < y.end_index(); ++u) {
    if (y[u] == 0.0) continue;
    const bool covered = std::any_of(witnesses.begin(), witnesses.end(),
                                     [u](const AnnulusPiece& w) { return w.u == u; });
    if (!covered) throw DomainError("no witness for A_" + std::to_string(u));
  }
  return coretract_M(scaled);
}

// ---------------------------------------------------------------------------
// suites

namespace {

double harmonic_mix(double theta, double q0, double q1) {
  // 1/q = (1-theta)/q0 + theta/q1
  const double inv = (1.0 - theta) / q0 + theta / q1;
  return inv == 0.0 ? kInf : 1.0 / inv;
}

bool is_sequence_suite(const std::string& s) { return s == "seq-a" || s == "seq-q"; }

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

InterpSuiteConfig validated(InterpSuiteConfig c) {
  static const std::vector<std::string> known{"seq-a", "seq-q", "lorentz", "hl-1", "hl-2", "hl-3", "hl-4"};
  if (std::find(known.begin(), known.end(), c.suite) == known.end())
    throw DomainError("unknown interpolation suite '" + c.suite + "'");
  if (!(c.theta > 0.0 && c.theta < 1.0)) throw DomainError("theta must lie in (0,1)");
  if (!(c.stability >= 1.0)) throw DomainError("stability factor must be >= 1");
  const std::string& s = c.suite;
  if (s == "seq-a" || s == "hl-1") {
    if (c.a0 == c.a1) throw DomainError(s + " needs a0 != a1");
    if (!(c.q >= 1.0)) throw DomainError(s + " needs q >= 1");
  }
  if (s == "seq-q" || s == "hl-2") {
    if (c.a0 != c.a1) throw DomainError(s + " needs a0 = a1");
    c.q = harmonic_mix(c.theta, c.q0, c.q1);
  }
  if (s == "lorentz") {
    if (!(c.q >= 1.0)) throw DomainError("lorentz suite needs q >= 1");
  }
  if (s == "hl-3") {
    c.p = 1.0 / (1.0 - c.theta);
    c.q0 = c.q1 = c.q = c.r = c.p;
  }
  if (s == "hl-4") {
    if (std::isinf(c.q0) || std::isinf(c.q1)) throw DomainError("hl-4 needs finite q0, q1");
    c.p = 1.0 / (1.0 - c.theta);
    c.q = c.r = harmonic_mix(c.theta, c.q0, c.q1);
  }
  if (s == "hl-1" || s == "hl-2") (void)LorentzParams(c.p, c.r);
  (void)SequenceCouple(c.a0, c.q0, c.a1, c.q1);
  return c;
}

namespace {

InterpSuiteReport finish(InterpSuiteReport rep, const InterpSuiteConfig& c) {
  rep.band_lo = kInf;
  rep.band_hi = 0.0;
  bool finite = !rep.checks.empty();
  for (const auto& ch : rep.checks) {
    rep.band_lo = std::min(rep.band_lo, ch.ratio);
    rep.band_hi = std::max(rep.band_hi, ch.ratio);
    rep.homogeneity = std::max(rep.homogeneity, std::abs(ch.ratio_scaled - ch.ratio) / ch.ratio);
    finite = finite && std::isfinite(ch.ratio) && ch.ratio > 0.0;
  }
  rep.pass = finite && rep.band_hi <= c.stability * rep.band_lo && rep.homogeneity <= c.homogeneity_tol;
  return rep;
}

InterpCheck make_check(std::string label, const InterpolationResult& v, const InterpolationResult& v2,
                       double target, double target2) {
  InterpCheck ch;
  ch.label = std::move(label);
  ch.value = v.value;
  ch.target = target;
  ch.ratio = v.value / target;
  ch.ratio_scaled = v2.value / target2;
  ch.bracket = v.value > 0.0 ? (v.upper - v.lower) / v.value : 0.0;
  return ch;
}

}  // namespace

InterpSuiteReport verify_interpolation(const InterpSuiteConfig& config,
                                       std::span<const WeightedSeq> sequences) {
  const auto c = validated(config);
  if (!is_sequence_suite(c.suite)) throw DomainError(c.suite + " runs on functions, not sequences");
  InterpSuiteReport rep;
  rep.suite = c.suite;
  rep.theta = c.theta;
  rep.q = c.q;
  rep.a = (1.0 - c.theta) * c.a0 + c.theta * c.a1;
  rep.target = "l_q^a with a = " + fmt(rep.a) + ", q = " + fmt(rep.q);
  const SequenceCouple couple(c.a0, c.q0, c.a1, c.q1);
  InterpolationParams grid = c.grid;
  grid.theta = c.theta;
  grid.q = c.q;
  std::size_t i = 0;
  for (const auto& y : sequences) {
    if (y.is_zero()) continue;
    const auto y2 = y.scaled(2.0);
    const auto v = interpolation_norm(sequence_curve(y, couple), grid);
    const auto v2 = interpolation_norm(sequence_curve(y2, couple), grid);
    rep.checks.push_back(make_check("seq[" + std::to_string(i++) + "]", v, v2, ell_norm(y, rep.a, rep.q),
                                    ell_norm(y2, rep.a, rep.q)));
  }
  return finish(std::move(rep), c);
}

InterpSuiteReport verify_interpolation(const InterpSuiteConfig& config,
                                       std::span<const RadialStepFunction> functions) {
  const auto c = validated(config);
  if (is_sequence_suite(c.suite)) throw DomainError(c.suite + " runs on sequences, not functions");
  InterpSuiteReport rep;
  rep.suite = c.suite;
  rep.theta = c.theta;
  rep.q = c.q;
  rep.a = (1.0 - c.theta) * c.a0 + c.theta * c.a1;
  InterpolationParams grid = c.grid;
  grid.theta = c.theta;
  grid.q = c.q;
  const SequenceCouple couple(c.a0, c.q0, c.a1, c.q1);

  std::function<KCurve(const RadialStepFunction&)> curve;
  std::function<double(const RadialStepFunction&)> target;
  if (c.suite == "lorentz") {
    const LorentzParams lp(1.0 / (1.0 - c.theta), c.q);
    rep.a = 0.0;
    rep.target = "starred L^{p,q}, p = " + fmt(lp.p);
    curve = [](const RadialStepFunction& f) { return l1_linf_curve(f); };
    target = [lp](const RadialStepFunction& f) { return lorentz_star_norm(f, lp); };
  } else if (c.suite == "hl-1" || c.suite == "hl-2") {
    const LorentzParams base(c.p, c.r);
    const HerzParams hp(rep.a, c.p, c.q, c.r);
    rep.target = "HL with a = " + fmt(rep.a) + ", p = " + fmt(c.p) + ", q = " + fmt(c.q) + ", r = " + fmt(c.r);
    curve = [base, couple](const RadialStepFunction& f) { return sequence_curve(retract_L(f, base), couple); };
    target = [hp](const RadialStepFunction& f) { return hl_norm(f, hp); };
  } else {
    const HerzParams hp(rep.a, c.p, c.q, c.r);
    const bool starred = c.suite == "hl-4";
    rep.target = std::string(starred ? "starred " : "") + "HL with a = " + fmt(rep.a) + ", p = " + fmt(c.p) +
                 ", q = r = " + fmt(c.q);
    curve = [couple](const RadialStepFunction& f) { return herz_l1_linf_curve(f, couple); };
    target = [hp, starred](const RadialStepFunction& f) { return hl_norm(f, hp, starred); };
  }

  std::size_t i = 0;
  for (const auto& f : functions) {
    if (f.is_zero()) continue;
    const auto f2 = f.scaled(2.0);
    const auto v = interpolation_norm(curve(f), grid);
    const auto v2 = interpolation_norm(curve(f2), grid);
    rep.checks.push_back(make_check("f[" + std::to_string(i++) + "]", v, v2, target(f), target(f2)));
  }
  return finish(std::move(rep), c);
}

}  // namespace lhz
