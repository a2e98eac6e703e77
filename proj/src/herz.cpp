#include "lhz/herz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lhz {

double annulus_inner_radius(int u) { return u <= kFirstAnnulus ? 0.0 : std::ldexp(1.0, u - 1); }

double annulus_outer_radius(int u) { return std::ldexp(1.0, u); }

double annulus_measure(int dim, int u) {
  if (u < kFirstAnnulus) throw DomainError("annulus index below -1");
  return shell_measure(dim, annulus_inner_radius(u), annulus_outer_radius(u));
}

int annulus_index(double rho) {
  if (!(rho >= 0.0)) throw DomainError("radius must be nonnegative");
  if (rho < 0.5) return kFirstAnnulus;
  int e = 0;
  std::frexp(rho, &e);  // rho in [2^{e-1}, 2^e)
  return e;
}

HerzParams::HerzParams(double a_, double p_, double q_, double r_) : a(a_), p(p_), q(q_), r(r_) {
  if (!std::isfinite(a)) throw DomainError("smoothness weight a must be finite");
  if (!(q > 0.0)) throw DomainError("outer exponent q must be positive");
  (void)LorentzParams(p, r);
}

HerzParams HerzParams::dual() const {
  return {-a, conjugate_exponent(p), conjugate_exponent(q), conjugate_exponent(r)};
}

std::vector<AnnulusPiece> annuli_decompose(const RadialStepFunction& f) {
  std::vector<AnnulusPiece> out;
  if (f.is_zero()) return out;
  const double outer = f.outer_radius();
  for (int u = kFirstAnnulus; annulus_inner_radius(u) < outer; ++u) {
    auto piece = f.restricted(annulus_inner_radius(u), annulus_outer_radius(u));
    if (!piece.is_zero()) out.push_back({u, std::move(piece)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// AnnulusProfile

AnnulusProfile::AnnulusProfile(const RadialStepFunction& f) {
  std::vector<Entry> entries;
  const auto& rho = f.breakpoints();
  for (std::size_t i = 0; i < f.shell_count(); ++i) {
    const double v = f.values()[i];
    if (v == 0.0) continue;
    for (int u = annulus_index(rho[i]); annulus_inner_radius(u) < rho[i + 1]; ++u) {
      const double lo = std::max(rho[i], annulus_inner_radius(u));
      const double hi = std::min(rho[i + 1], annulus_outer_radius(u));
      if (hi > lo) entries.push_back({u, {shell_measure(f.dim(), lo, hi), v}});
    }
  }
  *this = from_entries(entries);
}

AnnulusProfile AnnulusProfile::from_entries(std::span<const Entry> entries) {
  int top = kFirstAnnulus - 1;
  for (const auto& e : entries) {
    if (e.u < kFirstAnnulus) throw DomainError("annulus index below -1");
    if (e.piece.value != 0.0 && e.piece.measure > 0.0) top = std::max(top, e.u);
  }
  std::vector<std::vector<MeasuredValue>> buckets(static_cast<std::size_t>(top - kFirstAnnulus + 1));
  for (const auto& e : entries) {
    if (e.u <= top) buckets[static_cast<std::size_t>(e.u - kFirstAnnulus)].push_back(e.piece);
  }
  AnnulusProfile out;
  out.annuli_.reserve(buckets.size());
  for (const auto& b : buckets) out.annuli_.push_back(StepRearrangement::from_pieces(b));
  return out;
}

const StepRearrangement& AnnulusProfile::operator[](int u) const {
  static const StepRearrangement empty;
  const int i = u - kFirstAnnulus;
  if (i < 0 || i >= static_cast<int>(annuli_.size())) return empty;
  return annuli_[static_cast<std::size_t>(i)];
}

bool AnnulusProfile::is_zero() const {
  return std::all_of(annuli_.begin(), annuli_.end(), [](const auto& g) { return g.is_zero(); });
}

WeightedSeq AnnulusProfile::scores(const LorentzParams& params, bool starred) const {
  std::vector<double> y(annuli_.size(), 0.0);
  for (std::size_t i = 0; i < annuli_.size(); ++i) {
    y[i] = starred ? lorentz_star_norm(annuli_[i], params) : lorentz_norm(annuli_[i], params);
  }
  return WeightedSeq(std::move(y));
}

double hl_norm(const AnnulusProfile& profile, const HerzParams& params, bool starred) {
  const auto lp = params.lorentz();
  if (starred && !lp.starred_normed())
    throw DomainError("starred Lorentz-Herz norm outside the normed Lorentz range");
  return ell_norm(profile.scores(lp, starred), params.a, params.q);
}

double hl_norm(const RadialStepFunction& f, const HerzParams& params, bool starred) {
  return hl_norm(AnnulusProfile(f), params, starred);
}

QuasiConstantReport quasi_constant_probe(std::span<const RadialStepFunction> corpus,
                                         const HerzParams& params, bool starred) {
  if (corpus.empty()) throw DomainError("quasi-constant probe needs a nonempty corpus");
  std::vector<double> norms;
  norms.reserve(corpus.size());
  for (const auto& f : corpus) norms.push_back(hl_norm(f, params, starred));
  QuasiConstantReport rep;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (std::size_t j = i; j < corpus.size(); ++j) {
      const double denom = norms[i] + norms[j];
      if (denom == 0.0) continue;
      const double ratio = hl_norm(corpus[i] + corpus[j], params, starred) / denom;
      if (ratio > rep.max_ratio) rep = {ratio, i, j};
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Banach function space conditions

double AnnulusMeasureSequence::operator[](int u) const {
  if (u < kFirstAnnulus) return 0.0;
  const auto i = static_cast<std::size_t>(u - kFirstAnnulus);
  double m = i < head.size() ? head[i] : 0.0;
  if (tail && u >= tail->start && u > 0) m += tail->coefficient / std::pow(u, tail->power);
  return m;
}

void AnnulusMeasureSequence::validate(int upto) const {
  for (int u = kFirstAnnulus; u <= upto; ++u) {
    const double m = (*this)[u];
    if (!(m >= 0.0)) throw DomainError("annulus measures must be nonnegative");
    const double cap = annulus_measure(dim, u);
    if (m > cap * (1.0 + 1e-12))
      throw DomainError("mu(A_u cap E) exceeds mu(A_u) at u = " + std::to_string(u));
  }
}

std::string to_string(GrowthVerdict v) {
  switch (v) {
    case GrowthVerdict::finite: return "finite";
    case GrowthVerdict::growing: return "growing";
    case GrowthVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

// Accumulate terms into running sums (or sups) and judge the last block.
GrowthVerdict accumulate(const std::vector<double>& terms, bool sup_form, bool finite_support,
                         std::vector<double>& partial) {
  partial.clear();
  double acc = 0.0;
  for (double t : terms) {
    acc = sup_form ? std::max(acc, t) : acc + t;
    partial.push_back(acc);
  }
  if (finite_support) return GrowthVerdict::finite;
  const std::size_t n = terms.size();
  if (n >= 2 && terms[n - 1] > terms[n - 2]) return GrowthVerdict::growing;
  return GrowthVerdict::inconclusive;
}

double power_or_indicator(double m, double e) {
  if (m == 0.0) return 0.0;
  return std::pow(m, e);
}

}  // namespace

BfsReport bfs_condition_check(const AnnulusMeasureSequence& m, const HerzParams& params, int cutoff) {
  if (!(params.p > 1.0) || std::isinf(params.p) || !(params.q >= 1.0) || !(params.r >= 1.0))
    throw DomainError("Banach function space conditions need 1 < p < inf and 1 <= q, r <= inf");
  if (cutoff < kFirstAnnulus) throw DomainError("cutoff below -1");
  m.validate(cutoff);

  const double p = params.p, q = params.q, a = params.a;
  const double pc = conjugate_exponent(p), qc = conjugate_exponent(q);
  std::vector<double> ta, tb;
  for (int u = kFirstAnnulus; u <= cutoff; ++u) {
    const double mu = m[u];
    ta.push_back(std::isinf(q) ? std::exp2(u * a) * power_or_indicator(mu, 1.0 / p)
                               : std::exp2(u * a * q) * power_or_indicator(mu, q / p));
    tb.push_back(std::isinf(qc) ? std::exp2(-u * a) * power_or_indicator(mu, 1.0 / pc)
                                : std::exp2(-u * a * qc) * power_or_indicator(mu, qc / pc));
  }
  const bool finite =
      m.finitely_supported() && static_cast<int>(m.head.size()) + kFirstAnnulus - 1 <= cutoff;

  BfsReport rep;
  rep.cutoff = cutoff;
  rep.verdict_a = accumulate(ta, std::isinf(q), finite, rep.partial_a);
  rep.verdict_b = accumulate(tb, std::isinf(qc), finite, rep.partial_b);
  if (rep.verdict_a == GrowthVerdict::growing || rep.verdict_b == GrowthVerdict::growing)
    rep.verdict = GrowthVerdict::growing;
  else if (finite)
    rep.verdict = GrowthVerdict::finite;
  else
    rep.verdict = GrowthVerdict::inconclusive;
  return rep;
}

RadialStepFunction divergence_example_set(int cutoff) {
  std::vector<double> rho{0.0};
  std::vector<double> vals;
  for (int u = 1; u <= cutoff; ++u) {
    const double outer = std::ldexp(1.0, u);
    const double inner = outer - 1.0 / (static_cast<double>(u) * u);
    rho.push_back(inner);
    vals.push_back(0.0);
    rho.push_back(outer);
    vals.push_back(1.0);
  }
  return RadialStepFunction(1, std::move(rho), std::move(vals));
}

DivergenceExampleReport divergence_example(const HerzParams& params, int cutoff) {
  const double p = params.p, q = params.q, r = params.r, a = params.a;
  if (std::isinf(p) || std::isinf(q) || std::isinf(r))
    throw DomainError("the divergence example is stated for 0 < p, q, r < inf");
  if (cutoff < 1) throw DomainError("cutoff must be at least 1");

  DivergenceExampleReport rep;
  double acc = 0.0;
  for (int u = 1; u <= cutoff; ++u) {
    const double m = 2.0 / (static_cast<double>(u) * u);
    const double term = std::exp2(u * a * q) * std::pow(p / r, q / r) * std::pow(m, q / p);
    rep.terms.push_back(term);
    acc += term;
    rep.partial_sums.push_back(acc);
    rep.measure_partial += m;
  }
  rep.measure_total = std::numbers::pi * std::numbers::pi / 3.0;

  // Beyond ~2^20 the breakpoint 2^u - 1/u^2 is no longer resolved in double.
  const int exact_upto = std::min(cutoff, 20);
  for (int u = 1; u <= exact_upto; ++u) {
    rep.norm_partial.push_back(std::pow(hl_norm(divergence_example_set(u), params), q));
  }

  // term ratio 2^{aq} (u/(u+1))^{2q/p} increases to 2^{aq}; it exceeds 1 once
  // u/(u+1) > x = 2^{-ap/2}.
  if (a > 0.0) {
    const double x = std::exp2(-a * p / 2.0);
    rep.increasing_from = static_cast<int>(std::floor(x / (1.0 - x))) + 1;
    rep.eventually_increasing = true;
    for (int u = std::max(rep.increasing_from, 1); u < cutoff; ++u) {
      if (!(rep.terms[static_cast<std::size_t>(u)] > rep.terms[static_cast<std::size_t>(u - 1)]))
        rep.eventually_increasing = false;
    }
  }
  const auto n = rep.terms.size();
  rep.verdict = (rep.eventually_increasing && (n < 2 || rep.terms[n - 1] > rep.terms[n - 2]))
                    ? GrowthVerdict::growing
                    : GrowthVerdict::inconclusive;
  return rep;
}

// ---------------------------------------------------------------------------

HolderReport hl_holder_check(const RadialStepFunction& f, const RadialStepFunction& g,
                             const HerzParams& params) {
  if (!(params.p > 1.0) || std::isinf(params.p) || !(params.q >= 1.0) || !(params.r >= 1.0))
    throw DomainError("Lorentz-Herz Hoelder inequality needs 1 < p < inf and 1 <= q, r <= inf");
  HolderReport rep;
  rep.integral = (f * g).integral_abs();
  rep.bound = hl_norm(f, params) * hl_norm(g, params.dual());
  rep.ratio = rep.bound > 0.0 ? rep.integral / rep.bound : 0.0;
  rep.pass = rep.integral <= rep.bound * (1.0 + 1e-12);
  return rep;
}

namespace {

bool same(double x, double y) { return x == y || (std::isinf(x) && std::isinf(y)); }

double inv(double x) { return std::isinf(x) ? 0.0 : 1.0 / x; }

}  // namespace

// Bounds used per item:
//  A  ||.||_{p,r2} <= (r1/p)^{1/r1 - 1/r2} ||.||_{p,r1} on every annulus;
//  B  2^{u a2} <= 2^{a1 - a2} 2^{u a1} for u >= -1, and <= 2^{u a1} for u >= 0;
//  C  ||g||_{p1,r1} <= mu(A_u)^{1/p1-1/p2} / (r1/p1 - r1/p2)^{1/r1} ||g||_{p2,inf}
//     and ||g||_{p2,inf} <= (r2/p2)^{1/r2} ||g||_{p2,r2};
//  D  l^{q2} norm dominates l^{q1} norm for q2 <= q1.
EmbeddingReport embedding_check(EmbeddingVariant variant, const RadialStepFunction& f,
                                const HerzParams& source, const HerzParams& target) {
  const AnnulusProfile profile(f);
  EmbeddingReport rep;
  rep.lhs = hl_norm(profile, target);
  rep.source = hl_norm(profile, source);
  constexpr double slack = 1e-12;

  switch (variant) {
    case EmbeddingVariant::A: {
      if (!same(source.a, target.a) || !same(source.p, target.p) || !same(source.q, target.q) ||
          !(source.r <= target.r) || std::isinf(source.p))
        throw DomainError("embedding (A) needs equal a, p < inf, q and r_source <= r_target");
      const double k = std::pow(source.r / source.p, inv(source.r) - inv(target.r));
      rep.rhs = k * rep.source;
      break;
    }
    case EmbeddingVariant::B: {
      if (!same(source.p, target.p) || !same(source.q, target.q) || !same(source.r, target.r) ||
          !(target.a <= source.a))
        throw DomainError("embedding (B) needs equal p, q, r and a_target <= a_source");
      const bool centre = !profile[kFirstAnnulus].is_zero();
      rep.rhs = (centre ? std::exp2(source.a - target.a) : 1.0) * rep.source;
      break;
    }
    case EmbeddingVariant::C: {
      const double p1 = target.p, p2 = source.p, r1 = target.r, r2 = source.r;
      if (!same(source.a, target.a) || !same(source.q, target.q) || !(p1 < p2) || std::isinf(p2))
        throw DomainError("embedding (C) needs equal a, q and p_target < p_source < inf");
      const double gap = 1.0 / p1 - 1.0 / p2;
      const double denom = std::isinf(r1) ? 1.0 : std::pow(r1 * gap, 1.0 / r1);
      const double weak_to_r2 = std::isinf(r2) ? 1.0 : std::pow(r2 / p2, 1.0 / r2);
      const auto weak = profile.scores({p2, kInf});
      WeightedSeq scaled;
      for (int u = kFirstAnnulus; u < weak.end_index(); ++u) {
        const double factor = std::pow(annulus_measure(f.dim(), u), gap) / denom;
        scaled.set(u, factor * weak[u]);
      }
      rep.weak_path = ell_norm(scaled, target.a, target.q);
      const auto strong = profile.scores({p2, r2});
      WeightedSeq scaled_strong;
      for (int u = kFirstAnnulus; u < strong.end_index(); ++u) {
        const double factor = std::pow(annulus_measure(f.dim(), u), gap) / denom;
        scaled_strong.set(u, factor * weak_to_r2 * strong[u]);
      }
      rep.rhs = ell_norm(scaled_strong, target.a, target.q);
      break;
    }
    case EmbeddingVariant::D: {
      if (!same(source.a, target.a) || !same(source.p, target.p) || !same(source.r, target.r) ||
          !(source.q <= target.q))
        throw DomainError("embedding (D) needs equal a, p, r and q_source <= q_target");
      rep.rhs = rep.source;
      break;
    }
  }
  rep.constant = rep.source > 0.0 ? rep.lhs / rep.source : 0.0;
  const bool finite = std::isfinite(rep.lhs) && std::isfinite(rep.source);
  rep.pass = finite && rep.lhs <= rep.rhs * (1.0 + slack);
  if (variant == EmbeddingVariant::C)
    rep.pass = rep.pass && rep.lhs <= rep.weak_path * (1.0 + slack) &&
               rep.weak_path <= rep.rhs * (1.0 + slack);
  return rep;
}

}  // namespace lhz
