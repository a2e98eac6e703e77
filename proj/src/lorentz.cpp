#include "lhz/lorentz.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace lhz {

double conjugate_exponent(double p) {
  if (!(p >= 1.0)) throw DomainError("conjugate exponent needs p >= 1");
  if (p == 1.0) return kInf;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

LorentzParams::LorentzParams(double p_, double r_) : p(p_), r(r_) {
  if (!(p > 0.0) || !(r > 0.0)) throw DomainError("Lorentz exponents must be positive");
  if (std::isinf(p) && !std::isinf(r))
    throw DomainError("L^{inf,r} with r < inf contains only the zero function");
}

bool LorentzParams::starred_admissible() const {
  if (std::isinf(p)) return std::isinf(r);
  return p > 1.0 && r >= 1.0;
}

bool LorentzParams::starred_normed() const { return starred_admissible() || (p == 1.0 && r == 1.0); }

double lorentz_norm(const StepRearrangement& g, const LorentzParams& params) {
  if (g.is_zero()) return 0.0;
  const auto& t = g.knots();
  const auto& w = g.levels();
  if (std::isinf(params.p)) return g.sup();
  if (std::isinf(params.r)) {
    double best = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j)
      best = std::max(best, w[j] * std::pow(t[j + 1], 1.0 / params.p));
    return best;
  }
  const double e = params.r / params.p;
  double sum = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j)
    sum += std::pow(w[j], params.r) * (std::pow(t[j + 1], e) - std::pow(t[j], e));
  return std::pow(sum / e, 1.0 / params.r);
}

double lorentz_norm(const RadialStepFunction& f, const LorentzParams& params) {
  return lorentz_norm(rearrangement(f), params);
}

double indicator_lorentz_norm(double measure, const LorentzParams& params) {
  if (!(measure > 0.0)) return 0.0;
  if (std::isinf(params.p)) return 1.0;
  const double scale = std::isinf(params.r) ? 1.0 : std::pow(params.p / params.r, 1.0 / params.r);
  return scale * std::pow(measure, 1.0 / params.p);
}

namespace {

// sup_t t^{1/p} f**(t)
double star_sup(const StepRearrangement& g, double p) {
  const auto& t = g.knots();
  const auto& w = g.levels();
  if (std::isinf(p)) return g.sup();
  const double e = 1.0 / p;
  // first segment: f** = w_0, increasing in t
  double best = w[0] * std::pow(t[1], e);
  for (std::size_t j = 1; j < w.size(); ++j) {
    // on [t_j, t_{j+1}): t^{e-1} (A + w_j t), A = C_j - w_j t_j >= 0
    const double a = g.mass_to_knot(j) - w[j] * t[j];
    auto value = [&](double s) { return std::pow(s, e - 1.0) * (a + w[j] * s); };
    best = std::max({best, value(t[j]), value(t[j + 1])});
    if (e < 1.0) {
      const double crit = (1.0 - e) * a / (e * w[j]);
      if (crit > t[j] && crit < t[j + 1]) best = std::max(best, value(crit));
    }
  }
  // tail: mass * t^{e-1}, nonincreasing for p >= 1
  if (e > 1.0) return kInf;
  return best;
}

}  // namespace

double lorentz_star_norm(const StepRearrangement& g, const LorentzParams& params, double tol) {
  if (!params.starred_normed()) throw DomainError("starred functional outside its normed range");
  if (!(tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
  if (g.is_zero()) return 0.0;
  if (std::isinf(params.r)) return star_sup(g, params.p);
  if (params.p <= 1.0) return kInf;  // tail (mass/t) is not integrable

  const double p = params.p;
  const double r = params.r;
  const double e = r / p;
  const auto& t = g.knots();
  const auto& w = g.levels();

  double sum = std::pow(w[0], r) * std::pow(t[1], e) / e;
  using boost::math::quadrature::gauss_kronrod;
  for (std::size_t j = 1; j < w.size(); ++j) {
    const double c = g.mass_to_knot(j);
    const double t0 = t[j];
    auto integrand = [&](double s) {
      const double avg = (c + w[j] * (s - t0)) / s;
      return std::pow(s, e - 1.0) * std::pow(avg, r);
    };
    sum += gauss_kronrod<double, 31>::integrate(integrand, t0, t[j + 1], 30, tol);
  }
  const double mass = g.mass();
  const double tk = g.support_measure();
  sum += std::pow(mass, r) * std::pow(tk, e - r) / (r - e);
  return std::pow(sum, 1.0 / r);
}

double lorentz_star_norm(const RadialStepFunction& f, const LorentzParams& params, double tol) {
  return lorentz_star_norm(rearrangement(f), params, tol);
}

EquivalenceReport equivalence_check(const RadialStepFunction& f, const LorentzParams& params) {
  if (!params.starred_admissible())
    throw DomainError("norm equivalence needs 1 < p < inf, 1 <= r <= inf or p = r = inf");
  EquivalenceReport rep;
  const auto g = rearrangement(f);
  rep.quasi = lorentz_norm(g, params);
  rep.starred = lorentz_star_norm(g, params);
  rep.upper_factor = std::isinf(params.p) ? 1.0 : params.p / (params.p - 1.0);
  rep.ratio = rep.quasi > 0.0 ? rep.starred / rep.quasi : 1.0;
  constexpr double slack = 1e-9;
  rep.pass = rep.quasi <= rep.starred * (1.0 + slack) &&
             rep.starred <= rep.upper_factor * rep.quasi * (1.0 + slack);
  return rep;
}

PairingReport lorentz_holder_pairing(const RadialStepFunction& f, const RadialStepFunction& g,
                                     const LorentzParams& params) {
  if (!(params.p > 1.0) || std::isinf(params.p) || !(params.r >= 1.0))
    throw DomainError("Lorentz Hoelder pairing needs 1 < p < inf and 1 <= r <= inf");
  PairingReport rep;
  rep.integral = (f * g).integral_abs();
  rep.bound = lorentz_norm(f, params) * lorentz_norm(g, params.conjugate());
  rep.ratio = rep.bound > 0.0 ? rep.integral / rep.bound : 0.0;
  rep.pass = rep.integral <= rep.constant * rep.bound * (1.0 + 1e-12);
  return rep;
}

RefinementChainReport refinement_chain_check(const RadialStepFunction& f, double p, double lower,
                                             double upper) {
  if (!(lower > 0.0) || !(lower <= p) || !(p <= upper) || std::isinf(p))
    throw DomainError("refinement chain needs 0 < lower <= p <= upper <= inf, p finite");
  RefinementChainReport rep;
  const auto g = rearrangement(f);
  const double exps[4] = {lower, p, upper, kInf};
  rep.all_finite = true;
  for (int i = 0; i < 4; ++i) {
    rep.norms[i] = lorentz_norm(g, {p, exps[i]});
    const double scale = std::isinf(exps[i]) ? 1.0 : std::pow(exps[i] / p, 1.0 / exps[i]);
    rep.normalized[i] = scale * rep.norms[i];
    rep.all_finite = rep.all_finite && std::isfinite(rep.norms[i]);
  }
  rep.pass = rep.all_finite;
  for (int i = 0; i + 1 < 4; ++i)
    rep.pass = rep.pass && rep.normalized[i + 1] <= rep.normalized[i] * (1.0 + 1e-12);
  return rep;
}

}  // namespace lhz
