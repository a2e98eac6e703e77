#ifndef LHZ_LORENTZ_HPP
#define LHZ_LORENTZ_HPP

#include "lhz/rearrange.hpp"

namespace lhz {

/// Conjugate exponent: p/(p-1), with 1 <-> infinity.
double conjugate_exponent(double p);

// Exponents (p, r) of the Lorentz space L^{p,r}.  Either may be infinite, but
// p = inf with r < inf is rejected since that space is trivial.
struct LorentzParams {
  double p = 2.0;
  double r = 2.0;

  LorentzParams() = default;
  LorentzParams(double p_, double r_);

  /// Range where the starred functional is a norm and comparable to the
  /// quasi-norm: 1 < p < inf with 1 <= r <= inf, or p = r = inf.
  bool starred_admissible() const;
  /// Range where the starred functional is a norm (adds p = r = 1).
  bool starred_normed() const;
  LorentzParams conjugate() const { return {conjugate_exponent(p), conjugate_exponent(r)}; }
};

/// ||f||_{L^{p,r}} from the decreasing rearrangement (closed form).
double lorentz_norm(const StepRearrangement& g, const LorentzParams& params);
double lorentz_norm(const RadialStepFunction& f, const LorentzParams& params);

/// ||chi_E||_{L^{p,r}} = (p/r)^{1/r} mu(E)^{1/p}.
double indicator_lorentz_norm(double measure, const LorentzParams& params);

/// Starred functional: f** in place of f*.  Adaptive Gauss-Kronrod per
/// segment, analytic first segment and tail.  Returns +inf when divergent.
double lorentz_star_norm(const StepRearrangement& g, const LorentzParams& params,
                         double tol = 1e-10);
double lorentz_star_norm(const RadialStepFunction& f, const LorentzParams& params,
                         double tol = 1e-10);

struct EquivalenceReport {
  double quasi = 0.0;
  double starred = 0.0;
  double ratio = 0.0;  // starred / quasi (1 for the zero function)
  double upper_factor = 0.0;
  bool pass = false;
};

/// quasi <= starred <= p/(p-1) * quasi, with 1e-9 relative slack.
EquivalenceReport equivalence_check(const RadialStepFunction& f, const LorentzParams& params);

struct PairingReport {
  double integral = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
  double constant = 1.0;
  bool pass = false;
};

/// int |fg| <= ||f||_{L^{p,r}} ||g||_{L^{p',r'}}.
PairingReport lorentz_holder_pairing(const RadialStepFunction& f, const RadialStepFunction& g,
                                     const LorentzParams& params);

struct RefinementChainReport {
  // ||f||_{p,lower}, ||f||_{p,p}, ||f||_{p,upper}, ||f||_{p,inf}
  double norms[4] = {0.0, 0.0, 0.0, 0.0};
  // (r/p)^{1/r} ||f||_{p,r}; equal for all r on indicators, nonincreasing in r
  double normalized[4] = {0.0, 0.0, 0.0, 0.0};
  bool all_finite = false;
  bool pass = false;
};

/// L^{p,lower} in L^p in L^{p,upper} in L^{p,inf} for lower <= p <= upper.
RefinementChainReport refinement_chain_check(const RadialStepFunction& f, double p,
                                             double lower, double upper);

}  // namespace lhz

#endif
