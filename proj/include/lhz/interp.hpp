#ifndef LHZ_INTERP_HPP
#define LHZ_INTERP_HPP

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "lhz/herz.hpp"
#include "lhz/sequence.hpp"

namespace lhz {

// Convex, decreasing, piecewise-linear tradeoff psi on [0, cap]: the smallest
// side-0 cost of a coordinate when its side-1 cost is x.  psi(0) = top,
// psi(cap) = 0.
struct Tradeoff {
  std::vector<double> x;  // kinks, increasing, x.front() = 0
  std::vector<double> y;  // psi at the kinks, decreasing, y.back() = 0

  double top() const { return y.front(); }
  double cap() const { return x.back(); }
  double operator()(double at) const;
  /// Smallest x with psi(x) <= level.
  double inverse(double level) const;
  bool is_zero() const { return x.size() < 2; }
};

/// Scalar splits b*s + c*(1-s): psi(x) = b (1 - x/c).
Tradeoff scalar_tradeoff(double b, double c);
/// ||g0||_{L^1} against ||g1||_{L^inf} for g = g0 + g1, with weights w0, w1
/// on the two costs: psi(w1 z) = w0 * integral of (g* - z)_+.
Tradeoff l1_linf_tradeoff(const StepRearrangement& g, double w0 = 1.0, double w1 = 1.0);

// (l_{q0}^{a0}, l_{q1}^{a1}) over a common base.
struct SequenceCouple {
  double a0 = 0.0;
  double q0 = 1.0;
  double a1 = 1.0;
  double q1 = 1.0;

  SequenceCouple() = default;
  SequenceCouple(double a0_, double q0_, double a1_, double q1_);
};

struct KResult {
  double value = 0.0;
  bool converged = true;
  double upper_bound = 0.0;  // min(||.||_0, t ||.||_1)
};

/// inf over coordinatewise tradeoffs of ||psi(x)||_{q0} + t ||x||_{q1}.
/// Exponents must lie in [1, inf].
KResult minimize_split(double t, std::span<const Tradeoff> coords, double q0, double q1);

/// K(t, y; l_{q0}^{a0}, l_{q1}^{a1}) over scalar splits.
KResult k_functional(double t, const WeightedSeq& y, const SequenceCouple& couple);

/// K(t, f; L^1, L^inf) = integral of f* over [0, t].
double k_functional_l1_linf(const StepRearrangement& g, double t);
double k_functional_l1_linf(const RadialStepFunction& f, double t);

/// K(t, f; K_{1,q0}^{a0}, K_{inf,q1}^{a1}) with exact per-annulus L^1/L^inf splits.
KResult k_functional_herz_l1_linf(double t, const AnnulusProfile& profile,
                                  const SequenceCouple& couple);

// t -> K(t) for a fixed source.  The source is normalized by a power of two so
// K(t) = scale * k(t) exactly; norm0/norm1 and kinks refer to the normalized
// source.
struct KCurve {
  std::function<KResult(double)> k;
  double norm0 = 0.0;
  double norm1 = 0.0;
  double scale = 1.0;
  std::vector<double> kinks;

  double operator()(double t) const { return scale * k(t).value; }
};

KCurve sequence_curve(const WeightedSeq& y, const SequenceCouple& couple);
KCurve l1_linf_curve(const RadialStepFunction& f);
KCurve herz_l1_linf_curve(const RadialStepFunction& f, const SequenceCouple& couple);

struct InterpolationParams {
  double theta = 0.5;
  double q = 1.0;
  int octaves = 40;     // window half-width T in octaves
  int per_octave = 16;  // quadrature nodes per octave
};

struct InterpolationResult {
  double value = 0.0;
  double lower = 0.0;  // bracket from the analytic tail bounds
  double upper = 0.0;
  double window_lo = 0.0;  // log2 t range of the quadrature
  double window_hi = 0.0;
  bool converged = true;
};

/// (int_0^inf (t^{-theta} K(t))^q dt/t)^{1/q}, sup form for q = inf.
InterpolationResult interpolation_norm(const KCurve& curve, const InterpolationParams& params);

struct KInvariantReport {
  bool monotone = true;
  bool concave = true;
  bool below_endpoints = true;
  bool ratio_nonincreasing = true;  // K(t)/t
  bool pass() const { return monotone && concave && below_endpoints && ratio_nonincreasing; }
};

/// Checks the structural properties of K on an increasing grid of t values.
KInvariantReport check_k_invariants(const KCurve& curve, std::span<const double> ts,
                                    double slack = 1e-9);

/// L(f) as scores ||f chi_{A_u}||_{L^{p,r}}.
WeightedSeq retract_L(const RadialStepFunction& f, const LorentzParams& base);
/// M({f_j}) = sum f_j chi_{A_j}; rejects pieces reaching outside A_j.
RadialStepFunction coretract_M(std::span<const AnnulusPiece> pieces);
/// M(y) built from witnesses: sum y_j w_j / ||w_j||_{L^{p,r}}.
RadialStepFunction coretract_M(const WeightedSeq& y, std::span<const AnnulusPiece> witnesses,
                               const LorentzParams& base);

// Interpolation suites.  seq-a/seq-q act on sequences, the rest on functions.
struct InterpSuiteConfig {
  std::string suite = "seq-a";
  double theta = 0.5;
  double q = 1.0;  // outer exponent (derived for seq-q, hl-2, hl-3, hl-4)
  double a0 = 0.0, a1 = 1.0;
  double q0 = 1.0, q1 = 1.0;
  double p = 2.0, r = 2.0;  // common Lorentz base for hl-1, hl-2
  double stability = 50.0;
  double homogeneity_tol = 1e-9;
  InterpolationParams grid{};
};

struct InterpCheck {
  std::string label;
  double value = 0.0;
  double target = 0.0;
  double ratio = 0.0;
  double ratio_scaled = 0.0;  // same ratio for the source scaled by 2
  double bracket = 0.0;       // relative truncation bracket width
};

struct InterpSuiteReport {
  std::string suite;
  std::string target;  // description of the comparison space
  double theta = 0.0, q = 0.0, a = 0.0;
  std::vector<InterpCheck> checks;
  double band_lo = 0.0, band_hi = 0.0;
  double homogeneity = 0.0;  // max relative gap between ratio and ratio_scaled
  bool pass = false;
};

/// Validates the suite hypotheses, filling in the derived exponents.
InterpSuiteConfig validated(InterpSuiteConfig config);
InterpSuiteReport verify_interpolation(const InterpSuiteConfig& config,
                                       std::span<const WeightedSeq> sequences);
InterpSuiteReport verify_interpolation(const InterpSuiteConfig& config,
                                       std::span<const RadialStepFunction> functions);

}  // namespace lhz

#endif
