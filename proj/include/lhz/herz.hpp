#ifndef LHZ_HERZ_HPP
#define LHZ_HERZ_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lhz/lorentz.hpp"
#include "lhz/sequence.hpp"

namespace lhz {

// A_{-1} = {|x| < 1/2},  A_u = {2^{u-1} <= |x| < 2^u} for u >= 0.
double annulus_inner_radius(int u);
double annulus_outer_radius(int u);
double annulus_measure(int dim, int u);
/// Index of the annulus containing radius rho.
int annulus_index(double rho);

// Exponents of HL_{p,q}^{a,r}: r = p gives the Herz space K_{p,q}^a and
// r = inf the weak Herz space.
struct HerzParams {
  double a = 0.0;
  double p = 2.0;
  double q = 2.0;
  double r = 2.0;

  HerzParams() = default;
  HerzParams(double a_, double p_, double q_, double r_);

  LorentzParams lorentz() const { return {p, r}; }
  /// (-a, p', q', r'), the pairing partner in the Hoelder inequality.
  HerzParams dual() const;
};

struct AnnulusPiece {
  int u = kFirstAnnulus;
  RadialStepFunction f;
};

/// Nonzero restrictions f chi_{A_u}; they have disjoint supports and sum to f.
std::vector<AnnulusPiece> annuli_decompose(const RadialStepFunction& f);

// Per-annulus decreasing rearrangements of a function.  This is all the
// Lorentz-Herz norms see, so radial and grid functions share it.
class AnnulusProfile {
 public:
  AnnulusProfile() = default;
  explicit AnnulusProfile(const RadialStepFunction& f);

  struct Entry {
    int u;
    MeasuredValue piece;
  };
  static AnnulusProfile from_entries(std::span<const Entry> entries);

  /// Rearrangement of f chi_{A_u} (empty when that restriction vanishes).
  const StepRearrangement& operator[](int u) const;
  int end_index() const { return kFirstAnnulus + static_cast<int>(annuli_.size()); }
  bool is_zero() const;

  /// Lorentz scores ||f chi_{A_u}||_{L^{p,r}} (starred if requested).
  WeightedSeq scores(const LorentzParams& params, bool starred = false) const;

 private:
  std::vector<StepRearrangement> annuli_;
};

double hl_norm(const AnnulusProfile& profile, const HerzParams& params, bool starred = false);
double hl_norm(const RadialStepFunction& f, const HerzParams& params, bool starred = false);

struct QuasiConstantReport {
  double max_ratio = 0.0;
  std::size_t worst_i = 0, worst_j = 0;
};

/// max over pairs of ||f+g|| / (||f|| + ||g||).
QuasiConstantReport quasi_constant_probe(std::span<const RadialStepFunction> corpus,
                                         const HerzParams& params, bool starred = false);

// Measures m_u = mu(A_u cap E), u >= -1: an explicit head plus an optional
// power-law tail m_u = coefficient / u^power for u >= start.
struct AnnulusMeasureSequence {
  struct PowerTail {
    double coefficient = 0.0;
    double power = 0.0;
    int start = 1;
  };

  int dim = 1;
  std::vector<double> head;  // m_{-1}, m_0, ...
  std::optional<PowerTail> tail;

  double operator[](int u) const;
  bool finitely_supported() const { return !tail.has_value(); }
  /// Throws DomainError if some m_u, u <= upto, exceeds mu(A_u).
  void validate(int upto) const;
};

enum class GrowthVerdict { finite, growing, inconclusive };
std::string to_string(GrowthVerdict v);

struct BfsReport {
  std::vector<double> partial_a;  // index i <-> u = i - 1
  std::vector<double> partial_b;
  GrowthVerdict verdict_a = GrowthVerdict::inconclusive;
  GrowthVerdict verdict_b = GrowthVerdict::inconclusive;
  GrowthVerdict verdict = GrowthVerdict::inconclusive;
  int cutoff = 0;
};

/// Partial sums of sum 2^{uaq} m_u^{q/p} and sum 2^{-uaq'} m_u^{q'/p'} up to
/// the cutoff (running sups for an infinite exponent).  Growth evidence only.
BfsReport bfs_condition_check(const AnnulusMeasureSequence& m, const HerzParams& params, int cutoff);

struct DivergenceExampleReport {
  std::vector<double> terms;         // 2^{uaq} (p/r)^{q/r} (2/u^2)^{q/p}, u = 1..cutoff
  std::vector<double> partial_sums;  // running sums of terms
  std::vector<double> norm_partial;  // ||chi_{E_U}||^q_{HL} from the step representative
  int increasing_from = 0;           // first u with term_{u+1} > term_u for all later u
  bool eventually_increasing = false;
  double measure_partial = 0.0;      // sum_{u <= cutoff} 2/u^2
  double measure_total = 0.0;        // pi^2/3
  GrowthVerdict verdict = GrowthVerdict::inconclusive;
};

/// chi_E with E = union of {2^u - 1/u^2 <= |x| < 2^u}, u >= 1, in R^1.
RadialStepFunction divergence_example_set(int cutoff);
DivergenceExampleReport divergence_example(const HerzParams& params, int cutoff);

struct HolderReport {
  double integral = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
  bool pass = false;
};

/// int |fg| <= ||f||_{HL_{p,q}^{a,r}} ||g||_{HL_{p',q'}^{-a,r'}}.
HolderReport hl_holder_check(const RadialStepFunction& f, const RadialStepFunction& g,
                             const HerzParams& params);

enum class EmbeddingVariant { A, B, C, D };

struct EmbeddingReport {
  double lhs = 0.0;       // ||f||_target
  double rhs = 0.0;       // bound
  double source = 0.0;    // ||f||_source
  double constant = 0.0;  // lhs / source
  double weak_path = 0.0; // variant C: bound through the L^{p2,inf} scores
  bool pass = false;
};

/// target <= C * source for the embedding items; see herz.cpp for the bounds.
EmbeddingReport embedding_check(EmbeddingVariant variant, const RadialStepFunction& f,
                                const HerzParams& source, const HerzParams& target);

}  // namespace lhz

#endif
