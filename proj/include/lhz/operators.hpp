#ifndef LHZ_OPERATORS_HPP
#define LHZ_OPERATORS_HPP

#include <span>
#include <string>
#include <vector>

#include "lhz/herz.hpp"

namespace lhz {

// Piecewise-constant function on [-R, R] with `cells` uniform cells; zero
// outside.  Cell i covers [-R + i h, -R + (i+1) h] with h = 2R / cells.
class GridFunction1D {
 public:
  GridFunction1D() = default;
  GridFunction1D(double half_width, std::vector<double> values);

  /// Samples g at cell centres.
  template <class G>
  static GridFunction1D sampled(double half_width, std::size_t cells, G g) {
    std::vector<double> v(cells);
    const double h = 2.0 * half_width / static_cast<double>(cells);
    for (std::size_t i = 0; i < cells; ++i) v[i] = g(-half_width + (static_cast<double>(i) + 0.5) * h);
    return {half_width, std::move(v)};
  }
  /// value on [lo, hi), zero elsewhere; lo and hi should sit on cell edges.
  static GridFunction1D indicator(double half_width, std::size_t cells, double lo, double hi,
                                  double value = 1.0);

  double half_width() const { return half_width_; }
  std::size_t cells() const { return values_.size(); }
  double cell_width() const { return 2.0 * half_width_ / static_cast<double>(values_.size()); }
  double edge(std::size_t i) const { return -half_width_ + static_cast<double>(i) * cell_width(); }
  double centre(std::size_t i) const { return edge(i) + 0.5 * cell_width(); }
  const std::vector<double>& values() const { return values_; }

  /// Same function on a grid with every cell split in two.
  GridFunction1D refined() const;
  GridFunction1D scaled(double factor) const;
  friend GridFunction1D operator+(const GridFunction1D& f, const GridFunction1D& g);

  /// Per-annulus rearrangements; cells straddling a dyadic radius are split.
  AnnulusProfile profile() const;
  double lp_norm(double p) const;

 private:
  double half_width_ = 1.0;
  std::vector<double> values_;
};

enum class OperatorKind { maximal, hilbert };
std::string to_string(OperatorKind kind);
OperatorKind parse_operator(const std::string& name);

/// Uncentred maximal function at cell centres: sup of the average of |f| over
/// intervals containing the centre with endpoints on grid edges or the centre.
GridFunction1D maximal_operator(const GridFunction1D& f);
/// Same candidate family at an arbitrary point x.
double maximal_at(const GridFunction1D& f, double x);

/// (1/pi) p.v. integral f(y)/(x-y) dy at cell centres, exact per cell.
GridFunction1D hilbert_transform(const GridFunction1D& f);
double hilbert_at(const GridFunction1D& f, double x);

GridFunction1D apply(OperatorKind kind, const GridFunction1D& f);
double apply_at(OperatorKind kind, const GridFunction1D& f, double x);

/// Annulus profile of Tf on the window. For the Hilbert transform, cells touching a jump of f
/// are split geometrically toward the jump (depth levels) and sampled exactly.
AnnulusProfile image_profile(OperatorKind kind, const GridFunction1D& f, int depth = 30);

/// integral |f(y)| / |x - y| dy for x off the support.
double size_integral(const GridFunction1D& f, double x);

struct SizeConditionReport {
  double max_ratio = 0.0;          // max |Tf(x)| / integral, base grid
  double max_ratio_refined = 0.0;  // same at one refinement
  std::size_t points = 0;
  bool pass = false;
};

/// |Tf(x)| <= C integral |f(y)|/|x-y| dy at cell centres at least `margin`
/// cells from supp f.  Pass iff C is finite and moves by at most 5% under
/// refinement.
SizeConditionReport size_condition_check(OperatorKind kind, const GridFunction1D& f,
                                         std::size_t margin);

struct InteractionReport {
  double log2_lhs = 0.0;    // log2 of 2^{-uN} ||chi_{A_u}||_{p,r} ||chi_{A_v}||_{p',r'}
  double rhs_exponent = 0.0;  // (N/p')(v - u)
  double constant = 0.0;    // lhs / 2^{rhs_exponent}
};

InteractionReport annulus_interaction_bound(int u, int v, int dim, const LorentzParams& params);

struct InteractionScan {
  double constant = 0.0;  // max over the window
  double min_ratio = 0.0;
  bool finite = false;
  int worst_u = 0, worst_v = 0;
};

InteractionScan annulus_interaction_scan(int dim, const LorentzParams& params, int lo = -1,
                                         int hi = 60);

// Admissible window -N/p < a < N/p' plus the operator-specific exponent gates.
struct SweepCell {
  HerzParams params;
  bool in_range = false;
  std::string excluded;        // reason when not in range
  double max_ratio = 0.0;      // over the corpus, base grid
  double max_ratio_refined = 0.0;
  double drift = 0.0;          // max relative change per corpus member
  bool pass = false;
};

struct BoundednessReport {
  OperatorKind op = OperatorKind::maximal;
  std::vector<SweepCell> cells;
  int refinement = 1;  // number of cell doublings in the comparison grid
  double drift_tol = 0.05;
  bool pass = false;
};

/// Exclusion reason for a parameter cell, empty when the cell is admissible.
std::string sweep_gate(OperatorKind op, const HerzParams& params);

BoundednessReport boundedness_sweep(OperatorKind op, std::span<const GridFunction1D> corpus,
                                    std::span<const HerzParams> grid, double drift_tol = 0.05);

/// a in {-0.4, -0.2, 0, 0.2, 0.4} * N / max(p, p'), q, r over the given lists.
std::vector<HerzParams> sweep_grid(std::span<const double> ps, std::span<const double> qs,
                                   std::span<const double> rs);

struct WitnessReport {
  std::vector<double> ratios_by_v;       // fixed window
  std::vector<double> ratios_by_window;  // f = chi_{A_1}, window radius 2^{V+2}, 2^{V+3}, ...
  bool growing = false;                  // ratios_by_v strictly increasing
  bool applicable = false;               // V >= 2
  bool window_growing = false;
  double half_width = 0.0;
};

/// Ratios ||Mf|| / ||f|| in HL_{p,q}^{a,r} for f = chi_{A_v}, v = 1..V, on
/// [-2^{V+2}, 2^{V+2}] with h = 1/4.
WitnessReport out_of_range_witness(const HerzParams& params, int V, int window_steps = 4);

struct InterpolatedBoundednessReport {
  std::vector<double> ratios;
  double max_ratio = 0.0;
  double sweep_ratio = 0.0;  // boundedness_sweep at r = q, same cell
  double gap = 0.0;          // relative difference of the two
  bool pass = false;
};

/// Linear T only: ratios in HL_{p,q}^{a,q}, cross-checked against the sweep.
InterpolatedBoundednessReport interpolated_boundedness_check(OperatorKind op, double p, double q,
                                                             double a,
                                                             std::span<const GridFunction1D> corpus);

}  // namespace lhz

#endif
