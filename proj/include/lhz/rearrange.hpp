#ifndef LHZ_REARRANGE_HPP
#define LHZ_REARRANGE_HPP

#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace lhz {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Raised when an argument lies outside the range an operation is defined on.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Lebesgue measure of the unit ball in R^dim (2 for dim = 1).
double unit_ball_volume(int dim);

/// Measure of {rho_lo <= |x| < rho_hi} in R^dim.
double shell_measure(int dim, double rho_lo, double rho_hi);

/// A value carried on a set of the given measure.
struct MeasuredValue {
  double measure = 0.0;
  double value = 0.0;
};

// Function on R^dim that is constant on each shell {rho_{i-1} <= |x| < rho_i}
// and zero outside the last breakpoint.  Stored in canonical form: adjacent
// shells never carry equal values and the outermost shell is nonzero.
class RadialStepFunction {
 public:
  RadialStepFunction() = default;
  RadialStepFunction(int dim, std::vector<double> breakpoints, std::vector<double> values);

  static RadialStepFunction zero(int dim = 1);
  /// Shells laid out from the origin outwards with the given measures.
  static RadialStepFunction from_shell_measures(int dim, std::span<const double> measures,
                                                std::span<const double> values);
  /// Indicator of {rho_lo <= |x| < rho_hi}.
  static RadialStepFunction shell_indicator(int dim, double rho_lo, double rho_hi,
                                            double value = 1.0);

  int dim() const { return dim_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t shell_count() const { return values_.size(); }
  double shell_measure(std::size_t i) const;
  double outer_radius() const { return breakpoints_.back(); }
  bool is_zero() const { return values_.empty(); }

  /// Value at any point with |x| = radius.
  double operator()(double radius) const;

  double support_measure() const;
  /// Integral of |f| over R^dim.
  double integral_abs() const;
  bool nonnegative() const;

  /// (shell measure, value) for every nonzero shell, innermost first.
  std::vector<MeasuredValue> pieces() const;

  /// f restricted to {rho_lo <= |x| < rho_hi}.
  RadialStepFunction restricted(double rho_lo, double rho_hi) const;
  RadialStepFunction abs() const;
  RadialStepFunction scaled(double factor) const;

  friend RadialStepFunction operator+(const RadialStepFunction& f, const RadialStepFunction& g);
  /// Pointwise product.
  friend RadialStepFunction operator*(const RadialStepFunction& f, const RadialStepFunction& g);
  friend bool operator==(const RadialStepFunction& f, const RadialStepFunction& g) = default;

 private:
  int dim_ = 1;
  std::vector<double> breakpoints_{0.0};
  std::vector<double> values_;
};

/// Measure of {|f| > alpha}.
double distribution(const RadialStepFunction& f, double alpha);

// Nonincreasing, right-continuous step function on [0, inf):
// level w_j on [t_{j-1}, t_j), zero from t_k on.  Levels are strictly
// decreasing and positive.
class StepRearrangement {
 public:
  StepRearrangement() = default;

  /// Decreasing rearrangement of |value| over a family of disjoint pieces.
  static StepRearrangement from_pieces(std::span<const MeasuredValue> pieces);

  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& levels() const { return levels_; }
  std::size_t size() const { return levels_.size(); }
  bool is_zero() const { return levels_.empty(); }

  /// f*(t); f*(0) is the top level.
  double operator()(double t) const;
  /// Measure of {f* > alpha}.
  double distribution(double alpha) const;
  /// Integral of f* over [from, to].
  double integral(double from, double to) const;
  /// Integral of f* over [0, t_j] for the j-th knot.
  double mass_to_knot(std::size_t j) const { return cumulative_[j]; }
  double mass() const { return cumulative_.back(); }
  double support_measure() const { return knots_.back(); }
  double sup() const { return levels_.empty() ? 0.0 : levels_.front(); }
  /// f**(t) = (1/t) * integral of f* over [0, t].
  double average(double t) const;

  StepRearrangement scaled(double factor) const;

  friend bool operator==(const StepRearrangement& a, const StepRearrangement& b) = default;

 private:
  std::vector<double> knots_{0.0};
  std::vector<double> levels_;
  std::vector<double> cumulative_{0.0};
};

StepRearrangement rearrangement(const RadialStepFunction& f);

inline double average_rearrangement(const StepRearrangement& g, double t) { return g.average(t); }

struct SumBoundReport {
  double lhs_weighted = 0.0;  // (sum f_n)*(3t)
  double rhs_weighted = 0.0;  // sum f_n**(t) + (1/t) int_{c_n t}^t f_n*
  double lhs_avg = 0.0;  // (sum f_n)*(t)
  double rhs_avg = 0.0;  // 2 sum f_n**(t/3)
  bool pass = false;
};

/// Rearrangement-of-sums bounds for nonnegative step families.
SumBoundReport sum_bound_check(std::span<const RadialStepFunction> fs, double t,
                               std::span<const double> weights);

}  // namespace lhz

#endif
