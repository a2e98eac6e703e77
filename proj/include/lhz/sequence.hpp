#ifndef LHZ_SEQUENCE_HPP
#define LHZ_SEQUENCE_HPP

#include <vector>

namespace lhz {

/// Lowest annulus index; A_{-1} is the central ball of radius 1/2.
inline constexpr int kFirstAnnulus = -1;

// Finitely supported nonnegative sequence indexed by annulus u >= -1.
// entries[i] holds y_{i-1}.
class WeightedSeq {
 public:
  WeightedSeq() = default;
  explicit WeightedSeq(std::vector<double> entries);

  /// e_u scaled by value.
  static WeightedSeq unit(int u, double value = 1.0);

  double operator[](int u) const;
  void set(int u, double value);
  /// One past the last stored index.
  int end_index() const { return kFirstAnnulus + static_cast<int>(entries_.size()); }
  const std::vector<double>& entries() const { return entries_; }
  bool is_zero() const;
  WeightedSeq scaled(double factor) const;

 private:
  std::vector<double> entries_;
};

/// (sum_u 2^{uaq} y_u^q)^{1/q}, sup_u 2^{ua} y_u for q = inf.
double ell_norm(const WeightedSeq& y, double a, double q);

}  // namespace lhz

#endif
