#include "lhz/sequence.hpp"

#include <algorithm>
#include <cmath>

#include "lhz/rearrange.hpp"

namespace lhz {

WeightedSeq::WeightedSeq(std::vector<double> entries) : entries_(std::move(entries)) {
  for (double v : entries_) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("sequence entries must be finite and >= 0");
  }
}

WeightedSeq WeightedSeq::unit(int u, double value) {
  WeightedSeq y;
  y.set(u, value);
  return y;
}

double WeightedSeq::operator[](int u) const {
  const int i = u - kFirstAnnulus;
  if (i < 0 || i >= static_cast<int>(entries_.size())) return 0.0;
  return entries_[static_cast<std::size_t>(i)];
}

void WeightedSeq::set(int u, double value) {
  if (u < kFirstAnnulus) throw DomainError("annulus index below -1");
  if (!(value >= 0.0) || !std::isfinite(value)) throw DomainError("sequence entries must be finite and >= 0");
  const auto i = static_cast<std::size_t>(u - kFirstAnnulus);
  if (i >= entries_.size()) entries_.resize(i + 1, 0.0);
  entries_[i] = value;
}

bool WeightedSeq::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](double v) { return v == 0.0; });
}

WeightedSeq WeightedSeq::scaled(double factor) const {
  WeightedSeq out(*this);
  for (double& v : out.entries_) v *= std::abs(factor);
  return out;
}

double ell_norm(const WeightedSeq& y, double a, double q) {
  if (!(q > 0.0)) throw DomainError("sequence exponent must be positive");
  double acc = 0.0;
  for (int u = kFirstAnnulus; u < y.end_index(); ++u) {
    const double v = y[u];
    if (v == 0.0) continue;
    if (std::isinf(q)) {
      acc = std::max(acc, std::exp2(u * a) * v);
    } else {
      acc += std::exp2(u * a * q) * std::pow(v, q);
    }
  }
  return std::isinf(q) ? acc : std::pow(acc, 1.0 / q);
}

}  // namespace lhz
