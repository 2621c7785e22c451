#pragma once

// Truncated power series with exact rational coefficients, and the two
// dimension generating functions of a fusion datum:
//
//   h(t) = sum_n dim(h_n) t^n   with dim(h_n) = (N^n)(iota, iota),
//   k(t) = 1 - 1/h(t)           first-return / skeleton dimensions.
//
// The n-th k coefficient also has a direct matrix form: the (iota, iota)
// entry of N with the iota-projection complement Q inserted between every
// adjacent pair of factors, i.e. dim(k_n) = [N (Q N)^(n-1)](iota, iota).
// Both routes are computed exactly and cross-checked in the tests.

#include "gca/fusion.hpp"
#include "gca/types.hpp"

#include <optional>
#include <vector>

namespace gca {

class RationalSeries {
 public:
  RationalSeries() : coeffs_(1, Rational(0)) {}
  explicit RationalSeries(std::vector<Rational> coeffs);
  static RationalSeries constant(const Rational& value, int order);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Rational& operator[](int n) const { return coeffs_[static_cast<std::size_t>(n)]; }
  Rational& operator[](int n) { return coeffs_[static_cast<std::size_t>(n)]; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  bool operator==(const RationalSeries&) const = default;

 private:
  std::vector<Rational> coeffs_;
};

RationalSeries operator+(const RationalSeries& a, const RationalSeries& b);
RationalSeries operator-(const RationalSeries& a, const RationalSeries& b);
RationalSeries operator*(const RationalSeries& a, const RationalSeries& b);

/// Multiplicative inverse through the common truncation order.
/// Requires a nonzero constant term.
RationalSeries reciprocal(const RationalSeries& s);

/// Partial sums sum_{n<=T} c_n t^n for T = 0..terms, in floating point.
std::vector<double> evaluate(const RationalSeries& s, double t, int terms);

/// dim(h_n) for n = 0..order, by iterated exact matrix-vector products.
std::vector<Int> h_dims(const FusionData& data, int order);

/// h_dims packaged as an exact series.
RationalSeries h_series(const FusionData& data, int order);

/// k(t) = 1 - 1/h(t). Requires h to have constant term exactly 1.
RationalSeries k_from_h(const RationalSeries& h);

/// Direct evaluation of dim(k_n), n >= 1.
Int k_direct(const FusionData& data, int n);

/// dim(k_n) for n = 1..order in one sweep; index 0 holds 0.
std::vector<Int> k_dims(const FusionData& data, int order);

struct DimensionProfile {
  std::vector<Int> h;                // n = 0..order
  std::vector<Int> k;                // n = 0..order, k[0] = 0
  std::optional<Int> skeleton_dim;   // nullopt = infinite
};

struct SpectralProfile;  // spectral.hpp

/// Total skeleton dimension sum_n dim(k_n): finite exactly when the
/// reduced matrix is nilpotent, in which case the sum has at most
/// nilpotency_index + 1 nonzero terms. Returns nullopt when infinite.
std::optional<Int> skeleton_dimension(const FusionData& data, const SpectralProfile& spectral);

/// Both dimension series and the total skeleton dimension in one value.
DimensionProfile dimension_profile(const FusionData& data, int order,
                                   const SpectralProfile& spectral);

}  // namespace gca
