#include "gca/series.hpp"

#include "gca/spectral.hpp"

#include <algorithm>
#include <stdexcept>

namespace gca {

RationalSeries::RationalSeries(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("series needs at least the constant term");
}

RationalSeries RationalSeries::constant(const Rational& value, int order) {
  if (order < 0) throw std::invalid_argument("negative truncation order");
  std::vector<Rational> c(static_cast<std::size_t>(order) + 1, Rational(0));
  c[0] = value;
  return RationalSeries(std::move(c));
}

namespace {

int common_order(const RationalSeries& a, const RationalSeries& b) {
  return std::min(a.order(), b.order());
}

}  // namespace

RationalSeries operator+(const RationalSeries& a, const RationalSeries& b) {
  const int m = common_order(a, b);
  std::vector<Rational> c(static_cast<std::size_t>(m) + 1);
  for (int n = 0; n <= m; ++n) c[static_cast<std::size_t>(n)] = a[n] + b[n];
  return RationalSeries(std::move(c));
}

RationalSeries operator-(const RationalSeries& a, const RationalSeries& b) {
  const int m = common_order(a, b);
  std::vector<Rational> c(static_cast<std::size_t>(m) + 1);
  for (int n = 0; n <= m; ++n) c[static_cast<std::size_t>(n)] = a[n] - b[n];
  return RationalSeries(std::move(c));
}

RationalSeries operator*(const RationalSeries& a, const RationalSeries& b) {
  const int m = common_order(a, b);
  std::vector<Rational> c(static_cast<std::size_t>(m) + 1, Rational(0));
  for (int i = 0; i <= m; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; i + j <= m; ++j) c[static_cast<std::size_t>(i + j)] += a[i] * b[j];
  }
  return RationalSeries(std::move(c));
}

RationalSeries reciprocal(const RationalSeries& s) {
  if (s[0] == 0) throw std::invalid_argument("reciprocal: constant term is zero");
  const int m = s.order();
  std::vector<Rational> b(static_cast<std::size_t>(m) + 1, Rational(0));
  b[0] = Rational(1) / s[0];
  for (int n = 1; n <= m; ++n) {
    Rational acc(0);
    for (int j = 1; j <= n; ++j) acc += s[j] * b[static_cast<std::size_t>(n - j)];
    b[static_cast<std::size_t>(n)] = -acc / s[0];
  }
  return RationalSeries(std::move(b));
}

std::vector<double> evaluate(const RationalSeries& s, double t, int terms) {
  if (terms < 0) throw std::invalid_argument("evaluate: negative term count");
  if (terms > s.order()) throw std::invalid_argument("evaluate: terms exceed truncation order");
  std::vector<double> sums(static_cast<std::size_t>(terms) + 1, 0.0);
  double acc = 0.0;
  double tn = 1.0;
  for (int n = 0; n <= terms; ++n) {
    acc += s[n].convert_to<double>() * tn;
    sums[static_cast<std::size_t>(n)] = acc;
    tn *= t;
  }
  return sums;
}

std::vector<Int> h_dims(const FusionData& data, int order) {
  require_valid(data);
  if (order < 0) throw std::invalid_argument("h_dims: negative order");
  const BigMatrix big = to_big(data.matrix);
  BigVector v = BigVector::Zero(data.size());
  v(data.iota) = 1;
  std::vector<Int> out;
  out.reserve(static_cast<std::size_t>(order) + 1);
  for (int n = 0; n <= order; ++n) {
    out.push_back(v(data.iota));
    if (n < order) v = (big * v).eval();
  }
  return out;
}

RationalSeries h_series(const FusionData& data, int order) {
  const auto dims = h_dims(data, order);
  std::vector<Rational> c(dims.size());
  for (std::size_t i = 0; i < dims.size(); ++i) c[i] = Rational(dims[i]);
  return RationalSeries(std::move(c));
}

RationalSeries k_from_h(const RationalSeries& h) {
  if (h[0] != 1)
    throw std::invalid_argument("k_from_h: constant term of h must be exactly 1");
  const RationalSeries inv = reciprocal(h);
  return RationalSeries::constant(Rational(1), h.order()) - inv;
}

namespace {

// Shared sweep for k_direct / k_dims: w_1 = N e_iota, w_{n+1} = N (Q w_n),
// dim(k_n) = w_n(iota).
std::vector<Int> k_sweep(const FusionData& data, int order) {
  const BigMatrix big = to_big(data.matrix);
  BigVector w = BigVector::Zero(data.size());
  w(data.iota) = 1;
  w = (big * w).eval();
  std::vector<Int> out(static_cast<std::size_t>(order) + 1, Int(0));
  for (int n = 1; n <= order; ++n) {
    out[static_cast<std::size_t>(n)] = w(data.iota);
    if (n < order) {
      w(data.iota) = 0;
      w = (big * w).eval();
    }
  }
  return out;
}

}  // namespace

Int k_direct(const FusionData& data, int n) {
  require_valid(data);
  if (n < 1) throw std::invalid_argument("k_direct: n must be >= 1");
  return k_sweep(data, n)[static_cast<std::size_t>(n)];
}

std::vector<Int> k_dims(const FusionData& data, int order) {
  require_valid(data);
  if (order < 1) throw std::invalid_argument("k_dims: order must be >= 1");
  return k_sweep(data, order);
}

std::optional<Int> skeleton_dimension(const FusionData& data, const SpectralProfile& spectral) {
  require_valid(data);
  if (spectral.dims.values.size() != data.size())
    throw std::invalid_argument("skeleton_dimension: spectral profile does not match data");
  if (!spectral.nilpotency_index.has_value()) return std::nullopt;
  // (Q N Q)^m = 0 kills dim(k_n) for n >= m + 2; m + 2 terms are safe.
  const int bound = *spectral.nilpotency_index + 2;
  const auto ks = k_dims(data, bound);
  Int total = 0;
  for (const Int& k : ks) total += k;
  return total;
}

DimensionProfile dimension_profile(const FusionData& data, int order,
                                   const SpectralProfile& spectral) {
  DimensionProfile profile;
  profile.h = h_dims(data, order);
  profile.k = k_dims(data, order);
  profile.skeleton_dim = skeleton_dimension(data, spectral);
  return profile;
}

}  // namespace gca
