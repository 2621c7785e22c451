#include "gca/pathalg.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gca {

namespace {

void check_budget(int length, std::size_t produced, const PathLimits& limits) {
  if (length > limits.max_length) {
    std::ostringstream os;
    os << "path length " << length << " exceeds the cap " << limits.max_length;
    throw PathBudgetError(os.str());
  }
  if (produced > limits.max_paths) {
    std::ostringstream os;
    os << "more than " << limits.max_paths << " paths requested";
    throw PathBudgetError(os.str());
  }
}

// Depth-first extension in (to, slot) order yields lexicographic output.
void extend(const FusionData& data, const Path& prefix, int remaining, Index target,
            bool avoid_iota_interior, const PathLimits& limits, std::vector<Path>& out) {
  if (remaining == 0) {
    if (prefix.target() == target) {
      out.push_back(prefix);
      check_budget(prefix.length(), out.size(), limits);
    }
    return;
  }
  const Index s = data.size();
  const auto from = static_cast<std::int32_t>(prefix.target());
  for (Index to = 0; to < s; ++to) {
    if (avoid_iota_interior && remaining > 1 && to == data.iota) continue;
    for (std::int64_t slot = 0; slot < data.matrix(to, from); ++slot) {
      extend(data,
             prefix.appended(Edge{from, static_cast<std::int32_t>(to),
                                  static_cast<std::int32_t>(slot)}),
             remaining - 1, target, avoid_iota_interior, limits, out);
    }
  }
}

}  // namespace

std::vector<Path> enumerate_paths(const FusionData& data, int length, Index target,
                                  const PathLimits& limits) {
  require_valid(data);
  if (length < 0) throw std::invalid_argument("enumerate_paths: negative length");
  if (target < 0 || target >= data.size())
    throw std::invalid_argument("enumerate_paths: target out of range");
  check_budget(length, 0, limits);
  std::vector<Path> out;
  extend(data, Path(data.iota), length, target, /*avoid_iota_interior=*/false, limits, out);
  return out;
}

std::vector<Path> first_return_basis(const FusionData& data, int length,
                                     const PathLimits& limits) {
  require_valid(data);
  if (length < 1) throw std::invalid_argument("first_return_basis: length must be >= 1");
  check_budget(length, 0, limits);
  std::vector<Path> out;
  extend(data, Path(data.iota), length, data.iota, /*avoid_iota_interior=*/true, limits, out);
  return out;
}

double support_expectation(const FusionData& data, const StateWeights& w, int length,
                           const PathLimits& limits) {
  const auto basis = first_return_basis(data, length, limits);
  return static_cast<double>(basis.size()) / std::pow(w.d_rho, length);
}

SkeletonBasis skeleton_basis(const FusionData& data, int max_length, const PathLimits& limits) {
  if (max_length < 1) throw std::invalid_argument("skeleton_basis: max_length must be >= 1");
  SkeletonBasis basis;
  basis.loops.reserve(static_cast<std::size_t>(max_length));
  for (int n = 1; n <= max_length; ++n)
    basis.loops.push_back(first_return_basis(data, n, limits));
  return basis;
}

ComplexElement gauge_action(const ComplexElement& x, double t) {
  ComplexElement out;
  for (const auto& [pair, c] : x.terms())
    out.add(pair, c * std::polar(1.0, gauge_degree(pair) * t));
  return out;
}

Rational rational_pow(const Rational& base, int exponent) {
  if (exponent < 0) {
    if (base == 0) throw std::invalid_argument("rational_pow: zero to a negative power");
    return Rational(1) / rational_pow(base, -exponent);
  }
  Rational acc(1);
  Rational b = base;
  unsigned e = static_cast<unsigned>(exponent);
  while (e) {
    if (e & 1u) acc *= b;
    b *= b;
    e >>= 1u;
  }
  return acc;
}

std::optional<ExactWeights> exact_weights(const FusionData& data, const SpectralProfile& profile,
                                          double round_tol) {
  const Index s = data.size();
  if (profile.dims.values.size() != s) return std::nullopt;

  const double d_rounded = std::round(profile.d_rho);
  if (std::abs(profile.d_rho - d_rounded) > round_tol) return std::nullopt;
  BigVector f(s);
  for (Index i = 0; i < s; ++i) {
    const double v = profile.dims.values(i);
    const double r = std::round(v);
    if (std::abs(v - r) > round_tol || r <= 0) return std::nullopt;
    f(i) = Int(static_cast<long long>(r));
  }

  const Int d(static_cast<long long>(d_rounded));
  const BigVector lhs = (to_big(data.matrix) * f).eval();
  for (Index i = 0; i < s; ++i)
    if (lhs(i) != d * f(i)) return std::nullopt;

  ExactWeights out;
  out.d_rho = Rational(d);
  out.dims.resize(static_cast<std::size_t>(s));
  for (Index i = 0; i < s; ++i) out.dims[static_cast<std::size_t>(i)] = Rational(f(i));
  return out;
}

}  // namespace gca
