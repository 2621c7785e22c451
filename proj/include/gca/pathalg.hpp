#pragma once

// Path-model realization of the generalized Cuntz algebra attached to a
// fusion datum.
//
// A length-n path from iota to sector s enumerates one basis intertwiner
// of (s, iota rho^n); there are (N^n)(s, iota) of them. A pair
// (ket, bra) with a common target stands for the operator T_ket T_bra^*,
// and finite linear combinations multiply by the prefix rule
//
//   (p,q)(p',q') = (p||s, q')  if p' = q||s
//                = (p, q'||s)  if q  = p'||s
//                = 0           otherwise,
//
// which encodes orthonormality of the path bases plus the vertex
// resolutions of identity. Raising a pair one level (appending every
// outgoing edge to ket and bra alike) does not change the operator it
// denotes; equality of elements is therefore tested after embedding to a
// common level. Elements are plain values and do not carry their fusion
// datum; mixing paths from different data is the caller's bug.
//
// The gauge-invariant state is phi((p,p)) = F[target(p)] / d^length(p)
// with F the iota-normalized Frobenius vector, zero on off-diagonal
// pairs. Coefficients are complex doubles by default; an exact rational
// mode is available whenever the Perron data is integral (inner case,
// finite-group data).

#include "gca/fusion.hpp"
#include "gca/spectral.hpp"
#include "gca/types.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace gca {

struct Edge {
  std::int32_t from = 0;
  std::int32_t to = 0;
  std::int32_t slot = 0;  // 0 <= slot < N(to, from)
  auto operator<=>(const Edge&) const = default;
};

class Path {
 public:
  Path() = default;
  explicit Path(Index start) : start_(static_cast<std::int32_t>(start)) {}

  Index start() const { return start_; }
  Index target() const { return steps_.empty() ? start_ : steps_.back().to; }
  int length() const { return static_cast<int>(steps_.size()); }
  const std::vector<Edge>& steps() const { return steps_; }

  Path appended(const Edge& e) const {
    if (e.from != target())
      throw std::logic_error("Path::appended: edge does not chain onto the path");
    Path out = *this;
    out.steps_.push_back(e);
    return out;
  }

  bool is_prefix_of(const Path& longer) const {
    if (start_ != longer.start_ || steps_.size() > longer.steps_.size()) return false;
    for (std::size_t i = 0; i < steps_.size(); ++i)
      if (steps_[i] != longer.steps_[i]) return false;
    return true;
  }

  /// Steps of `longer` past this prefix, appended onto `base`.
  static Path spliced(const Path& base, const Path& longer, int from_step) {
    Path out = base;
    for (std::size_t i = static_cast<std::size_t>(from_step); i < longer.steps_.size(); ++i)
      out = out.appended(longer.steps_[i]);
    return out;
  }

  auto operator<=>(const Path&) const = default;

 private:
  std::int32_t start_ = 0;
  std::vector<Edge> steps_;
};

/// T_ket T_bra^*. Ket and bra must share start and target sectors.
struct PathPair {
  Path ket;
  Path bra;

  PathPair() = default;
  PathPair(Path k, Path b) : ket(std::move(k)), bra(std::move(b)) {
    if (ket.target() != bra.target() || ket.start() != bra.start())
      throw std::invalid_argument("PathPair: ket and bra must share start and target");
  }

  auto operator<=>(const PathPair&) const = default;
};

inline int gauge_degree(const PathPair& pair) { return pair.ket.length() - pair.bra.length(); }

inline Complex conj_coeff(const Complex& c) { return std::conj(c); }
inline Rational conj_coeff(const Rational& c) { return c; }

template <class Coeff>
class AlgebraElement {
 public:
  AlgebraElement() = default;

  static AlgebraElement unit(Index iota) {
    return term(PathPair(Path(iota), Path(iota)), Coeff(1));
  }
  static AlgebraElement term(const PathPair& pair, const Coeff& coeff) {
    AlgebraElement x;
    x.add(pair, coeff);
    return x;
  }

  void add(const PathPair& pair, const Coeff& coeff) {
    if (coeff == Coeff{}) return;
    auto [it, inserted] = terms_.try_emplace(pair, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == Coeff{}) terms_.erase(it);
    }
  }

  const std::map<PathPair, Coeff>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  bool operator==(const AlgebraElement&) const = default;

 private:
  std::map<PathPair, Coeff> terms_;
};

using ComplexElement = AlgebraElement<Complex>;
using RationalElement = AlgebraElement<Rational>;

template <class Coeff>
AlgebraElement<Coeff> operator+(const AlgebraElement<Coeff>& x, const AlgebraElement<Coeff>& y) {
  AlgebraElement<Coeff> out = x;
  for (const auto& [pair, c] : y.terms()) out.add(pair, c);
  return out;
}

template <class Coeff>
AlgebraElement<Coeff> operator-(const AlgebraElement<Coeff>& x, const AlgebraElement<Coeff>& y) {
  AlgebraElement<Coeff> out = x;
  for (const auto& [pair, c] : y.terms()) out.add(pair, -c);
  return out;
}

template <class Coeff>
AlgebraElement<Coeff> operator*(const Coeff& scale, const AlgebraElement<Coeff>& x) {
  AlgebraElement<Coeff> out;
  for (const auto& [pair, c] : x.terms()) out.add(pair, scale * c);
  return out;
}

template <class Coeff>
AlgebraElement<Coeff> multiply(const AlgebraElement<Coeff>& x, const AlgebraElement<Coeff>& y) {
  AlgebraElement<Coeff> out;
  for (const auto& [a, ca] : x.terms())
    for (const auto& [b, cb] : y.terms()) {
      if (a.bra.is_prefix_of(b.ket)) {
        out.add(PathPair(Path::spliced(a.ket, b.ket, a.bra.length()), b.bra), ca * cb);
      } else if (b.ket.is_prefix_of(a.bra)) {
        out.add(PathPair(a.ket, Path::spliced(b.bra, a.bra, b.ket.length())), ca * cb);
      }
    }
  return out;
}

template <class Coeff>
AlgebraElement<Coeff> star(const AlgebraElement<Coeff>& x) {
  AlgebraElement<Coeff> out;
  for (const auto& [pair, c] : x.terms()) out.add(PathPair(pair.bra, pair.ket), conj_coeff(c));
  return out;
}

/// Appends every outgoing edge of the common target to ket and bra alike;
/// one level up, same operator.
template <class Coeff>
AlgebraElement<Coeff> embed(const FusionData& data, const AlgebraElement<Coeff>& x) {
  AlgebraElement<Coeff> out;
  const Index s = data.size();
  for (const auto& [pair, c] : x.terms()) {
    const auto from = static_cast<std::int32_t>(pair.ket.target());
    for (Index to = 0; to < s; ++to)
      for (std::int64_t slot = 0; slot < data.matrix(to, from); ++slot) {
        const Edge e{from, static_cast<std::int32_t>(to), static_cast<std::int32_t>(slot)};
        out.add(PathPair(pair.ket.appended(e), pair.bra.appended(e)), c);
      }
  }
  return out;
}

/// Gauge degree when every term agrees on it; 0 for the zero element.
template <class Coeff>
std::optional<int> gauge_degree(const AlgebraElement<Coeff>& x) {
  std::optional<int> degree;
  for (const auto& [pair, c] : x.terms()) {
    const int g = gauge_degree(pair);
    if (!degree)
      degree = g;
    else if (*degree != g)
      return std::nullopt;
  }
  return degree ? degree : std::optional<int>(0);
}

// --- state -----------------------------------------------------------

/// Floating-point state weights, from a spectral profile.
struct StateWeights {
  RealVector dims;
  double d_rho = 1.0;
};

inline StateWeights state_weights(const SpectralProfile& profile) {
  return {profile.dims.values, profile.d_rho};
}

/// Exact rational weights; available when the Perron data is integral.
struct ExactWeights {
  std::vector<Rational> dims;
  Rational d_rho = 1;
};

/// Rounds the Perron data to integers and verifies N F = d F exactly.
std::optional<ExactWeights> exact_weights(const FusionData& data, const SpectralProfile& profile,
                                          double round_tol = 1e-6);

Rational rational_pow(const Rational& base, int exponent);

namespace detail {

inline Complex state_value(const StateWeights& w, Index target, int length) {
  return Complex(w.dims(target) / std::pow(w.d_rho, length), 0.0);
}

inline Rational state_value(const ExactWeights& w, Index target, int length) {
  return w.dims[static_cast<std::size_t>(target)] / rational_pow(w.d_rho, length);
}

inline Complex power_factor(const StateWeights& w, int exponent) {
  return Complex(std::pow(w.d_rho, exponent), 0.0);
}

inline Rational power_factor(const ExactWeights& w, int exponent) {
  return rational_pow(w.d_rho, exponent);
}

inline Complex as_complex(const Complex& c) { return c; }
inline Complex as_complex(const Rational& c) { return Complex(c.convert_to<double>(), 0.0); }

}  // namespace detail

/// phi(x): linear, phi(unit) = 1, supported on diagonal pairs.
template <class Coeff, class Weights>
Coeff phi_state(const AlgebraElement<Coeff>& x, const Weights& w) {
  Coeff acc{};
  for (const auto& [pair, c] : x.terms()) {
    if (pair.ket != pair.bra) continue;
    acc += c * Coeff(detail::state_value(w, pair.ket.target(), pair.ket.length()));
  }
  return acc;
}

/// Squared GNS norm phi(x* x).
inline double phi_norm_sq(const ComplexElement& x, const StateWeights& w) {
  return phi_state(multiply(star(x), x), w).real();
}
inline Rational phi_norm_sq(const RationalElement& x, const ExactWeights& w) {
  return phi_state(multiply(star(x), x), w);
}

// --- enumeration ------------------------------------------------------

struct PathLimits {
  int max_length = 16;
  std::size_t max_paths = 1'000'000;
};

struct PathBudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// All length-n paths iota -> target, lexicographic; (N^n)(target, iota)
/// of them. Throws PathBudgetError beyond the limits.
std::vector<Path> enumerate_paths(const FusionData& data, int length, Index target,
                                  const PathLimits& limits = {});

/// Loops iota -> iota of length n >= 1 avoiding iota at interior steps;
/// exactly dim(k_n) of them.
std::vector<Path> first_return_basis(const FusionData& data, int length,
                                     const PathLimits& limits = {});

/// First-return bases for every length 1..max_length.
struct SkeletonBasis {
  std::vector<std::vector<Path>> loops;  // loops[n-1] holds length n

  const std::vector<Path>& at_length(int n) const {
    return loops.at(static_cast<std::size_t>(n) - 1);
  }
};

SkeletonBasis skeleton_basis(const FusionData& data, int max_length,
                             const PathLimits& limits = {});

/// The circle action: scales a term of gauge degree g by exp(i g t).
/// phi is invariant under it (diagonal pairs have degree zero).
ComplexElement gauge_action(const ComplexElement& x, double t);

/// E_n = sum (l, l) over the first-return basis of length n.
template <class Coeff>
AlgebraElement<Coeff> support_projection(const FusionData& data, int length,
                                         const PathLimits& limits = {}) {
  AlgebraElement<Coeff> out;
  for (const Path& loop : first_return_basis(data, length, limits))
    out.add(PathPair(loop, loop), Coeff(1));
  return out;
}

/// phi(E_n) = dim(k_n) / d_rho^n.
double support_expectation(const FusionData& data, const StateWeights& w, int length,
                           const PathLimits& limits = {});

// --- skeleton expansion ------------------------------------------------

template <class Coeff>
struct SkeletonExpansion {
  AlgebraElement<Coeff> approximant;  // pairs of full iota-loops
  AlgebraElement<Coeff> remainder;    // appended segments avoid iota for all `depth` steps
  int depth = 0;
};

/// One step splits each non-iota-target pair through the resolution of
/// identity at its target: edges into iota close an h-pair, the rest stay
/// in the remainder. approximant + remainder equals x up to embedding.
template <class Coeff>
SkeletonExpansion<Coeff> skeleton_expand(const FusionData& data, const AlgebraElement<Coeff>& x,
                                         int depth) {
  if (depth < 0) throw std::invalid_argument("skeleton_expand: negative depth");
  SkeletonExpansion<Coeff> out;
  out.depth = depth;
  AlgebraElement<Coeff> active;
  for (const auto& [pair, c] : x.terms()) {
    if (pair.ket.target() == data.iota)
      out.approximant.add(pair, c);
    else
      active.add(pair, c);
  }
  const Index s = data.size();
  for (int step = 0; step < depth; ++step) {
    AlgebraElement<Coeff> next;
    for (const auto& [pair, c] : active.terms()) {
      const auto from = static_cast<std::int32_t>(pair.ket.target());
      for (Index to = 0; to < s; ++to)
        for (std::int64_t slot = 0; slot < data.matrix(to, from); ++slot) {
          const Edge e{from, static_cast<std::int32_t>(to), static_cast<std::int32_t>(slot)};
          const PathPair child(pair.ket.appended(e), pair.bra.appended(e));
          if (to == data.iota)
            out.approximant.add(child, c);
          else
            next.add(child, c);
        }
    }
    active = std::move(next);
  }
  out.remainder = std::move(active);
  return out;
}

/// Squared GNS norm of the expansion remainder.
inline double remainder_norm_sq(const SkeletonExpansion<Complex>& e, const StateWeights& w) {
  return phi_norm_sq(e.remainder, w);
}

// --- equality up to embedding ------------------------------------------

/// Raises every term to the maximal bra length of its gauge-degree class
/// and compares canonically; exact in both coefficient modes.
template <class Coeff>
AlgebraElement<Coeff> raised_to_levels(const FusionData& data, const AlgebraElement<Coeff>& x,
                                       const std::map<int, int>& bra_level_per_degree) {
  AlgebraElement<Coeff> out;
  const Index s = data.size();
  std::vector<std::pair<PathPair, Coeff>> work(x.terms().begin(), x.terms().end());
  while (!work.empty()) {
    auto [pair, c] = work.back();
    work.pop_back();
    const auto it = bra_level_per_degree.find(gauge_degree(pair));
    const int want = it == bra_level_per_degree.end() ? pair.bra.length() : it->second;
    if (pair.bra.length() >= want) {
      out.add(pair, c);
      continue;
    }
    const auto from = static_cast<std::int32_t>(pair.ket.target());
    for (Index to = 0; to < s; ++to)
      for (std::int64_t slot = 0; slot < data.matrix(to, from); ++slot) {
        const Edge e{from, static_cast<std::int32_t>(to), static_cast<std::int32_t>(slot)};
        work.emplace_back(PathPair(pair.ket.appended(e), pair.bra.appended(e)), c);
      }
  }
  return out;
}

template <class Coeff>
bool equivalent(const FusionData& data, const AlgebraElement<Coeff>& x,
                const AlgebraElement<Coeff>& y) {
  std::map<int, int> levels;
  for (const auto* el : {&x, &y})
    for (const auto& [pair, c] : el->terms()) {
      auto [it, inserted] = levels.try_emplace(gauge_degree(pair), pair.bra.length());
      if (!inserted) it->second = std::max(it->second, pair.bra.length());
    }
  return raised_to_levels(data, x, levels) == raised_to_levels(data, y, levels);
}

// --- KMS check ----------------------------------------------------------

template <class Coeff>
struct KmsCheck {
  Coeff lhs{};  // phi(x y)
  Coeff rhs{};  // d^(bra - ket length of x) * phi(y x)
  double abs_error = 0.0;
  bool pass = false;
};

/// Verifies phi(x y) = d^(n-m) phi(y x) for gauge-homogeneous x with
/// ket length m and bra length n.
template <class Coeff, class Weights>
KmsCheck<Coeff> kms_check(const AlgebraElement<Coeff>& x, const AlgebraElement<Coeff>& y,
                          const Weights& w, double tol = 1e-9) {
  const auto degree = gauge_degree(x);
  if (!degree) throw std::invalid_argument("kms_check: x is not gauge-homogeneous");
  KmsCheck<Coeff> out;
  out.lhs = phi_state(multiply(x, y), w);
  out.rhs = Coeff(detail::power_factor(w, -*degree)) * phi_state(multiply(y, x), w);
  out.abs_error = std::abs(detail::as_complex(out.lhs) - detail::as_complex(out.rhs));
  out.pass = out.abs_error <= tol;
  return out;
}

}  // namespace gca
