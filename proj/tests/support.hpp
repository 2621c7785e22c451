#pragma once

// Shared helpers for the unit and acceptance suites: small constructors,
// independent linear-recurrence oracles, and seeded sampling wrappers.

#include "gca/fusion.hpp"
#include "gca/sampling.hpp"
#include "gca/types.hpp"

#include <random>
#include <string>
#include <vector>

namespace testsupport {

inline gca::FusionData make_fusion(const std::vector<std::vector<std::int64_t>>& rows,
                                   gca::Index iota = 0,
                                   std::vector<std::string> names = {}) {
  gca::FusionData data;
  const auto s = static_cast<gca::Index>(rows.size());
  if (names.empty())
    for (gca::Index i = 0; i < s; ++i) names.push_back("s" + std::to_string(i));
  data.sectors = std::move(names);
  data.iota = iota;
  data.matrix.resize(s, s);
  for (gca::Index i = 0; i < s; ++i)
    for (gca::Index j = 0; j < s; ++j)
      data.matrix(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return data;
}

inline gca::FusionData lee_yang_rho() { return make_fusion({{0, 1}, {1, 1}}, 0, {"id", "rho"}); }
inline gca::FusionData a4_iota() { return make_fusion({{1, 1}, {1, 0}}, 0, {"iota", "alpha"}); }
inline gca::FusionData inner(std::int64_t d) { return make_fusion({{d}}, 0, {"id"}); }

/// c_n = sum_i coeffs[i] c_{n-1-i} for n >= seeds.size(); exact integers.
inline std::vector<gca::Int> recurrence(std::vector<gca::Int> seeds,
                                        const std::vector<gca::Int>& coeffs, int order) {
  std::vector<gca::Int> c = std::move(seeds);
  for (int n = static_cast<int>(c.size()); n <= order; ++n) {
    gca::Int acc = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (n >= static_cast<int>(i) + 1) acc += coeffs[i] * c[static_cast<std::size_t>(n) - 1 - i];
    c.push_back(acc);
  }
  c.resize(static_cast<std::size_t>(order) + 1);
  return c;
}

// Expansions of the catalog generating functions, by recurrence only.
inline std::vector<gca::Int> fibonacci_h(int order) {  // 1/(1-t-t^2)
  return recurrence({1, 1}, {1, 1}, order);
}
inline std::vector<gca::Int> shifted_fibonacci_h(int order) {  // (1-t)/(1-t-t^2)
  return recurrence({1, 0}, {1, 1}, order);
}
inline std::vector<gca::Int> fibonacci_k(int order) {  // t^2/(1-t-t^2)
  return recurrence({0, 0, 1}, {1, 1}, order);
}
inline std::vector<gca::Int> ones_from_two(int order) {  // t^2/(1-t)
  std::vector<gca::Int> c(static_cast<std::size_t>(order) + 1, 1);
  c[0] = 0;
  if (order >= 1) c[1] = 0;
  return c;
}

inline std::mt19937_64 seeded_rng(std::uint64_t salt = 0) { return std::mt19937_64(0xfeedULL + salt); }

}  // namespace testsupport
