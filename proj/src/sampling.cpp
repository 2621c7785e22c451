#include "gca/sampling.hpp"

#include <algorithm>
#include <stdexcept>

namespace gca {

namespace {

bool strongly_connected(const FusionData& data) {
  if (static_cast<Index>(reachable_sectors(data).size()) != data.size()) return false;
  FusionData reversed = data;
  reversed.matrix = data.matrix.transpose().eval();
  return static_cast<Index>(reachable_sectors(reversed).size()) == data.size();
}

bool columns_nonzero(const IntMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j)
    if (m.col(j).maxCoeff() == 0) return false;
  return true;
}

// Path counts into each sector, as doubles for weighted sampling.
// counts[k] = (N^k) e_iota.
std::vector<RealVector> forward_counts(const FusionData& data, int length) {
  const RealMatrix nd = data.matrix.cast<double>();
  std::vector<RealVector> counts(static_cast<std::size_t>(length) + 1);
  counts[0] = RealVector::Zero(data.size());
  counts[0](data.iota) = 1.0;
  for (int k = 1; k <= length; ++k)
    counts[static_cast<std::size_t>(k)] = nd * counts[static_cast<std::size_t>(k - 1)];
  return counts;
}

}  // namespace

FusionData sample_fusion(std::mt19937_64& rng, const FusionSampleOptions& options) {
  if (options.min_sectors < 1 || options.max_sectors < options.min_sectors)
    throw std::invalid_argument("sample_fusion: bad sector bounds");
  std::uniform_int_distribution<int> sector_count(options.min_sectors, options.max_sectors);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<std::int64_t> entry(1, options.max_entry);

  for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
    const Index s = sector_count(rng);
    FusionData data;
    data.iota = 0;
    data.sectors.reserve(static_cast<std::size_t>(s));
    for (Index i = 0; i < s; ++i) data.sectors.push_back("s" + std::to_string(i));
    data.matrix = IntMatrix::Zero(s, s);
    for (Index i = 0; i < s; ++i)
      for (Index j = options.symmetric ? i : 0; j < s; ++j) {
        const std::int64_t value = coin(rng) < options.density ? entry(rng) : 0;
        data.matrix(i, j) = value;
        if (options.symmetric) data.matrix(j, i) = value;
      }

    if (!validate(data).ok()) continue;
    if (options.require_strongly_connected &&
        (!columns_nonzero(data.matrix) || !strongly_connected(data)))
      continue;
    return data;
  }
  throw std::runtime_error("sample_fusion: no admissible sample within the attempt budget");
}

std::vector<Index> targets_at_length(const FusionData& data, int length) {
  require_valid(data);
  if (length < 0) throw std::invalid_argument("targets_at_length: negative length");
  BigVector v = BigVector::Zero(data.size());
  v(data.iota) = 1;
  const BigMatrix big = to_big(data.matrix);
  for (int k = 0; k < length; ++k) v = (big * v).eval();
  std::vector<Index> out;
  for (Index i = 0; i < data.size(); ++i)
    if (v(i) > 0) out.push_back(i);
  return out;
}

Path sample_path(const FusionData& data, std::mt19937_64& rng, int length, Index target) {
  require_valid(data);
  if (length < 0) throw std::invalid_argument("sample_path: negative length");
  const auto counts = forward_counts(data, length);
  // backward[k](sigma) = number of ways to continue from sigma to target in
  // (length - k) further steps.
  const RealMatrix nd = data.matrix.cast<double>();
  std::vector<RealVector> backward(static_cast<std::size_t>(length) + 1);
  backward[static_cast<std::size_t>(length)] = RealVector::Zero(data.size());
  backward[static_cast<std::size_t>(length)](target) = 1.0;
  for (int k = length - 1; k >= 0; --k)
    backward[static_cast<std::size_t>(k)] =
        nd.transpose() * backward[static_cast<std::size_t>(k + 1)];
  if (backward[0](data.iota) <= 0.0)
    throw std::invalid_argument("sample_path: target not reachable at this length");

  Path path(data.iota);
  for (int k = 0; k < length; ++k) {
    const auto from = static_cast<std::int32_t>(path.target());
    std::vector<double> weights(static_cast<std::size_t>(data.size()), 0.0);
    for (Index to = 0; to < data.size(); ++to)
      weights[static_cast<std::size_t>(to)] =
          static_cast<double>(data.matrix(to, from)) *
          backward[static_cast<std::size_t>(k + 1)](to);
    std::discrete_distribution<int> pick(weights.begin(), weights.end());
    const Index to = pick(rng);
    std::uniform_int_distribution<std::int64_t> slot(0, data.matrix(to, from) - 1);
    path = path.appended(Edge{from, static_cast<std::int32_t>(to),
                              static_cast<std::int32_t>(slot(rng))});
  }
  return path;
}

std::optional<ComplexElement> sample_element(const FusionData& data, std::mt19937_64& rng,
                                             const ElementSampleOptions& options) {
  const auto ket_targets = targets_at_length(data, options.ket_length);
  const auto bra_targets = targets_at_length(data, options.bra_length);
  std::vector<Index> common;
  std::set_intersection(ket_targets.begin(), ket_targets.end(), bra_targets.begin(),
                        bra_targets.end(), std::back_inserter(common));
  if (common.empty()) return std::nullopt;

  std::uniform_int_distribution<std::size_t> pick_target(0, common.size() - 1);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  ComplexElement out;
  for (int t = 0; t < options.terms; ++t) {
    const Index target = common[pick_target(rng)];
    const Path ket = sample_path(data, rng, options.ket_length, target);
    const Path bra = sample_path(data, rng, options.bra_length, target);
    out.add(PathPair(ket, bra), Complex(coeff(rng), coeff(rng)));
  }
  return out;
}

}  // namespace gca
