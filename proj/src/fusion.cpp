#include "gca/fusion.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace gca {

ValidationResult validate(const FusionData& data) {
  ValidationResult result;
  auto defect = [&result](const std::string& msg) { result.defects.push_back({msg}); };

  const Index s = data.size();
  if (s < 1) {
    defect("sector list is empty");
    return result;
  }

  std::set<std::string> seen;
  for (Index i = 0; i < s; ++i) {
    const std::string& name = data.sectors[static_cast<std::size_t>(i)];
    if (name.empty()) defect("sector " + std::to_string(i) + " has an empty name");
    if (!seen.insert(name).second) defect("duplicate sector name \"" + name + "\"");
  }

  if (data.matrix.rows() != s || data.matrix.cols() != s) {
    std::ostringstream os;
    os << "matrix is " << data.matrix.rows() << "x" << data.matrix.cols()
       << ", expected " << s << "x" << s;
    defect(os.str());
    return result;
  }

  for (Index i = 0; i < s; ++i)
    for (Index j = 0; j < s; ++j)
      if (data.matrix(i, j) < 0) {
        std::ostringstream os;
        os << "negative multiplicity at (" << i << "," << j << ")";
        defect(os.str());
      }

  if (data.iota < 0 || data.iota >= s) {
    defect("iota index " + std::to_string(data.iota) + " out of range");
    return result;
  }

  const auto reached = reachable_sectors(data);
  if (static_cast<Index>(reached.size()) != s) {
    std::set<Index> in(reached.begin(), reached.end());
    for (Index i = 0; i < s; ++i)
      if (!in.count(i))
        defect("sector " + data.sectors[static_cast<std::size_t>(i)] +
               " unreachable from " + data.sectors[static_cast<std::size_t>(data.iota)]);
  }

  return result;
}

void require_valid(const FusionData& data) {
  const auto result = validate(data);
  if (result.ok()) return;
  std::ostringstream os;
  os << "invalid fusion data:";
  for (const auto& d : result.defects) os << " [" << d.message << "]";
  throw std::invalid_argument(os.str());
}

ReducedFusion reduced_matrix(const FusionData& data) {
  require_valid(data);
  ReducedFusion red{data.matrix, data.iota};
  red.matrix.row(data.iota).setZero();
  red.matrix.col(data.iota).setZero();
  return red;
}

std::vector<Index> reachable_sectors(const FusionData& data) {
  const Index s = data.matrix.rows();
  if (data.matrix.cols() != s)
    throw std::invalid_argument("reachable_sectors: matrix is not square");
  if (data.iota < 0 || data.iota >= s)
    throw std::invalid_argument("reachable_sectors: iota out of range");

  std::vector<bool> seen(static_cast<std::size_t>(s), false);
  std::vector<Index> frontier{data.iota};
  seen[static_cast<std::size_t>(data.iota)] = true;
  while (!frontier.empty()) {
    const Index j = frontier.back();
    frontier.pop_back();
    for (Index i = 0; i < s; ++i)
      if (data.matrix(i, j) > 0 && !seen[static_cast<std::size_t>(i)]) {
        seen[static_cast<std::size_t>(i)] = true;
        frontier.push_back(i);
      }
  }

  std::vector<Index> out;
  for (Index i = 0; i < s; ++i)
    if (seen[static_cast<std::size_t>(i)]) out.push_back(i);
  return out;
}

}  // namespace gca
