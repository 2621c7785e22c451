#pragma once

// Fusion data: a finite family of sector labels, a distinguished sector
// iota, and the non-negative integer matrix of right multiplication by
// the generating sector. matrix(i, j) counts the multiplicity of sector i
// inside sector_j * rho, so a directed step j -> i exists iff
// matrix(i, j) > 0 and the number of length-n paths from iota to j equals
// (matrix^n)(j, iota).

#include "gca/types.hpp"

#include <string>
#include <vector>

namespace gca {

struct FusionData {
  std::vector<std::string> sectors;
  Index iota = 0;
  IntMatrix matrix;

  Index size() const { return static_cast<Index>(sectors.size()); }
};

struct Defect {
  std::string message;
};

struct ValidationResult {
  std::vector<Defect> defects;
  bool ok() const { return defects.empty(); }
};

/// Checks all structural invariants. Defects are reported, not thrown.
ValidationResult validate(const FusionData& data);

/// Throws std::invalid_argument listing every defect if validation fails.
void require_valid(const FusionData& data);

struct ReducedFusion {
  IntMatrix matrix;  // iota row and column zeroed
  Index iota = 0;
};

/// Masks the iota row and column (Q N Q with Q the complement of the
/// iota projection). Idempotent.
ReducedFusion reduced_matrix(const FusionData& data);

/// Indices reachable from iota by directed steps j -> i with N(i,j) > 0.
/// Always contains iota; sorted ascending.
std::vector<Index> reachable_sectors(const FusionData& data);

}  // namespace gca
