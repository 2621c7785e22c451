#pragma once

// Fusion data from finite-group character tables: with D a chosen irrep,
// sectors are the irreps reachable inside tensor powers of D from the
// trivial one, and N(i, j) is the multiplicity of irrep i in irrep_j (x) D
// computed by the standard character inner product. The character sums
// also give an independent oracle for dim(h_n) = dim of G-invariants in
// D^(x)n.

#include "gca/fusion.hpp"
#include "gca/types.hpp"

#include <string>
#include <vector>

namespace gca {

struct CharacterTable {
  std::string group_name;
  std::vector<std::int64_t> class_sizes;  // sums to |G|
  ComplexMatrix characters;               // rows = irreps, columns = classes
  std::vector<std::string> irrep_names;

  std::int64_t group_order() const;
  Index irrep_count() const { return characters.rows(); }
  Index class_count() const { return characters.cols(); }
  Index irrep_index(const std::string& name) const;  // throws if unknown
};

/// Row orthogonality within 1e-9, positive integer dimensions, shape.
ValidationResult validate_table(const CharacterTable& table);
void require_valid(const CharacterTable& table);

/// Built-in tables: Z/2, Z/3, S3.
CharacterTable z2_table();
CharacterTable z3_table();
CharacterTable s3_table();

/// Multiplicities rounded from character sums; hard error when a value
/// strays more than `tol` from a non-negative integer.
FusionData fusion_from_characters(const CharacterTable& table, Index rep_index,
                                  double tol = 1e-6);

/// dim of G-invariant tensors in D^(x)n, (1/|G|) sum_c |c| chi_D(c)^n.
Int invariant_dims(const CharacterTable& table, Index rep_index, int n, double tol = 1e-6);

}  // namespace gca
