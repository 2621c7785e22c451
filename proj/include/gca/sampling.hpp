#pragma once

// Seeded random fusion data and random algebra elements for the property
// suite. Connected samples additionally have every column nonzero and a
// strongly connected fusion graph, which is what genuine fusion data
// looks like and what the spectral identities assume.

#include "gca/fusion.hpp"
#include "gca/pathalg.hpp"

#include <optional>
#include <random>

namespace gca {

struct FusionSampleOptions {
  int min_sectors = 1;
  int max_sectors = 5;
  std::int64_t max_entry = 3;
  double density = 0.45;
  bool require_strongly_connected = false;
  bool symmetric = false;
  int max_attempts = 20000;
};

FusionData sample_fusion(std::mt19937_64& rng, const FusionSampleOptions& options = {});

struct ElementSampleOptions {
  int terms = 3;
  int ket_length = 2;
  int bra_length = 2;
};

/// Targets reachable from iota in exactly `length` steps.
std::vector<Index> targets_at_length(const FusionData& data, int length);

/// Random element homogeneous at (ket_length, bra_length); term targets are
/// drawn among sectors reachable at both lengths. Returns nullopt when no
/// common target exists.
std::optional<ComplexElement> sample_element(const FusionData& data, std::mt19937_64& rng,
                                             const ElementSampleOptions& options = {});

/// Random walk from iota of the given length conditioned to end at target.
Path sample_path(const FusionData& data, std::mt19937_64& rng, int length, Index target);

}  // namespace gca
