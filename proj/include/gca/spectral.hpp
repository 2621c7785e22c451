#pragma once

// Perron-Frobenius analysis of the fusion matrix and the derived
// classification: the reduced matrix is nilpotent exactly when the
// skeleton space is finite-dimensional ("exceptional"), and its spectral
// radius divided by the Perron eigenvalue governs the decay of remainder
// norms in the skeleton expansion.

#include "gca/fusion.hpp"
#include "gca/types.hpp"

#include <optional>
#include <vector>

namespace gca {

struct NonConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Frobenius eigenvector normalized so the iota component is exactly 1.
struct QuantumDimensions {
  RealVector values;
  double tolerance = 1e-12;
};

enum class Classification { Exceptional, Generic };

const char* to_string(Classification c);

struct SpectralProfile {
  double d_rho = 0.0;
  QuantumDimensions dims;
  std::optional<int> nilpotency_index;  // nullopt = not nilpotent
  Classification classification = Classification::Generic;
  double reduced_radius = 0.0;
  double reduced_opnorm = 0.0;
  double decay_rate = 0.0;                  // reduced_radius / d_rho
  std::optional<double> kms_temperature;    // 2*pi / ln(d_rho), d_rho > 1 only
};

struct PerronResult {
  double d_rho = 0.0;
  QuantumDimensions dims;
  int iterations = 0;
  double residual = 0.0;
};

/// Power iteration on N + I (the shift makes the Perron root strictly
/// dominant for periodic graphs). Budget 1e6 iterations; throws
/// NonConvergence for pathological matrices without a positive
/// iota-normalizable eigenvector.
PerronResult perron(const FusionData& data, double tolerance = 1e-12);

/// Smallest m <= size with matrix^m == 0 by exact integer arithmetic.
std::optional<int> nilpotency_index(const IntMatrix& matrix);
std::optional<int> nilpotency_index(const ReducedFusion& red);

std::optional<double> kms_temperature(double d_rho);

/// Full spectral profile of a valid fusion datum.
SpectralProfile classify(const FusionData& data, double tolerance = 1e-12);

/// Cumulative state mass of the skeleton support projections,
/// S_T = sum_{n<=T} dim(k_n) / d_rho^n for T = 1..terms, with a geometric
/// tail bound derived from the reduced spectral radius. The bound is
/// rigorous whenever the reduced matrix is normal (any symmetric fusion
/// matrix); `certified` records that condition.
struct SupportMass {
  std::vector<double> partial;     // S_1..S_terms
  std::vector<double> tail_bound;  // bound on 1 - S_T, same indexing
  double constant = 0.0;           // C with bound = C * decay^T
  bool certified = false;
};

SupportMass support_mass_series(const FusionData& data, const SpectralProfile& profile,
                                int terms);

}  // namespace gca
