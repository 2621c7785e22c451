#pragma once

// One analysis run: resolve the input to fusion data, compute the series,
// spectral, and state invariants, and re-verify the cross-module
// identities on the result. The verification block is also what the
// `verify` command runs on its own; exit status 0 means every check
// passed.

#include "gca/document.hpp"
#include "gca/fusion.hpp"
#include "gca/series.hpp"
#include "gca/spectral.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gca {

struct AnalysisOptions {
  int order = 32;
  double tolerance = 1e-12;
  int max_path_length = 16;
  std::size_t max_paths = 1'000'000;
  int trials = 20;
  std::uint64_t seed = 0x5eed5eedULL;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  double residual = 0.0;
  std::string detail;

  CheckResult() = default;
  explicit CheckResult(std::string check_name) : name(std::move(check_name)) {}
};

struct AnalysisReport {
  InputDocument input;
  FusionData fusion;  // resolved datum (derived from characters when applicable)
  std::vector<Int> h_coeffs;  // n = 0..order
  std::vector<Int> k_coeffs;  // n = 0..order with k[0] = 0; emitted from n = 1
  SpectralProfile spectral;
  std::optional<Int> skeleton_dim;
  SupportMass support;
  std::vector<CheckResult> verification;
  bool passed = false;
};

/// The fusion datum a document denotes.
FusionData resolve_fusion(const InputDocument& doc);

AnalysisReport analyze(const InputDocument& doc, const AnalysisOptions& options = {});

/// The property suite alone (what `verify` runs).
std::vector<CheckResult> run_verification(const InputDocument& doc,
                                          const AnalysisOptions& options = {});

nlohmann::json report_to_json(const AnalysisReport& report);
std::string report_to_table(const AnalysisReport& report);

/// Rounds to 15 significant digits (reproducible machine output).
double round_to_15_digits(double value);

}  // namespace gca
