#include "gca/analysis.hpp"

#include "gca/pathalg.hpp"
#include "gca/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <random>
#include <sstream>

namespace gca {

using nlohmann::json;

double round_to_15_digits(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.15g", value);
  return std::strtod(buffer, nullptr);
}

FusionData resolve_fusion(const InputDocument& doc) {
  if (doc.kind == DocumentKind::Fusion) return doc.fusion;
  return fusion_from_characters(doc.table, doc.table.irrep_index(doc.rep));
}

namespace {

constexpr std::size_t kEnumerationGate = 200'000;

Int total_paths_at(const FusionData& data, int n) {
  BigVector v = BigVector::Zero(data.size());
  v(data.iota) = 1;
  const BigMatrix big = to_big(data.matrix);
  for (int k = 0; k < n; ++k) v = (big * v).eval();
  Int total = 0;
  for (Index i = 0; i < data.size(); ++i) total += v(i);
  return total;
}

std::vector<CheckResult> verification_checks(const InputDocument& doc, const FusionData& data,
                                             const SpectralProfile& profile,
                                             const std::vector<Int>& h, const std::vector<Int>& k,
                                             const std::optional<Int>& skeleton,
                                             const SupportMass& support,
                                             const AnalysisOptions& opts) {
  std::vector<CheckResult> checks;
  const int order = opts.order;
  const PathLimits limits{opts.max_path_length, opts.max_paths};
  const StateWeights weights = state_weights(profile);

  {  // series inversion vs direct matrix sweep, and integrality
    CheckResult c{"series-route-agreement"};
    std::vector<Rational> hr(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) hr[i] = Rational(h[i]);
    const RationalSeries inverted = k_from_h(RationalSeries(std::move(hr)));
    int mismatches = 0;
    std::string first;
    for (int n = 1; n <= order; ++n) {
      const Rational& v = inverted[n];
      const bool integral = boost::multiprecision::denominator(v) == 1 && v >= 0;
      if (!integral || v != Rational(k[static_cast<std::size_t>(n)])) {
        if (mismatches == 0) first = "first mismatch at n = " + std::to_string(n);
        ++mismatches;
      }
    }
    c.pass = mismatches == 0;
    c.residual = mismatches;
    c.detail = c.pass ? "1 - 1/h(t) matches the masked matrix sweep exactly" : first;
    checks.push_back(std::move(c));
  }

  {  // h(t) (1 - k(t)) = 1 through the truncation order
    CheckResult c{"series-reciprocal-identity"};
    std::vector<Rational> hr(h.size()), kr(k.size());
    for (std::size_t i = 0; i < h.size(); ++i) hr[i] = Rational(h[i]);
    for (std::size_t i = 0; i < k.size(); ++i) kr[i] = Rational(k[i]);
    const RationalSeries product =
        RationalSeries(std::move(hr)) *
        (RationalSeries::constant(Rational(1), order) - RationalSeries(std::move(kr)));
    c.pass = product == RationalSeries::constant(Rational(1), order);
    c.detail = "exact rational arithmetic";
    checks.push_back(std::move(c));
  }

  {  // Frobenius eigenvector residual
    CheckResult c{"perron-residual"};
    const RealVector f = profile.dims.values;
    const RealVector residual = data.matrix.cast<double>() * f - profile.d_rho * f;
    c.residual = residual.cwiseAbs().maxCoeff();
    c.pass = c.residual <= opts.tolerance * std::max(1.0, f.cwiseAbs().maxCoeff());
    c.detail = "|N F - d F|_inf with F normalized at iota";
    checks.push_back(std::move(c));
  }

  {  // strict spectral gap of the reduced matrix
    CheckResult c{"reduced-spectral-gap"};
    const double gap = profile.d_rho - profile.reduced_radius;
    c.residual = gap;
    c.pass = gap > 1e-9 * std::max(1.0, profile.d_rho);
    std::ostringstream os;
    os << "d_rho - reduced_radius = " << gap;
    c.detail = os.str();
    checks.push_back(std::move(c));
  }

  {  // support mass: monotone, bounded by 1, tail bound when certified
    CheckResult c{"support-mass"};
    double worst = 0.0;
    bool monotone = true;
    for (std::size_t t = 0; t < support.partial.size(); ++t) {
      if (t > 0 && support.partial[t] < support.partial[t - 1] - 1e-15) monotone = false;
      worst = std::max(worst, support.partial[t] - 1.0);
    }
    bool tail_ok = true;
    if (support.certified)
      for (std::size_t t = 0; t < support.partial.size(); ++t)
        if (1.0 - support.partial[t] > support.tail_bound[t] + 1e-12) tail_ok = false;
    c.residual = std::max(worst, 0.0);
    c.pass = monotone && worst <= 1e-9 && tail_ok;
    c.detail = support.certified ? "monotone, <= 1, geometric tail bound holds"
                                 : "monotone and <= 1 (tail bound not certified)";
    checks.push_back(std::move(c));
  }

  {  // path counts against matrix powers
    CheckResult c{"path-count-matrix-power"};
    int mismatches = 0;
    int used = -1;
    for (int n = 0; n <= 6; ++n) {
      if (total_paths_at(data, n) > Int(kEnumerationGate)) break;
      BigVector v = BigVector::Zero(data.size());
      v(data.iota) = 1;
      const BigMatrix big = to_big(data.matrix);
      for (int t = 0; t < n; ++t) v = (big * v).eval();
      for (Index target = 0; target < data.size(); ++target) {
        const auto paths = enumerate_paths(data, n, target, limits);
        if (Int(paths.size()) != v(target)) ++mismatches;
      }
      used = n;
    }
    c.pass = mismatches == 0 && used >= 0;
    c.residual = mismatches;
    c.detail = "lengths 0.." + std::to_string(used);
    checks.push_back(std::move(c));
  }

  {  // first-return loops against the direct k formula
    CheckResult c{"first-return-count"};
    int mismatches = 0;
    int used = 0;
    for (int n = 1; n <= std::min(6, order); ++n) {
      if (k[static_cast<std::size_t>(n)] > Int(kEnumerationGate)) break;
      if (Int(first_return_basis(data, n, limits).size()) != k[static_cast<std::size_t>(n)])
        ++mismatches;
      used = n;
    }
    c.pass = mismatches == 0;
    c.residual = mismatches;
    c.detail = "lengths 1.." + std::to_string(used);
    checks.push_back(std::move(c));
  }

  {  // classification, nilpotency, and skeleton finiteness agree
    CheckResult c{"skeleton-classification"};
    const bool exceptional = profile.classification == Classification::Exceptional;
    const bool nilpotent = profile.nilpotency_index.has_value();
    const bool finite = skeleton.has_value();
    c.pass = exceptional == nilpotent && nilpotent == finite;
    std::ostringstream os;
    os << to_string(profile.classification) << ", skeleton "
       << (finite ? skeleton->str() : std::string("infinite"));
    c.detail = os.str();
    checks.push_back(std::move(c));
  }

  if (profile.d_rho > 0) {  // state of the support projections
    CheckResult c{"support-expectation"};
    double worst = 0.0;
    for (int n = 1; n <= std::min({6, order}); ++n) {
      if (k[static_cast<std::size_t>(n)] > Int(kEnumerationGate)) break;
      const auto projection = support_projection<Complex>(data, n, limits);
      const Complex value = phi_state(projection, weights);
      const double expected = k[static_cast<std::size_t>(n)].convert_to<double>() /
                              std::pow(profile.d_rho, n);
      worst = std::max(worst, std::abs(value - Complex(expected, 0)));
    }
    c.residual = worst;
    c.pass = worst <= 1e-12;
    c.detail = "phi(E_n) = dim(k_n) / d_rho^n";
    checks.push_back(std::move(c));
  }

  std::mt19937_64 rng(opts.seed);
  auto random_homogeneous = [&](int max_len) -> std::optional<ComplexElement> {
    std::uniform_int_distribution<int> len(0, max_len);
    for (int attempt = 0; attempt < 20; ++attempt) {
      ElementSampleOptions eo;
      eo.ket_length = len(rng);
      eo.bra_length = len(rng);
      eo.terms = 3;
      if (auto x = sample_element(data, rng, eo); x && !x->is_zero()) return x;
    }
    return std::nullopt;
  };

  {  // KMS identity on random homogeneous elements
    CheckResult c{"kms-identity"};
    double worst = 0.0;
    int done = 0;
    for (int t = 0; t < opts.trials; ++t) {
      const auto x = random_homogeneous(3);
      const auto y = random_homogeneous(3);
      if (!x || !y) continue;
      const auto result = kms_check(*x, *y, weights, 1e-9);
      worst = std::max(worst, result.abs_error);
      ++done;
    }
    c.residual = worst;
    c.pass = worst <= 1e-9;
    c.detail = std::to_string(done) + " random trials";
    checks.push_back(std::move(c));
  }

  {  // phi is embedding-invariant (Frobenius eigenvector consistency)
    CheckResult c{"embed-invariance"};
    double worst = 0.0;
    int done = 0;
    for (int t = 0; t < opts.trials; ++t) {
      const auto x = random_homogeneous(3);
      if (!x) continue;
      const Complex before = phi_state(*x, weights);
      const Complex after = phi_state(embed(data, *x), weights);
      worst = std::max(worst, std::abs(before - after));
      ++done;
    }
    c.residual = worst;
    c.pass = worst <= 1e-9;
    c.detail = std::to_string(done) + " random trials";
    checks.push_back(std::move(c));
  }

  if (doc.kind == DocumentKind::CharacterTable) {  // independent character oracle
    CheckResult c{"character-oracle"};
    const Index rep = doc.table.irrep_index(doc.rep);
    int mismatches = 0;
    const int top = std::min(16, order);
    for (int n = 0; n <= top; ++n)
      if (invariant_dims(doc.table, rep, n) != h[static_cast<std::size_t>(n)]) ++mismatches;
    c.pass = mismatches == 0;
    c.residual = mismatches;
    c.detail = "character sums vs matrix powers, n <= " + std::to_string(top);
    checks.push_back(std::move(c));
  }

  return checks;
}

}  // namespace

AnalysisReport analyze(const InputDocument& doc, const AnalysisOptions& options) {
  if (options.order < 2) throw std::invalid_argument("analyze: order must be >= 2");
  AnalysisReport report;
  report.input = doc;
  report.fusion = resolve_fusion(doc);
  require_valid(report.fusion);

  report.spectral = classify(report.fusion, options.tolerance);
  auto dims = dimension_profile(report.fusion, options.order, report.spectral);
  report.h_coeffs = std::move(dims.h);
  report.k_coeffs = std::move(dims.k);
  report.skeleton_dim = std::move(dims.skeleton_dim);
  report.support = support_mass_series(report.fusion, report.spectral, options.order);
  report.verification =
      verification_checks(doc, report.fusion, report.spectral, report.h_coeffs, report.k_coeffs,
                          report.skeleton_dim, report.support, options);
  report.passed = std::all_of(report.verification.begin(), report.verification.end(),
                              [](const CheckResult& c) { return c.pass; });
  return report;
}

std::vector<CheckResult> run_verification(const InputDocument& doc,
                                          const AnalysisOptions& options) {
  return analyze(doc, options).verification;
}

json report_to_json(const AnalysisReport& report) {
  json out;
  out["input"] = emit_document(report.input);
  out["name"] = report.input.name;
  out["kind"] = to_string(report.input.kind);

  json fusion;
  fusion["sectors"] = report.fusion.sectors;
  fusion["iota"] = report.fusion.sectors[static_cast<std::size_t>(report.fusion.iota)];
  json rows = json::array();
  for (Index i = 0; i < report.fusion.matrix.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < report.fusion.matrix.cols(); ++j)
      row.push_back(report.fusion.matrix(i, j));
    rows.push_back(std::move(row));
  }
  fusion["matrix"] = std::move(rows);
  out["fusion"] = std::move(fusion);

  json h = json::array();
  for (const Int& value : report.h_coeffs) h.push_back(value.str());
  out["h_coeffs"] = std::move(h);
  json k = json::array();
  for (std::size_t n = 1; n < report.k_coeffs.size(); ++n) k.push_back(report.k_coeffs[n].str());
  out["k_coeffs"] = std::move(k);

  out["d_rho"] = round_to_15_digits(report.spectral.d_rho);
  json dims = json::array();
  for (Index i = 0; i < report.spectral.dims.values.size(); ++i)
    dims.push_back(round_to_15_digits(report.spectral.dims.values(i)));
  out["quantum_dims"] = std::move(dims);
  out["classification"] = to_string(report.spectral.classification);
  out["nilpotency_index"] = report.spectral.nilpotency_index
                                ? json(*report.spectral.nilpotency_index)
                                : json(nullptr);
  out["skeleton_dim"] = report.skeleton_dim ? json(report.skeleton_dim->str()) : json("infinite");
  out["kms_temperature"] = report.spectral.kms_temperature
                               ? json(round_to_15_digits(*report.spectral.kms_temperature))
                               : json(nullptr);
  out["reduced_radius"] = round_to_15_digits(report.spectral.reduced_radius);
  out["reduced_opnorm"] = round_to_15_digits(report.spectral.reduced_opnorm);
  out["decay_rate"] = round_to_15_digits(report.spectral.decay_rate);

  json mass;
  json partial = json::array();
  for (double v : report.support.partial) partial.push_back(round_to_15_digits(v));
  mass["partial"] = std::move(partial);
  json bound = json::array();
  for (double v : report.support.tail_bound)
    bound.push_back(std::isfinite(v) ? json(round_to_15_digits(v)) : json(nullptr));
  mass["tail_bound"] = std::move(bound);
  mass["constant"] = round_to_15_digits(report.support.constant);
  mass["certified"] = report.support.certified;
  out["support_mass"] = std::move(mass);

  json checks = json::array();
  for (const CheckResult& c : report.verification) {
    json entry;
    entry["check"] = c.name;
    entry["pass"] = c.pass;
    entry["residual"] = round_to_15_digits(c.residual);
    entry["detail"] = c.detail;
    checks.push_back(std::move(entry));
  }
  out["verification"] = std::move(checks);
  out["passed"] = report.passed;
  return out;
}

std::string report_to_table(const AnalysisReport& report) {
  std::ostringstream os;
  os.precision(15);
  auto label = [&os](const char* name) -> std::ostringstream& {
    os << std::left << std::setw(18) << name;
    return os;
  };

  label("input") << report.input.name << " (" << to_string(report.input.kind) << ")\n";
  label("sectors");
  for (const auto& s : report.fusion.sectors) os << s << " ";
  os << " (iota = " << report.fusion.sectors[static_cast<std::size_t>(report.fusion.iota)]
     << ")\n";
  label("matrix");
  for (Index i = 0; i < report.fusion.matrix.rows(); ++i) {
    os << "[";
    for (Index j = 0; j < report.fusion.matrix.cols(); ++j)
      os << (j ? " " : "") << report.fusion.matrix(i, j);
    os << "]";
  }
  os << "\n";
  label("d_rho") << report.spectral.d_rho << "\n";
  label("quantum dims");
  for (Index i = 0; i < report.spectral.dims.values.size(); ++i)
    os << report.spectral.dims.values(i) << " ";
  os << "\n";
  label("classification") << to_string(report.spectral.classification) << "\n";
  label("nilpotency index");
  if (report.spectral.nilpotency_index)
    os << *report.spectral.nilpotency_index << "\n";
  else
    os << "none\n";
  label("skeleton dim")
      << (report.skeleton_dim ? report.skeleton_dim->str() : std::string("infinite")) << "\n";
  label("kms temperature");
  if (report.spectral.kms_temperature)
    os << *report.spectral.kms_temperature << "\n";
  else
    os << "none\n";
  label("reduced radius") << report.spectral.reduced_radius << "\n";
  label("reduced opnorm") << report.spectral.reduced_opnorm << "\n";
  label("decay rate") << report.spectral.decay_rate << "\n";

  label("h coefficients");
  for (const Int& v : report.h_coeffs) os << v.str() << " ";
  os << "\n";
  label("k coefficients");
  for (std::size_t n = 1; n < report.k_coeffs.size(); ++n) os << report.k_coeffs[n].str() << " ";
  os << "\n";

  label("support mass");
  const std::size_t shown = std::min<std::size_t>(report.support.partial.size(), 12);
  for (std::size_t t = 0; t < shown; ++t) os << report.support.partial[t] << " ";
  if (shown < report.support.partial.size())
    os << "... " << report.support.partial.back();
  os << "\n";

  os << "verification\n";
  for (const CheckResult& c : report.verification)
    os << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name << "  (residual " << c.residual
       << "; " << c.detail << ")\n";
  label("overall") << (report.passed ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace gca
