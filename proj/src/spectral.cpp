#include "gca/spectral.hpp"

#include "gca/series.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gca {

const char* to_string(Classification c) {
  return c == Classification::Exceptional ? "exceptional" : "generic";
}

PerronResult perron(const FusionData& data, double tolerance) {
  require_valid(data);
  if (tolerance <= 0) throw std::invalid_argument("perron: tolerance must be positive");

  const Index s = data.size();
  // The +I shift separates the Perron root from every other eigenvalue on
  // the spectral circle, so periodic fusion graphs converge too.
  const RealMatrix shifted = data.matrix.cast<double>() + RealMatrix::Identity(s, s);

  RealVector v = RealVector::Constant(s, 1.0 / std::sqrt(static_cast<double>(s)));
  const double goal = std::max(5e-15, 1e-2 * tolerance);
  constexpr int kBudget = 1'000'000;

  double lambda = 0.0;
  double residual = std::numeric_limits<double>::infinity();
  double best = residual;
  int since_improvement = 0;
  int it = 0;
  for (; it < kBudget; ++it) {
    RealVector w = shifted * v;
    const double norm = w.norm();
    if (norm == 0.0)
      throw NonConvergence("perron: iterate vanished (matrix has no positive eigenvector)");
    lambda = v.dot(w);
    residual = (w - lambda * v).norm();
    if (residual < best) {
      best = residual;
      since_improvement = 0;
    } else if (++since_improvement > 200) {
      break;  // numerical floor reached
    }
    v = w / norm;
    if (residual <= goal) break;
  }
  if (best > tolerance)
    throw NonConvergence("perron: no convergence within the iteration budget");

  const double at_iota = v(data.iota);
  if (!(at_iota > 1e-9 * v.cwiseAbs().maxCoeff()))
    throw NonConvergence("perron: Frobenius eigenvector vanishes at iota");

  PerronResult result;
  result.d_rho = lambda - 1.0;
  result.dims.values = v / at_iota;
  result.dims.values(data.iota) = 1.0;  // exact by construction
  result.dims.tolerance = tolerance;
  result.iterations = it;
  result.residual = residual;
  return result;
}

std::optional<int> nilpotency_index(const IntMatrix& matrix) {
  if (matrix.rows() != matrix.cols())
    throw std::invalid_argument("nilpotency_index: matrix is not square");
  const Index s = matrix.rows();
  const BigMatrix big = to_big(matrix);
  BigMatrix power = big;
  for (int m = 1; m <= s; ++m) {
    if (is_zero(power)) return m;
    if (m < s) power = (power * big).eval();
  }
  return std::nullopt;  // an s x s nilpotent matrix has index <= s
}

std::optional<int> nilpotency_index(const ReducedFusion& red) {
  return nilpotency_index(red.matrix);
}

std::optional<double> kms_temperature(double d_rho) {
  if (d_rho <= 0) throw std::invalid_argument("kms_temperature: d_rho must be positive");
  if (d_rho <= 1.0 + 1e-9) return std::nullopt;  // automorphism-like, no modular flow scale
  return 2.0 * std::numbers::pi / std::log(d_rho);
}

SpectralProfile classify(const FusionData& data, double tolerance) {
  const PerronResult pf = perron(data, tolerance);
  const ReducedFusion red = reduced_matrix(data);

  SpectralProfile profile;
  profile.d_rho = pf.d_rho;
  profile.dims = pf.dims;
  profile.nilpotency_index = nilpotency_index(red);
  profile.classification = profile.nilpotency_index.has_value() ? Classification::Exceptional
                                                                : Classification::Generic;

  if (profile.nilpotency_index.has_value()) {
    // Exact: all eigenvalues vanish. A numerical eigensolver on a defective
    // nilpotent matrix would report spurious magnitudes around eps^(1/k).
    profile.reduced_radius = 0.0;
  } else {
    Eigen::EigenSolver<RealMatrix> es(red.matrix.cast<double>(), false);
    profile.reduced_radius = es.eigenvalues().cwiseAbs().maxCoeff();
  }
  Eigen::JacobiSVD<RealMatrix> svd(red.matrix.cast<double>());
  profile.reduced_opnorm = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;

  profile.decay_rate =
      profile.reduced_radius == 0.0 ? 0.0 : profile.reduced_radius / profile.d_rho;
  profile.kms_temperature = profile.d_rho > 0 ? kms_temperature(profile.d_rho) : std::nullopt;
  return profile;
}

SupportMass support_mass_series(const FusionData& data, const SpectralProfile& profile,
                                int terms) {
  require_valid(data);
  if (terms < 1) throw std::invalid_argument("support_mass_series: terms must be >= 1");
  if (profile.dims.values.size() != data.size())
    throw std::invalid_argument("support_mass_series: profile does not match data");

  const int nilp_cutoff =
      profile.nilpotency_index ? *profile.nilpotency_index + 1 : -1;
  const int sweep = profile.nilpotency_index ? std::max(terms, nilp_cutoff) : terms;
  const auto ks = k_dims(data, sweep);
  const double d = profile.d_rho;

  SupportMass out;
  out.partial.resize(static_cast<std::size_t>(terms));
  out.tail_bound.assign(static_cast<std::size_t>(terms),
                        std::numeric_limits<double>::infinity());

  double acc = 0.0;
  double dn = 1.0;
  std::vector<double> weighted(static_cast<std::size_t>(sweep) + 1, 0.0);
  for (int n = 1; n <= sweep; ++n) {
    dn *= d;
    weighted[static_cast<std::size_t>(n)] = ks[static_cast<std::size_t>(n)].convert_to<double>() / dn;
  }
  for (int n = 1; n <= terms; ++n) {
    acc += weighted[static_cast<std::size_t>(n)];
    out.partial[static_cast<std::size_t>(n - 1)] = acc;
  }

  if (profile.nilpotency_index) {
    // Finite support: the tail is an exact finite sum.
    out.certified = true;
    out.constant = 0.0;
    for (int t = 1; t <= terms; ++t) {
      double tail = 0.0;
      for (int n = t + 1; n <= sweep; ++n) tail += weighted[static_cast<std::size_t>(n)];
      out.tail_bound[static_cast<std::size_t>(t - 1)] = tail;
    }
    return out;
  }

  const double r = profile.reduced_radius;
  const double decay = profile.decay_rate;
  if (!(r > 0.0) || !(decay < 1.0)) return out;  // no usable geometric bound

  // dim(k_n) <= |N e_iota| |N^T e_iota| r^(n-2) whenever powers of the
  // reduced matrix satisfy |M^k| = r^k (exact for normal M; checked below
  // by an integer normality test).
  const ReducedFusion red = reduced_matrix(data);
  const BigMatrix rb = to_big(red.matrix);
  const BigMatrix rt = rb.transpose();
  out.certified = is_zero((rb * rt - rt * rb).eval());

  const RealMatrix nd = data.matrix.cast<double>();
  const double a = nd.col(data.iota).norm() * nd.row(data.iota).norm();
  out.constant = a * decay / (r * r * (1.0 - decay));
  for (int t = 1; t <= terms; ++t)
    out.tail_bound[static_cast<std::size_t>(t - 1)] = out.constant * std::pow(decay, t);
  return out;
}

}  // namespace gca
