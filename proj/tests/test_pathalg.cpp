#include "doctest.h"

#include "gca/pathalg.hpp"
#include "gca/sampling.hpp"
#include "gca/series.hpp"
#include "gca/spectral.hpp"

#include "support.hpp"

#include <cmath>

using namespace gca;

namespace {

const double kGolden = (1.0 + std::sqrt(5.0)) / 2.0;

Path path_of(const FusionData& data, std::initializer_list<Index> sectors,
             std::initializer_list<int> slots = {}) {
  Path p(data.iota);
  std::vector<int> slot_list(slots);
  std::size_t i = 0;
  for (Index to : sectors) {
    const int slot = i < slot_list.size() ? slot_list[i] : 0;
    p = p.appended(Edge{static_cast<std::int32_t>(p.target()), static_cast<std::int32_t>(to),
                        static_cast<std::int32_t>(slot)});
    ++i;
  }
  return p;
}

ComplexElement pair_term(const Path& ket, const Path& bra) {
  return ComplexElement::term(PathPair(ket, bra), Complex(1, 0));
}

std::optional<ComplexElement> random_element(const FusionData& data, std::mt19937_64& rng,
                                             int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  for (int attempt = 0; attempt < 30; ++attempt) {
    ElementSampleOptions options;
    options.ket_length = len(rng);
    options.bra_length = len(rng);
    if (auto x = sample_element(data, rng, options); x && !x->is_zero()) return x;
  }
  return std::nullopt;
}

std::vector<FusionData> catalog_data() {
  return {testsupport::a4_iota(), testsupport::lee_yang_rho(), testsupport::inner(2),
          testsupport::inner(3)};
}

}  // namespace

TEST_CASE("path enumeration counts match matrix powers") {
  const auto ly = testsupport::lee_yang_rho();
  CHECK(enumerate_paths(ly, 4, 0).size() == 2);  // (N^4)(id, id)
  CHECK(enumerate_paths(ly, 0, ly.iota).size() == 1);
  CHECK(enumerate_paths(ly, 0, 1).empty());
  CHECK(enumerate_paths(ly, 1, 0).empty());  // id not reachable in one step

  const auto inner2 = testsupport::inner(2);
  CHECK(enumerate_paths(inner2, 2, 0).size() == 4);

  auto rng = testsupport::seeded_rng(7);
  int checked = 0;
  for (int trial = 0; trial < 200 && checked < 15; ++trial) {
    const auto data = sample_fusion(rng);
    const BigMatrix big = to_big(data.matrix);
    BigVector v = BigVector::Zero(data.size());
    v(data.iota) = 1;
    Int total = 0;
    for (int n = 0; n <= 10; ++n) {
      for (Index i = 0; i < data.size(); ++i) total += v(i);
      v = (big * v).eval();
    }
    if (total > 150000) continue;
    v = BigVector::Zero(data.size());
    v(data.iota) = 1;
    for (int n = 0; n <= 10; ++n) {
      for (Index target = 0; target < data.size(); ++target)
        CHECK(Int(enumerate_paths(data, n, target).size()) == v(target));
      v = (big * v).eval();
    }
    ++checked;
  }
  CHECK(checked == 15);
}

TEST_CASE("path enumeration is lexicographic and budget-limited") {
  const auto inner3 = testsupport::inner(3);
  const auto paths = enumerate_paths(inner3, 3, 0);
  CHECK(paths.size() == 27);
  CHECK(std::is_sorted(paths.begin(), paths.end()));

  PathLimits tight;
  tight.max_length = 2;
  CHECK_THROWS_AS(enumerate_paths(inner3, 3, 0, tight), PathBudgetError);
  tight.max_length = 16;
  tight.max_paths = 10;
  CHECK_THROWS_AS(enumerate_paths(inner3, 3, 0, tight), PathBudgetError);
}

TEST_CASE("first-return bases on the catalog data") {
  const auto a4 = testsupport::a4_iota();
  CHECK(first_return_basis(a4, 1).size() == 1);
  CHECK(first_return_basis(a4, 2).size() == 1);
  for (int n = 3; n <= 6; ++n) CHECK(first_return_basis(a4, n).empty());

  const auto ly = testsupport::lee_yang_rho();
  const auto loops5 = first_return_basis(ly, 5);
  REQUIRE(loops5.size() == 1);  // id->rho->rho->rho->rho->id
  CHECK(loops5[0] == path_of(ly, {1, 1, 1, 1, 0}));

  const auto inner4 = testsupport::inner(4);
  CHECK(first_return_basis(inner4, 1).size() == 4);
  CHECK(first_return_basis(inner4, 2).empty());
}

TEST_CASE("multiplication follows the Cuntz prefix rule (inner case)") {
  const auto inner2 = testsupport::inner(2);
  const Path empty(inner2.iota);
  const Path v1 = path_of(inner2, {0}, {0});
  const Path v2 = path_of(inner2, {0}, {1});

  // v1^* v2 = 0
  CHECK(multiply(pair_term(empty, v1), pair_term(v2, empty)).is_zero());
  // v1^* (v1 v2) = v2
  const Path v1v2 = v1.appended(Edge{0, 0, 1});
  CHECK(multiply(pair_term(empty, v1), pair_term(v1v2, empty)) == pair_term(v2, empty));
  // T_p T_p^* built from (p, 0)(0, p)
  CHECK(multiply(pair_term(v1v2, empty), pair_term(empty, v1v2)) == pair_term(v1v2, v1v2));
  // v1^* v1 = 1
  CHECK(multiply(pair_term(empty, v1), pair_term(v1, empty)) ==
        ComplexElement::unit(inner2.iota));
}

TEST_CASE("star is an involutive anti-homomorphism") {
  const auto ly = testsupport::lee_yang_rho();
  const Path u = path_of(ly, {1});
  const Path loop2 = path_of(ly, {1, 0});
  const auto x = pair_term(u, u) + Complex(0, 2) * pair_term(loop2, loop2);
  CHECK(star(star(x)) == x);

  auto rng = testsupport::seeded_rng(8);
  for (const auto& data : catalog_data()) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto a = random_element(data, rng, 3);
      const auto b = random_element(data, rng, 3);
      if (!a || !b) continue;
      CHECK(star(multiply(*a, *b)) == multiply(star(*b), star(*a)));
    }
  }
}

TEST_CASE("multiplication is associative") {
  auto rng = testsupport::seeded_rng(9);
  std::uniform_int_distribution<int> small(-3, 3);
  for (const auto& data : catalog_data()) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto a = random_element(data, rng, 3);
      const auto b = random_element(data, rng, 3);
      const auto c = random_element(data, rng, 3);
      if (!a || !b || !c) continue;

      // exact statement: rational coefficients on the same path pairs
      auto rationalize = [&](const ComplexElement& x) {
        RationalElement out;
        for (const auto& [pair, coeff] : x.terms())
          out.add(pair, Rational(small(rng), 2));
        return out;
      };
      const auto ra = rationalize(*a);
      const auto rb = rationalize(*b);
      const auto rc = rationalize(*c);
      CHECK(multiply(multiply(ra, rb), rc) == multiply(ra, multiply(rb, rc)));

      // floating coefficients agree term by term up to roundoff
      const auto left = multiply(multiply(*a, *b), *c);
      const auto right = multiply(*a, multiply(*b, *c));
      const auto diff = left - right;
      double worst = 0.0;
      for (const auto& [pair, coeff] : diff.terms()) worst = std::max(worst, std::abs(coeff));
      CHECK(worst < 1e-12);
    }
  }
}

TEST_CASE("embedding raises the level without changing the operator") {
  const auto ly = testsupport::lee_yang_rho();
  const auto unit = ComplexElement::unit(ly.iota);
  const auto raised = embed(ly, unit);
  REQUIRE(raised.size() == 1);  // single edge id -> rho
  CHECK(raised.terms().begin()->first.ket == path_of(ly, {1}));
  CHECK(equivalent(ly, unit, raised));

  const auto inner3 = testsupport::inner(3);
  const auto unit3 = ComplexElement::unit(inner3.iota);
  CHECK(embed(inner3, unit3).size() == 3);
  CHECK(embed(inner3, embed(inner3, unit3)).size() == 9);

  auto rng = testsupport::seeded_rng(10);
  for (const auto& data : catalog_data()) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto a = random_element(data, rng, 2);
      const auto b = random_element(data, rng, 2);
      if (!a || !b) continue;
      CHECK(embed(data, multiply(*a, *b)) == multiply(embed(data, *a), embed(data, *b)));
    }
  }
}

TEST_CASE("phi on basis pairs (exact inner case, floating Lee-Yang)") {
  const auto inner3 = testsupport::inner(3);
  const auto profile3 = classify(inner3);
  const auto exact = exact_weights(inner3, profile3);
  REQUIRE(exact.has_value());
  const Path v0 = path_of(inner3, {0}, {0});
  CHECK(phi_state(RationalElement::term(PathPair(v0, v0), Rational(1)), *exact) ==
        Rational(1, 3));

  const auto ly = testsupport::lee_yang_rho();
  const auto weights = state_weights(classify(ly));
  const Path loop2 = path_of(ly, {1, 0});
  const Complex value = phi_state(pair_term(loop2, loop2), weights);
  CHECK(std::abs(value - Complex(1.0 / (kGolden * kGolden), 0)) < 1e-12);

  // off-diagonal same-length pairs vanish
  const Path long_loop = path_of(ly, {1, 1, 1, 0});
  const Path via_id = path_of(ly, {1, 0, 1, 0});
  CHECK(phi_state(pair_term(long_loop, via_id), weights) == Complex(0, 0));
  CHECK(phi_state(ComplexElement::unit(ly.iota), weights) == Complex(1, 0));

  // nonzero gauge degree vanishes too
  const Path one_step = path_of(ly, {1});
  const Path three_steps = path_of(ly, {1, 1, 1});
  const auto charged = pair_term(three_steps, one_step);
  CHECK(gauge_degree(charged) == 2);
  CHECK(phi_state(charged, weights) == Complex(0, 0));
}

TEST_CASE("phi is a state: positivity, star symmetry, embedding invariance") {
  auto rng = testsupport::seeded_rng(11);
  for (const auto& data : catalog_data()) {
    const auto weights = state_weights(classify(data));
    for (int trial = 0; trial < 15; ++trial) {
      const auto x = random_element(data, rng, 3);
      if (!x) continue;
      const Complex norm_sq = phi_state(multiply(star(*x), *x), weights);
      CHECK(norm_sq.real() >= -1e-12);
      CHECK(std::abs(norm_sq.imag()) < 1e-12);
      CHECK(std::abs(phi_state(star(*x), weights) - std::conj(phi_state(*x, weights))) < 1e-12);
      CHECK(std::abs(phi_state(embed(data, *x), weights) - phi_state(*x, weights)) < 1e-9);
    }
  }
}

TEST_CASE("support projections and their expectations") {
  const auto a4 = testsupport::a4_iota();
  const auto wa4 = state_weights(classify(a4));
  const double mass = support_expectation(a4, wa4, 1) + support_expectation(a4, wa4, 2);
  CHECK(std::abs(mass - 1.0) < 1e-12);

  const auto ly = testsupport::lee_yang_rho();
  const auto wly = state_weights(classify(ly));
  CHECK(std::abs(support_expectation(ly, wly, 2) - 1.0 / (kGolden * kGolden)) < 1e-12);
  CHECK(support_expectation(ly, wly, 1) == 0.0);

  const auto e2 = support_projection<Complex>(ly, 2);
  CHECK(std::abs(phi_state(e2, wly) - Complex(1.0 / (kGolden * kGolden), 0)) < 1e-12);
}

TEST_CASE("skeleton expansion reconstructs the element at every depth") {
  auto rng = testsupport::seeded_rng(12);
  for (const auto& data : catalog_data()) {
    for (int trial = 0; trial < 6; ++trial) {
      const auto x = random_element(data, rng, 2);
      if (!x) continue;
      for (int depth : {0, 1, 3, 8}) {
        const auto expansion = skeleton_expand(data, *x, depth);
        CHECK(equivalent(data, *x, expansion.approximant + expansion.remainder));
        for (const auto& [pair, c] : expansion.approximant.terms())
          CHECK(pair.ket.target() == data.iota);
        for (const auto& [pair, c] : expansion.remainder.terms())
          CHECK(pair.ket.target() != data.iota);
      }
    }
  }
}

TEST_CASE("skeleton expansion on the named examples") {
  const auto a4 = testsupport::a4_iota();
  const Path to_alpha = path_of(a4, {1});
  const auto xa4 = pair_term(to_alpha, to_alpha);
  const auto ea4 = skeleton_expand(a4, xa4, 1);
  CHECK(ea4.remainder.is_zero());  // nilpotent reduced matrix
  CHECK(equivalent(a4, xa4, ea4.approximant));

  const auto ly = testsupport::lee_yang_rho();
  const Path u = path_of(ly, {1});
  const auto xly = pair_term(u, u);
  const auto ely = skeleton_expand(ly, xly, 3);
  CHECK(ely.remainder.size() == 1);  // the all-rho extension survives
  CHECK(ely.approximant.size() == 3);

  const Path loop = path_of(ly, {1, 0});
  const auto hpair = pair_term(loop, loop);
  const auto done = skeleton_expand(ly, hpair, 0);
  CHECK(done.approximant == hpair);
  CHECK(done.remainder.is_zero());
}

TEST_CASE("remainder norms follow the exact geometric law (Lee-Yang)") {
  const auto ly = testsupport::lee_yang_rho();
  const auto profile = classify(ly);
  const auto weights = state_weights(profile);
  // For the diagonal pair at level n with target rho, the depth-R remainder
  // is the single all-rho extension and phi gives F_rho / d^(n+R) exactly.
  for (int n = 1; n <= 3; ++n) {
    Path p(ly.iota);
    for (int i = 0; i < n; ++i)
      p = p.appended(Edge{static_cast<std::int32_t>(p.target()), 1, 0});
    if (p.target() != 1) continue;
    const auto x = pair_term(p, p);
    for (int depth = 0; depth <= 6; ++depth) {
      const auto expansion = skeleton_expand(ly, x, depth);
      const double measured = remainder_norm_sq(expansion, weights);
      const double expected = kGolden / std::pow(kGolden, n + depth);
      CHECK(std::abs(measured - expected) < 1e-12);
    }
  }

  const auto a4 = testsupport::a4_iota();
  const auto xa4 = pair_term(path_of(a4, {1}), path_of(a4, {1}));
  const auto wa4 = state_weights(classify(a4));
  CHECK(remainder_norm_sq(skeleton_expand(a4, xa4, 1), wa4) == 0.0);
  CHECK(remainder_norm_sq(skeleton_expand(a4, xa4, 4), wa4) == 0.0);
}

TEST_CASE("remainder norms obey the reduced-radius decay bound") {
  auto rng = testsupport::seeded_rng(13);
  for (const auto& data : catalog_data()) {
    const auto profile = classify(data);
    const auto weights = state_weights(profile);
    for (int trial = 0; trial < 8; ++trial) {
      const auto x = random_element(data, rng, 2);
      if (!x) continue;
      const double base = remainder_norm_sq(skeleton_expand(data, *x, 0), weights);
      for (int depth = 1; depth <= 6; ++depth) {
        const double value = remainder_norm_sq(skeleton_expand(data, *x, depth), weights);
        CHECK(value <= (base + 1e-12) * std::pow(profile.decay_rate, depth) + 1e-12);
      }
    }
  }
}

TEST_CASE("skeleton basis elements of different lengths are orthogonal") {
  for (const auto& data : catalog_data()) {
    for (int n = 1; n <= 8; ++n)
      for (int m = 1; m <= 8; ++m) {
        if (n == m) continue;
        for (const auto& ln : first_return_basis(data, n))
          for (const auto& lm : first_return_basis(data, m)) {
            const auto x = pair_term(ln, Path(data.iota));
            const auto y = pair_term(lm, Path(data.iota));
            CHECK(multiply(star(x), y).is_zero());
          }
      }
  }
}

TEST_CASE("Cuntz relations hold exactly in the rational mode") {
  const auto inner3 = testsupport::inner(3);
  const auto exact = exact_weights(inner3, classify(inner3));
  REQUIRE(exact.has_value());
  const Path empty(inner3.iota);

  RationalElement sum;
  for (int i = 0; i < 3; ++i) {
    const Path vi = path_of(inner3, {0}, {i});
    for (int j = 0; j < 3; ++j) {
      const Path vj = path_of(inner3, {0}, {j});
      const auto product = multiply(RationalElement::term(PathPair(empty, vi), Rational(1)),
                                    RationalElement::term(PathPair(vj, empty), Rational(1)));
      if (i == j)
        CHECK(product == RationalElement::unit(inner3.iota));
      else
        CHECK(product.is_zero());
    }
    sum.add(PathPair(vi, vi), Rational(1));
  }
  CHECK(phi_state(sum, *exact) == Rational(1));
  CHECK(equivalent(inner3, sum, RationalElement::unit(inner3.iota)));
}

TEST_CASE("KMS identity for the gauge action") {
  const auto ly = testsupport::lee_yang_rho();
  const auto weights = state_weights(classify(ly));

  const Path p = path_of(ly, {1, 1});
  const Path q = path_of(ly, {1});
  const auto x = pair_term(p, q);
  const auto y = pair_term(q, p);
  const auto direct = kms_check(x, y, weights);
  CHECK(direct.pass);
  CHECK(std::abs(direct.lhs - Complex(kGolden / (kGolden * kGolden), 0)) < 1e-12);

  auto rng = testsupport::seeded_rng(14);
  for (const auto& data : catalog_data()) {
    const auto w = state_weights(classify(data));
    int done = 0;
    for (int trial = 0; trial < 40 && done < 25; ++trial) {
      const auto xx = random_element(data, rng, 3);
      const auto yy = random_element(data, rng, 3);
      if (!xx || !yy) continue;
      CHECK(kms_check(*xx, *yy, w, 1e-9).pass);
      ++done;
    }
    CHECK(done > 0);
  }
}

TEST_CASE("kms_check requires gauge homogeneity") {
  const auto ly = testsupport::lee_yang_rho();
  const auto weights = state_weights(classify(ly));
  const auto mixed = pair_term(path_of(ly, {1}), path_of(ly, {1})) +
                     pair_term(path_of(ly, {1, 1}), path_of(ly, {1}));
  CHECK_FALSE(gauge_degree(mixed).has_value());
  CHECK_THROWS_AS(kms_check(mixed, mixed, weights), std::invalid_argument);
}

TEST_CASE("exact weights exist exactly for integral Perron data") {
  const auto inner2 = testsupport::inner(2);
  CHECK(exact_weights(inner2, classify(inner2)).has_value());
  const auto a4 = testsupport::a4_iota();
  CHECK_FALSE(exact_weights(a4, classify(a4)).has_value());
}

TEST_CASE("skeleton bases aggregate the first-return loops per length") {
  for (const auto& data : catalog_data()) {
    const auto basis = skeleton_basis(data, 8);
    const auto k = k_dims(data, 8);
    for (int n = 1; n <= 8; ++n)
      CHECK(Int(basis.at_length(n).size()) == k[static_cast<std::size_t>(n)]);
  }
}

TEST_CASE("gauge action: state invariance and the grading") {
  auto rng = testsupport::seeded_rng(15);
  for (const auto& data : catalog_data()) {
    const auto weights = state_weights(classify(data));
    for (int trial = 0; trial < 8; ++trial) {
      const auto x = random_element(data, rng, 3);
      const auto y = random_element(data, rng, 3);
      if (!x || !y) continue;
      const double t = 0.7 + 0.1 * trial;

      // diagonal pairs have degree zero, so phi is invariant exactly
      CHECK(phi_state(gauge_action(*x, t), weights) == phi_state(*x, weights));

      // one-parameter group and homomorphism property, up to roundoff
      auto max_coeff_diff = [](const ComplexElement& a, const ComplexElement& b) {
        const ComplexElement diff = a - b;
        double worst = 0.0;
        for (const auto& [pair, c] : diff.terms()) worst = std::max(worst, std::abs(c));
        return worst;
      };
      CHECK(max_coeff_diff(gauge_action(gauge_action(*x, t), 0.3),
                           gauge_action(*x, t + 0.3)) < 1e-12);
      CHECK(max_coeff_diff(gauge_action(multiply(*x, *y), t),
                           multiply(gauge_action(*x, t), gauge_action(*y, t))) < 1e-12);
    }
  }
}
