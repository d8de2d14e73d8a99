#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace polar;
using polar::testing::e;
using polar::testing::rng_for;

namespace {

template <class T>
Vec<T> witness_as(const Vec<cplx>& w) {
  Vec<T> x(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if constexpr (is_complex_v<T>)
      x[i] = w[i];
    else
      x[i] = w[i].real();
  }
  return x;
}

/// Witnesses are unit vectors and reproduce the value.
void expect_sound(const SymmetricForm& f, const SpaceSpec& s, const Pattern& pat, const NormEstimate& est) {
  ASSERT_EQ(static_cast<int>(est.witnesses.size()), pat.n());
  for (const auto& w : est.witnesses) EXPECT_NEAR(lp::norm<cplx>(w, s.p), 1.0, 1e-12);
  double v;
  if (f.is_real()) {
    std::vector<Vec<double>> xs;
    for (const auto& w : est.witnesses) {
      for (const auto& c : w) EXPECT_EQ(c.imag(), 0.0);
      xs.push_back(witness_as<double>(w));
    }
    v = std::abs(eval_mixed<double>(f, pat, xs));
  } else {
    v = std::abs(eval_mixed<cplx>(f, pat, est.witnesses));
  }
  EXPECT_NEAR(v, est.value, 1e-10 * std::max(1.0, est.value));
}

}  // namespace

TEST(PolyNorm, ProductFormL1) {
  auto f = product_form(3, 3);
  SpaceSpec s(1.0, 3, Field::real);
  auto est = poly_norm(f, s);
  EXPECT_NEAR(est.value, 1.0 / 27.0, 1e-6);
  EXPECT_EQ(est.method, Method::ascent);
  expect_sound(f, s, Pattern({3}), est);
}

TEST(PolyNorm, ProductFormL2MatchesOracle) {
  auto f = product_form(3, 3);
  SpaceSpec s(2.0, 3, Field::real);
  auto est = poly_norm(f, s);
  EXPECT_NEAR(est.value, std::pow(3.0, -1.5), 1e-6);
  auto grid = grid_oracle(f, s, std::nullopt, 120);
  EXPECT_GE(est.value, grid.value - 1e-6);
  EXPECT_NEAR(grid.value, std::pow(3.0, -1.5), 1e-3);
}

TEST(PolyNorm, ProductFormAcrossP) {
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    auto f = product_form(4, 4);
    auto est = poly_norm(f, SpaceSpec(p, 4, Field::real));
    EXPECT_NEAR(est.value, std::pow(4.0, -4.0 / p), 1e-5) << "p=" << p;
  }
}

TEST(PolyNorm, OneDimensional) {
  auto f = make_form(2, 1, Field::real, {{MultiIndex({2}), 1.0}});
  EXPECT_NEAR(poly_norm(f, SpaceSpec(2.0, 1, Field::real)).value, 1.0, 1e-15);
}

TEST(PolyNorm, Mismatch) {
  auto f = product_form(3, 3);
  EXPECT_THROW(poly_norm(f, SpaceSpec(2.0, 4, Field::real)), std::invalid_argument);
  EXPECT_THROW(poly_norm(f, SpaceSpec(2.0, 3, Field::complex)), std::invalid_argument);
  OptimizerConfig bad;
  bad.restarts = 0;
  EXPECT_THROW(poly_norm(f, SpaceSpec(2.0, 3, Field::real), bad), std::invalid_argument);
}

TEST(PolyNorm, ZeroForm) {
  auto z = make_form(2, 3, Field::real, {});
  EXPECT_EQ(poly_norm(z, SpaceSpec(2.0, 3, Field::real)).value, 0.0);
}

TEST(MultilinearNorm, ProductFormL1) {
  auto f = product_form(3, 3);
  SpaceSpec s(1.0, 3, Field::real);
  auto est = multilinear_norm(f, s);
  EXPECT_NEAR(est.value, 1.0 / 6.0, 1e-6);
  EXPECT_EQ(est.method, Method::alternating);
  expect_sound(f, s, Pattern::ones(3), est);
  auto grid = grid_oracle(f, s, Pattern::ones(3), 8);
  EXPECT_NEAR(grid.value, 1.0 / 6.0, 1e-12);
}

TEST(MultilinearNorm, Nonattaining) {
  auto inst = nonattaining_bilinear(9);
  EXPECT_NEAR(multilinear_norm(inst.form, inst.space).value, 0.9, 1e-9);
}

TEST(MixedNorm, Examples) {
  auto r = real44_form();
  auto est = mixed_norm(r.form, r.space, Pattern({2, 2}));
  EXPECT_NEAR(est.value, 3.0, 1e-6);
  expect_sound(r.form, r.space, Pattern({2, 2}), est);

  auto f = product_form(3, 3);
  SpaceSpec s(1.0, 3, Field::real);
  EXPECT_NEAR(mixed_norm(f, s, Pattern({2, 1})).value, 1.0 / 12.0, 1e-6);
  EXPECT_EQ(mixed_norm(f, s, Pattern({3})).value, poly_norm(f, s).value);
  EXPECT_THROW(mixed_norm(f, s, Pattern({1, 1})), std::invalid_argument);
}

TEST(MixedNorm, AllOnesAgreesWithMultilinear) {
  auto f = random_form(3, 3, Field::real, 4);
  SpaceSpec s(3.0, 3, Field::real);
  EXPECT_NEAR(mixed_norm(f, s, Pattern::ones(3)).value, multilinear_norm(f, s).value, 1e-12);
}

TEST(GridOracle, Examples) {
  auto f = product_form(2, 2);
  SpaceSpec s(2.0, 2, Field::real);
  EXPECT_NEAR(grid_oracle(f, s, std::nullopt, 3600).value, 0.5, 1e-3);
  auto r = real44_form();
  EXPECT_NEAR(grid_oracle(r.form, r.space, std::nullopt, 16).value, 1.0, 1e-12);
  EXPECT_THROW(grid_oracle(f, s, std::nullopt, 4), std::invalid_argument);
  EXPECT_THROW(grid_oracle(product_form(4, 4), SpaceSpec(2.0, 4, Field::real), std::nullopt, 16), std::invalid_argument);
}

TEST(GridOracle, RefinementIsMonotone) {
  for (std::uint64_t i = 0; i < 5; ++i) {
    auto f = random_form(3, 3, Field::real, 77, i);
    SpaceSpec s(2.0, 3, Field::real);
    double prev = 0.0;
    for (int res : {8, 16, 32, 64}) {
      const double v = grid_oracle(f, s, std::nullopt, res).value;
      EXPECT_GE(v, prev);
      prev = v;
    }
  }
}

TEST(GridOracle, ComplexTorus) {
  auto f = random_form(2, 2, Field::complex, 3);
  SpaceSpec s(kInf, 2, Field::complex);
  const auto g = grid_oracle(f, s, std::nullopt, 64);
  EXPECT_GE(poly_norm(f, s).value, g.value - 1e-6);
  EXPECT_THROW(grid_oracle(f, SpaceSpec(2.0, 2, Field::complex), std::nullopt, 16), std::invalid_argument);
}

// ---- properties ----

TEST(Properties, SoundnessAcrossSpaces) {
  std::uint64_t idx = 0;
  for (Field field : {Field::real, Field::complex})
    for (double p : {1.0, 1.5, 2.0, 4.0, kInf})
      for (const Pattern& pat : {Pattern({3}), Pattern({2, 1}), Pattern({1, 1, 1})}) {
        auto f = random_form(3, 3, field, 5, idx++);
        SpaceSpec s(p, 3, field);
        OptimizerConfig cfg;
        cfg.restarts = 8;
        expect_sound(f, s, pat, mixed_norm(f, s, pat, cfg));
      }
}

TEST(Properties, HomogeneityWithFactorTwo) {
  for (std::uint64_t i = 0; i < 6; ++i) {
    const Field field = i % 2 ? Field::complex : Field::real;
    auto f = random_form(3, 3, field, 8, i);
    SpaceSpec s(i < 3 ? 2.0 : 1.5, 3, field);
    auto a = poly_norm(f, s);
    auto b = poly_norm(f.scaled(2.0), s);
    EXPECT_NEAR(b.value, 2.0 * a.value, 1e-12 * a.value);
    auto ma = mixed_norm(f, s, Pattern({2, 1}));
    auto mb = mixed_norm(f.scaled(2.0), s, Pattern({2, 1}));
    EXPECT_NEAR(mb.value, 2.0 * ma.value, 1e-12 * ma.value);
  }
}

TEST(Properties, RestartMonotonicity) {
  for (std::uint64_t i = 0; i < 8; ++i) {
    auto f = random_form(4, 3, Field::real, 12, i);
    SpaceSpec s(i % 2 ? 3.0 : 1.0, 3, Field::real);
    double prev = 0.0;
    for (int r : {1, 2, 4, 8, 16}) {
      OptimizerConfig cfg;
      cfg.restarts = r;
      const double v = poly_norm(f, s, cfg).value;
      EXPECT_GE(v, prev);
      prev = v;
    }
  }
}

TEST(Properties, DiagonalFeasibility) {
  for (std::uint64_t i = 0; i < 10; ++i) {
    const Field field = i % 2 ? Field::complex : Field::real;
    auto f = random_form(3, 3, field, 13, i);
    SpaceSpec s(i % 3 == 0 ? 1.0 : (i % 3 == 1 ? 2.5 : kInf), 3, field);
    EXPECT_GE(multilinear_norm(f, s).value, poly_norm(f, s).value - 1e-9);
  }
}

TEST(Properties, OracleDominance) {
  std::uint64_t idx = 0;
  for (double p : {1.0, 2.0, 3.0, kInf})
    for (int d : {2, 3}) {
      auto f = random_form(3, d, Field::real, 14, idx++);
      SpaceSpec s(p, d, Field::real);
      const int res = d == 2 ? 720 : 60;
      EXPECT_GE(poly_norm(f, s).value, grid_oracle(f, s, std::nullopt, res).value - 1e-6) << "p=" << p << " d=" << d;
      if (d == 2)
        EXPECT_GE(mixed_norm(f, s, Pattern({2, 1})).value, grid_oracle(f, s, Pattern({2, 1}), 240).value - 1e-6);
    }
  // lattice mode in higher dimension
  auto f = random_form(4, 4, Field::real, 15);
  SpaceSpec s(kInf, 4, Field::real);
  EXPECT_GE(poly_norm(f, s).value, grid_oracle(f, s, std::nullopt, 2000).value - 1e-6);
}

TEST(Properties, HilbertEquality) {
  for (std::uint64_t i = 0; i < 12; ++i) {
    const int m = 2 + static_cast<int>(i % 3);
    const int d = 2 + static_cast<int>(i % 2);
    auto f = random_form(m, d, Field::real, 16, i);
    SpaceSpec s(2.0, d, Field::real);
    const double r = multilinear_norm(f, s).value / poly_norm(f, s).value;
    EXPECT_GE(r, 1.0 - 2e-2);
    EXPECT_LE(r, 1.0 + 2e-2);
  }
}

TEST(Determinism, SerialAndParallelAgree) {
  auto f = random_form(3, 3, Field::complex, 17);
  SpaceSpec s(1.5, 3, Field::complex);
  OptimizerConfig a, b;
  a.seed = b.seed = 42;
  b.parallel = true;
  const auto x = mixed_norm(f, s, Pattern({2, 1}), a);
  const auto y = mixed_norm(f, s, Pattern({2, 1}), b);
  EXPECT_EQ(x.value, y.value);
  EXPECT_EQ(x.witnesses, y.witnesses);
  EXPECT_EQ(x.starts_converged, y.starts_converged);
}

TEST(LpGeometry, AlignmentAttainsDualNorm) {
  auto rng = rng_for(20);
  for (double p : {1.0, 1.5, 2.0, 3.0, kInf}) {
    auto phi = polar::testing::random_vec<double>(5, rng);
    auto u = lp::align<double>(phi, p);
    EXPECT_NEAR(lp::norm<double>(u, p), 1.0, 1e-12);
    EXPECT_NEAR(lp::real_dot<double>(phi, u), lp::dual_norm<double>(phi, p), 1e-12);
  }
  Vec<double> zero(3, 0.0);
  EXPECT_EQ(lp::align<double>(zero, 2.0), e(3, 0));
  EXPECT_EQ(lp::align<double>(Vec<double>{1.0, -1.0, 0.5}, 1.0), e(3, 0));
}

TEST(LpGeometry, L1Projection) {
  auto v = lp::project_l1_ball<double>({0.9, -0.6, 0.1});
  EXPECT_NEAR(lp::norm<double>(v, 1.0), 1.0, 1e-12);
  EXPECT_NEAR(v[0], 0.65, 1e-12);
  EXPECT_NEAR(v[1], -0.35, 1e-12);
  EXPECT_EQ(v[2], 0.0);
}
