#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace polar;

namespace {

/// Integer partitions of every m <= mmax, as non-increasing patterns.
std::vector<Pattern> patterns_up_to(int mmax) {
  std::vector<Pattern> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int remaining, int cap) -> void {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int k = std::min(remaining, cap); k >= 1; --k) {
      cur.push_back(k);
      self(self, remaining - k, k);
      cur.pop_back();
    }
  };
  for (int m = 1; m <= mmax; ++m) rec(rec, m, m);
  return out;
}

}  // namespace

TEST(ProductForm, Examples) {
  auto f = product_form(3, 3);
  EXPECT_EQ(f.terms().size(), 1u);
  EXPECT_EQ(eval_poly<double>(f, {1.0, 1.0, 1.0}), 1.0);
  EXPECT_THROW(product_form(3, 2), std::invalid_argument);
  auto g = product_form(2, 4);
  EXPECT_EQ(g.coefficient(MultiIndex({1, 1, 0, 0})), cplx(1.0));
}

TEST(ProductExtremal, Pattern21AtP1) {
  auto inst = product_extremal(Pattern({2, 1}), 1.0);
  ASSERT_EQ(inst.witnesses.size(), 2u);
  EXPECT_EQ(inst.witnesses[0], (Vec<double>{0.5, 0.5, 0.0}));
  EXPECT_EQ(inst.witnesses[1], (Vec<double>{0.0, 0.0, 1.0}));
  EXPECT_NEAR(instance_mixed_value(inst), 1.0 / 12.0, 1e-15);
  // the tensor oracle agrees with the block formula
  EXPECT_NEAR(eval_tensor_direct<double>(inst.form, {inst.witnesses[0], inst.witnesses[0], inst.witnesses[1]}),
              1.0 / 12.0, 1e-15);
  EXPECT_NEAR(*inst.exact_ratio, 2.25, 1e-14);
  EXPECT_NEAR(*inst.exact_poly_norm, 1.0 / 27.0, 1e-15);
}

TEST(ProductExtremal, AllOnesAndSingleBlock) {
  for (int m = 1; m <= 5; ++m) {
    auto a = product_extremal(Pattern::ones(m), 1.0);
    EXPECT_NEAR(*a.exact_ratio, bounds::polar_range(m).value, 1e-12);
    auto b = product_extremal(Pattern({m}), 2.5);
    ASSERT_TRUE(b.exact_ratio.has_value());
    EXPECT_NEAR(*b.exact_ratio, 1.0, 1e-12);
  }
  EXPECT_THROW(product_extremal(Pattern({2, 1}), kInf), std::invalid_argument);
  EXPECT_FALSE(product_extremal(Pattern({2, 1}), 2.0).exact_ratio.has_value());
}

TEST(ProductExtremal, WitnessInvariants) {
  for (const auto& pat : patterns_up_to(5))
    for (double p : {1.0, 1.25, 2.0, 3.5}) {
      auto inst = product_extremal(pat, p);
      for (const auto& w : inst.witnesses) EXPECT_NEAR(lp::norm<double>(w, p), 1.0, 1e-12);
      double want = 1.0 / factorial(pat.m());
      for (int k : pat.multiplicities()) want *= factorial(k) / std::pow(k, k / p);
      EXPECT_NEAR(instance_mixed_value(inst), want, 1e-12 * want);
      if (inst.exact_ratio) EXPECT_NEAR(instance_mixed_value(inst), *inst.exact_ratio * *inst.exact_poly_norm, 1e-9);
    }
}

TEST(ProductExtremal, ComplexSharpness) {
  for (const auto& pat : {Pattern({2, 1}), Pattern({1, 1}), Pattern({2, 2}), Pattern({3, 1})})
    for (double p : {1.0, 1.2}) {
      const double mp = static_cast<double>(pat.m()) / (pat.m() - 1);
      if (p > mp) continue;
      auto inst = product_extremal(pat, p, Field::complex);
      auto rep = verify_instance(inst);
      EXPECT_GE(rep.ratio, bounds::bound_complex_lp(pat, p).value - 1e-3) << pat.str() << " p=" << p;
      EXPECT_TRUE(rep.pass);
    }
}

TEST(ProductForm, NormFormula) {
  for (double p : {1.0, 1.5, 2.0, 3.0})
    for (int m : {2, 3, 4}) {
      auto f = product_form(m, m);
      EXPECT_NEAR(poly_norm(f, SpaceSpec(p, m, Field::real)).value, std::pow(m, -m / p), 1e-5);
    }
}

TEST(Real44, Instance) {
  auto r = real44_form();
  EXPECT_EQ(eval_poly<double>(r.form, {1.0, 0.0, 0.0, 0.0}), 1.0);
  for (const auto& w : r.witnesses) EXPECT_EQ(lp::norm<double>(w, kInf), 1.0);
  EXPECT_EQ(std::abs(instance_mixed_value(r)), 3.0);
  auto rep = verify_instance(r);
  EXPECT_TRUE(rep.pass);
  EXPECT_NEAR(rep.ratio, 3.0, 1e-2);
  EXPECT_GT(rep.ratio, bounds::bound_complex_any(Pattern({2, 2})).value);
}

TEST(Nonattaining, Instances) {
  for (int N : {1, 9, 99}) {
    auto inst = nonattaining_bilinear(N);
    const double want = static_cast<double>(N) / (N + 1);
    auto est = multilinear_norm(inst.form, inst.space);
    EXPECT_NEAR(est.value, want, 1e-6);
    EXPECT_LT(est.value, 1.0);
    auto rep = verify_instance(inst);
    EXPECT_TRUE(rep.pass);
  }
  EXPECT_THROW(nonattaining_bilinear(0), std::invalid_argument);
}

TEST(VerifyInstance, ReportsChecks) {
  auto rep = verify_instance(product_extremal(Pattern({2, 1}), 1.0));
  EXPECT_TRUE(rep.pass);
  EXPECT_NEAR(rep.poly.value, 1.0 / 27.0, 1e-6);
  EXPECT_NEAR(rep.ratio, 2.25, 1e-3);
  EXPECT_EQ(rep.checks.size(), 4u);

  auto nine = verify_instance(nonattaining_bilinear(9));
  EXPECT_NEAR(nine.mixed.value, 0.9, 1e-6);

  auto broken = product_extremal(Pattern({2, 1}), 1.0);
  broken.exact_ratio = 2.0;
  EXPECT_FALSE(verify_instance(broken).pass);
}

TEST(RatioReport, Examples) {
  auto inst = product_extremal(Pattern({2, 1}), 1.0, Field::complex);
  auto a = ratio_report(inst.form, inst.space, inst.pattern);
  EXPECT_NEAR(a.ratio, 2.25, 1e-3);
  EXPECT_TRUE(a.pass);

  auto f = random_form(3, 3, Field::real, 123);
  auto b = ratio_report(f, SpaceSpec(2.0, 3, Field::real), Pattern::ones(3));
  EXPECT_LE(b.ratio, 1.0 + 2e-2);
  EXPECT_TRUE(b.pass);

  auto r = real44_form();
  auto c = ratio_report(r.form, r.space, r.pattern);
  EXPECT_NEAR(c.ratio, 3.0, 1e-2);
  EXPECT_TRUE(c.pass);
  ASSERT_TRUE(c.known_exact.has_value());
  EXPECT_EQ(*c.known_exact, 3.0);
  bool saw_hilbert = false;
  for (const auto& chk : c.checks)
    if (chk.bound.name == "real_hilbert") {
      saw_hilbert = true;
      EXPECT_EQ(chk.bound.value, 4.0);
      EXPECT_TRUE(chk.pass);
    }
  EXPECT_TRUE(saw_hilbert);

  EXPECT_THROW(ratio_report(make_form(2, 2, Field::real, {}), SpaceSpec(2.0, 2, Field::real), Pattern({1, 1})),
               std::domain_error);
}

TEST(RatioReport, SlackControlsChecks) {
  auto inst = product_extremal(Pattern({2, 1}), 1.0, Field::complex);
  EXPECT_FALSE(ratio_report(inst.form, inst.space, inst.pattern, {}, -0.01).pass);
  EXPECT_THROW(ratio_report(inst.form, inst.space, inst.pattern, {}, -1.0), std::invalid_argument);
}

TEST(RandomForm, Deterministic) {
  auto a = random_form(3, 3, Field::complex, 9, 4);
  auto b = random_form(3, 3, Field::complex, 9, 4);
  auto c = random_form(3, 3, Field::complex, 9, 5);
  ASSERT_EQ(a.terms().size(), 10u);
  for (std::size_t i = 0; i < a.terms().size(); ++i) {
    EXPECT_EQ(a.terms()[i].coeff, b.terms()[i].coeff);
    EXPECT_NE(a.terms()[i].coeff, c.terms()[i].coeff);
  }
}
