#pragma once

// Explicit extremal and counterexample instances with their exact norms.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polar/bounds.hpp"
#include "polar/form.hpp"
#include "polar/lp.hpp"
#include "polar/norms.hpp"
#include "polar/types.hpp"

namespace polar {

struct ExtremalInstance {
  std::string name;
  SymmetricForm form;
  SpaceSpec space;
  Pattern pattern;
  std::vector<Vec<double>> witnesses;  // one per block of `pattern`
  std::optional<double> exact_poly_norm;
  std::optional<double> exact_ratio;
  std::optional<double> exact_mixed;   // L at the witnesses, with sign
  double ratio_tolerance = 1e-3;
  double value_tolerance = 1e-6;
  std::string citation;
};

/// P(u) = u_1 u_2 ... u_m on d >= m coordinates.
inline SymmetricForm product_form(int m, int d, Field field = Field::real) {
  if (m < 1) throw std::invalid_argument("product_form: m must be >= 1");
  if (d < m) throw std::invalid_argument("product_form: need d >= m");
  std::vector<int> alpha(static_cast<std::size_t>(d), 0);
  for (int i = 0; i < m; ++i) alpha[static_cast<std::size_t>(i)] = 1;
  return make_form(m, d, field, {{MultiIndex(alpha), 1.0}});
}

/// Product form on l_p^m with normalized block witnesses y_i = k_i^{-1/p}(e_... + ... + e_...).
/// The ratio (m^m / prod k^k)^{1/p} prod k!/m! is recorded as exact only for 1 <= p <= m'.
inline ExtremalInstance product_extremal(const Pattern& pattern, double p, Field field = Field::real) {
  if (!(p >= 1.0)) throw std::invalid_argument("product_extremal: p must be >= 1");
  if (std::isinf(p)) throw std::invalid_argument("product_extremal: block construction needs finite p");
  const int m = pattern.m();
  ExtremalInstance inst;
  inst.name = "product";
  inst.form = product_form(m, m, field);
  inst.space = SpaceSpec(p, m, field);
  inst.pattern = pattern;
  int offset = 0;
  double mixed = 1.0;
  for (int k : pattern.multiplicities()) {
    Vec<double> y(static_cast<std::size_t>(m), 0.0);
    const double c = std::pow(static_cast<double>(k), -1.0 / p);
    for (int i = 0; i < k; ++i) y[static_cast<std::size_t>(offset + i)] = c;
    offset += k;
    inst.witnesses.push_back(std::move(y));
    mixed *= factorial(k) / std::pow(static_cast<double>(k), k / p);
  }
  mixed /= factorial(m);
  inst.exact_mixed = mixed;
  inst.exact_poly_norm = std::pow(static_cast<double>(m), -m / p);
  const double mprime = m == 1 ? kInf : static_cast<double>(m) / (m - 1);
  if (p <= mprime || pattern.n() == 1) inst.exact_ratio = mixed / *inst.exact_poly_norm;
  inst.citation = "product-form-extremal";
  return inst;
}

/// P(x) = (x_1^2 - x_2^2)^2 - (x_3^2 - x_4^2)^2 on real l_inf^4: ||P|| = 1 and |L(x^2 y^2)| = 3.
inline ExtremalInstance real44_form() {
  ExtremalInstance inst;
  inst.name = "real44";
  inst.form = make_form(4, 4, Field::real,
                        {{MultiIndex({4, 0, 0, 0}), 1.0},
                         {MultiIndex({2, 2, 0, 0}), -2.0},
                         {MultiIndex({0, 4, 0, 0}), 1.0},
                         {MultiIndex({0, 0, 4, 0}), -1.0},
                         {MultiIndex({0, 0, 2, 2}), 2.0},
                         {MultiIndex({0, 0, 0, 4}), -1.0}});
  inst.space = SpaceSpec(kInf, 4, Field::real);
  inst.pattern = Pattern({2, 2});
  inst.witnesses = {{1.0, 1.0, 0.0, 1.0}, {1.0, -1.0, 1.0, 0.0}};
  inst.exact_poly_norm = 1.0;
  inst.exact_mixed = 3.0;
  inst.exact_ratio = 3.0;
  inst.ratio_tolerance = 1e-2;
  inst.citation = "real-2-2-extremal";
  return inst;
}

/// Truncation of L(x, y) = sum_n n/(n+1) x_n y_n to l_2^N; the norm N/(N+1) is attained
/// at e_N but stays below the limiting value 1.
inline ExtremalInstance nonattaining_bilinear(int N) {
  if (N < 1) throw std::invalid_argument("nonattaining_bilinear: N must be >= 1");
  std::vector<Coefficient> coeffs;
  for (int n = 1; n <= N; ++n) {
    std::vector<int> alpha(static_cast<std::size_t>(N), 0);
    alpha[static_cast<std::size_t>(n - 1)] = 2;
    coeffs.push_back({MultiIndex(alpha), static_cast<double>(n) / (n + 1)});
  }
  ExtremalInstance inst;
  inst.name = "nonattaining";
  inst.form = make_form(2, N, Field::real, coeffs);
  inst.space = SpaceSpec(2.0, N, Field::real);
  inst.pattern = Pattern({1, 1});
  Vec<double> e(static_cast<std::size_t>(N), 0.0);
  e.back() = 1.0;
  inst.witnesses = {e, e};
  const double norm = static_cast<double>(N) / (N + 1);
  inst.exact_poly_norm = norm;
  inst.exact_mixed = norm;
  inst.exact_ratio = 1.0;
  inst.citation = "hilbert-nonattaining";
  return inst;
}

/// L at the stored witnesses, by the block-sign formula.
inline double instance_mixed_value(const ExtremalInstance& inst) {
  if (inst.form.is_real()) return eval_mixed<double>(inst.form, inst.pattern, inst.witnesses);
  std::vector<Vec<cplx>> xs;
  for (const auto& w : inst.witnesses) xs.emplace_back(w.begin(), w.end());
  return eval_mixed<cplx>(inst.form, inst.pattern, xs).real();
}

struct InstanceCheck {
  std::string quantity;
  double measured;
  double expected;
  double tolerance;
  bool pass;
};

struct InstanceReport {
  std::string name;
  NormEstimate poly;
  NormEstimate mixed;
  double ratio = 0.0;
  double witness_value = 0.0;
  std::vector<InstanceCheck> checks;
  bool pass = true;
};

/// Runs the estimators on an instance and compares with its stored exact values.
inline InstanceReport verify_instance(const ExtremalInstance& inst, const OptimizerConfig& cfg = {}) {
  InstanceReport rep;
  rep.name = inst.name;
  rep.poly = poly_norm(inst.form, inst.space, cfg);
  rep.mixed = mixed_norm(inst.form, inst.space, inst.pattern, cfg, rep.poly);
  rep.ratio = rep.poly.value > 0.0 ? rep.mixed.value / rep.poly.value : 0.0;
  rep.witness_value = instance_mixed_value(inst);
  auto add = [&](std::string q, double got, double want, double tol) {
    const bool ok = std::abs(got - want) <= tol;
    rep.checks.push_back({std::move(q), got, want, tol, ok});
    rep.pass = rep.pass && ok;
  };
  if (inst.exact_mixed) add("witness_value", rep.witness_value, *inst.exact_mixed, 1e-9);
  if (inst.exact_poly_norm) add("poly_norm", rep.poly.value, *inst.exact_poly_norm, inst.value_tolerance);
  if (inst.exact_poly_norm && inst.exact_ratio)
    add("mixed_norm", rep.mixed.value, *inst.exact_ratio * *inst.exact_poly_norm,
        std::max(inst.value_tolerance, inst.ratio_tolerance * *inst.exact_poly_norm));
  if (inst.exact_ratio) add("ratio", rep.ratio, *inst.exact_ratio, inst.ratio_tolerance);
  return rep;
}

}  // namespace polar
