#pragma once

// Measured polarization ratios compared against the closed-form bounds.

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "polar/bounds.hpp"
#include "polar/combinatorics.hpp"
#include "polar/form.hpp"
#include "polar/norms.hpp"
#include "polar/types.hpp"

namespace polar {

inline constexpr double kDefaultSlack = 5e-3;

/// Form with every degree-m monomial in d variables, coefficients i.i.d. standard
/// normal (real and imaginary parts independently for the complex field).
inline SymmetricForm random_form(int m, int d, Field field, std::uint64_t seed, std::uint64_t index = 0) {
  if (m < 1 || d < 1) throw std::invalid_argument("random_form: need m >= 1 and d >= 1");
  auto rng = detail::substream(seed ^ 0x72616e64666f726dULL, index);
  std::normal_distribution<double> normal;
  std::vector<Coefficient> coeffs;
  for_each_composition(m, d, [&](std::span<const int> parts) {
    const double re = normal(rng);
    const double im = field == Field::complex ? normal(rng) : 0.0;
    coeffs.push_back({MultiIndex(std::vector<int>(parts.begin(), parts.end())), cplx(re, im)});
  });
  return make_form(m, d, field, coeffs);
}

struct BoundCheck {
  bounds::BoundRecord bound;
  bool pass;
};

struct RatioReport {
  Pattern pattern;
  SpaceSpec space;
  NormEstimate poly;
  NormEstimate mixed;
  double ratio = 0.0;
  double slack = kDefaultSlack;
  std::vector<BoundCheck> checks;  // every applicable bound, then bound_best
  std::optional<double> known_exact;
  bool pass = true;
};

/// ratio = mixed_norm / poly_norm, checked against ratio <= bound * (1 + slack).
/// A negative slack tightens every check.
inline RatioReport ratio_report(const SymmetricForm& form, const SpaceSpec& space, const Pattern& pattern,
                                const OptimizerConfig& cfg = {}, double slack = kDefaultSlack) {
  if (!(slack > -1.0)) throw std::invalid_argument("ratio_report: slack must exceed -1");
  RatioReport rep;
  rep.pattern = pattern;
  rep.space = space;
  rep.slack = slack;
  rep.poly = poly_norm(form, space, cfg);
  if (rep.poly.value == 0.0) throw std::domain_error("ratio_report: poly_norm estimate is 0 (degenerate form)");
  rep.mixed = mixed_norm(form, space, pattern, cfg, rep.poly);
  rep.ratio = rep.mixed.value / rep.poly.value;
  auto check = [&](bounds::BoundRecord b) {
    const bool ok = rep.ratio <= b.value * (1.0 + slack);
    rep.checks.push_back({std::move(b), ok});
    rep.pass = rep.pass && ok;
  };
  for (auto& b : bounds::applicable_bounds(pattern, space.p, form.field())) check(std::move(b));
  auto best = bounds::bound_best(pattern, space.p, form.field());
  rep.known_exact = best.known_exact;
  check(std::move(best));
  if (rep.known_exact) rep.pass = rep.pass && rep.ratio <= *rep.known_exact * (1.0 + slack);
  return rep;
}

}  // namespace polar
