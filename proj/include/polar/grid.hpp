#pragma once

// Brute-force sampling oracle for validating the ascent estimators.
//
// Point sets per block:
//   real, d <= 3     angular grid (nested under doubling of the resolution)
//   real, p in {1,inf}, d > 3
//                    lattice {-1,0,1}^d \ {0} rescaled to the sphere, followed by
//                    `resolution` random points from a fixed stream
//   complex, p = inf torus grid with `resolution` phases per coordinate; the first
//                    coordinate's phase is fixed since |P| is phase invariant
// Patterns with n blocks enumerate the n-fold product of the block set.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "polar/form.hpp"
#include "polar/lp.hpp"
#include "polar/norms.hpp"

namespace polar {

inline constexpr int kMinGridResolution = 8;
inline constexpr std::uint64_t kDefaultGridBudget = 50'000'000;

namespace detail {

inline std::vector<Vec<double>> real_grid_points(int d, double p, int res) {
  std::vector<Vec<double>> pts;
  const double pi = std::numbers::pi;
  if (d == 1) {
    pts.push_back({1.0});
    pts.push_back({-1.0});
  } else if (d == 2) {
    for (int k = 0; k < res; ++k) {
      const double t = 2.0 * pi * k / res;
      pts.push_back(lp::normalize<double>({std::cos(t), std::sin(t)}, p));
    }
  } else if (d == 3) {
    for (int b = 0; b <= res; ++b) {
      const double th = pi * b / res;
      for (int a = 0; a < res; ++a) {
        const double ph = 2.0 * pi * a / res;
        pts.push_back(lp::normalize<double>({std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)}, p));
        if (b == 0 || b == res) break;  // poles
      }
    }
  } else {
    if (!(p == 1.0 || std::isinf(p)))
      throw std::invalid_argument("grid_oracle: dense mode needs d <= 3 (or p in {1, inf})");
    if (d > 12) throw std::invalid_argument("grid_oracle: lattice enumeration limited to d <= 12");
    std::vector<int> digit(static_cast<std::size_t>(d), -1);
    while (true) {
      Vec<double> x(digit.begin(), digit.end());
      if (lp::norm<double>(x, p) > 0.0) pts.push_back(lp::normalize<double>(std::move(x), p));
      std::size_t i = 0;
      while (i < digit.size() && digit[i] == 1) digit[i++] = -1;
      if (i == digit.size()) break;
      ++digit[i];
    }
    auto rng = substream(0x6772696400000000ULL, 0);
    for (int s = 0; s < res; ++s) pts.push_back(random_unit<double>(d, p, rng));
  }
  return pts;
}

inline std::vector<Vec<cplx>> torus_points(int d, int res, std::uint64_t budget) {
  if (std::pow(static_cast<double>(res), d - 1) > static_cast<double>(budget))
    throw std::invalid_argument("grid_oracle: torus grid exceeds the point budget");
  std::vector<Vec<cplx>> pts;
  std::vector<int> k(static_cast<std::size_t>(d), 0);
  while (true) {
    Vec<cplx> x(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) x[static_cast<std::size_t>(i)] = std::polar(1.0, 2.0 * std::numbers::pi * k[static_cast<std::size_t>(i)] / res);
    pts.push_back(std::move(x));
    std::size_t i = 1;
    while (i < k.size() && k[i] == res - 1) k[i++] = 0;
    if (i >= k.size()) break;
    ++k[i];
  }
  return pts;
}

template <class T>
NormEstimate grid_search(const SymmetricForm& form, const Pattern& pattern, const std::vector<Vec<T>>& pts,
                         std::uint64_t budget) {
  const int n = pattern.n();
  if (std::pow(static_cast<double>(pts.size()), n) > static_cast<double>(budget))
    throw std::invalid_argument("grid_oracle: " + std::to_string(pts.size()) + "^" + std::to_string(n) +
                                " evaluations exceed the budget");
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  std::vector<Vec<T>> xs(static_cast<std::size_t>(n));
  double best = -1.0;
  std::vector<std::size_t> arg = idx;
  while (true) {
    double v;
    if (n == 1) {
      v = std::abs(eval_poly<T>(form, pts[idx[0]]));
    } else {
      for (int b = 0; b < n; ++b) xs[static_cast<std::size_t>(b)] = pts[idx[static_cast<std::size_t>(b)]];
      v = std::abs(eval_mixed<T>(form, pattern, xs));
    }
    if (v > best) {
      best = v;
      arg = idx;
    }
    std::size_t i = 0;
    while (i < idx.size() && idx[i] == pts.size() - 1) idx[i++] = 0;
    if (i == idx.size()) break;
    ++idx[i];
  }
  NormEstimate est;
  est.value = best;
  for (auto a : arg) est.witnesses.push_back(to_cplx(pts[a]));
  est.method = Method::grid;
  est.starts = 1;
  est.starts_converged = 1;
  est.field = form.field();
  return est;
}

}  // namespace detail

/// Dense deterministic sampling of the l_p sphere (or a product of spheres when
/// a pattern is given). The value is a lower bound on the true supremum.
inline NormEstimate grid_oracle(const SymmetricForm& form, const SpaceSpec& space, const std::optional<Pattern>& pattern,
                                int resolution, std::uint64_t budget = kDefaultGridBudget) {
  detail::check_compat(form, space);
  if (resolution < kMinGridResolution)
    throw std::invalid_argument("grid_oracle: resolution " + std::to_string(resolution) + " is below the minimum of " +
                                std::to_string(kMinGridResolution));
  const Pattern pat = pattern.value_or(Pattern::single(form.degree()));
  if (pat.m() != form.degree()) throw std::invalid_argument("grid_oracle: pattern does not match form degree");
  if (form.is_real())
    return detail::grid_search<double>(form, pat, detail::real_grid_points(form.dim(), space.p, resolution), budget);
  if (!space.p_is_inf()) throw std::invalid_argument("grid_oracle: complex field supported only for p = inf");
  return detail::grid_search<cplx>(form, pat, detail::torus_points(form.dim(), resolution, budget), budget);
}

}  // namespace polar
