#pragma once

// Lower-bound estimation of polynomial, multilinear, and mixed-argument norms
// over l_p^d unit balls. Every reported value is |objective| at a feasible
// witness, so estimates never exceed the true supremum.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <future>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "polar/form.hpp"
#include "polar/lp.hpp"
#include "polar/types.hpp"

namespace polar {

struct OptimizerConfig {
  int restarts = 32;
  int max_iterations = 500;
  double tolerance = 1e-10;  // relative change of the objective per sweep
  std::uint64_t seed = 0;
  bool parallel = false;

  void validate() const {
    if (restarts < 1) throw std::invalid_argument("OptimizerConfig: restarts must be >= 1");
    if (max_iterations < 1) throw std::invalid_argument("OptimizerConfig: max_iterations must be >= 1");
    if (!(tolerance > 0.0)) throw std::invalid_argument("OptimizerConfig: tolerance must be positive");
  }
};

enum class Method { ascent, alternating, grid };

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::ascent: return "ascent";
    case Method::alternating: return "alternating";
    case Method::grid: return "grid";
  }
  return "?";
}

struct NormEstimate {
  double value = 0.0;
  std::vector<Vec<cplx>> witnesses;  // one unit vector per block
  Method method = Method::ascent;
  int starts_converged = 0;
  int starts = 0;
  Field field = Field::real;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent generator for restart `index`; identical regardless of scheduling.
inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x51ed270b27f8a2c5ULL)));
}

template <class T>
Vec<T> random_unit(int d, double p, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec<T> x(static_cast<std::size_t>(d));
  do {
    for (auto& v : x) {
      if constexpr (is_complex_v<T>) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        v = T(re, im);
      } else {
        v = gauss(rng);
      }
    }
  } while (lp::norm<T>(x, p) == 0.0);
  return lp::normalize<T>(std::move(x), p);
}

template <class T>
Vec<cplx> to_cplx(const Vec<T>& x) {
  return Vec<cplx>(x.begin(), x.end());
}

template <class T>
Vec<T> from_cplx(const Vec<cplx>& x) {
  Vec<T> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if constexpr (is_complex_v<T>)
      out[i] = x[i];
    else
      out[i] = x[i].real();
  }
  return out;
}

// Block-coordinate ascent of |L(x_1^{k_1} ... x_n^{k_n})| over a product of l_p spheres.
template <class T>
class BlockAscent {
 public:
  BlockAscent(const SymmetricForm& form, const SpaceSpec& space, const Pattern& pattern, const OptimizerConfig& cfg)
      : form_(form), space_(space), ks_(pattern.multiplicities()), pattern_(pattern), cfg_(cfg) {}

  struct Result {
    std::vector<Vec<T>> xs;
    double value = 0.0;
    bool converged = false;
  };

  T objective(const std::vector<Vec<T>>& xs) const {
    if (ks_.size() == 1) return eval_poly<T>(form_, xs[0]);
    return eval_mixed<T>(form_, pattern_, xs);
  }

  double value(const std::vector<Vec<T>>& xs) const { return std::abs(objective(xs)); }

  // Holomorphic partial derivative of the objective with respect to block j.
  Vec<T> block_derivative(const std::vector<Vec<T>>& xs, std::size_t j) const {
    if (ks_.size() == 1) return gradient<T>(form_, std::span<const T>(xs[0]));
    std::vector<int> reduced = ks_;
    --reduced[j];
    auto g = contract_free_slot<T>(form_, reduced, std::span<const Vec<T>>(xs));
    for (auto& v : g) v *= static_cast<double>(ks_[j]);
    return g;
  }

  Result run(std::vector<Vec<T>> xs) const {
    const double p = space_.p;
    for (auto& x : xs) x = lp::normalize<T>(std::move(x), p);
    std::vector<double> step(ks_.size(), 0.0);
    double f = value(xs);
    bool converged = false;
    for (int it = 0; it < cfg_.max_iterations; ++it) {
      const double before = f;
      for (std::size_t j = 0; j < ks_.size(); ++j) f = update_block(xs, j, f, step[j]);
      if (f - before <= cfg_.tolerance * std::max(before, 1e-300)) {
        converged = true;
        break;
      }
    }
    for (auto& x : xs) x = lp::normalize<T>(std::move(x), p);
    return {xs, value(xs), converged};
  }

 private:
  Vec<T> retract(const Vec<T>& x, const Vec<T>& g, double eta) const {
    const double p = space_.p;
    Vec<T> v = x;
    if (p == 1.0) {
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += eta * g[i];
      return lp::normalize<T>(lp::project_l1_ball<T>(std::move(v)), p);
    }
    if (std::isinf(p)) {
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += eta * g[i];
      return lp::normalize<T>(lp::project_box<T>(std::move(v)), p);
    }
    if (p == 2.0) {
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += eta * g[i];
      return lp::normalize<T>(std::move(v), p);
    }
    auto t = lp::tangent_component<T>(x, g, p);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += eta * t[i];
    return lp::normalize<T>(std::move(v), p);
  }

  double update_block(std::vector<Vec<T>>& xs, std::size_t j, double f, double& eta) const {
    const double p = space_.p;
    const T z = objective(xs);
    const Vec<T> h = block_derivative(xs, j);

    if (ks_[j] == 1) {
      // Linear slot: the exact maximizer is the dual-aligned vector.
      Vec<T> hc(h.size());
      for (std::size_t i = 0; i < h.size(); ++i) {
        if constexpr (is_complex_v<T>)
          hc[i] = std::conj(h[i]);
        else
          hc[i] = h[i];
      }
      Vec<T> saved = xs[j];
      xs[j] = lp::align<T>(hc, p);
      const double nf = value(xs);
      if (nf >= f) return nf;
      xs[j] = std::move(saved);
      return f;
    }

    // Real gradient of |z| with respect to the block, as a vector in K^d.
    Vec<T> g(h.size());
    T phase = lp::unit_sign(z);
    if (std::abs(z) == 0.0) phase = T(1);
    for (std::size_t i = 0; i < h.size(); ++i) {
      if constexpr (is_complex_v<T>)
        g[i] = phase * std::conj(h[i]);
      else
        g[i] = phase * h[i];
    }
    const double gnorm = std::sqrt(lp::real_dot<T>(g, g));
    if (gnorm == 0.0) return f;

    double best = f;
    Vec<T> best_x;
    const Vec<T> x = xs[j];

    // Move toward the dual-aligned point of the gradient (an extreme point for p = 1,
    // a sign vector for p = inf), then rescale onto the sphere.
    const Vec<T> a = lp::align<T>(g, p);
    for (double gamma = 1.0; gamma > 1e-4; gamma *= 0.5) {
      Vec<T> c(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) c[i] = (1.0 - gamma) * x[i] + gamma * a[i];
      if (lp::norm<T>(c, p) == 0.0) continue;
      xs[j] = lp::normalize<T>(std::move(c), p);
      const double v = value(xs);
      if (v > best) {
        best = v;
        best_x = xs[j];
        break;
      }
    }

    // Projected / tangent gradient step with backtracking.
    if (eta <= 0.0) eta = 1.0 / gnorm;
    for (int bt = 0; bt < 60; ++bt) {
      xs[j] = retract(x, g, eta);
      const double v = value(xs);
      if (v > f) {
        if (v > best) {
          best = v;
          best_x = xs[j];
        }
        eta *= 2.0;
        break;
      }
      eta *= 0.5;
    }

    if (best_x.empty()) {
      xs[j] = x;
      return f;
    }
    xs[j] = std::move(best_x);
    return best;
  }

  const SymmetricForm& form_;
  SpaceSpec space_;
  std::vector<int> ks_;
  Pattern pattern_;
  OptimizerConfig cfg_;
};

inline void check_compat(const SymmetricForm& form, const SpaceSpec& space) {
  if (space.dim != form.dim())
    throw std::invalid_argument("space dimension " + std::to_string(space.dim) + " does not match form dimension " +
                                std::to_string(form.dim()));
  if (space.field != form.field())
    throw std::invalid_argument("space field " + std::string(to_string(space.field)) + " does not match form field " +
                                std::string(to_string(form.field())));
}

template <class T>
NormEstimate run_starts(const SymmetricForm& form, const SpaceSpec& space, const Pattern& pattern,
                        const OptimizerConfig& cfg, const std::vector<std::vector<Vec<T>>>& seeded, Method method) {
  const BlockAscent<T> engine(form, space, pattern, cfg);
  const int total = std::max<int>(cfg.restarts, static_cast<int>(seeded.size()));
  const int n = pattern.n();

  auto start_point = [&](int s) {
    if (s < static_cast<int>(seeded.size())) return seeded[static_cast<std::size_t>(s)];
    auto rng = substream(cfg.seed, static_cast<std::uint64_t>(s));
    std::vector<Vec<T>> xs;
    for (int b = 0; b < n; ++b) xs.push_back(random_unit<T>(form.dim(), space.p, rng));
    return xs;
  };

  std::vector<typename BlockAscent<T>::Result> results(static_cast<std::size_t>(total));
  auto work = [&](int s) { results[static_cast<std::size_t>(s)] = engine.run(start_point(s)); };

  if (cfg.parallel && total > 1) {
    const int workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 8u));
    std::vector<std::future<void>> futs;
    for (int w = 0; w < workers; ++w)
      futs.push_back(std::async(std::launch::async, [&, w] {
        for (int s = w; s < total; s += workers) work(s);
      }));
    for (auto& f : futs) f.get();
  } else {
    for (int s = 0; s < total; ++s) work(s);
  }

  std::size_t best = 0;
  int converged = 0;
  for (std::size_t s = 0; s < results.size(); ++s) {
    if (results[s].converged) ++converged;
    if (results[s].value > results[best].value) best = s;
  }
  NormEstimate est;
  est.value = results[best].value;
  for (const auto& x : results[best].xs) est.witnesses.push_back(to_cplx(x));
  est.method = method;
  est.starts_converged = converged;
  est.starts = total;
  est.field = form.field();
  return est;
}

template <class T>
std::vector<std::vector<Vec<T>>> diagonal_seeds(const SymmetricForm& form, const SpaceSpec& space) {
  const int d = form.dim();
  // best coordinate vector, then the equal-modulus vector
  std::size_t arg = 0;
  double big = -1.0;
  for (int i = 0; i < d; ++i) {
    Vec<T> e(static_cast<std::size_t>(d), T(0));
    e[static_cast<std::size_t>(i)] = T(1);
    const double v = std::abs(eval_poly<T>(form, e));
    if (v > big) {
      big = v;
      arg = static_cast<std::size_t>(i);
    }
  }
  Vec<T> e(static_cast<std::size_t>(d), T(0));
  e[arg] = T(1);
  Vec<T> ones = lp::normalize<T>(Vec<T>(static_cast<std::size_t>(d), T(1)), space.p);
  return {{e}, {ones}};
}

template <class T>
NormEstimate poly_norm_impl(const SymmetricForm& form, const SpaceSpec& space, const OptimizerConfig& cfg,
                            const std::vector<Vec<cplx>>& warm) {
  auto seeds = diagonal_seeds<T>(form, space);
  for (const auto& w : warm) seeds.push_back({from_cplx<T>(w)});
  return run_starts<T>(form, space, Pattern::single(form.degree()), cfg, seeds, Method::ascent);
}

template <class T>
NormEstimate mixed_norm_impl(const SymmetricForm& form, const SpaceSpec& space, const Pattern& pattern,
                             const OptimizerConfig& cfg, const NormEstimate& diagonal) {
  const Vec<T> w = from_cplx<T>(diagonal.witnesses.front());
  std::vector<std::vector<Vec<T>>> seeds{std::vector<Vec<T>>(static_cast<std::size_t>(pattern.n()), w)};
  const Method method = pattern.all_ones() ? Method::alternating : Method::ascent;
  return run_starts<T>(form, space, pattern, cfg, seeds, method);
}

}  // namespace detail

/// Estimate of sup_{||x||_p <= 1} |P(x)|. `warm` adds extra starting points
/// (each a vector in K^d) ahead of the random starts.
inline NormEstimate poly_norm(const SymmetricForm& form, const SpaceSpec& space, const OptimizerConfig& cfg = {},
                              const std::vector<Vec<cplx>>& warm = {}) {
  detail::check_compat(form, space);
  cfg.validate();
  for (const auto& w : warm)
    if (static_cast<int>(w.size()) != form.dim()) throw std::invalid_argument("poly_norm: warm start has wrong length");
  if (form.is_real()) return detail::poly_norm_impl<double>(form, space, cfg, warm);
  return detail::poly_norm_impl<cplx>(form, space, cfg, warm);
}

inline NormEstimate mixed_norm(const SymmetricForm& form, const SpaceSpec& space, const Pattern& pattern,
                               const OptimizerConfig& cfg, const NormEstimate& diagonal);

/// Estimate of sup over n unit vectors of |L(x_1^{k_1} ... x_n^{k_n})|.
/// The diagonal is feasible, so the result is never below the poly_norm estimate.
inline NormEstimate mixed_norm(const SymmetricForm& form, const SpaceSpec& space, const Pattern& pattern,
                               const OptimizerConfig& cfg = {}) {
  detail::check_compat(form, space);
  cfg.validate();
  if (pattern.m() != form.degree())
    throw std::invalid_argument("mixed_norm: pattern (" + pattern.str() + ") does not sum to degree " +
                                std::to_string(form.degree()));
  return mixed_norm(form, space, pattern, cfg, poly_norm(form, space, cfg));
}

/// As above, reusing an existing poly_norm estimate as the diagonal start.
inline NormEstimate mixed_norm(const SymmetricForm& form, const SpaceSpec& space, const Pattern& pattern,
                               const OptimizerConfig& cfg, const NormEstimate& diagonal) {
  detail::check_compat(form, space);
  cfg.validate();
  if (pattern.m() != form.degree())
    throw std::invalid_argument("mixed_norm: pattern (" + pattern.str() + ") does not sum to degree " +
                                std::to_string(form.degree()));
  if (pattern.n() == 1) return diagonal;
  if (form.is_real()) return detail::mixed_norm_impl<double>(form, space, pattern, cfg, diagonal);
  return detail::mixed_norm_impl<cplx>(form, space, pattern, cfg, diagonal);
}

/// Estimate of ||L|| = sup |L(x_1, ..., x_m)| by alternating exact slot maximization.
inline NormEstimate multilinear_norm(const SymmetricForm& form, const SpaceSpec& space,
                                     const OptimizerConfig& cfg = {}) {
  return mixed_norm(form, space, Pattern::ones(form.degree()), cfg);
}

}  // namespace polar
