#pragma once

// l_p geometry on K^d: norms, dual-norm alignment, and the feasible-set moves
// used by the ascent routines.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <span>
#include <vector>

#include "polar/form.hpp"
#include "polar/types.hpp"

namespace polar::lp {

template <class T>
double modulus(const T& v) {
  return std::abs(v);
}

template <class T>
double norm(std::span<const T> x, double p) {
  if (std::isinf(p)) {
    double r = 0.0;
    for (const auto& v : x) r = std::max(r, modulus(v));
    return r;
  }
  double scale = 0.0;
  for (const auto& v : x) scale = std::max(scale, modulus(v));
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (const auto& v : x) s += std::pow(modulus(v) / scale, p);
  return scale * std::pow(s, 1.0 / p);
}

template <class T>
double norm(const Vec<T>& x, double p) {
  return norm<T>(std::span<const T>(x), p);
}

/// Radial rescaling onto the unit sphere; the zero vector is returned unchanged.
template <class T>
Vec<T> normalize(Vec<T> x, double p) {
  const double r = norm<T>(x, p);
  if (r > 0.0)
    for (auto& v : x) v /= r;
  return x;
}

/// Unit-sign of a scalar: v/|v|, and 0 for v = 0.
template <class T>
T unit_sign(const T& v) {
  const double a = modulus(v);
  return a == 0.0 ? T(0) : v / a;
}

/// Maximizer over the unit l_p ball of Re sum_i conj(phi_i) u_i, i.e. the vector
/// aligned with phi in the dual pairing. For p = 1 ties go to the lowest index;
/// the zero functional maps to e_1.
template <class T>
Vec<T> align(std::span<const T> phi, double p) {
  const std::size_t d = phi.size();
  Vec<T> u(d, T(0));
  double big = 0.0;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < d; ++i)
    if (modulus(phi[i]) > big) {
      big = modulus(phi[i]);
      arg = i;
    }
  if (big == 0.0) {
    u[0] = T(1);
    return u;
  }
  if (p == 1.0) {
    u[arg] = unit_sign(phi[arg]);
    return u;
  }
  if (std::isinf(p)) {
    for (std::size_t i = 0; i < d; ++i) u[i] = modulus(phi[i]) == 0.0 ? T(0) : unit_sign(phi[i]);
    return u;
  }
  const double q = conjugate_exponent(p);
  for (std::size_t i = 0; i < d; ++i) u[i] = unit_sign(phi[i]) * std::pow(modulus(phi[i]) / big, q - 1.0);
  return normalize<T>(std::move(u), p);
}

template <class T>
Vec<T> align(const Vec<T>& phi, double p) {
  return align<T>(std::span<const T>(phi), p);
}

/// Dual norm ||phi||_{p'}, the value of the linear functional at its aligned vector.
template <class T>
double dual_norm(std::span<const T> phi, double p) {
  return norm<T>(phi, conjugate_exponent(p));
}

/// Euclidean projection onto the unit l_1 ball (soft-thresholding of the moduli).
template <class T>
Vec<T> project_l1_ball(Vec<T> v) {
  std::vector<double> a(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) a[i] = modulus(v[i]);
  if (std::accumulate(a.begin(), a.end(), 0.0) <= 1.0) return v;
  std::vector<double> s = a;
  std::sort(s.begin(), s.end(), std::greater<>());
  double cum = 0.0, tau = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    cum += s[j];
    const double t = (cum - 1.0) / static_cast<double>(j + 1);
    if (s[j] > t) tau = t;
  }
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = unit_sign(v[i]) * std::max(a[i] - tau, 0.0);
  return v;
}

/// Projection onto the unit l_inf ball (coordinate-wise modulus clipping).
template <class T>
Vec<T> project_box(Vec<T> v) {
  for (auto& x : v)
    if (modulus(x) > 1.0) x = unit_sign(x);
  return v;
}

/// Real inner product Re sum conj(a_i) b_i of vectors viewed in R^d or R^{2d}.
template <class T>
double real_dot(std::span<const T> a, std::span<const T> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if constexpr (is_complex_v<T>)
      s += (std::conj(a[i]) * b[i]).real();
    else
      s += a[i] * b[i];
  }
  return s;
}

/// Removes from g its component along the outward normal of the l_p sphere at x
/// (1 < p < inf); fixed points of the resulting ascent are the KKT points.
template <class T>
Vec<T> tangent_component(std::span<const T> x, std::span<const T> g, double p) {
  Vec<T> n(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) n[i] = unit_sign(x[i]) * std::pow(modulus(x[i]), p - 1.0);
  const double nn = real_dot<T>(n, n);
  Vec<T> t(g.begin(), g.end());
  if (nn == 0.0) return t;
  const double c = real_dot<T>(n, g) / nn;
  for (std::size_t i = 0; i < t.size(); ++i) t[i] -= c * n[i];
  return t;
}

}  // namespace polar::lp
