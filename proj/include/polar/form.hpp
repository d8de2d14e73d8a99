#pragma once

// Symmetric m-linear forms on K^d, stored through the coefficients of the
// associated homogeneous polynomial P(x) = sum_alpha a_alpha x^alpha.
// The symmetric tensor entry at the index multiset beta is a_beta beta! / m!.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "polar/combinatorics.hpp"
#include "polar/types.hpp"

namespace polar {

template <class T>
using Vec = std::vector<T>;

template <class T>
inline constexpr bool is_complex_v = std::is_same_v<T, cplx>;

struct Coefficient {
  MultiIndex alpha;
  cplx value;
};

class SymmetricForm {
 public:
  struct Term {
    MultiIndex alpha;
    cplx coeff;
    std::vector<std::pair<int, int>> support;  // (coordinate, exponent) for nonzero exponents
  };

  SymmetricForm() = default;

  int degree() const { return degree_; }
  int dim() const { return dim_; }
  Field field() const { return field_; }
  bool is_real() const { return field_ == Field::real; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.coeff == cplx{}; });
  }

  cplx coefficient(const MultiIndex& alpha) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), alpha,
                               [](const Term& t, const MultiIndex& a) { return t.alpha < a; });
    if (it != terms_.end() && it->alpha == alpha) return it->coeff;
    return {};
  }

  /// Same form with every coefficient multiplied by c (c must be real for real forms).
  SymmetricForm scaled(cplx c) const {
    if (is_real() && c.imag() != 0.0)
      throw std::invalid_argument("scaled: complex factor applied to a real form");
    SymmetricForm out = *this;
    for (auto& t : out.terms_) t.coeff *= c;
    return out;
  }

  /// The canonical complex extension: identical coefficients over the complex field.
  SymmetricForm complexified() const {
    SymmetricForm out = *this;
    out.field_ = Field::complex;
    return out;
  }

  friend SymmetricForm make_form(int m, int d, Field field, const std::vector<Coefficient>& coeffs);

 private:
  int degree_ = 0;
  int dim_ = 0;
  Field field_ = Field::real;
  std::vector<Term> terms_;
};

/// Validating constructor. Rejects degree/dimension mismatches, duplicate
/// multi-indices, and complex scalars in a real form.
inline SymmetricForm make_form(int m, int d, Field field, const std::vector<Coefficient>& coeffs) {
  if (m < 1) throw std::invalid_argument("make_form: degree must be >= 1");
  if (d < 1) throw std::invalid_argument("make_form: dimension must be >= 1");
  SymmetricForm f;
  f.degree_ = m;
  f.dim_ = d;
  f.field_ = field;
  f.terms_.reserve(coeffs.size());
  for (const auto& c : coeffs) {
    if (static_cast<int>(c.alpha.size()) != d)
      throw std::invalid_argument("make_form: multi-index length " + std::to_string(c.alpha.size()) +
                                  " does not match dimension " + std::to_string(d));
    if (c.alpha.degree() != m)
      throw std::invalid_argument("make_form: multi-index degree " + std::to_string(c.alpha.degree()) +
                                  " does not match form degree " + std::to_string(m));
    if (field == Field::real && c.value.imag() != 0.0)
      throw std::invalid_argument("make_form: complex coefficient in a real form");
    SymmetricForm::Term t{c.alpha, c.value, {}};
    for (int i = 0; i < d; ++i)
      if (c.alpha[static_cast<std::size_t>(i)] > 0) t.support.emplace_back(i, c.alpha[static_cast<std::size_t>(i)]);
    f.terms_.push_back(std::move(t));
  }
  std::sort(f.terms_.begin(), f.terms_.end(),
            [](const SymmetricForm::Term& a, const SymmetricForm::Term& b) { return a.alpha < b.alpha; });
  for (std::size_t i = 1; i < f.terms_.size(); ++i)
    if (f.terms_[i].alpha == f.terms_[i - 1].alpha)
      throw std::invalid_argument("make_form: duplicate multi-index");
  return f;
}

namespace detail {

template <class T>
T coeff_as(cplx c) {
  if constexpr (is_complex_v<T>)
    return c;
  else
    return c.real();
}

template <class T>
void check_scalar_type(const SymmetricForm& f) {
  if constexpr (!is_complex_v<T>) {
    if (!f.is_real()) throw std::invalid_argument("real-valued evaluation requested for a complex form");
  }
}

template <class T>
void check_length(const SymmetricForm& f, std::size_t n) {
  if (static_cast<int>(n) != f.dim())
    throw std::invalid_argument("vector length " + std::to_string(n) + " does not match form dimension " +
                                std::to_string(f.dim()));
}

template <class T>
T ipow(T x, int e) {
  T r = T(1);
  while (e > 0) {
    if (e & 1) r *= x;
    x *= x;
    e >>= 1;
  }
  return r;
}

// Grouped block-sign enumeration:
//   L(x_1^{k_1} ... x_n^{k_n}) = 1/(2^m m!) sum_t prod_j C(k_j,t_j)(-1)^{t_j} F(sum_j (k_j - 2 t_j) x_j)
// where F is P (value) or grad P (free-slot contraction). `accumulate(weight, point)` receives each term.
template <class T, class Accumulate>
void for_each_block_sign(std::span<const Vec<T>> xs, std::span<const int> ks, int dim, Accumulate&& accumulate) {
  const std::size_t n = ks.size();
  std::vector<int> t(n, 0);
  Vec<T> point(static_cast<std::size_t>(dim));
  while (true) {
    double w = 1.0;
    std::fill(point.begin(), point.end(), T(0));
    for (std::size_t j = 0; j < n; ++j) {
      w *= binomial(ks[j], t[j]) * ((t[j] & 1) ? -1.0 : 1.0);
      const double s = static_cast<double>(ks[j] - 2 * t[j]);
      if (s == 0.0) continue;
      for (int i = 0; i < dim; ++i) point[static_cast<std::size_t>(i)] += s * xs[j][static_cast<std::size_t>(i)];
    }
    accumulate(w, std::as_const(point));
    std::size_t j = 0;
    while (j < n && t[j] == ks[j]) t[j++] = 0;
    if (j == n) break;
    ++t[j];
  }
}

}  // namespace detail

template <class T>
T eval_poly(const SymmetricForm& f, std::span<const T> x) {
  detail::check_scalar_type<T>(f);
  detail::check_length<T>(f, x.size());
  T acc(0);
  for (const auto& term : f.terms()) {
    T mono = detail::coeff_as<T>(term.coeff);
    for (auto [i, e] : term.support) mono *= detail::ipow(x[static_cast<std::size_t>(i)], e);
    acc += mono;
  }
  return acc;
}

template <class T>
T eval_poly(const SymmetricForm& f, const Vec<T>& x) {
  return eval_poly<T>(f, std::span<const T>(x));
}

/// Holomorphic gradient: component i is dP/dx_i.
template <class T>
Vec<T> gradient(const SymmetricForm& f, std::span<const T> x) {
  detail::check_scalar_type<T>(f);
  detail::check_length<T>(f, x.size());
  Vec<T> g(x.size(), T(0));
  for (const auto& term : f.terms()) {
    const T c = detail::coeff_as<T>(term.coeff);
    const auto& sup = term.support;
    for (std::size_t a = 0; a < sup.size(); ++a) {
      T v = c * static_cast<double>(sup[a].second) *
            detail::ipow(x[static_cast<std::size_t>(sup[a].first)], sup[a].second - 1);
      for (std::size_t b = 0; b < sup.size(); ++b)
        if (b != a) v *= detail::ipow(x[static_cast<std::size_t>(sup[b].first)], sup[b].second);
      g[static_cast<std::size_t>(sup[a].first)] += v;
    }
  }
  return g;
}

inline constexpr int kDefaultPolarizeCap = 20;

/// L(x_1^{k_1} ... x_n^{k_n}) by block-sign enumeration over prod (k_j + 1) grouped sign classes.
template <class T>
T eval_mixed(const SymmetricForm& f, const Pattern& pattern, std::span<const Vec<T>> xs) {
  detail::check_scalar_type<T>(f);
  if (pattern.m() != f.degree())
    throw std::invalid_argument("eval_mixed: pattern sums to " + std::to_string(pattern.m()) + ", form degree is " +
                                std::to_string(f.degree()));
  if (static_cast<int>(xs.size()) != pattern.n())
    throw std::invalid_argument("eval_mixed: expected " + std::to_string(pattern.n()) + " vectors, got " +
                                std::to_string(xs.size()));
  for (const auto& x : xs) detail::check_length<T>(f, x.size());
  const int m = f.degree();
  T acc(0);
  detail::for_each_block_sign<T>(xs, pattern.multiplicities(), f.dim(), [&](double w, const Vec<T>& pt) {
    acc += w * eval_poly<T>(f, std::span<const T>(pt));
  });
  return acc / (std::ldexp(1.0, m) * factorial(m));
}

template <class T>
T eval_mixed(const SymmetricForm& f, const Pattern& pattern, const std::vector<Vec<T>>& xs) {
  return eval_mixed<T>(f, pattern, std::span<const Vec<T>>(xs));
}

/// L(x_1, ..., x_m) via the exact 2^m sign average of the polarization identity.
template <class T>
T polarize(const SymmetricForm& f, std::span<const Vec<T>> args, int cap = kDefaultPolarizeCap) {
  if (static_cast<int>(args.size()) != f.degree())
    throw std::invalid_argument("polarize: expected " + std::to_string(f.degree()) + " arguments, got " +
                                std::to_string(args.size()));
  if (f.degree() > cap)
    throw std::invalid_argument("polarize: degree " + std::to_string(f.degree()) + " exceeds sign-enumeration cap " +
                                std::to_string(cap));
  return eval_mixed<T>(f, Pattern::ones(f.degree()), args);
}

template <class T>
T polarize(const SymmetricForm& f, const std::vector<Vec<T>>& args, int cap = kDefaultPolarizeCap) {
  return polarize<T>(f, std::span<const Vec<T>>(args), cap);
}

/// Free-slot contraction: g_i = L(x_1^{k_1} ... x_n^{k_n}, e_i) with sum k_j = m - 1.
/// Blocks with k_j = 0 are allowed and ignored.
template <class T>
Vec<T> contract_free_slot(const SymmetricForm& f, std::span<const int> ks, std::span<const Vec<T>> xs) {
  detail::check_scalar_type<T>(f);
  const int m = f.degree();
  std::vector<int> kept_k;
  std::vector<Vec<T>> kept_x;
  for (std::size_t j = 0; j < ks.size(); ++j) {
    if (ks[j] < 0) throw std::invalid_argument("contract_free_slot: negative multiplicity");
    if (ks[j] == 0) continue;
    detail::check_length<T>(f, xs[j].size());
    kept_k.push_back(ks[j]);
    kept_x.push_back(xs[j]);
  }
  if (std::accumulate(kept_k.begin(), kept_k.end(), 0) != m - 1)
    throw std::invalid_argument("contract_free_slot: multiplicities must sum to degree - 1");
  Vec<T> g(static_cast<std::size_t>(f.dim()), T(0));
  if (kept_k.empty()) {
    Vec<T> zero(static_cast<std::size_t>(f.dim()), T(0));
    return gradient<T>(f, std::span<const T>(zero));
  }
  detail::for_each_block_sign<T>(std::span<const Vec<T>>(kept_x), kept_k, f.dim(), [&](double w, const Vec<T>& pt) {
    auto gp = gradient<T>(f, std::span<const T>(pt));
    for (std::size_t i = 0; i < g.size(); ++i) g[i] += w * gp[i];
  });
  const double scale = std::ldexp(1.0, m - 1) * factorial(m - 1) * static_cast<double>(m);
  for (auto& v : g) v /= scale;
  return g;
}

inline constexpr std::uint64_t kDefaultTensorCap = 10'000'000;

/// Brute-force contraction of the full symmetric tensor; O(d^m). Independent of the sign formulas.
template <class T>
T eval_tensor_direct(const SymmetricForm& f, std::span<const Vec<T>> args, std::uint64_t cap = kDefaultTensorCap) {
  detail::check_scalar_type<T>(f);
  const int m = f.degree();
  const int d = f.dim();
  if (static_cast<int>(args.size()) != m)
    throw std::invalid_argument("eval_tensor_direct: expected " + std::to_string(m) + " arguments");
  for (const auto& a : args) detail::check_length<T>(f, a.size());
  double work = std::pow(static_cast<double>(d), m);
  if (work > static_cast<double>(cap))
    throw std::invalid_argument("eval_tensor_direct: d^m exceeds the configured cap");

  std::map<std::vector<int>, cplx> lookup;
  for (const auto& t : f.terms()) lookup.emplace(t.alpha.exponents(), t.coeff);

  std::vector<int> idx(static_cast<std::size_t>(m), 0);
  std::vector<int> beta(static_cast<std::size_t>(d), 0);
  beta[0] = m;
  const double mfact = factorial(m);
  T acc(0);
  while (true) {
    auto it = lookup.find(beta);
    if (it != lookup.end()) {
      double bf = 1.0;
      for (int b : beta) bf *= factorial(b);
      T prod = detail::coeff_as<T>(it->second) * (bf / mfact);
      for (int k = 0; k < m; ++k) prod *= args[static_cast<std::size_t>(k)][static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
      acc += prod;
    }
    int k = m - 1;
    while (k >= 0 && idx[static_cast<std::size_t>(k)] == d - 1) {
      --beta[static_cast<std::size_t>(d - 1)];
      ++beta[0];
      idx[static_cast<std::size_t>(k)] = 0;
      --k;
    }
    if (k < 0) break;
    --beta[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
    ++idx[static_cast<std::size_t>(k)];
    ++beta[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
  }
  return acc;
}

template <class T>
T eval_tensor_direct(const SymmetricForm& f, const std::vector<Vec<T>>& args,
                     std::uint64_t cap = kDefaultTensorCap) {
  return eval_tensor_direct<T>(f, std::span<const Vec<T>>(args), cap);
}

/// k-th Frechet derivative D^k P(x)(y_1, ..., y_k) = m!/(m-k)! L(x^{m-k}, y_1, ..., y_k).
template <class T>
T frechet(const SymmetricForm& f, const Vec<T>& x, int k, const std::vector<Vec<T>>& ys) {
  const int m = f.degree();
  if (k < 1 || k > m) throw std::invalid_argument("frechet: derivative order must lie in [1, degree]");
  if (static_cast<int>(ys.size()) != k)
    throw std::invalid_argument("frechet: expected " + std::to_string(k) + " direction vectors");
  std::vector<int> ks;
  std::vector<Vec<T>> args;
  if (m - k > 0) {
    ks.push_back(m - k);
    args.push_back(x);
  }
  for (const auto& y : ys) {
    ks.push_back(1);
    args.push_back(y);
  }
  const double lead = std::exp(log_factorial(m) - log_factorial(m - k));
  return lead * eval_mixed<T>(f, Pattern(ks), args);
}

/// Value at x + iy of the canonical complex extension of a real form.
inline cplx complexify_eval(const SymmetricForm& f, const Vec<double>& x, const Vec<double>& y) {
  if (!f.is_real()) throw std::invalid_argument("complexify_eval: form is already complex");
  detail::check_length<double>(f, x.size());
  detail::check_length<double>(f, y.size());
  const int m = f.degree();
  // L(x^{m-j} y^j), with the blocks of zero size dropped
  auto mixed = [&](int j) {
    if (j == 0) return eval_poly<double>(f, x);
    if (j == m) return eval_poly<double>(f, y);
    std::vector<Vec<double>> xs{x, y};
    return eval_mixed<double>(f, Pattern({m - j, j}), xs);
  };
  double re = 0.0, im = 0.0;
  for (int k = 0; 2 * k <= m; ++k) re += ((k & 1) ? -1.0 : 1.0) * binomial(m, 2 * k) * mixed(2 * k);
  for (int k = 0; 2 * k + 1 <= m; ++k) im += ((k & 1) ? -1.0 : 1.0) * binomial(m, 2 * k + 1) * mixed(2 * k + 1);
  return {re, im};
}

template <class T>
struct MultinomialTerm {
  std::vector<int> exponents;  // (j_1, ..., j_n), sum = m
  double coefficient;          // m! / prod j_i!
  T value;                     // L(x_1^{j_1} ... x_n^{j_n})
};

/// Expansion P(x_1 + ... + x_n) = sum_j m!/(j_1!...j_n!) L(x_1^{j_1} ... x_n^{j_n}).
template <class T>
std::vector<MultinomialTerm<T>> multinomial_terms(const SymmetricForm& f, const std::vector<Vec<T>>& xs) {
  if (xs.empty()) throw std::invalid_argument("multinomial_terms: need at least one vector");
  for (const auto& x : xs) detail::check_length<T>(f, x.size());
  std::vector<MultinomialTerm<T>> out;
  for_each_composition(f.degree(), static_cast<int>(xs.size()), [&](std::span<const int> parts) {
    std::vector<int> ks;
    std::vector<Vec<T>> args;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (parts[i] == 0) continue;
      ks.push_back(parts[i]);
      args.push_back(xs[i]);
    }
    T v = eval_mixed<T>(f, Pattern(ks), args);
    out.push_back({std::vector<int>(parts.begin(), parts.end()), multinomial(parts), v});
  });
  return out;
}

}  // namespace polar
