#pragma once

// Closed-form polarization, Markov, Chebyshev, and Bernstein constants.
//
// Every calculator produces its log-value through sums of log-factorials and
// log-powers. The plain value is evaluated directly from exact factorials when
// m <= 18 and recovered as exp(log-value) beyond that, so m in the hundreds
// never overflows.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polar/combinatorics.hpp"
#include "polar/types.hpp"

namespace polar::bounds {

enum class Scope { real, complex, both };

inline std::string_view to_string(Scope s) {
  switch (s) {
    case Scope::real: return "real";
    case Scope::complex: return "complex";
    case Scope::both: return "both";
  }
  return "?";
}

struct PRange {
  double lo = 1.0;
  double hi = kInf;
  static PRange all() { return {1.0, kInf}; }
  static PRange point(double p) { return {p, p}; }
  bool contains(double p) const { return p >= lo && p <= hi; }
};

struct BoundRecord {
  std::string name;
  double value = 0.0;
  double log_value = 0.0;
  Scope scope = Scope::both;
  PRange p_range;
  bool applicable = true;
  std::optional<Pattern> pattern;
  bool sharp = false;
  bool proven = true;
  bool disjoint_support_only = false;
  std::optional<double> known_exact;  // registry value when the sharp constant is known
  std::string source;                 // winning calculator for min-type records
  std::string citation;
  std::string note;
};

namespace detail {

inline bool exact_regime(int m) { return m <= kExactFactorialLimit; }

inline BoundRecord make(std::string name, double log_value, double direct, int m, Scope scope, std::string citation) {
  BoundRecord r;
  r.name = std::move(name);
  r.log_value = log_value;
  r.value = exact_regime(m) ? direct : std::exp(log_value);
  r.scope = scope;
  r.citation = std::move(citation);
  return r;
}

inline BoundRecord not_applicable(std::string name, Scope scope, std::string citation, std::string note) {
  BoundRecord r;
  r.name = std::move(name);
  r.applicable = false;
  r.value = std::numeric_limits<double>::quiet_NaN();
  r.log_value = std::numeric_limits<double>::quiet_NaN();
  r.scope = scope;
  r.p_range = {1.0, 1.0};
  r.citation = std::move(citation);
  r.note = std::move(note);
  return r;
}

inline double inv(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

inline void check_p(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("p must lie in [1, inf]");
}

inline double mprime(int m) { return m == 1 ? kInf : static_cast<double>(m) / (m - 1); }

// log of m^m / prod k_i^{k_i}
inline double log_mm_over_kk(const Pattern& pat) {
  double s = log_pow(pat.m(), pat.m());
  for (int k : pat.multiplicities()) s -= log_pow(k, k);
  return s;
}
inline double direct_mm_over_kk(const Pattern& pat) {
  double s = std::pow(static_cast<double>(pat.m()), pat.m());
  for (int k : pat.multiplicities()) s /= std::pow(static_cast<double>(k), k);
  return s;
}
// log of prod k_i! / m!
inline double log_kfact_over_mfact(const Pattern& pat) {
  double s = -log_factorial(pat.m());
  for (int k : pat.multiplicities()) s += log_factorial(k);
  return s;
}
inline double direct_kfact_over_mfact(const Pattern& pat) {
  double s = 1.0;
  for (int k : pat.multiplicities()) s *= factorial(k);
  return s / factorial(pat.m());
}

// log sum_i exp(a_i)
inline double log_sum_exp(std::span<const double> a) {
  double mx = *std::max_element(a.begin(), a.end());
  if (std::isinf(mx)) return mx;
  double s = 0.0;
  for (double v : a) s += std::exp(v - mx);
  return mx + std::log(s);
}

// log of sum_i k_i^e
inline double log_power_sum(const Pattern& pat, double e) {
  std::vector<double> terms;
  for (int k : pat.multiplicities()) terms.push_back(log_pow(k, e));
  return log_sum_exp(terms);
}
inline double direct_power_sum(const Pattern& pat, double e) {
  double s = 0.0;
  for (int k : pat.multiplicities()) s += std::pow(static_cast<double>(k), e);
  return s;
}

// (m-k)^{m-k} with 0^0 = 1
inline double log_self_power(int n) { return log_pow(n, n); }
inline double direct_self_power(int n) { return n == 0 ? 1.0 : std::pow(static_cast<double>(n), n); }

inline void check_markov_args(int k, int m) {
  if (m < 1 || k < 1 || k > m) throw std::invalid_argument("Markov constants need 1 <= k <= m");
}

}  // namespace detail

/// m^m / m!: the universal ratio ||L|| / ||P||; sharp on l_1.
inline BoundRecord polar_range(int m) {
  if (m < 1) throw std::invalid_argument("polar_range: m must be >= 1");
  const double lg = log_pow(m, m) - log_factorial(m);
  const double direct = detail::exact_regime(m) ? std::pow(static_cast<double>(m), m) / factorial(m) : 0.0;
  auto r = detail::make("polar_range", lg, direct, m, Scope::both, "polarization-range");
  r.pattern = Pattern::ones(m);
  r.sharp = true;
  r.note = "sharp on l_1";
  return r;
}

/// Hilbert spaces: every polarization constant equals 1.
inline BoundRecord bound_hilbert(const Pattern& pat) {
  auto r = detail::make("hilbert", 0.0, 1.0, pat.m(), Scope::both, "hilbert-space-equality");
  r.pattern = pat;
  r.p_range = PRange::point(2.0);
  r.sharp = true;
  return r;
}

/// Trivial single-block bound |P(x)| <= ||P||.
inline BoundRecord bound_single_block(const Pattern& pat) {
  if (pat.n() != 1) return detail::not_applicable("single_block", Scope::both, "trivial", "needs n = 1");
  auto r = detail::make("single_block", 0.0, 1.0, pat.m(), Scope::both, "trivial");
  r.pattern = pat;
  r.sharp = true;
  return r;
}

/// n^{m|1/2 - 1/p|} on L^p, or n^{m/2} for an arbitrary space when p is absent.
inline BoundRecord bound_banach_mazur(const Pattern& pat, std::optional<double> p) {
  const int m = pat.m();
  const int n = pat.n();
  double expo;
  BoundRecord r;
  if (p) {
    detail::check_p(*p);
    expo = m * std::abs(0.5 - detail::inv(*p));
    r = detail::make("banach_mazur_lp", expo * std::log(static_cast<double>(n)), std::pow(static_cast<double>(n), expo),
                     m, Scope::both, "banach-mazur-lp");
    r.p_range = PRange::point(*p);
  } else {
    expo = m / 2.0;
    r = detail::make("banach_mazur", expo * std::log(static_cast<double>(n)), std::pow(static_cast<double>(n), expo),
                     m, Scope::both, "banach-mazur-general");
  }
  r.pattern = pat;
  return r;
}

/// Three-branch estimate for K(m; p), m >= 2; the middle branch is the minimum of two expressions.
inline BoundRecord bound_Kmp(int m, double p) {
  if (m < 2) throw std::invalid_argument("bound_Kmp: m must be >= 2");
  detail::check_p(p);
  const double mp = detail::mprime(m);
  const double lmf = log_factorial(m);
  const double lm = std::log(static_cast<double>(m));
  const bool ex = detail::exact_regime(m);
  const double mf = ex ? factorial(m) : 0.0;
  BoundRecord r;
  if (p <= mp) {
    const double e = m / p;
    r = detail::make("Kmp", e * lm - lmf, ex ? std::pow(m, e) / mf : 0.0, m, Scope::both, "polarization-lp-three-branch");
    r.sharp = true;
    r.p_range = {1.0, mp};
    r.note = "branch 1 <= p <= m'";
  } else if (p < m) {
    const double e1 = m / mp;
    const double e2 = m * std::abs(p - 2.0) / (2.0 * p);
    const double lg1 = e1 * lm - lmf;
    const double lg2 = e2 * lm;
    const double v1 = ex ? std::pow(m, e1) / mf : std::exp(lg1);
    const double v2 = ex ? std::pow(m, e2) : std::exp(lg2);
    const bool first = lg1 <= lg2;
    r = detail::make("Kmp", first ? lg1 : lg2, first ? v1 : v2, m, Scope::both, "polarization-lp-three-branch");
    r.p_range = {mp, static_cast<double>(m)};
    r.note = "branch m' <= p <= m: min{m^{m/m'}/m! = " + std::to_string(v1) + ", m^{m|p-2|/2p} = " +
             std::to_string(v2) + "}";
  } else {
    const double e = m * detail::inv(conjugate_exponent(p));
    r = detail::make("Kmp", e * lm - lmf, ex ? std::pow(m, e) / mf : 0.0, m, Scope::both, "polarization-lp-three-branch");
    r.p_range = {static_cast<double>(m), kInf};
    r.note = "branch m <= p <= inf";
  }
  r.pattern = Pattern::ones(m);
  return r;
}

/// (m^m/m!)^{|p-2|/p}, proven for complex L^p when m is a power of two and conjectured otherwise.
inline BoundRecord harris_conjecture(int m, double p) {
  if (m < 1) throw std::invalid_argument("harris_conjecture: m must be >= 1");
  detail::check_p(p);
  const double e = std::isinf(p) ? 1.0 : std::abs(p - 2.0) / p;
  const double base_lg = log_pow(m, m) - log_factorial(m);
  const double direct = detail::exact_regime(m) ? std::pow(std::pow(static_cast<double>(m), m) / factorial(m), e) : 0.0;
  auto r = detail::make("harris", e * base_lg, direct, m, Scope::complex, "harris-lp");
  r.pattern = Pattern::ones(m);
  r.p_range = PRange::point(p);
  r.proven = is_power_of_two(m);
  r.note = r.proven ? "proven (m is a power of 2)" : "conjectured";
  return r;
}

/// Complex L^p estimate: (m^m/prod k^k)^{1/p} prod k!/m! for p <= m', exponent 1/p' for p >= m.
/// Sharp on [1, m']; not available on the open gap (m', m).
inline BoundRecord bound_complex_lp(const Pattern& pat, double p) {
  detail::check_p(p);
  const int m = pat.m();
  const double mp = detail::mprime(m);
  double e;
  PRange range;
  bool sharp = false;
  if (p <= mp) {
    e = detail::inv(p);
    range = {1.0, mp};
    sharp = true;
  } else if (p >= m) {
    e = detail::inv(conjugate_exponent(p));
    range = {static_cast<double>(m), kInf};
  } else {
    auto r = detail::not_applicable("complex_lp", Scope::complex, "complex-lp-two-range",
                                    "no l_p-specific constant for m' < p < m");
    r.pattern = pat;
    return r;
  }
  const double lg = e * detail::log_mm_over_kk(pat) + detail::log_kfact_over_mfact(pat);
  const double direct =
      detail::exact_regime(m) ? std::pow(detail::direct_mm_over_kk(pat), e) * detail::direct_kfact_over_mfact(pat) : 0.0;
  auto r = detail::make("complex_lp", lg, direct, m, Scope::complex, "complex-lp-two-range");
  r.pattern = pat;
  r.p_range = range;
  r.sharp = sharp;
  return r;
}

/// Any complex Banach space: m^m/prod k^k * prod k!/m!, sharp.
inline BoundRecord bound_complex_any(const Pattern& pat) {
  const int m = pat.m();
  const double lg = detail::log_mm_over_kk(pat) + detail::log_kfact_over_mfact(pat);
  const double direct =
      detail::exact_regime(m) ? detail::direct_mm_over_kk(pat) * detail::direct_kfact_over_mfact(pat) : 0.0;
  auto r = detail::make("complex_any", lg, direct, m, Scope::complex, "complex-any-space");
  r.pattern = pat;
  r.sharp = true;
  return r;
}

/// C_{k,m}: Markov-type constant for ||D^k P|| (diagonal) on complex L^p.
inline BoundRecord markov_complex_lp(int k, int m, double p) {
  detail::check_markov_args(k, m);
  detail::check_p(p);
  const double mp = detail::mprime(m);
  double e;
  PRange range;
  bool sharp = false;
  if (p <= mp) {
    e = detail::inv(p);
    range = {1.0, mp};
    sharp = true;
  } else if (p <= m) {
    e = 1.0 / mp;
    range = {mp, static_cast<double>(m)};
  } else {
    e = detail::inv(conjugate_exponent(p));
    range = {static_cast<double>(m), kInf};
  }
  const double lbase = log_pow(m, m) - detail::log_self_power(m - k) - log_pow(k, k);
  const double dbase = std::pow(static_cast<double>(m), m) / (detail::direct_self_power(m - k) * std::pow(k, k));
  const double lg = e * lbase + log_factorial(k);
  const double direct = detail::exact_regime(m) ? std::pow(dbase, e) * factorial(k) : 0.0;
  auto r = detail::make("markov_complex_lp", lg, direct, m, Scope::complex, "complex-markov-lp");
  r.p_range = range;
  r.sharp = sharp;
  return r;
}

/// Sharp Markov constants on any complex space: (diagonal ||D^k P||, full ||D^k P||).
inline std::pair<BoundRecord, BoundRecord> markov_complex_any(int k, int m) {
  detail::check_markov_args(k, m);
  const bool ex = detail::exact_regime(m);
  const double lnum = log_pow(m, m) - detail::log_self_power(m - k);
  const double dnum = ex ? std::pow(static_cast<double>(m), m) / detail::direct_self_power(m - k) : 0.0;
  auto diag = detail::make("markov_complex_diag", lnum - log_pow(k, k) + log_factorial(k),
                           ex ? dnum / std::pow(static_cast<double>(k), k) * factorial(k) : 0.0, m, Scope::complex,
                           "complex-markov-any");
  auto full = detail::make("markov_complex_full", lnum, dnum, m, Scope::complex, "complex-markov-any");
  diag.sharp = full.sharp = true;
  return {diag, full};
}

/// Real spaces via complexification: 2^{m-1} times the complex constant.
inline BoundRecord bound_real_complexification(const Pattern& pat) {
  const int m = pat.m();
  const auto c = bound_complex_any(pat);
  const double lg = (m - 1) * std::log(2.0) + c.log_value;
  const double direct = detail::exact_regime(m) ? std::ldexp(c.value, m - 1) : 0.0;
  auto r = detail::make("real_complexification", lg, direct, m, Scope::real, "real-via-complexification");
  r.pattern = pat;
  return r;
}

/// Real spaces via the block polarization formula: n^{m-1}/m! * sum k_i^{m-1}.
inline BoundRecord bound_real_polar(const Pattern& pat) {
  const int m = pat.m();
  const int n = pat.n();
  const double lg = log_pow(n, m - 1) - log_factorial(m) + detail::log_power_sum(pat, m - 1);
  const double direct = detail::exact_regime(m) ? std::pow(static_cast<double>(n), m - 1) / factorial(m) *
                                                      detail::direct_power_sum(pat, m - 1)
                                                : 0.0;
  auto r = detail::make("real_polar", lg, direct, m, Scope::real, "real-polarization-formula");
  r.pattern = pat;
  return r;
}

/// Real spaces via the Hilbert-space case: sqrt(m^m / prod k^k).
inline BoundRecord bound_real_hilbert(const Pattern& pat) {
  const int m = pat.m();
  const double lg = 0.5 * detail::log_mm_over_kk(pat);
  const double direct = detail::exact_regime(m) ? std::sqrt(detail::direct_mm_over_kk(pat)) : 0.0;
  auto r = detail::make("real_hilbert", lg, direct, m, Scope::real, "real-via-hilbert");
  r.pattern = pat;
  return r;
}

namespace detail {
inline std::vector<int> sorted_ks(const Pattern& pat) {
  auto ks = pat.multiplicities();
  std::sort(ks.begin(), ks.end());
  return ks;
}
}  // namespace detail

/// Static table of known exact constants. Returns the value for the given
/// field/pattern/p when one is recorded.
inline std::optional<double> known_sharp(Field field, const Pattern& pat, std::optional<double> p) {
  if (field == Field::real) {
    if (detail::sorted_ks(pat) == std::vector<int>{2, 2}) return 3.0;
    return std::nullopt;
  }
  if (p) {
    if (*p <= detail::mprime(pat.m())) return bound_complex_lp(pat, *p).value;
    return std::nullopt;
  }
  return bound_complex_any(pat).value;
}

/// min of bound_real_polar and bound_real_hilbert; carries the registry value when known.
inline BoundRecord bound_real_best(const Pattern& pat) {
  const auto a = bound_real_polar(pat);
  const auto b = bound_real_hilbert(pat);
  BoundRecord r = (a.log_value < b.log_value) ? a : b;
  r.note = "min of real_polar and real_hilbert";
  r.source = r.name;
  r.name = "real_best";
  r.citation = "real-summary";
  r.known_exact = known_sharp(Field::real, pat, std::nullopt);
  return r;
}

/// Real L^p constants valid only for test vectors with disjoint supports.
inline BoundRecord bound_real_lp_disjoint(const Pattern& pat, double p) {
  detail::check_p(p);
  const int m = pat.m();
  const int n = pat.n();
  double lg, direct;
  if (p >= m) {
    if (std::isinf(p)) {
      // limit p -> inf of (sum k^{p-1})^{m/p} is (max k)^m
      const int kmax = *std::max_element(pat.multiplicities().begin(), pat.multiplicities().end());
      lg = log_pow(kmax, m) - log_factorial(m);
      direct = std::pow(static_cast<double>(kmax), m) / factorial(m);
    } else {
      lg = (m / p) * detail::log_power_sum(pat, p - 1.0) - log_factorial(m);
      direct = std::pow(detail::direct_power_sum(pat, p - 1.0), m / p) / factorial(m);
    }
  } else {
    lg = ((m - p) / p) * std::log(static_cast<double>(n)) - log_factorial(m) + detail::log_power_sum(pat, m - 1);
    direct = std::pow(static_cast<double>(n), (m - p) / p) / factorial(m) *
             detail::direct_power_sum(pat, m - 1);
  }
  auto r = detail::make("real_lp_disjoint", lg, direct, m, Scope::real, "real-lp-disjoint-support");
  r.pattern = pat;
  r.p_range = PRange::point(p);
  r.disjoint_support_only = true;
  r.note = "valid only for disjointly supported test vectors";
  return r;
}

struct MarkovRange {
  double M_lower, M_upper;
  double K_lower, K_upper;
  std::optional<double> M_exact;
};

/// Bounds on the smallest real Markov constants M_{m,k} (diagonal) and K_{m,k} (full).
inline MarkovRange real_markov_range(int m, int k) {
  detail::check_markov_args(k, m);
  const auto [diag, full] = markov_complex_any(k, m);
  const double lg_binom = log_binomial(m, k);
  const double half = 0.5 * (log_pow(m, m) - detail::log_self_power(m - k));
  const double lgM = lg_binom + log_factorial(k) + half - 0.5 * log_pow(k, k);
  const double lgK = lg_binom + half + 0.5 * log_pow(k, k);
  MarkovRange r;
  r.M_lower = diag.value;
  r.K_lower = full.value;
  if (detail::exact_regime(m)) {
    const double root = std::sqrt(std::pow(static_cast<double>(m), m) / detail::direct_self_power(m - k));
    const double kk = std::sqrt(std::pow(static_cast<double>(k), k));
    r.M_upper = binomial(m, k) * factorial(k) * root / kk;
    r.K_upper = binomial(m, k) * root * kk;
  } else {
    r.M_upper = std::exp(lgM);
    r.K_upper = std::exp(lgK);
  }
  if (m == 4 && k == 2) r.M_exact = 36.0;
  return r;
}

/// T_m^{(k)}(1) = m^2 (m^2 - 1^2) ... (m^2 - (k-1)^2) / (1 * 3 * ... * (2k-1)).
inline BoundRecord chebyshev_markov(int m, int k) {
  detail::check_markov_args(k, m);
  double lg = 0.0, direct = 1.0;
  const double m2 = static_cast<double>(m) * m;
  for (int j = 0; j < k; ++j) {
    const double num = m2 - static_cast<double>(j) * j;
    const double den = 2.0 * j + 1.0;
    lg += std::log(num) - std::log(den);
    direct *= num / den;
  }
  BoundRecord r;
  r.name = "chebyshev_markov";
  r.log_value = lg;
  r.value = direct;
  r.scope = Scope::real;
  r.sharp = true;
  r.citation = "markov-chebyshev";
  return r;
}

/// Pointwise first-derivative bound min{m sqrt(1-P(x)^2)/sqrt(1-||x||^2), m^2} for ||P|| <= 1.
inline double bernstein_pointwise(int m, double Px, double xnorm) {
  if (m < 1) throw std::invalid_argument("bernstein_pointwise: m must be >= 1");
  if (!(std::abs(Px) <= 1.0)) throw std::invalid_argument("bernstein_pointwise: need |P(x)| <= 1");
  if (!(xnorm >= 0.0 && xnorm < 1.0)) throw std::invalid_argument("bernstein_pointwise: need 0 <= ||x|| < 1");
  const double md = m;
  return std::min(md * std::sqrt(1.0 - Px * Px) / std::sqrt(1.0 - xnorm * xnorm), md * md);
}

struct BernsteinWidth {
  std::optional<double> pointwise;  // 2m / (w(K) sqrt(1 - ||x||_K^2))
  double gradient;                  // 2m^2 / w(K)
};

inline BernsteinWidth bernstein_width(int m, double width, std::optional<double> xnorm) {
  if (m < 1) throw std::invalid_argument("bernstein_width: m must be >= 1");
  if (!(width > 0.0)) throw std::invalid_argument("bernstein_width: width must be positive");
  BernsteinWidth r;
  r.gradient = 2.0 * m * m / width;
  if (xnorm) {
    if (!(*xnorm >= 0.0 && *xnorm < 1.0)) throw std::invalid_argument("bernstein_width: need 0 <= ||x||_K < 1");
    r.pointwise = 2.0 * m / (width * std::sqrt(1.0 - *xnorm * *xnorm));
  }
  return r;
}

struct RationalMoment {
  std::uint64_t numerator;
  std::uint64_t denominator;
  double value;
};

/// E|eps_1 + ... + eps_k|^m for independent signs, exactly, by binomial weighting
/// of the k+1 attainable sums.
inline RationalMoment rademacher_moment(int k, int m) {
  if (k < 1 || m < 0) throw std::invalid_argument("rademacher_moment: need k >= 1, m >= 0");
  if (k > 40) throw std::invalid_argument("rademacher_moment: k too large for exact arithmetic");
  unsigned __int128 num = 0;
  for (int j = 0; j <= k; ++j) {
    unsigned __int128 c = 1;
    for (int i = 1; i <= j; ++i) c = c * static_cast<unsigned>(k - j + i) / static_cast<unsigned>(i);
    unsigned __int128 pw = 1;
    const unsigned s = static_cast<unsigned>(std::abs(k - 2 * j));
    for (int i = 0; i < m; ++i) {
      pw *= s;
      if (pw > (static_cast<unsigned __int128>(1) << 100)) throw std::overflow_error("rademacher_moment: overflow");
    }
    num += c * pw;
  }
  unsigned __int128 den = static_cast<unsigned __int128>(1) << k;
  while (den > 1 && (num & 1) == 0) {
    num >>= 1;
    den >>= 1;
  }
  if (num > std::numeric_limits<std::uint64_t>::max()) throw std::overflow_error("rademacher_moment: overflow");
  RationalMoment r{static_cast<std::uint64_t>(num), static_cast<std::uint64_t>(den), 0.0};
  r.value = static_cast<double>(r.numerator) / static_cast<double>(r.denominator);
  return r;
}

/// Balanced pattern with n blocks summing to m (sizes differ by at most one).
inline Pattern balanced_pattern(int m, int n) {
  if (n < 1 || m < n) throw std::invalid_argument("balanced_pattern: need 1 <= n <= m");
  std::vector<int> ks(static_cast<std::size_t>(n), m / n);
  for (int i = 0; i < m % n; ++i) ++ks[static_cast<std::size_t>(i)];
  return Pattern(ks);
}

struct AsymptoticRow {
  int m;
  Pattern pattern;
  double log_bound;
  double bound;        // may be inf when it does not fit in a double
  double root;         // bound^{1/m}, computed from the log
};

/// Constants along the balanced family with n blocks, evaluated in the log domain.
inline std::vector<AsymptoticRow> asymptotic_scan(int n, const std::vector<int>& ms, Field field) {
  std::vector<AsymptoticRow> rows;
  for (int m : ms) {
    const Pattern pat = balanced_pattern(m, n);
    const BoundRecord r = field == Field::complex ? bound_complex_any(pat) : bound_real_complexification(pat);
    rows.push_back({m, pat, r.log_value, r.value, std::exp(r.log_value / m)});
  }
  return rows;
}

/// Every calculator applicable to (pattern, p, field), in tie-break order.
inline std::vector<BoundRecord> applicable_bounds(const Pattern& pat, std::optional<double> p, Field field) {
  if (p) detail::check_p(*p);
  const int m = pat.m();
  std::vector<BoundRecord> out;
  if (pat.n() == 1) out.push_back(bound_single_block(pat));
  if (p && *p == 2.0) out.push_back(bound_hilbert(pat));
  if (field == Field::complex) {
    if (p) {
      auto c = bound_complex_lp(pat, *p);
      if (c.applicable) out.push_back(c);
    }
  }
  if (p && pat.all_ones() && m >= 2) out.push_back(bound_Kmp(m, *p));
  if (field == Field::complex) {
    if (p && pat.all_ones()) {
      auto h = harris_conjecture(m, *p);
      if (h.proven) out.push_back(h);
    }
    out.push_back(bound_complex_any(pat));
  } else {
    out.push_back(bound_real_hilbert(pat));
    if (m >= 2) out.push_back(bound_real_polar(pat));
  }
  if (p) out.push_back(bound_banach_mazur(pat, p));
  out.push_back(bound_banach_mazur(pat, std::nullopt));
  if (field == Field::real) out.push_back(bound_real_complexification(pat));
  return out;
}

/// Minimum over the applicable calculators; `note` records the winner.
inline BoundRecord bound_best(const Pattern& pat, std::optional<double> p, Field field) {
  const auto all = applicable_bounds(pat, p, field);
  const BoundRecord* best = &all.front();
  for (const auto& r : all)
    if (r.log_value < best->log_value - 1e-12 * std::max(1.0, std::abs(best->log_value))) best = &r;
  BoundRecord out = *best;
  out.source = best->name;
  out.name = "best";
  out.scope = field == Field::real ? Scope::real : Scope::complex;
  out.known_exact = known_sharp(field, pat, p);
  if (pat.n() == 1) out.known_exact = 1.0;
  return out;
}

}  // namespace polar::bounds
