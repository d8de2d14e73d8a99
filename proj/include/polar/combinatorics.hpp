#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace polar {

// Above this, factorials no longer fit exactly in 64 bits and the log route is used.
inline constexpr int kExactFactorialLimit = 18;

inline std::uint64_t exact_factorial(int n) {
  if (n < 0 || n > 20)
    throw std::out_of_range("exact_factorial: n outside [0, 20]");
  std::uint64_t r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

inline double log_factorial(int n) {
  if (n < 0) throw std::out_of_range("log_factorial: negative argument");
  if (n <= kExactFactorialLimit) return std::log(static_cast<double>(exact_factorial(n)));
  return std::lgamma(static_cast<double>(n) + 1.0);
}

inline double factorial(int n) {
  if (n <= kExactFactorialLimit) return static_cast<double>(exact_factorial(n));
  return std::exp(log_factorial(n));
}

/// log(base^exponent) with the convention 0^0 = 1.
inline double log_pow(double base, double exponent) {
  if (exponent == 0.0) return 0.0;
  if (base == 0.0) return -std::numeric_limits<double>::infinity();
  return exponent * std::log(base);
}

inline double log_binomial(int n, int k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (n <= kExactFactorialLimit)
    return static_cast<double>(exact_factorial(n) / (exact_factorial(k) * exact_factorial(n - k)));
  return std::exp(log_binomial(n, k));
}

/// m! / (j_1! ... j_n!)
inline double multinomial(std::span<const int> parts) {
  int m = std::accumulate(parts.begin(), parts.end(), 0);
  if (m <= kExactFactorialLimit) {
    std::uint64_t den = 1;
    for (int j : parts) den *= exact_factorial(j);
    return static_cast<double>(exact_factorial(m) / den);
  }
  double lg = log_factorial(m);
  for (int j : parts) lg -= log_factorial(j);
  return std::exp(lg);
}

/// Calls visit(parts) for every composition of `total` into `n` non-negative parts,
/// in lexicographic order of the parts vector (first part varies slowest, largest first).
template <class Visit>
void for_each_composition(int total, int n, Visit&& visit) {
  if (n <= 0) return;
  std::vector<int> parts(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == n - 1) {
      parts[static_cast<std::size_t>(pos)] = remaining;
      visit(std::span<const int>(parts));
      return;
    }
    for (int j = remaining; j >= 0; --j) {
      parts[static_cast<std::size_t>(pos)] = j;
      self(self, pos + 1, remaining - j);
    }
  };
  rec(rec, 0, total);
}

inline bool is_power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }

}  // namespace polar
