#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "polar/polar.hpp"

namespace polar::testing {

inline std::mt19937_64 rng_for(std::uint64_t salt) { return std::mt19937_64(0x7465737400000000ULL ^ salt); }

template <class T>
Vec<T> random_vec(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vec<T> x(static_cast<std::size_t>(d));
  for (auto& v : x) {
    if constexpr (is_complex_v<T>)
      v = cplx(g(rng), g(rng));
    else
      v = g(rng);
  }
  return x;
}

template <class T>
std::vector<Vec<T>> random_vecs(int count, int d, std::mt19937_64& rng) {
  std::vector<Vec<T>> xs;
  for (int i = 0; i < count; ++i) xs.push_back(random_vec<T>(d, rng));
  return xs;
}

template <class T>
double rel_err(T a, T b) {
  return std::abs(a - b) / (1.0 + std::abs(b));
}

inline Vec<double> e(int d, int i) {
  Vec<double> v(static_cast<std::size_t>(d), 0.0);
  v[static_cast<std::size_t>(i)] = 1.0;
  return v;
}

}  // namespace polar::testing
