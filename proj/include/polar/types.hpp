#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace polar {

using cplx = std::complex<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Field { real, complex };

inline std::string_view to_string(Field f) { return f == Field::real ? "real" : "complex"; }

inline Field parse_field(std::string_view s) {
  if (s == "real") return Field::real;
  if (s == "complex") return Field::complex;
  throw std::invalid_argument("unknown field '" + std::string(s) + "' (expected real|complex)");
}

/// Exponent tuple alpha = (alpha_1, ..., alpha_d); degree is |alpha|.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents) : exps_(std::move(exponents)) {
    for (int e : exps_)
      if (e < 0) throw std::invalid_argument("MultiIndex: negative exponent");
    degree_ = std::accumulate(exps_.begin(), exps_.end(), 0);
  }

  int degree() const { return degree_; }
  std::size_t size() const { return exps_.size(); }
  int operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<int>& exponents() const { return exps_; }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex& a, const MultiIndex& b) { return a.exps_ <=> b.exps_; }

 private:
  std::vector<int> exps_;
  int degree_ = 0;
};

/// Block multiplicities (k_1, ..., k_n) with m = sum k_i.
class Pattern {
 public:
  Pattern() = default;
  explicit Pattern(std::vector<int> multiplicities) : ks_(std::move(multiplicities)) {
    if (ks_.empty()) throw std::invalid_argument("Pattern: empty");
    for (int k : ks_)
      if (k < 1) throw std::invalid_argument("Pattern: multiplicities must be positive");
  }

  static Pattern ones(int m) { return Pattern(std::vector<int>(static_cast<std::size_t>(m), 1)); }
  static Pattern single(int m) { return Pattern({m}); }

  int n() const { return static_cast<int>(ks_.size()); }
  int m() const { return std::accumulate(ks_.begin(), ks_.end(), 0); }
  int operator[](std::size_t i) const { return ks_[i]; }
  const std::vector<int>& multiplicities() const { return ks_; }
  bool all_ones() const {
    return std::all_of(ks_.begin(), ks_.end(), [](int k) { return k == 1; });
  }

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < ks_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(ks_[i]);
    }
    return s;
  }

  friend bool operator==(const Pattern&, const Pattern&) = default;

 private:
  std::vector<int> ks_;
};

/// Conjugate exponent q = q/(q-1) with 1 <-> inf.
inline double conjugate_exponent(double q) {
  if (q == 1.0) return kInf;
  if (std::isinf(q)) return 1.0;
  return q / (q - 1.0);
}

/// The ambient space l_p^d over the real or complex field.
struct SpaceSpec {
  double p = 2.0;
  int dim = 1;
  Field field = Field::real;

  SpaceSpec() = default;
  SpaceSpec(double p_, int dim_, Field field_) : p(p_), dim(dim_), field(field_) {
    if (!(p >= 1.0)) throw std::invalid_argument("SpaceSpec: p must lie in [1, inf]");
    if (dim < 1) throw std::invalid_argument("SpaceSpec: dimension must be positive");
  }

  double conjugate() const { return conjugate_exponent(p); }
  bool p_is_inf() const { return std::isinf(p); }
};

}  // namespace polar
