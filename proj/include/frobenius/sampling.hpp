#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "frobenius/rational.hpp"

namespace frobenius {

inline constexpr std::uint64_t kDefaultSeed = 0xF40B;

/// mt19937_64 with a fixed bits-to-double map, so sample streams are
/// identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = kDefaultSeed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(engine_() % span);
  }

  Complex complex(double re_lo, double re_hi, double im_lo, double im_hi) {
    const double re = uniform(re_lo, re_hi);
    const double im = uniform(im_lo, im_hi);
    return {re, im};
  }

 private:
  std::mt19937_64 engine_;
};

/// Toda sample: Re z strictly decreasing with gaps in [0.3, 1.5], Re z_n in
/// [0.5, 1.5], |Im z_k| <= 0.2. Keeps every log argument in the right half plane.
inline std::vector<Complex> sample_toda_point(Rng& rng, int n) {
  std::vector<Complex> z(n);
  double re = rng.uniform(0.5, 1.5);
  for (int k = n - 1; k >= 0; --k) {
    z[k] = Complex(re, rng.uniform(-0.2, 0.2));
    re += rng.uniform(0.3, 1.5);
  }
  return z;
}

/// Random rational with numerator in [-9, 9] and denominator in [1, 7].
inline Rational sample_rational(Rng& rng) {
  const auto p = rng.integer(-9, 9);
  const auto q = rng.integer(1, 7);
  return make_rational(p, q);
}

inline std::vector<Rational> sample_rational_point(Rng& rng, int n) {
  std::vector<Rational> t;
  for (int k = 0; k < n; ++k) t.push_back(sample_rational(rng));
  return t;
}

/// n+1 complex roots summing to zero, pairwise separated by at least
/// `separation`, with modulus in [separation, radius].
inline std::vector<Complex> sample_traceless_roots(Rng& rng, int n, double separation = 0.25, double radius = 2.0) {
  for (;;) {
    std::vector<Complex> x(n + 1);
    Complex sum(0.0, 0.0);
    for (int k = 0; k < n; ++k) {
      x[k] = rng.complex(-2.0, 2.0, -1.0, 1.0);
      sum += x[k];
    }
    x[n] = -sum;
    bool ok = true;
    for (int i = 0; i <= n && ok; ++i) {
      if (std::abs(x[i]) < separation || std::abs(x[i]) > radius) ok = false;
      for (int j = i + 1; j <= n && ok; ++j)
        if (std::abs(x[i] - x[j]) < separation) ok = false;
    }
    if (ok) return x;
  }
}

}  // namespace frobenius
