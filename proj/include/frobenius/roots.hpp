#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "frobenius/multipoly.hpp"

namespace frobenius {

using ComplexVector = std::vector<Complex>;

inline bool all_finite(std::span<const Complex> v) {
  return std::all_of(v.begin(), v.end(), [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

struct RootOptions {
  /// Bound on the backward residual |p(r)| / (|lc| * max(1, sum_i |a_i/lc| |r|^i)).
  double tolerance = 1e-12;
  int max_iterations = 500;
};

namespace detail {

using LComplex = std::complex<long double>;

// Value and derivative by Horner; coefficients ascending.
inline std::pair<LComplex, LComplex> horner(const std::vector<LComplex>& a, LComplex x) {
  LComplex p = a.back();
  LComplex dp = 0;
  for (std::size_t k = a.size() - 1; k-- > 0;) {
    dp = dp * x + p;
    p = p * x + a[k];
  }
  return {p, dp};
}

inline long double backward_residual(const std::vector<LComplex>& a, LComplex x) {
  const long double lc = std::abs(a.back());
  long double scale = 0;
  long double r = 1;
  const long double ax = std::abs(x);
  for (const auto& c : a) {
    scale += std::abs(c) * r;
    r *= ax;
  }
  scale /= lc;
  return std::abs(horner(a, x).first) / (lc * std::max(1.0L, scale));
}

inline void newton_polish(const std::vector<LComplex>& a, std::vector<LComplex>& roots) {
  for (auto& r : roots) {
    for (int it = 0; it < 4; ++it) {
      const auto [p, dp] = horner(a, r);
      if (dp == LComplex(0)) break;
      const LComplex next = r - p / dp;
      if (backward_residual(a, next) < backward_residual(a, r)) {
        r = next;
      } else {
        break;
      }
    }
  }
}

inline bool aberth(const std::vector<LComplex>& a, std::vector<LComplex>& z, int max_iterations) {
  const std::size_t n = a.size() - 1;
  // Initial guesses on a circle of radius given by the Fujiwara-type bound.
  long double radius = 0;
  for (std::size_t k = 0; k < n; ++k)
    radius = std::max(radius, std::pow(std::abs(a[k] / a[n]), 1.0L / static_cast<long double>(n - k)));
  radius = std::max(radius, 1e-3L);
  const LComplex center = -a[n - 1] / (static_cast<long double>(n) * a[n]);
  z.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const long double angle = 2.0L * std::numbers::pi_v<long double> * k / n + 0.4L;
    z[k] = center + radius * LComplex(std::cos(angle), std::sin(angle));
  }
  std::vector<bool> done(n, false);
  for (int it = 0; it < max_iterations; ++it) {
    bool all_done = true;
    for (std::size_t k = 0; k < n; ++k) {
      if (done[k]) continue;
      const auto [p, dp] = horner(a, z[k]);
      if (p == LComplex(0)) {
        done[k] = true;
        continue;
      }
      const LComplex ratio = p / dp;
      LComplex sum = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) sum += 1.0L / (z[k] - z[j]);
      const LComplex step = ratio / (1.0L - ratio * sum);
      z[k] -= step;
      if (!std::isfinite(z[k].real()) || !std::isfinite(z[k].imag())) return false;
      if (std::abs(step) <= 1e-17L * std::max(1.0L, std::abs(z[k]))) {
        done[k] = true;
      } else {
        all_done = false;
      }
    }
    if (all_done) return true;
  }
  return false;
}

inline std::vector<LComplex> companion_roots(const std::vector<LComplex>& a) {
  const std::size_t n = a.size() - 1;
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t i = 1; i < n; ++i) c(i, i - 1) = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const LComplex v = -a[i] / a[n];
    c(i, n - 1) = Complex(static_cast<double>(v.real()), static_cast<double>(v.imag()));
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(c, false);
  std::vector<LComplex> roots;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const Complex e = solver.eigenvalues()(i);
    roots.emplace_back(e.real(), e.imag());
  }
  return roots;
}

}  // namespace detail

/// All complex roots (with multiplicity) of sum_k coeffs[k] x^k, ordered by
/// (real part, imaginary part). Simultaneous Aberth-Ehrlich iteration with a
/// companion-matrix fallback, both polished by Newton steps in long double.
inline ComplexVector polynomial_roots(std::span<const Complex> coeffs, const RootOptions& options = {}) {
  std::vector<detail::LComplex> a(coeffs.begin(), coeffs.end());
  while (!a.empty() && a.back() == detail::LComplex(0)) a.pop_back();
  if (a.empty()) throw std::invalid_argument("roots of the zero polynomial are undefined");
  if (!all_finite(coeffs)) throw std::invalid_argument("polynomial coefficients must be finite");
  // Factor out roots at zero.
  std::size_t zeros = 0;
  while (zeros + 1 < a.size() && a[zeros] == detail::LComplex(0)) ++zeros;
  a.erase(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(zeros));

  std::vector<detail::LComplex> roots;
  const std::size_t n = a.size() - 1;
  if (n == 1) {
    roots.push_back(-a[0] / a[1]);
  } else if (n > 1) {
    auto accepted = [&](const std::vector<detail::LComplex>& rs) {
      return std::all_of(rs.begin(), rs.end(), [&](const detail::LComplex& r) {
        return detail::backward_residual(a, r) <= static_cast<long double>(options.tolerance);
      });
    };
    std::vector<detail::LComplex> z;
    bool ok = detail::aberth(a, z, options.max_iterations);
    detail::newton_polish(a, z);
    if (!ok || !accepted(z)) {
      z = detail::companion_roots(a);
      detail::newton_polish(a, z);
      if (!accepted(z)) throw ConvergenceError("root finder did not reach the residual tolerance");
    }
    roots = std::move(z);
  }
  ComplexVector out(zeros, Complex(0.0, 0.0));
  for (const auto& r : roots) out.emplace_back(static_cast<double>(r.real()), static_cast<double>(r.imag()));
  std::sort(out.begin(), out.end(), [](const Complex& x, const Complex& y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  return out;
}

/// Ascending complex coefficients in `var` after substituting every other
/// variable from `assignment`.
inline ComplexVector univariate_coefficients(const MultiPoly& p, std::string_view var,
                                             const std::map<std::string, Complex>& assignment) {
  const std::size_t vi = p.index_of(var);
  std::vector<Complex> point(p.num_variables(), Complex(0.0, 0.0));
  for (std::size_t i = 0; i < p.num_variables(); ++i) {
    if (i == vi) continue;
    const auto it = assignment.find(p.variables()[i]);
    if (it == assignment.end()) {
      if (p.degree_in(i) > 0) throw std::invalid_argument("missing assignment for variable " + p.variables()[i]);
      continue;
    }
    point[i] = it->second;
  }
  const auto coeffs = p.coefficients_in(vi);
  ComplexVector out;
  for (const auto& c : coeffs) out.push_back(c.evaluate<Complex>(point));
  return out;
}

/// Roots of p in `var` once the remaining variables are fixed.
inline ComplexVector univariate_roots(const MultiPoly& p, std::string_view var,
                                      const std::map<std::string, Complex>& assignment,
                                      const RootOptions& options = {}) {
  if (p.is_zero()) throw std::invalid_argument("roots of the zero polynomial are undefined");
  const auto coeffs = univariate_coefficients(p, var, assignment);
  return polynomial_roots(coeffs, options);
}

/// Ascending complex coefficients of prod_k (x - r_k).
inline ComplexVector poly_from_roots(std::span<const Complex> roots) {
  ComplexVector c{Complex(1.0, 0.0)};
  for (const auto& r : roots) {
    ComplexVector next(c.size() + 1, Complex(0.0, 0.0));
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = std::move(next);
  }
  return c;
}

/// Horner evaluation of ascending coefficients.
inline Complex horner_eval(std::span<const Complex> coeffs, Complex x) {
  Complex p(0.0, 0.0);
  for (std::size_t k = coeffs.size(); k-- > 0;) p = p * x + coeffs[k];
  return p;
}

}  // namespace frobenius
