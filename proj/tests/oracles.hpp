#pragma once

// Independent numeric oracles used to re-derive regression constants.

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Eigenvalues>
#include <boost/multiprecision/cpp_complex.hpp>

#include "frobenius/linalg.hpp"

namespace oracle {

using Complex = std::complex<double>;
using HP = boost::multiprecision::cpp_complex_50;

/// Critical points of x^{n+1} + sum_k b_k x^{k-1} from the eigenvalues of the
/// companion matrix of its derivative.
inline std::vector<Complex> critical_points(const std::vector<Complex>& b) {
  const int n = static_cast<int>(b.size());
  // derivative: (n+1) x^n + sum_{k>=2} (k-1) b_k x^{k-2}
  std::vector<Complex> d(n + 1, 0.0);
  d[n] = static_cast<double>(n + 1);
  for (int k = 2; k <= n; ++k) d[k - 2] = static_cast<double>(k - 1) * b[k - 1];
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) c(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) c(i, n - 1) = -d[i] / d[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(c);
  std::vector<Complex> out;
  for (int i = 0; i < n; ++i) out.push_back(solver.eigenvalues()(i));
  return out;
}

/// <f, g> = sum_c f(c) g(c) / S_tilde''(c).
inline Complex critical_point_pairing(const std::vector<Complex>& b, const std::function<Complex(Complex)>& f,
                                      const std::function<Complex(Complex)>& g) {
  const int n = static_cast<int>(b.size());
  Complex s = 0.0;
  for (const Complex& c : critical_points(b)) {
    Complex second = static_cast<double>((n + 1) * n) * std::pow(c, n - 1);
    for (int k = 3; k <= n; ++k) second += static_cast<double>((k - 1) * (k - 2)) * b[k - 1] * std::pow(c, k - 3);
    s += f(c) * g(c) / second;
  }
  return s;
}

/// Toda prepotential retyped in 50-digit arithmetic.
inline HP toda_F(const std::vector<HP>& z) {
  HP f(0);
  const HP half(0.5);
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = i + 1; j < z.size(); ++j) {
      const HP w = z[i] - z[j];
      f += half * w * w * (log(w) - HP(1.5));
    }
    f += half * z[i] * z[i] * log(z[i]);
  }
  return f;
}

/// q(v) = d^3/ds^3 F(z + s v) at s=0 by the 4-point stencil.
inline HP cubic_form(const std::vector<HP>& z, const std::vector<int>& v, const HP& h) {
  auto at = [&](int m) {
    auto p = z;
    for (std::size_t k = 0; k < z.size(); ++k) p[k] += HP(m * v[k]) * h;
    return toda_F(p);
  };
  return (at(2) - HP(2) * at(1) + HP(2) * at(-1) - at(-2)) / (HP(2) * h * h * h);
}

/// F_ijk by polarization: 6 T(a,b,c) = q(a+b+c) - q(a+b) - q(a+c) - q(b+c) + q(a) + q(b) + q(c).
inline frobenius::ComplexTensor toda_third_fd(const std::vector<Complex>& z, double step) {
  const std::size_t n = z.size();
  std::vector<HP> zp;
  for (const auto& zk : z) zp.emplace_back(zk.real(), zk.imag());
  const HP h(step);
  frobenius::ComplexTensor out(n);
  auto unit = [&](std::initializer_list<std::size_t> idx) {
    std::vector<int> v(n, 0);
    for (auto i : idx) v[i] += 1;
    return v;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t k = j; k < n; ++k) {
        const HP t = (cubic_form(zp, unit({i, j, k}), h) - cubic_form(zp, unit({i, j}), h) -
                      cubic_form(zp, unit({i, k}), h) - cubic_form(zp, unit({j, k}), h) + cubic_form(zp, unit({i}), h) +
                      cubic_form(zp, unit({j}), h) + cubic_form(zp, unit({k}), h)) /
                     HP(6);
        out.set_symmetric(i, j, k, Complex(static_cast<double>(t.real()), static_cast<double>(t.imag())));
      }
  return out;
}

}  // namespace oracle
