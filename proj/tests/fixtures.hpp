#pragma once

// Prepotential fixtures: positive controls, negative controls and degenerate cases.

#include <cmath>
#include <memory>
#include <string>

#include "frobenius/esk.hpp"
#include "frobenius/multipoly.hpp"
#include "frobenius/providers.hpp"

namespace fixtures {

using frobenius::Complex;
using frobenius::ComplexMatrix;
using frobenius::ComplexTensor;
using frobenius::esk::Point;
using frobenius::esk::PrepotentialProvider;

inline PrepotentialProvider constant_provider(std::string name, const ComplexTensor& t) {
  PrepotentialProvider p;
  p.name = std::move(name);
  p.n = static_cast<int>(t.dim());
  p.F3 = [t](const Point&) { return t; };
  p.F2 = [n = p.n](const Point&) { return ComplexMatrix(n, n); };
  return p;
}

/// F = sum_k z_k^3 / 6: orthogonal idempotents, unit (1, ..., 1).
inline PrepotentialProvider idempotent(int n) {
  ComplexTensor t(n);
  for (int k = 0; k < n; ++k) t(k, k, k) = 1.0;
  return constant_provider("idempotent", t);
}

/// F_1ij = delta_ij, other entries zero, so (.,.)_{e_1} = I.
inline PrepotentialProvider delta_pattern(int n) {
  ComplexTensor t(n);
  for (int j = 0; j < n; ++j) t.set_symmetric(0, j, j, 1.0);
  return constant_provider("delta_pattern", t);
}

/// Random symmetric constant tensor (generically not associative).
inline PrepotentialProvider random_symmetric(int n, frobenius::Rng& rng) {
  ComplexTensor t(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j; k < n; ++k) t.set_symmetric(i, j, k, rng.complex(-1.0, 1.0, -1.0, 1.0));
  return constant_provider("random_symmetric", t);
}

/// Toda prepotential plus eps * z_1^2 z_2 / 2 (F_112 shifted by eps).
inline PrepotentialProvider perturbed_toda(int n, double eps = 0.1) {
  PrepotentialProvider p = frobenius::toda_provider(n);
  p.name = "perturbed_toda";
  auto base = p.F3;
  p.F3 = [base, eps](const Point& z) {
    ComplexTensor t = base(z);
    t.set_symmetric(0, 0, 1, t(0, 0, 1) + eps);
    return t;
  };
  return p;
}

/// Provider from an exact polynomial prepotential.
inline PrepotentialProvider polynomial(std::string name, const frobenius::MultiPoly& F) {
  const int n = static_cast<int>(F.num_variables());
  auto third = std::make_shared<std::vector<frobenius::MultiPoly>>();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) third->push_back(F.diff(i).diff(j).diff(k));
  PrepotentialProvider p;
  p.name = std::move(name);
  p.n = n;
  p.F3 = [third, n](const Point& z) {
    ComplexTensor t(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) t(i, j, k) = (*third)[(i * n + j) * n + k].evaluate<Complex>(z);
    return t;
  };
  return p;
}

/// F = t1^2 t3 / 2 + t1 t2^2 / 2 + t2^4 t3: [F_1] constant, so d_i C_j is
/// symmetric for V = e_1, but WDVV fails.
inline PrepotentialProvider broken_wdvv() {
  using frobenius::MultiPoly;
  using frobenius::make_rational;
  const std::vector<std::string> v = {"t1", "t2", "t3"};
  MultiPoly F(v);
  F.add_term({2, 0, 1}, make_rational(1, 2));
  F.add_term({1, 2, 0}, make_rational(1, 2));
  F.add_term({0, 4, 1}, make_rational(1));
  return polynomial("broken_wdvv", F);
}

/// F = z1^3 / z2, homogeneous of degree 2: every [F_V] has z in its kernel.
inline PrepotentialProvider homogeneous_degree_two() {
  PrepotentialProvider p;
  p.name = "homogeneous_degree_two";
  p.n = 2;
  p.F3 = [](const Point& z) {
    const Complex a = z[0];
    const Complex b = z[1];
    ComplexTensor t(2);
    t.set_symmetric(0, 0, 0, 6.0 / b);
    t.set_symmetric(0, 0, 1, -6.0 * a / (b * b));
    t.set_symmetric(0, 1, 1, 6.0 * a * a / (b * b * b));
    t.set_symmetric(1, 1, 1, -6.0 * a * a * a / (b * b * b * b));
    return t;
  };
  p.domain = [](const Point& z) { return z.size() == 2 && std::abs(z[1]) > 1e-12; };
  return p;
}

/// g = diag(1, exp(z1)): Gaussian curvature -1/4.
inline frobenius::esk::MetricField curved_metric() {
  return [](const Point& z) {
    ComplexMatrix g(2, 2);
    g(0, 0) = 1.0;
    g(1, 1) = std::exp(z[0]);
    return g;
  };
}

inline frobenius::esk::MetricField constant_metric(const ComplexMatrix& m) {
  return [m](const Point&) { return m; };
}

}  // namespace fixtures
