#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "frobenius/linalg.hpp"
#include "frobenius/report.hpp"
#include "frobenius/sampling.hpp"

namespace frobenius::esk {

using Point = std::vector<Complex>;

/// Black-box prepotential: third derivatives, optional Hessian, domain.
struct PrepotentialProvider {
  std::string name;
  int n = 0;
  std::function<ComplexTensor(const Point&)> F3;
  std::function<ComplexMatrix(const Point&)> F2;
  std::function<bool(const Point&)> domain = [](const Point&) { return true; };

  ComplexTensor third(const Point& z) const {
    if (!domain(z)) throw DomainError(name + ": point outside the provider domain");
    return F3(z);
  }
};

/// A vector field V(z) choosing the metric (.,.)_V and unit of *_V.
struct VectorField {
  std::string label;
  std::function<Point(const Point&)> at;

  static VectorField constant(Point v, std::string label = "custom") {
    return {std::move(label), [v = std::move(v)](const Point&) { return v; }};
  }
  static VectorField identity(std::string label = "euler") {
    return {std::move(label), [](const Point& z) { return z; }};
  }
};

/// Covariant metric field z -> g_ij(z).
using MetricField = std::function<ComplexMatrix(const Point&)>;

/// (e_i, e_j)_V = sum_k V_k F_kij.
inline ComplexMatrix metric_v(const PrepotentialProvider& p, const Point& V, const Point& z) {
  if (static_cast<int>(V.size()) != p.n) throw std::invalid_argument("V has wrong length");
  return p.third(z).contract(V);
}

/// Structure constants of *_V: (C_i)_{jk} = C_ij^k, e_i *_V e_j = sum_k C_ij^k e_k.
struct Multiplication {
  std::vector<ComplexMatrix> C;
  ComplexMatrix FV;
  ComplexMatrix FV_inv;
  ComplexTensor F3;
  Point V;

  std::size_t dim() const { return C.size(); }

  Point product(const Point& x, const Point& y) const {
    const std::size_t n = dim();
    Point out(n, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == Complex(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const Complex w = x[i] * y[j];
        for (std::size_t k = 0; k < n; ++k) out[k] += w * C[i](j, k);
      }
    }
    return out;
  }

  Complex pairing(const Point& x, const Point& y) const {
    Complex s(0.0, 0.0);
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j) s += x[i] * FV(i, j) * y[j];
    return s;
  }
};

/// C_i = [F_i] [F_V]^{-1}. Throws DegenerateError if [F_V] fails the guard.
inline Multiplication mult_v(const PrepotentialProvider& p, const Point& V, const Point& z) {
  Multiplication m;
  m.F3 = p.third(z);
  m.V = V;
  m.FV = m.F3.contract(V);
  m.FV_inv = guarded_inverse(m.FV);
  for (int i = 0; i < p.n; ++i) m.C.push_back(m.F3.slice(i) * m.FV_inv);
  return m;
}

inline double unit_law_residual(const Multiplication& m) {
  const std::size_t n = m.dim();
  ComplexMatrix s(n, n);
  for (std::size_t i = 0; i < n; ++i) s += m.C[i] * m.V[i];
  return max_abs(s - ComplexMatrix::identity(n));
}

/// max |sum_k C_ij^k (F_V)_{ak} - F_ija| / max(1, max |F3|).
inline double defmul_residual(const Multiplication& m) {
  const std::size_t n = m.dim();
  double diff = 0.0;
  double scale = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const ComplexMatrix rec = m.C[i] * m.FV;  // (j, a) -> sum_k C_ij^k FV_ka
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t a = 0; a < n; ++a) {
        diff = std::max(diff, std::abs(rec(j, a) - m.F3(i, j, a)));
        scale = std::max(scale, std::abs(m.F3(i, j, a)));
      }
  }
  return diff / scale;
}

/// |(X*Y, Z)_V - (X, Y*Z)_V|.
inline double compatibility_residual(const Multiplication& m, const Point& x, const Point& y, const Point& z) {
  return std::abs(m.pairing(m.product(x, y), z) - m.pairing(x, m.product(y, z)));
}

inline double associativity_residual(const Multiplication& m) {
  double worst = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = i + 1; j < m.dim(); ++j)
      worst = std::max(worst, max_abs(m.C[i] * m.C[j] - m.C[j] * m.C[i]));
  return worst;
}

namespace detail {

/// Runs `body` and maps degenerate or domain failures to report statuses.
template <class Body>
CheckReport guarded(CheckReport r, Body body) {
  try {
    body(r);
  } catch (const DegenerateError& e) {
    r.status = Status::degenerate;
    r.max_residual = 0.0;
    r.note("error", e.what());
  } catch (const DomainError& e) {
    r.status = Status::error;
    r.note("error", e.what());
  }
  return r;
}

inline Point shifted(const Point& z, std::size_t k, double h) {
  Point p = z;
  p[k] += h;
  return p;
}

/// Central difference of a matrix-list-valued f along z_k. With Richardson
/// extrapolation, (4 D(h/2) - D(h)) / 3.
template <class F>
std::vector<ComplexMatrix> central_difference(const F& f, const Point& z, std::size_t k, double h, bool richardson) {
  auto d = [&](double s) {
    std::vector<ComplexMatrix> p = f(shifted(z, k, s));
    const std::vector<ComplexMatrix> m = f(shifted(z, k, -s));
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = (p[i] - m[i]) * Complex(1.0 / (2.0 * s), 0.0);
    return p;
  };
  std::vector<ComplexMatrix> out = d(h);
  if (!richardson) return out;
  const std::vector<ComplexMatrix> half = d(h / 2);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (half[i] * Complex(4.0, 0.0) - out[i]) * Complex(1.0 / 3.0, 0.0);
  return out;
}

}  // namespace detail

inline CheckReport unit_law_check(const PrepotentialProvider& p, const VectorField& V, const Point& z, double tol) {
  CheckReport r = make_report("unit_law", tol);
  r.samples.push_back(z);
  r.note("V", V.label);
  return detail::guarded(r, [&](CheckReport& rep) { rep.judge(unit_law_residual(mult_v(p, V.at(z), z))); });
}

inline CheckReport defmul_check(const PrepotentialProvider& p, const VectorField& V, const Point& z, double tol) {
  CheckReport r = make_report("defmul", tol);
  r.samples.push_back(z);
  r.note("V", V.label);
  return detail::guarded(r, [&](CheckReport& rep) { rep.judge(defmul_residual(mult_v(p, V.at(z), z))); });
}

/// max_{i,j} |C_i C_j - C_j C_i|.
inline CheckReport associativity_check(const PrepotentialProvider& p, const VectorField& V, const Point& z,
                                       double tol) {
  CheckReport r = make_report("associativity", tol);
  r.samples.push_back(z);
  r.note("V", V.label);
  return detail::guarded(r, [&](CheckReport& rep) { rep.judge(associativity_residual(mult_v(p, V.at(z), z))); });
}

/*
 * Hertling's identity
 *   [XY, ZW] - [XY, Z]W - [XY, W]Z - X[Y, ZW] + X[Y, Z]W + X[Y, W]Z
 *            - Y[X, ZW] + Y[X, Z]W + Y[X, W]Z = 0
 * on coordinate fields X = e_i, Y = e_j, Z = e_k, W = e_l, where all brackets of
 * coordinate fields vanish. With A = e_i e_j and B = e_k e_l the surviving terms
 * are
 *   [A, B] + (d_k A) e_l + (d_l A) e_k - e_i (d_j B) - e_j (d_i B),
 * and d_m C is taken by central differences of the structure constants.
 */
inline CheckReport fmanifold_identity_check(const PrepotentialProvider& p, const VectorField& V, const Point& z,
                                            double tol, double step = 1e-4, bool richardson = false) {
  CheckReport r = make_report("fmanifold_identity", tol);
  r.samples.push_back(z);
  r.note("V", V.label);
  r.note("fd_step", format_double(step));
  r.note("richardson", richardson);
  return detail::guarded(r, [&](CheckReport& rep) {
    const std::size_t n = static_cast<std::size_t>(p.n);
    const Multiplication m = mult_v(p, V.at(z), z);
    // dC[q][i](j, k) = d_q C_ij^k
    std::vector<std::vector<ComplexMatrix>> dC(n);
    auto structure = [&](const Point& y) { return mult_v(p, V.at(y), y).C; };
    for (std::size_t q = 0; q < n; ++q) dC[q] = detail::central_difference(structure, z, q, step, richardson);
    auto c = [&](std::size_t i, std::size_t j, std::size_t k) { return m.C[i](j, k); };
    auto dc = [&](std::size_t q, std::size_t i, std::size_t j, std::size_t k) { return dC[q][i](j, k); };

    double worst = 0.0;
    double scale = 1.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) scale = std::max(scale, std::abs(c(i, j, k)));

    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t l = k; l < n; ++l)
            for (std::size_t out = 0; out < n; ++out) {
              Complex s(0.0, 0.0);
              for (std::size_t q = 0; q < n; ++q) {
                // [A, B]^out = A^q d_q B^out - B^q d_q A^out
                s += c(i, j, q) * dc(q, k, l, out) - c(k, l, q) * dc(q, i, j, out);
                // (d_k A) e_l + (d_l A) e_k
                s += dc(k, i, j, q) * c(q, l, out) + dc(l, i, j, q) * c(q, k, out);
                // - e_i (d_j B) - e_j (d_i B)
                s -= dc(j, k, l, q) * c(i, q, out) + dc(i, k, l, q) * c(j, q, out);
              }
              worst = std::max(worst, std::abs(s));
            }
    rep.judge(worst);
    double asym = 0.0;
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t i = 0; i < n; ++i) asym = std::max(asym, max_abs(dC[q][i] - dC[i][q]));
    rep.note("dC_asymmetry", format_double(asym));
    rep.note("associativity_residual", format_double(associativity_residual(m)));
    rep.note("structure_constant_scale", format_double(scale));
  });
}

// -- flatness -----------------------------------------------------------------

namespace detail {

/// dg[k] = d g / d z_k by central differences.
inline std::vector<ComplexMatrix> metric_derivatives(const MetricField& g, const Point& z, double h, bool richardson) {
  std::vector<ComplexMatrix> dg;
  for (std::size_t k = 0; k < z.size(); ++k)
    dg.push_back(central_difference([&](const Point& y) { return std::vector<ComplexMatrix>{g(y)}; }, z, k, h,
                                    richardson)[0]);
  return dg;
}

/// Levi-Civita symbols from g^{-1} and dg[k] = d_k g.
inline std::vector<ComplexMatrix> christoffel_from(const ComplexMatrix& ginv, const std::vector<ComplexMatrix>& dg) {
  const std::size_t n = ginv.rows();
  std::vector<ComplexMatrix> gamma(n, ComplexMatrix(n, n));
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t d = 0; d < n; ++d) {
        const Complex first = 0.5 * (dg[b](d, c) + dg[c](d, b) - dg[d](b, c));
        if (first == Complex(0.0, 0.0)) continue;
        for (std::size_t a = 0; a < n; ++a) gamma[a](b, c) += ginv(a, d) * first;
      }
  return gamma;
}

}  // namespace detail

/// z -> gamma[a](b, c) = Gamma^a_bc.
using ChristoffelField = std::function<std::vector<ComplexMatrix>(const Point&)>;

/// Christoffel symbols of g with first derivatives of g by central differences.
inline ChristoffelField fd_christoffel(const MetricField& g, double step, bool richardson = false) {
  return [g, step, richardson](const Point& z) {
    return detail::christoffel_from(guarded_inverse(g(z)), detail::metric_derivatives(g, z, step, richardson));
  };
}

struct FlatnessReports {
  CheckReport constancy;
  CheckReport curvature;
};

/// max |R^a_bcd| with
/// R^a_bcd = d_c Gamma^a_db - d_d Gamma^a_cb + Gamma^a_ce Gamma^e_db - Gamma^a_de Gamma^e_cb,
/// d_c Gamma by central differences of the supplied symbols.
inline CheckReport curvature_check(const ChristoffelField& christoffel, const Point& z, double tol, double step = 1e-4,
                                   bool richardson = false) {
  CheckReport r = make_report("flatness_curvature", tol);
  r.samples.push_back(z);
  r.note("fd_step", format_double(step));
  r.note("richardson", richardson);
  r.note("convention", "Levi-Civita connection of the complex bilinear metric; R^a_bcd = d_c G^a_db - d_d G^a_cb + "
                       "G^a_ce G^e_db - G^a_de G^e_cb");
  return detail::guarded(r, [&](CheckReport& rep) {
    const std::size_t n = z.size();
    const auto gamma = christoffel(z);
    std::vector<std::vector<ComplexMatrix>> dgamma(n);  // dgamma[c][a](b, d) = d_c Gamma^a_bd
    for (std::size_t c = 0; c < n; ++c) dgamma[c] = detail::central_difference(christoffel, z, c, step, richardson);
    double worst = 0.0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          for (std::size_t d = c + 1; d < n; ++d) {
            Complex v = dgamma[c][a](d, b) - dgamma[d][a](c, b);
            for (std::size_t e = 0; e < n; ++e) v += gamma[a](c, e) * gamma[e](d, b) - gamma[a](d, e) * gamma[e](c, b);
            worst = std::max(worst, std::abs(v));
          }
    rep.judge(worst);
  });
}

/// Tier (a): max |d g_ij / d z_k|. Tier (b): curvature_check with Christoffel
/// symbols from `christoffel`, or from differences of g if none is given.
inline FlatnessReports flatness_check(const MetricField& g, const Point& z, double tol_constancy, double tol_curvature,
                                      double step = 1e-4, bool richardson = false,
                                      const ChristoffelField& christoffel = nullptr) {
  FlatnessReports out{make_report("flatness_constancy", tol_constancy), CheckReport{}};
  out.constancy.samples.push_back(z);
  out.constancy.note("fd_step", format_double(step));
  out.constancy = detail::guarded(out.constancy, [&](CheckReport& rep) {
    double worst = 0.0;
    for (const auto& d : detail::metric_derivatives(g, z, step, richardson)) worst = std::max(worst, max_abs(d));
    rep.judge(worst);
  });
  out.curvature = curvature_check(christoffel ? christoffel : fd_christoffel(g, step, richardson), z, tol_curvature,
                                  step, richardson);
  out.curvature.note("christoffel", christoffel ? "supplied" : "finite differences of g");
  return out;
}

/// Field z -> (.,.)_{V(z)} at z.
inline MetricField metric_field(const PrepotentialProvider& p, const VectorField& V) {
  return [p, V](const Point& z) { return metric_v(p, V.at(z), z); };
}

// -- Kähler positivity ----------------------------------------------------------

/// Fraction of samples where Im F2(z) is positive definite. Informational.
inline CheckReport kahler_positivity_check(const PrepotentialProvider& p, const std::vector<Point>& samples) {
  CheckReport r = make_report("kahler_positivity", 0.0);
  r.status = Status::info;
  r.hard = false;
  if (!p.F2) {
    r.status = Status::error;
    r.note("error", "provider has no Hessian");
    return r;
  }
  int positive = 0;
  Json minima = Json::array();
  for (const auto& z : samples) {
    r.samples.push_back(z);
    const ComplexMatrix h = p.F2(z);
    Matrix<double> im(h.rows(), h.cols(), 0.0);
    for (std::size_t i = 0; i < h.rows(); ++i)
      for (std::size_t j = 0; j < h.cols(); ++j) im(i, j) = 0.5 * (h(i, j).imag() + h(j, i).imag());
    const auto ev = symmetric_eigenvalues(im);
    const double lo = ev.empty() ? 0.0 : ev.front();
    minima.push_back(format_double(lo));
    if (lo > 0.0) ++positive;
  }
  r.note("positive_samples", positive);
  r.note("fraction_positive", format_double(samples.empty() ? 0.0 : static_cast<double>(positive) / samples.size()));
  r.note("min_eigenvalues", minima);
  return r;
}

// -- rescaling -----------------------------------------------------------------

/// X *_W Y = (X *_V Y) *_V W^{-1}, where W^{-1} solves W *_V u = V.
inline CheckReport rescaling_check(const PrepotentialProvider& p, const VectorField& V, const VectorField& W,
                                   const Point& z, double tol) {
  CheckReport r = make_report("rescaling", tol);
  r.samples.push_back(z);
  r.note("V", V.label);
  r.note("W", W.label);
  try {
    const Multiplication mv = mult_v(p, V.at(z), z);
    const Point w = W.at(z);
    const std::size_t n = mv.dim();
    // (W *_V u)^k = sum_j u_j M_jk with M = sum_i W_i C_i.
    ComplexMatrix M(n, n);
    for (std::size_t i = 0; i < n; ++i) M += mv.C[i] * w[i];
    ComplexMatrix Mt_inv;
    try {
      Mt_inv = guarded_inverse(M.transpose());
    } catch (const DegenerateError&) {
      r.status = Status::error;
      r.note("error", "W is not invertible in the *_V algebra");
      return r;
    }
    const Point u = Mt_inv * mv.V;
    Multiplication mw;
    try {
      mw = mult_v(p, w, z);
    } catch (const DegenerateError&) {
      r.status = Status::error;
      r.note("error", "[F_W] is singular");
      return r;
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        Point ei(n, Complex(0.0, 0.0));
        Point ej(n, Complex(0.0, 0.0));
        ei[i] = 1.0;
        ej[j] = 1.0;
        const Point lhs = mw.product(ei, ej);
        const Point rhs = mv.product(mv.product(ei, ej), u);
        for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, std::abs(lhs[k] - rhs[k]));
      }
    r.judge(worst);
  } catch (const DegenerateError& e) {
    r.status = Status::degenerate;
    r.note("error", e.what());
  } catch (const DomainError& e) {
    r.status = Status::error;
    r.note("error", e.what());
  }
  return r;
}

// -- degenerate families ------------------------------------------------------------

/// Tries `trials` random constant V at z. If every [F_V] fails the guard the
/// provider is reported as a degenerate family (status "degenerate").
inline CheckReport degenerate_family_check(const PrepotentialProvider& p, const Point& z, Rng& rng, int trials = 10) {
  CheckReport r = make_report("degenerate_family", kDegeneracyRatio);
  r.hard = false;
  r.samples.push_back(z);
  int degenerate = 0;
  double best_ratio = 0.0;
  const ComplexTensor f3 = p.third(z);
  for (int t = 0; t < trials; ++t) {
    Point v(p.n);
    for (auto& vk : v) vk = rng.complex(-1.0, 1.0, -1.0, 1.0);
    const auto sv = singular_values(f3.contract(v));
    best_ratio = std::max(best_ratio, sv.ratio());
    if (!(sv.largest > 0.0 && sv.smallest > kDegeneracyRatio * sv.largest)) ++degenerate;
  }
  r.max_residual = best_ratio;
  r.status = degenerate == trials ? Status::degenerate : Status::pass;
  r.note("trials", trials);
  r.note("degenerate_trials", degenerate);
  r.note("best_singular_value_ratio", format_double(best_ratio));
  if (degenerate == trials) r.note("verdict", "degenerate family");
  return r;
}

}  // namespace frobenius::esk
