#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_complex.hpp>

#include "frobenius/linalg.hpp"
#include "frobenius/report.hpp"
#include "frobenius/roots.hpp"
#include "frobenius/saito.hpp"
#include "frobenius/wdvv.hpp"

namespace frobenius::toda {

/// Open A_n Toda chain in the coordinates z_1..z_n.
/// Domain: z_i != z_j for i < j and z_k != 0.
class TodaModel {
 public:
  explicit TodaModel(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("Toda rank must be >= 1");
  }

  int rank() const { return n_; }

  template <class T>
  bool in_domain(const std::vector<T>& z) const {
    if (static_cast<int>(z.size()) != n_) return false;
    using std::abs;
    double scale = 1.0;
    for (const auto& zk : z) scale = std::max(scale, static_cast<double>(abs(zk)));
    const double eps = 1e-13 * scale;
    for (int i = 0; i < n_; ++i) {
      const double m = static_cast<double>(abs(z[i]));
      if (!std::isfinite(m) || m <= eps) return false;
      for (int j = i + 1; j < n_; ++j)
        if (static_cast<double>(abs(T(z[i] - z[j]))) <= eps) return false;
    }
    return true;
  }

  template <class T>
  void require_domain(const std::vector<T>& z) const {
    if (static_cast<int>(z.size()) != n_)
      throw std::invalid_argument("expected " + std::to_string(n_) + " Toda coordinates");
    if (!in_domain(z)) throw DomainError("Toda coordinates must be distinct and nonzero");
  }

 private:
  int n_;
};

/// F(z) = 1/2 sum_{i<j} (z_i-z_j)^2 log(e^{-3/2}(z_i-z_j)) + 1/2 sum_k z_k^2 log z_k,
/// principal branch.
template <class T>
T prepotential(const TodaModel& model, const std::vector<T>& z) {
  model.require_domain(z);
  using std::log;
  const int n = model.rank();
  T f(0);
  const T half(0.5);
  const T three_halves(1.5);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const T w = z[i] - z[j];
      f += half * w * w * (log(w) - three_halves);
    }
    f += half * z[i] * z[i] * log(z[i]);
  }
  return f;
}

/// Closed-form third derivatives:
///   F_iii = sum_{j!=i} 1/(z_i-z_j) + 1/z_i,  F_iij = -1/(z_i-z_j),  F_ijk = 0.
template <class T>
Tensor3<T> third_derivatives(const TodaModel& model, const std::vector<T>& z) {
  model.require_domain(z);
  const int n = model.rank();
  Tensor3<T> f(n, T(0));
  const T one(1);
  for (int i = 0; i < n; ++i) {
    T diag = one / z[i];
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const T r = one / (z[i] - z[j]);
      diag += r;
      // F_iij = -1/(z_i - z_j)
      f(i, i, j) = -r;
      f(i, j, i) = -r;
      f(j, i, i) = -r;
    }
    f(i, i, i) = diag;
  }
  return f;
}

/// Hessian: F_ii = sum_{j!=i} log(+-(z_i-z_j)) + log z_i + 3/2 with the sign
/// that keeps the argument equal to z_earlier - z_later; F_ij = -log(z_i-z_j), i<j.
template <class T>
Matrix<T> hessian(const TodaModel& model, const std::vector<T>& z) {
  model.require_domain(z);
  using std::log;
  const int n = model.rank();
  Matrix<T> h(n, n, T(0));
  for (int i = 0; i < n; ++i) {
    T d = log(z[i]) + T(1.5);
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      d += i < j ? log(T(z[i] - z[j])) : log(T(z[j] - z[i]));
    }
    h(i, i) = d;
    for (int j = i + 1; j < n; ++j) {
      h(i, j) = -log(T(z[i] - z[j]));
      h(j, i) = h(i, j);
    }
  }
  return h;
}

/// [F_E]_{ij} = sum_k z_k F_ijk.
inline ComplexMatrix f_e_matrix(const TodaModel& model, const std::vector<Complex>& z) {
  return third_derivatives(model, z).contract(z);
}

/// (n+1) I - AllOnes.
inline ComplexMatrix expected_f_e(int n) {
  ComplexMatrix m(n, n, Complex(-1.0, 0.0));
  for (int i = 0; i < n; ++i) m(i, i) = Complex(n, 0.0);
  return m;
}

inline double f_e_deviation(const TodaModel& model, const std::vector<Complex>& z) {
  return max_abs(f_e_matrix(model, z) - expected_f_e(model.rank()));
}

/// Generalized WDVV with V = z (the Euler direction).
inline CheckReport gen_wdvv_check(const TodaModel& model, const std::vector<Complex>& z, double tolerance) {
  CheckReport r = make_report("toda_gen_wdvv", tolerance);
  r.samples.push_back(z);
  try {
    r.judge(gen_wdvv_residual(third_derivatives(model, z), z));
  } catch (const DegenerateError& e) {
    r.status = Status::degenerate;
    r.note("error", e.what());
  }
  return r;
}

using HighComplex = boost::multiprecision::cpp_complex_50;

/// Third derivatives of `prepotential` by the product of central differences
/// in each index, evaluated in 50-digit complex arithmetic.
inline ComplexTensor finite_difference_third_derivatives(const TodaModel& model, const std::vector<Complex>& z,
                                                       double step) {
  model.require_domain(z);
  const int n = model.rank();
  std::vector<HighComplex> base;
  for (const auto& zk : z) base.emplace_back(zk.real(), zk.imag());
  const HighComplex h(step);
  ComplexTensor out(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j; k < n; ++k) {
        HighComplex acc(0);
        for (int s = 0; s < 8; ++s) {
          const int si = (s & 1) ? 1 : -1;
          const int sj = (s & 2) ? 1 : -1;
          const int sk = (s & 4) ? 1 : -1;
          auto p = base;
          p[i] += HighComplex(si) * h;
          p[j] += HighComplex(sj) * h;
          p[k] += HighComplex(sk) * h;
          acc += HighComplex(si * sj * sk) * prepotential(model, p);
        }
        acc /= HighComplex(8) * h * h * h;
        out.set_symmetric(i, j, k, Complex(static_cast<double>(acc.real()), static_cast<double>(acc.imag())));
      }
  return out;
}

/// max |closed - fd| / max(1, max |closed|).
inline double fd_relative_error(const ComplexTensor& closed, const ComplexTensor& fd) {
  double diff = 0.0;
  double scale = 1.0;
  const std::size_t n = closed.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        diff = std::max(diff, std::abs(closed(i, j, k) - fd(i, j, k)));
        scale = std::max(scale, std::abs(closed(i, j, k)));
      }
  return diff / scale;
}

// -- rational spectral curve --------------------------------------------------

struct SpectralCurveData {
  ComplexVector b;      // S_tilde = x^{n+1} + sum_k b_k x^{k-1}
  ComplexVector roots;  // n+1 roots, sorted by (re, im)
  ComplexVector crit;   // n critical points, sorted by (re, im)
  bool has_zero_root = false;
  double root_sum = 0.0;
  double min_root_gap = 0.0;
  double min_crit_gap = 0.0;
  double min_abs_at_crit = 0.0;
};

inline ComplexVector s_tilde_coefficients(const ComplexVector& b) {
  const std::size_t n = b.size();
  ComplexVector c(n + 2, Complex(0.0, 0.0));
  for (std::size_t k = 0; k < n; ++k) c[k] = b[k];
  c[n + 1] = 1.0;
  return c;
}

inline ComplexVector derivative(const ComplexVector& c) {
  ComplexVector d;
  for (std::size_t k = 1; k < c.size(); ++k) d.push_back(c[k] * static_cast<double>(k));
  return d;
}

/// b_k from roots: coefficient of x^{k-1} in prod (x - x_m).
inline ComplexVector b_from_roots(const ComplexVector& roots) {
  const ComplexVector c = poly_from_roots(roots);
  return ComplexVector(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(roots.size() - 1));
}

/// Roots and critical points of S_tilde at b; throws DomainError near the
/// discriminant (gaps or |S_tilde(crit)| below `guard` times the root scale).
inline SpectralCurveData spectral_curve(const ComplexVector& b, const RootOptions& options = {},
                                        double guard = 1e-8) {
  if (b.empty()) throw std::invalid_argument("base point must have n >= 1 components");
  SpectralCurveData d;
  d.b = b;
  const ComplexVector coeffs = s_tilde_coefficients(b);
  d.roots = polynomial_roots(coeffs, options);
  const ComplexVector dcoeffs = derivative(coeffs);
  d.crit = polynomial_roots(dcoeffs, options);
  double scale = 1.0;
  Complex sum(0.0, 0.0);
  for (const auto& r : d.roots) {
    scale = std::max(scale, std::abs(r));
    sum += r;
  }
  d.root_sum = std::abs(sum);
  auto min_gap = [](const ComplexVector& v) {
    double g = INFINITY;
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = i + 1; j < v.size(); ++j) g = std::min(g, std::abs(v[i] - v[j]));
    return g;
  };
  d.min_root_gap = min_gap(d.roots);
  d.min_crit_gap = min_gap(d.crit);
  d.min_abs_at_crit = INFINITY;
  for (const auto& c : d.crit) d.min_abs_at_crit = std::min(d.min_abs_at_crit, std::abs(horner_eval(coeffs, c)));
  for (const auto& r : d.roots)
    if (std::abs(r) <= 1e-12 * scale) d.has_zero_root = true;
  if (d.root_sum > 1e-8 * scale) throw DomainError("roots do not sum to zero");
  if (d.min_root_gap <= guard * scale) throw DomainError("base point is on or near the discriminant: repeated root");
  if (d.min_crit_gap <= guard * scale) throw DomainError("base point is near the discriminant: repeated critical point");
  if (d.min_abs_at_crit <= guard) throw DomainError("S_tilde is too small at a critical point");
  return d;
}

/*
 * T(X,Y,Z) = sum_{x_c : S_tilde'(x_c) = 0} X S_tilde * Y S_tilde * Z S_tilde / (S_tilde^2 S_tilde'')
 * on the hyperplane sum x_k = 0, basis e_i = d/dx_i - d/dx_{n+1}. With
 * S_tilde = prod (x - x_k): e_i S_tilde = -prod_{k!=i}(x-x_k) + prod_{k!=n+1}(x-x_k).
 */
inline ComplexTensor residue_tensor(const SpectralCurveData& curve) {
  const std::size_t n = curve.roots.size() - 1;
  const ComplexVector coeffs = poly_from_roots(curve.roots);
  const ComplexVector d2 = derivative(derivative(coeffs));
  ComplexTensor t(n);
  for (const auto& xc : curve.crit) {
    auto prod_except = [&](std::size_t skip) {
      Complex p(1.0, 0.0);
      for (std::size_t k = 0; k <= n; ++k)
        if (k != skip) p *= xc - curve.roots[k];
      return p;
    };
    const Complex last = prod_except(n);
    std::vector<Complex> e(n);
    for (std::size_t i = 0; i < n; ++i) e[i] = -prod_except(i) + last;
    const Complex s = horner_eval(coeffs, xc);
    const Complex denom = s * s * horner_eval(d2, xc);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) t(i, j, k) += e[i] * e[j] * e[k] / denom;
  }
  return t;
}

/// Euler field sum_{k<=n+1} x_k d/dx_k restricted to sum x = 0, in the e_i basis.
inline ComplexVector residue_euler_direction(const SpectralCurveData& curve) {
  return ComplexVector(curve.roots.begin(), curve.roots.end() - 1);
}

// -- duality bridge -----------------------------------------------------------

/// Root-difference coordinates z_i = x_i - x_{n+1}.
inline ComplexVector root_difference_coordinates(const ComplexVector& roots) {
  ComplexVector z;
  for (std::size_t i = 0; i + 1 < roots.size(); ++i) z.push_back(roots[i] - roots.back());
  return z;
}

struct ProportionalityFit {
  Complex constant{0.0, 0.0};
  double residual = 0.0;  // max |G - c F| / max |G|
};

/// Least-squares c with G ~ c F.
inline ProportionalityFit fit_proportional(const ComplexMatrix& G, const ComplexMatrix& F) {
  Complex num(0.0, 0.0);
  double den = 0.0;
  for (std::size_t i = 0; i < G.rows(); ++i)
    for (std::size_t j = 0; j < G.cols(); ++j) {
      num += std::conj(F(i, j)) * G(i, j);
      den += std::norm(F(i, j));
    }
  ProportionalityFit fit;
  if (den == 0.0) {
    fit.residual = INFINITY;
    return fit;
  }
  fit.constant = num / den;
  const double g = max_abs(G);
  fit.residual = g > 0.0 ? max_abs(G - F * fit.constant) / g : INFINITY;
  return fit;
}

/// Covariant Saito intersection form at b, pulled back along
/// z -> x(z) -> b(x) -> t(b). `dx_dz` is the (n+1) x n Jacobian of the roots.
inline ComplexMatrix saito_intersection_in_roots(const saito::FrobeniusData& d, const SpectralCurveData& curve,
                                                 const Matrix<Complex>& dx_dz) {
  const int n = d.rank();
  const std::vector<Complex> t = saito::evaluate_all(d.coords.t_of_b, curve.b);
  const ComplexMatrix g_contra = saito::intersection_form(d, t);
  const ComplexMatrix g_cov = guarded_inverse(g_contra);

  Matrix<Complex> dt_db(n, n);
  for (int k = 0; k < n; ++k)
    for (int m = 0; m < n; ++m) dt_db(k, m) = d.coords.t_of_b[k].diff(m).evaluate<Complex>(curve.b);

  // d b_k / d x_i = coefficient of x^{k-1} in -prod_{m != i}(x - x_m).
  Matrix<Complex> db_dx(n, n + 1);
  for (int i = 0; i <= n; ++i) {
    ComplexVector others;
    for (int m = 0; m <= n; ++m)
      if (m != i) others.push_back(curve.roots[m]);
    const ComplexVector c = poly_from_roots(others);
    for (int k = 0; k < n; ++k) db_dx(k, i) = -c[k];
  }
  const Matrix<Complex> jac = dt_db * db_dx * dx_dz;
  return jac.transpose() * g_cov * jac;
}

inline CheckReport f_e_check(const TodaModel& model, const std::vector<Complex>& z, double tolerance) {
  CheckReport r = make_report("fe_constancy", tolerance);
  r.samples.push_back(z);
  try {
    r.judge(f_e_deviation(model, z));
  } catch (const DomainError& e) {
    r.status = Status::error;
    r.note("error", e.what());
  }
  return r;
}

inline CheckReport fd_oracle_check(const TodaModel& model, const std::vector<Complex>& z, double tolerance,
                                   double step = 1e-5) {
  CheckReport r = make_report("fd_oracle", tolerance);
  r.samples.push_back(z);
  r.note("fd_step", format_double(step));
  try {
    r.judge(fd_relative_error(third_derivatives(model, z), finite_difference_third_derivatives(model, z, step)));
  } catch (const DomainError& e) {
    r.status = Status::error;
    r.note("error", e.what());
  }
  return r;
}

/// F_ijk(lambda z) = F_ijk(z) / lambda.
inline CheckReport homogeneity_check(const TodaModel& model, const std::vector<Complex>& z, double lambda,
                                     double tolerance) {
  CheckReport r = make_report("homogeneity", tolerance);
  r.samples.push_back(z);
  r.note("lambda", format_double(lambda));
  try {
    std::vector<Complex> zs;
    for (const auto& zk : z) zs.push_back(lambda * zk);
    const auto a = third_derivatives(model, z);
    const auto b = third_derivatives(model, zs);
    double worst = 0.0;
    const std::size_t n = z.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, std::abs(b(i, j, k) * lambda - a(i, j, k)));
    r.judge(worst);
  } catch (const DomainError& e) {
    r.status = Status::error;
    r.note("error", e.what());
  }
  return r;
}

struct ResidueReports {
  CheckReport symmetry;
  CheckReport gen_wdvv;
};

/// Residue tensor at the curve with coefficients b: symmetry and generalized WDVV.
inline ResidueReports residue_checks(const ComplexVector& b, double tol_symmetry, double tol_wdvv) {
  ResidueReports out{make_report("residue_symmetry", tol_symmetry), make_report("residue_gen_wdvv", tol_wdvv)};
  for (auto* r : {&out.symmetry, &out.gen_wdvv}) r->samples.push_back(b);
  try {
    const SpectralCurveData curve = spectral_curve(b);
    const ComplexTensor t = residue_tensor(curve);
    out.symmetry.judge(t.max_asymmetry());
    out.gen_wdvv.judge(gen_wdvv_residual(t, residue_euler_direction(curve)));
  } catch (const DegenerateError& e) {
    for (auto* r : {&out.symmetry, &out.gen_wdvv}) {
      r->status = Status::degenerate;
      r->note("error", e.what());
    }
  } catch (const DomainError& e) {
    for (auto* r : {&out.symmetry, &out.gen_wdvv}) {
      r->status = Status::error;
      r->note("error", e.what());
    }
  }
  return out;
}

/// Almost-duality comparison at one base point: Saito intersection form in
/// root-difference coordinates vs the Toda [F_E]. Exploratory: the report is
/// judged against the tolerance but marked soft.
inline CheckReport duality_check(const saito::FrobeniusData& d, const ComplexVector& b, double tolerance,
                                 const RootOptions& options = {}) {
  CheckReport r = make_report("duality", tolerance);
  r.hard = false;
  r.samples.push_back(b);
  const int n = d.rank();
  try {
    const SpectralCurveData curve = spectral_curve(b, options);
    const ComplexVector z = root_difference_coordinates(curve.roots);
    // x_i = z_i - s/(n+1) for i <= n, x_{n+1} = -s/(n+1), s = sum z.
    Matrix<Complex> dx_dz(n + 1, n, Complex(-1.0 / (n + 1), 0.0));
    for (int i = 0; i < n; ++i) dx_dz(i, i) += 1.0;
    const ComplexMatrix G = saito_intersection_in_roots(d, curve, dx_dz);
    const ComplexMatrix FE = f_e_matrix(TodaModel(n), z);
    const ProportionalityFit fit = fit_proportional(G, FE);
    r.judge(fit.residual);
    r.note("constant", to_json(fit.constant));
    r.note("toda_coordinates", to_json(z));
    r.note("coordinates", "z_i = x_i - x_{n+1}");

    // Literal identification z_i = x_i (i <= n), x_{n+1} = -sum z.
    Matrix<Complex> lit(n + 1, n, Complex(0.0, 0.0));
    for (int i = 0; i < n; ++i) {
      lit(i, i) = 1.0;
      lit(n, i) = -1.0;
    }
    const ComplexMatrix G_lit = saito_intersection_in_roots(d, curve, lit);
    const ProportionalityFit fit_lit = fit_proportional(G_lit, FE);
    r.note("literal_coordinates_residual", format_double(fit_lit.residual));
  } catch (const DegenerateError& e) {
    r.status = Status::degenerate;
    r.note("error", e.what());
  } catch (const DomainError& e) {
    r.status = Status::error;
    r.note("error", e.what());
  }
  return r;
}

/// Relative spread max_k |c_k - c_0| / |c_0| of fitted constants.
inline double constant_spread(const std::vector<Complex>& constants) {
  if (constants.empty()) return 0.0;
  const double ref = std::abs(constants.front());
  if (ref == 0.0) return INFINITY;
  double worst = 0.0;
  for (const auto& c : constants) worst = std::max(worst, std::abs(c - constants.front()) / ref);
  return worst;
}

}  // namespace frobenius::toda
