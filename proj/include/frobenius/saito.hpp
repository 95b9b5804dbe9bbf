#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "frobenius/catalog.hpp"
#include "frobenius/jacobi.hpp"
#include "frobenius/linalg.hpp"
#include "frobenius/multipoly.hpp"

namespace frobenius::saito {

using PolyMatrix = std::vector<std::vector<MultiPoly>>;

struct FlatCoordinates {
  std::vector<std::string> b_vars;
  std::vector<std::string> t_vars;
  std::vector<MultiPoly> t_of_b;  // t_k(b), over b_vars
  std::vector<MultiPoly> b_of_t;  // b_k(t), over t_vars
};

struct EulerField {
  std::vector<Rational> weights;  // E = sum_k weights[k] t_k d/dt_k
  Rational scalar;                // E(F) = scalar * F
};

/// Frobenius structure of an A_n unfolding in flat coordinates t.
struct FrobeniusData {
  catalog::UnfoldingSpec spec;
  FlatCoordinates coords;
  RationalMatrix eta;
  RationalMatrix eta_inv;
  Tensor3<MultiPoly> c;  // c_ijk(t)
  MultiPoly F;
  EulerField euler;
  Rational metric_degree;  // d with Lie_E <.,.> = d <.,.>
  PolyMatrix intersection;  // contravariant intersection form g^{ij}(t)
  std::vector<std::string> notes;

  int rank() const { return spec.rank; }
};

struct PipelineOptions {
  int max_rank = 10;
};

namespace detail {

inline PolyMatrix multiply(const PolyMatrix& a, const PolyMatrix& b, const std::vector<std::string>& vars) {
  const std::size_t n = a.size();
  PolyMatrix r(n, std::vector<MultiPoly>(n, MultiPoly(vars)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (!b[k][j].is_zero()) r[i][j] += a[i][k] * b[k][j];
    }
  return r;
}

/// Inverse of a polynomial matrix G = G(0) + N for which G(0)^{-1} N is
/// nilpotent (true for the graded residue metric); sum of the Neumann series.
inline PolyMatrix inverse_nilpotent_perturbation(const PolyMatrix& g, const std::vector<std::string>& vars) {
  const std::size_t n = g.size();
  RationalMatrix a0(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a0(i, j) = g[i][j].constant_term();
  const auto a0_inv = inverse(a0);
  if (!a0_inv) throw PipelineError("residue metric is degenerate at the origin");
  PolyMatrix a0i(n, std::vector<MultiPoly>(n, MultiPoly(vars)));
  PolyMatrix k(n, std::vector<MultiPoly>(n, MultiPoly(vars)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a0i[i][j] = MultiPoly::constant(vars, (*a0_inv)(i, j));
  PolyMatrix nmat = g;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) nmat[i][j] -= MultiPoly::constant(vars, a0(i, j));
  k = multiply(a0i, nmat, vars);
  for (auto& row : k)
    for (auto& e : row) e = -e;
  // (I + K')^{-1} with K' = -k  -> sum_m k^m
  PolyMatrix sum(n, std::vector<MultiPoly>(n, MultiPoly(vars)));
  PolyMatrix power(n, std::vector<MultiPoly>(n, MultiPoly(vars)));
  for (std::size_t i = 0; i < n; ++i) power[i][i] = MultiPoly::constant(vars, Rational(1));
  for (std::size_t m = 0; m <= n; ++m) {
    bool zero = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        sum[i][j] += power[i][j];
        zero = zero && power[i][j].is_zero();
      }
    if (zero) break;
    power = multiply(power, k, vars);
    if (m == n) {
      for (const auto& row : power)
        for (const auto& e : row)
          if (!e.is_zero()) throw PipelineError("metric perturbation is not nilpotent");
    }
  }
  return multiply(sum, a0i, vars);
}

/// Exponent vectors over `weights` (only indices >= first) of weighted degree `target`.
inline void enumerate_graded(const std::vector<Rational>& weights, std::size_t index, const Rational& target,
                             std::vector<int>& current, std::vector<std::vector<int>>& out) {
  if (target == 0) {
    out.push_back(current);
    return;
  }
  if (index >= weights.size()) return;
  Rational remaining = target;
  int e = 0;
  while (remaining >= 0) {
    current[index] = e;
    enumerate_graded(weights, index + 1, remaining, current, out);
    remaining -= weights[index];
    ++e;
  }
  current[index] = 0;
}

/// Solves an exact linear system given as rows (coefficients..., rhs).
/// Returns nullopt if inconsistent or not uniquely solvable.
inline std::optional<std::vector<Rational>> solve_unique(std::vector<std::vector<Rational>> rows, std::size_t unknowns) {
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t col = 0; col < unknowns && rank < rows.size(); ++col) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][col] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    const Rational pv = rows[rank][col];
    for (auto& v : rows[rank]) v /= pv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const Rational f = rows[r][col];
      for (std::size_t c = 0; c <= unknowns; ++c) rows[r][c] -= f * rows[rank][c];
    }
    pivots.push_back(col);
    ++rank;
  }
  for (std::size_t r = rank; r < rows.size(); ++r)
    if (rows[r][unknowns] != 0) return std::nullopt;
  if (rank != unknowns) return std::nullopt;
  std::vector<Rational> x(unknowns);
  for (std::size_t r = 0; r < rank; ++r) x[pivots[r]] = rows[r][unknowns];
  return x;
}

}  // namespace detail

inline void require_a_type(const catalog::UnfoldingSpec& spec, const PipelineOptions& options = {}) {
  if (spec.type != catalog::LieType::A || !spec.S_tilde)
    throw UnsupportedFamily("unsupported family " + spec.name() + ": the Frobenius pipeline covers A_n only");
  if (spec.rank > options.max_rank)
    throw UnsupportedFamily("rank " + std::to_string(spec.rank) + " exceeds the configured maximum " +
                            std::to_string(options.max_rank));
}

/// Residue metric g_ij(b) = <x^i, x^j> in the coordinate fields d/db.
inline PolyMatrix residue_metric(const JacobiRing& ring) { return ring.gram_matrix(); }

/*
 * Flat coordinates t_k = b_k + P_k(b_{k+1}, ..., b_n).
 *
 * P_k is a graded ansatz: all monomials in b_{k+1..n} of weighted degree
 * weight(b_k) with unknown coefficients. A function t is a flat coordinate of
 * the residue metric g iff its covariant Hessian vanishes,
 *   d_i d_j t - Gamma^l_ij d_l t = 0,
 * which is linear in the unknowns. Each P_k is solved by exact elimination
 * for k = n..1; the solution must be unique. The pipeline afterwards checks
 * that the metric is exactly constant in t.
 */
inline FlatCoordinates flat_coordinates(const catalog::UnfoldingSpec& spec, const PipelineOptions& options = {}) {
  require_a_type(spec, options);
  const int n = spec.rank;
  const JacobiRing ring(spec);
  FlatCoordinates fc;
  fc.b_vars = spec.parameter_names();
  fc.t_vars = indexed_names("t", n);
  const auto& bv = fc.b_vars;

  const PolyMatrix g = residue_metric(ring);
  const PolyMatrix ginv = detail::inverse_nilpotent_perturbation(g, bv);

  // Christoffel symbols Gamma^k_ij.
  std::vector<PolyMatrix> dg(n);  // dg[l][i][j] = d g_ij / d b_l
  for (int l = 0; l < n; ++l) {
    dg[l] = g;
    for (auto& row : dg[l])
      for (auto& e : row) e = e.diff(l);
  }
  std::vector<PolyMatrix> gamma(n, PolyMatrix(n, std::vector<MultiPoly>(n, MultiPoly(bv))));
  const Rational half(Integer(1), Integer(2));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      std::vector<MultiPoly> first_kind;
      for (int l = 0; l < n; ++l) first_kind.push_back((dg[i][l][j] + dg[j][l][i] - dg[l][i][j]) * half);
      for (int k = 0; k < n; ++k) {
        MultiPoly s(bv);
        for (int l = 0; l < n; ++l)
          if (!ginv[k][l].is_zero() && !first_kind[l].is_zero()) s += ginv[k][l] * first_kind[l];
        gamma[k][i][j] = s;
        gamma[k][j][i] = s;
      }
    }

  fc.t_of_b.assign(n, MultiPoly(bv));
  for (int k = n - 1; k >= 0; --k) {
    std::vector<std::vector<int>> monomials;
    std::vector<Rational> tail(spec.parameter_weights.begin() + k + 1, spec.parameter_weights.end());
    std::vector<int> tail_current(tail.size(), 0);
    std::vector<std::vector<int>> tail_monos;
    detail::enumerate_graded(tail, 0, spec.parameter_weights[k], tail_current, tail_monos);
    for (const auto& tm : tail_monos) {
      std::vector<int> e(n, 0);
      std::copy(tm.begin(), tm.end(), e.begin() + k + 1);
      monomials.push_back(e);
    }
    const std::size_t m = monomials.size();
    std::vector<std::string> ext = bv;
    for (std::size_t a = 0; a < m; ++a) ext.push_back("alpha" + std::to_string(a + 1));
    MultiPoly t = MultiPoly::variable(ext, bv[k]);
    for (std::size_t a = 0; a < m; ++a) {
      MultiPoly::Exponents e(ext.size(), 0);
      std::copy(monomials[a].begin(), monomials[a].end(), e.begin());
      e[n + a] = 1;
      t.add_term(e, Rational(1));
    }
    std::vector<MultiPoly> dt;
    for (int l = 0; l < n; ++l) dt.push_back(t.diff(l));
    std::map<std::vector<int>, std::vector<Rational>> rows;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        MultiPoly eq = dt[i].diff(j);
        for (int l = 0; l < n; ++l)
          if (!gamma[l][i][j].is_zero() && !dt[l].is_zero()) eq -= gamma[l][i][j].with_variables(ext) * dt[l];
        for (const auto& [e, c] : eq.terms()) {
          std::vector<int> be = {i, j};
          be.insert(be.end(), e.begin(), e.begin() + n);
          auto& row = rows.try_emplace(be, std::vector<Rational>(m + 1, Rational(0))).first->second;
          std::size_t unknown = m;  // m = constant column
          for (std::size_t a = 0; a < m; ++a)
            if (e[n + a] == 1) unknown = a;
          if (unknown == m) {
            row[m] -= c;  // move constant to the right-hand side
          } else {
            row[unknown] += c;
          }
        }
      }
    std::vector<std::vector<Rational>> system;
    for (auto& [key, row] : rows) system.push_back(row);
    std::vector<Rational> alpha;
    if (m > 0) {
      auto sol = detail::solve_unique(system, m);
      if (!sol) throw PipelineError("flat coordinate ansatz for t" + std::to_string(k + 1) + " has no unique solution");
      alpha = *sol;
    } else {
      for (const auto& row : system)
        if (row[0] != 0) throw PipelineError("b" + std::to_string(k + 1) + " is not a flat coordinate");
    }
    MultiPoly tk = MultiPoly::variable(bv, bv[k]);
    for (std::size_t a = 0; a < m; ++a) tk.add_term(monomials[a], alpha[a]);
    fc.t_of_b[k] = tk;
  }

  // Back-substitution: b_k = t_k - P_k(b_{k+1}(t), ..., b_n(t)).
  const auto& tv = fc.t_vars;
  fc.b_of_t.assign(n, MultiPoly(tv));
  for (int k = n - 1; k >= 0; --k) {
    const MultiPoly pk = fc.t_of_b[k] - MultiPoly::variable(bv, bv[k]);
    std::vector<MultiPoly> images;
    for (int j = 0; j < n; ++j) images.push_back(j > k ? fc.b_of_t[j] : MultiPoly(tv));
    fc.b_of_t[k] = MultiPoly::variable(tv, tv[k]) - pk.compose(images);
  }
  for (int k = 0; k < n; ++k)
    if (!(fc.t_of_b[k].compose(fc.b_of_t) == MultiPoly::variable(tv, tv[k])))
      throw PipelineError("flat coordinate inverse substitution failed");
  return fc;
}

/// S_tilde(x, b(t)) over (x, t1..tn).
inline MultiPoly superpotential_in_t(const catalog::UnfoldingSpec& spec, const FlatCoordinates& fc) {
  std::vector<std::string> vars = {"x"};
  vars.insert(vars.end(), fc.t_vars.begin(), fc.t_vars.end());
  std::vector<MultiPoly> images = {MultiPoly::variable(vars, "x")};
  for (const auto& b : fc.b_of_t) images.push_back(b.with_variables(vars));
  return spec.S_tilde->compose(images);
}

/// Residue pairing of the flat coordinate fields; must be constant.
inline RationalMatrix flat_metric(const catalog::UnfoldingSpec& spec, const FlatCoordinates& fc) {
  const auto ring = JacobiRing::from_superpotential(superpotential_in_t(spec, fc));
  const int n = spec.rank;
  RationalMatrix eta(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const MultiPoly p = ring.residue_pairing(ring.coordinate_field(i), ring.coordinate_field(j));
      if (!p.is_constant()) throw PipelineError("metric is not constant in the flat coordinates");
      eta(i, j) = p.constant_term();
      eta(j, i) = eta(i, j);
    }
  return eta;
}

/// c_ijk(t) = res(kappa(d_ti) kappa(d_tj) kappa(d_tk)).
inline Tensor3<MultiPoly> c_tensor(const catalog::UnfoldingSpec& spec, const FlatCoordinates& fc) {
  const auto ring = JacobiRing::from_superpotential(superpotential_in_t(spec, fc));
  const int n = spec.rank;
  Tensor3<MultiPoly> c(n, MultiPoly(fc.t_vars));
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const RingElement ij = ring.multiply(ring.coordinate_field(i), ring.coordinate_field(j));
      for (int k = j; k < n; ++k) c.set_symmetric(i, j, k, ring.residue(ring.multiply(ij, ring.coordinate_field(k))));
    }
  }
  return c;
}

/// Polynomial F with d_i d_j d_k F = c_ijk and no terms of degree <= 2:
///   F(t) = int_0^1 (1-s)^2/2 sum_ijk t_i t_j t_k c_ijk(s t) ds.
inline MultiPoly prepotential(const Tensor3<MultiPoly>& c) {
  const std::size_t n = c.dim();
  if (n == 0) throw std::invalid_argument("empty c-tensor");
  const auto vars = c(0, 0, 0).variables();
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (!(c(i, j, k).diff(l) == c(l, j, k).diff(i)))
            throw PipelineError("c-tensor fails the integrability test");
  MultiPoly F(vars);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const MultiPoly& cijk = c(i, j, k);
        if (cijk.is_zero()) continue;
        MultiPoly scaled(vars);
        for (const auto& [e, coeff] : cijk.terms()) {
          const int m = std::accumulate(e.begin(), e.end(), 0);
          scaled.add_term(e, coeff / Rational((m + 1) * (m + 2) * (m + 3)));
        }
        MultiPoly::Exponents eijk(n, 0);
        ++eijk[i];
        ++eijk[j];
        ++eijk[k];
        F += scaled * MultiPoly::monomial(vars, eijk, Rational(1));
      }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (!(F.diff(i).diff(j).diff(k) == c(i, j, k))) throw PipelineError("prepotential does not reproduce c");
  return F;
}

/// E = sum_k d_{n+1-k} t_k d/dt_k and the scalar with E(F) = scalar * F.
inline EulerField euler_field(const catalog::UnfoldingSpec& spec, const MultiPoly& F) {
  const int n = spec.rank;
  EulerField e;
  for (int k = 0; k < n; ++k) e.weights.emplace_back(spec.lie.degrees[n - 1 - k]);
  MultiPoly ef(F.variables());
  for (int k = 0; k < n; ++k) {
    const MultiPoly tk = MultiPoly::variable(F.variables(), F.variables()[k]);
    ef += tk * F.diff(k) * e.weights[k];
  }
  if (F.is_zero()) throw PipelineError("prepotential is zero");
  const auto& [exps, coeff] = *F.terms().begin();
  e.scalar = ef.coefficient(exps) / coeff;
  if (!(ef == F * e.scalar)) throw PipelineError("prepotential is not quasihomogeneous under E");
  return e;
}

/// d with (Lie_E eta)_ij = (w_i + w_j) eta_ij = d eta_ij.
inline Rational metric_degree(const RationalMatrix& eta, const EulerField& e) {
  std::optional<Rational> d;
  for (std::size_t i = 0; i < eta.rows(); ++i)
    for (std::size_t j = 0; j < eta.cols(); ++j) {
      if (eta(i, j) == 0) continue;
      const Rational dij = e.weights[i] + e.weights[j];
      if (d && *d != dij) throw PipelineError("Lie_E of the metric is not proportional to the metric");
      d = dij;
    }
  return d.value_or(Rational(0));
}

/// Contravariant intersection form g^{ij} = sum_l E^l eta^{ia} eta^{jb} c_abl.
inline PolyMatrix intersection_form_polynomial(const Tensor3<MultiPoly>& c, const RationalMatrix& eta_inv,
                                               const EulerField& e) {
  const std::size_t n = c.dim();
  const auto vars = c(0, 0, 0).variables();
  PolyMatrix g(n, std::vector<MultiPoly>(n, MultiPoly(vars)));
  for (std::size_t l = 0; l < n; ++l) {
    const MultiPoly el = MultiPoly::variable(vars, vars[l]) * e.weights[l];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        MultiPoly s(vars);
        for (std::size_t a = 0; a < n; ++a) {
          if (eta_inv(i, a) == 0) continue;
          for (std::size_t b = 0; b < n; ++b) {
            if (eta_inv(j, b) == 0 || c(a, b, l).is_zero()) continue;
            s += c(a, b, l) * (eta_inv(i, a) * eta_inv(j, b));
          }
        }
        g[i][j] += el * s;
      }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) g[i][j] = g[j][i];
  return g;
}

/// Full pipeline for an A_n unfolding.
inline FrobeniusData build_frobenius(const catalog::UnfoldingSpec& spec, const PipelineOptions& options = {}) {
  require_a_type(spec, options);
  FrobeniusData d;
  d.spec = spec;
  d.coords = flat_coordinates(spec, options);
  d.eta = flat_metric(spec, d.coords);
  const auto inv = inverse(d.eta);
  if (!inv) throw PipelineError("flat metric is degenerate");
  d.eta_inv = *inv;
  d.c = c_tensor(spec, d.coords);
  const int n = spec.rank;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!(d.c(0, i, j) == MultiPoly::constant(d.coords.t_vars, d.eta(i, j))))
        throw PipelineError("c(e, ., .) differs from the flat metric");
  d.F = prepotential(d.c);
  d.euler = euler_field(spec, d.F);
  d.metric_degree = metric_degree(d.eta, d.euler);
  d.intersection = intersection_form_polynomial(d.c, d.eta_inv, d.euler);
  d.notes.push_back(
      "metric normalisation: univariate residue pairing res(fg dx / dS_tilde/dx); the constant factor of the "
      "three-variable residue from x2^2 + x3^2 is dropped");
  d.notes.push_back("integration constants of F (degree <= 2) set to zero");
  return d;
}

// -- numeric and exact evaluation -------------------------------------------

template <class T>
Tensor3<T> evaluate_c(const FrobeniusData& d, const std::vector<T>& t) {
  const std::size_t n = d.c.dim();
  Tensor3<T> out(n, T(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t k = j; k < n; ++k) out.set_symmetric(i, j, k, d.c(i, j, k).template evaluate<T>(t));
  return out;
}

template <class T>
Matrix<T> evaluate_matrix(const PolyMatrix& m, const std::vector<T>& point) {
  Matrix<T> r(m.size(), m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) r(i, j) = m[i][j].template evaluate<T>(point);
  return r;
}

/// Hessian of F at t.
template <class T>
Matrix<T> evaluate_hessian(const FrobeniusData& d, const std::vector<T>& t) {
  const std::size_t n = d.c.dim();
  Matrix<T> h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      h(i, j) = d.F.diff(i).diff(j).template evaluate<T>(t);
      h(j, i) = h(i, j);
    }
  return h;
}

/// Pointwise intersection form: evaluate c at t, then dualise with eta and
/// contract with E(t).
inline ComplexMatrix intersection_form(const FrobeniusData& d, const std::vector<Complex>& t) {
  const std::size_t n = d.c.dim();
  if (t.size() != n) throw std::invalid_argument("point has wrong dimension");
  const auto c = evaluate_c<Complex>(d, t);
  const ComplexMatrix eta_inv = to_complex(d.eta_inv);
  ComplexMatrix g(n, n);
  for (std::size_t l = 0; l < n; ++l) {
    const Complex el = scalar_cast<Complex>(d.euler.weights[l]) * t[l];
    g += (eta_inv * c.slice(l) * eta_inv) * el;
  }
  return g;
}

template <class T>
std::vector<T> evaluate_all(const std::vector<MultiPoly>& polys, const std::vector<T>& point) {
  std::vector<T> out;
  for (const auto& p : polys) out.push_back(p.template evaluate<T>(point));
  return out;
}

/// max_{i,j} |[F_i][F_1]^{-1}[F_j] - [F_j][F_1]^{-1}[F_i]| at a rational point, exactly.
inline Rational wdvv_residual_exact(const FrobeniusData& d, const std::vector<Rational>& t) {
  const auto c = evaluate_c<Rational>(d, t);
  const auto f1inv = inverse(c.slice(0));
  if (!f1inv) throw PipelineError("[F_1] is singular");
  Rational worst = 0;
  const std::size_t n = c.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const RationalMatrix a = c.slice(i) * *f1inv * c.slice(j);
      const RationalMatrix b = c.slice(j) * *f1inv * c.slice(i);
      worst = std::max(worst, max_abs_exact(a - b));
    }
  return worst;
}

}  // namespace frobenius::saito
