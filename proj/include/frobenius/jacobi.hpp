#pragma once

#include <string>
#include <vector>

#include "frobenius/catalog.hpp"
#include "frobenius/multipoly.hpp"

namespace frobenius {

/// Element of the Jacobi ring in the monomial basis 1, x, ..., x^{n-1};
/// coefficients are polynomials in the ring parameters.
struct RingElement {
  std::vector<MultiPoly> coeffs;

  friend bool operator==(const RingElement& a, const RingElement& b) { return a.coeffs == b.coeffs; }
};

/*
 * JacobiRing
 * ----------
 * C[params][x] / (dW/dx) for a univariate superpotential W(x; params) whose
 * x-derivative has constant leading coefficient. For A_n, W = S_tilde and the
 * leading coefficient of dW/dx is n+1, so reduction is exact polynomial
 * division with rational coefficients.
 *
 * The residue pairing uses the Euler-Jacobi rule: for p = dW/dx of degree n,
 *   sum_{p(c)=0} x^i / p'(c) = [i == n-1] / lc(p)   (0 <= i <= n-1),
 * so res(f) = coefficient of x^{n-1} in (f mod p), divided by lc(p).
 */
class JacobiRing {
 public:
  /// Ring of an A-type unfolding; throws UnsupportedFamily otherwise.
  explicit JacobiRing(const catalog::UnfoldingSpec& spec) {
    if (spec.type != catalog::LieType::A || !spec.S_tilde)
      throw UnsupportedFamily("Jacobi ring pipeline is implemented for A_n only (requested " + spec.name() + ")");
    init(*spec.S_tilde);
  }

  /// Ring of an arbitrary superpotential W over (x, params...); variable 0 is x.
  static JacobiRing from_superpotential(const MultiPoly& W) {
    JacobiRing r;
    r.init(W);
    return r;
  }

  int dimension() const { return n_; }
  const std::vector<std::string>& parameters() const { return params_; }
  const MultiPoly& superpotential() const { return W_; }
  const Rational& leading_coefficient() const { return lead_; }
  /// Ascending coefficients of dW/dx (polynomials in the parameters).
  const std::vector<MultiPoly>& modulus() const { return modulus_; }

  MultiPoly zero_coefficient() const { return MultiPoly(params_); }

  RingElement zero() const { return RingElement{std::vector<MultiPoly>(n_, zero_coefficient())}; }

  RingElement one() const { return basis(0); }

  RingElement basis(int k) const {
    RingElement e = zero();
    e.coeffs[k] = MultiPoly::constant(params_, Rational(1));
    return e;
  }

  /// Class of x^k.
  RingElement x_power(int k) const {
    std::vector<MultiPoly> u(k + 1, zero_coefficient());
    u[k] = MultiPoly::constant(params_, Rational(1));
    return reduce_coefficients(std::move(u));
  }

  /// Reduces sum_k u[k] x^k modulo dW/dx.
  RingElement reduce_coefficients(std::vector<MultiPoly> u) const {
    for (const auto& c : u) c.require_same_variables(modulus_.front());
    const Rational inv_lead = Rational(1) / lead_;
    for (int m = static_cast<int>(u.size()) - 1; m >= n_; --m) {
      if (u[m].is_zero()) continue;
      // x^m = x^{m-n} * x^n and x^n = -(1/lc) * sum_{j<n} modulus[j] x^j.
      const MultiPoly c = u[m] * inv_lead;
      for (int j = 0; j < n_; ++j)
        if (!modulus_[j].is_zero()) u[m - n_ + j] -= c * modulus_[j];
      u[m] = zero_coefficient();
    }
    u.resize(n_, zero_coefficient());
    return RingElement{std::move(u)};
  }

  /// Reduces a polynomial over (x, params) (same variable list as W).
  RingElement reduce(const MultiPoly& f) const {
    f.require_same_variables(W_);
    auto c = f.coefficients_in(0);
    for (auto& ci : c) ci = ci.with_variables(params_);
    if (c.empty()) return zero();
    return reduce_coefficients(std::move(c));
  }

  /// The representative sum_k coeffs[k] x^k as a polynomial over (x, params).
  MultiPoly to_polynomial(const RingElement& u) const {
    require_element(u);
    MultiPoly r(W_.variables());
    const MultiPoly x = MultiPoly::variable(W_.variables(), W_.variables()[0]);
    MultiPoly xk = MultiPoly::constant(W_.variables(), Rational(1));
    for (int k = 0; k < n_; ++k) {
      r += u.coeffs[k].with_variables(W_.variables()) * xk;
      xk *= x;
    }
    return r;
  }

  RingElement add(const RingElement& u, const RingElement& v) const {
    require_element(u);
    require_element(v);
    RingElement r = u;
    for (int k = 0; k < n_; ++k) r.coeffs[k] += v.coeffs[k];
    return r;
  }

  RingElement scale(const RingElement& u, const MultiPoly& s) const {
    require_element(u);
    RingElement r = u;
    for (auto& c : r.coeffs) c = c * s;
    return r;
  }

  RingElement multiply(const RingElement& u, const RingElement& v) const {
    require_element(u);
    require_element(v);
    std::vector<MultiPoly> prod(2 * n_ - 1, zero_coefficient());
    for (int i = 0; i < n_; ++i) {
      if (u.coeffs[i].is_zero()) continue;
      for (int j = 0; j < n_; ++j)
        if (!v.coeffs[j].is_zero()) prod[i + j] += u.coeffs[i] * v.coeffs[j];
    }
    return reduce_coefficients(std::move(prod));
  }

  /// kappa(sum_k X_k d/dp_k) = sum_k X_k dW/dp_k, reduced.
  RingElement kodaira_spencer(const std::vector<MultiPoly>& X) const {
    if (X.size() != params_.size()) throw std::invalid_argument("vector field has wrong number of components");
    RingElement r = zero();
    for (std::size_t k = 0; k < X.size(); ++k) {
      if (X[k].is_zero()) continue;
      r = add(r, scale(param_derivative_[k], X[k]));
    }
    return r;
  }

  /// Class of dW/dp_k (the image of the coordinate field d/dp_k).
  const RingElement& coordinate_field(std::size_t k) const { return param_derivative_.at(k); }

  /// Euler-Jacobi residue of an element: coefficient of x^{n-1} over lc.
  MultiPoly residue(const RingElement& u) const {
    require_element(u);
    return u.coeffs[n_ - 1] * (Rational(1) / lead_);
  }

  MultiPoly residue_pairing(const RingElement& f, const RingElement& g) const { return residue(multiply(f, g)); }

  MultiPoly residue_pairing(const MultiPoly& f, const MultiPoly& g) const {
    return residue_pairing(reduce(f), reduce(g));
  }

  MultiPoly residue_triple(const RingElement& f, const RingElement& g, const RingElement& h) const {
    return residue(multiply(multiply(f, g), h));
  }

  MultiPoly residue_triple(const MultiPoly& f, const MultiPoly& g, const MultiPoly& h) const {
    return residue_triple(reduce(f), reduce(g), reduce(h));
  }

  /// Gram matrix of the pairing on the monomial basis.
  std::vector<std::vector<MultiPoly>> gram_matrix() const {
    std::vector<std::vector<MultiPoly>> g(n_, std::vector<MultiPoly>(n_, zero_coefficient()));
    std::vector<RingElement> xs;
    for (int k = 0; k < n_; ++k) xs.push_back(basis(k));
    for (int i = 0; i < n_; ++i)
      for (int j = i; j < n_; ++j) {
        g[i][j] = residue_pairing(xs[i], xs[j]);
        g[j][i] = g[i][j];
      }
    return g;
  }

 private:
  JacobiRing() = default;

  void init(const MultiPoly& W) {
    if (W.num_variables() < 1) throw std::invalid_argument("superpotential needs the variable x");
    W_ = W;
    params_.assign(W.variables().begin() + 1, W.variables().end());
    auto mod = W.diff(0).coefficients_in(0);
    if (mod.empty()) throw std::invalid_argument("superpotential has constant x-derivative zero");
    n_ = static_cast<int>(mod.size()) - 1;
    if (n_ < 1) throw std::invalid_argument("superpotential must have degree >= 2 in x");
    if (!mod.back().is_constant()) throw std::invalid_argument("leading coefficient of dW/dx must be constant");
    lead_ = mod.back().constant_term();
    modulus_.clear();
    for (auto& c : mod) modulus_.push_back(c.with_variables(params_));
    param_derivative_.clear();
    for (std::size_t k = 0; k < params_.size(); ++k) param_derivative_.push_back(reduce(W.diff(k + 1)));
  }

  void require_element(const RingElement& u) const {
    if (static_cast<int>(u.coeffs.size()) != n_) throw std::invalid_argument("ring element has wrong dimension");
  }

  MultiPoly W_;
  std::vector<std::string> params_;
  std::vector<MultiPoly> modulus_;
  std::vector<RingElement> param_derivative_;
  Rational lead_;
  int n_ = 0;
};

inline RingElement kodaira_spencer(const JacobiRing& ring, const std::vector<MultiPoly>& X) {
  return ring.kodaira_spencer(X);
}

inline RingElement ring_multiply(const JacobiRing& ring, const RingElement& u, const RingElement& v) {
  return ring.multiply(u, v);
}

inline MultiPoly residue_pairing(const JacobiRing& ring, const RingElement& f, const RingElement& g) {
  return ring.residue_pairing(f, g);
}

inline MultiPoly residue_triple(const JacobiRing& ring, const RingElement& f, const RingElement& g,
                                const RingElement& h) {
  return ring.residue_triple(f, g, h);
}

}  // namespace frobenius
