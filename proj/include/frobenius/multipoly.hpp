#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "frobenius/rational.hpp"

namespace frobenius {

/*
 * MultiPoly
 * ---------
 * Sparse multivariate polynomial with exact rational coefficients over an
 * ordered list of named variables. Terms are keyed by exponent vectors and
 * kept in graded lexicographic order, so iteration (and therefore the text
 * form) is deterministic. Zero coefficients are never stored.
 *
 * Two polynomials can be combined only if their variable lists are equal;
 * use with_variables() or compose() to move between variable sets.
 *
 * Optional per-variable rational weights define a quasihomogeneous grading.
 */
class MultiPoly {
 public:
  using Exponents = std::vector<int>;

  /// Graded lexicographic order: total degree first, then lexicographic with
  /// the first variable most significant.
  struct GrLex {
    bool operator()(const Exponents& a, const Exponents& b) const {
      const int da = std::accumulate(a.begin(), a.end(), 0);
      const int db = std::accumulate(b.begin(), b.end(), 0);
      if (da != db) return da < db;
      return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
  };

  using TermMap = std::map<Exponents, Rational, GrLex>;

  MultiPoly() = default;
  explicit MultiPoly(std::vector<std::string> variables) : vars_(std::move(variables)) {}

  static MultiPoly constant(std::vector<std::string> variables, const Rational& c) {
    MultiPoly p(std::move(variables));
    p.add_term(Exponents(p.vars_.size(), 0), c);
    return p;
  }

  static MultiPoly variable(std::vector<std::string> variables, std::string_view name) {
    MultiPoly p(std::move(variables));
    Exponents e(p.vars_.size(), 0);
    e[p.index_of(name)] = 1;
    p.add_term(e, Rational(1));
    return p;
  }

  static MultiPoly monomial(std::vector<std::string> variables, Exponents exps, const Rational& c) {
    MultiPoly p(std::move(variables));
    p.add_term(exps, c);
    return p;
  }

  const std::vector<std::string>& variables() const { return vars_; }
  std::size_t num_variables() const { return vars_.size(); }
  const TermMap& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  bool has_variable(std::string_view name) const {
    return std::find(vars_.begin(), vars_.end(), name) != vars_.end();
  }

  std::size_t index_of(std::string_view name) const {
    const auto it = std::find(vars_.begin(), vars_.end(), name);
    if (it == vars_.end()) throw std::invalid_argument("unknown variable: " + std::string(name));
    return static_cast<std::size_t>(it - vars_.begin());
  }

  /// Adds c * x^exps, pruning the term if it cancels.
  void add_term(const Exponents& exps, const Rational& c) {
    if (exps.size() != vars_.size()) throw std::invalid_argument("exponent vector length mismatch");
    for (int e : exps)
      if (e < 0) throw std::invalid_argument("negative exponent");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(exps, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Rational coefficient(const Exponents& exps) const {
    const auto it = terms_.find(exps);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                                              [](int e) { return e == 0; }));
  }

  /// Constant term (the whole value when is_constant()).
  Rational constant_term() const { return coefficient(Exponents(vars_.size(), 0)); }

  int degree_in(std::size_t var) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
  }

  int total_degree() const {
    return terms_.empty() ? -1 : std::accumulate(terms_.rbegin()->first.begin(), terms_.rbegin()->first.end(), 0);
  }

  // -- grading -------------------------------------------------------------

  MultiPoly& set_weights(std::vector<Rational> weights) {
    if (weights.size() != vars_.size()) throw std::invalid_argument("weight vector length mismatch");
    for (const auto& w : weights)
      if (w <= 0) throw std::invalid_argument("weights must be positive");
    weights_ = std::move(weights);
    return *this;
  }

  const std::optional<std::vector<Rational>>& weights() const { return weights_; }

  Rational weighted_degree_of(const Exponents& exps) const {
    if (!weights_) throw std::logic_error("polynomial has no grading weights");
    Rational d = 0;
    for (std::size_t i = 0; i < exps.size(); ++i) d += (*weights_)[i] * exps[i];
    return d;
  }

  /// Common weighted degree of all terms, if there is one.
  std::optional<Rational> weighted_degree() const {
    if (!weights_) throw std::logic_error("polynomial has no grading weights");
    std::optional<Rational> deg;
    for (const auto& [e, c] : terms_) {
      const Rational d = weighted_degree_of(e);
      if (!deg) {
        deg = d;
      } else if (*deg != d) {
        return std::nullopt;
      }
    }
    return deg;
  }

  bool is_quasihomogeneous() const { return is_zero() || weighted_degree().has_value(); }

  // -- arithmetic ----------------------------------------------------------

  MultiPoly& operator+=(const MultiPoly& q) {
    require_same_variables(q);
    for (const auto& [e, c] : q.terms_) add_term(e, c);
    return *this;
  }

  MultiPoly& operator-=(const MultiPoly& q) {
    require_same_variables(q);
    for (const auto& [e, c] : q.terms_) add_term(e, -c);
    return *this;
  }

  MultiPoly& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  MultiPoly operator-() const {
    MultiPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }

  friend MultiPoly operator+(MultiPoly p, const MultiPoly& q) { return p += q; }
  friend MultiPoly operator-(MultiPoly p, const MultiPoly& q) { return p -= q; }
  friend MultiPoly operator*(MultiPoly p, const Rational& s) { return p *= s; }
  friend MultiPoly operator*(const Rational& s, MultiPoly p) { return p *= s; }

  friend MultiPoly operator*(const MultiPoly& p, const MultiPoly& q) {
    p.require_same_variables(q);
    MultiPoly r(p.vars_);
    r.weights_ = p.weights_ ? p.weights_ : q.weights_;
    Exponents e(p.vars_.size());
    for (const auto& [ep, cp] : p.terms_) {
      for (const auto& [eq, cq] : q.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ep[i] + eq[i];
        r.add_term(e, cp * cq);
      }
    }
    return r;
  }

  MultiPoly& operator*=(const MultiPoly& q) { return *this = *this * q; }

  /// Exact equality of variable lists and terms (weights are ignored).
  friend bool operator==(const MultiPoly& p, const MultiPoly& q) {
    return p.vars_ == q.vars_ && p.terms_ == q.terms_;
  }

  MultiPoly pow(int k) const {
    if (k < 0) throw std::invalid_argument("negative power");
    MultiPoly result = constant(vars_, Rational(1));
    MultiPoly base = *this;
    while (k > 0) {
      if (k & 1) result *= base;
      k >>= 1;
      if (k > 0) base *= base;
    }
    result.weights_ = weights_;
    return result;
  }

  // -- calculus and substitution -------------------------------------------

  MultiPoly diff(std::size_t var) const {
    if (var >= vars_.size()) throw std::invalid_argument("variable index out of range");
    MultiPoly r(vars_);
    r.weights_ = weights_;
    for (const auto& [e, c] : terms_) {
      if (e[var] == 0) continue;
      Exponents d = e;
      d[var] -= 1;
      r.add_term(d, c * e[var]);
    }
    return r;
  }

  MultiPoly diff(std::string_view name) const { return diff(index_of(name)); }

  /// Substitutes every variable by a polynomial over a common target variable
  /// list: result = sum c * prod images[v]^e_v.
  MultiPoly compose(const std::vector<MultiPoly>& images) const {
    if (images.size() != vars_.size()) throw std::invalid_argument("compose: one image per variable required");
    std::vector<std::string> target;
    if (!images.empty()) target = images.front().variables();
    for (const auto& im : images)
      if (im.variables() != target) throw std::invalid_argument("compose: images must share variables");
    std::vector<std::vector<MultiPoly>> powers(vars_.size());
    for (std::size_t v = 0; v < vars_.size(); ++v) {
      const int d = degree_in(v);
      powers[v].push_back(constant(target, Rational(1)));
      for (int k = 1; k <= d; ++k) powers[v].push_back(powers[v].back() * images[v]);
    }
    MultiPoly r(target);
    for (const auto& [e, c] : terms_) {
      MultiPoly term = constant(target, c);
      for (std::size_t v = 0; v < vars_.size(); ++v)
        if (e[v] > 0) term *= powers[v][e[v]];
      r += term;
    }
    return r;
  }

  /// Re-expresses the polynomial over another variable list containing every
  /// variable this polynomial actually uses.
  MultiPoly with_variables(const std::vector<std::string>& target) const {
    std::vector<int> map(vars_.size(), -1);
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      const auto it = std::find(target.begin(), target.end(), vars_[i]);
      if (it != target.end()) map[i] = static_cast<int>(it - target.begin());
    }
    MultiPoly r(target);
    for (const auto& [e, c] : terms_) {
      Exponents t(target.size(), 0);
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (map[i] < 0) throw std::invalid_argument("with_variables: variable dropped: " + vars_[i]);
        t[map[i]] += e[i];
      }
      r.add_term(t, c);
    }
    return r;
  }

  /// Coefficients of powers of one variable: p = sum_k out[k] * var^k, each
  /// out[k] over the same variable list with degree 0 in var.
  std::vector<MultiPoly> coefficients_in(std::size_t var) const {
    std::vector<MultiPoly> out(std::max(degree_in(var) + 1, 0), MultiPoly(vars_));
    for (const auto& [e, c] : terms_) {
      Exponents rest = e;
      rest[var] = 0;
      out[e[var]].add_term(rest, c);
    }
    return out;
  }

  /// Evaluates at a point given in variable order.
  template <class T>
  T evaluate(std::span<const T> point) const {
    if (point.size() != vars_.size()) throw std::invalid_argument("evaluation point has wrong dimension");
    std::vector<std::vector<T>> powers(vars_.size());
    for (std::size_t v = 0; v < vars_.size(); ++v) {
      const int d = degree_in(v);
      powers[v].push_back(T(1));
      for (int k = 1; k <= d; ++k) powers[v].push_back(powers[v].back() * point[v]);
    }
    T sum(0);
    for (const auto& [e, c] : terms_) {
      T term = scalar_cast<T>(c);
      for (std::size_t v = 0; v < e.size(); ++v)
        if (e[v] > 0) term *= powers[v][e[v]];
      sum += term;
    }
    return sum;
  }

  template <class T>
  T evaluate(const std::vector<T>& point) const {
    return evaluate(std::span<const T>(point));
  }

  /// Text form: terms in descending graded-lex order as "c * v1^a1*v2^a2",
  /// joined by " + "; "0" for the zero polynomial.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      std::string mono;
      for (std::size_t v = 0; v < vars_.size(); ++v) {
        const int e = it->first[v];
        if (e == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += vars_[v];
        if (e > 1) mono += "^" + std::to_string(e);
      }
      const Rational& c = it->second;
      const bool negative = c < 0;
      const Rational a = negative ? Rational(-c) : c;
      if (out.empty()) {
        if (negative) out += "-";
      } else {
        out += negative ? " - " : " + ";
      }
      if (mono.empty()) {
        out += frobenius::to_string(a);
      } else if (a == 1) {
        out += mono;
      } else {
        out += frobenius::to_string(a) + " * " + mono;
      }
    }
    return out;
  }

  void require_same_variables(const MultiPoly& q) const {
    if (vars_ != q.vars_) throw std::invalid_argument("variable-list mismatch");
  }

 private:
  std::vector<std::string> vars_;
  TermMap terms_;
  std::optional<std::vector<Rational>> weights_;
};

inline MultiPoly add(const MultiPoly& p, const MultiPoly& q) { return p + q; }
inline MultiPoly mul(const MultiPoly& p, const MultiPoly& q) { return p * q; }
inline MultiPoly diff(const MultiPoly& p, std::string_view var) { return p.diff(var); }

template <class T>
T eval(const MultiPoly& p, std::span<const T> point) {
  return p.evaluate(point);
}

/// Variable names prefix1..prefixN.
inline std::vector<std::string> indexed_names(std::string_view prefix, int count) {
  std::vector<std::string> names;
  for (int i = 1; i <= count; ++i) names.push_back(std::string(prefix) + std::to_string(i));
  return names;
}

}  // namespace frobenius
