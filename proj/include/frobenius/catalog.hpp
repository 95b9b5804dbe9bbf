#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "frobenius/multipoly.hpp"

namespace frobenius::catalog {

enum class LieType { A, D, E };

inline char to_char(LieType t) {
  switch (t) {
    case LieType::A:
      return 'A';
    case LieType::D:
      return 'D';
    case LieType::E:
      return 'E';
  }
  return '?';
}

inline LieType parse_lie_type(std::string_view s) {
  if (s == "A" || s == "a") return LieType::A;
  if (s == "D" || s == "d") return LieType::D;
  if (s == "E" || s == "e") return LieType::E;
  throw std::invalid_argument("unknown Lie type: " + std::string(s));
}

struct LieDegrees {
  std::vector<int> degrees;  // ascending
  int coxeter = 0;
};

/// Semi-universal unfolding of a simple singularity.
///
/// Variables of s and S are x1, x2, x3 followed (for S) by b1..bn. Weights are
/// normalised so that S has weighted degree equal to the Coxeter number; the
/// parameter weights are then the Lie-algebra degrees.
struct UnfoldingSpec {
  LieType type = LieType::A;
  int rank = 0;
  MultiPoly s;
  MultiPoly S;
  std::optional<MultiPoly> S_tilde;  // over (x, b1..bn), A-type only
  std::vector<Rational> variable_weights;
  std::vector<Rational> parameter_weights;
  LieDegrees lie;
  std::vector<std::string> notes;

  std::string name() const { return std::string(1, to_char(type)) + std::to_string(rank); }
  std::vector<std::string> parameter_names() const { return indexed_names("b", rank); }
};

/// Weight of x1, of S-tilde, and of each b_k for the A_n reduction.
struct AnWeights {
  Rational x;
  Rational total;
  std::vector<Rational> b;  // b[k-1] = weight(b_k)
};

inline AnWeights an_weights(int n) {
  if (n < 1) throw std::invalid_argument("A_n requires n >= 1");
  AnWeights w{Rational(1), Rational(n + 1), {}};
  for (int k = 1; k <= n; ++k) w.b.emplace_back(n + 2 - k);
  return w;
}

inline bool is_valid_pair(LieType t, int rank) {
  switch (t) {
    case LieType::A:
      return rank >= 1;
    case LieType::D:
      return rank >= 4;
    case LieType::E:
      return rank >= 6 && rank <= 8;
  }
  return false;
}

inline LieDegrees lie_degrees(LieType t, int rank) {
  if (!is_valid_pair(t, rank))
    throw UnsupportedFamily("unsupported family " + std::string(1, to_char(t)) + std::to_string(rank));
  LieDegrees d;
  switch (t) {
    case LieType::A:
      for (int k = 2; k <= rank + 1; ++k) d.degrees.push_back(k);
      d.coxeter = rank + 1;
      break;
    case LieType::D:
      for (int k = 1; k < rank; ++k) d.degrees.push_back(2 * k);
      d.degrees.push_back(rank);
      std::sort(d.degrees.begin(), d.degrees.end());
      d.coxeter = 2 * rank - 2;
      break;
    case LieType::E:
      if (rank == 6) d.degrees = {2, 5, 6, 8, 9, 12};
      if (rank == 7) d.degrees = {2, 6, 8, 10, 12, 14, 18};
      if (rank == 8) d.degrees = {2, 8, 12, 14, 18, 20, 24, 30};
      d.coxeter = d.degrees.back();
      break;
  }
  return d;
}

namespace detail {

struct Monomial {
  int coefficient;
  std::vector<int> x;  // exponents of x1, x2, x3
  int parameter;       // 0 for a term of s, k for the b_k term
};

inline UnfoldingSpec assemble(LieType t, int rank, const std::vector<Monomial>& monomials,
                              std::vector<Rational> x_weights) {
  UnfoldingSpec spec;
  spec.type = t;
  spec.rank = rank;
  spec.lie = lie_degrees(t, rank);
  spec.variable_weights = std::move(x_weights);
  std::vector<std::string> xs = {"x1", "x2", "x3"};
  std::vector<std::string> all = xs;
  for (const auto& b : indexed_names("b", rank)) all.push_back(b);
  spec.s = MultiPoly(xs);
  spec.S = MultiPoly(all);
  const Rational h(spec.lie.coxeter);
  spec.parameter_weights.assign(rank, Rational(0));
  for (const auto& m : monomials) {
    MultiPoly::Exponents e(all.size(), 0);
    std::copy(m.x.begin(), m.x.end(), e.begin());
    if (m.parameter == 0) {
      spec.s.add_term(m.x, Rational(m.coefficient));
    } else {
      e[2 + m.parameter] = 1;
      Rational wx = 0;
      for (int i = 0; i < 3; ++i) wx += spec.variable_weights[i] * m.x[i];
      spec.parameter_weights[m.parameter - 1] = h - wx;
    }
    spec.S.add_term(e, Rational(m.coefficient));
  }
  spec.s.set_weights(spec.variable_weights);
  auto all_weights = spec.variable_weights;
  all_weights.insert(all_weights.end(), spec.parameter_weights.begin(), spec.parameter_weights.end());
  spec.S.set_weights(all_weights);
  return spec;
}

inline UnfoldingSpec make_a(int n) {
  std::vector<Monomial> m = {{1, {n + 1, 0, 0}, 0}, {1, {0, 2, 0}, 0}, {1, {0, 0, 2}, 0}};
  for (int k = 1; k <= n; ++k) m.push_back({1, {k - 1, 0, 0}, k});
  const Rational half(Integer(n + 1), Integer(2));
  UnfoldingSpec spec = assemble(LieType::A, n, m, {Rational(1), half, half});
  std::vector<std::string> vars = {"x"};
  for (const auto& b : indexed_names("b", n)) vars.push_back(b);
  MultiPoly st(vars);
  MultiPoly::Exponents e(vars.size(), 0);
  e[0] = n + 1;
  st.add_term(e, Rational(1));
  for (int k = 1; k <= n; ++k) {
    MultiPoly::Exponents ek(vars.size(), 0);
    ek[0] = k - 1;
    ek[k] = 1;
    st.add_term(ek, Rational(1));
  }
  std::vector<Rational> w = {Rational(1)};
  w.insert(w.end(), spec.parameter_weights.begin(), spec.parameter_weights.end());
  st.set_weights(w);
  spec.S_tilde = std::move(st);
  return spec;
}

inline UnfoldingSpec make_d(int n) {
  // x2^{n-1} - x1^2 x2 + x3^2 + b_n x1 + sum_{k<n} b_k x2^{k-1}
  std::vector<Monomial> m = {{1, {0, n - 1, 0}, 0}, {-1, {2, 1, 0}, 0}, {1, {0, 0, 2}, 0}};
  m.push_back({1, {1, 0, 0}, n});
  for (int k = 1; k < n; ++k) m.push_back({1, {0, k - 1, 0}, k});
  return assemble(LieType::D, n, m, {Rational(n - 2), Rational(2), Rational(n - 1)});
}

inline UnfoldingSpec make_e(int n) {
  std::vector<Monomial> m;
  std::vector<Rational> w;
  std::vector<std::string> notes;
  if (n == 6) {
    m = {{1, {4, 0, 0}, 0}, {1, {0, 3, 0}, 0}, {1, {0, 0, 2}, 0}, {1, {2, 1, 0}, 6}, {1, {1, 1, 0}, 5},
         {1, {2, 0, 0}, 4}, {1, {0, 1, 0}, 3}, {1, {1, 0, 0}, 2}, {1, {0, 0, 0}, 1}};
    w = {Rational(3), Rational(4), Rational(6)};
  } else if (n == 7) {
    // The tabulated b7 monomial x1*x2^3 has weighted degree 22 > 18 and lies
    // in the Jacobian ideal; x1^2 is the missing basis monomial of degree 8.
    m = {{1, {3, 1, 0}, 0}, {1, {0, 3, 0}, 0}, {1, {0, 0, 2}, 0}, {1, {2, 0, 0}, 7}, {1, {1, 2, 0}, 6},
         {1, {0, 2, 0}, 5}, {1, {1, 1, 0}, 4}, {1, {0, 1, 0}, 3}, {1, {1, 0, 0}, 2}, {1, {0, 0, 0}, 1}};
    w = {Rational(4), Rational(6), Rational(9)};
    notes.push_back("E7: tabulated deformation monomial b7*x1*x2^3 is not quasihomogeneous; stored as b7*x1^2");
  } else {
    // The tabulated "b8 x1^3 + x2" is read as b8 x1^3 x2.
    m = {{1, {5, 0, 0}, 0}, {1, {0, 3, 0}, 0}, {1, {0, 0, 2}, 0}, {1, {3, 1, 0}, 8}, {1, {3, 0, 0}, 7},
         {1, {2, 1, 0}, 6}, {1, {1, 1, 0}, 5}, {1, {2, 0, 0}, 4}, {1, {0, 1, 0}, 3}, {1, {1, 0, 0}, 2},
         {1, {0, 0, 0}, 1}};
    w = {Rational(6), Rational(10), Rational(15)};
    notes.push_back("E8: tabulated term 'b8*x1^3 + x2' read as b8*x1^3*x2");
  }
  UnfoldingSpec spec = assemble(LieType::E, n, m, w);
  spec.notes = std::move(notes);
  return spec;
}

}  // namespace detail

inline UnfoldingSpec get_unfolding(LieType t, int rank) {
  if (!is_valid_pair(t, rank))
    throw UnsupportedFamily("unsupported family " + std::string(1, to_char(t)) + std::to_string(rank));
  switch (t) {
    case LieType::A:
      return detail::make_a(rank);
    case LieType::D:
      return detail::make_d(rank);
    case LieType::E:
      return detail::make_e(rank);
  }
  throw UnsupportedFamily("unsupported family");
}

/// Entries printed by the `catalog` command.
inline std::vector<UnfoldingSpec> all_entries(int max_a_rank = 8, int max_d_rank = 8) {
  std::vector<UnfoldingSpec> out;
  for (int n = 1; n <= max_a_rank; ++n) out.push_back(get_unfolding(LieType::A, n));
  for (int n = 4; n <= max_d_rank; ++n) out.push_back(get_unfolding(LieType::D, n));
  for (int n = 6; n <= 8; ++n) out.push_back(get_unfolding(LieType::E, n));
  return out;
}

/// Lists every violated structural invariant (empty when the entry is sound).
inline std::vector<std::string> invariant_violations(const UnfoldingSpec& spec) {
  std::vector<std::string> bad;
  const std::size_t nv = spec.S.num_variables();
  // S(x, 0) == s
  std::vector<MultiPoly> images;
  const std::vector<std::string> xs = {"x1", "x2", "x3"};
  for (std::size_t i = 0; i < nv; ++i)
    images.push_back(i < 3 ? MultiPoly::variable(xs, xs[i]) : MultiPoly(xs));
  for (std::size_t i = 3; i < nv; ++i) images[i] = MultiPoly::constant(xs, Rational(0));
  if (!(spec.S.compose(images) == spec.s)) bad.push_back("S restricted to b=0 differs from s");
  if (!spec.S.is_quasihomogeneous()) bad.push_back("S is not quasihomogeneous");
  if (!spec.s.is_quasihomogeneous()) bad.push_back("s is not quasihomogeneous");
  if (spec.S.weighted_degree() && *spec.S.weighted_degree() != Rational(spec.lie.coxeter))
    bad.push_back("weighted degree of S differs from the Coxeter number");
  if (!(spec.S.diff("b1") == MultiPoly::constant(spec.S.variables(), Rational(1))))
    bad.push_back("dS/db1 != 1");
  std::vector<Rational> sorted = spec.parameter_weights;
  std::sort(sorted.begin(), sorted.end());
  std::vector<Rational> degs(spec.lie.degrees.begin(), spec.lie.degrees.end());
  if (sorted != degs) bad.push_back("parameter weights differ from the Lie-algebra degrees");
  if (static_cast<int>(spec.lie.degrees.size()) != spec.rank) bad.push_back("degree list length differs from rank");
  if (spec.type == LieType::A) {
    if (!spec.S_tilde) {
      bad.push_back("A-type entry lacks S_tilde");
    } else {
      const auto& st = *spec.S_tilde;
      std::vector<MultiPoly> im;
      for (std::size_t i = 0; i < nv; ++i) {
        if (i == 0) {
          im.push_back(MultiPoly::variable(st.variables(), "x"));
        } else if (i < 3) {
          im.push_back(MultiPoly(st.variables()));
        } else {
          im.push_back(MultiPoly::variable(st.variables(), spec.S.variables()[i]));
        }
      }
      if (!(spec.S.compose(im) == st)) bad.push_back("S_tilde differs from S(x,0,0,b)");
      if (!st.is_quasihomogeneous()) bad.push_back("S_tilde is not quasihomogeneous");
    }
  }
  return bad;
}

}  // namespace frobenius::catalog
