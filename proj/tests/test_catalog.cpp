#include <gtest/gtest.h>

#include "frobenius/catalog.hpp"

using namespace frobenius;
using catalog::LieType;

TEST(Catalog, A2Unfolding) {
  const auto s = catalog::get_unfolding(LieType::A, 2);
  EXPECT_EQ(s.S.to_string(), "x1^3 + x1*b2 + x2^2 + x3^2 + b1");
  ASSERT_TRUE(s.S_tilde.has_value());
  EXPECT_EQ(s.S_tilde->to_string(), "x^3 + x*b2 + b1");
}

TEST(Catalog, D4Unfolding) {
  const auto s = catalog::get_unfolding(LieType::D, 4);
  const std::vector<std::string> vars = {"x1", "x2", "x3", "b1", "b2", "b3", "b4"};
  MultiPoly expected(vars);
  expected.add_term({0, 3, 0, 0, 0, 0, 0}, Rational(1));
  expected.add_term({2, 1, 0, 0, 0, 0, 0}, Rational(-1));
  expected.add_term({0, 0, 2, 0, 0, 0, 0}, Rational(1));
  expected.add_term({1, 0, 0, 0, 0, 0, 1}, Rational(1));
  expected.add_term({0, 2, 0, 0, 0, 1, 0}, Rational(1));
  expected.add_term({0, 1, 0, 0, 1, 0, 0}, Rational(1));
  expected.add_term({0, 0, 0, 1, 0, 0, 0}, Rational(1));
  EXPECT_EQ(s.S, expected) << s.S.to_string();
  EXPECT_FALSE(s.S_tilde.has_value());
}

TEST(Catalog, E6Unfolding) {
  const auto s = catalog::get_unfolding(LieType::E, 6);
  const std::vector<std::string> vars = {"x1", "x2", "x3", "b1", "b2", "b3", "b4", "b5", "b6"};
  MultiPoly expected(vars);
  auto term = [&](std::vector<int> e) { expected.add_term(e, Rational(1)); };
  term({4, 0, 0, 0, 0, 0, 0, 0, 0});
  term({0, 3, 0, 0, 0, 0, 0, 0, 0});
  term({0, 0, 2, 0, 0, 0, 0, 0, 0});
  term({2, 1, 0, 0, 0, 0, 0, 0, 1});
  term({1, 1, 0, 0, 0, 0, 0, 1, 0});
  term({2, 0, 0, 0, 0, 0, 1, 0, 0});
  term({0, 1, 0, 0, 0, 1, 0, 0, 0});
  term({1, 0, 0, 0, 1, 0, 0, 0, 0});
  term({0, 0, 0, 1, 0, 0, 0, 0, 0});
  EXPECT_EQ(s.S, expected) << s.S.to_string();
}

TEST(Catalog, AnWeights) {
  const auto w2 = catalog::an_weights(2);
  EXPECT_EQ(w2.b[0], Rational(3));
  EXPECT_EQ(w2.b[1], Rational(2));
  const auto w3 = catalog::an_weights(3);
  EXPECT_EQ(w3.b[0], Rational(4));
  EXPECT_EQ(w3.b[1], Rational(3));
  EXPECT_EQ(w3.b[2], Rational(2));
  EXPECT_EQ(catalog::an_weights(1).b[0], Rational(2));
}

TEST(Catalog, LieDegrees) {
  auto d = catalog::lie_degrees(LieType::A, 2);
  EXPECT_EQ(d.degrees, (std::vector<int>{2, 3}));
  EXPECT_EQ(d.coxeter, 3);
  d = catalog::lie_degrees(LieType::A, 4);
  EXPECT_EQ(d.degrees, (std::vector<int>{2, 3, 4, 5}));
  EXPECT_EQ(d.coxeter, 5);
  d = catalog::lie_degrees(LieType::D, 4);
  EXPECT_EQ(d.degrees, (std::vector<int>{2, 4, 4, 6}));
  EXPECT_EQ(d.coxeter, 6);
  EXPECT_EQ(catalog::lie_degrees(LieType::E, 7).degrees, (std::vector<int>{2, 6, 8, 10, 12, 14, 18}));
  EXPECT_EQ(catalog::lie_degrees(LieType::E, 8).degrees, (std::vector<int>{2, 8, 12, 14, 18, 20, 24, 30}));
  EXPECT_THROW(catalog::lie_degrees(LieType::E, 5), UnsupportedFamily);
  EXPECT_THROW(catalog::lie_degrees(LieType::D, 3), UnsupportedFamily);
}

TEST(Catalog, EveryEntrySatisfiesInvariants) {
  for (const auto& s : catalog::all_entries()) {
    const auto v = catalog::invariant_violations(s);
    EXPECT_TRUE(v.empty()) << s.name() << ": " << (v.empty() ? "" : v.front());
    EXPECT_TRUE(s.S.is_quasihomogeneous()) << s.name();
    if (s.S_tilde) {
      EXPECT_TRUE(s.S_tilde->is_quasihomogeneous()) << s.name();
      EXPECT_EQ(s.S_tilde->degree_in(0), s.rank + 1);
    }
  }
}

TEST(Catalog, CorrectedExceptionalRowsAreFlagged) {
  EXPECT_FALSE(catalog::get_unfolding(LieType::E, 8).notes.empty());
  EXPECT_FALSE(catalog::get_unfolding(LieType::E, 7).notes.empty());
  EXPECT_TRUE(catalog::get_unfolding(LieType::E, 6).notes.empty());
}
