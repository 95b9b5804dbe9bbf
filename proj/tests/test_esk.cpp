#include <gtest/gtest.h>

#include <memory>

#include "fixtures.hpp"
#include "frobenius/esk.hpp"
#include "frobenius/providers.hpp"
#include "frobenius/sampling.hpp"

using namespace frobenius;
using esk::Point;
using esk::VectorField;

namespace {

Point real_point(std::initializer_list<double> xs) {
  Point z;
  for (double x : xs) z.emplace_back(x, 0.0);
  return z;
}

Point random_vector(Rng& rng, int n) {
  Point v(n);
  for (auto& x : v) x = rng.complex(-1.0, 1.0, -1.0, 1.0);
  return v;
}

std::shared_ptr<const saito::FrobeniusData> saito_data(int n) {
  return std::make_shared<const saito::FrobeniusData>(
      saito::build_frobenius(catalog::get_unfolding(catalog::LieType::A, n)));
}

}  // namespace

TEST(MetricV, TodaEqualsFE) {
  const auto p = toda_provider(2);
  const Point z = real_point({2.0, 1.0});
  const auto g = esk::metric_v(p, z, z);
  EXPECT_LT(max_abs(g - toda::expected_f_e(2)), 1e-14);
}

TEST(MetricV, DeltaPatternGivesIdentity) {
  const auto p = fixtures::delta_pattern(3);
  const auto g = esk::metric_v(p, real_point({1.0, 0.0, 0.0}), real_point({0.3, 0.1, 0.2}));
  EXPECT_EQ(g, ComplexMatrix::identity(3));
}

TEST(MetricV, ZeroVectorIsDegenerate) {
  const auto p = toda_provider(2);
  const Point z = real_point({2.0, 1.0});
  const auto g = esk::metric_v(p, real_point({0.0, 0.0}), z);
  EXPECT_EQ(max_abs(g), 0.0);
  EXPECT_FALSE(is_nondegenerate(g));
  EXPECT_THROW(esk::mult_v(p, real_point({0.0, 0.0}), z), DegenerateError);
  const auto r = esk::associativity_check(p, VectorField::constant(real_point({0.0, 0.0})), z, 1e-9);
  EXPECT_EQ(r.status, Status::degenerate);
}

TEST(MultV, UnitLawAndDefmulTodaRankTwo) {
  const auto p = toda_provider(2);
  const Point z = real_point({2.0, 1.0});
  const auto m = esk::mult_v(p, z, z);
  EXPECT_LT(esk::unit_law_residual(m), 1e-12);
  EXPECT_LT(esk::defmul_residual(m), 1e-12);
  const Point y = real_point({0.4, -1.2});
  const Point vy = m.product(z, y);
  for (int k = 0; k < 2; ++k) EXPECT_LT(std::abs(vy[k] - y[k]), 1e-12);
}

TEST(MultV, CompatibilityOnRandomTriples) {
  Rng rng(4);
  const auto p = toda_provider(4);
  const Point z = sample_toda_point(rng, 4);
  const auto m = esk::mult_v(p, z, z);
  for (int s = 0; s < 20; ++s)
    EXPECT_LT(esk::compatibility_residual(m, random_vector(rng, 4), random_vector(rng, 4), random_vector(rng, 4)),
              1e-10);
}

TEST(Associativity, SaitoAThreeWithUnit) {
  const auto d = saito_data(3);
  const auto p = saito_provider(d);
  Rng rng(9);
  for (int s = 0; s < 5; ++s) {
    const auto r = esk::associativity_check(p, saito_unit(3), random_vector(rng, 3), 1e-12);
    EXPECT_EQ(r.status, Status::pass) << r.max_residual;
  }
}

TEST(Associativity, TodaRankFourBulk) {
  Rng rng(kDefaultSeed);
  const auto p = toda_provider(4);
  for (int s = 0; s < 50; ++s)
    EXPECT_EQ(esk::associativity_check(p, VectorField::identity(), sample_toda_point(rng, 4), 1e-9).status,
              Status::pass);
}

TEST(Associativity, RandomSymmetricFails) {
  Rng rng(31);
  const auto p = fixtures::random_symmetric(3, rng);
  const auto r = esk::associativity_check(p, VectorField::constant(random_vector(rng, 3)), real_point({0, 0, 0}), 1e-9);
  EXPECT_EQ(r.status, Status::fail);
}

TEST(Associativity, VerdictIndependentOfV) {
  Rng rng(12);
  const auto good = toda_provider(3);
  const auto bad = fixtures::perturbed_toda(3);
  for (int s = 0; s < 10; ++s) {
    const Point z = sample_toda_point(rng, 3);
    const auto v = VectorField::constant(random_vector(rng, 3));
    const auto w = VectorField::constant(random_vector(rng, 3));
    EXPECT_EQ(esk::associativity_check(good, v, z, 1e-9).status, esk::associativity_check(good, w, z, 1e-9).status);
    EXPECT_EQ(esk::associativity_check(bad, v, z, 1e-9).status, esk::associativity_check(bad, w, z, 1e-9).status);
    EXPECT_EQ(esk::associativity_check(good, v, z, 1e-9).status, Status::pass);
    EXPECT_EQ(esk::associativity_check(bad, v, z, 1e-9).status, Status::fail);
  }
}

TEST(Associativity, ExactSaito) {
  Rng rng(kDefaultSeed);
  for (int n = 2; n <= 4; ++n) {
    const auto d = saito_data(n);
    for (int s = 0; s < 5; ++s) {
      const auto r = exact_associativity_check(*d, sample_rational_point(rng, n));
      EXPECT_EQ(r.status, Status::pass);
      EXPECT_EQ(r.metadata["exact_residual"], "0");
    }
  }
}

TEST(FManifold, TodaRankThree) {
  Rng rng(17);
  const auto p = toda_provider(3);
  for (int s = 0; s < 5; ++s) {
    const auto r = esk::fmanifold_identity_check(p, VectorField::identity(), sample_toda_point(rng, 3), 1e-6);
    EXPECT_EQ(r.status, Status::pass) << r.to_json().dump();
  }
}

TEST(FManifold, ConstantAssociativeFixtureIsExact) {
  const auto p = fixtures::idempotent(3);
  const auto r =
      esk::fmanifold_identity_check(p, VectorField::constant(real_point({1, 1, 1})), real_point({0.1, 0.2, 0.3}), 1e-6);
  EXPECT_EQ(r.status, Status::pass);
  EXPECT_EQ(r.max_residual, 0.0);
}

TEST(FManifold, BrokenWdvvFails) {
  const auto p = fixtures::broken_wdvv();
  const Point z = real_point({0.3, 0.7, -0.4});
  const auto unit = VectorField::constant(real_point({1, 0, 0}));
  const auto r = esk::fmanifold_identity_check(p, unit, z, 1e-6);
  EXPECT_EQ(r.status, Status::fail) << r.to_json().dump();
  EXPECT_LT(std::stod(r.metadata["dC_asymmetry"].get<std::string>()), 1e-6);
  EXPECT_EQ(esk::associativity_check(p, unit, z, 1e-9).status, Status::fail);
}

TEST(FManifold, PerturbedTodaFails) {
  Rng rng(19);
  const auto r =
      esk::fmanifold_identity_check(fixtures::perturbed_toda(3), VectorField::identity(), sample_toda_point(rng, 3), 1e-6);
  EXPECT_EQ(r.status, Status::fail);
}

TEST(Flatness, ConstantMetricPassesExactly) {
  ComplexMatrix m(2, 2);
  m(0, 0) = 2.0;
  m(0, 1) = m(1, 0) = 0.5;
  m(1, 1) = -1.0;
  const auto f = esk::flatness_check(fixtures::constant_metric(m), real_point({0.2, 0.4}), 1e-8, 1e-6);
  EXPECT_EQ(f.constancy.status, Status::pass);
  EXPECT_EQ(f.constancy.max_residual, 0.0);
  EXPECT_EQ(f.curvature.status, Status::pass);
  EXPECT_EQ(f.curvature.max_residual, 0.0);
}

TEST(Flatness, TodaEulerMetricIsConstant) {
  Rng rng(23);
  const auto p = toda_provider(3);
  const auto g = esk::metric_field(p, VectorField::identity());
  const auto f = esk::flatness_check(g, sample_toda_point(rng, 3), 1e-8, 1e-6);
  EXPECT_EQ(f.constancy.status, Status::pass);
  EXPECT_EQ(f.curvature.status, Status::pass);
}

TEST(Flatness, CurvedFixtureFailsCurvature) {
  const Point z = real_point({0.3, -0.2});
  const auto f = esk::flatness_check(fixtures::curved_metric(), z, 1e-8, 1e-6);
  EXPECT_EQ(f.constancy.status, Status::fail);
  EXPECT_EQ(f.curvature.status, Status::fail);
  // R^1_{212} = d_1 Gamma^1_22 - Gamma^1_22 Gamma^2_21 = -e^{z1}/2 + e^{z1}/4 = -e^{z1}/4.
  EXPECT_NEAR(f.curvature.max_residual, std::exp(0.3) / 4, 1e-6);
}

TEST(Flatness, SaitoPencil) {
  const auto d = saito_data(2);
  Rng rng(29);
  for (Complex lambda : {Complex(0, 0), Complex(1, 0), Complex(2, 1)}) {
    const auto b = toda::b_from_roots(sample_traceless_roots(rng, 2));
    const auto t = saito::evaluate_all(d->coords.t_of_b, b);
    const auto f = esk::flatness_check(pencil_metric(d, lambda), t, 1e-8, 1e-6);
    EXPECT_EQ(f.curvature.status, Status::pass) << f.curvature.max_residual;
  }
}

TEST(Kahler, TodaRankOne) {
  const auto p = toda_provider(1);
  const auto at_i = esk::kahler_positivity_check(p, {Point{Complex(0.0, 1.0)}});
  EXPECT_EQ(at_i.metadata["positive_samples"], 1);
  EXPECT_EQ(at_i.status, Status::info);
  const auto at_one = esk::kahler_positivity_check(p, {Point{Complex(1.0, 0.0)}});
  EXPECT_EQ(at_one.metadata["positive_samples"], 0);
}

TEST(Kahler, RealHessianFixtureIsNeverPositive) {
  const auto p = fixtures::idempotent(2);
  const auto r = esk::kahler_positivity_check(p, {real_point({0.1, 0.2}), real_point({1.0, -3.0})});
  EXPECT_EQ(r.metadata["positive_samples"], 0);
}

TEST(Rescaling, SameVectorIsExact) {
  const auto p = toda_provider(2);
  const Point z = real_point({2.0, 1.0});
  const auto r = esk::rescaling_check(p, VectorField::identity(), VectorField::identity(), z, 1e-10);
  EXPECT_EQ(r.status, Status::pass);
  EXPECT_LT(r.max_residual, 1e-14);
}

TEST(Rescaling, TodaUnitW) {
  Rng rng(37);
  const auto p = toda_provider(2);
  const auto r = esk::rescaling_check(p, VectorField::identity(), VectorField::constant(real_point({1, 1})),
                                      sample_toda_point(rng, 2), 1e-10);
  EXPECT_EQ(r.status, Status::pass) << r.max_residual;
}

TEST(Rescaling, SingularWIsAnError) {
  const auto p = toda_provider(2);
  const auto r = esk::rescaling_check(p, VectorField::identity(), VectorField::constant(real_point({0, 0})),
                                      real_point({2.0, 1.0}), 1e-10);
  EXPECT_EQ(r.status, Status::error);
}

TEST(DegenerateFamily, HomogeneousDegreeTwo) {
  Rng rng(41);
  const auto p = fixtures::homogeneous_degree_two();
  const Point z = real_point({0.7, 1.3});
  const auto r = esk::degenerate_family_check(p, z, rng);
  EXPECT_EQ(r.status, Status::degenerate);
  for (int s = 0; s < 10; ++s) {
    const auto a = esk::associativity_check(p, VectorField::constant(random_vector(rng, 2)), z, 1e-9);
    EXPECT_EQ(a.status, Status::degenerate);
  }
  EXPECT_EQ(esk::degenerate_family_check(toda_provider(2), z, rng).status, Status::pass);
}

TEST(Flatness, SaitoPencilExactChristoffel) {
  Rng rng(43);
  for (int n : {2, 3, 4}) {
    const auto d = saito_data(n);
    for (Complex lambda : {Complex(0, 0), Complex(1, 0), Complex(2, 1)}) {
      const auto b = toda::b_from_roots(sample_traceless_roots(rng, n));
      const auto t = saito::evaluate_all(d->coords.t_of_b, b);
      const auto r = esk::curvature_check(pencil_christoffel(d, lambda), t, 1e-6, 1e-4, true);
      EXPECT_EQ(r.status, Status::pass) << "A" << n << " " << r.max_residual;
      // the supplied symbols agree with differences of the metric
      const auto exact = pencil_christoffel(d, lambda)(t);
      const auto fd = esk::fd_christoffel(pencil_metric(d, lambda), 1e-4, true)(t);
      for (int a = 0; a < n; ++a) EXPECT_LT(max_abs(exact[a] - fd[a]), 1e-6 * (1.0 + max_abs(exact[a])));
    }
  }
}

TEST(Flatness, RichardsonReducesTruncationError) {
  // Euler product of A3 is an F-manifold; plain differences leave an O(h^2) residual.
  const auto d = saito_data(3);
  const auto p = saito_provider(d);
  Rng rng(kDefaultSeed);
  const auto t = saito::evaluate_all(d->coords.t_of_b, toda::b_from_roots(sample_traceless_roots(rng, 3)));
  const auto plain = esk::fmanifold_identity_check(p, saito_euler(*d), t, 1e-6, 1e-3, false);
  const auto extrapolated = esk::fmanifold_identity_check(p, saito_euler(*d), t, 1e-6, 1e-3, true);
  EXPECT_LT(extrapolated.max_residual, 1e-2 * plain.max_residual);
  EXPECT_EQ(extrapolated.status, Status::pass);
}
