#pragma once

#include <memory>
#include <string>
#include <vector>

#include "frobenius/esk.hpp"
#include "frobenius/saito.hpp"
#include "frobenius/toda.hpp"

namespace frobenius {

inline esk::PrepotentialProvider toda_provider(int n) {
  const toda::TodaModel model(n);
  esk::PrepotentialProvider p;
  p.name = "toda";
  p.n = n;
  p.F3 = [model](const esk::Point& z) { return toda::third_derivatives(model, z); };
  p.F2 = [model](const esk::Point& z) { return toda::hessian(model, z); };
  p.domain = [model](const esk::Point& z) { return model.in_domain(z); };
  return p;
}

inline esk::PrepotentialProvider saito_provider(std::shared_ptr<const saito::FrobeniusData> d) {
  esk::PrepotentialProvider p;
  p.name = "saito";
  p.n = d->rank();
  p.F3 = [d](const esk::Point& t) { return saito::evaluate_c<Complex>(*d, t); };
  p.F2 = [d](const esk::Point& t) { return saito::evaluate_hessian<Complex>(*d, t); };
  p.domain = [n = p.n](const esk::Point& t) { return static_cast<int>(t.size()) == n; };
  return p;
}

/// E(t) = sum_k w_k t_k d/dt_k.
inline esk::VectorField saito_euler(const saito::FrobeniusData& d) {
  std::vector<Complex> w;
  for (const auto& wk : d.euler.weights) w.push_back(scalar_cast<Complex>(wk));
  return {"euler", [w](const esk::Point& t) {
            esk::Point v(t.size());
            for (std::size_t k = 0; k < t.size(); ++k) v[k] = w[k] * t[k];
            return v;
          }};
}

/// e = d/dt_1.
inline esk::VectorField saito_unit(int n) {
  esk::Point e(n, Complex(0.0, 0.0));
  e[0] = 1.0;
  return esk::VectorField::constant(e, "unit");
}

/// Covariant metric of the pencil g^{ij}(t) + lambda eta^{ij}.
inline esk::MetricField pencil_metric(std::shared_ptr<const saito::FrobeniusData> d, Complex lambda) {
  const ComplexMatrix eta_inv = to_complex(d->eta_inv);
  return [d, eta_inv, lambda](const esk::Point& t) {
    return guarded_inverse(saito::intersection_form(*d, t) + eta_inv * lambda);
  };
}

/// Christoffel symbols of the pencil metric from the exact derivatives of the
/// polynomial g^{ij}: d_k g = -g (d_k G) g with G = g^{..} + lambda eta^{..}.
inline esk::ChristoffelField pencil_christoffel(std::shared_ptr<const saito::FrobeniusData> d, Complex lambda) {
  const ComplexMatrix eta_inv = to_complex(d->eta_inv);
  const std::size_t n = static_cast<std::size_t>(d->rank());
  auto dG = std::make_shared<std::vector<saito::PolyMatrix>>();
  for (std::size_t k = 0; k < n; ++k) {
    saito::PolyMatrix m = d->intersection;
    for (auto& row : m)
      for (auto& e : row) e = e.diff(k);
    dG->push_back(std::move(m));
  }
  return [d, dG, eta_inv, lambda](const esk::Point& t) {
    const ComplexMatrix G = saito::evaluate_matrix<Complex>(d->intersection, t) + eta_inv * lambda;
    const ComplexMatrix g = guarded_inverse(G);
    std::vector<ComplexMatrix> dg;
    for (const auto& m : *dG) dg.push_back((g * saito::evaluate_matrix<Complex>(m, t) * g) * Complex(-1.0, 0.0));
    return esk::detail::christoffel_from(G, dg);
  };
}

/// Associativity of *_e at a rational point in exact arithmetic.
inline CheckReport exact_associativity_check(const saito::FrobeniusData& d, const std::vector<Rational>& t) {
  CheckReport r = make_report("associativity_exact", 0.0);
  std::vector<Complex> tc;
  for (const auto& tk : t) tc.push_back(scalar_cast<Complex>(tk));
  r.samples.push_back(tc);
  const auto c = saito::evaluate_c<Rational>(d, t);
  std::vector<RationalMatrix> C;
  for (std::size_t i = 0; i < c.dim(); ++i) C.push_back(c.slice(i) * d.eta_inv);
  Rational worst = 0;
  for (std::size_t i = 0; i < C.size(); ++i)
    for (std::size_t j = i + 1; j < C.size(); ++j) worst = std::max(worst, max_abs_exact(C[i] * C[j] - C[j] * C[i]));
  r.status = worst == 0 ? Status::pass : Status::fail;
  r.max_residual = to_double(worst);
  Json point = Json::array();
  for (const auto& tk : t) point.push_back(to_string(tk));
  r.note("point", point);
  r.note("exact_residual", to_string(worst));
  return r;
}

inline CheckReport exact_wdvv_check(const saito::FrobeniusData& d, const std::vector<Rational>& t) {
  CheckReport r = make_report("wdvv_exact", 0.0);
  std::vector<Complex> tc;
  for (const auto& tk : t) tc.push_back(scalar_cast<Complex>(tk));
  r.samples.push_back(tc);
  const Rational res = saito::wdvv_residual_exact(d, t);
  r.status = res == 0 ? Status::pass : Status::fail;
  r.max_residual = to_double(res);
  Json point = Json::array();
  for (const auto& tk : t) point.push_back(to_string(tk));
  r.note("point", point);
  r.note("exact_residual", to_string(res));
  return r;
}

}  // namespace frobenius
