#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "frobenius/catalog.hpp"
#include "frobenius/esk.hpp"
#include "frobenius/parallel.hpp"
#include "frobenius/providers.hpp"
#include "frobenius/report.hpp"
#include "frobenius/sampling.hpp"
#include "frobenius/saito.hpp"
#include "frobenius/toda.hpp"

#ifndef FROBENIUS_FORGE_VERSION
#define FROBENIUS_FORGE_VERSION "0.0.0"
#endif

namespace frobenius::cli {

inline constexpr int kSchemaVersion = 1;

enum ExitCode { kOk = 0, kCheckFailed = 1, kUsage = 2 };

class UsageError : public Error {
 public:
  using Error::Error;
};

inline std::map<std::string, double> default_tolerances() {
  return {{"root", 1e-12},        {"gen_wdvv", 1e-9},      {"fe_const", 1e-10},    {"fmanifold", 1e-6},
          {"residue_sym", 1e-10}, {"residue_wdvv", 1e-8},  {"duality", 1e-4},      {"pencil", 1e-6},
          {"fd_rel", 1e-5},       {"ej_rel", 1e-9},        {"fd_step", 1e-4},      {"assoc", 1e-9},
          {"unit", 1e-10},        {"defmul", 1e-10},       {"rescaling", 1e-10},   {"flat_const", 1e-8},
          {"homogeneity", 1e-10}};
}

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c = {"catalog", "build", "toda", "duality", "esk-check"};
  return c;
}

struct RunConfig {
  std::string command;
  std::string lie_type = "A";
  int rank = 2;
  std::uint64_t seed = kDefaultSeed;
  int samples = 20;
  std::map<std::string, double> tolerances = default_tolerances();
  std::string format = "json";
  std::string output;
  std::string provider = "toda";
  std::string V = "euler";
  int max_rank = 10;
  bool richardson = true;
  /// Points for the multiprecision finite-difference oracle (the slow part).
  int fd_samples = 5;

  double tol(const std::string& name) const { return tolerances.at(name); }
};

/// Tolerance a bare `--tol value` applies to.
inline std::string primary_tolerance(const std::string& command) {
  if (command == "toda") return "gen_wdvv";
  if (command == "duality") return "duality";
  if (command == "esk-check") return "assoc";
  return "pencil";
}

inline std::uint64_t parse_seed(const std::string& s) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used, 0);
    if (used != s.size()) throw UsageError("malformed seed: " + s);
    return v;
  } catch (const std::logic_error&) {
    throw UsageError("malformed seed: " + s);
  }
}

/// Applies "name=value" or a bare value (primary tolerance of the command).
inline void apply_tolerance(RunConfig& c, const std::string& spec) {
  const auto eq = spec.find('=');
  const std::string name = eq == std::string::npos ? primary_tolerance(c.command) : spec.substr(0, eq);
  const std::string value = eq == std::string::npos ? spec : spec.substr(eq + 1);
  if (!c.tolerances.count(name)) throw UsageError("unknown tolerance: " + name);
  double v = 0.0;
  try {
    std::size_t used = 0;
    v = std::stod(value, &used);
    if (used != value.size()) throw UsageError("malformed tolerance: " + spec);
  } catch (const std::logic_error&) {
    throw UsageError("malformed tolerance: " + spec);
  }
  if (!(v > 0.0)) throw UsageError("tolerance must be positive: " + spec);
  c.tolerances[name] = v;
}

/// Merges a JSON config object into `c`. Unknown keys are rejected.
inline void apply_config_json(RunConfig& c, const Json& j) {
  if (!j.is_object()) throw UsageError("config file must hold a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "command") {
        c.command = value.get<std::string>();
      } else if (key == "type") {
        c.lie_type = value.get<std::string>();
      } else if (key == "rank") {
        c.rank = value.get<int>();
      } else if (key == "seed") {
        c.seed = value.is_string() ? parse_seed(value.get<std::string>()) : value.get<std::uint64_t>();
      } else if (key == "samples") {
        c.samples = value.get<int>();
      } else if (key == "tolerances") {
        if (!value.is_object()) throw UsageError("tolerances must be an object");
        for (const auto& [name, v] : value.items())
          apply_tolerance(c, name + "=" + (v.is_string() ? v.get<std::string>() : std::to_string(v.get<double>())));
      } else if (key == "format") {
        c.format = value.get<std::string>();
      } else if (key == "output") {
        c.output = value.get<std::string>();
      } else if (key == "provider") {
        c.provider = value.get<std::string>();
      } else if (key == "V") {
        c.V = value.get<std::string>();
      } else if (key == "max_rank") {
        c.max_rank = value.get<int>();
      } else if (key == "fd_samples") {
        c.fd_samples = value.get<int>();
      } else if (key == "richardson") {
        c.richardson = value.get<bool>();
      } else {
        throw UsageError("unknown config key: " + key);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("malformed config: ") + e.what());
  }
}

inline void load_config_file(RunConfig& c, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("malformed config file " + path + ": " + e.what());
  }
  apply_config_json(c, j);
}

inline void validate(const RunConfig& c) {
  if (std::find(commands().begin(), commands().end(), c.command) == commands().end())
    throw UsageError("unknown command: " + c.command);
  if (c.rank < 1) throw UsageError("rank must be positive");
  if (c.samples < 1) throw UsageError("samples must be positive");
  if (c.format != "json" && c.format != "text") throw UsageError("format must be json or text");
  if (c.provider != "toda" && c.provider != "saito") throw UsageError("provider must be toda or saito");
  if (c.max_rank < 1) throw UsageError("max_rank must be positive");
  if (c.fd_samples < 1) throw UsageError("fd_samples must be positive");
}

inline Json config_echo(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  j["type"] = c.lie_type;
  j["rank"] = c.rank;
  j["seed"] = c.seed;
  j["samples"] = c.samples;
  Json tol = Json::object();
  for (const auto& [k, v] : c.tolerances) tol[k] = format_double(v);
  j["tolerances"] = tol;
  j["format"] = c.format;
  j["provider"] = c.provider;
  j["V"] = c.V;
  j["max_rank"] = c.max_rank;
  j["richardson"] = c.richardson;
  j["fd_samples"] = c.fd_samples;
  return j;
}

namespace detail {

inline Json rational_vector(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

inline Json rational_matrix(const RationalMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    a.push_back(row);
  }
  return a;
}

inline Json poly_matrix(const saito::PolyMatrix& m) {
  Json a = Json::array();
  for (const auto& r : m) {
    Json row = Json::array();
    for (const auto& e : r) row.push_back(e.to_string());
    a.push_back(row);
  }
  return a;
}

inline Json catalog_entry(const catalog::UnfoldingSpec& s) {
  Json j;
  j["name"] = s.name();
  j["type"] = std::string(1, catalog::to_char(s.type));
  j["rank"] = s.rank;
  j["s"] = s.s.to_string();
  j["S"] = s.S.to_string();
  j["S_tilde"] = s.S_tilde ? Json(s.S_tilde->to_string()) : Json(nullptr);
  j["variable_weights"] = rational_vector(s.variable_weights);
  j["parameter_weights"] = rational_vector(s.parameter_weights);
  j["degrees"] = s.lie.degrees;
  j["coxeter"] = s.lie.coxeter;
  j["notes"] = s.notes;
  return j;
}

/// Base points on the Saito side: t(b) for b from n+1 separated traceless roots.
inline std::vector<std::vector<Complex>> saito_points(const saito::FrobeniusData& d, Rng& rng, int count) {
  std::vector<std::vector<Complex>> out;
  for (int s = 0; s < count; ++s) {
    const auto b = toda::b_from_roots(sample_traceless_roots(rng, d.rank()));
    out.push_back(saito::evaluate_all(d.coords.t_of_b, b));
  }
  return out;
}

template <class Fn>
std::vector<CheckReport> over_points(const std::vector<std::vector<Complex>>& pts, Fn fn) {
  return parallel_map(pts.size(), [&](std::size_t i) { return fn(pts[i]); });
}

struct Outcome {
  Json result = Json::object();
  std::vector<CheckReport> checks;
};

inline saito::FrobeniusData build_data(const RunConfig& c) {
  const auto type = catalog::parse_lie_type(c.lie_type);
  if (!catalog::is_valid_pair(type, c.rank))
    throw UnsupportedFamily("unsupported family " + c.lie_type + std::to_string(c.rank));
  saito::PipelineOptions opts;
  opts.max_rank = c.max_rank;
  return saito::build_frobenius(catalog::get_unfolding(type, c.rank), opts);
}

inline Outcome run_catalog(const RunConfig&) {
  Outcome o;
  Json entries = Json::array();
  Json violations = Json::object();
  for (const auto& s : catalog::all_entries()) {
    entries.push_back(catalog_entry(s));
    const auto v = catalog::invariant_violations(s);
    if (!v.empty()) violations[s.name()] = v;
  }
  o.result["entries"] = entries;
  CheckReport r = make_report("catalog_invariants", 0.0);
  r.judge(static_cast<double>(violations.size()));
  if (!violations.empty()) r.note("violations", violations);
  o.checks.push_back(r);
  return o;
}

inline Outcome run_build(const RunConfig& c) {
  Outcome o;
  const auto d = std::make_shared<const saito::FrobeniusData>(build_data(c));
  const int n = d->rank();
  Json flat = Json::object();
  Json inverse = Json::object();
  for (int k = 0; k < n; ++k) {
    flat[d->coords.t_vars[k]] = d->coords.t_of_b[k].to_string();
    inverse[d->coords.b_vars[k]] = d->coords.b_of_t[k].to_string();
  }
  o.result["family"] = d->spec.name();
  o.result["S_tilde"] = d->spec.S_tilde->to_string();
  o.result["flat_coordinates"] = flat;
  o.result["inverse_coordinates"] = inverse;
  o.result["eta"] = rational_matrix(d->eta);
  o.result["prepotential"] = d->F.to_string();
  o.result["euler_weights"] = rational_vector(d->euler.weights);
  o.result["euler_scalar"] = to_string(d->euler.scalar);
  o.result["metric_degree"] = to_string(d->metric_degree);
  o.result["intersection_form"] = poly_matrix(d->intersection);
  o.result["notes"] = d->notes;

  Rng rng(c.seed);
  std::vector<std::vector<Rational>> rational_pts;
  for (int s = 0; s < c.samples; ++s) rational_pts.push_back(sample_rational_point(rng, n));
  const auto wdvv = parallel_map(rational_pts.size(), [&](std::size_t i) { return exact_wdvv_check(*d, rational_pts[i]); });
  const auto assoc =
      parallel_map(rational_pts.size(), [&](std::size_t i) { return exact_associativity_check(*d, rational_pts[i]); });
  o.checks.push_back(aggregate("wdvv_exact", wdvv, 0.0, c.seed));
  o.checks.push_back(aggregate("associativity_exact", assoc, 0.0, c.seed));

  // Exact identities already enforced by the pipeline, restated as checks.
  CheckReport homog = make_report("euler_homogeneity_exact", 0.0, c.seed);
  MultiPoly ef(d->coords.t_vars);
  for (int k = 0; k < n; ++k) ef += MultiPoly::variable(d->coords.t_vars, d->coords.t_vars[k]) * d->F.diff(k) * d->euler.weights[k];
  homog.judge(ef == d->F * d->euler.scalar ? 0.0 : 1.0);
  homog.note("lambda", to_string(d->euler.scalar));
  o.checks.push_back(homog);

  const int pencil_points = std::min(c.samples, 5);
  const auto pts = saito_points(*d, rng, pencil_points);
  Json lambdas = Json::array();
  for (const Complex lambda : {Complex(0, 0), Complex(1, 0), Complex(2, 1)}) {
    const auto gamma = pencil_christoffel(d, lambda);
    auto parts = over_points(pts, [&](const std::vector<Complex>& t) {
      return esk::curvature_check(gamma, t, c.tol("pencil"), c.tol("fd_step"), c.richardson);
    });
    CheckReport r = aggregate("pencil_curvature", parts, c.tol("pencil"), c.seed);
    r.note("lambda", to_json(lambda));
    o.checks.push_back(r);
  }
  return o;
}

inline Outcome run_toda(const RunConfig& c) {
  Outcome o;
  const int n = c.rank;
  const toda::TodaModel model(n);
  Rng rng(c.seed);
  std::vector<std::vector<Complex>> pts;
  for (int s = 0; s < c.samples; ++s) pts.push_back(sample_toda_point(rng, n));
  std::vector<double> scales;
  for (int s = 0; s < c.samples; ++s) scales.push_back(rng.uniform(0.5, 3.0));
  std::vector<ComplexVector> curves;
  for (int s = 0; s < c.samples; ++s) curves.push_back(toda::b_from_roots(sample_traceless_roots(rng, n)));
  const std::vector<std::vector<Complex>> fm_pts(pts.begin(), pts.begin() + std::min<std::size_t>(pts.size(), 10));

  o.checks.push_back(aggregate(
      "toda_gen_wdvv", over_points(pts, [&](const auto& z) { return toda::gen_wdvv_check(model, z, c.tol("gen_wdvv")); }),
      c.tol("gen_wdvv"), c.seed));
  auto fe = aggregate(
      "fe_constancy", over_points(pts, [&](const auto& z) { return toda::f_e_check(model, z, c.tol("fe_const")); }),
      c.tol("fe_const"), c.seed);
  fe.note("expected", "(n+1) I - J");
  o.checks.push_back(fe);
  const std::vector<std::vector<Complex>> fd_pts(pts.begin(),
                                                 pts.begin() + std::min<std::size_t>(pts.size(), c.fd_samples));
  o.checks.push_back(aggregate(
      "fd_oracle", over_points(fd_pts, [&](const auto& z) { return toda::fd_oracle_check(model, z, c.tol("fd_rel")); }),
      c.tol("fd_rel"), c.seed));
  auto hom = parallel_map(pts.size(), [&](std::size_t i) {
    return toda::homogeneity_check(model, pts[i], scales[i], c.tol("homogeneity"));
  });
  o.checks.push_back(aggregate("homogeneity", hom, c.tol("homogeneity"), c.seed));
  const auto provider = toda_provider(n);
  o.checks.push_back(aggregate("fmanifold_identity", over_points(fm_pts, [&](const auto& z) {
                                 return esk::fmanifold_identity_check(provider, esk::VectorField::identity(), z,
                                                                      c.tol("fmanifold"), c.tol("fd_step"), c.richardson);
                               }),
                               c.tol("fmanifold"), c.seed));
  const auto residues =
      parallel_map(curves.size(), [&](std::size_t i) {
        return toda::residue_checks(curves[i], c.tol("residue_sym"), c.tol("residue_wdvv"));
      });
  std::vector<CheckReport> sym;
  std::vector<CheckReport> gw;
  for (const auto& r : residues) {
    sym.push_back(r.symmetry);
    gw.push_back(r.gen_wdvv);
  }
  o.checks.push_back(aggregate("residue_symmetry", sym, c.tol("residue_sym"), c.seed));
  o.checks.push_back(aggregate("residue_gen_wdvv", gw, c.tol("residue_wdvv"), c.seed));
  o.checks.push_back(esk::kahler_positivity_check(provider, pts));
  o.result["rank"] = n;
  return o;
}

inline Outcome run_duality(const RunConfig& c) {
  Outcome o;
  const auto d = build_data(c);
  const int n = d.rank();
  Rng rng(c.seed);
  std::vector<ComplexVector> bs;
  for (int s = 0; s < c.samples; ++s) bs.push_back(toda::b_from_roots(sample_traceless_roots(rng, n)));
  const auto parts =
      parallel_map(bs.size(), [&](std::size_t i) { return toda::duality_check(d, bs[i], c.tol("duality")); });
  CheckReport fit = aggregate("duality_fit", parts, c.tol("duality"), c.seed);
  fit.hard = false;
  std::vector<Complex> constants;
  Json fitted = Json::array();
  for (const auto& p : parts) {
    if (!p.metadata.contains("constant")) continue;
    const auto& k = p.metadata["constant"];
    constants.emplace_back(std::stod(k[0].get<std::string>()), std::stod(k[1].get<std::string>()));
    fitted.push_back(k);
  }
  o.checks.push_back(fit);
  CheckReport spread = make_report("duality_constancy", c.tol("duality"), c.seed);
  spread.hard = false;
  if (constants.size() == parts.size()) {
    spread.judge(toda::constant_spread(constants));
  } else {
    spread.status = Status::error;
    spread.note("error", "some base points produced no fit");
  }
  spread.note("coordinates", "z_i = x_i - x_{n+1}");
  o.checks.push_back(spread);
  Json lit = Json::array();
  for (const auto& p : parts)
    if (p.metadata.contains("literal_coordinates_residual")) lit.push_back(p.metadata["literal_coordinates_residual"]);
  o.result["family"] = d.spec.name();
  o.result["fitted_constants"] = fitted;
  o.result["literal_coordinates_residuals"] = lit;
  return o;
}

/// Parses --V for a provider; "custom:v1,v2,..." gives a constant field.
inline esk::VectorField parse_vector_field(const std::string& spec, const std::string& provider, int n,
                                           const saito::FrobeniusData* d) {
  if (spec == "euler") return provider == "toda" ? esk::VectorField::identity() : saito_euler(*d);
  if (spec == "unit") {
    if (provider == "saito") return saito_unit(n);
    return esk::VectorField::constant(esk::Point(n, Complex(1.0, 0.0)), "unit");
  }
  const std::string prefix = "custom:";
  if (spec.rfind(prefix, 0) != 0) throw UsageError("V must be euler, unit or custom:v1,...,vn");
  esk::Point v;
  std::stringstream ss(spec.substr(prefix.size()));
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.emplace_back(std::stod(item, &used), 0.0);
      if (used != item.size()) throw UsageError("malformed V component: " + item);
    } catch (const std::logic_error&) {
      throw UsageError("malformed V component: " + item);
    }
  }
  if (static_cast<int>(v.size()) != n) throw UsageError("custom V needs " + std::to_string(n) + " components");
  return esk::VectorField::constant(v, spec);
}

inline Outcome run_esk(const RunConfig& c) {
  Outcome o;
  const int n = c.rank;
  Rng rng(c.seed);
  std::shared_ptr<const saito::FrobeniusData> d;
  esk::PrepotentialProvider p;
  std::vector<std::vector<Complex>> pts;
  if (c.provider == "toda") {
    p = toda_provider(n);
    for (int s = 0; s < c.samples; ++s) pts.push_back(sample_toda_point(rng, n));
  } else {
    RunConfig a = c;
    a.lie_type = "A";
    d = std::make_shared<const saito::FrobeniusData>(build_data(a));
    p = saito_provider(d);
    pts = saito_points(*d, rng, c.samples);
  }
  const esk::VectorField V = parse_vector_field(c.V, c.provider, n, d.get());
  const std::string canonical = c.provider == "toda" ? "euler" : "unit";
  const esk::VectorField W = parse_vector_field(c.V == "unit" ? "euler" : "unit", c.provider, n, d.get());
  const std::vector<std::vector<Complex>> fm_pts(pts.begin(), pts.begin() + std::min<std::size_t>(pts.size(), 10));

  auto add = [&](CheckReport r) {
    r.note("V", V.label);
    o.checks.push_back(std::move(r));
  };
  add(aggregate("unit_law", over_points(pts, [&](const auto& z) { return esk::unit_law_check(p, V, z, c.tol("unit")); }),
                c.tol("unit"), c.seed));
  add(aggregate("defmul", over_points(pts, [&](const auto& z) { return esk::defmul_check(p, V, z, c.tol("defmul")); }),
                c.tol("defmul"), c.seed));
  add(aggregate("associativity",
                over_points(pts, [&](const auto& z) { return esk::associativity_check(p, V, z, c.tol("assoc")); }),
                c.tol("assoc"), c.seed));
  add(aggregate("fmanifold_identity", over_points(fm_pts, [&](const auto& z) {
                  return esk::fmanifold_identity_check(p, V, z, c.tol("fmanifold"), c.tol("fd_step"), c.richardson);
                }),
                c.tol("fmanifold"), c.seed));
  const auto g = esk::metric_field(p, V);
  const auto flat = parallel_map(fm_pts.size(), [&](std::size_t i) {
    return esk::flatness_check(g, fm_pts[i], c.tol("flat_const"), c.tol("pencil"), c.tol("fd_step"), c.richardson);
  });
  std::vector<CheckReport> constancy;
  std::vector<CheckReport> curvature;
  for (const auto& f : flat) {
    constancy.push_back(f.constancy);
    curvature.push_back(f.curvature);
  }
  for (auto r : {aggregate("flatness_constancy", constancy, c.tol("flat_const"), c.seed),
                 aggregate("flatness_curvature", curvature, c.tol("pencil"), c.seed)}) {
    if (c.V != canonical) {
      // Flatness is only claimed for the provider's own V.
      r.hard = false;
      if (r.status == Status::fail) r.status = Status::info;
    }
    add(r);
  }
  add(aggregate("rescaling",
                over_points(pts, [&](const auto& z) { return esk::rescaling_check(p, V, W, z, c.tol("rescaling")); }),
                c.tol("rescaling"), c.seed));
  CheckReport fam = esk::degenerate_family_check(p, pts.front(), rng);
  add(fam);
  if (c.provider == "toda") add(esk::kahler_positivity_check(p, pts));
  o.result["provider"] = c.provider;
  o.result["rank"] = n;
  o.result["V"] = V.label;
  o.result["canonical_V"] = canonical;
  return o;
}

inline Outcome dispatch(const RunConfig& c) {
  if (c.command == "catalog") return run_catalog(c);
  if (c.command == "build") return run_build(c);
  if (c.command == "toda") return run_toda(c);
  if (c.command == "duality") return run_duality(c);
  return run_esk(c);
}

inline void write_text(std::ostream& out, const Json& report) {
  out << "frobenius_forge " << report["version"].get<std::string>() << "  " << report["config"]["command"].get<std::string>()
      << "  seed " << report["config"]["seed"] << "\n";
  for (const auto& chk : report["checks"]) {
    char line[256];
    std::snprintf(line, sizeof line, "%-24s %-10s %-5s residual %-24s tol %s\n", chk["name"].get<std::string>().c_str(),
                  chk["status"].get<std::string>().c_str(), chk["hard"].get<bool>() ? "hard" : "soft",
                  chk["max_residual"].get<std::string>().c_str(), chk["tolerance"].get<std::string>().c_str());
    out << line;
  }
  out << "verdict " << report["verdict"].get<std::string>() << "\n";
}

}  // namespace detail

/// Runs one command. The report goes to `out` (or the configured output
/// file); diagnostics go to `err`.
inline int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Json report;
  int code = kOk;
  try {
    validate(config);
    const detail::Outcome o = detail::dispatch(config);
    const bool ok = all_hard_passed(o.checks);
    code = ok ? kOk : kCheckFailed;
    report["schema"] = kSchemaVersion;
    report["tool"] = "frobenius_forge";
    report["version"] = FROBENIUS_FORGE_VERSION;
    report["config"] = config_echo(config);
    report["result"] = o.result;
    Json checks = Json::array();
    for (const auto& r : o.checks) checks.push_back(r.to_json());
    report["checks"] = checks;
    report["verdict"] = ok ? "pass" : "fail";
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const UnsupportedFamily& e) {
    err << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
  std::ofstream file;
  std::ostream* sink = &out;
  if (!config.output.empty()) {
    file.open(config.output);
    if (!file) {
      err << "cannot write " << config.output << "\n";
      return kUsage;
    }
    sink = &file;
  }
  if (config.format == "text") {
    detail::write_text(*sink, report);
  } else {
    *sink << report.dump(2) << "\n";
  }
  return code;
}

}  // namespace frobenius::cli
