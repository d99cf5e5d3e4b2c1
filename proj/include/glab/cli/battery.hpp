#pragma once

#include "glab/boundary/convergence.hpp"
#include "glab/cli/config.hpp"
#include "glab/cli/report.hpp"
#include "glab/graph/contracting.hpp"
#include "glab/groupoid/descriptor.hpp"
#include "glab/ktheory/ktheory.hpp"

#include <functional>
#include <map>

namespace glab::cli {

namespace detail {

inline std::string str(const Rational& r) { return r.str(); }

inline Region random_x_box(const Space& x, Rng& rng) {
  // a proper subset of a finite X, so V stays a proper subset of E^0
  if (x.kind() == SpaceKind::finite && x.size() > 1) return x.singleton(rng.below(x.size()));
  return x.random_box(rng);
}

inline std::vector<std::pair<Point, Point>> as_pairs(const std::set<ModelVertex>& vs) {
  std::vector<std::pair<Point, Point>> out;
  for (const auto& v : vs) out.emplace_back(v.z, v.x);
  return out;
}

inline bool continuous(const Space& x) { return x.kind() == SpaceKind::cantor || x.kind() == SpaceKind::circle; }

inline io::Json seeds_json(const ModelConfig& c) { return c.seeds; }

}  // namespace detail

/// Every vertex has a dense forward orbit in E^0.
inline Record check_minimality(const ModelConfig& c) {
  const ModelGraph g(c.system(), c.x_space());
  const std::uint64_t depth = c.bounds.density_depth;
  // the diagonal enumeration reaches small boxes of a continuous X slowly
  const Rational eps = detail::continuous(g.x_space()) ? Rational(1, 4) : Rational(1, depth);
  Record r{"minimality", "minimality of E: orbit^+(v) is dense in E^0", {}, Verdict::pass, {}};
  r.parameters = {{"eps", detail::str(eps)}, {"depth", depth}, {"vertices_per_seed", 10}, {"seeds", detail::seeds_json(c)}};
  std::uint64_t checked = 0, failed = 0;
  io::Json bad = io::Json::array();
  for (auto seed : c.seeds) {
    Rng rng(seed);
    for (int i = 0; i < 10; ++i) {
      const ModelVertex v = g.random_vertex(rng);
      ++checked;
      if (!is_eps_dense_product(g.z_space(), g.x_space(), detail::as_pairs(model_orbit_plus(g, v, depth)), eps)) {
        ++failed;
        if (bad.size() < 3) bad.push_back(v.to_string());
      }
    }
  }
  r.verdict = failed ? Verdict::fail : Verdict::pass;
  r.evidence = {{"vertices", checked}, {"not_dense", failed}, {"examples", bad}};
  return r;
}

/// rho^k(z) = z forces k = 0 on sampled points.
inline Record check_freeness(const ModelConfig& c) {
  const MinimalSystem sys = c.system();
  Record r{"freeness", "the induced Z-action is free", {}, Verdict::pass, {}};
  r.parameters = {{"bound", c.bounds.isotropy}, {"points_per_seed", 10}, {"seeds", detail::seeds_json(c)}};
  std::uint64_t periodic = 0;
  io::Json ex = io::Json::array();
  for (auto seed : c.seeds) {
    Rng rng(seed);
    for (int i = 0; i < 10; ++i) {
      const Point z = sys.space().random_point(rng);
      const auto ps = freeness_check(sys, z, c.bounds.isotropy);
      if (!ps.empty()) {
        ++periodic;
        if (ex.size() < 3) ex.push_back({{"point", z.to_string()}, {"period", ps.front()}});
      }
    }
  }
  r.verdict = periodic ? Verdict::fail : Verdict::pass;
  r.evidence = {{"periodic_points", periodic}, {"examples", ex}};
  return r;
}

/// U x V_X is contracting, witnessed by the explicit path boxes.
inline Record check_contracting(const ModelConfig& c) {
  const ModelGraph g(c.system(), c.x_space());
  Record r{"contracting", "contracting open set: translates of U and the witness paths", {}, Verdict::pass, {}};
  r.parameters = {{"pairs_per_seed", 10}, {"witness_cap", c.bounds.witness_cap}, {"seeds", detail::seeds_json(c)}};
  std::uint64_t ok = 0, failed = 0;
  std::uint64_t max_n = 0;
  io::Json errs = io::Json::array();
  for (auto seed : c.seeds) {
    Rng rng(seed);
    for (int i = 0; i < 10; ++i) {
      const Region u = g.z_space().random_box(rng);
      const Region vx = detail::random_x_box(g.x_space(), rng);
      try {
        const auto w = find_contracting_witness(g, u, vx, c.bounds.witness_cap);
        const auto rep = verify_contracting_witness(g, w);
        max_n = std::max<std::uint64_t>(max_n, w.n());
        if (rep.passed()) {
          ++ok;
        } else {
          ++failed;
          if (errs.size() < 3) errs.push_back(u.to_string() + ": " + rep.strict_cover.detail);
        }
      } catch (const Error& e) {
        ++failed;
        if (errs.size() < 3) errs.push_back(u.to_string() + ": " + e.what());
      }
    }
  }
  r.evidence = {{"verified", ok}, {"failed", failed}, {"largest_N", max_n}, {"errors", errs}};
  if (c.z_backend == "golden-rotation") {
    const auto n = covering_translates(g.system(), IntervalSet::open_arc(QPhi(0), QPhi(Rational(1, 4))), c.bounds.witness_cap);
    r.evidence["quarter_arc_N"] = n ? io::Json(*n) : io::Json(nullptr);
  }
  r.verdict = failed ? Verdict::fail : Verdict::pass;
  return r;
}

/// Every vertex of the model graph is singular, so E^0_rg is empty.
inline Record check_no_regular_vertices(const ModelConfig& c) {
  const ModelGraph g(c.system(), c.x_space());
  Record r{"no-regular-vertices", "E^0_rg is empty: r^-1(V) has unbounded edge indices", {}, Verdict::pass, {}};
  r.parameters = {{"vertices_per_seed", 10}, {"seeds", detail::seeds_json(c)}};
  std::uint64_t regular = 0, checked = 0, witnessed = 0;
  for (auto seed : c.seeds) {
    Rng rng(seed);
    for (int i = 0; i < 10; ++i) {
      const ModelVertex v = g.random_vertex(rng);
      ++checked;
      if (!g.is_singular(v)) ++regular;
      // r^-1 of a small ball around v contains edges (rho^-1 z, x, m) of ever larger index m
      const Rational eps = detail::continuous(g.x_space()) ? Rational(1, 16) : Rational(0);
      std::uint64_t hits = 0;
      for (std::uint64_t m = 1; m <= 4096 && hits < 4; ++m) {
        const ModelEdge e{g.system().backward(v.z), v.x, m};
        const ModelVertex t = g.range(e);
        if (t.z == v.z && g.x_space().within(t.x, v.x, eps)) ++hits;
      }
      const bool unbounded = hits >= 4;
      if (unbounded) ++witnessed;
    }
  }
  r.verdict = regular || witnessed != checked ? Verdict::fail : Verdict::pass;
  r.evidence = {{"vertices", checked}, {"regular", regular}, {"unbounded_receivers", witnessed}};
  return r;
}

/// K_*(O(E)) = K_*(C_0(X)) with the unit class, via E^0_rg empty and the point-like Z.
inline Record check_ktheory(const ModelConfig& c) {
  const Space x = c.x_space();
  Record r{"ktheory", "K-theory: E^0_rg empty gives K_*(O(E)) = K_*(C_0(Z x X)) = K_*(C_0(X))", {}, Verdict::pass, {}};
  r.parameters = {{"x_backend", c.x_backend}, {"z_backend", c.z_backend}};
  try {
    const KTheory k = model_ktheory(c.system(), x);
    const KTheory d = declared_space_ktheory(x);
    const bool unit_ok = x.is_compact() ? k.k0.unit_class == d.k0.unit_class : !k.k0.unit_class.has_value();
    const bool same = k.k0.without_unit() == d.k0.without_unit() && k.k1 == d.k1;
    r.verdict = same && unit_ok ? Verdict::pass : Verdict::fail;
    r.evidence = {{"k0", k.k0.to_string()}, {"k1", k.k1.to_string()}, {"provenance", k.provenance}};
  } catch (const Error& e) {
    r.verdict = Verdict::fail;
    r.evidence = {{"error", e.what()}};
  }
  return r;
}

/// Sampled isotropy search backed by the exact freeness reduction.
inline Record check_principality(const ModelConfig& c) {
  const ModelGraph g(c.system(), c.x_space());
  Record r{"principality", "G(dE, sigma_E) is principal", {}, Verdict::pass, {}};
  r.parameters = {{"samples", c.bounds.samples}, {"bound", c.bounds.isotropy}, {"seeds", detail::seeds_json(c)}};
  io::Json per = io::Json::array();
  bool ok = true;
  for (auto seed : c.seeds) {
    const auto rep = principality_sample(g, c.bounds.samples, c.bounds.isotropy, seed);
    ok = ok && rep.principal();
    io::Json e = {{"seed", seed},
                  {"samples", rep.samples},
                  {"finite", rep.finite_samples},
                  {"isotropic", rep.isotropic},
                  {"symbolic_failures", rep.symbolic_failures}};
    if (rep.first_isotropy) e["first_isotropy"] = *rep.first_isotropy;
    per.push_back(e);
  }
  r.verdict = ok ? Verdict::pass : Verdict::fail;
  r.evidence = {{"per_seed", per}};
  return r;
}

inline Record check_groupoid_axioms(const ModelConfig& c) {
  const ModelGraph g(c.system(), c.x_space());
  Record r{"groupoid-axioms", "plumbing", {}, Verdict::pass, {}};
  r.parameters = {{"trials", c.bounds.axiom_trials}, {"seeds", detail::seeds_json(c)}};
  const auto G = dr_groupoid(g);
  std::uint64_t failures = 0;
  io::Json first = nullptr;
  for (auto seed : c.seeds) {
    const auto rep = axiom_sample(*G, c.bounds.axiom_trials, seed);
    failures += rep.total_failures();
    if (first.is_null() && rep.first_failure) first = *rep.first_failure;
  }
  r.verdict = failures ? Verdict::fail : Verdict::pass;
  r.evidence = {{"failures", failures}, {"first_failure", first}};
  return r;
}

/// B(U, 1, 0, V) with a fixed first index is a bisection; a free first index is not.
inline Record check_bisections(const ModelConfig& c) {
  const ModelGraph g(c.system(), c.x_space());
  Record r{"bisections", "basic open sets B(U,n,m,V) with sigma^n|U, sigma^m|V injective", {}, Verdict::pass, {}};
  const EdgeBox any{g.z_space().full_region(), g.x_space().full_region(), index_all()};
  EdgeBox fixed = any;
  fixed.index = index_single(3);
  std::uint64_t sampled = 0, failures = 0;
  bool rejected = true;
  for (auto seed : c.seeds) {
    const auto ok = basic_bisection(g, {1, 0, OpenPathBox{{fixed, any}}, OpenPathBox{}}, 20, seed);
    sampled += ok.sampled;
    failures += ok.passed() ? ok.failures : 1;
    rejected = rejected && !basic_bisection(g, {1, 0, OpenPathBox{{any}}, OpenPathBox{}}, 1, seed).certificate;
  }
  r.parameters = {{"seeds", detail::seeds_json(c)}, {"samples_per_seed", 20}};
  r.verdict = failures == 0 && rejected ? Verdict::pass : Verdict::fail;
  r.evidence = {{"sampled", sampled}, {"failures", failures}, {"free_first_index_rejected", rejected}};
  return r;
}

/// shift o f = f o (rho^-1 x shift), and the same through h over a one-point X.
inline Record check_conjugacy(const ModelConfig& c) {
  const MinimalSystem sys = c.system();
  const ModelGraph g(sys, c.x_space());
  const ModelGraph gp(sys, Space::point());
  const DiscreteGraph f = DiscreteGraph::o_infinity();
  const std::uint64_t n = 2 * c.bounds.samples;
  Record r{"conjugacy", "parameterisations f and h intertwine the shifts", {}, Verdict::pass, {}};
  r.parameters = {{"samples", n}, {"seed", c.seeds.front()}};
  Rng rng(c.seeds.front());
  std::uint64_t bad_f = 0, bad_h = 0, done_h = 0;
  std::uint64_t done_f = 0;
  while (done_f < n) {
    const ModelPath p = random_boundary_path(g, rng);
    if (p.is_finite()) continue;
    ++done_f;
    const auto [z0, idx] = param_f_inv(p);
    if (!(p.shift(g) == param_f(g, sys.backward(z0), idx.tail()))) ++bad_f;
  }
  while (done_h < n) {
    const Point z = gp.z_space().random_point(rng);
    const FPath nu = random_boundary_path(f, rng);
    if (nu.length() == std::size_t{0}) continue;
    ++done_h;
    if (!(homeo_h(gp, z, nu).shift(gp) == homeo_h(gp, sys.backward(z), nu.shift(f)))) ++bad_h;
  }
  r.verdict = bad_f || bad_h ? Verdict::fail : Verdict::pass;
  r.evidence = {{"f_mismatches", bad_f}, {"h_mismatches", bad_h}, {"h_graph", gp.name()}};
  return r;
}

/// The three worked sequences, then random convergent product sequences through h.
inline Record check_convergence(const ModelConfig& c) {
  const MinimalSystem sys = c.system();
  const ModelGraph g(sys, Space::point());
  const DiscreteGraph f = DiscreteGraph::o_infinity();
  const Point star = Point::finite(0);
  Record r{"convergence", "convergence of sequences of boundary paths", {}, Verdict::pass, {}};
  r.parameters = {{"product_sequences", 50}, {"seed", c.seeds.front()}, {"graph", g.name()}};
  Rng rng(c.seeds.front());
  const Point z = g.z_space().random_point(rng);
  const ModelPath vertex(FinitePath<ModelGraph>::vertex({z, star}));
  const ModelPath mu = param_f(g, z, EventuallyPeriodic<std::uint64_t>({2}, {1, 3}));
  const Tri constant = converges(g, ModelSequence{{}, mu}, mu).verdict();
  const ModelTail esc{ZRule::constant(z), star, {}, IndexEscape{IndexEscape::Kind::linear, 0, 0}, std::nullopt};
  const Tri escaping = converges(g, ModelSequence{{}, esc}, vertex).verdict();
  const ModelPath e7(FinitePath<ModelGraph>::from_edges(g, {ModelEdge{sys.backward(z), star, 7}}));
  const auto fixed_rep = converges(g, ModelSequence{{}, e7}, vertex);
  std::uint64_t through_h = 0;
  for (int i = 0; i < 50; ++i) {
    const auto s = random_convergent_product_sequence(g, f, rng);
    if (product_converges(g, f, s.sequence, s.z, s.limit) == Tri::yes &&
        converges(g, h_image(g, s.sequence), homeo_h(g, s.z, s.limit)).verdict() == Tri::yes)
      ++through_h;
  }
  const bool ok = constant == Tri::yes && escaping == Tri::yes && fixed_rep.verdict() == Tri::no &&
                  fixed_rep.escape.verdict == Tri::no && through_h == 50;
  r.verdict = ok ? Verdict::pass : Verdict::fail;
  r.evidence = {{"constant", to_string(constant)},
                {"escaping_index", to_string(escaping)},
                {"fixed_index", to_string(fixed_rep.verdict())},
                {"fixed_index_condition_iii", fixed_rep.escape.detail},
                {"convergent_through_h", through_h}};
  return r;
}

inline Record check_dimension(const ModelConfig& c) {
  const MinimalSystem sys = c.system();
  const Space x = c.x_space();
  Record r{"dimension", "dim(dE) <= dim(E^inf) + dim(E*) + 1", {}, Verdict::pass, {}};
  r.parameters = {{"declared_dim_z", sys.declared_dimensions()}, {"dim_x", x.dimension()}};
  io::Json rows = io::Json::array();
  bool ok = true;
  for (unsigned dz : sys.declared_dimensions()) {
    const auto res = dim_bound(DimBudget::for_system(sys, dz, x));
    ok = ok && res.bound == 2 * dz + x.dimension() + 1 && (x.is_point() ? res.refined == dz : !res.refined);
    io::Json row = {{"dim_z", dz}, {"bound", res.bound}};
    row["refined"] = res.refined ? io::Json(*res.refined) : io::Json(nullptr);
    rows.push_back(row);
  }
  r.verdict = ok ? Verdict::pass : Verdict::fail;
  r.evidence = {{"rows", rows}};
  return r;
}

inline Record record_classification(const ModelConfig&) {
  return {"classification",
          "classification of Kirchberg algebras by K-theory",
          io::Json::object(),
          Verdict::cited,
          {{"note", "the final isomorphisms follow from the classification theorem; not computed here"}}};
}

using Check = std::function<Record(const ModelConfig&)>;

/// Checks in the order of the construction: minimality, contracting, E^0_rg, K-theory,
/// principality, dimension.
inline const std::vector<std::pair<std::string, Check>>& checks() {
  static const std::vector<std::pair<std::string, Check>> all = {
      {"minimality", check_minimality},
      {"freeness", check_freeness},
      {"contracting", check_contracting},
      {"no-regular-vertices", check_no_regular_vertices},
      {"ktheory", check_ktheory},
      {"groupoid-axioms", check_groupoid_axioms},
      {"bisections", check_bisections},
      {"principality", check_principality},
      {"conjugacy", check_conjugacy},
      {"convergence", check_convergence},
      {"dimension", check_dimension},
      {"classification", record_classification},
  };
  return all;
}

inline std::vector<std::string> check_names() {
  std::vector<std::string> out;
  for (const auto& [n, _] : checks()) out.push_back(n);
  return out;
}

inline Record run_check(const std::string& name, const ModelConfig& c) {
  for (const auto& [n, f] : checks())
    if (n == name) return f(c);
  std::string list;
  for (const auto& n : check_names()) list += (list.empty() ? "" : ", ") + n;
  throw PreconditionError("unknown check '" + name + "'; available: " + list);
}

inline Report run_battery(const ModelConfig& c) {
  Report rep;
  rep.config = c.to_json();
  for (const auto& [_, f] : checks()) rep.records.push_back(f(c));
  return rep;
}

}  // namespace glab::cli
