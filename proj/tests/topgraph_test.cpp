#include "glab/graph/contracting.hpp"
#include "glab/graph/graph_json.hpp"
#include "support/oracles.hpp"

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <gtest/gtest.h>

using namespace glab;

namespace {

Point cz(std::int64_t v) { return CantorPoint::from_rational(Rational(v)); }
Point circ(const Rational& r) { return Point::circle(QPhi(r)); }

std::vector<std::pair<Point, Point>> as_pairs(const std::set<ModelVertex>& vs) {
  std::vector<std::pair<Point, Point>> out;
  for (const auto& v : vs) out.emplace_back(v.z, v.x);
  return out;
}

Region random_x_box(const Space& x, Rng& rng) {
  if (x.kind() == SpaceKind::finite && x.size() > 1) {
    // a proper subset, so V is a proper subset of E^0 even when U is large
    return FiniteSet::single(x.size(), rng.below(x.size()));
  }
  return x.random_box(rng);
}

}  // namespace

TEST(ModelGraph, RangeExamples) {
  const ModelGraph od(MinimalSystem::odometer(), Space::point());
  EXPECT_EQ(od.range(ModelEdge{cz(0), Point::finite(0), 5}), (ModelVertex{cz(1), Point::finite(0)}));
  EXPECT_EQ(cz(1), Point::cantor({1}, {0}));

  const ModelGraph gr(MinimalSystem::golden_rotation(), Space::finite(2));
  EXPECT_EQ(gr.x_at(1), Point::finite(0));
  EXPECT_EQ(gr.x_at(2), Point::finite(1));
  EXPECT_EQ(gr.range(ModelEdge{circ(0), Point::finite(0), 2}), (ModelVertex{Point::circle(QPhi(-1, 1)), Point::finite(1)}));
}

TEST(ModelGraph, DomainAndRangeAreTheDefiningFormulas) {
  Rng rng(1);
  for (const auto& sys : {MinimalSystem::golden_rotation(), MinimalSystem::odometer()}) {
    for (const Space& x : {Space::point(), Space::finite(3), Space::cantor(), Space::circle()}) {
      const ModelGraph g(sys, x);
      for (int i = 0; i < 100; ++i) {
        const ModelVertex v = g.random_vertex(rng);
        const ModelEdge e = g.random_edge_with_domain(v, rng, 50);
        EXPECT_EQ(g.domain(e), v);
        EXPECT_EQ(g.range(e), g.range(e));
        EXPECT_EQ(g.range(e).z, sys.forward(e.z));
        EXPECT_EQ(g.range(e).x, dense_sequence(x, e.index));
        EXPECT_TRUE(g.is_singular(v));
      }
    }
  }
  EXPECT_THROW(ModelGraph(MinimalSystem::odometer(), Space::product(Space::point(), Space::point())), UnsupportedError);
}

TEST(ComposePaths, Examples) {
  const ModelGraph g(MinimalSystem::golden_rotation(), Space::finite(2));
  const ModelVertex v{circ(Rational(1, 3)), Point::finite(1)};
  const auto pv = FinitePath<ModelGraph>::vertex(v);
  EXPECT_EQ(compose_paths(g, pv, pv), pv);

  const auto w = witness_path(g, Point::finite(1), circ(Rational(1, 5)), 1);
  const auto a = FinitePath<ModelGraph>::from_edges(g, {w.edge(1)});
  const auto b = FinitePath<ModelGraph>::from_edges(g, {w.edge(2)});
  EXPECT_EQ(compose_paths(g, a, b), w);

  const auto e1 = FinitePath<ModelGraph>::from_edges(g, {ModelEdge{circ(0), Point::finite(0), 1}});
  const auto e2 = FinitePath<ModelGraph>::from_edges(g, {ModelEdge{circ(Rational(1, 2)), Point::finite(0), 2}});
  // d(e1) = (0, a) while r(e2) = (rho(1/2), b)
  try {
    compose_paths(g, e1, e2);
    FAIL() << "expected a composability error";
  } catch (const ComposabilityError& err) {
    EXPECT_NE(std::string(err.what()).find("junction 1|2"), std::string::npos);
  }
}

TEST(ComposePaths, LengthsAndEndpoints) {
  Rng rng(2);
  const ModelGraph g(MinimalSystem::odometer(), Space::finite(3));
  for (int t = 0; t < 50; ++t) {
    const ModelVertex v = g.random_vertex(rng);
    std::vector<ModelEdge> es;
    ModelVertex cur = v;
    const int len = 1 + static_cast<int>(rng.below(6));
    for (int i = 0; i < len; ++i) {
      es.insert(es.begin(), g.random_edge_with_domain(cur, rng, 20));
      cur = g.range(es.front());
    }
    const auto full = FinitePath<ModelGraph>::from_edges(g, es);
    const std::size_t cut = rng.below(es.size() + 1);
    auto mu = cut == 0 ? FinitePath<ModelGraph>::vertex(full.range(g))
                       : FinitePath<ModelGraph>::from_edges(g, {es.begin(), es.begin() + static_cast<std::ptrdiff_t>(cut)});
    auto nu = cut == es.size() ? FinitePath<ModelGraph>::vertex(v)
                               : FinitePath<ModelGraph>::from_edges(g, {es.begin() + static_cast<std::ptrdiff_t>(cut), es.end()});
    const auto c = compose_paths(g, mu, nu);
    EXPECT_EQ(c, full);
    EXPECT_EQ(c.length(), mu.length() + nu.length());
    EXPECT_EQ(c.domain(), nu.domain());
    EXPECT_EQ(c.range(g), mu.range(g));
  }
}

TEST(OrbitPlus, Examples) {
  const ModelGraph g(MinimalSystem::odometer(), Space::point());
  const ModelVertex v{cz(0), Point::finite(0)};
  EXPECT_EQ(orbit_plus(g, v, 0), (std::set<ModelVertex>{v}));
  EXPECT_EQ(orbit_plus(g, v, 1), (std::set<ModelVertex>{v, {cz(1), Point::finite(0)}}));
  for (std::uint64_t d = 0; d <= 12; ++d) EXPECT_EQ(orbit_plus(g, v, d).size(), d + 1);
}

TEST(OrbitPlus, SearchAgreesWithClosedFormAndGrows) {
  Rng rng(3);
  for (const auto& sys : {MinimalSystem::golden_rotation(), MinimalSystem::odometer()}) {
    for (const Space& x : {Space::point(), Space::finite(3), Space::cantor(), Space::circle()}) {
      const ModelGraph g(sys, x);
      for (int t = 0; t < 3; ++t) {
        const ModelVertex v = g.random_vertex(rng);
        std::set<ModelVertex> prev;
        for (std::uint64_t d = 0; d <= 10; ++d) {
          const auto o = orbit_plus(g, v, d);
          EXPECT_EQ(o, model_orbit_plus(g, v, d));
          EXPECT_TRUE(std::includes(o.begin(), o.end(), prev.begin(), prev.end()));
          prev = o;
        }
      }
    }
  }
}

TEST(OrbitPlus, ForwardOrbitsAreDense) {
  Rng rng(4);
  for (const auto& sys : {MinimalSystem::golden_rotation(), MinimalSystem::odometer()}) {
    for (const Space& x : {Space::point(), Space::finite(3)}) {
      const ModelGraph g(sys, x);
      for (int t = 0; t < 10; ++t) {
        const ModelVertex v = g.random_vertex(rng);
        // depth 2 reaches only x_1, x_2, so a 3-point X starts at n = 2
        for (unsigned n = x.size() > 2 ? 2 : 1; n <= 6; ++n) {
          const auto o = model_orbit_plus(g, v, std::uint64_t{1} << n);
          EXPECT_TRUE(is_eps_dense_product(g.z_space(), x, as_pairs(o), Rational(1, Integer(1) << n)))
              << g.name() << " n=" << n;
        }
      }
    }
  }
}

TEST(OrbitPlus, ForwardOrbitsAreDenseOverContinuousX) {
  // The diagonal enumeration of X reaches small boxes slowly, so the depth is larger.
  for (const auto& sys : {MinimalSystem::golden_rotation(), MinimalSystem::odometer()}) {
    for (const Space& x : {Space::cantor(), Space::circle()}) {
      const ModelGraph g(sys, x);
      const ModelVertex v{sys.space().box_point(0), x.box_point(0)};
      const auto o = model_orbit_plus(g, v, 64);
      EXPECT_TRUE(is_eps_dense_product(g.z_space(), x, as_pairs(o), Rational(1, 4))) << g.name();
    }
  }
}

TEST(WitnessPath, ShapeRangeAndDomain) {
  const ModelGraph g(MinimalSystem::golden_rotation(), Space::finite(3));
  const Point z = circ(Rational(2, 7));
  const Point x = Point::finite(2);
  const auto& rho = g.system();
  const auto w1 = witness_path(g, x, z, 1);
  ASSERT_EQ(w1.length(), 2u);
  EXPECT_EQ(w1.edge(1), (ModelEdge{rho.power(z, -1), g.x_at(1), 1}));
  EXPECT_EQ(w1.edge(2), (ModelEdge{rho.power(z, -2), x, 1}));

  Rng rng(5);
  for (const auto& sys : {MinimalSystem::golden_rotation(), MinimalSystem::odometer()}) {
    const ModelGraph h(sys, Space::finite(3));
    for (int t = 0; t < 20; ++t) {
      const ModelVertex v = h.random_vertex(rng);
      for (std::uint64_t k = 1; k <= 5; ++k) {
        const auto w = witness_path(h, v.x, v.z, k);  // from_edges checks every junction
        EXPECT_EQ(w.length(), k + 1);
        EXPECT_EQ(w.range(h), (ModelVertex{v.z, h.x_at(1)}));
        EXPECT_EQ(w.domain(), (ModelVertex{sys.power(v.z, -static_cast<std::int64_t>(k + 1)), v.x}));
      }
    }
  }
  EXPECT_THROW(witness_path(g, x, z, 0), PreconditionError);
}

TEST(Pitchfork, Examples) {
  const ModelGraph g(MinimalSystem::odometer(), Space::point());
  const Region u = CylinderSet::cylinder({0});
  const auto b2 = witness_box(g, u, 2, 1);
  const auto pb = pitchfork(b2, b2);
  ASSERT_TRUE(pb.has_value());
  EXPECT_EQ(*pb, b2);

  OpenPathBox a{{EdgeBox{CylinderSet::full(), FiniteSet::full(1), index_set({1, 2})}}};
  OpenPathBox b{{EdgeBox{CylinderSet::full(), FiniteSet::full(1), index_set({3})}}};
  EXPECT_FALSE(pitchfork(a, b).has_value());

  for (std::uint64_t k = 1; k <= 6; ++k)
    for (std::uint64_t l = 1; l <= 6; ++l) {
      const auto p = pitchfork(witness_box(g, u, k, 1), witness_box(g, u, l, 1));
      EXPECT_EQ(p.has_value(), k == l) << k << "," << l;
    }
}

TEST(Pitchfork, IsSymmetric) {
  Rng rng(6);
  const ModelGraph g(MinimalSystem::golden_rotation(), Space::cantor());
  auto random_box = [&] {
    OpenPathBox b;
    const std::size_t n = 1 + rng.below(4);
    for (std::size_t i = 0; i < n; ++i) {
      std::set<std::uint64_t> idx;
      for (int j = 0; j < 3; ++j) idx.insert(1 + rng.below(4));
      b.coords.push_back({g.z_space().random_box(rng), g.x_space().random_box(rng),
                          rng.coin() ? index_set(idx) : index_set(idx).complement()});
    }
    return b;
  };
  for (int t = 0; t < 200; ++t) {
    const auto a = random_box(), b = random_box();
    EXPECT_EQ(pitchfork(a, b), pitchfork(b, a));
  }
}

TEST(ContractingWitness, GoldenQuarterArcMatchesSweep) {
  const ModelGraph g(MinimalSystem::golden_rotation(), Space::point());
  const Region u = IntervalSet::open_arc(QPhi(0), QPhi(Rational(1, 4)));
  const auto w = find_contracting_witness(g, u, FiniteSet::full(1));
  EXPECT_EQ(w.n(), oracle::golden_cover_oracle(Rational(1, 4), 100));
  EXPECT_EQ(w.n(), 5u);
  for (const Rational& len : {Rational(1, 2), Rational(1, 3), Rational(1, 10), Rational(1, 50)}) {
    const auto n = covering_translates(g.system(), IntervalSet::open_arc(QPhi(Rational(1, 7)), QPhi(len)), 1000);
    ASSERT_TRUE(n.has_value());
    EXPECT_EQ(*n, oracle::golden_cover_oracle(len, 1000)) << len;
  }
  EXPECT_TRUE(verify_contracting_witness(g, w).passed());
}

TEST(ContractingWitness, OdometerCylinder) {
  const ModelGraph g(MinimalSystem::odometer(), Space::point());
  const auto w = find_contracting_witness(g, CylinderSet::cylinder({0}), FiniteSet::full(1));
  EXPECT_EQ(w.n(), 2u);
  const auto rep = verify_contracting_witness(g, w);
  EXPECT_TRUE(rep.passed()) << rep.strict_cover.detail;
}

TEST(ContractingWitness, RangeOfEveryBoxIsUTimesFirstPoint) {
  const ModelGraph g(MinimalSystem::golden_rotation(), Space::finite(4));
  const Region u = IntervalSet::open_arc(QPhi(Rational(1, 3)), QPhi(Rational(1, 5)));
  const Region vx = FiniteSet::single(4, 0);
  const auto w = find_contracting_witness(g, u, vx);
  EXPECT_EQ(w.first_index, 1u);
  for (const auto& b : w.boxes) {
    EXPECT_EQ(range_z_image(g, b), u);
    EXPECT_EQ(b.coords.front().index, index_single(1));
    EXPECT_EQ(g.x_at(1), Point::finite(0));
  }
  // sampled paths of each box have range in U x {x_1}
  Rng rng(7);
  for (std::size_t k = 1; k <= w.n(); ++k)
    for (int t = 0; t < 5; ++t) {
      const Point z = u.some_point();
      const auto p = witness_path(g, g.x_space().random_point(rng), g.system().power(z, 0), k);
      EXPECT_TRUE(w.boxes[k - 1].contains(p));
      EXPECT_EQ(p.range(g), (ModelVertex{z, g.x_at(1)}));
    }
}

TEST(ContractingWitness, RandomBoxesVerifyOnEveryBackend) {
  Rng rng(8);
  for (const auto& sys : {MinimalSystem::golden_rotation(), MinimalSystem::odometer()}) {
    for (const Space& x : {Space::point(), Space::finite(3), Space::cantor(), Space::circle()}) {
      const ModelGraph g(sys, x);
      for (int t = 0; t < 10; ++t) {
        const Region u = sys.space().random_box(rng);
        const Region vx = random_x_box(x, rng);
        const auto w = find_contracting_witness(g, u, vx);
        const auto rep = verify_contracting_witness(g, w);
        EXPECT_TRUE(rep.passed()) << g.name() << " U=" << u.to_string() << " VX=" << vx.to_string() << ": "
                                  << rep.range_inside.detail << " / " << rep.disjoint.detail << " / "
                                  << rep.strict_cover.detail;
      }
    }
  }
}

TEST(ContractingWitness, EngineeredFailures) {
  const ModelGraph g(MinimalSystem::golden_rotation(), Space::point());
  const Region u = IntervalSet::open_arc(QPhi(0), QPhi(Rational(1, 4)));
  const auto w = find_contracting_witness(g, u, FiniteSet::full(1));

  ContractingWitness short_w = w;
  short_w.boxes = {w.boxes[1]};
  const auto r1 = verify_contracting_witness(g, short_w);
  EXPECT_TRUE(r1.range_inside.pass);
  EXPECT_TRUE(r1.disjoint.pass);
  EXPECT_FALSE(r1.strict_cover.pass);

  ContractingWitness dup = w;
  dup.boxes.push_back(w.boxes.front());
  const auto r2 = verify_contracting_witness(g, dup);
  EXPECT_FALSE(r2.disjoint.pass);
  EXPECT_TRUE(r2.strict_cover.pass);

  ContractingWitness wrong_range = w;
  wrong_range.v.z = IntervalSet::open_arc(QPhi(0), QPhi(Rational(1, 8)));
  EXPECT_FALSE(verify_contracting_witness(g, wrong_range).range_inside.pass);
}

TEST(ContractingWitness, Preconditions) {
  const ModelGraph g(MinimalSystem::golden_rotation(), Space::finite(2));
  EXPECT_THROW(find_contracting_witness(g, IntervalSet::full(), FiniteSet::full(2)), PreconditionError);
  EXPECT_THROW(find_contracting_witness(g, IntervalSet::empty(), FiniteSet::full(2)), PreconditionError);
  EXPECT_THROW(find_contracting_witness(g, IntervalSet::open_arc(QPhi(0), QPhi(Rational(1, 1000))), FiniteSet::full(2), 3),
               SearchExhausted);
  const ModelGraph d(MinimalSystem::odometer(), Space::countable_discrete());
  EXPECT_THROW(find_contracting_witness(d, CylinderSet::cylinder({1}), FiniteSet::full(std::nullopt)), PreconditionError);
  EXPECT_TRUE(verify_contracting_witness(d, find_contracting_witness(d, CylinderSet::cylinder({1}),
                                                                     FiniteSet::single(std::nullopt, 4)))
                  .passed());
}

TEST(DiscreteGraph, JsonIngestAndRegularity) {
  const auto doc = io::parse_json(R"({"vertices":["u","v"],
    "edges":[{"source":"u","target":"v","count":2,"label":"a"},
             {"source":"v","target":"v","count":"infinite"}],
    "regularity":{}})", "g");
  const auto g = graph_from_json(doc);
  EXPECT_EQ(g.vertex_count(), 2u);
  EXPECT_TRUE(g.is_singular({0}));   // receives nothing
  EXPECT_TRUE(g.is_singular({1}));   // receives infinitely many
  EXPECT_EQ(g.in_degree(0), std::optional<std::uint64_t>(0));
  EXPECT_FALSE(g.in_degree(1).has_value());

  EXPECT_THROW(graph_from_json(io::parse_json(R"({"vertices":["u"],"regularity":{"u":"regular"}})", "g")), ParseError);
  EXPECT_THROW(graph_from_json(io::parse_json(R"({"vertices":["u"],"edges":[{"source":"u","target":"w"}]})", "g")),
               ParseError);
  try {
    io::parse_json("{\n  \"vertices\": [\n  \"u\",\n]\n}", "bad.json");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("bad.json:4"), std::string::npos) << e.what();
  }
  const auto f = DiscreteGraph::o_infinity();
  EXPECT_TRUE(f.is_singular({0}));
  EXPECT_FALSE(DiscreteGraph::cuntz(2).is_singular({0}));
}
