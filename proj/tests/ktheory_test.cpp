#include "glab/ktheory/ktheory.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <chrono>
#include <functional>

using namespace glab;

namespace {

DiscreteGraph loops(std::uint64_t n, bool regular) {
  DiscreteGraph g;
  g.add_vertex("v");
  g.add_edges(0, 0, n);
  if (!regular) g.set_regularity(0, Regularity::singular);
  return g;
}

IntMatrix random_matrix(Rng& rng, std::size_t r, std::size_t c, int spread) {
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<long long>(rng.below(2 * spread + 1)) - spread;
  return m;
}

}  // namespace

TEST(Snf, Examples) {
  const auto id = snf(IntMatrix::identity(3));
  EXPECT_EQ(id.d, IntMatrix::identity(3));

  const IntMatrix m{{2, 4}, {6, 8}};
  const auto s = snf(m);
  EXPECT_EQ(s.d, (IntMatrix{{2, 0}, {0, 4}}));
  const auto o = oracle::determinantal_oracle(m);
  EXPECT_EQ(o.torsion, (std::vector<Integer>{2, 4}));

  const auto z = snf(IntMatrix(3, 2));
  EXPECT_EQ(z.d, IntMatrix(3, 2));
  EXPECT_EQ(z.p, IntMatrix::identity(3));
  EXPECT_EQ(z.q, IntMatrix::identity(2));
}

TEST(Snf, RandomMatricesSatisfyTheContract) {
  Rng rng(12);
  for (int t = 0; t < 300; ++t) {
    const std::size_t r = 1 + rng.below(8), c = 1 + rng.below(8);
    const IntMatrix m = random_matrix(rng, r, c, 1 + static_cast<int>(rng.below(6)));
    const auto s = snf(m);
    EXPECT_EQ(s.p * m * s.q, s.d);
    EXPECT_TRUE(s.d.is_diagonal());
    EXPECT_EQ(abs(determinant(s.p)), 1);
    EXPECT_EQ(abs(determinant(s.q)), 1);
    const auto inv = s.invariants();
    for (std::size_t i = 0; i < inv.size(); ++i) {
      EXPECT_GT(inv[i], 0);
      if (i) {
        EXPECT_EQ(inv[i] % inv[i - 1], 0);
      }
    }
    // zero diagonal entries come last
    for (std::size_t i = inv.size(); i < std::min(r, c); ++i) EXPECT_EQ(s.d(i, i), 0);
  }
}

TEST(Snf, AgreesWithDeterminantalDivisors) {
  Rng rng(13);
  for (int t = 0; t < 300; ++t) {
    const IntMatrix m = random_matrix(rng, 1 + rng.below(4), 1 + rng.below(4), 5);
    const auto o = oracle::determinantal_oracle(m);
    const auto k = cokernel(m);
    EXPECT_EQ(k.rank, o.coker_rank);
    EXPECT_EQ(k.torsion, o.torsion);
    EXPECT_EQ(kernel(m).rank, o.ker_rank);
  }
}

TEST(Determinant, MatchesCofactorExpansion) {
  Rng rng(14);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng.below(5);
    const IntMatrix m = random_matrix(rng, n, n, 4);
    std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
    EXPECT_EQ(determinant(m), oracle::cofactor_det(a));
  }
}

TEST(GraphKTheory, CuntzAlgebras) {
  const KTheory f = graph_ktheory(DiscreteGraph::o_infinity());
  EXPECT_EQ(f.k0, FGAbelianGroup::pointed_integers());
  EXPECT_TRUE(f.k1.is_zero());

  const KTheory o2 = graph_ktheory(DiscreteGraph::cuntz(2));
  EXPECT_TRUE(o2.k0.is_zero());
  EXPECT_TRUE(o2.k1.is_zero());

  const KTheory o3 = graph_ktheory(DiscreteGraph::cuntz(3));
  EXPECT_EQ(o3.k0.rank, 0u);
  EXPECT_EQ(o3.k0.torsion, (std::vector<Integer>{2}));
  EXPECT_EQ(o3.k0.to_string(), "rank 0, torsion [2], unit [1]");
  EXPECT_TRUE(o3.k1.is_zero());

  // O_n: K_0 = Z/(n-1) with the unit as generator
  for (std::uint64_t n = 3; n <= 9; ++n) {
    const KTheory k = graph_ktheory(loops(n, true));
    EXPECT_EQ(k.k0.torsion, (std::vector<Integer>{Integer(n - 1)}));
    EXPECT_EQ(*k.k0.unit_class, (std::vector<Integer>{1}));
  }
  // finitely many loops at a singular vertex: no relation at all
  EXPECT_EQ(graph_ktheory(loops(2, false)).k0, FGAbelianGroup::pointed_integers());
}

TEST(GraphKTheory, UnitClassByHand) {
  // a receives two edges from b; b receives nothing. coker of (1,-2)^t is Z via (x,y) -> 2x + y
  DiscreteGraph g;
  g.add_vertex("a");
  g.add_vertex("b");
  g.add_edges(1, 0, 2);
  const KTheory k = graph_ktheory(g);
  EXPECT_EQ(k.k0.rank, 1u);
  EXPECT_TRUE(k.k0.torsion.empty());
  EXPECT_EQ(abs((*k.k0.unit_class)[0]), 3);
  EXPECT_TRUE(k.k1.is_zero());
}

TEST(GraphKTheory, InfiniteRegularReceiverIsRejected) {
  DiscreteGraph g;
  g.add_vertex("v");
  g.add_edges(0, 0, std::nullopt);
  EXPECT_THROW(g.set_regularity(0, Regularity::regular), PreconditionError);
}

TEST(GraphKTheory, AllSmallGraphsAgreeWithOracle) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t graphs = oracle::for_each_small_graph([](const DiscreteGraph& g) {
    const KTheory k = graph_ktheory(g);
    const auto o = oracle::determinantal_oracle(connecting_matrix(g));
    ASSERT_EQ(k.k0.rank, o.coker_rank);
    ASSERT_EQ(k.k0.torsion, o.torsion);
    ASSERT_EQ(k.k1.rank, o.ker_rank);
  });
  EXPECT_EQ(graphs, 5u + 15u * 15u + 35u * 35u * 35u);
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(), 10.0);
}

TEST(ModelKTheory, MatchesDeclaredKTheoryOfX) {
  for (const auto& sys : {MinimalSystem::golden_rotation(), MinimalSystem::odometer()}) {
    EXPECT_EQ(model_ktheory(sys, Space::point()).k0, FGAbelianGroup::pointed_integers());
    EXPECT_TRUE(model_ktheory(sys, Space::point()).k1.is_zero());
    const KTheory f3 = model_ktheory(sys, Space::finite(3));
    EXPECT_EQ(f3.k0.rank, 3u);
    EXPECT_EQ(*f3.k0.unit_class, (std::vector<Integer>{1, 1, 1}));
    const KTheory c = model_ktheory(sys, Space::circle());
    EXPECT_EQ(c.k0, FGAbelianGroup::pointed_integers());
    EXPECT_EQ(c.k1, FGAbelianGroup::free(1));
    for (const Space& x : {Space::point(), Space::finite(3), Space::cantor(), Space::circle()}) {
      const KTheory k = model_ktheory(sys, x);
      const KTheory d = declared_space_ktheory(x);
      EXPECT_EQ(k.k0, d.k0);  // unit class included
      EXPECT_EQ(k.k1, d.k1);
      EXPECT_TRUE(k.k0.unit_class.has_value());
    }
  }
  EXPECT_FALSE(model_ktheory(MinimalSystem::odometer(), Space::countable_discrete()).k0.unit_class.has_value());
  EXPECT_THROW(model_ktheory(MinimalSystem::cyclic(3), Space::point()), PreconditionError);
}

TEST(ModelKTheory, PointXAgreesWithTheGraphF) {
  // Z x dF: the O_infinity instance
  EXPECT_EQ(model_ktheory(MinimalSystem::odometer(), Space::point()).k0, graph_ktheory(DiscreteGraph::o_infinity()).k0);
}

TEST(Stabilize, DropsTheUnitOnly) {
  const KTheory p = KTheory::of_point();
  const KTheory s = stabilize_ktheory(p);
  EXPECT_EQ(s.k0, FGAbelianGroup::free(1));
  EXPECT_EQ(stabilize_ktheory(s).k0, s.k0);
  const KTheory f3 = declared_space_ktheory(Space::finite(3));
  EXPECT_EQ(stabilize_ktheory(f3).k0.rank, 3u);
  EXPECT_EQ(stabilize_ktheory(f3).k0, f3.k0.without_unit());
  EXPECT_FALSE(stabilize_ktheory(f3) == f3);
}

TEST(DimBound, Examples) {
  const auto a = dim_bound({3, 0, true});
  EXPECT_EQ(a.bound, 7u);
  EXPECT_EQ(a.refined, 3u);
  const auto b = dim_bound({2, 0, true});
  EXPECT_EQ(b.bound, 5u);
  EXPECT_EQ(b.refined, 2u);
  EXPECT_EQ(dim_bound({0, 0, false}).bound, 1u);
  EXPECT_FALSE(dim_bound({2, 0, false}).refined.has_value());
  for (unsigned z = 0; z < 6; ++z)
    for (unsigned x = 0; x < 6; ++x) {
      EXPECT_LE(dim_bound({z, x}).bound, dim_bound({z + 1, x}).bound);
      EXPECT_LE(dim_bound({z, x}).bound, dim_bound({z, x + 1}).bound);
    }
  EXPECT_EQ(DimBudget::for_system(MinimalSystem::odometer(), 3, Space::circle()).dim_x, 1u);
  EXPECT_THROW(DimBudget::for_system(MinimalSystem::odometer(), 1, Space::point()), PreconditionError);
}
