#pragma once

#include "glab/exact/dynamics.hpp"
#include "glab/exact/space.hpp"
#include "glab/graph/discrete_graph.hpp"
#include "glab/ktheory/abelian_group.hpp"
#include "glab/ktheory/snf.hpp"

#include <optional>
#include <vector>

namespace glab {

/// Cokernel of m : Z^cols -> Z^rows, with the class of v in canonical coordinates.
inline FGAbelianGroup cokernel(const IntMatrix& m, const std::optional<std::vector<Integer>>& v = std::nullopt) {
  const SmithForm s = snf(m);
  const auto inv = s.invariants();
  FGAbelianGroup g;
  g.rank = m.rows() - inv.size();
  for (const auto& d : inv)
    if (d != 1) g.torsion.push_back(d);
  if (v) {
    const auto y = s.p.apply(*v);
    std::vector<Integer> u;
    for (std::size_t i = inv.size(); i < m.rows(); ++i) u.push_back(y[i]);
    for (std::size_t i = 0; i < inv.size(); ++i) {
      if (inv[i] == 1) continue;
      Integer r = y[i] % inv[i];
      if (r < 0) r += inv[i];
      u.push_back(r);
    }
    g.unit_class = std::move(u);
  }
  g.validate();
  return g;
}

/// Kernel of m, a free group.
inline FGAbelianGroup kernel(const IntMatrix& m) { return FGAbelianGroup::free(m.cols() - snf(m).invariants().size()); }

/// The connecting matrix Z^{E0_rg} -> Z^{E0}: column v is e_v minus the sum of
/// e_{d(e)} over the edges e with r(e) = v.
inline IntMatrix connecting_matrix(const DiscreteGraph& g) {
  std::vector<std::size_t> reg;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (g.is_regular(v)) reg.push_back(v);
  IntMatrix m(g.vertex_count(), reg.size());
  for (std::size_t c = 0; c < reg.size(); ++c) {
    const std::size_t v = reg[c];
    if (!g.in_degree(v)) throw PreconditionError("regular vertex v" + std::to_string(v) + " receives infinitely many edges");
    m(v, c) += 1;
    for (const auto& f : g.families())
      if (f.target == v) m(f.source, c) -= Integer(*f.count);
  }
  return m;
}

/// K_0 = coker, K_1 = ker of the connecting matrix; the unit is the class of (1, ..., 1).
inline KTheory graph_ktheory(const DiscreteGraph& g) {
  if (g.vertex_count() == 0) throw PreconditionError("graph has no vertices");
  const IntMatrix m = connecting_matrix(g);
  KTheory k;
  k.k0 = cokernel(m, std::vector<Integer>(g.vertex_count(), Integer(1)));
  k.k1 = kernel(m);
  k.provenance = "computed";
  return k;
}

/// Declared K-theory of the X backends (not computed from the topology).
inline KTheory declared_space_ktheory(const Space& x) {
  KTheory k;
  switch (x.kind()) {
    case SpaceKind::finite:
      k.k0 = FGAbelianGroup::free(x.size());
      k.k0.unit_class = std::vector<Integer>(x.size(), Integer(1));
      k.k1 = FGAbelianGroup::zero();
      k.provenance = x.size() == 1 ? "declared: K-theory of a point" : "declared: K-theory of a finite set";
      return k;
    case SpaceKind::circle:
      k.k0 = FGAbelianGroup::pointed_integers();
      k.k1 = FGAbelianGroup::free(1);
      k.provenance = "declared: K-theory of the circle";
      return k;
    case SpaceKind::cantor:
      k.k0 = {0, {}, std::vector<Integer>{1}, true};
      k.k1 = FGAbelianGroup::zero();
      k.provenance = "declared: K-theory of the Cantor space, C(X, Z) free of countable rank";
      return k;
    case SpaceKind::countable_discrete:
      k.k0 = {0, {}, std::nullopt, true};
      k.k1 = FGAbelianGroup::zero();
      k.provenance = "declared: K-theory of a countable discrete space";
      return k;
    default:
      throw UnsupportedError("no declared K-theory for " + x.name());
  }
}

inline bool is_point_ktheory(const KTheory& k) {
  return k.k0 == FGAbelianGroup::pointed_integers() && k.k1.is_zero();
}

/// K_*(O(E)) for the model graph over (Z, X): E0_rg is empty, so it is K_*(C_0(Z x X)),
/// and tensoring with the point-like factor C(Z) is the identity, unit included.
inline KTheory model_ktheory(const Space& x, const KTheory& z_meta) {
  if (!is_point_ktheory(z_meta))
    throw PreconditionError("the Z factor must have the K-theory of a point; got " + z_meta.to_string());
  KTheory k = declared_space_ktheory(x);
  if (!x.is_compact()) k.k0.unit_class.reset();
  k.provenance = "E0_rg empty: K_*(C_0(Z x X)) = K_*(C_0(X)); X " + k.provenance;
  return k;
}

inline KTheory model_ktheory(const MinimalSystem& z, const Space& x) { return model_ktheory(x, z.declared_ktheory()); }

/// Stable algebras are non-unital: same groups, no unit class.
inline KTheory stabilize_ktheory(KTheory k) {
  k.k0.unit_class.reset();
  k.k1.unit_class.reset();
  return k;
}

struct DimBudget {
  unsigned dim_z = 0;
  unsigned dim_x = 0;
  bool x_point = false;

  /// Checks dim_z against the dimensions declared for the Z stand-in.
  static DimBudget for_system(const MinimalSystem& z, unsigned dim_z, const Space& x) {
    const auto& ds = z.declared_dimensions();
    if (!ds.empty() && std::find(ds.begin(), ds.end(), dim_z) == ds.end())
      throw PreconditionError("dim Z = " + std::to_string(dim_z) + " is not among the declared dimensions of " + z.name());
    return {dim_z, static_cast<unsigned>(x.dimension()), x.is_point()};
  }
};

struct DimResult {
  unsigned bound = 0;               // 2 dim Z + dim X + 1
  std::optional<unsigned> refined;  // dim Z, when X is a point
};

/// dim(dE) <= dim(E^inf) + dim(E*) + 1 with dim(E^inf) <= dim Z and dim(E*) <= dim Z + dim X.
inline DimResult dim_bound(const DimBudget& b) {
  DimResult r{2 * b.dim_z + b.dim_x + 1, std::nullopt};
  if (b.x_point) r.refined = b.dim_z;
  return r;
}

}  // namespace glab
