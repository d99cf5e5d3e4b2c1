#pragma once

#include "glab/error.hpp"
#include "glab/exact/dynamics.hpp"
#include "glab/exact/eventually_periodic.hpp"
#include "glab/exact/point.hpp"
#include "glab/exact/space.hpp"
#include "glab/random.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace glab {

struct ModelVertex {
  Point z;
  Point x;

  friend bool operator==(const ModelVertex&, const ModelVertex&) = default;
  friend auto operator<=>(const ModelVertex&, const ModelVertex&) = default;
  std::string to_string() const { return z.to_string() + ";" + x.to_string(); }
};

/// The edge (z, x, m) of Z x X x N.
struct ModelEdge {
  Point z;
  Point x;
  std::uint64_t index = 1;

  friend bool operator==(const ModelEdge&, const ModelEdge&) = default;
  friend auto operator<=>(const ModelEdge&, const ModelEdge&) = default;
  std::string to_string() const { return z.to_string() + ";" + x.to_string() + ";" + std::to_string(index); }
};

/// The infinite path f(z, (n_i)) = ((rho^-i(z), x_{n_{i+1}}, n_i))_{i>=1},
/// with range (z, x_{n_1}).
struct ModelInfinitePath {
  Point z;
  EventuallyPeriodic<std::uint64_t> indices;

  friend bool operator==(const ModelInfinitePath&, const ModelInfinitePath&) = default;
  friend auto operator<=>(const ModelInfinitePath&, const ModelInfinitePath&) = default;
};

/// The topological graph over Z x X:
///   E^0 = Z x X,  E^1 = Z x X x N,  d(z,x,m) = (z,x),  r(z,x,m) = (rho(z), x_m)
/// where (x_m) is the dense sequence of X. Every vertex is singular, since
/// r^-1 of any open set contains edges of unbounded index.
class ModelGraph {
 public:
  using vertex_type = ModelVertex;
  using edge_type = ModelEdge;
  using infinite_path_type = ModelInfinitePath;

  ModelGraph(MinimalSystem z, Space x) : sys_(std::move(z)), x_(std::move(x)) {
    if (x_.kind() == SpaceKind::product) throw UnsupportedError("model graph needs a non-product X backend");
  }

  const MinimalSystem& system() const { return sys_; }
  const Space& z_space() const { return sys_.space(); }
  const Space& x_space() const { return x_; }
  std::string name() const { return "model(" + sys_.name() + ", " + x_.name() + ")"; }

  /// x_m, m >= 1.
  Point x_at(std::uint64_t m) const {
    if (m == 0) throw PreconditionError("edge indices start at 1");
    return dense_sequence(x_, m);
  }

  ModelVertex domain(const ModelEdge& e) const { return {e.z, e.x}; }
  ModelVertex range(const ModelEdge& e) const { return {sys_.forward(e.z), x_at(e.index)}; }

  bool is_singular(const ModelVertex&) const { return true; }

  bool is_vertex(const ModelVertex& v) const { return z_space().contains(v.z) && x_.contains(v.x); }
  bool is_edge(const ModelEdge& e) const { return e.index >= 1 && is_vertex(domain(e)); }

  /// Edges e with d(e) = v and index <= max_index.
  std::vector<ModelEdge> edges_with_domain(const ModelVertex& v, std::uint64_t max_index) const {
    std::vector<ModelEdge> out;
    for (std::uint64_t m = 1; m <= max_index; ++m) out.push_back({v.z, v.x, m});
    return out;
  }

  ModelEdge random_edge_with_domain(const ModelVertex& v, Rng& rng, std::uint64_t max_index) const {
    return {v.z, v.x, 1 + rng.below(max_index)};
  }

  ModelVertex random_vertex(Rng& rng) const { return {z_space().random_point(rng), x_.random_point(rng)}; }

  // infinite paths
  ModelVertex range(const ModelInfinitePath& p) const { return {p.z, x_at(p.indices.front())}; }

  /// The i-th edge, i >= 1.
  ModelEdge edge_at(const ModelInfinitePath& p, std::size_t i) const {
    return {sys_.power(p.z, -static_cast<std::int64_t>(i)), x_at(p.indices.at(i)), p.indices.at(i - 1)};
  }

  ModelInfinitePath shift(const ModelInfinitePath& p) const { return {sys_.backward(p.z), p.indices.tail()}; }

  /// e . p, defined when d(e) = r(p).
  ModelInfinitePath prepend(const ModelEdge& e, const ModelInfinitePath& p) const {
    if (!(domain(e) == range(p))) throw ComposabilityError("edge domain " + domain(e).to_string() +
                                                           " differs from path range " + range(p).to_string());
    return {sys_.forward(p.z), p.indices.cons(e.index)};
  }

  friend bool operator==(const ModelGraph& a, const ModelGraph& b) { return a.sys_ == b.sys_ && a.x_ == b.x_; }

 private:
  MinimalSystem sys_;
  Space x_;
};

inline ModelGraph build_model_graph(const MinimalSystem& z, const Space& x) { return ModelGraph(z, x); }

}  // namespace glab
