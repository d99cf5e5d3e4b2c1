#pragma once

#include "glab/error.hpp"
#include "glab/graph/model_graph.hpp"

#include <compare>
#include <set>
#include <string>
#include <vector>

namespace glab {

/// A path (e_1, ..., e_n) with d(e_i) = r(e_{i+1}); for n = 0 it is a vertex.
/// The domain vertex d(mu) is stored in every case.
template <class G>
class FinitePath {
 public:
  using Vertex = typename G::vertex_type;
  using Edge = typename G::edge_type;

  FinitePath() = default;

  static FinitePath vertex(Vertex v) {
    FinitePath p;
    p.domain_ = std::move(v);
    return p;
  }

  /// Validates every junction; the error names the first bad one.
  static FinitePath from_edges(const G& g, std::vector<Edge> edges) {
    if (edges.empty()) throw PreconditionError("use FinitePath::vertex for paths of length 0");
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
      if (!(g.domain(edges[i]) == g.range(edges[i + 1])))
        throw ComposabilityError("junction " + std::to_string(i + 1) + "|" + std::to_string(i + 2) + ": d(e_" +
                                 std::to_string(i + 1) + ") = " + g.domain(edges[i]).to_string() + " but r(e_" +
                                 std::to_string(i + 2) + ") = " + g.range(edges[i + 1]).to_string());
    }
    FinitePath p;
    p.domain_ = g.domain(edges.back());
    p.edges_ = std::move(edges);
    return p;
  }

  std::size_t length() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_.at(i - 1); }  // 1-based
  const Vertex& domain() const { return domain_; }
  Vertex range(const G& g) const { return edges_.empty() ? domain_ : g.range(edges_.front()); }

  /// (mu_1, ..., mu_k).
  FinitePath truncate(const G& g, std::size_t k) const {
    if (k > length()) throw DomainError("cannot truncate a path of length " + std::to_string(length()) + " to " + std::to_string(k));
    if (k == 0) return vertex(range(g));
    return from_edges(g, std::vector<Edge>(edges_.begin(), edges_.begin() + static_cast<std::ptrdiff_t>(k)));
  }

  /// Drop the first edge; a path of length 1 becomes its domain vertex.
  FinitePath shift() const {
    if (edges_.empty()) throw DomainError("the shift is not defined on vertices (paths of length 0)");
    FinitePath p;
    p.domain_ = domain_;
    p.edges_.assign(edges_.begin() + 1, edges_.end());
    return p;
  }

  FinitePath prepend(const G& g, const Edge& e) const {
    std::vector<Edge> es{e};
    es.insert(es.end(), edges_.begin(), edges_.end());
    if (!(g.domain(e) == range(g)))
      throw ComposabilityError("junction 1|2: d(e) = " + g.domain(e).to_string() + " but r(path) = " + range(g).to_string());
    FinitePath p;
    p.domain_ = domain_;
    p.edges_ = std::move(es);
    return p;
  }

  friend bool operator==(const FinitePath&, const FinitePath&) = default;
  friend auto operator<=>(const FinitePath&, const FinitePath&) = default;

 private:
  Vertex domain_{};
  std::vector<Edge> edges_;
};

/// mu nu, defined when d(mu) = r(nu).
template <class G>
FinitePath<G> compose_paths(const G& g, const FinitePath<G>& mu, const FinitePath<G>& nu) {
  if (!(mu.domain() == nu.range(g)))
    throw ComposabilityError("junction " + std::to_string(mu.length()) + "|" + std::to_string(mu.length() + 1) +
                             ": d(mu) = " + mu.domain().to_string() + " but r(nu) = " + nu.range(g).to_string());
  if (mu.length() == 0) return nu;
  if (nu.length() == 0) return mu;
  auto edges = mu.edges();
  edges.insert(edges.end(), nu.edges().begin(), nu.edges().end());
  return FinitePath<G>::from_edges(g, std::move(edges));
}

/// r(mu) over paths mu with d(mu) = v, |mu| <= depth and edge indices <= depth.
template <class G>
std::set<typename G::vertex_type> orbit_plus(const G& g, const typename G::vertex_type& v, std::uint64_t depth) {
  using V = typename G::vertex_type;
  std::set<V> seen{v};
  std::set<V> frontier{v};
  for (std::uint64_t step = 0; step < depth && !frontier.empty(); ++step) {
    std::set<V> next;
    for (const auto& u : frontier)
      for (const auto& e : g.edges_with_domain(u, depth)) {
        V w = g.range(e);
        if (seen.insert(w).second) next.insert(std::move(w));
      }
    frontier = std::move(next);
  }
  return seen;
}

/// The closed form {(z,x)} u {(rho^n(z), x_m) : 1 <= n, m <= depth}.
inline std::set<ModelVertex> model_orbit_plus(const ModelGraph& g, const ModelVertex& v, std::uint64_t depth) {
  std::set<ModelVertex> out{v};
  std::vector<Point> xs;
  for (std::uint64_t m = 1; m <= depth; ++m) xs.push_back(g.x_at(m));
  Point z = v.z;
  for (std::uint64_t n = 1; n <= depth; ++n) {
    z = g.system().forward(z);
    for (const auto& x : xs) out.insert({z, x});
  }
  return out;
}

/// The path e_{x,z,k} = ((rho^-1 z, x_k, j), (rho^-2 z, x_k, k), ..., (rho^-k z, x_k, k), (rho^-(k+1) z, x, k)),
/// of length k+1, with range (z, x_j) and domain (rho^-(k+1) z, x). The first
/// index j is 1 in the standard construction.
inline FinitePath<ModelGraph> witness_path(const ModelGraph& g, const Point& x, const Point& z, std::uint64_t k,
                                           std::uint64_t first_index = 1) {
  if (k < 1) throw PreconditionError("witness paths need k >= 1");
  const Point xk = g.x_at(k);
  std::vector<ModelEdge> edges;
  edges.push_back({g.system().power(z, -1), xk, first_index});
  for (std::uint64_t i = 2; i <= k; ++i) edges.push_back({g.system().power(z, -static_cast<std::int64_t>(i)), xk, k});
  edges.push_back({g.system().power(z, -static_cast<std::int64_t>(k + 1)), x, k});
  return FinitePath<ModelGraph>::from_edges(g, std::move(edges));
}

}  // namespace glab
