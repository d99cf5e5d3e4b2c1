#pragma once

#include "glab/exact/region.hpp"
#include "glab/graph/path.hpp"

#include <optional>
#include <string>
#include <vector>

namespace glab {

/// Finite or cofinite set of edge indices.
using IndexSet = FiniteSet;

inline IndexSet index_single(std::uint64_t m) { return FiniteSet::single(std::nullopt, m); }
inline IndexSet index_all() { return FiniteSet::full(std::nullopt); }
inline IndexSet index_set(std::set<std::uint64_t> ms) { return FiniteSet(std::nullopt, std::move(ms)); }

/// Z-region x X-region x index set: a box of edges of the model graph.
struct EdgeBox {
  Region z;
  Region x;
  IndexSet index;

  bool is_empty() const { return z.is_empty() || x.is_empty() || index.is_empty(); }
  bool contains(const ModelEdge& e) const { return z.contains(e.z) && x.contains(e.x) && index.contains(e.index); }
  EdgeBox intersect(const EdgeBox& o) const { return {z.intersect(o.z), x.intersect(o.x), index.intersect(o.index)}; }
  friend bool operator==(const EdgeBox& a, const EdgeBox& b) { return a.z == b.z && a.x == b.x && a.index == b.index; }
  std::string to_string() const { return "<" + z.to_string() + " | " + x.to_string() + " | " + index.to_string() + ">"; }
};

struct VertexBox {
  Region z;
  Region x;

  bool is_empty() const { return z.is_empty() || x.is_empty(); }
  bool contains(const ModelVertex& v) const { return z.contains(v.z) && x.contains(v.x); }
  VertexBox closure() const { return {z.closure(), x.closure()}; }
  std::string to_string() const { return z.to_string() + " x " + x.to_string(); }
};

/// The set E^n intersected with a product of n edge boxes.
struct OpenPathBox {
  std::vector<EdgeBox> coords;

  std::size_t length() const { return coords.size(); }

  bool contains(const FinitePath<ModelGraph>& p) const {
    if (p.length() != length()) return false;
    for (std::size_t i = 0; i < length(); ++i)
      if (!coords[i].contains(p.edges()[i])) return false;
    return true;
  }

  /// U|_k as a product of boxes.
  OpenPathBox truncate(std::size_t k) const {
    return {std::vector<EdgeBox>(coords.begin(), coords.begin() + static_cast<std::ptrdiff_t>(std::min(k, length())))};
  }

  friend bool operator==(const OpenPathBox&, const OpenPathBox&) = default;

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < coords.size(); ++i) s += (i ? " . " : "") + coords[i].to_string();
    return s;
  }
};

/// U pitchfork U' = (U|_k) n (U'|_k) with k the smaller length; nullopt when a
/// coordinate intersection is empty.
inline std::optional<OpenPathBox> pitchfork(const OpenPathBox& a, const OpenPathBox& b) {
  const std::size_t k = std::min(a.length(), b.length());
  OpenPathBox out;
  for (std::size_t i = 0; i < k; ++i) {
    EdgeBox c = a.coords[i].intersect(b.coords[i]);
    if (c.is_empty()) return std::nullopt;
    out.coords.push_back(std::move(c));
  }
  return out;
}

/// Whether some path in the box can carry index sets I_{i+1} at coordinate i:
/// the X-coordinate of edge i must be x_m for some admissible m.
inline bool x_chain_feasible(const ModelGraph& g, const OpenPathBox& u) {
  for (std::size_t i = 0; i + 1 < u.length(); ++i) {
    const Region& xi = u.coords[i].x;
    const IndexSet& next = u.coords[i + 1].index;
    if (next.cofinite()) {
      // every non-empty open set meets the dense sequence infinitely often
      if (xi.is_empty()) return false;
      continue;
    }
    bool hit = false;
    for (auto m : next.elements())
      if (xi.contains(g.x_at(m))) { hit = true; break; }
    if (!hit) return false;
  }
  return true;
}

/// Exact Z-part of d(U): the z_n with rho^(n-i)(z_n) in Z_i for every i.
inline Region domain_z_image(const ModelGraph& g, const OpenPathBox& u) {
  const auto n = static_cast<std::int64_t>(u.length());
  Region out = u.coords.back().z;
  for (std::int64_t i = 1; i < n; ++i) out = out.intersect(g.system().power(u.coords[i - 1].z, -(n - i)));
  return out;
}

/// Exact Z-part of r(U): rho(z_1) with z_1 = rho^(i-1)(z_i) for every i.
inline Region range_z_image(const ModelGraph& g, const OpenPathBox& u) {
  Region out = g.system().power(u.coords.front().z, 1);
  for (std::size_t i = 2; i <= u.length(); ++i)
    out = out.intersect(g.system().power(u.coords[i - 1].z, static_cast<std::int64_t>(i)));
  return out;
}

inline VertexBox domain_image(const ModelGraph& g, const OpenPathBox& u) {
  if (!x_chain_feasible(g, u)) return {g.z_space().full_region().complement(), u.coords.back().x};
  return {domain_z_image(g, u), u.coords.back().x};
}

}  // namespace glab
