#pragma once

#include "glab/error.hpp"
#include "glab/exact/eventually_periodic.hpp"
#include "glab/random.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace glab {

/// A family of parallel edges source -> target; count nullopt means countably many.
struct EdgeFamily {
  std::size_t source = 0;
  std::size_t target = 0;
  std::optional<std::uint64_t> count;
  std::string label;
};

/// Copy number `copy` (1-based) of an edge family.
struct DiscreteEdge {
  std::size_t family = 0;
  std::uint64_t copy = 1;

  friend bool operator==(const DiscreteEdge&, const DiscreteEdge&) = default;
  friend auto operator<=>(const DiscreteEdge&, const DiscreteEdge&) = default;
  std::string to_string() const { return std::to_string(family) + "." + std::to_string(copy); }
};

struct DiscreteVertex {
  std::size_t id = 0;
  friend bool operator==(const DiscreteVertex&, const DiscreteVertex&) = default;
  friend auto operator<=>(const DiscreteVertex&, const DiscreteVertex&) = default;
  std::string to_string() const { return "v" + std::to_string(id); }
};

struct DiscreteInfinitePath {
  EventuallyPeriodic<DiscreteEdge> edges;
  friend bool operator==(const DiscreteInfinitePath&, const DiscreteInfinitePath&) = default;
  friend auto operator<=>(const DiscreteInfinitePath&, const DiscreteInfinitePath&) = default;
};

enum class Regularity { singular, regular };

/// A directed graph with discrete vertex and edge spaces, d = source and
/// r = target. A vertex is regular when it receives finitely many edges, at
/// least one, unless it is overridden to singular.
class DiscreteGraph {
 public:
  using vertex_type = DiscreteVertex;
  using edge_type = DiscreteEdge;
  using infinite_path_type = DiscreteInfinitePath;

  DiscreteGraph() = default;

  /// The graph F: one vertex and countably many loops. Its algebra is O_infinity.
  static DiscreteGraph o_infinity() {
    DiscreteGraph g;
    g.add_vertex("*");
    g.add_edges(0, 0, std::nullopt, "loop");
    return g;
  }

  /// One vertex with n loops (the Cuntz algebra O_n for n >= 2).
  static DiscreteGraph cuntz(std::uint64_t n) {
    DiscreteGraph g;
    g.add_vertex("*");
    g.add_edges(0, 0, n, "loop");
    return g;
  }

  std::size_t add_vertex(std::string name) {
    if (index_.count(name)) throw PreconditionError("duplicate vertex name '" + name + "'");
    index_[name] = names_.size();
    names_.push_back(std::move(name));
    return names_.size() - 1;
  }

  void add_edges(std::size_t source, std::size_t target, std::optional<std::uint64_t> count, std::string label = {}) {
    if (source >= names_.size() || target >= names_.size()) throw PreconditionError("edge endpoint out of range");
    if (count && *count == 0) return;
    families_.push_back({source, target, count, std::move(label)});
  }

  void set_regularity(std::size_t v, Regularity r) {
    if (v >= names_.size()) throw PreconditionError("vertex out of range");
    if (r == Regularity::regular && !receives_finitely_many(v))
      throw PreconditionError("vertex '" + names_[v] + "' receives infinitely many or no edges and cannot be regular");
    overrides_[v] = r;
  }

  std::size_t vertex_count() const { return names_.size(); }
  const std::vector<std::string>& vertex_names() const { return names_; }
  const std::vector<EdgeFamily>& families() const { return families_; }
  std::size_t vertex_id(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw PreconditionError("unknown vertex '" + name + "'");
    return it->second;
  }

  /// Number of edges with range v, nullopt if infinite.
  std::optional<std::uint64_t> in_degree(std::size_t v) const {
    std::uint64_t total = 0;
    for (const auto& f : families_) {
      if (f.target != v) continue;
      if (!f.count) return std::nullopt;
      total += *f.count;
    }
    return total;
  }

  bool receives_finitely_many(std::size_t v) const {
    auto d = in_degree(v);
    return d && *d > 0;
  }

  bool is_regular(std::size_t v) const {
    auto it = overrides_.find(v);
    if (it != overrides_.end()) return it->second == Regularity::regular;
    return receives_finitely_many(v);
  }
  bool is_singular(const DiscreteVertex& v) const { return !is_regular(v.id); }

  bool is_edge(const DiscreteEdge& e) const {
    if (e.family >= families_.size() || e.copy == 0) return false;
    const auto& c = families_[e.family].count;
    return !c || e.copy <= *c;
  }
  bool is_vertex(const DiscreteVertex& v) const { return v.id < names_.size(); }

  DiscreteVertex domain(const DiscreteEdge& e) const { return {family(e).source}; }
  DiscreteVertex range(const DiscreteEdge& e) const { return {family(e).target}; }

  std::vector<DiscreteEdge> edges_with_domain(const DiscreteVertex& v, std::uint64_t max_copy) const {
    std::vector<DiscreteEdge> out;
    for (std::size_t f = 0; f < families_.size(); ++f) {
      if (families_[f].source != v.id) continue;
      const std::uint64_t n = families_[f].count ? std::min(*families_[f].count, max_copy) : max_copy;
      for (std::uint64_t c = 1; c <= n; ++c) out.push_back({f, c});
    }
    return out;
  }

  std::optional<DiscreteEdge> random_edge_with_domain(const DiscreteVertex& v, Rng& rng, std::uint64_t max_copy) const {
    auto all = edges_with_domain(v, max_copy);
    if (all.empty()) return std::nullopt;
    return all[rng.below(all.size())];
  }

  DiscreteVertex random_vertex(Rng& rng) const { return {rng.below(names_.size())}; }

  // infinite paths
  void validate(const DiscreteInfinitePath& p) const {
    const auto& pre = p.edges.prefix();
    const auto& per = p.edges.period();
    std::vector<DiscreteEdge> seq(pre.begin(), pre.end());
    seq.insert(seq.end(), per.begin(), per.end());
    seq.push_back(per.front());
    for (const auto& e : seq)
      if (!is_edge(e)) throw PreconditionError("not an edge: " + e.to_string());
    for (std::size_t i = 0; i + 1 < seq.size(); ++i)
      if (!(domain(seq[i]) == range(seq[i + 1])))
        throw ComposabilityError("infinite path breaks between edges " + std::to_string(i + 1) + " and " +
                                 std::to_string(i + 2));
  }
  DiscreteVertex range(const DiscreteInfinitePath& p) const { return range(p.edges.front()); }
  DiscreteEdge edge_at(const DiscreteInfinitePath& p, std::size_t i) const { return p.edges.at(i - 1); }
  DiscreteInfinitePath shift(const DiscreteInfinitePath& p) const { return {p.edges.tail()}; }
  DiscreteInfinitePath prepend(const DiscreteEdge& e, const DiscreteInfinitePath& p) const {
    if (!(domain(e) == range(p)))
      throw ComposabilityError("edge domain " + domain(e).to_string() + " differs from path range " + range(p).to_string());
    return {p.edges.cons(e)};
  }

  std::string name() const { return "discrete(" + std::to_string(names_.size()) + " vertices)"; }

 private:
  const EdgeFamily& family(const DiscreteEdge& e) const {
    if (e.family >= families_.size()) throw PreconditionError("unknown edge family " + std::to_string(e.family));
    return families_[e.family];
  }

  std::vector<std::string> names_;
  std::map<std::string, std::size_t> index_;
  std::vector<EdgeFamily> families_;
  std::map<std::size_t, Regularity> overrides_;
};

}  // namespace glab
