#pragma once

#include "glab/error.hpp"
#include "glab/graph/discrete_graph.hpp"
#include "glab/graph/path.hpp"

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace glab {

/// A point of the boundary path space: a finite path ending at a singular
/// vertex, or an infinite path with eventually periodic data.
template <class G>
class BoundaryPath {
 public:
  using Finite = FinitePath<G>;
  using Infinite = typename G::infinite_path_type;
  using Edge = typename G::edge_type;
  using Vertex = typename G::vertex_type;

  BoundaryPath() = default;
  BoundaryPath(Finite f) : v_(std::move(f)) {}
  BoundaryPath(Infinite i) : v_(std::move(i)) {}

  bool is_finite() const { return std::holds_alternative<Finite>(v_); }
  const Finite& finite() const { return std::get<Finite>(v_); }
  const Infinite& infinite() const { return std::get<Infinite>(v_); }

  /// nullopt for infinite paths.
  std::optional<std::size_t> length() const {
    if (is_finite()) return finite().length();
    return std::nullopt;
  }

  Vertex range(const G& g) const { return is_finite() ? finite().range(g) : g.range(infinite()); }

  /// i-th edge, 1-based.
  Edge edge(const G& g, std::size_t i) const {
    if (i == 0) throw PreconditionError("edges are numbered from 1");
    if (is_finite()) return finite().edge(i);
    return g.edge_at(infinite(), i);
  }

  /// (mu_1, ..., mu_k).
  Finite truncate(const G& g, std::size_t k) const {
    if (is_finite()) return finite().truncate(g, k);
    if (k == 0) return Finite::vertex(range(g));
    std::vector<Edge> es;
    for (std::size_t i = 1; i <= k; ++i) es.push_back(edge(g, i));
    return Finite::from_edges(g, std::move(es));
  }

  /// The shift: drops the first edge. Not defined on vertices.
  BoundaryPath shift(const G& g) const {
    if (is_finite()) return BoundaryPath(finite().shift());
    return BoundaryPath(g.shift(infinite()));
  }

  /// sigma^n; DomainError when the path is too short.
  BoundaryPath shift(const G& g, std::size_t n) const {
    if (length() && *length() < n)
      throw DomainError("sigma^" + std::to_string(n) + " is not defined on a path of length " + std::to_string(*length()));
    BoundaryPath p = *this;
    for (std::size_t i = 0; i < n; ++i) p = p.shift(g);
    return p;
  }

  BoundaryPath prepend(const G& g, const Edge& e) const {
    if (is_finite()) return BoundaryPath(finite().prepend(g, e));
    return BoundaryPath(g.prepend(e, infinite()));
  }

  friend bool operator==(const BoundaryPath&, const BoundaryPath&) = default;
  friend auto operator<=>(const BoundaryPath&, const BoundaryPath&) = default;

 private:
  std::variant<Finite, Infinite> v_;
};

/// Finite paths belong to the boundary iff they end at a singular vertex.
template <class G>
bool is_boundary_path(const G& g, const BoundaryPath<G>& p) {
  return !p.is_finite() || g.is_singular(p.finite().domain());
}

using ModelPath = BoundaryPath<ModelGraph>;
using FPath = BoundaryPath<DiscreteGraph>;

// parameterisations

/// f(z, (n_i)) = ((rho^-i(z), x_{n_{i+1}}, n_i))_{i >= 1}.
inline ModelPath param_f(const ModelGraph& g, const Point& z, const EventuallyPeriodic<std::uint64_t>& idx) {
  if (!g.z_space().contains(z)) throw PreconditionError("base point is not in Z");
  for (auto v : idx.prefix())
    if (v == 0) throw PreconditionError("edge indices start at 1");
  for (auto v : idx.period())
    if (v == 0) throw PreconditionError("edge indices start at 1");
  return ModelPath(ModelInfinitePath{z, idx});
}

inline std::pair<Point, EventuallyPeriodic<std::uint64_t>> param_f_inv(const ModelPath& p) {
  if (p.is_finite()) throw PreconditionError("param_f_inv expects an infinite path");
  return {p.infinite().z, p.infinite().indices};
}

/// f_k(z, x, n_1..n_k) = ((rho^-1 z, x_{n_2}, n_1), ..., (rho^-k z, x, n_k)).
/// k = 0 gives the vertex (z, x).
inline FinitePath<ModelGraph> param_f_k(const ModelGraph& g, const Point& z, const Point& x,
                                        const std::vector<std::uint64_t>& idx, std::optional<std::size_t> k = std::nullopt) {
  if (k && *k != idx.size())
    throw PreconditionError("f_" + std::to_string(*k) + " needs " + std::to_string(*k) + " indices, got " +
                            std::to_string(idx.size()));
  if (idx.empty()) return FinitePath<ModelGraph>::vertex({z, x});
  std::vector<ModelEdge> es;
  for (std::size_t i = 1; i <= idx.size(); ++i) {
    if (idx[i - 1] == 0) throw PreconditionError("edge indices start at 1");
    const Point xi = i < idx.size() ? g.x_at(idx[i]) : x;
    es.push_back({g.system().power(z, -static_cast<std::int64_t>(i)), xi, idx[i - 1]});
  }
  return FinitePath<ModelGraph>::from_edges(g, std::move(es));
}

/// (z, x, n_1..n_k) from a finite model path; inverse of param_f_k.
struct FkParams {
  Point z;
  Point x;
  std::vector<std::uint64_t> indices;
};

inline FkParams param_f_k_inv(const ModelGraph& g, const FinitePath<ModelGraph>& p) {
  const ModelVertex r = p.range(g);
  std::vector<std::uint64_t> idx;
  for (const auto& e : p.edges()) idx.push_back(e.index);
  return {r.z, p.domain().x, idx};
}

// the homeomorphism h : Z x dF -> dE for X a point

namespace detail {
inline void require_point_x(const ModelGraph& g) {
  if (!g.x_space().is_point()) throw PreconditionError("h is only defined when X is a point; X = " + g.x_space().name());
}
inline void require_loop_family(const DiscreteEdge& e) {
  if (e.family != 0) throw PreconditionError("expected an edge of the one-vertex graph F");
}
}  // namespace detail

/// h(z, (m_i)) = ((rho^-i(z), *, m_i)); the identity Z x F^0 -> Z x X on vertices.
inline ModelPath homeo_h(const ModelGraph& g, const Point& z, const FPath& nu) {
  detail::require_point_x(g);
  const Point star = Point::finite(0);
  if (nu.is_finite()) {
    std::vector<std::uint64_t> ms;
    for (const auto& e : nu.finite().edges()) {
      detail::require_loop_family(e);
      ms.push_back(e.copy);
    }
    return ModelPath(param_f_k(g, z, star, ms));
  }
  const auto& es = nu.infinite().edges;
  auto copy = [](const DiscreteEdge& e) {
    detail::require_loop_family(e);
    return e.copy;
  };
  std::vector<std::uint64_t> pre, per;
  for (const auto& e : es.prefix()) pre.push_back(copy(e));
  for (const auto& e : es.period()) per.push_back(copy(e));
  return param_f(g, z, EventuallyPeriodic<std::uint64_t>(pre, per));
}

inline std::pair<Point, FPath> homeo_h_inv(const ModelGraph& g, const DiscreteGraph& f, const ModelPath& mu) {
  detail::require_point_x(g);
  if (mu.is_finite()) {
    const auto& p = mu.finite();
    if (p.length() == 0) return {p.domain().z, FPath(FinitePath<DiscreteGraph>::vertex({0}))};
    std::vector<DiscreteEdge> es;
    for (const auto& e : p.edges()) es.push_back({0, e.index});
    return {p.range(g).z, FPath(FinitePath<DiscreteGraph>::from_edges(f, std::move(es)))};
  }
  const auto& ip = mu.infinite();
  auto to_edges = [](const std::vector<std::uint64_t>& v) {
    std::vector<DiscreteEdge> out;
    for (auto m : v) out.push_back({0, m});
    return out;
  };
  return {ip.z, FPath(DiscreteInfinitePath{EventuallyPeriodic<DiscreteEdge>(to_edges(ip.indices.prefix()),
                                                                             to_edges(ip.indices.period()))})};
}

// line format
//   model:    INF z=<point> idx=<prefix>|<period>      FIN d=<z>;<x> <z>;<x>;<m> ...
//   discrete: INF e=<prefix>|<period>  (edges f.c)     FIN d=v<id> f.c ...

namespace detail {

template <class T, class F>
std::string join(const std::vector<T>& v, F&& f) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + f(v[i]);
  return s;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

inline std::uint64_t parse_u64(const std::string& s, const std::string& what) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) throw ParseError("bad " + what + " '" + s + "'");
  return std::stoull(s);
}

inline Point parse_point(const std::string& s) {
  try {
    return Point::parse(s);
  } catch (const Error& e) {
    throw ParseError("bad point '" + s + "': " + e.what());
  }
}

inline std::string expect_prefix(const std::string& tok, const std::string& key) {
  if (tok.rfind(key, 0) != 0) throw ParseError("expected '" + key + "...', got '" + tok + "'");
  return tok.substr(key.size());
}

template <class T, class F>
EventuallyPeriodic<T> parse_ep(const std::string& s, F&& item) {
  const auto bar = s.find('|');
  if (bar == std::string::npos) throw ParseError("eventually periodic sequence needs '|': '" + s + "'");
  auto list = [&](const std::string& part) {
    std::vector<T> out;
    if (part.empty()) return out;
    for (const auto& t : split(part, ',')) out.push_back(item(t));
    return out;
  };
  auto per = list(s.substr(bar + 1));
  if (per.empty()) throw ParseError("empty period in '" + s + "'");
  return EventuallyPeriodic<T>(list(s.substr(0, bar)), per);
}

}  // namespace detail

inline std::string to_line(const ModelGraph&, const ModelPath& p) {
  if (!p.is_finite()) {
    const auto& ip = p.infinite();
    auto num = [](std::uint64_t v) { return std::to_string(v); };
    return "INF z=" + ip.z.to_string() + " idx=" + detail::join(ip.indices.prefix(), num) + "|" +
           detail::join(ip.indices.period(), num);
  }
  std::string s = "FIN d=" + p.finite().domain().to_string();
  for (const auto& e : p.finite().edges()) s += " " + e.to_string();
  return s;
}

inline ModelPath model_path_from_line(const ModelGraph& g, const std::string& line) {
  const auto t = detail::tokens(line);
  if (t.empty()) throw ParseError("empty path line");
  if (t[0] == "INF") {
    if (t.size() != 3) throw ParseError("INF line needs z= and idx=: '" + line + "'");
    const Point z = detail::parse_point(detail::expect_prefix(t[1], "z="));
    auto idx = detail::parse_ep<std::uint64_t>(detail::expect_prefix(t[2], "idx="),
                                               [](const std::string& s) { return detail::parse_u64(s, "index"); });
    try {
      return param_f(g, z, idx);
    } catch (const PreconditionError& e) {
      throw ParseError(std::string("invalid infinite path: ") + e.what());
    }
  }
  if (t[0] == "FIN") {
    if (t.size() < 2) throw ParseError("FIN line needs d=: '" + line + "'");
    const auto d = detail::split(detail::expect_prefix(t[1], "d="), ';');
    if (d.size() != 2) throw ParseError("vertex needs <z>;<x>: '" + t[1] + "'");
    const ModelVertex dom{detail::parse_point(d[0]), detail::parse_point(d[1])};
    if (!g.is_vertex(dom)) throw ParseError("not a vertex of " + g.name() + ": " + dom.to_string());
    if (t.size() == 2) return ModelPath(FinitePath<ModelGraph>::vertex(dom));
    std::vector<ModelEdge> es;
    for (std::size_t i = 2; i < t.size(); ++i) {
      const auto f = detail::split(t[i], ';');
      if (f.size() != 3) throw ParseError("edge needs <z>;<x>;<m>: '" + t[i] + "'");
      ModelEdge e{detail::parse_point(f[0]), detail::parse_point(f[1]), detail::parse_u64(f[2], "index")};
      if (!g.is_edge(e)) throw ParseError("not an edge of " + g.name() + ": " + t[i]);
      es.push_back(std::move(e));
    }
    try {
      auto p = FinitePath<ModelGraph>::from_edges(g, std::move(es));
      if (!(p.domain() == dom)) throw ParseError("d= does not match the last edge");
      return ModelPath(std::move(p));
    } catch (const ComposabilityError& e) {
      throw ParseError(std::string("invalid path: ") + e.what());
    }
  }
  throw ParseError("path line must start with INF or FIN: '" + line + "'");
}

inline std::string to_line(const DiscreteGraph&, const FPath& p) {
  auto edge = [](const DiscreteEdge& e) { return e.to_string(); };
  if (!p.is_finite())
    return "INF e=" + detail::join(p.infinite().edges.prefix(), edge) + "|" + detail::join(p.infinite().edges.period(), edge);
  std::string s = "FIN d=" + p.finite().domain().to_string();
  for (const auto& e : p.finite().edges()) s += " " + e.to_string();
  return s;
}

inline FPath discrete_path_from_line(const DiscreteGraph& g, const std::string& line) {
  auto edge = [&](const std::string& s) {
    const auto dot = s.find('.');
    if (dot == std::string::npos) throw ParseError("edge needs <family>.<copy>: '" + s + "'");
    DiscreteEdge e{detail::parse_u64(s.substr(0, dot), "family"), detail::parse_u64(s.substr(dot + 1), "copy")};
    if (!g.is_edge(e)) throw ParseError("not an edge: '" + s + "'");
    return e;
  };
  const auto t = detail::tokens(line);
  if (t.empty()) throw ParseError("empty path line");
  if (t[0] == "INF") {
    if (t.size() != 2) throw ParseError("INF line needs e=: '" + line + "'");
    DiscreteInfinitePath p{detail::parse_ep<DiscreteEdge>(detail::expect_prefix(t[1], "e="), edge)};
    try {
      g.validate(p);
    } catch (const Error& e) {
      throw ParseError(std::string("invalid infinite path: ") + e.what());
    }
    return FPath(std::move(p));
  }
  if (t[0] == "FIN") {
    if (t.size() < 2) throw ParseError("FIN line needs d=: '" + line + "'");
    const auto v = detail::expect_prefix(t[1], "d=v");
    const DiscreteVertex dom{detail::parse_u64(v, "vertex")};
    if (!g.is_vertex(dom)) throw ParseError("unknown vertex v" + v);
    if (t.size() == 2) return FPath(FinitePath<DiscreteGraph>::vertex(dom));
    std::vector<DiscreteEdge> es;
    for (std::size_t i = 2; i < t.size(); ++i) es.push_back(edge(t[i]));
    try {
      auto p = FinitePath<DiscreteGraph>::from_edges(g, std::move(es));
      if (!(p.domain() == dom)) throw ParseError("d= does not match the last edge");
      return FPath(std::move(p));
    } catch (const ComposabilityError& e) {
      throw ParseError(std::string("invalid path: ") + e.what());
    }
  }
  throw ParseError("path line must start with INF or FIN: '" + line + "'");
}

}  // namespace glab
