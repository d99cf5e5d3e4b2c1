#pragma once

#include "glab/graph/discrete_graph.hpp"
#include "glab/io/json_util.hpp"

namespace glab {

/// {"vertices": [names], "edges": [{"source", "target", "count": n | "infinite", "label"}],
///  "regularity": {name: "singular" | "regular"}}
inline DiscreteGraph graph_from_json(const io::Json& doc, const std::string& where = "graph") {
  io::only_keys(doc, {"vertices", "edges", "regularity"}, where);
  DiscreteGraph g;
  const auto& vs = io::as_array(io::field(doc, "vertices", where), where + ".vertices");
  if (vs.empty()) throw ParseError(where + ".vertices: at least one vertex is required");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string w = where + ".vertices[" + std::to_string(i) + "]";
    try {
      g.add_vertex(io::as_string(vs[i], w));
    } catch (const PreconditionError& e) {
      throw ParseError(w + ": " + e.what());
    }
  }
  auto vertex = [&](const io::Json& v, const std::string& w) {
    try {
      return g.vertex_id(io::as_string(v, w));
    } catch (const PreconditionError& e) {
      throw ParseError(w + ": " + e.what());
    }
  };
  if (doc.contains("edges")) {
    const auto& es = io::as_array(doc["edges"], where + ".edges");
    for (std::size_t i = 0; i < es.size(); ++i) {
      const std::string w = where + ".edges[" + std::to_string(i) + "]";
      io::only_keys(es[i], {"source", "target", "count", "label"}, w);
      const auto s = vertex(io::field(es[i], "source", w), w + ".source");
      const auto t = vertex(io::field(es[i], "target", w), w + ".target");
      std::optional<std::uint64_t> count = 1;
      if (es[i].contains("count")) {
        const auto& c = es[i]["count"];
        if (c.is_string() && c.get<std::string>() == "infinite") count.reset();
        else if (c.is_number_integer() && c.get<std::int64_t>() >= 0) count = c.get<std::uint64_t>();
        else throw ParseError(w + ".count: expected a non-negative integer or \"infinite\"");
      }
      std::string label = es[i].contains("label") ? io::as_string(es[i]["label"], w + ".label") : std::string();
      g.add_edges(s, t, count, label);
    }
  }
  if (doc.contains("regularity")) {
    const auto& r = doc["regularity"];
    if (!r.is_object()) throw ParseError(where + ".regularity: expected an object");
    for (auto it = r.begin(); it != r.end(); ++it) {
      const std::string w = where + ".regularity." + it.key();
      const auto v = vertex(io::Json(it.key()), w);
      const std::string kind = io::as_string(it.value(), w);
      try {
        if (kind == "singular") g.set_regularity(v, Regularity::singular);
        else if (kind == "regular") g.set_regularity(v, Regularity::regular);
        else throw ParseError(w + ": expected \"singular\" or \"regular\"");
      } catch (const PreconditionError& e) {
        throw ParseError(w + ": " + e.what());
      }
    }
  }
  return g;
}

}  // namespace glab
