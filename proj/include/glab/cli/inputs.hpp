#pragma once

#include "glab/boundary/convergence.hpp"
#include "glab/cli/config.hpp"
#include "glab/ktheory/snf.hpp"

#include <optional>

namespace glab::cli {

/// {"matrix": [[...], ...]} or a bare array of rows.
inline IntMatrix matrix_from_json(const io::Json& doc, const std::string& where = "matrix") {
  const io::Json* rows = &doc;
  std::string w = where;
  if (doc.is_object()) {
    io::only_keys(doc, {"matrix"}, where);
    rows = &io::field(doc, "matrix", where);
    w += ".matrix";
  }
  io::as_array(*rows, w);
  const std::size_t r = rows->size();
  const std::size_t c = r ? io::as_array((*rows)[0], w + "[0]").size() : 0;
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    const std::string wi = w + "[" + std::to_string(i) + "]";
    const auto& row = io::as_array((*rows)[i], wi);
    if (row.size() != c) throw ParseError(wi + ": expected " + std::to_string(c) + " entries");
    for (std::size_t j = 0; j < c; ++j) {
      const auto& v = row[j];
      const std::string wij = wi + "[" + std::to_string(j) + "]";
      if (v.is_number_integer()) m(i, j) = Integer(v.get<std::int64_t>());
      else if (v.is_string()) {
        // big entries may be given as decimal strings
        const auto s = v.get<std::string>();
        if (s.empty() || s.find_first_not_of("-0123456789") != std::string::npos || s.find('-', 1) != std::string::npos)
          throw ParseError(wij + ": expected an integer");
        m(i, j) = Integer(s);
      } else {
        throw ParseError(wij + ": expected an integer");
      }
    }
  }
  return m;
}

struct SequenceInput {
  ModelGraph graph;
  ModelSequence sequence;
  ModelPath limit;
};

namespace detail {

inline Point point_field(const io::Json& v, const std::string& where) {
  const auto s = io::as_string(v, where);
  try {
    return Point::parse(s);
  } catch (const Error& e) {
    throw ParseError(where + ": bad point '" + s + "': " + e.what());
  }
}

inline ModelPath path_field(const ModelGraph& g, const io::Json& v, const std::string& where) {
  try {
    return model_path_from_line(g, io::as_string(v, where));
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what());
  }
}

inline Rational rational_field(const io::Json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  const auto s = io::as_string(v, where);
  if (s.empty() || s.find_first_not_of("-0123456789/") != std::string::npos) throw ParseError(where + ": expected p/q");
  try {
    return Rational(s);
  } catch (const std::exception&) {
    throw ParseError(where + ": expected p/q");
  }
}

}  // namespace detail

/// A sequence document:
///   {"graph": {"z_backend": .., "z_order": .., "x_backend": ..},
///    "limit": "<path line>", "head": ["<path line>", ...],
///    "tail": {"constant": "<path line>"}
///         or {"z": {"rule": "constant|vanishing|orbit", "base": "<point>", "q": "p/q"},
///             "x": "<point>", "fixed": [m, ...],
///             "escape": {"kind": "linear", "offset": k} | {"kind": "recurrence", "box": b},
///             "infinite": "<prefix>|<period>"}}
inline SequenceInput sequence_from_json(const io::Json& doc, const std::string& where = "sequence") {
  io::only_keys(doc, {"graph", "limit", "head", "tail"}, where);
  ModelConfig cfg;
  cfg.x_backend = "point";
  if (doc.contains("graph")) {
    const auto& gd = doc["graph"];
    const std::string w = where + ".graph";
    io::only_keys(gd, {"z_backend", "z_order", "x_backend"}, w);
    if (gd.contains("z_backend")) cfg.z_backend = io::as_string(gd["z_backend"], w + ".z_backend");
    if (gd.contains("z_order")) cfg.z_order = io::as_positive(gd["z_order"], w + ".z_order");
    if (gd.contains("x_backend")) cfg.x_backend = io::as_string(gd["x_backend"], w + ".x_backend");
  }
  std::optional<ModelGraph> g;
  try {
    g.emplace(cfg.system(), cfg.x_space());
  } catch (const Error& e) {
    throw ParseError(where + ".graph." + e.what());
  }
  const ModelPath limit = detail::path_field(*g, io::field(doc, "limit", where), where + ".limit");
  ModelSequence seq{{}, limit};
  if (doc.contains("head")) {
    const auto& h = io::as_array(doc["head"], where + ".head");
    for (std::size_t i = 0; i < h.size(); ++i)
      seq.head.push_back(detail::path_field(*g, h[i], where + ".head[" + std::to_string(i) + "]"));
  }
  const auto& t = io::field(doc, "tail", where);
  const std::string wt = where + ".tail";
  io::only_keys(t, {"constant", "z", "x", "fixed", "escape", "infinite"}, wt);
  if (t.contains("constant")) {
    if (t.size() != 1) throw ParseError(wt + ": 'constant' excludes the other tail fields");
    seq.tail = detail::path_field(*g, t["constant"], wt + ".constant");
    return {*g, std::move(seq), limit};
  }
  ModelTail tail;
  const auto& zd = io::field(t, "z", wt);
  const std::string wz = wt + ".z";
  io::only_keys(zd, {"rule", "base", "q"}, wz);
  const auto rule = io::as_string(io::field(zd, "rule", wz), wz + ".rule");
  const Point base = detail::point_field(io::field(zd, "base", wz), wz + ".base");
  if (rule == "constant") tail.z = ZRule::constant(base);
  else if (rule == "orbit") tail.z = ZRule::orbit(base);
  else if (rule == "vanishing") tail.z = ZRule::vanishing(base, detail::rational_field(io::field(zd, "q", wz), wz + ".q"));
  else throw ParseError(wz + ".rule: expected constant, vanishing or orbit");
  if (t.contains("x")) tail.x = detail::point_field(t["x"], wt + ".x");
  if (t.contains("fixed")) {
    const auto& f = io::as_array(t["fixed"], wt + ".fixed");
    for (std::size_t i = 0; i < f.size(); ++i) tail.fixed.push_back(io::as_positive(f[i], wt + ".fixed[" + std::to_string(i) + "]"));
  }
  if (t.contains("escape")) {
    const auto& e = t["escape"];
    const std::string we = wt + ".escape";
    io::only_keys(e, {"kind", "offset", "box"}, we);
    const auto kind = io::as_string(io::field(e, "kind", we), we + ".kind");
    IndexEscape esc;
    if (kind == "linear") {
      esc.kind = IndexEscape::Kind::linear;
      if (e.contains("offset")) {
        const auto o = io::as_int(e["offset"], we + ".offset");
        if (o < 0) throw ParseError(we + ".offset: expected a non-negative integer");
        esc.offset = static_cast<std::uint64_t>(o);
      }
    } else if (kind == "recurrence") {
      esc.kind = IndexEscape::Kind::recurrence;
      const auto b = io::as_int(io::field(e, "box", we), we + ".box");
      if (b < 0) throw ParseError(we + ".box: expected a non-negative integer");
      esc.box = static_cast<std::uint64_t>(b);
    } else {
      throw ParseError(we + ".kind: expected linear or recurrence");
    }
    tail.escape = esc;
  }
  if (t.contains("infinite")) {
    const auto s = io::as_string(t["infinite"], wt + ".infinite");
    try {
      tail.infinite = glab::detail::parse_ep<std::uint64_t>(
          s, [](const std::string& v) { return glab::detail::parse_u64(v, "index"); });
    } catch (const ParseError& e) {
      throw ParseError(wt + ".infinite: " + e.what());
    }
  }
  try {
    glab::detail::well_formed(*g, tail);
  } catch (const Error& e) {
    throw ParseError(wt + ": " + e.what());
  }
  seq.tail = std::move(tail);
  return {*g, std::move(seq), limit};
}

}  // namespace glab::cli
