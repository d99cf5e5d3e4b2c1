#pragma once

#include "glab/error.hpp"
#include "glab/graph/path_box.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace glab {

/// V = U x V_X together with path boxes U_1, ..., U_N.
struct ContractingWitness {
  VertexBox v;
  std::vector<OpenPathBox> boxes;
  /// Index of the first edge of every witness path; x_j lies in V_X.
  std::uint64_t first_index = 1;

  std::size_t n() const { return boxes.size(); }
};

struct ConditionVerdict {
  bool pass = false;
  std::string detail;
};

struct ContractingReport {
  ConditionVerdict compact_closure;
  ConditionVerdict range_inside;     // (i)   r(U_k) subset of V
  ConditionVerdict disjoint;         // (ii)  U_k pitchfork U_l empty for k != l
  ConditionVerdict strict_cover;     // (iii) closure(V) strictly inside the union of d(U_k)

  bool passed() const { return compact_closure.pass && range_inside.pass && disjoint.pass && strict_cover.pass; }
};

/// Least N with rho^-2(U) u ... u rho^-(N+1)(U) = Z, or nullopt past the cap.
inline std::optional<std::uint64_t> covering_translates(const MinimalSystem& sys, const Region& u, std::uint64_t cap) {
  Region cover = sys.space().full_region().complement();
  for (std::uint64_t k = 1; k <= cap; ++k) {
    cover = cover.unite(sys.power(u, -static_cast<std::int64_t>(k + 1)));
    if (cover.is_full()) return k;
  }
  return std::nullopt;
}

/// The box of all e_{x,z,k} with z in U and x in X.
inline OpenPathBox witness_box(const ModelGraph& g, const Region& u, std::uint64_t k, std::uint64_t first_index) {
  OpenPathBox box;
  const Region xfull = g.x_space().full_region();
  for (std::uint64_t i = 1; i <= k + 1; ++i)
    box.coords.push_back({g.system().power(u, -static_cast<std::int64_t>(i)), xfull,
                          index_single(i == 1 ? first_index : k)});
  return box;
}

inline ContractingWitness find_contracting_witness(const ModelGraph& g, const Region& u, const Region& vx,
                                                   std::uint64_t cap = 4096) {
  if (u.is_empty() || vx.is_empty()) throw PreconditionError("contracting search needs non-empty U and V_X");
  if (!u.has_compact_closure() || !vx.has_compact_closure())
    throw PreconditionError("V = U x V_X must have compact closure");
  if (u.closure().is_full() && vx.closure().is_full())
    throw PreconditionError("closure of U x V_X is all of E^0; a contracting set must be a proper subset");

  std::uint64_t j = 0;
  for (std::uint64_t m = 1; m <= (1u << 22); ++m)
    if (vx.contains(g.x_at(m))) { j = m; break; }
  if (j == 0) throw SearchExhausted("no term of the dense sequence found in V_X");

  auto n = covering_translates(g.system(), u, cap);
  if (!n) throw SearchExhausted("translates of U did not cover Z within " + std::to_string(cap) + " steps");

  ContractingWitness w{{u, vx}, {}, j};
  for (std::uint64_t k = 1; k <= *n; ++k) w.boxes.push_back(witness_box(g, u, k, j));
  return w;
}

namespace detail {

// Splits closure(V_X) into atoms by membership in the X-parts of the d-images
// and checks that each atom's Z-part is covered by the matching d-images.
inline bool product_cover(const VertexBox& target, const std::vector<VertexBox>& pieces, std::string& why) {
  struct Atom {
    Region x;
    std::vector<std::size_t> active;
  };
  std::vector<Atom> atoms{{target.x, {}}};
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    std::vector<Atom> next;
    for (auto& a : atoms) {
      Region in = a.x.intersect(pieces[k].x);
      Region out = a.x.minus(pieces[k].x);
      if (!in.is_empty()) {
        auto act = a.active;
        act.push_back(k);
        next.push_back({std::move(in), std::move(act)});
      }
      if (!out.is_empty()) next.push_back({std::move(out), a.active});
    }
    atoms = std::move(next);
  }
  for (const auto& a : atoms) {
    Region cover = target.z.minus(target.z);
    for (auto k : a.active) cover = cover.unite(pieces[k].z);
    Region missed = target.z.minus(cover);
    if (!missed.is_empty()) {
      why = "point (" + missed.some_point().to_string() + ", " + a.x.some_point().to_string() + ") is not covered";
      return false;
    }
  }
  return true;
}

}  // namespace detail

inline ContractingReport verify_contracting_witness(const ModelGraph& g, const ContractingWitness& w) {
  ContractingReport rep;

  rep.compact_closure.pass = !w.v.is_empty() && w.v.z.has_compact_closure() && w.v.x.has_compact_closure();
  rep.compact_closure.detail = rep.compact_closure.pass ? "closure of V is compact" : "V empty or closure not compact";

  if (w.boxes.empty()) {
    rep.range_inside = {false, "no path boxes"};
    rep.disjoint = {false, "no path boxes"};
    rep.strict_cover = {false, "no path boxes"};
    return rep;
  }

  // (i)
  rep.range_inside.pass = true;
  for (std::size_t k = 0; k < w.boxes.size() && rep.range_inside.pass; ++k) {
    const OpenPathBox& b = w.boxes[k];
    if (b.length() == 0) {
      rep.range_inside = {false, "U_" + std::to_string(k + 1) + " has length 0"};
      break;
    }
    if (!range_z_image(g, b).subset_of(w.v.z)) {
      rep.range_inside = {false, "Z-part of r(U_" + std::to_string(k + 1) + ") leaves V"};
      break;
    }
    const IndexSet& first = b.coords.front().index;
    if (first.cofinite()) {
      if (!w.v.x.is_full()) rep.range_inside = {false, "r(U_" + std::to_string(k + 1) + ") has a dense X-part"};
      continue;
    }
    for (auto m : first.elements())
      if (!w.v.x.contains(g.x_at(m))) {
        rep.range_inside = {false, "x_" + std::to_string(m) + " lies outside V_X"};
        break;
      }
  }
  if (rep.range_inside.pass) rep.range_inside.detail = "r(U_k) inside V for all k";

  // (ii)
  rep.disjoint.pass = true;
  for (std::size_t k = 0; k < w.boxes.size() && rep.disjoint.pass; ++k)
    for (std::size_t l = k + 1; l < w.boxes.size(); ++l)
      if (pitchfork(w.boxes[k], w.boxes[l])) {
        rep.disjoint = {false, "U_" + std::to_string(k + 1) + " pitchfork U_" + std::to_string(l + 1) + " is non-empty"};
        break;
      }
  if (rep.disjoint.pass) rep.disjoint.detail = "pairwise pitchforks empty";

  // (iii)
  std::vector<VertexBox> images;
  for (const auto& b : w.boxes) images.push_back(domain_image(g, b));
  const VertexBox cl = w.v.closure();
  std::string why;
  if (!detail::product_cover(cl, images, why)) {
    rep.strict_cover = {false, "closure(V) not covered: " + why};
    return rep;
  }
  std::optional<ModelVertex> outside;
  for (const auto& im : images) {
    if (im.is_empty()) continue;
    Region zout = im.z.minus(cl.z);
    if (!zout.is_empty()) { outside = ModelVertex{zout.some_point(), im.x.some_point()}; break; }
    Region xout = im.x.minus(cl.x);
    if (!xout.is_empty()) { outside = ModelVertex{im.z.some_point(), xout.some_point()}; break; }
  }
  if (!outside) {
    rep.strict_cover = {false, "union of d(U_k) equals closure(V); the inclusion is not strict"};
    return rep;
  }
  rep.strict_cover = {true, "closure(V) covered; " + outside->to_string() + " lies in the union but not in closure(V)"};
  return rep;
}

}  // namespace glab
