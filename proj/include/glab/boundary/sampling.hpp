#pragma once

#include "glab/boundary/boundary_path.hpp"

namespace glab {

struct PathSampling {
  std::uint64_t max_index = 9;   // edge indices / copies drawn from 1..max_index
  std::size_t max_prefix = 3;
  std::size_t max_period = 3;
  std::size_t max_finite = 5;
};

/// Mixed finite/infinite boundary paths with eventually periodic index tails.
inline ModelPath random_boundary_path(const ModelGraph& g, Rng& rng, const PathSampling& o = {}) {
  const Point z = g.z_space().random_point(rng);
  if (rng.coin()) {
    std::vector<std::uint64_t> pre(rng.below(o.max_prefix + 1)), per(1 + rng.below(o.max_period));
    for (auto& v : pre) v = rng.between(1, o.max_index);
    for (auto& v : per) v = rng.between(1, o.max_index);
    return param_f(g, z, EventuallyPeriodic<std::uint64_t>(pre, per));
  }
  std::vector<std::uint64_t> idx(rng.below(o.max_finite + 1));
  for (auto& v : idx) v = rng.between(1, o.max_index);
  return ModelPath(param_f_k(g, z, g.x_space().random_point(rng), idx));
}

/// Finite paths end at a singular vertex; infinite ones are cycles found by a
/// random walk, with a random prefix. Falls back to finite paths when no cycle exists.
inline FPath random_boundary_path(const DiscreteGraph& g, Rng& rng, const PathSampling& o = {}) {
  using FP = FinitePath<DiscreteGraph>;
  auto grow = [&](FPath p, std::size_t steps) {
    for (std::size_t i = 0; i < steps; ++i) {
      auto e = g.random_edge_with_domain(p.range(g), rng, o.max_index);
      if (!e) break;
      p = p.prepend(g, *e);
    }
    return p;
  };
  if (rng.coin()) {
    // walk a_1, a_2, ... with d(a_{i+1}) = r(a_i) until a vertex repeats
    std::vector<DiscreteVertex> seen{g.random_vertex(rng)};
    std::vector<DiscreteEdge> walk;
    for (std::size_t step = 0; step < 4 * g.vertex_count() + 8; ++step) {
      auto e = g.random_edge_with_domain(seen.back(), rng, o.max_index);
      if (!e) break;
      walk.push_back(*e);
      const DiscreteVertex v = g.range(*e);
      const auto j = static_cast<std::size_t>(std::find(seen.begin(), seen.end(), v) - seen.begin());
      seen.push_back(v);
      if (j + 1 < seen.size()) {
        std::vector<DiscreteEdge> period(walk.begin() + static_cast<std::ptrdiff_t>(j), walk.end());
        std::reverse(period.begin(), period.end());
        FPath p(DiscreteInfinitePath{EventuallyPeriodic<DiscreteEdge>({}, period)});
        return grow(p, rng.below(o.max_prefix + 1));
      }
    }
  }
  std::vector<std::size_t> singular;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (g.is_singular({v})) singular.push_back(v);
  if (singular.empty()) throw UnsupportedError("graph has no singular vertex and no cycle was found");
  const FPath start(FP::vertex({singular[rng.below(singular.size())]}));
  return grow(start, rng.below(o.max_finite + 1));
}

}  // namespace glab
