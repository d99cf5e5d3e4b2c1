#pragma once

#include "glab/boundary/sampling.hpp"
#include "glab/graph/path_box.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace glab {

/// (x, k, y) with sigma^n(x) = sigma^m(y), k = n - m. The witness (n, m) is
/// always the minimal one, so equal elements compare equal.
template <class G>
struct GroupoidElement {
  BoundaryPath<G> x;
  std::int64_t k = 0;
  BoundaryPath<G> y;
  std::uint64_t n = 0;
  std::uint64_t m = 0;

  bool is_unit() const { return k == 0 && x == y; }
  friend bool operator==(const GroupoidElement&, const GroupoidElement&) = default;
  friend auto operator<=>(const GroupoidElement&, const GroupoidElement&) = default;
};

/// G(dE, sigma_E).
template <class G>
class DeaconuRenault {
 public:
  using Path = BoundaryPath<G>;
  using Element = GroupoidElement<G>;

  explicit DeaconuRenault(const G& g) : g_(&g) {}
  const G& graph() const { return *g_; }

  Element make_element(const Path& x, std::uint64_t n, std::uint64_t m, const Path& y) const {
    if (!is_boundary_path(*g_, x) || !is_boundary_path(*g_, y)) throw PreconditionError("not a boundary path");
    const Path sx = x.shift(*g_, n);
    const Path sy = y.shift(*g_, m);
    if (!(sx == sy))
      throw PreconditionError("sigma^" + std::to_string(n) + "(x) != sigma^" + std::to_string(m) + "(y)");
    // valid witnesses are closed upwards, so walk down to the least one
    while (n > 0 && m > 0 && x.shift(*g_, n - 1) == y.shift(*g_, m - 1)) --n, --m;
    return {x, static_cast<std::int64_t>(n) - static_cast<std::int64_t>(m), y, n, m};
  }

  Element unit(const Path& x) const { return make_element(x, 0, 0, x); }
  Element range(const Element& a) const { return unit(a.x); }
  Element source(const Element& a) const { return unit(a.y); }
  Element inverse(const Element& a) const { return {a.y, -a.k, a.x, a.m, a.n}; }

  bool composable(const Element& a, const Element& b) const { return a.y == b.x; }

  /// (x,k,y)(y,l,z) = (x,k+l,z).
  Element compose(const Element& a, const Element& b) const {
    if (!composable(a, b)) throw ComposabilityError("source of the first element is not the range of the second");
    const std::uint64_t t = std::max(a.m, b.n);
    return make_element(a.x, a.n + t - a.m, b.m + t - b.n, b.y);
  }

  std::int64_t cocycle(const Element& a) const { return a.k; }

  /// An element with range x: (x, a - b, y) where y prepends b edges to sigma^a(x).
  Element random_element_from(const Path& x, Rng& rng, std::uint64_t max_index = 9) const {
    std::uint64_t a = rng.below(4);
    if (x.length()) a = std::min<std::uint64_t>(a, *x.length());
    Path y = x.shift(*g_, a);
    std::uint64_t b = 0;
    for (std::uint64_t want = rng.below(4); b < want; ++b) {
      auto e = prepend_candidate(y, rng, max_index);
      if (!e) break;
      y = y.prepend(*g_, *e);
    }
    return make_element(x, a, b, y);
  }

  Element random_element(Rng& rng) const { return random_element_from(random_boundary_path(*g_, rng), rng); }

  /// All (n, m) with n != m, n, m <= bound, both shifts defined and sigma^n(mu) = sigma^m(mu).
  std::vector<std::pair<std::uint64_t, std::uint64_t>> isotropy_search(const Path& mu, std::uint64_t bound) const {
    if (bound < 1) throw PreconditionError("isotropy bound must be >= 1");
    std::uint64_t top = bound;
    if (mu.length()) top = std::min<std::uint64_t>(top, *mu.length());
    std::vector<Path> shifts{mu};
    for (std::uint64_t i = 1; i <= top; ++i) shifts.push_back(shifts.back().shift(*g_));
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    for (std::uint64_t n = 0; n <= top; ++n)
      for (std::uint64_t m = 0; m <= top; ++m)
        if (n != m && shifts[n] == shifts[m]) out.emplace_back(n, m);
    return out;
  }

 private:
  std::optional<typename G::edge_type> prepend_candidate(const Path& y, Rng& rng, std::uint64_t max_index) const {
    return g_->random_edge_with_domain(y.range(*g_), rng, max_index);
  }

  const G* g_;
};

/// The exact argument behind the absence of isotropy at mu: finite paths by
/// length, infinite model paths by reducing sigma^k mu = sigma^l mu to
/// rho^(l-k)(z) = z and checking freeness.
struct SymbolicReduction {
  bool certified = false;
  std::string argument;
};

inline SymbolicReduction symbolic_isotropy_reduction(const ModelGraph& g, const ModelPath& mu, std::uint64_t bound) {
  if (mu.is_finite())
    return {true, "finite path of length " + std::to_string(*mu.length()) +
                      ": sigma^k and sigma^l have lengths that differ unless k = l"};
  const auto periods = freeness_check(g.system(), mu.infinite().z, bound);
  if (!periods.empty())
    return {false, "rho^" + std::to_string(periods.front()) + " fixes the base point; freeness fails"};
  return {true, "sigma^k(mu) = sigma^l(mu) forces rho^(l-k)(z) = z; no period <= " + std::to_string(bound)};
}

struct PrincipalityReport {
  std::uint64_t samples = 0;
  std::uint64_t finite_samples = 0;
  std::uint64_t isotropic = 0;
  std::uint64_t symbolic_failures = 0;
  std::optional<std::string> first_isotropy;  // line format of the first isotropic path

  bool principal() const { return isotropic == 0 && symbolic_failures == 0; }
};

template <class G>
PrincipalityReport principality_sample(const G& g, std::uint64_t samples, std::uint64_t bound, std::uint64_t seed) {
  const DeaconuRenault<G> dr(g);
  Rng rng(seed);
  PrincipalityReport rep;
  for (std::uint64_t s = 0; s < samples; ++s) {
    const auto mu = random_boundary_path(g, rng);
    ++rep.samples;
    if (mu.is_finite()) ++rep.finite_samples;
    if (!dr.isotropy_search(mu, bound).empty()) {
      ++rep.isotropic;
      if (!rep.first_isotropy) rep.first_isotropy = to_line(g, mu);
    }
    if constexpr (std::is_same_v<G, ModelGraph>) {
      if (!symbolic_isotropy_reduction(g, mu, bound).certified) ++rep.symbolic_failures;
    }
  }
  return rep;
}

// basic open bisections B(U, n, m, V) of the model groupoid

struct BasicOpenBisection {
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  OpenPathBox u;  // cylinder of paths whose leading edges lie in u
  OpenPathBox v;
};

struct BisectionCheck {
  bool certificate = false;
  std::string detail;
  std::uint64_t sampled = 0;
  std::uint64_t failures = 0;
  bool unit_space = false;

  bool passed() const { return certificate && failures == 0; }
};

namespace detail {

/// sigma^n restricted to the cylinder of u is injective when the first n index
/// sets are singletons: sigma^n(mu) fixes d(mu_n), and a fixed index then fixes mu_n.
inline std::optional<std::string> injectivity_gap(const OpenPathBox& u, std::uint64_t n) {
  if (u.length() < n)
    return "box fixes " + std::to_string(u.length()) + " leading edges, fewer than n = " + std::to_string(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const auto& idx = u.coords[i].index;
    if (idx.cofinite() || idx.elements().size() != 1)
      return "index set of coordinate " + std::to_string(i + 1) + " is not a singleton";
  }
  return std::nullopt;
}

inline bool in_cylinder(const ModelGraph& g, const OpenPathBox& u, const ModelPath& p) {
  if (p.length() && *p.length() < u.length()) return false;
  return u.contains(p.truncate(g, u.length()));
}

/// The unique path in the cylinder of u with sigma^n = w, built edge by edge.
inline ModelPath rebuild(const ModelGraph& g, const OpenPathBox& u, std::uint64_t n, ModelPath w) {
  for (std::uint64_t i = n; i >= 1; --i) {
    const ModelVertex v = w.range(g);
    w = w.prepend(g, ModelEdge{v.z, v.x, *u.coords[i - 1].index.elements().begin()});
  }
  return w;
}

/// Rejection sampling of paths in the cylinder of u; sampled index values
/// respect singleton index sets.
inline std::optional<ModelPath> sample_cylinder(const ModelGraph& g, const OpenPathBox& u, Rng& rng) {
  for (int attempt = 0; attempt < 400; ++attempt) {
    ModelPath p = random_boundary_path(g, rng);
    const Point z = u.length() ? g.system().forward(u.coords[0].z.some_point())
                               : g.z_space().random_point(rng);
    std::vector<std::uint64_t> idx;
    for (std::size_t i = 0; i < u.length(); ++i) {
      const auto& s = u.coords[i].index;
      if (!s.cofinite() && !s.elements().empty()) idx.push_back(*std::next(s.elements().begin(), static_cast<std::ptrdiff_t>(rng.below(s.elements().size()))));
      else idx.push_back(rng.between(1, 9));
    }
    if (rng.coin() || !p.is_finite()) {
      std::vector<std::uint64_t> tail(1 + rng.below(3));
      for (auto& t : tail) t = rng.between(1, 9);
      p = param_f(g, attempt % 2 ? g.z_space().random_point(rng) : z, EventuallyPeriodic<std::uint64_t>(idx, tail));
    } else {
      p = ModelPath(param_f_k(g, attempt % 2 ? g.z_space().random_point(rng) : z, g.x_space().random_point(rng), idx));
    }
    if (in_cylinder(g, u, p)) return p;
  }
  return std::nullopt;
}

}  // namespace detail

/// Certificate for sigma^n|_U and sigma^m|_V, then sampled checks that range and
/// source are injective on B(U, n, m, V).
inline BisectionCheck basic_bisection(const ModelGraph& g, const BasicOpenBisection& b, std::uint64_t samples,
                                      std::uint64_t seed) {
  BisectionCheck out;
  if (auto gap = detail::injectivity_gap(b.u, b.n)) {
    out.detail = "U: " + *gap;
    return out;
  }
  if (auto gap = detail::injectivity_gap(b.v, b.m)) {
    out.detail = "V: " + *gap;
    return out;
  }
  out.certificate = true;
  out.unit_space = b.n == 0 && b.m == 0;
  out.detail = out.unit_space ? "n = m = 0: a box in the unit space" : "leading index sets are singletons";
  Rng rng(seed);
  const DeaconuRenault<ModelGraph> dr(g);
  for (std::uint64_t s = 0; s < samples; ++s) {
    // range side: x in U determines the element through the unique y in V
    if (auto x = detail::sample_cylinder(g, b.u, rng)) {
      ++out.sampled;
      const ModelPath w = x->shift(g, b.n);
      if (!(detail::rebuild(g, b.u, b.n, w) == *x)) ++out.failures;
      const ModelPath y = detail::rebuild(g, b.v, b.m, w);
      if (detail::in_cylinder(g, b.v, y)) {
        const auto el = dr.make_element(*x, b.n, b.m, y);
        if (!(dr.range(el).x == *x)) ++out.failures;
      }
    }
    if (auto y = detail::sample_cylinder(g, b.v, rng)) {
      ++out.sampled;
      const ModelPath w = y->shift(g, b.m);
      if (!(detail::rebuild(g, b.v, b.m, w) == *y)) ++out.failures;
    }
  }
  return out;
}

/// Two paths in the cylinder of u with equal sigma^n and different first edges,
/// when the first index set has two members.
inline std::optional<std::pair<ModelPath, ModelPath>> injectivity_counterexample(const ModelGraph& g, const OpenPathBox& u,
                                                                                  std::uint64_t n, Rng& rng) {
  if (n == 0) return std::nullopt;
  for (int t = 0; t < 200; ++t) {
    auto p = detail::sample_cylinder(g, u, rng);
    if (!p) return std::nullopt;
    for (std::uint64_t i = 1; i <= n && i <= u.length(); ++i) {
      const ModelEdge e = p->edge(g, i);
      for (std::uint64_t alt = 1; alt <= 16; ++alt) {
        if (alt == e.index || !u.coords[i - 1].index.contains(alt)) continue;
        // replace the index of edge i; edges before it change only through x_{n_i}
        ModelPath q = p->shift(g, i);
        q = q.prepend(g, ModelEdge{e.z, e.x, alt});
        for (std::uint64_t j = i - 1; j >= 1; --j) {
          const ModelVertex r = q.range(g);
          q = q.prepend(g, ModelEdge{r.z, r.x, p->edge(g, j).index});
        }
        if (detail::in_cylinder(g, u, q) && !(q == *p) && q.shift(g, n) == p->shift(g, n)) return std::make_pair(*p, q);
      }
    }
  }
  return std::nullopt;
}

}  // namespace glab
