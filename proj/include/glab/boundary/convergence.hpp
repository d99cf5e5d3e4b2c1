#pragma once

#include "glab/boundary/boundary_path.hpp"
#include "glab/boundary/sampling.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace glab {

enum class Tri { yes, no, undecidable };

inline std::string to_string(Tri t) {
  switch (t) {
    case Tri::yes: return "yes";
    case Tri::no: return "no";
    case Tri::undecidable: return "undecidable";
  }
  return "?";
}

struct ConditionOutcome {
  Tri verdict = Tri::yes;
  std::string detail;
};

/// Verdicts for the three sequence conditions: (i) ranges converge,
/// (ii) leading edges stabilise and converge, (iii) the next edge escapes
/// every compact set.
struct ConvergenceReport {
  ConditionOutcome ranges;
  ConditionOutcome prefixes;
  ConditionOutcome escape;

  /// The sequence converges iff all three hold; a decided failure decides the whole.
  Tri verdict() const {
    const Tri all[] = {ranges.verdict, prefixes.verdict, escape.verdict};
    bool open = false;
    for (Tri t : all) {
      if (t == Tri::no) return Tri::no;
      open = open || t == Tri::undecidable;
    }
    return open ? Tri::undecidable : Tri::yes;
  }
};

/// z_n for n >= 1: constant, vanishing perturbation of a base point, or an orbit.
///   circle:  z_n = base + q 2^-n   (mod 1)
///   cantor:  z_n = base + q 2^n    (2-adically; q must have odd denominator)
///   orbit:   z_n = rho^n(base); convergence is not decided
struct ZRule {
  enum class Kind { constant, vanishing, orbit } kind = Kind::constant;
  Point base;
  Rational q = 0;

  static ZRule constant(Point p) { return {Kind::constant, std::move(p), 0}; }
  static ZRule vanishing(Point p, Rational q) { return {Kind::vanishing, std::move(p), std::move(q)}; }
  static ZRule orbit(Point p) { return {Kind::orbit, std::move(p), 0}; }

  Point at(const MinimalSystem& sys, std::uint64_t n) const {
    switch (kind) {
      case Kind::constant: return base;
      case Kind::orbit: return sys.power(base, static_cast<std::int64_t>(n));
      case Kind::vanishing:
        if (base.is_circle())
          return CirclePoint(base.as_circle().value() + QPhi(q / Rational(Integer(1) << n)));
        if (base.is_cantor()) return CantorPoint::from_rational(base.as_cantor().to_rational() + q * Rational(Integer(1) << n));
        throw UnsupportedError("vanishing perturbations need a circle or Cantor base point");
    }
    return base;
  }

  /// The limit when the rule decides one.
  std::optional<Point> limit() const {
    if (kind == Kind::orbit) return std::nullopt;
    return base;
  }
};

/// Escaping index rule m_n: linear n + offset, or the n-th recurrence of basic box b
/// (the index of (b, n) in the diagonal enumeration, so x_{m_n} is the centre of box b).
struct IndexEscape {
  enum class Kind { linear, recurrence } kind = Kind::linear;
  std::uint64_t offset = 0;
  std::uint64_t box = 0;

  std::uint64_t at(std::uint64_t n) const { return kind == Kind::linear ? n + offset : pair_index(box, n); }
};

/// Tail of a model-graph sequence: mu^(n) = f_k(z_n, x, fixed ++ [m_n]) or f(z_n, idx).
struct ModelTail {
  ZRule z;
  Point x = Point::finite(0);
  std::vector<std::uint64_t> fixed;
  std::optional<IndexEscape> escape;
  std::optional<EventuallyPeriodic<std::uint64_t>> infinite;
};

struct ModelSequence {
  std::vector<ModelPath> head;
  std::variant<ModelPath, ModelTail> tail;  // constant path, or a rule

  ModelPath at(const ModelGraph& g, std::uint64_t n) const {
    if (n == 0) throw PreconditionError("sequences are indexed from 1");
    if (n <= head.size()) return head[n - 1];
    if (auto c = std::get_if<ModelPath>(&tail)) return *c;
    const auto& t = std::get<ModelTail>(tail);
    const Point zn = t.z.at(g.system(), n);
    if (t.infinite) return param_f(g, zn, *t.infinite);
    auto idx = t.fixed;
    if (t.escape) idx.push_back(t.escape->at(n));
    return ModelPath(param_f_k(g, zn, t.x, idx));
  }
};

namespace detail {

inline void well_formed(const ModelGraph& g, const ModelTail& t) {
  if (t.infinite && (t.escape || !t.fixed.empty()))
    throw PreconditionError("an infinite tail carries its indices in the periodic sequence alone");
  if (!g.z_space().contains(t.z.base)) throw PreconditionError("base point of the Z rule is not in Z");
  if (!t.infinite && !g.x_space().contains(t.x)) throw PreconditionError("final X point is not in X");
  if (t.z.kind == ZRule::Kind::vanishing && !(t.z.base.is_circle() || t.z.base.is_cantor()))
    throw PreconditionError("vanishing perturbations need a circle or Cantor Z");
  if (t.z.kind == ZRule::Kind::vanishing && t.z.base.is_cantor() &&
      boost::multiprecision::denominator(t.z.q) % 2 == 0)
    throw PreconditionError("a 2-adic perturbation needs an odd denominator");
  for (auto m : t.fixed)
    if (m == 0) throw PreconditionError("edge indices start at 1");
}

// X-coordinate carried by edge i (1-based) of the tail paths, when it is constant.
struct XField {
  bool varying = false;
  Point value;
};

}  // namespace detail

/// Decides the three sequence conditions for mu^(n) -> mu.
inline ConvergenceReport converges(const ModelGraph& g, const ModelSequence& s, const ModelPath& mu) {
  for (const auto& h : s.head)
    if (!is_boundary_path(g, h)) throw PreconditionError("head entry is not a boundary path");
  ConvergenceReport rep;
  const auto mu_len = mu.length();

  if (auto cp = std::get_if<ModelPath>(&s.tail)) {
    // eventually constant: the literal conditions for a constant sequence nu
    const ModelPath& nu = *cp;
    rep.ranges = nu.range(g) == mu.range(g) ? ConditionOutcome{Tri::yes, "constant range equals r(mu)"}
                                            : ConditionOutcome{Tri::no, "constant range differs from r(mu)"};
    if (!mu_len) {
      rep.prefixes = nu == mu ? ConditionOutcome{Tri::yes, "eventually equal to mu"}
                              : ConditionOutcome{Tri::no, nu.length() ? "finite terms cannot approach an infinite path"
                                                                      : "some edge of the constant tail differs from mu"};
    } else {
      bool ok = !nu.length() || *nu.length() >= *mu_len;
      for (std::size_t i = 1; ok && i <= *mu_len; ++i) ok = nu.edge(g, i) == mu.edge(g, i);
      rep.prefixes = ok ? ConditionOutcome{Tri::yes, "leading edges equal those of mu"}
                        : ConditionOutcome{Tri::no, "leading edges of the constant tail differ from mu"};
    }
    if (mu_len && (!nu.length() || *nu.length() > *mu_len))
      rep.escape = {Tri::no, "edge " + std::to_string(*mu_len + 1) + " is constant, so it stays in a compact set"};
    else
      rep.escape = {Tri::yes, "no term is longer than mu"};
    return rep;
  }

  const ModelTail& t = std::get<ModelTail>(s.tail);
  detail::well_formed(g, t);
  const std::optional<Point> zlim = t.z.limit();
  const std::size_t L = t.fixed.size();
  const std::optional<std::size_t> tail_len =
      t.infinite ? std::nullopt : std::optional<std::size_t>(L + (t.escape ? 1 : 0));

  // index of edge i, nullopt for the escaping edge
  auto index_of = [&](std::size_t i) -> std::optional<std::uint64_t> {
    if (t.infinite) return t.infinite->at(i - 1);
    if (i <= L) return t.fixed[i - 1];
    return std::nullopt;
  };
  // X-coordinate of the target of edge i, i.e. of d(e_{i-1}) read as x_{n_i}; i = 1 is the range
  auto x_of_index_position = [&](std::size_t i) -> detail::XField {
    // x_{n_i} where n_i is the i-th index; past the indices it is the final x
    if (t.infinite) return {false, g.x_at(t.infinite->at(i - 1))};
    if (i <= L) return {false, g.x_at(t.fixed[i - 1])};
    if (i == L + 1 && t.escape) {
      if (t.escape->kind == IndexEscape::Kind::recurrence) return {false, g.x_space().box_point(t.escape->box)};
      if (g.x_space().is_point()) return {false, Point::finite(0)};
      return {true, Point()};
    }
    return {false, t.x};
  };
  // edge i = (rho^-i z_n, x_{n_{i+1}}, n_i)
  auto x_of_edge = [&](std::size_t i) { return x_of_index_position(i + 1); };

  // (i)
  {
    const auto xr = x_of_index_position(1);
    if (!zlim) rep.ranges = {Tri::undecidable, "orbit rule: convergence of z_n is not decided"};
    else if (xr.varying) rep.ranges = {Tri::undecidable, "X-coordinate of the range varies with n"};
    else if (ModelVertex{*zlim, xr.value} == mu.range(g)) rep.ranges = {Tri::yes, "r(mu^(n)) -> " + mu.range(g).to_string()};
    else rep.ranges = {Tri::no, "r(mu^(n)) -> " + ModelVertex{*zlim, xr.value}.to_string() + " != r(mu)"};
  }

  // (ii)
  if (!mu_len) {
    if (tail_len) {
      rep.prefixes = {Tri::no, "terms have length " + std::to_string(*tail_len) + " < infinity"};
    } else if (!(*t.infinite == mu.infinite().indices)) {
      rep.prefixes = {Tri::no, "index sequence differs from that of mu"};
    } else if (!zlim) {
      rep.prefixes = {Tri::undecidable, "orbit rule: convergence of z_n is not decided"};
    } else {
      rep.prefixes = *zlim == mu.infinite().z ? ConditionOutcome{Tri::yes, "every leading segment converges"}
                                              : ConditionOutcome{Tri::no, "base points converge elsewhere"};
    }
  } else {
    const std::size_t K = *mu_len;
    rep.prefixes = {Tri::yes, K == 0 ? "mu is a vertex" : "leading edges converge"};
    if (tail_len && *tail_len < K) {
      rep.prefixes = {Tri::no, "terms are shorter than mu"};
    } else {
      for (std::size_t i = 1; i <= K; ++i) {
        const ModelEdge target = mu.edge(g, i);
        const auto idx = index_of(i);
        if (!idx) {
          rep.prefixes = {Tri::no, "edge " + std::to_string(i) + " has escaping index"};
          break;
        }
        if (*idx != target.index) {
          rep.prefixes = {Tri::no, "edge " + std::to_string(i) + " has index " + std::to_string(*idx)};
          break;
        }
        const auto xf = x_of_edge(i);
        if (xf.varying) {
          rep.prefixes = {Tri::undecidable, "X-coordinate of edge " + std::to_string(i) + " varies with n"};
          continue;
        }
        if (!(xf.value == target.x)) {
          rep.prefixes = {Tri::no, "edge " + std::to_string(i) + " has X-coordinate " + xf.value.to_string()};
          break;
        }
        if (!zlim) {
          rep.prefixes = {Tri::undecidable, "orbit rule: convergence of z_n is not decided"};
          continue;
        }
        if (!(g.system().power(*zlim, -static_cast<std::int64_t>(i)) == target.z)) {
          rep.prefixes = {Tri::no, "edge " + std::to_string(i) + " converges to a different Z-coordinate"};
          break;
        }
      }
    }
  }

  // (iii)
  if (!mu_len) {
    rep.escape = {Tri::yes, "mu is infinite"};
  } else {
    const std::size_t K = *mu_len;
    if (tail_len && *tail_len <= K) {
      rep.escape = {Tri::yes, "no term is longer than mu"};
    } else if (!index_of(K + 1)) {
      rep.escape = {Tri::yes, "indices of edge " + std::to_string(K + 1) + " are unbounded, leaving every compact set"};
    } else {
      const auto xf = x_of_edge(K + 1);
      if (xf.varying && !g.x_space().is_compact())
        rep.escape = {Tri::undecidable, "edge " + std::to_string(K + 1) + " has varying X-coordinate in a non-compact X"};
      else
        rep.escape = {Tri::no, "edge " + std::to_string(K + 1) + " has fixed index " + std::to_string(*index_of(K + 1)) +
                                   " and lies in a compact set"};
    }
  }
  return rep;
}

// sequences in the one-vertex graph F and in Z x dF

/// nu^(n) = nu for the constant rule, nu . e_{n + offset} for the escaping rule (nu finite).
struct FSequence {
  std::vector<FPath> head;
  FPath base;
  std::optional<std::uint64_t> escape_offset;

  FPath at(const DiscreteGraph& f, std::uint64_t n) const {
    if (n == 0) throw PreconditionError("sequences are indexed from 1");
    if (n <= head.size()) return head[n - 1];
    if (!escape_offset) return base;
    auto es = base.finite().edges();
    es.push_back({0, n + *escape_offset});
    return FPath(FinitePath<DiscreteGraph>::from_edges(f, std::move(es)));
  }
};

inline ConvergenceReport converges(const DiscreteGraph& f, const FSequence& s, const FPath& mu) {
  if (s.escape_offset && !s.base.is_finite()) throw PreconditionError("an escaping rule needs a finite base path");
  ConvergenceReport rep;
  rep.ranges = {Tri::yes, "one vertex"};
  if (s.base.range(f) != mu.range(f)) rep.ranges = {Tri::no, "ranges differ"};
  const auto mu_len = mu.length();
  const auto base_len = s.base.length();
  const std::optional<std::size_t> tail_len = base_len ? std::optional<std::size_t>(*base_len + (s.escape_offset ? 1 : 0))
                                                       : std::nullopt;
  if (!mu_len) {
    rep.prefixes = (!tail_len && s.base == mu) ? ConditionOutcome{Tri::yes, "eventually equal"}
                                               : ConditionOutcome{Tri::no, "terms do not approach the infinite path"};
    rep.escape = {Tri::yes, "mu is infinite"};
    return rep;
  }
  const std::size_t K = *mu_len;
  bool ok = !tail_len || *tail_len >= K;
  for (std::size_t i = 1; ok && i <= K; ++i) {
    if (base_len && i > *base_len) ok = false;  // escaping edge cannot converge
    else ok = s.base.edge(f, i) == mu.edge(f, i);
  }
  rep.prefixes = ok ? ConditionOutcome{Tri::yes, "leading edges equal"} : ConditionOutcome{Tri::no, "leading edges differ"};
  if (tail_len && *tail_len <= K) rep.escape = {Tri::yes, "no term is longer than mu"};
  else if (base_len && *base_len == K && s.escape_offset) rep.escape = {Tri::yes, "edge copies are unbounded"};
  else rep.escape = {Tri::no, "edge " + std::to_string(K + 1) + " is constant"};
  return rep;
}

/// (z_n, nu^(n)) in Z x dF.
struct ProductSequence {
  std::vector<std::pair<Point, FPath>> head;
  ZRule z;
  FSequence nu;
};

/// Convergence in Z x dF, decided componentwise.
inline Tri product_converges(const ModelGraph& g, const DiscreteGraph& f, const ProductSequence& s, const Point& z,
                             const FPath& nu) {
  (void)g;
  const auto zl = s.z.limit();
  const Tri tz = !zl ? Tri::undecidable : (*zl == z ? Tri::yes : Tri::no);
  const Tri tn = converges(f, s.nu, nu).verdict();
  if (tz == Tri::no || tn == Tri::no) return Tri::no;
  if (tz == Tri::undecidable || tn == Tri::undecidable) return Tri::undecidable;
  return Tri::yes;
}

/// The image sequence h(z_n, nu^(n)) in dE, described by a model tail.
inline ModelSequence h_image(const ModelGraph& g, const ProductSequence& s) {
  ModelSequence out;
  for (const auto& [z, nu] : s.head) out.head.push_back(homeo_h(g, z, nu));
  for (const auto& nu : s.nu.head) (void)nu;  // F-heads are absorbed into the product head
  ModelTail t;
  t.z = s.z;
  t.x = Point::finite(0);
  if (!s.nu.base.is_finite()) {
    const ModelPath img = homeo_h(g, s.z.base, s.nu.base);
    t.infinite = img.infinite().indices;
  } else {
    for (const auto& e : s.nu.base.finite().edges()) t.fixed.push_back(e.copy);
    if (s.nu.escape_offset) t.escape = IndexEscape{IndexEscape::Kind::linear, *s.nu.escape_offset, 0};
  }
  out.tail = t;
  return out;
}

struct ProductSample {
  ProductSequence sequence;
  Point z;
  FPath limit;
};

/// A product sequence that converges by construction: constant or vanishing z_n,
/// and a constant or escaping F-sequence, behind a short random head.
inline ProductSample random_convergent_product_sequence(const ModelGraph& g, const DiscreteGraph& f, Rng& rng) {
  ProductSample out;
  out.z = g.z_space().random_point(rng);
  const bool can_vanish = out.z.is_circle() || out.z.is_cantor();
  auto& s = out.sequence;
  s.z = can_vanish && rng.coin() ? ZRule::vanishing(out.z, Rational(1 + rng.below(5), 3)) : ZRule::constant(out.z);
  s.nu.base = random_boundary_path(f, rng);
  out.limit = s.nu.base;
  if (s.nu.base.is_finite() && rng.coin()) s.nu.escape_offset = rng.below(5);
  for (std::uint64_t h = rng.below(3); h > 0; --h) s.head.emplace_back(g.z_space().random_point(rng), random_boundary_path(f, rng));
  return out;
}

}  // namespace glab
