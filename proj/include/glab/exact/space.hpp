#pragma once

#include "glab/error.hpp"
#include "glab/exact/point.hpp"
#include "glab/exact/region.hpp"
#include "glab/random.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace glab {

enum class SpaceKind { circle, cantor, finite, countable_discrete, product };

inline std::string to_string(SpaceKind k) {
  switch (k) {
    case SpaceKind::circle: return "circle";
    case SpaceKind::cantor: return "cantor";
    case SpaceKind::finite: return "finite";
    case SpaceKind::countable_discrete: return "countable-discrete";
    case SpaceKind::product: return "product";
  }
  return "?";
}

/// Index of the diagonal pairing i -> (box, repetition), i >= 1.
///
/// Diagonal s lists (s, 0), (s-1, 1), ..., (0, s), so box b is revisited at
/// repetitions r = 0, 1, 2, ... along successive diagonals.
struct PairingCell {
  std::uint64_t box;
  std::uint64_t repetition;
};

inline PairingCell unpair(std::uint64_t i) {
  if (i == 0) throw PreconditionError("dense sequence is indexed from 1");
  std::uint64_t j = i - 1;
  std::uint64_t s = 0;
  while ((s + 1) * (s + 2) / 2 <= j) ++s;
  const std::uint64_t t = j - s * (s + 1) / 2;
  return {s - t, t};
}

inline std::uint64_t pair_index(std::uint64_t box, std::uint64_t repetition) {
  const std::uint64_t s = box + repetition;
  return s * (s + 1) / 2 + repetition + 1;
}

/// A second-countable space with exact points, an exact metric comparison
/// against rational thresholds, and a total enumeration of basic opens.
///
/// Basic opens:
///   circle   level L >= 2, k < 2^L: the arc ((k-1)/2^L, (k+1)/2^L)
///   cantor   cylinders [w], words ordered by length then by value
///   finite   box i is the singleton {i mod n}
///   countable-discrete  box i is the singleton {i}
///   product  box i is box(a) x box(b) for the pairing cell (a, b) of i+1
class Space {
 public:
  static Space circle() { return Space(SpaceKind::circle); }
  static Space cantor() { return Space(SpaceKind::cantor); }
  static Space finite(std::uint64_t n) {
    if (n == 0) throw PreconditionError("finite space must be non-empty");
    Space s(SpaceKind::finite);
    s.size_ = n;
    return s;
  }
  static Space point() { return finite(1); }
  static Space countable_discrete() { return Space(SpaceKind::countable_discrete); }
  static Space product(Space a, Space b) {
    Space s(SpaceKind::product);
    s.factors_ = {std::make_shared<const Space>(std::move(a)), std::make_shared<const Space>(std::move(b))};
    return s;
  }

  SpaceKind kind() const { return kind_; }
  std::uint64_t size() const { return size_; }
  const Space& factor(std::size_t i) const { return *factors_.at(i); }

  bool is_compact() const {
    switch (kind_) {
      case SpaceKind::countable_discrete: return false;
      case SpaceKind::product: return factor(0).is_compact() && factor(1).is_compact();
      default: return true;
    }
  }

  /// Whether the space is a single point.
  bool is_point() const { return kind_ == SpaceKind::finite && size_ == 1; }

  /// Covering dimension.
  unsigned dimension() const {
    switch (kind_) {
      case SpaceKind::circle: return 1;
      case SpaceKind::product: return factor(0).dimension() + factor(1).dimension();
      default: return 0;
    }
  }

  std::string name() const {
    switch (kind_) {
      case SpaceKind::finite: return size_ == 1 ? "point" : "finite(" + std::to_string(size_) + ")";
      case SpaceKind::product: return "product(" + factor(0).name() + "," + factor(1).name() + ")";
      default: return to_string(kind_);
    }
  }

  bool contains(const Point& p) const {
    switch (kind_) {
      case SpaceKind::circle: return p.is_circle();
      case SpaceKind::cantor: return p.is_cantor();
      case SpaceKind::finite: return p.is_finite() && p.as_finite().index < size_;
      case SpaceKind::countable_discrete: return p.is_finite();
      case SpaceKind::product:
        return p.is_pair() && factor(0).contains(*p.as_pair().first) && factor(1).contains(*p.as_pair().second);
    }
    return false;
  }

  Region full_region() const {
    switch (kind_) {
      case SpaceKind::circle: return IntervalSet::full();
      case SpaceKind::cantor: return CylinderSet::full();
      case SpaceKind::finite: return FiniteSet::full(size_);
      case SpaceKind::countable_discrete: return FiniteSet::full(std::nullopt);
      case SpaceKind::product: return Region::product(factor(0).full_region(), factor(1).full_region());
    }
    return {};
  }

  Region singleton(std::uint64_t i) const {
    if (kind_ == SpaceKind::finite) return FiniteSet::single(size_, i % size_);
    if (kind_ == SpaceKind::countable_discrete) return FiniteSet::single(std::nullopt, i);
    throw UnsupportedError("singleton regions exist only in discrete spaces");
  }

  /// The i-th basic open set, i >= 0. Every index yields a non-empty box.
  Region basic_open(std::uint64_t i) const {
    switch (kind_) {
      case SpaceKind::circle: {
        const auto [level, k] = circle_cell(i);
        const Rational width = Rational(1) / Rational(Integer(1) << level);
        return IntervalSet::open_arc(QPhi(Rational(k) * width - width), QPhi(2 * width));
      }
      case SpaceKind::cantor: return CylinderSet::cylinder(cantor_word(i));
      case SpaceKind::finite:
      case SpaceKind::countable_discrete: return singleton(i);
      case SpaceKind::product: {
        const auto cell = unpair(i + 1);
        return Region::product(factor(0).basic_open(cell.box), factor(1).basic_open(cell.repetition));
      }
    }
    return {};
  }

  /// A designated point of the i-th basic open (its centre).
  Point box_point(std::uint64_t i) const {
    switch (kind_) {
      case SpaceKind::circle: {
        const auto [level, k] = circle_cell(i);
        return Point::circle(QPhi(Rational(k) / Rational(Integer(1) << level)));
      }
      case SpaceKind::cantor: return CantorPoint(cantor_word(i), {0});
      case SpaceKind::finite: return Point::finite(i % size_);
      case SpaceKind::countable_discrete: return Point::finite(i);
      case SpaceKind::product: {
        const auto cell = unpair(i + 1);
        return Point::pair(factor(0).box_point(cell.box), factor(1).box_point(cell.repetition));
      }
    }
    return {};
  }

  /// x_i of the dense sequence, i >= 1: the centre of the box of the
  /// pairing cell of i. Every basic open contains x_i for infinitely many i.
  Point dense_point(std::uint64_t i) const { return box_point(unpair(i).box); }

  /// Whether d(a, b) <= eps, decided exactly.
  ///   circle: arc length; cantor: 2^-(common prefix length);
  ///   discrete: 0/1; product: max of the factor distances.
  bool within(const Point& a, const Point& b, const Rational& eps) const {
    if (eps.sign() < 0) return false;
    switch (kind_) {
      case SpaceKind::circle: {
        QPhi diff = a.as_circle().value() - b.as_circle().value();
        if (diff.sign() < 0) diff = -diff;
        const QPhi e(eps);
        return diff <= e || diff >= QPhi(1) - e;
      }
      case SpaceKind::cantor: {
        const std::size_t lcp = common_prefix_length(a.as_cantor().bits(), b.as_cantor().bits());
        if (lcp == static_cast<std::size_t>(-1)) return true;
        return Rational(1) <= eps * Rational(Integer(1) << lcp);
      }
      case SpaceKind::finite:
      case SpaceKind::countable_discrete: return a == b || eps >= 1;
      case SpaceKind::product:
        return factor(0).within(*a.as_pair().first, *b.as_pair().first, eps) &&
               factor(1).within(*a.as_pair().second, *b.as_pair().second, eps);
    }
    return false;
  }

  Point random_point(Rng& rng) const {
    switch (kind_) {
      case SpaceKind::circle: {
        const Rational p(rng.between(-20, 20), rng.between(1, 12));
        const Rational q(rng.between(-6, 6), rng.between(1, 4));
        return Point::circle(QPhi(p, q));
      }
      case SpaceKind::cantor: {
        std::vector<std::uint8_t> pre(rng.below(6)), per(1 + rng.below(3));
        for (auto& b : pre) b = static_cast<std::uint8_t>(rng.below(2));
        for (auto& b : per) b = static_cast<std::uint8_t>(rng.below(2));
        return Point::cantor(std::move(pre), std::move(per));
      }
      case SpaceKind::finite: return Point::finite(rng.below(size_));
      case SpaceKind::countable_discrete: return Point::finite(rng.below(64));
      case SpaceKind::product: return Point::pair(factor(0).random_point(rng), factor(1).random_point(rng));
    }
    return {};
  }

  /// A random basic open with a proper, non-empty closure where one exists.
  Region random_box(Rng& rng) const {
    switch (kind_) {
      case SpaceKind::circle: {
        const Rational len(1 + rng.below(7), 8 + rng.below(9));
        const Rational start(rng.below(32), 32);
        return IntervalSet::open_arc(QPhi(start), QPhi(len));
      }
      case SpaceKind::cantor: {
        Word w(1 + rng.below(3));
        for (auto& b : w) b = static_cast<std::uint8_t>(rng.below(2));
        return CylinderSet::cylinder(std::move(w));
      }
      case SpaceKind::finite: return singleton(rng.below(size_));
      case SpaceKind::countable_discrete: return singleton(rng.below(64));
      case SpaceKind::product: return Region::product(factor(0).random_box(rng), factor(1).random_box(rng));
    }
    return {};
  }

  friend bool operator==(const Space& a, const Space& b) {
    if (a.kind_ != b.kind_ || a.size_ != b.size_) return false;
    if (a.kind_ != SpaceKind::product) return true;
    return a.factor(0) == b.factor(0) && a.factor(1) == b.factor(1);
  }

 private:
  explicit Space(SpaceKind k) : kind_(k) {}

  static std::pair<unsigned, std::uint64_t> circle_cell(std::uint64_t i) {
    unsigned level = 2;
    while (i >= (std::uint64_t{1} << level)) {
      i -= std::uint64_t{1} << level;
      ++level;
    }
    return {level, i};
  }

  static Word cantor_word(std::uint64_t i) {
    unsigned len = 0;
    while (i >= (std::uint64_t{1} << len)) {
      i -= std::uint64_t{1} << len;
      ++len;
    }
    Word w(len);
    for (unsigned b = 0; b < len; ++b) w[b] = static_cast<std::uint8_t>((i >> b) & 1U);
    return w;
  }

  SpaceKind kind_;
  std::uint64_t size_ = 0;
  std::vector<std::shared_ptr<const Space>> factors_;
};

/// x_i of the dense sequence of X.
inline Point dense_sequence(const Space& x, std::uint64_t i) {
  if (x.kind() == SpaceKind::product) throw UnsupportedError("dense sequence for product backends");
  return x.dense_point(i);
}

/// Whether a finite set of points is eps-dense in the space: every point of
/// the space lies within distance eps of some member. Exact.
inline bool is_eps_dense(const Space& space, const std::vector<Point>& pts, const Rational& eps) {
  if (pts.empty()) return false;
  switch (space.kind()) {
    case SpaceKind::circle: {
      std::vector<QPhi> v;
      for (const auto& p : pts) v.push_back(p.as_circle().value());
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
      const QPhi limit(2 * eps);
      for (std::size_t i = 0; i + 1 < v.size(); ++i)
        if (v[i + 1] - v[i] > limit) return false;
      return QPhi(1) - v.back() + v.front() <= limit;
    }
    case SpaceKind::cantor: {
      // smallest depth D with 2^-D <= eps; every depth-D cylinder must be hit
      if (eps >= 1) return true;
      if (eps.sign() <= 0) return false;
      unsigned depth = 0;
      while (Rational(1) > eps * Rational(Integer(1) << depth)) ++depth;
      if (depth > 24) throw UnsupportedError("cantor density below 2^-24");
      const std::uint64_t cells = std::uint64_t{1} << depth;
      if (pts.size() < cells) return false;
      std::vector<bool> hit(cells, false);
      std::uint64_t count = 0;
      for (const auto& p : pts) {
        std::uint64_t c = 0;
        for (unsigned b = 0; b < depth; ++b) c |= std::uint64_t{p.as_cantor().bit(b)} << b;
        if (!hit[c]) {
          hit[c] = true;
          ++count;
        }
      }
      return count == cells;
    }
    case SpaceKind::finite: {
      if (eps >= 1) return true;
      std::set<std::uint64_t> seen;
      for (const auto& p : pts) seen.insert(p.as_finite().index);
      return seen.size() == space.size();
    }
    case SpaceKind::countable_discrete: return eps >= 1;
    case SpaceKind::product: throw UnsupportedError("density in product backends; use is_eps_dense_product");
  }
  return false;
}

/// eps-density of a finite subset of Z x X for the max metric.
///
/// X is cut into regions on which the set of members "within eps in the X
/// coordinate" is constant (points, depth-D cylinders, or the elementary
/// arcs between the critical points x +- eps); the Z coordinates of each
/// region's active members must be eps-dense in Z.
inline bool is_eps_dense_product(const Space& zspace, const Space& xspace,
                                 const std::vector<std::pair<Point, Point>>& pts, const Rational& eps) {
  if (pts.empty()) return false;
  std::map<Point, std::vector<Point>> by_x;
  for (const auto& [z, x] : pts) by_x[x].push_back(z);

  auto check_active = [&](const std::vector<const Point*>& xs) {
    std::vector<Point> zs;
    for (const Point* x : xs) {
      const auto& v = by_x.at(*x);
      zs.insert(zs.end(), v.begin(), v.end());
    }
    return is_eps_dense(zspace, zs, eps);
  };

  std::vector<Point> xs;
  for (const auto& kv : by_x) xs.push_back(kv.first);

  auto region_check = [&](const Point& rep) {
    std::vector<const Point*> active;
    for (const auto& x : xs)
      if (xspace.within(x, rep, eps)) active.push_back(&x);
    return !active.empty() && check_active(active);
  };

  switch (xspace.kind()) {
    case SpaceKind::finite: {
      for (std::uint64_t i = 0; i < xspace.size(); ++i)
        if (!region_check(Point::finite(i))) return false;
      return true;
    }
    case SpaceKind::countable_discrete: {
      if (eps < 1) return false;
      return region_check(xs.front());
    }
    case SpaceKind::cantor: {
      unsigned depth = 0;
      if (eps.sign() <= 0) return false;
      while (Rational(1) > eps * Rational(Integer(1) << depth)) ++depth;
      if (depth > 16) throw UnsupportedError("cantor density below 2^-16 in products");
      for (std::uint64_t c = 0; c < (std::uint64_t{1} << depth); ++c) {
        Word w(depth);
        for (unsigned b = 0; b < depth; ++b) w[b] = static_cast<std::uint8_t>((c >> b) & 1U);
        if (!region_check(CantorPoint(w, {0}))) return false;
      }
      return true;
    }
    case SpaceKind::circle: {
      if (2 * eps >= 1) return check_active([&] {
          std::vector<const Point*> all;
          for (const auto& x : xs) all.push_back(&x);
          return all;
        }());
      std::vector<QPhi> crit;
      for (const auto& x : xs) {
        crit.push_back((x.as_circle().value() + QPhi(eps)).frac());
        crit.push_back((x.as_circle().value() - QPhi(eps)).frac());
      }
      std::sort(crit.begin(), crit.end());
      crit.erase(std::unique(crit.begin(), crit.end()), crit.end());
      // membership is constant on each open arc between consecutive critical
      // points, and endpoints see a superset of both neighbours
      for (std::size_t i = 0; i < crit.size(); ++i) {
        const QPhi a = crit[i];
        const QPhi b = i + 1 < crit.size() ? crit[i + 1] : crit.front() + QPhi(1);
        if (!region_check(Point::circle(Rational(1, 2) * (a + b)))) return false;
      }
      return true;
    }
    case SpaceKind::product: throw UnsupportedError("nested product density");
  }
  return false;
}

}  // namespace glab
