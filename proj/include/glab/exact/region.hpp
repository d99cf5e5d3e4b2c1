#pragma once

#include "glab/error.hpp"
#include "glab/exact/point.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace glab {

/// An interval of [0, 1) with exact endpoints; lo == hi only for a closed point.
struct Interval {
  QPhi lo, hi;
  bool lo_closed = false;
  bool hi_closed = false;

  bool contains(const QPhi& t) const {
    const auto a = t <=> lo;
    const auto b = t <=> hi;
    const bool above = a > 0 || (a == 0 && lo_closed);
    const bool below = b < 0 || (b == 0 && hi_closed);
    return above && below;
  }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// A finite union of intervals of the circle [0, 1), kept sorted, disjoint
/// and merged, so equal sets have equal representations.
class IntervalSet {
 public:
  IntervalSet() = default;

  static IntervalSet empty() { return {}; }
  static IntervalSet full() { return from_intervals({Interval{QPhi(0), QPhi(1), true, false}}); }

  /// The open arc (start, start + length) of the circle, 0 < length <= 1.
  static IntervalSet open_arc(const QPhi& start, const QPhi& length) {
    if (length.sign() <= 0 || length > QPhi(1)) throw PreconditionError("arc length must lie in (0, 1]");
    const QPhi a = start.frac();
    const QPhi b = a + length;
    if (b <= QPhi(1)) return from_intervals({Interval{a, b, false, false}});
    std::vector<Interval> parts{Interval{a, QPhi(1), false, false}};
    const QPhi rest = b - QPhi(1);
    if (rest.sign() > 0) parts.push_back(Interval{QPhi(0), rest, true, false});
    return from_intervals(std::move(parts));
  }

  static IntervalSet point(const QPhi& t) {
    const QPhi a = t.frac();
    return from_intervals({Interval{a, a, true, true}});
  }

  static IntervalSet from_intervals(std::vector<Interval> parts) {
    IntervalSet s;
    s.parts_ = std::move(parts);
    s.normalize();
    return s;
  }

  const std::vector<Interval>& intervals() const { return parts_; }
  bool is_empty() const { return parts_.empty(); }
  bool is_full() const { return *this == full(); }

  bool contains(const QPhi& t) const {
    const QPhi u = t.frac();
    return std::any_of(parts_.begin(), parts_.end(), [&](const Interval& i) { return i.contains(u); });
  }

  IntervalSet complement() const {
    std::vector<Interval> out;
    QPhi cursor(0);
    bool cursor_closed = true;  // whether cursor itself belongs to the complement
    for (const auto& i : parts_) {
      const auto c = cursor <=> i.lo;
      if (c < 0 || (c == 0 && cursor_closed && !i.lo_closed)) {
        out.push_back(Interval{cursor, i.lo, cursor_closed, !i.lo_closed});
      }
      cursor = i.hi;
      cursor_closed = !i.hi_closed;
    }
    const auto c = cursor <=> QPhi(1);
    if (c < 0) out.push_back(Interval{cursor, QPhi(1), cursor_closed, false});
    return from_intervals(std::move(out));
  }

  IntervalSet unite(const IntervalSet& o) const {
    std::vector<Interval> all = parts_;
    all.insert(all.end(), o.parts_.begin(), o.parts_.end());
    return from_intervals(std::move(all));
  }

  IntervalSet intersect(const IntervalSet& o) const {
    std::vector<Interval> out;
    for (const auto& a : parts_) {
      for (const auto& b : o.parts_) {
        Interval r;
        const auto lc = a.lo <=> b.lo;
        if (lc > 0) {
          r.lo = a.lo;
          r.lo_closed = a.lo_closed;
        } else if (lc < 0) {
          r.lo = b.lo;
          r.lo_closed = b.lo_closed;
        } else {
          r.lo = a.lo;
          r.lo_closed = a.lo_closed && b.lo_closed;
        }
        const auto hc = a.hi <=> b.hi;
        if (hc < 0) {
          r.hi = a.hi;
          r.hi_closed = a.hi_closed;
        } else if (hc > 0) {
          r.hi = b.hi;
          r.hi_closed = b.hi_closed;
        } else {
          r.hi = a.hi;
          r.hi_closed = a.hi_closed && b.hi_closed;
        }
        out.push_back(r);
      }
    }
    return from_intervals(std::move(out));
  }

  IntervalSet minus(const IntervalSet& o) const { return intersect(o.complement()); }
  bool subset_of(const IntervalSet& o) const { return minus(o).is_empty(); }

  /// Image under t -> t + shift mod 1.
  IntervalSet rotate(const QPhi& shift) const {
    const QPhi s = shift.frac();
    std::vector<Interval> out;
    const QPhi one(1);
    for (const auto& i : parts_) {
      QPhi lo = i.lo + s, hi = i.hi + s;
      if (lo >= one) {
        lo -= one;
        hi -= one;
      }
      const auto c = hi <=> one;
      if (c < 0 || (c == 0 && !i.hi_closed)) {
        out.push_back(Interval{lo, hi, i.lo_closed, i.hi_closed});
      } else {
        if (lo < one) out.push_back(Interval{lo, one, i.lo_closed, false});
        out.push_back(Interval{QPhi(0), hi - one, true, i.hi_closed});
      }
    }
    return from_intervals(std::move(out));
  }

  /// Topological closure in the circle.
  IntervalSet closure() const {
    std::vector<Interval> out;
    for (auto i : parts_) {
      i.lo_closed = true;
      if (i.hi == QPhi(1)) {
        out.push_back(Interval{QPhi(0), QPhi(0), true, true});
        i.hi_closed = false;
      } else {
        i.hi_closed = true;
      }
      out.push_back(i);
    }
    return from_intervals(std::move(out));
  }

  /// Some point of the set; the set must be non-empty.
  QPhi some_point() const {
    if (parts_.empty()) throw PreconditionError("empty interval set has no points");
    const auto& i = parts_.front();
    if (i.lo == i.hi) return i.lo;
    return Rational(1, 2) * (i.lo + i.hi);
  }

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

  std::string to_string() const {
    if (parts_.empty()) return "{}";
    std::string s;
    for (const auto& i : parts_) {
      if (!s.empty()) s += " u ";
      s += (i.lo_closed ? "[" : "(") + i.lo.to_string() + " ; " + i.hi.to_string() + (i.hi_closed ? "]" : ")");
    }
    return s;
  }

 private:
  void normalize() {
    std::vector<Interval> v;
    for (auto& i : parts_) {
      const auto c = i.lo <=> i.hi;
      if (c > 0) continue;
      if (c == 0 && !(i.lo_closed && i.hi_closed)) continue;
      v.push_back(i);
    }
    std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) {
      const auto c = a.lo <=> b.lo;
      if (c != 0) return c < 0;
      return a.lo_closed && !b.lo_closed;
    });
    std::vector<Interval> merged;
    for (auto& i : v) {
      if (!merged.empty()) {
        auto& last = merged.back();
        const auto c = i.lo <=> last.hi;
        const bool touches = c < 0 || (c == 0 && (last.hi_closed || i.lo_closed));
        if (touches) {
          const auto h = i.hi <=> last.hi;
          if (h > 0) {
            last.hi = i.hi;
            last.hi_closed = i.hi_closed;
          } else if (h == 0) {
            last.hi_closed = last.hi_closed || i.hi_closed;
          }
          if (i.lo == last.lo) last.lo_closed = last.lo_closed || i.lo_closed;
          continue;
        }
      }
      merged.push_back(i);
    }
    parts_ = std::move(merged);
  }

  std::vector<Interval> parts_;
};

using Word = std::vector<std::uint8_t>;

/// A finite union of cylinders [w] of the Cantor space {0,1}^N, in reduced
/// form (prefix-free, no sibling pair), hence canonical and clopen.
class CylinderSet {
 public:
  CylinderSet() = default;
  static CylinderSet empty() { return {}; }
  static CylinderSet full() { return from_words({Word{}}); }
  static CylinderSet cylinder(Word w) { return from_words({std::move(w)}); }

  static CylinderSet from_words(std::vector<Word> words) {
    CylinderSet s;
    s.words_ = std::set<Word>(words.begin(), words.end());
    s.normalize();
    return s;
  }

  const std::set<Word>& words() const { return words_; }
  bool is_empty() const { return words_.empty(); }
  bool is_full() const { return words_.size() == 1 && words_.begin()->empty(); }

  bool contains(const CantorPoint& x) const {
    for (const auto& w : words_) {
      bool match = true;
      for (std::size_t i = 0; i < w.size() && match; ++i) match = x.bit(i) == w[i];
      if (match) return true;
    }
    return false;
  }

  CylinderSet unite(const CylinderSet& o) const {
    std::vector<Word> all(words_.begin(), words_.end());
    all.insert(all.end(), o.words_.begin(), o.words_.end());
    return from_words(std::move(all));
  }

  CylinderSet intersect(const CylinderSet& o) const {
    std::vector<Word> out;
    for (const auto& a : words_)
      for (const auto& b : o.words_) {
        const auto& shorter = a.size() <= b.size() ? a : b;
        const auto& longer = a.size() <= b.size() ? b : a;
        if (std::equal(shorter.begin(), shorter.end(), longer.begin())) out.push_back(longer);
      }
    return from_words(std::move(out));
  }

  CylinderSet complement() const {
    CylinderSet acc = full();
    for (const auto& w : words_) {
      std::vector<Word> comp;
      for (std::size_t i = 0; i < w.size(); ++i) {
        Word v(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
        v.push_back(static_cast<std::uint8_t>(1 - w[i]));
        comp.push_back(std::move(v));
      }
      acc = acc.intersect(from_words(std::move(comp)));
    }
    return acc;
  }

  CylinderSet minus(const CylinderSet& o) const { return intersect(o.complement()); }
  bool subset_of(const CylinderSet& o) const { return minus(o).is_empty(); }

  /// Image under x -> x + k in the 2-adic integers.
  CylinderSet translate(std::int64_t k) const {
    std::vector<Word> out;
    for (const auto& w : words_) {
      const std::size_t len = w.size();
      if (len == 0) {
        out.push_back(w);
        continue;
      }
      Integer modulus = Integer(1) << len;
      Integer v = 0;
      for (std::size_t i = 0; i < len; ++i)
        if (w[i]) v += Integer(1) << i;
      v = ((v + k) % modulus + modulus) % modulus;
      Word r(len);
      for (std::size_t i = 0; i < len; ++i) r[i] = static_cast<std::uint8_t>(bit_test(v, static_cast<unsigned>(i)) ? 1 : 0);
      out.push_back(std::move(r));
    }
    return from_words(std::move(out));
  }

  CantorPoint some_point() const {
    if (words_.empty()) throw PreconditionError("empty cylinder set has no points");
    return CantorPoint(*words_.begin(), {0});
  }

  friend bool operator==(const CylinderSet&, const CylinderSet&) = default;

  std::string to_string() const {
    if (words_.empty()) return "{}";
    std::string s;
    for (const auto& w : words_) {
      if (!s.empty()) s += " u ";
      s += "[";
      for (auto b : w) s += static_cast<char>('0' + b);
      s += "]";
    }
    return s;
  }

 private:
  void normalize() {
    bool changed = true;
    while (changed) {
      changed = false;
      // drop words that have a proper prefix in the set
      for (auto it = words_.begin(); it != words_.end();) {
        bool covered = false;
        for (std::size_t l = 0; l < it->size() && !covered; ++l)
          covered = words_.count(Word(it->begin(), it->begin() + static_cast<std::ptrdiff_t>(l))) > 0;
        if (covered) {
          it = words_.erase(it);
          changed = true;
        } else {
          ++it;
        }
      }
      // merge sibling pairs w0, w1 -> w
      for (const auto& w : words_) {
        if (w.empty()) continue;
        Word sib = w;
        sib.back() = static_cast<std::uint8_t>(1 - sib.back());
        if (words_.count(sib)) {
          Word parent(w.begin(), w.end() - 1);
          words_.erase(sib);
          words_.erase(w);
          words_.insert(parent);
          changed = true;
          break;
        }
      }
    }
  }

  std::set<Word> words_;
};

/// A subset of a finite set {0..n-1}, or a finite / cofinite subset of N
/// (universe == nullopt).
class FiniteSet {
 public:
  FiniteSet() = default;
  FiniteSet(std::optional<std::uint64_t> universe, std::set<std::uint64_t> members, bool cofinite = false)
      : universe_(universe), members_(std::move(members)), cofinite_(cofinite) {
    if (universe_) {
      for (auto m : members_)
        if (m >= *universe_) throw PreconditionError("finite set member out of range");
      if (cofinite_) {
        std::set<std::uint64_t> in;
        for (std::uint64_t i = 0; i < *universe_; ++i)
          if (!members_.count(i)) in.insert(i);
        members_ = std::move(in);
        cofinite_ = false;
      }
    }
  }

  static FiniteSet full(std::optional<std::uint64_t> universe) { return FiniteSet(universe, {}, true); }
  static FiniteSet single(std::optional<std::uint64_t> universe, std::uint64_t i) { return FiniteSet(universe, {i}); }

  const std::optional<std::uint64_t>& universe() const { return universe_; }
  bool cofinite() const { return cofinite_; }
  /// Members (finite case) or excluded elements (cofinite case).
  const std::set<std::uint64_t>& elements() const { return members_; }

  bool is_empty() const { return !cofinite_ && members_.empty(); }
  bool is_full() const {
    if (cofinite_) return members_.empty();
    return universe_ && members_.size() == *universe_;
  }
  bool contains(std::uint64_t i) const { return cofinite_ ? !members_.count(i) : members_.count(i) > 0; }

  FiniteSet complement() const {
    if (universe_) {
      std::set<std::uint64_t> out;
      for (std::uint64_t i = 0; i < *universe_; ++i)
        if (!members_.count(i)) out.insert(i);
      return FiniteSet(universe_, std::move(out));
    }
    return FiniteSet(universe_, members_, !cofinite_);
  }

  FiniteSet intersect(const FiniteSet& o) const {
    if (!cofinite_ && !o.cofinite_) return FiniteSet(universe_, set_and(members_, o.members_));
    if (cofinite_ && o.cofinite_) return FiniteSet(universe_, set_or(members_, o.members_), true);
    const auto& fin = cofinite_ ? o : *this;
    const auto& cof = cofinite_ ? *this : o;
    std::set<std::uint64_t> out;
    for (auto m : fin.members_)
      if (!cof.members_.count(m)) out.insert(m);
    return FiniteSet(universe_, std::move(out));
  }

  FiniteSet unite(const FiniteSet& o) const { return complement().intersect(o.complement()).complement(); }
  FiniteSet minus(const FiniteSet& o) const { return intersect(o.complement()); }
  bool subset_of(const FiniteSet& o) const { return minus(o).is_empty(); }

  /// Image under i -> i + k mod n (finite universe only).
  FiniteSet translate(std::int64_t k) const {
    if (!universe_) throw UnsupportedError("translation of subsets of N");
    const auto n = static_cast<std::int64_t>(*universe_);
    std::set<std::uint64_t> out;
    for (auto m : members_) out.insert(static_cast<std::uint64_t>(((static_cast<std::int64_t>(m) + k) % n + n) % n));
    return FiniteSet(universe_, std::move(out));
  }

  std::uint64_t some_point() const {
    if (!cofinite_) {
      if (members_.empty()) throw PreconditionError("empty finite set has no points");
      return *members_.begin();
    }
    std::uint64_t i = 0;
    while (members_.count(i)) ++i;
    return i;
  }

  friend bool operator==(const FiniteSet&, const FiniteSet&) = default;

  std::string to_string() const {
    std::string s = cofinite_ ? "N\\{" : "{";
    bool first = true;
    for (auto m : members_) {
      if (!first) s += ",";
      s += std::to_string(m);
      first = false;
    }
    return s + "}";
  }

 private:
  static std::set<std::uint64_t> set_and(const std::set<std::uint64_t>& a, const std::set<std::uint64_t>& b) {
    std::set<std::uint64_t> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
  }
  static std::set<std::uint64_t> set_or(const std::set<std::uint64_t>& a, const std::set<std::uint64_t>& b) {
    std::set<std::uint64_t> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
  }

  std::optional<std::uint64_t> universe_;
  std::set<std::uint64_t> members_;
  bool cofinite_ = false;
};

class Region;

struct ProductRegion {
  std::shared_ptr<const Region> first;
  std::shared_ptr<const Region> second;
};

/// A finite union of basic boxes of one backend. Boolean operations are
/// exact; mixing regions of different kinds is a precondition error.
class Region {
 public:
  using Variant = std::variant<IntervalSet, CylinderSet, FiniteSet, ProductRegion>;

  Region() : v_(FiniteSet{}) {}
  Region(IntervalSet s) : v_(std::move(s)) {}
  Region(CylinderSet s) : v_(std::move(s)) {}
  Region(FiniteSet s) : v_(std::move(s)) {}
  Region(ProductRegion s) : v_(std::move(s)) {}

  static Region product(Region a, Region b) {
    return ProductRegion{std::make_shared<const Region>(std::move(a)), std::make_shared<const Region>(std::move(b))};
  }

  const Variant& variant() const { return v_; }

  bool is_empty() const {
    return std::visit(
        [](const auto& s) -> bool {
          if constexpr (std::is_same_v<std::decay_t<decltype(s)>, ProductRegion>)
            return s.first->is_empty() || s.second->is_empty();
          else
            return s.is_empty();
        },
        v_);
  }

  bool is_full() const {
    return std::visit(
        [](const auto& s) -> bool {
          if constexpr (std::is_same_v<std::decay_t<decltype(s)>, ProductRegion>)
            return s.first->is_full() && s.second->is_full();
          else
            return s.is_full();
        },
        v_);
  }

  bool contains(const Point& p) const {
    return std::visit(
        [&](const auto& s) -> bool {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, IntervalSet>) return s.contains(p.as_circle().value());
          else if constexpr (std::is_same_v<T, CylinderSet>) return s.contains(p.as_cantor());
          else if constexpr (std::is_same_v<T, FiniteSet>) return s.contains(p.as_finite().index);
          else return s.first->contains(*p.as_pair().first) && s.second->contains(*p.as_pair().second);
        },
        v_);
  }

  Region intersect(const Region& o) const {
    return binary(o, [](const auto& a, const auto& b) { return a.intersect(b); }, "intersect");
  }
  Region unite(const Region& o) const {
    return binary(o, [](const auto& a, const auto& b) { return a.unite(b); }, "unite");
  }
  Region minus(const Region& o) const {
    return binary(o, [](const auto& a, const auto& b) { return a.minus(b); }, "minus");
  }
  bool subset_of(const Region& o) const { return minus(o).is_empty(); }

  Region complement() const {
    return std::visit(
        [](const auto& s) -> Region {
          if constexpr (std::is_same_v<std::decay_t<decltype(s)>, ProductRegion>)
            throw UnsupportedError("complement of a product region");
          else
            return s.complement();
        },
        v_);
  }

  /// Closure: arcs gain endpoints, cylinder and finite sets are already closed.
  Region closure() const {
    return std::visit(
        [](const auto& s) -> Region {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, IntervalSet>) return s.closure();
          else if constexpr (std::is_same_v<T, ProductRegion>)
            return Region::product(s.first->closure(), s.second->closure());
          else return s;
        },
        v_);
  }

  /// Whether the region is closed and open (its complement is again a finite union of boxes).
  bool is_clopen() const {
    return std::visit(
        [](const auto& s) -> bool {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, IntervalSet>) return s.is_empty() || s.is_full();
          else if constexpr (std::is_same_v<T, ProductRegion>) return s.first->is_clopen() && s.second->is_clopen();
          else return true;
        },
        v_);
  }

  /// Whether the closure is compact.
  bool has_compact_closure() const {
    return std::visit(
        [](const auto& s) -> bool {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, FiniteSet>) return !s.cofinite() || s.universe().has_value();
          else if constexpr (std::is_same_v<T, ProductRegion>)
            return s.first->has_compact_closure() && s.second->has_compact_closure();
          else return true;
        },
        v_);
  }

  Point some_point() const {
    return std::visit(
        [](const auto& s) -> Point {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, IntervalSet>) return Point::circle(s.some_point());
          else if constexpr (std::is_same_v<T, CylinderSet>) return s.some_point();
          else if constexpr (std::is_same_v<T, FiniteSet>) return Point::finite(s.some_point());
          else return Point::pair(s.first->some_point(), s.second->some_point());
        },
        v_);
  }

  friend bool operator==(const Region& a, const Region& b) {
    if (a.v_.index() != b.v_.index()) return false;
    return std::visit(
        [&](const auto& s) -> bool {
          using T = std::decay_t<decltype(s)>;
          const auto& t = std::get<T>(b.v_);
          if constexpr (std::is_same_v<T, ProductRegion>)
            return *s.first == *t.first && *s.second == *t.second;
          else
            return s == t;
        },
        a.v_);
  }

  std::string to_string() const {
    return std::visit(
        [](const auto& s) -> std::string {
          if constexpr (std::is_same_v<std::decay_t<decltype(s)>, ProductRegion>)
            return s.first->to_string() + " x " + s.second->to_string();
          else
            return s.to_string();
        },
        v_);
  }

 private:
  template <class F>
  Region binary(const Region& o, F&& f, const char* what) const {
    if (v_.index() != o.v_.index()) throw PreconditionError(std::string("region kinds differ in ") + what);
    return std::visit(
        [&](const auto& a) -> Region {
          using T = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<T, ProductRegion>) {
            throw UnsupportedError(std::string("boolean operation '") + what + "' on product regions");
          } else {
            return f(a, std::get<T>(o.v_));
          }
        },
        v_);
  }

  Variant v_;
};

}  // namespace glab
