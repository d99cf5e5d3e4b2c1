#pragma once

#include "glab/error.hpp"
#include "glab/exact/eventually_periodic.hpp"
#include "glab/exact/qphi.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace glab {

using Bits = EventuallyPeriodic<std::uint8_t>;

/// A point of the circle R/Z, stored as its representative in [0, 1).
class CirclePoint {
 public:
  CirclePoint() = default;
  explicit CirclePoint(const QPhi& t) : value_(t.frac()) {}
  const QPhi& value() const { return value_; }
  friend bool operator==(const CirclePoint&, const CirclePoint&) = default;
  friend auto operator<=>(const CirclePoint& a, const CirclePoint& b) { return a.value_ <=> b.value_; }

 private:
  QPhi value_;
};

/// A rational 2-adic integer, i.e. an eventually periodic bit sequence
/// (least significant bit first). Doubles as a point of the Cantor space.
class CantorPoint {
 public:
  CantorPoint() : bits_(Bits::constant(0)) {}
  explicit CantorPoint(Bits bits) : bits_(std::move(bits)) {
    for (auto b : bits_.prefix())
      if (b > 1) throw PreconditionError("2-adic digit out of range");
    for (auto b : bits_.period())
      if (b > 1) throw PreconditionError("2-adic digit out of range");
  }
  CantorPoint(std::vector<std::uint8_t> prefix, std::vector<std::uint8_t> period)
      : CantorPoint(Bits(std::move(prefix), std::move(period))) {}

  const Bits& bits() const { return bits_; }
  std::uint8_t bit(std::size_t i) const { return bits_.at(i); }

  /// The 2-adic value as a rational with odd denominator.
  Rational to_rational() const {
    Rational pre = 0;
    Integer weight = 1;
    for (auto b : bits_.prefix()) {
      if (b) pre += Rational(weight);
      weight *= 2;
    }
    Integer per = 0, w = 1;
    for (auto b : bits_.period()) {
      if (b) per += w;
      w *= 2;
    }
    // prefix + 2^L * per / (1 - 2^P)
    return pre + Rational(weight) * Rational(per) / Rational(Integer(1) - w);
  }

  /// Expansion of a rational with odd denominator.
  static CantorPoint from_rational(Rational r) {
    if (boost::multiprecision::denominator(r) % 2 == 0)
      throw PreconditionError("rational with even denominator is not a 2-adic integer");
    std::map<Rational, std::size_t> seen;
    std::vector<std::uint8_t> digits;
    while (true) {
      auto [it, inserted] = seen.emplace(r, digits.size());
      if (!inserted) {
        std::vector<std::uint8_t> prefix(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(it->second));
        std::vector<std::uint8_t> period(digits.begin() + static_cast<std::ptrdiff_t>(it->second), digits.end());
        return CantorPoint(std::move(prefix), std::move(period));
      }
      const bool odd = boost::multiprecision::numerator(r) % 2 != 0;
      digits.push_back(odd ? 1 : 0);
      r = (r - (odd ? 1 : 0)) / 2;
    }
  }

  friend bool operator==(const CantorPoint&, const CantorPoint&) = default;
  friend auto operator<=>(const CantorPoint& a, const CantorPoint& b) { return a.bits_ <=> b.bits_; }

 private:
  Bits bits_;
};

/// An element of a declared finite (or countable discrete) set, by index.
struct FinitePoint {
  std::uint64_t index = 0;
  friend bool operator==(const FinitePoint&, const FinitePoint&) = default;
  friend auto operator<=>(const FinitePoint&, const FinitePoint&) = default;
};

class Point;

struct PairPoint {
  std::shared_ptr<const Point> first;
  std::shared_ptr<const Point> second;
};

/// A point of one of the supported spaces. All alternatives are canonical
/// on construction, so == is equality of points.
class Point {
 public:
  using Variant = std::variant<CirclePoint, CantorPoint, FinitePoint, PairPoint>;

  Point() : v_(FinitePoint{}) {}
  Point(CirclePoint c) : v_(std::move(c)) {}
  Point(CantorPoint c) : v_(std::move(c)) {}
  Point(FinitePoint f) : v_(f) {}
  Point(PairPoint p) : v_(std::move(p)) {}

  static Point circle(const QPhi& t) { return CirclePoint(t); }
  static Point cantor(std::vector<std::uint8_t> prefix, std::vector<std::uint8_t> period) {
    return CantorPoint(std::move(prefix), std::move(period));
  }
  static Point finite(std::uint64_t i) { return FinitePoint{i}; }
  static Point pair(Point a, Point b) {
    return PairPoint{std::make_shared<const Point>(std::move(a)), std::make_shared<const Point>(std::move(b))};
  }

  const Variant& variant() const { return v_; }
  bool is_circle() const { return std::holds_alternative<CirclePoint>(v_); }
  bool is_cantor() const { return std::holds_alternative<CantorPoint>(v_); }
  bool is_finite() const { return std::holds_alternative<FinitePoint>(v_); }
  bool is_pair() const { return std::holds_alternative<PairPoint>(v_); }

  const CirclePoint& as_circle() const { return get<CirclePoint>("circle"); }
  const CantorPoint& as_cantor() const { return get<CantorPoint>("cantor"); }
  const FinitePoint& as_finite() const { return get<FinitePoint>("finite"); }
  const PairPoint& as_pair() const { return get<PairPoint>("pair"); }

  friend bool operator==(const Point& a, const Point& b) { return (a <=> b) == 0; }
  friend std::strong_ordering operator<=>(const Point& a, const Point& b) {
    if (a.v_.index() != b.v_.index()) return a.v_.index() <=> b.v_.index();
    return std::visit(
        [&](const auto& x) -> std::strong_ordering {
          using T = std::decay_t<decltype(x)>;
          const auto& y = std::get<T>(b.v_);
          if constexpr (std::is_same_v<T, PairPoint>) {
            if (auto c = *x.first <=> *y.first; c != 0) return c;
            return *x.second <=> *y.second;
          } else if constexpr (std::is_same_v<T, CantorPoint>) {
            auto c = x <=> y;
            return c < 0 ? std::strong_ordering::less
                         : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
          } else {
            return x <=> y;
          }
        },
        a.v_);
  }

  /// Text form used by the boundary-path line format.
  ///   circle   c[p,q]        value p + q*phi
  ///   cantor   b[0110|01]    prefix | period, least significant bit first
  ///   finite   f[3]
  ///   pair     (<point>,<point>)
  std::string to_string() const {
    return std::visit(
        [](const auto& x) -> std::string {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, CirclePoint>) {
            return "c[" + x.value().to_string() + "]";
          } else if constexpr (std::is_same_v<T, CantorPoint>) {
            std::string s = "b[";
            for (auto b : x.bits().prefix()) s += static_cast<char>('0' + b);
            s += '|';
            for (auto b : x.bits().period()) s += static_cast<char>('0' + b);
            return s + "]";
          } else if constexpr (std::is_same_v<T, FinitePoint>) {
            return "f[" + std::to_string(x.index) + "]";
          } else {
            return "(" + x.first->to_string() + "," + x.second->to_string() + ")";
          }
        },
        v_);
  }

  static Point parse(const std::string& text) {
    std::size_t pos = 0;
    Point p = parse_at(text, pos);
    if (pos != text.size()) throw ParseError("trailing characters in point '" + text + "'");
    return p;
  }

  /// Parses one point starting at pos and advances pos past it.
  static Point parse_at(const std::string& s, std::size_t& pos) {
    auto expect = [&](char c) {
      if (pos >= s.size() || s[pos] != c)
        throw ParseError(std::string("expected '") + c + "' at offset " + std::to_string(pos) + " in '" + s + "'");
      ++pos;
    };
    if (pos >= s.size()) throw ParseError("empty point");
    const char tag = s[pos];
    if (tag == '(') {
      ++pos;
      Point a = parse_at(s, pos);
      expect(',');
      Point b = parse_at(s, pos);
      expect(')');
      return pair(std::move(a), std::move(b));
    }
    ++pos;
    expect('[');
    const std::size_t close = s.find(']', pos);
    if (close == std::string::npos) throw ParseError("unterminated point in '" + s + "'");
    const std::string body = s.substr(pos, close - pos);
    pos = close + 1;
    try {
      switch (tag) {
        case 'c': {
          const auto comma = body.find(',');
          if (comma == std::string::npos) throw ParseError("circle point needs p,q");
          return circle(QPhi(Rational(body.substr(0, comma)), Rational(body.substr(comma + 1))));
        }
        case 'b': {
          const auto bar = body.find('|');
          if (bar == std::string::npos) throw ParseError("cantor point needs prefix|period");
          auto digits = [](const std::string& t) {
            std::vector<std::uint8_t> out;
            for (char ch : t) {
              if (ch != '0' && ch != '1') throw ParseError("bad bit '" + std::string(1, ch) + "'");
              out.push_back(static_cast<std::uint8_t>(ch - '0'));
            }
            return out;
          };
          return cantor(digits(body.substr(0, bar)), digits(body.substr(bar + 1)));
        }
        case 'f':
          return finite(std::stoull(body));
        default:
          throw ParseError(std::string("unknown point tag '") + tag + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError("malformed point '" + s + "': " + e.what());
    }
  }

 private:
  template <class T>
  const T& get(const char* what) const {
    if (const T* p = std::get_if<T>(&v_)) return *p;
    throw PreconditionError(std::string("point is not a ") + what + " point: " + to_string());
  }

  Variant v_;
};

/// Re-derives the canonical representation. Idempotent.
inline Point canonical(const Point& p) {
  return std::visit(
      [](const auto& x) -> Point {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, CirclePoint>) {
          return CirclePoint(x.value());
        } else if constexpr (std::is_same_v<T, CantorPoint>) {
          return CantorPoint(Bits(x.bits().prefix(), x.bits().period()));
        } else if constexpr (std::is_same_v<T, FinitePoint>) {
          return x;
        } else {
          return Point::pair(canonical(*x.first), canonical(*x.second));
        }
      },
      p.variant());
}

inline std::ostream& operator<<(std::ostream& os, const Point& p) { return os << p.to_string(); }

/// Odometer: 2-adic addition of an integer, carries propagated exactly.
inline CantorPoint odometer_succ(const CantorPoint& x, std::int64_t steps) {
  return CantorPoint::from_rational(x.to_rational() + Rational(steps));
}

/// Golden rotation t -> t + steps*(phi - 1) mod 1.
inline CirclePoint circle_rotate(const CirclePoint& t, std::int64_t steps) {
  return CirclePoint(t.value() + Rational(steps) * golden_alpha());
}

}  // namespace glab
