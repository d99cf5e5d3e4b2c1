#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>

namespace glab {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline int sign_of(const Rational& r) { return r.sign(); }

/// Exact sign of p + q*phi, phi the golden ratio.
///
/// Writes the value as ((2p + q) + q*sqrt5) / 2 and compares (2p + q)^2
/// with 5q^2 when the two summands have opposite signs. No floating point.
inline int qphi_sign(const Rational& p, const Rational& q) {
  const int sq = q.sign();
  if (sq == 0) return p.sign();
  const Rational s = 2 * p + q;
  const int ss = s.sign();
  if (sq > 0) {
    if (ss >= 0) return 1;
    return s * s < 5 * q * q ? 1 : -1;
  }
  if (ss <= 0) return -1;
  return s * s > 5 * q * q ? 1 : -1;
}

/// An element p + q*phi of the quadratic field Q(sqrt 5).
class QPhi {
 public:
  QPhi() = default;
  QPhi(Rational p, Rational q = Rational(0)) : p_(std::move(p)), q_(std::move(q)) {}
  QPhi(std::int64_t p) : p_(p), q_(0) {}

  static QPhi phi() { return {Rational(0), Rational(1)}; }

  const Rational& rational_part() const { return p_; }
  const Rational& phi_part() const { return q_; }

  int sign() const { return qphi_sign(p_, q_); }
  bool is_zero() const { return p_ == 0 && q_ == 0; }

  friend QPhi operator+(const QPhi& a, const QPhi& b) { return {a.p_ + b.p_, a.q_ + b.q_}; }
  friend QPhi operator-(const QPhi& a, const QPhi& b) { return {a.p_ - b.p_, a.q_ - b.q_}; }
  QPhi operator-() const { return {-p_, -q_}; }
  // phi^2 = phi + 1
  friend QPhi operator*(const QPhi& a, const QPhi& b) {
    return {a.p_ * b.p_ + a.q_ * b.q_, a.p_ * b.q_ + a.q_ * b.p_ + a.q_ * b.q_};
  }
  friend QPhi operator*(const Rational& r, const QPhi& a) { return {r * a.p_, r * a.q_}; }
  QPhi& operator+=(const QPhi& o) { return *this = *this + o; }
  QPhi& operator-=(const QPhi& o) { return *this = *this - o; }

  friend bool operator==(const QPhi& a, const QPhi& b) { return a.p_ == b.p_ && a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const QPhi& a, const QPhi& b) {
    const int s = (a - b).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  long double approx() const {
    static const long double kPhi = 1.618033988749894848204586834365638118L;
    return p_.convert_to<long double>() + q_.convert_to<long double>() * kPhi;
  }

  /// Largest integer n with n <= value.
  Integer floor() const {
    const long double a = approx();
    Integer n(static_cast<long long>(a >= 0 ? a : a - 1));
    while ((*this - QPhi(Rational(n))).sign() < 0) --n;
    while ((*this - QPhi(Rational(n + 1))).sign() >= 0) ++n;
    return n;
  }

  /// The representative of value mod 1 in [0, 1).
  QPhi frac() const { return *this - QPhi(Rational(floor())); }

  std::string to_string() const { return p_.str() + "," + q_.str(); }

 private:
  Rational p_{0};
  Rational q_{0};
};

/// Rotation number of the golden rotation: alpha = phi - 1 = 1/phi.
inline QPhi golden_alpha() { return {Rational(-1), Rational(1)}; }

}  // namespace glab
