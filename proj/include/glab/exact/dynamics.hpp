#pragma once

#include "glab/error.hpp"
#include "glab/exact/point.hpp"
#include "glab/exact/region.hpp"
#include "glab/exact/space.hpp"
#include "glab/ktheory/abelian_group.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace glab {

enum class SystemKind { golden_rotation, odometer, cyclic };

struct SystemProperties {
  bool minimal = false;
  bool free = false;
  bool infinite = false;
};

/// A homeomorphism rho of a backend space with exact forward and backward
/// maps. Only the vetted systems below can be constructed.
///
/// golden_rotation and odometer stand in for the minimal homeomorphism of the
/// point-like space Z in every dynamical check; their declared K-theory is the
/// K-theory of a point, which is what the construction needs from Z.
/// cyclic(n) is the finite rotation i -> i+1 mod n, a negative control.
class MinimalSystem {
 public:
  static MinimalSystem golden_rotation() {
    MinimalSystem s(SystemKind::golden_rotation, Space::circle());
    s.props_ = {true, true, true};
    s.declared_ = KTheory::of_point();
    s.declared_.provenance = "declared: K-theory of the point-like factor";
    s.declared_dimensions_ = {2, 3};
    return s;
  }

  static MinimalSystem odometer() {
    MinimalSystem s(SystemKind::odometer, Space::cantor());
    s.props_ = {true, true, true};
    s.declared_ = KTheory::of_point();
    s.declared_.provenance = "declared: K-theory of the point-like factor";
    s.declared_dimensions_ = {2, 3};
    return s;
  }

  static MinimalSystem cyclic(std::uint64_t n) {
    MinimalSystem s(SystemKind::cyclic, Space::finite(n));
    s.props_ = {true, n == 1, false};
    s.declared_.k0 = FGAbelianGroup::free(n);
    s.declared_.k0.unit_class = std::vector<Integer>(n, Integer(1));
    s.declared_.k1 = FGAbelianGroup::zero();
    s.declared_.provenance = "declared: K-theory of a finite set";
    s.declared_dimensions_ = {0};
    return s;
  }

  SystemKind kind() const { return kind_; }
  const Space& space() const { return space_; }
  const SystemProperties& properties() const { return props_; }
  const KTheory& declared_ktheory() const { return declared_; }
  /// Possible covering dimensions of the space the system stands in for.
  const std::vector<unsigned>& declared_dimensions() const { return declared_dimensions_; }

  std::string name() const {
    switch (kind_) {
      case SystemKind::golden_rotation: return "golden-rotation";
      case SystemKind::odometer: return "odometer";
      case SystemKind::cyclic: return "finite-cyclic(" + std::to_string(space_.size()) + ")";
    }
    return "?";
  }

  /// rho^k(p), k may be negative.
  Point power(const Point& p, std::int64_t k) const {
    switch (kind_) {
      case SystemKind::golden_rotation: return circle_rotate(p.as_circle(), k);
      case SystemKind::odometer: return odometer_succ(p.as_cantor(), k);
      case SystemKind::cyclic: {
        const auto n = static_cast<std::int64_t>(space_.size());
        const auto i = static_cast<std::int64_t>(p.as_finite().index);
        return Point::finite(static_cast<std::uint64_t>(((i + k) % n + n) % n));
      }
    }
    return p;
  }

  Point forward(const Point& p) const { return power(p, 1); }
  Point backward(const Point& p) const { return power(p, -1); }

  /// rho^k(R) for a region R of the backend.
  Region power(const Region& r, std::int64_t k) const {
    switch (kind_) {
      case SystemKind::golden_rotation:
        return std::get<IntervalSet>(r.variant()).rotate(Rational(k) * golden_alpha());
      case SystemKind::odometer: return std::get<CylinderSet>(r.variant()).translate(k);
      case SystemKind::cyclic: return std::get<FiniteSet>(r.variant()).translate(k);
    }
    return r;
  }

  friend bool operator==(const MinimalSystem& a, const MinimalSystem& b) {
    return a.kind_ == b.kind_ && a.space_ == b.space_;
  }

 private:
  MinimalSystem(SystemKind k, Space s) : kind_(k), space_(std::move(s)) {}

  SystemKind kind_;
  Space space_;
  SystemProperties props_;
  KTheory declared_;
  std::vector<unsigned> declared_dimensions_;
};

struct DensityResult {
  bool dense = false;
  /// Number of orbit points z, rho(z), ..., rho^(steps_used - 1)(z) examined.
  std::uint64_t steps_used = 0;
};

/// Smallest forward orbit segment of z that is eps-dense, searching up to
/// max_iter points. Exhaustion is reported as (false, max_iter).
inline DensityResult orbit_density_check(const MinimalSystem& s, const Point& z, const Rational& eps,
                                         std::uint64_t max_iter) {
  if (eps.sign() <= 0) throw PreconditionError("density threshold must be positive");
  std::vector<Point> orbit;
  Point cur = z;
  for (std::uint64_t k = 0; k < max_iter; ++k) {
    orbit.push_back(cur);
    if (is_eps_dense(s.space(), orbit, eps)) return {true, k + 1};
    cur = s.forward(cur);
  }
  return {false, max_iter};
}

/// All k in [1, bound] with rho^k(z) == z. Empty certifies freeness at z up to bound.
inline std::vector<std::uint64_t> freeness_check(const MinimalSystem& s, const Point& z, std::uint64_t bound) {
  if (bound < 1) throw PreconditionError("freeness bound must be >= 1");
  std::vector<std::uint64_t> periods;
  Point cur = z;
  for (std::uint64_t k = 1; k <= bound; ++k) {
    cur = s.forward(cur);
    if (cur == z) periods.push_back(k);
  }
  return periods;
}

}  // namespace glab
