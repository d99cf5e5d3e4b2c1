#include "glab/exact/dynamics.hpp"
#include "glab/exact/space.hpp"

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <map>

using namespace glab;

namespace {

using Dec = boost::multiprecision::cpp_dec_float_100;

Dec to_dec(const Rational& r) {
  return Dec(boost::multiprecision::numerator(r).str()) / Dec(boost::multiprecision::denominator(r).str());
}

Rational random_rational(Rng& rng, std::int64_t span, std::int64_t den) {
  return Rational(rng.between(-span, span), rng.between(1, den));
}

Point cantor_int(std::int64_t v) { return CantorPoint::from_rational(Rational(v)); }

}  // namespace

TEST(QPhiSign, Examples) {
  EXPECT_EQ(qphi_sign(0, 0), 0);
  EXPECT_EQ(qphi_sign(1, -1), -1);
  EXPECT_EQ(qphi_sign(-1, 1), 1);
}

TEST(QPhiSign, AgreesWithHighPrecisionEvaluation) {
  const Dec phi = (Dec(1) + boost::multiprecision::sqrt(Dec(5))) / 2;
  Rng rng(11);
  for (int i = 0; i < 10000; ++i) {
    const Rational p = random_rational(rng, 1000, 97);
    const Rational q = random_rational(rng, 1000, 97);
    const Dec v = to_dec(p) + to_dec(q) * phi;
    const int expected = v > Dec(0) ? 1 : (v < Dec(0) ? -1 : 0);
    ASSERT_EQ(qphi_sign(p, q), expected) << p << " + " << q << " phi";
  }
}

TEST(QPhi, MatchesRationalArithmeticWhenPhiPartVanishes) {
  Rng rng(3);
  for (int i = 0; i < 2000; ++i) {
    const Rational a = random_rational(rng, 500, 50);
    const Rational b = random_rational(rng, 500, 50);
    EXPECT_EQ(QPhi(a) + QPhi(b), QPhi(a + b));
    EXPECT_EQ(QPhi(a) - QPhi(b), QPhi(a - b));
    EXPECT_EQ(QPhi(a) * QPhi(b), QPhi(a * b));
    EXPECT_EQ(QPhi(a).sign(), a.sign());
    EXPECT_EQ((QPhi(a) <=> QPhi(b)) < 0, a < b);
  }
}

TEST(QPhi, PhiSquaredIsPhiPlusOne) { EXPECT_EQ(QPhi::phi() * QPhi::phi(), QPhi::phi() + QPhi(1)); }

TEST(QPhi, FloorAndFrac) {
  EXPECT_EQ(QPhi::phi().floor(), 1);
  EXPECT_EQ((-QPhi::phi()).floor(), -2);
  EXPECT_EQ(QPhi(Rational(7, 2)).floor(), 3);
  EXPECT_EQ(QPhi(-3).floor(), -3);
  EXPECT_EQ(QPhi(Rational(-1, 2), 1).frac(), QPhi(Rational(-3, 2), 1));
}

TEST(CircleRotate, Examples) {
  const CirclePoint zero(QPhi(0));
  EXPECT_EQ(circle_rotate(zero, 0), zero);
  EXPECT_EQ(circle_rotate(CirclePoint(QPhi(Rational(1, 2))), 1).value(), QPhi(Rational(-3, 2), 1));
  EXPECT_EQ(circle_rotate(circle_rotate(zero, 1), -1), zero);
}

TEST(CircleRotate, PowersCompose) {
  Rng rng(5);
  const Space c = Space::circle();
  for (int i = 0; i < 200; ++i) {
    const CirclePoint t = c.random_point(rng).as_circle();
    const auto a = rng.between(-40, 40), b = rng.between(-40, 40);
    EXPECT_EQ(circle_rotate(circle_rotate(t, a), b), circle_rotate(t, a + b));
  }
}

TEST(Odometer, Examples) {
  EXPECT_EQ(odometer_succ(CantorPoint({}, {0}), 1), CantorPoint({1}, {0}));
  EXPECT_EQ(odometer_succ(CantorPoint({1, 1}, {0}), 1), CantorPoint({0, 0, 1}, {0}));
  EXPECT_EQ(odometer_succ(CantorPoint({}, {1}), 1), CantorPoint({}, {0}));
}

TEST(Odometer, RationalRoundTrip) {
  Rng rng(9);
  const Space c = Space::cantor();
  for (int i = 0; i < 500; ++i) {
    const CantorPoint x = c.random_point(rng).as_cantor();
    EXPECT_EQ(CantorPoint::from_rational(x.to_rational()), x);
    const auto k = rng.between(-100, 100);
    EXPECT_EQ(odometer_succ(odometer_succ(x, k), -k), x);
  }
  EXPECT_EQ(CantorPoint::from_rational(Rational(-1, 3)).to_rational(), Rational(-1, 3));
  EXPECT_THROW(CantorPoint::from_rational(Rational(1, 2)), PreconditionError);
}

TEST(EventuallyPeriodic, CanonicalForm) {
  const Bits a({1, 0, 1}, {0, 1, 0, 1});
  EXPECT_TRUE(a.prefix().empty());
  EXPECT_EQ(a.period(), (std::vector<std::uint8_t>{1, 0}));
  const Bits b({1, 1}, {0, 1, 0, 1});
  EXPECT_EQ(b.prefix(), (std::vector<std::uint8_t>{1}));
  EXPECT_EQ(b.period(), (std::vector<std::uint8_t>{1, 0}));
  EXPECT_EQ(Bits({0, 0}, {0}), Bits({}, {0}));
  EXPECT_EQ(a.tail(), Bits({}, {0, 1}));
  EXPECT_THROW(Bits({}, {}), PreconditionError);
}

TEST(Point, CanonicalizationIsIdempotent) {
  Rng rng(21);
  for (const Space& s : {Space::circle(), Space::cantor(), Space::finite(4), Space::countable_discrete(),
                         Space::product(Space::circle(), Space::cantor())}) {
    for (int i = 0; i < 100; ++i) {
      const Point p = s.random_point(rng);
      EXPECT_EQ(canonical(canonical(p)), canonical(p));
      EXPECT_EQ(canonical(p), p);
      EXPECT_EQ(Point::parse(p.to_string()), p) << p;
    }
  }
}

TEST(DenseSequence, FiniteCycles) {
  const Space ab = Space::finite(2);
  EXPECT_EQ(dense_sequence(ab, 1), Point::finite(0));
  EXPECT_EQ(dense_sequence(ab, 2), Point::finite(1));
  EXPECT_EQ(dense_sequence(ab, 3), Point::finite(0));
  const Space one = Space::point();
  for (std::uint64_t i = 1; i < 50; ++i) EXPECT_EQ(dense_sequence(one, i), Point::finite(0));
}

TEST(DenseSequence, CantorCylinderZero) {
  const Space c = Space::cantor();
  EXPECT_EQ(c.basic_open(1), Region(CylinderSet::cylinder({0})));
  // box 1 at repetition 0 sits at pairing index 2
  const std::uint64_t i = pair_index(1, 0);
  EXPECT_EQ(i, 2u);
  EXPECT_EQ(dense_sequence(c, i).as_cantor().bit(0), 0);
}

TEST(DenseSequence, PairingIsABijection) {
  for (std::uint64_t i = 1; i < 5000; ++i) {
    const auto cell = unpair(i);
    EXPECT_EQ(pair_index(cell.box, cell.repetition), i);
  }
}

TEST(DenseSequence, HitsEveryEarlyBoxRepeatedly) {
  for (const Space& s : {Space::circle(), Space::cantor(), Space::finite(3), Space::countable_discrete()}) {
    std::vector<Point> seq;
    for (std::uint64_t i = 1; i <= 10000; ++i) seq.push_back(dense_sequence(s, i));
    for (std::uint64_t b = 0; b < 20; ++b) {
      const Region box = s.basic_open(b);
      ASSERT_FALSE(box.is_empty());
      int hits = 0;
      for (const auto& p : seq) hits += box.contains(p) ? 1 : 0;
      EXPECT_GE(hits, 3) << s.name() << " box " << b;
    }
  }
}

TEST(DenseSequence, RejectsProductBackends) {
  EXPECT_THROW(dense_sequence(Space::product(Space::cantor(), Space::point()), 1), UnsupportedError);
}

// Independent oracle: gaps of the golden orbit from 100-digit decimal
// arithmetic. With three distinct gap lengths, max gap <= 2 eps is the
// density criterion.
std::uint64_t golden_orbit_points_needed(const Rational& eps, std::uint64_t max_points) {
  const Dec alpha = (boost::multiprecision::sqrt(Dec(5)) - 1) / 2;
  std::vector<Dec> pts;
  for (std::uint64_t k = 0; k < max_points; ++k) {
    Dec v = alpha * k;
    v -= boost::multiprecision::floor(v);
    pts.push_back(v);
    auto sorted = pts;
    std::sort(sorted.begin(), sorted.end());
    Dec gap = 1 - sorted.back() + sorted.front();
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) gap = std::max<Dec>(gap, sorted[i + 1] - sorted[i]);
    if (gap <= 2 * to_dec(eps)) return k + 1;
  }
  return max_points + 1;
}

TEST(OrbitDensity, GoldenRotation) {
  const auto sys = MinimalSystem::golden_rotation();
  const auto r = orbit_density_check(sys, Point::circle(QPhi(0)), Rational(1, 4), 64);
  EXPECT_TRUE(r.dense);
  EXPECT_LE(r.steps_used, 8u);
  EXPECT_EQ(r.steps_used, golden_orbit_points_needed(Rational(1, 4), 64));
  for (unsigned n = 1; n <= 6; ++n) {
    const Rational eps(1, Integer(1) << n);
    const auto rn = orbit_density_check(sys, Point::circle(QPhi(0)), eps, 200);
    EXPECT_TRUE(rn.dense);
    EXPECT_EQ(rn.steps_used, golden_orbit_points_needed(eps, 200)) << "eps 2^-" << n;
  }
}

TEST(OrbitDensity, Odometer) {
  const auto r = orbit_density_check(MinimalSystem::odometer(), cantor_int(0), Rational(1, 8), 16);
  EXPECT_TRUE(r.dense);
  EXPECT_EQ(r.steps_used, 8u);
}

TEST(OrbitDensity, OnePointAndExhaustion) {
  const auto r = orbit_density_check(MinimalSystem::cyclic(1), Point::finite(0), Rational(1, 100), 1);
  EXPECT_TRUE(r.dense);
  EXPECT_EQ(r.steps_used, 1u);
  const auto e = orbit_density_check(MinimalSystem::odometer(), cantor_int(0), Rational(1, 64), 10);
  EXPECT_FALSE(e.dense);
  EXPECT_EQ(e.steps_used, 10u);
  EXPECT_THROW(orbit_density_check(MinimalSystem::odometer(), cantor_int(0), Rational(0), 10), PreconditionError);
}

TEST(Freeness, Examples) {
  EXPECT_TRUE(freeness_check(MinimalSystem::golden_rotation(), Point::circle(QPhi(0)), 100).empty());
  EXPECT_TRUE(freeness_check(MinimalSystem::odometer(), cantor_int(0), 100).empty());
  EXPECT_EQ(freeness_check(MinimalSystem::cyclic(3), Point::finite(1), 7), (std::vector<std::uint64_t>{3, 6}));
}

TEST(Freeness, FreeBackendsAtRandomPoints) {
  Rng rng(77);
  for (const auto& sys : {MinimalSystem::golden_rotation(), MinimalSystem::odometer()}) {
    for (int i = 0; i < 100; ++i) {
      const Point z = sys.space().random_point(rng);
      EXPECT_TRUE(freeness_check(sys, z, 50).empty()) << sys.name() << " at " << z;
    }
  }
}

TEST(MinimalSystem, BackwardInvertsForward) {
  Rng rng(13);
  for (const auto& sys : {MinimalSystem::golden_rotation(), MinimalSystem::odometer(), MinimalSystem::cyclic(5)}) {
    for (int i = 0; i < 200; ++i) {
      const Point z = sys.space().random_point(rng);
      EXPECT_EQ(sys.backward(sys.forward(z)), z);
      EXPECT_EQ(sys.forward(sys.backward(z)), z);
    }
  }
}

TEST(MinimalSystem, RegionTranslationMatchesPointTranslation) {
  Rng rng(17);
  for (const auto& sys : {MinimalSystem::golden_rotation(), MinimalSystem::odometer()}) {
    for (int i = 0; i < 50; ++i) {
      const Region box = sys.space().random_box(rng);
      const auto k = rng.between(-9, 9);
      const Region moved = sys.power(box, k);
      for (int j = 0; j < 20; ++j) {
        const Point p = sys.space().random_point(rng);
        EXPECT_EQ(box.contains(p), moved.contains(sys.power(p, k)));
      }
    }
  }
}

TEST(MinimalSystem, DeclaredKTheoryOfTheStandIns) {
  EXPECT_EQ(MinimalSystem::golden_rotation().declared_ktheory(), KTheory::of_point());
  EXPECT_EQ(MinimalSystem::odometer().declared_ktheory(), KTheory::of_point());
  EXPECT_FALSE(MinimalSystem::cyclic(3).declared_ktheory() == KTheory::of_point());
}

TEST(IntervalSet, BooleanAlgebra) {
  const auto a = IntervalSet::open_arc(QPhi(Rational(3, 4)), QPhi(Rational(1, 2)));  // (3/4, 1) u [0, 1/4)
  EXPECT_TRUE(a.contains(QPhi(0)));
  EXPECT_FALSE(a.contains(QPhi(Rational(3, 4))));
  EXPECT_EQ(a.complement().complement(), a);
  EXPECT_TRUE(a.unite(a.complement()).is_full());
  EXPECT_TRUE(a.intersect(a.complement()).is_empty());
  EXPECT_EQ(a.closure(), IntervalSet::from_intervals({Interval{QPhi(0), QPhi(Rational(1, 4)), true, true},
                                                      Interval{QPhi(Rational(3, 4)), QPhi(1), true, false}}));
  EXPECT_EQ(a.rotate(QPhi(Rational(1, 4))), IntervalSet::open_arc(QPhi(0), QPhi(Rational(1, 2))));
  EXPECT_TRUE(IntervalSet::open_arc(QPhi(0), QPhi(1)).closure().is_full());
}

TEST(IntervalSet, RotationIsMeasurePreservingBijection) {
  Rng rng(23);
  const Space c = Space::circle();
  for (int i = 0; i < 100; ++i) {
    const auto box = std::get<IntervalSet>(c.random_box(rng).variant());
    const QPhi shift = c.random_point(rng).as_circle().value();
    EXPECT_EQ(box.rotate(shift).rotate(-shift), box);
    EXPECT_EQ(box.complement().rotate(shift), box.rotate(shift).complement());
  }
}

TEST(CylinderSet, BooleanAlgebraAndTranslation) {
  const auto c0 = CylinderSet::cylinder({0});
  EXPECT_EQ(c0.complement(), CylinderSet::cylinder({1}));
  EXPECT_TRUE(c0.unite(CylinderSet::cylinder({1})).is_full());
  EXPECT_EQ(c0.translate(-2), c0);
  EXPECT_EQ(c0.translate(-3), CylinderSet::cylinder({1}));
  EXPECT_EQ(CylinderSet::cylinder({1, 1}).translate(1), CylinderSet::cylinder({0, 0}));
  EXPECT_EQ(CylinderSet::from_words({{0, 0}, {0, 1}}), c0);
}
