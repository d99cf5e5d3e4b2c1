// Acceptance battery: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "glab/cli/battery.hpp"
#include "support/oracles.hpp"

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace glab;
using Dec = boost::multiprecision::cpp_dec_float_50;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream why;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) why << what;
    ok = ok && cond;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::vector<MinimalSystem> backends() { return {MinimalSystem::golden_rotation(), MinimalSystem::odometer()}; }

Dec to_dec(const Rational& r) {
  return Dec(boost::multiprecision::numerator(r).str()) / Dec(boost::multiprecision::denominator(r).str());
}

// circle coordinate in [0,1), phi = (1 + sqrt 5)/2
Dec circle_value(const Point& p) {
  const QPhi& v = p.as_circle().value();
  Dec x = to_dec(v.rational_part()) + to_dec(v.phi_part()) * (1 + boost::multiprecision::sqrt(Dec(5))) / 2;
  return x - boost::multiprecision::floor(x);
}

// every point of the circle lies within eps of the set iff each cyclic gap is at most 2 eps
bool circle_gap_oracle(const std::vector<Point>& pts, const Rational& eps) {
  std::vector<Dec> xs;
  for (const auto& p : pts) xs.push_back(circle_value(p));
  std::sort(xs.begin(), xs.end());
  Dec gap = 1 - xs.back() + xs.front();
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) gap = std::max<Dec>(gap, xs[i + 1] - xs[i]);
  return gap <= 2 * to_dec(eps);
}

// a 2-adic set is 2^-k dense iff it meets every cylinder of length k
bool cantor_prefix_oracle(const std::vector<Point>& pts, unsigned k) {
  std::set<std::uint64_t> seen;
  for (const auto& p : pts) {
    std::uint64_t w = 0;
    for (unsigned i = 0; i < k; ++i) w |= std::uint64_t{p.as_cantor().bits().at(i)} << i;
    seen.insert(w);
  }
  return seen.size() == (std::uint64_t{1} << k);
}

// 1. groupoid laws on 10^3 sampled triples per backend
void groupoid_axioms(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  std::uint64_t trials = 0;
  for (const auto& sys : backends()) {
    const ModelGraph g(sys, Space::point());
    const auto rep = axiom_sample(*dr_groupoid(g), 1000, 1);
    trials += rep.trials;
    o.require(rep.passed(), sys.name() + ": " + rep.first_failure.value_or("failure"));
  }
  const double dt = seconds_since(t0);
  o.require(dt < 5.0, "runtime " + std::to_string(dt) + " s");
  o.why << trials << " triples, " << dt << " s";
}

// 2. principality with the exact reduction, and the F control
void principality(Outcome& o) {
  std::uint64_t samples = 0, symbolic = 0;
  for (const auto& sys : backends()) {
    const ModelGraph g(sys, Space::point());
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto rep = principality_sample(g, 500, 20, seed);
      samples += rep.samples;
      symbolic += rep.samples - rep.symbolic_failures;
      o.require(rep.isotropic == 0, sys.name() + " seed " + std::to_string(seed) + ": isotropy found");
      o.require(rep.symbolic_failures == 0, sys.name() + " seed " + std::to_string(seed) + ": reduction failed");
    }
  }
  const DiscreteGraph f = DiscreteGraph::o_infinity();
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto rep = principality_sample(f, 500, 20, seed);
    o.require(!rep.principal() && rep.first_isotropy.has_value(), "F control principal at seed " + std::to_string(seed));
  }
  // the periodic path (1,1,1,...) of F carries the isotropy element (mu, 1, mu)
  const FPath loop(DiscreteInfinitePath{EventuallyPeriodic<DiscreteEdge>({}, {DiscreteEdge{0, 1}})});
  const auto iso = DeaconuRenault<DiscreteGraph>(f).isotropy_search(loop, 20);
  o.require(std::find(iso.begin(), iso.end(), std::pair<std::uint64_t, std::uint64_t>(1, 0)) != iso.end(),
            "no isotropy at the periodic path of F");
  o.why << samples << " samples, " << symbolic << " certified, F control non-principal on 10 seeds";
}

// 3. density of forward orbits at eps = 2^-6, depth 2^6
void minimality(Outcome& o) {
  const Rational eps(1, 64);
  std::uint64_t vertices = 0;
  for (const auto& sys : backends()) {
    const ModelGraph g(sys, Space::point());
    Rng rng(3);
    for (int i = 0; i < 10; ++i) {
      const ModelVertex v = g.random_vertex(rng);
      const auto orbit = model_orbit_plus(g, v, 64);
      std::vector<std::pair<Point, Point>> pairs;
      std::vector<Point> zs;
      for (const auto& w : orbit) pairs.emplace_back(w.z, w.x), zs.push_back(w.z);
      const bool lib = is_eps_dense_product(g.z_space(), g.x_space(), pairs, eps);
      const bool oracle = sys.kind() == SystemKind::golden_rotation ? circle_gap_oracle(zs, eps) : cantor_prefix_oracle(zs, 6);
      o.require(lib && oracle, sys.name() + ": orbit of " + v.to_string() + " not dense");
      ++vertices;
    }
  }
  // the oracles are not vacuous: half the depth cannot reach every 2^-6 cell
  const ModelGraph od(MinimalSystem::odometer(), Space::point());
  std::vector<Point> short_orbit;
  for (const auto& w : model_orbit_plus(od, {CantorPoint::from_rational(Rational(0)), Point::finite(0)}, 31))
    short_orbit.push_back(w.z);
  o.require(!cantor_prefix_oracle(short_orbit, 6), "prefix oracle accepted a short orbit");
  const ModelGraph gr(MinimalSystem::golden_rotation(), Space::point());
  std::vector<Point> arc_orbit;
  for (const auto& w : model_orbit_plus(gr, {Point::circle(QPhi(0)), Point::finite(0)}, 20)) arc_orbit.push_back(w.z);
  o.require(!circle_gap_oracle(arc_orbit, eps), "gap oracle accepted a short orbit");
  o.why << vertices << " base vertices";
}

// 4. contracting witnesses, and N for the quarter arc against the sweep oracle
void contracting(Outcome& o) {
  std::uint64_t verified = 0;
  for (const auto& sys : backends())
    for (const Space& x : {Space::point(), Space::finite(3)}) {
      const ModelGraph g(sys, x);
      Rng rng(4);
      for (int i = 0; i < 10; ++i) {
        const Region u = g.z_space().random_box(rng);
        const Region vx = x.size() > 1 ? x.singleton(rng.below(x.size())) : x.full_region();
        try {
          const auto w = find_contracting_witness(g, u, vx);
          const auto rep = verify_contracting_witness(g, w);
          o.require(rep.passed(), g.name() + ": " + u.to_string() + " " + rep.strict_cover.detail);
          verified += rep.passed();
        } catch (const Error& e) {
          o.require(false, g.name() + ": " + e.what());
        }
      }
    }
  const ModelGraph gr(MinimalSystem::golden_rotation(), Space::point());
  const auto w = find_contracting_witness(gr, IntervalSet::open_arc(QPhi(0), QPhi(Rational(1, 4))), FiniteSet::full(1));
  const auto sweep = oracle::golden_cover_oracle(Rational(1, 4), 1000);
  o.require(w.n() == sweep, "quarter arc N " + std::to_string(w.n()) + " vs sweep " + std::to_string(sweep));
  o.why << verified << " witnesses verified, quarter arc N = " << w.n() << " (sweep " << sweep << ")";
}

// 5. graph K-theory: Cuntz examples and every small graph against determinantal divisors
void ktheory_oracles(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const KTheory f = graph_ktheory(DiscreteGraph::o_infinity());
  o.require(f.k0 == FGAbelianGroup::pointed_integers() && f.k1.is_zero(), "O_infinity: " + f.k0.to_string());
  const KTheory o2 = graph_ktheory(DiscreteGraph::cuntz(2));
  o.require(o2.k0.is_zero() && o2.k1.is_zero(), "O_2: " + o2.k0.to_string());
  const KTheory o3 = graph_ktheory(DiscreteGraph::cuntz(3));
  o.require(o3.k0.rank == 0 && o3.k0.torsion == std::vector<Integer>{2} && o3.k1.is_zero(), "O_3: " + o3.k0.to_string());
  std::size_t mismatches = 0;
  const std::size_t graphs = oracle::for_each_small_graph([&](const DiscreteGraph& g) {
    const KTheory k = graph_ktheory(g);
    const auto d = oracle::determinantal_oracle(connecting_matrix(g));
    if (k.k0.rank != d.coker_rank || k.k0.torsion != d.torsion || k.k1.rank != d.ker_rank) ++mismatches;
  });
  const double dt = seconds_since(t0);
  o.require(mismatches == 0, std::to_string(mismatches) + " small graphs disagree");
  o.require(dt < 10.0, "runtime " + std::to_string(dt) + " s");
  o.why << graphs << " small graphs, " << dt << " s";
}

// 6. model K-theory equals the K-theory of X, unit included, for all four X
void model_ktheory_check(Outcome& o) {
  int cases = 0;
  for (const auto& sys : backends())
    for (const Space& x : {Space::point(), Space::finite(3), Space::cantor(), Space::circle()}) {
      const KTheory k = model_ktheory(sys, x);
      const KTheory d = declared_space_ktheory(x);
      o.require(k.k0 == d.k0 && k.k1 == d.k1 && k.k0.unit_class.has_value(), sys.name() + " x " + x.name());
      ++cases;
    }
  const KTheory f3 = model_ktheory(MinimalSystem::odometer(), Space::finite(3));
  o.require(f3.k0.to_string() == "rank 3, torsion [], unit [1,1,1]", "finite(3): " + f3.k0.to_string());
  o.why << cases << " (Z, X) pairs";
}

// 7. shift o f = f o (rho^-1 x shift) and shift o h = h o (rho^-1 x shift), against the edge formulas
void conjugacies(Outcome& o) {
  std::uint64_t f_checked = 0, h_checked = 0;
  for (const auto& sys : backends()) {
    const ModelGraph g(sys, Space::finite(3));
    Rng rng(7);
    std::uint64_t done = 0;
    while (done < 1000) {
      const ModelPath p = random_boundary_path(g, rng);
      if (p.is_finite()) continue;
      ++done;
      const auto [z, n] = param_f_inv(p);
      const ModelPath lhs = p.shift(g);
      const ModelPath rhs = param_f(g, sys.backward(z), n.tail());
      bool ok = lhs == rhs;
      // edge i of sigma f(z, n) is (rho^-(i+1) z, x_{n_{i+2}}, n_{i+1})
      for (std::size_t i = 1; i <= 6; ++i) {
        const ModelEdge want{sys.power(z, -static_cast<std::int64_t>(i + 1)), g.x_at(n.at(i + 1)), n.at(i)};
        ok = ok && lhs.edge(g, i) == want && rhs.edge(g, i) == want;
      }
      o.require(ok, "f: " + to_line(g, p));
    }
    f_checked += done;
  }
  const DiscreteGraph f = DiscreteGraph::o_infinity();
  for (const auto& sys : backends()) {
    const ModelGraph g(sys, Space::point());
    Rng rng(8);
    std::uint64_t done = 0;
    while (done < 1000) {
      const Point z = g.z_space().random_point(rng);
      const FPath nu = random_boundary_path(f, rng);
      if (nu.length() == std::size_t{0}) continue;
      ++done;
      const ModelPath lhs = homeo_h(g, z, nu).shift(g);
      const ModelPath rhs = homeo_h(g, sys.backward(z), nu.shift(f));
      bool ok = lhs == rhs;
      // edge i of sigma h(z, m) is (rho^-(i+1) z, *, m_{i+1})
      const std::size_t k = nu.length() ? *nu.length() - 1 : 6;
      for (std::size_t i = 1; i <= std::min<std::size_t>(k, 6); ++i) {
        const ModelEdge want{sys.power(z, -static_cast<std::int64_t>(i + 1)), Point::finite(0), nu.edge(f, i + 1).copy};
        ok = ok && lhs.edge(g, i) == want;
      }
      o.require(ok, "h: " + to_line(f, nu));
    }
    h_checked += done;
  }
  o.why << f_checked << " f samples, " << h_checked << " h samples";
}

// 8. the three worked sequences and 50 product sequences through h
void convergence(Outcome& o) {
  const ModelGraph g(MinimalSystem::odometer(), Space::point());
  const DiscreteGraph f = DiscreteGraph::o_infinity();
  const Point z = CantorPoint::from_rational(Rational(1, 3));
  const Point star = Point::finite(0);
  const ModelPath vertex(FinitePath<ModelGraph>::vertex({z, star}));
  const ModelPath mu = param_f(g, z, EventuallyPeriodic<std::uint64_t>({2}, {1, 3}));
  o.require(converges(g, ModelSequence{{}, mu}, mu).verdict() == Tri::yes, "constant sequence");
  const ModelTail esc{ZRule::constant(z), star, {}, IndexEscape{IndexEscape::Kind::linear, 0, 0}, std::nullopt};
  o.require(converges(g, ModelSequence{{}, esc}, vertex).verdict() == Tri::yes, "escaping index");
  const ModelPath e7(FinitePath<ModelGraph>::from_edges(g, {ModelEdge{g.system().backward(z), star, 7}}));
  const auto fixed = converges(g, ModelSequence{{}, e7}, vertex);
  o.require(fixed.verdict() == Tri::no && fixed.escape.verdict == Tri::no, "fixed index");
  Rng rng(8);
  int through = 0;
  for (int i = 0; i < 50; ++i) {
    const auto s = random_convergent_product_sequence(g, f, rng);
    const bool ok = product_converges(g, f, s.sequence, s.z, s.limit) == Tri::yes &&
                    converges(g, h_image(g, s.sequence), homeo_h(g, s.z, s.limit)).verdict() == Tri::yes;
    through += ok;
  }
  o.require(through == 50, std::to_string(50 - through) + " product sequences lost convergence");
  o.why << "constant yes, escaping yes, fixed no, " << through << "/50 through h";
}

// 9. dimension arithmetic
void dimension(Outcome& o) {
  const auto a = dim_bound({3, 0, true});
  const auto b = dim_bound({2, 0, true});
  const auto c = dim_bound({0, 0, false});
  o.require(a.bound == 7 && a.refined == 3u, "(3,0)");
  o.require(b.bound == 5 && b.refined == 2u, "(2,0)");
  o.require(c.bound == 1, "(0,0)");
  for (unsigned z = 0; z <= 4; ++z)
    for (unsigned x = 0; x <= 4; ++x) o.require(dim_bound({z, x, false}).bound == 2 * z + x + 1, "formula");
  o.why << "(3,0) -> 7 refined 3, (2,0) -> 5 refined 2, (0,0) -> 1";
}

// 10. two battery runs, byte-identical reports
void determinism(Outcome& o) {
  const cli::ModelConfig c;
  const std::string a = cli::run_battery(c).to_json().dump(2);
  const std::string b = cli::run_battery(c).to_json().dump(2);
  o.require(a == b, "reports differ");
  o.why << a.size() << " bytes, identical";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"groupoid axioms", groupoid_axioms},
      {"principality", principality},
      {"minimality", minimality},
      {"contracting", contracting},
      {"graph K-theory oracles", ktheory_oracles},
      {"model K-theory", model_ktheory_check},
      {"boundary conjugacies", conjugacies},
      {"convergence", convergence},
      {"dimension arithmetic", dimension},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.why << "exception: " << e.what();
    }
    failed += !o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << "  " << i + 1 << ". " << criteria[i].first << "  (" << o.why.str() << ")"
              << std::endl;
  }
  return failed ? 1 : 0;
}
