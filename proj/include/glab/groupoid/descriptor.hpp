#pragma once

#include "glab/groupoid/deaconu_renault.hpp"

#include <map>
#include <memory>
#include <variant>

namespace glab {

/// (i, j) in the complete equivalence relation on N.
struct RelationElement {
  std::uint64_t i = 0;
  std::uint64_t j = 0;
  friend bool operator==(const RelationElement&, const RelationElement&) = default;
  friend auto operator<=>(const RelationElement&, const RelationElement&) = default;
};

using Component = std::variant<GroupoidElement<ModelGraph>, GroupoidElement<DiscreteGraph>, RelationElement>;

/// An element of a descriptor groupoid: one component per factor.
struct Element {
  std::vector<Component> parts;
  friend bool operator==(const Element&, const Element&) = default;
  friend auto operator<=>(const Element&, const Element&) = default;
};

/// Runtime groupoid interface shared by DR groupoids, R_N, products and reductions.
class Groupoid {
 public:
  virtual ~Groupoid() = default;
  virtual std::string name() const = 0;
  virtual std::size_t arity() const = 0;
  virtual Element compose(const Element& a, const Element& b) const = 0;
  virtual Element inverse(const Element& a) const = 0;
  virtual Element range(const Element& a) const = 0;
  virtual Element source(const Element& a) const = 0;
  virtual bool is_unit(const Element& a) const = 0;
  /// Sum of the integer cocycles of the DR factors.
  virtual std::int64_t cocycle(const Element& a) const = 0;
  virtual Element random_unit(Rng& rng) const = 0;
  virtual Element random_element_with_range(const Element& unit, Rng& rng) const = 0;
  /// Non-unit elements g with r(g) = s(g) = unit, found within the shift window.
  virtual std::vector<Element> isotropy(const Element& unit, std::uint64_t bound) const = 0;

  bool composable(const Element& a, const Element& b) const { return source(a) == range(b); }
  Element random_element(Rng& rng) const { return random_element_with_range(random_unit(rng), rng); }
};

using Descriptor = std::shared_ptr<const Groupoid>;

namespace detail {

template <class G>
class DRGroupoid : public Groupoid {
 public:
  using El = GroupoidElement<G>;
  explicit DRGroupoid(std::shared_ptr<const G> g) : g_(std::move(g)), dr_(*g_) {}

  std::string name() const override { return "G(dE, sigma) over " + g_->name(); }
  std::size_t arity() const override { return 1; }
  Element compose(const Element& a, const Element& b) const override { return wrap(dr_.compose(get(a), get(b))); }
  Element inverse(const Element& a) const override { return wrap(dr_.inverse(get(a))); }
  Element range(const Element& a) const override { return wrap(dr_.range(get(a))); }
  Element source(const Element& a) const override { return wrap(dr_.source(get(a))); }
  bool is_unit(const Element& a) const override { return get(a).is_unit(); }
  std::int64_t cocycle(const Element& a) const override { return get(a).k; }
  Element random_unit(Rng& rng) const override { return wrap(dr_.unit(random_boundary_path(*g_, rng))); }
  Element random_element_with_range(const Element& unit, Rng& rng) const override {
    return wrap(dr_.random_element_from(get(unit).x, rng));
  }
  std::vector<Element> isotropy(const Element& unit, std::uint64_t bound) const override {
    std::set<El> found;
    const auto& mu = get(unit).x;
    for (auto [n, m] : dr_.isotropy_search(mu, bound)) found.insert(dr_.make_element(mu, n, m, mu));
    std::vector<Element> out;
    for (const auto& e : found) out.push_back(wrap(e));
    return out;
  }

  const DeaconuRenault<G>& dr() const { return dr_; }

 private:
  static const El& get(const Element& a) {
    if (a.parts.size() != 1 || !std::holds_alternative<El>(a.parts[0]))
      throw PreconditionError("element does not belong to this groupoid");
    return std::get<El>(a.parts[0]);
  }
  static Element wrap(El e) { return Element{{Component(std::move(e))}}; }

  std::shared_ptr<const G> g_;
  DeaconuRenault<G> dr_;
};

class CompleteRelationGroupoid : public Groupoid {
 public:
  std::string name() const override { return "R_N"; }
  std::size_t arity() const override { return 1; }
  Element compose(const Element& a, const Element& b) const override {
    const auto &x = get(a), &y = get(b);
    if (x.j != y.i) throw ComposabilityError("(i,j)(j',k) needs j = j'");
    return wrap({x.i, y.j});
  }
  Element inverse(const Element& a) const override { return wrap({get(a).j, get(a).i}); }
  Element range(const Element& a) const override { return wrap({get(a).i, get(a).i}); }
  Element source(const Element& a) const override { return wrap({get(a).j, get(a).j}); }
  bool is_unit(const Element& a) const override { return get(a).i == get(a).j; }
  std::int64_t cocycle(const Element&) const override { return 0; }
  Element random_unit(Rng& rng) const override {
    const auto i = rng.below(16);
    return wrap({i, i});
  }
  Element random_element_with_range(const Element& unit, Rng& rng) const override {
    return wrap({get(unit).i, rng.below(16)});
  }
  std::vector<Element> isotropy(const Element&, std::uint64_t) const override { return {}; }

 private:
  static const RelationElement& get(const Element& a) {
    if (a.parts.size() != 1 || !std::holds_alternative<RelationElement>(a.parts[0]))
      throw PreconditionError("element does not belong to R_N");
    return std::get<RelationElement>(a.parts[0]);
  }
  static Element wrap(RelationElement e) { return Element{{Component(e)}}; }
};

class ProductGroupoid : public Groupoid {
 public:
  explicit ProductGroupoid(std::vector<Descriptor> fs) : fs_(std::move(fs)) {
    if (fs_.empty()) throw PreconditionError("a product needs at least one factor");
  }
  std::string name() const override {
    std::string s;
    for (std::size_t i = 0; i < fs_.size(); ++i) s += (i ? " x " : "") + fs_[i]->name();
    return s;
  }
  std::size_t arity() const override {
    std::size_t a = 0;
    for (const auto& f : fs_) a += f->arity();
    return a;
  }
  Element compose(const Element& a, const Element& b) const override {
    return lift2(a, b, [](const Groupoid& f, const Element& x, const Element& y) { return f.compose(x, y); });
  }
  Element inverse(const Element& a) const override {
    return lift(a, [](const Groupoid& f, const Element& x) { return f.inverse(x); });
  }
  Element range(const Element& a) const override {
    return lift(a, [](const Groupoid& f, const Element& x) { return f.range(x); });
  }
  Element source(const Element& a) const override {
    return lift(a, [](const Groupoid& f, const Element& x) { return f.source(x); });
  }
  bool is_unit(const Element& a) const override {
    auto ps = split(a);
    for (std::size_t i = 0; i < fs_.size(); ++i)
      if (!fs_[i]->is_unit(ps[i])) return false;
    return true;
  }
  std::int64_t cocycle(const Element& a) const override {
    auto ps = split(a);
    std::int64_t k = 0;
    for (std::size_t i = 0; i < fs_.size(); ++i) k += fs_[i]->cocycle(ps[i]);
    return k;
  }
  Element random_unit(Rng& rng) const override {
    std::vector<Element> ps;
    for (const auto& f : fs_) ps.push_back(f->random_unit(rng));
    return join(ps);
  }
  Element random_element_with_range(const Element& unit, Rng& rng) const override {
    return lift(unit, [&rng](const Groupoid& f, const Element& u) { return f.random_element_with_range(u, rng); });
  }
  /// Componentwise: a product element is isotropy iff each component is a unit or
  /// isotropy, and not all of them are units.
  std::vector<Element> isotropy(const Element& unit, std::uint64_t bound) const override {
    auto ps = split(unit);
    std::vector<std::vector<Element>> choices;
    for (std::size_t i = 0; i < fs_.size(); ++i) {
      auto iso = fs_[i]->isotropy(ps[i], bound);
      iso.insert(iso.begin(), ps[i]);
      choices.push_back(std::move(iso));
    }
    std::vector<Element> out;
    std::vector<std::size_t> pick(fs_.size(), 0);
    while (true) {
      std::size_t i = 0;
      while (i < pick.size() && ++pick[i] == choices[i].size()) pick[i++] = 0;
      if (i == pick.size()) break;
      std::vector<Element> comp;
      for (std::size_t f = 0; f < fs_.size(); ++f) comp.push_back(choices[f][pick[f]]);
      out.push_back(join(comp));
    }
    return out;
  }

 private:
  std::vector<Element> split(const Element& a) const {
    if (a.parts.size() != arity()) throw PreconditionError("element has the wrong number of components");
    std::vector<Element> out;
    std::size_t at = 0;
    for (const auto& f : fs_) {
      Element e;
      e.parts.assign(a.parts.begin() + static_cast<std::ptrdiff_t>(at),
                     a.parts.begin() + static_cast<std::ptrdiff_t>(at + f->arity()));
      at += f->arity();
      out.push_back(std::move(e));
    }
    return out;
  }
  static Element join(const std::vector<Element>& ps) {
    Element out;
    for (const auto& p : ps) out.parts.insert(out.parts.end(), p.parts.begin(), p.parts.end());
    return out;
  }
  template <class F>
  Element lift(const Element& a, F f) const {
    auto ps = split(a);
    for (std::size_t i = 0; i < fs_.size(); ++i) ps[i] = f(*fs_[i], ps[i]);
    return join(ps);
  }
  template <class F>
  Element lift2(const Element& a, const Element& b, F f) const {
    auto pa = split(a), pb = split(b);
    for (std::size_t i = 0; i < fs_.size(); ++i) pa[i] = f(*fs_[i], pa[i], pb[i]);
    return join(pa);
  }

  std::vector<Descriptor> fs_;
};

/// G restricted to the paths whose range lies in a clopen vertex box V.
class ReductionGroupoid : public Groupoid {
 public:
  ReductionGroupoid(std::shared_ptr<const DRGroupoid<ModelGraph>> base, std::shared_ptr<const ModelGraph> g, VertexBox v)
      : base_(std::move(base)), g_(std::move(g)), v_(std::move(v)) {
    if (!v_.z.is_clopen() || !v_.x.is_clopen()) throw PreconditionError("reduction box " + v_.to_string() + " is not clopen");
    if (v_.is_empty()) throw PreconditionError("reduction box is empty");
  }
  std::string name() const override { return base_->name() + " | " + v_.to_string(); }
  std::size_t arity() const override { return 1; }
  Element compose(const Element& a, const Element& b) const override { return base_->compose(check(a), check(b)); }
  Element inverse(const Element& a) const override { return base_->inverse(check(a)); }
  Element range(const Element& a) const override { return base_->range(check(a)); }
  Element source(const Element& a) const override { return base_->source(check(a)); }
  bool is_unit(const Element& a) const override { return base_->is_unit(check(a)); }
  std::int64_t cocycle(const Element& a) const override { return base_->cocycle(check(a)); }
  Element random_unit(Rng& rng) const override {
    for (int t = 0; t < 4096; ++t) {
      Element u = base_->random_unit(rng);
      if (inside(u)) return u;
    }
    throw SearchExhausted("no sampled unit landed in the reduction box");
  }
  Element random_element_with_range(const Element& unit, Rng& rng) const override {
    check(unit);
    for (int t = 0; t < 64; ++t) {
      Element e = base_->random_element_with_range(unit, rng);
      if (inside(base_->source(e))) return e;
    }
    return unit;
  }
  std::vector<Element> isotropy(const Element& unit, std::uint64_t bound) const override {
    return base_->isotropy(check(unit), bound);
  }

  bool inside(const Element& a) const {
    const auto& e = std::get<GroupoidElement<ModelGraph>>(a.parts.at(0));
    return v_.contains(e.x.range(*g_)) && v_.contains(e.y.range(*g_));
  }

 private:
  const Element& check(const Element& a) const {
    if (!inside(a)) throw PreconditionError("element leaves the reduction box");
    return a;
  }

  std::shared_ptr<const DRGroupoid<ModelGraph>> base_;
  std::shared_ptr<const ModelGraph> g_;
  VertexBox v_;
};

}  // namespace detail

inline Descriptor dr_groupoid(const ModelGraph& g) {
  return std::make_shared<detail::DRGroupoid<ModelGraph>>(std::make_shared<const ModelGraph>(g));
}
inline Descriptor dr_groupoid(const DiscreteGraph& g) {
  return std::make_shared<detail::DRGroupoid<DiscreteGraph>>(std::make_shared<const DiscreteGraph>(g));
}
inline Descriptor complete_relation() { return std::make_shared<detail::CompleteRelationGroupoid>(); }
inline Descriptor product(std::vector<Descriptor> fs) { return std::make_shared<detail::ProductGroupoid>(std::move(fs)); }
inline Descriptor reduce_clopen(const ModelGraph& g, VertexBox v) {
  auto gp = std::make_shared<const ModelGraph>(g);
  return std::make_shared<detail::ReductionGroupoid>(std::make_shared<detail::DRGroupoid<ModelGraph>>(gp), gp,
                                                     std::move(v));
}

struct AxiomReport {
  std::uint64_t trials = 0;
  std::map<std::string, std::uint64_t> failures;  // law -> count
  std::optional<std::string> first_failure;

  std::uint64_t total_failures() const {
    std::uint64_t t = 0;
    for (const auto& [_, c] : failures) t += c;
    return t;
  }
  bool passed() const { return total_failures() == 0; }
};

/// Samples composable triples g, h, e and checks the groupoid laws exactly.
inline AxiomReport axiom_sample(const Groupoid& G, std::uint64_t trials, std::uint64_t seed) {
  Rng rng(seed);
  AxiomReport rep;
  auto law = [&](const char* name, bool ok) {
    if (ok) return;
    ++rep.failures[name];
    if (!rep.first_failure) rep.first_failure = std::string(name) + " at trial " + std::to_string(rep.trials);
  };
  for (std::uint64_t t = 0; t < trials; ++t) {
    ++rep.trials;
    try {
      const Element g = G.random_element(rng);
      const Element h = G.random_element_with_range(G.source(g), rng);
      const Element e = G.random_element_with_range(G.source(h), rng);
      const Element gh = G.compose(g, h);
      law("associativity", G.compose(gh, e) == G.compose(g, G.compose(h, e)));
      law("left unit", G.compose(G.range(g), g) == g);
      law("right unit", G.compose(g, G.source(g)) == g);
      law("inverse", G.compose(g, G.inverse(g)) == G.range(g) && G.compose(G.inverse(g), g) == G.source(g));
      law("involution", G.inverse(G.inverse(g)) == g);
      law("range/source", G.range(gh) == G.range(g) && G.source(gh) == G.source(h));
      law("units", G.is_unit(G.range(g)) && G.is_unit(G.source(g)));
      law("cocycle", G.cocycle(gh) == G.cocycle(g) + G.cocycle(h));
    } catch (const Error& err) {
      law("exception", false);
      if (rep.failures["exception"] == 1) rep.first_failure = std::string("exception: ") + err.what();
    }
  }
  return rep;
}

struct IsotropyReport {
  std::uint64_t units = 0;
  std::uint64_t isotropic = 0;
  bool passed() const { return isotropic == 0; }
};

inline IsotropyReport isotropy_sample(const Groupoid& G, std::uint64_t units, std::uint64_t bound, std::uint64_t seed) {
  Rng rng(seed);
  IsotropyReport rep;
  for (std::uint64_t i = 0; i < units; ++i) {
    ++rep.units;
    if (!G.isotropy(G.random_unit(rng), bound).empty()) ++rep.isotropic;
  }
  return rep;
}

}  // namespace glab
