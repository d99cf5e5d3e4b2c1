#pragma once

#include "glab/error.hpp"
#include "glab/exact/qphi.hpp"

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace glab {

/// Z^rank + Z/d_1 + ... + Z/d_t with d_1 | d_2 | ... | d_t, each d_i >= 2,
/// optionally with a distinguished element (the class of the unit) written
/// in the canonical coordinates (free coordinates first, then one
/// coordinate per torsion factor reduced mod d_i).
///
/// countable_rank marks the free part as Z^(N) (countably generated free),
/// which is needed for the K_0-group of the Cantor space; the unit class is
/// then a finitely supported coordinate vector.
struct FGAbelianGroup {
  std::size_t rank = 0;
  std::vector<Integer> torsion;
  std::optional<std::vector<Integer>> unit_class;
  bool countable_rank = false;

  static FGAbelianGroup zero() { return {}; }
  static FGAbelianGroup free(std::size_t r) { return {r, {}, std::nullopt, false}; }
  static FGAbelianGroup pointed_integers() { return {1, {}, std::vector<Integer>{1}, false}; }

  void validate() const {
    for (std::size_t i = 0; i < torsion.size(); ++i) {
      if (torsion[i] < 2) throw PreconditionError("torsion invariant factors must be >= 2");
      if (i > 0 && torsion[i] % torsion[i - 1] != 0) throw PreconditionError("torsion factors must form a divisibility chain");
    }
    if (unit_class && !countable_rank && unit_class->size() != rank + torsion.size())
      throw PreconditionError("unit class length must equal rank + number of torsion factors");
  }

  FGAbelianGroup without_unit() const {
    FGAbelianGroup g = *this;
    g.unit_class.reset();
    return g;
  }

  bool is_zero() const { return rank == 0 && torsion.empty() && !countable_rank; }

  friend bool operator==(const FGAbelianGroup&, const FGAbelianGroup&) = default;

  /// "rank 0, torsion [2], unit [1]"
  std::string to_string() const {
    std::ostringstream os;
    os << "rank " << (countable_rank ? std::string("aleph0") : std::to_string(rank)) << ", torsion [";
    for (std::size_t i = 0; i < torsion.size(); ++i) os << (i ? "," : "") << torsion[i];
    os << "]";
    if (unit_class) {
      os << ", unit [";
      for (std::size_t i = 0; i < unit_class->size(); ++i) os << (i ? "," : "") << (*unit_class)[i];
      os << "]";
    }
    return os.str();
  }
};

/// (K_0, K_1) of a C*-algebra; the unit class, if any, sits on k0.
struct KTheory {
  FGAbelianGroup k0;
  FGAbelianGroup k1;
  /// Where the value came from ("computed", or the source of declared metadata).
  std::string provenance = "computed";

  /// K-theory of C, the algebra of a point: (Z pointed at 1, 0).
  static KTheory of_point() { return {FGAbelianGroup::pointed_integers(), FGAbelianGroup::zero(), "declared"}; }

  bool same_groups(const KTheory& o) const { return k0 == o.k0 && k1 == o.k1; }
  friend bool operator==(const KTheory& a, const KTheory& b) { return a.same_groups(b); }

  std::string to_string() const { return "K0: " + k0.to_string() + "; K1: " + k1.to_string(); }
};

}  // namespace glab
