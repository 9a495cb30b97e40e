#pragma once

// Combinatorics of mod A for a linear Nakayama algebra A. Indecomposables
// are the admissible intervals, numbered in lexicographic (lo, hi) order.
// Every Hom space between intervals is 0 or 1 dimensional; the canonical
// basis map [a,b] -> [c,d] (a <= c <= b <= d) is the identity on [c,b].
// Morphisms between direct sums are then matrices of scalars.

#include <optional>
#include <string>
#include <vector>

#include "cotorsion/repcore.hpp"

namespace ctl {

// A multiset of indecomposable ids. Canonical form is sorted; morphisms
// may use any order, which fixes the block layout of the realization.
using Obj = std::vector<int>;

Obj sorted(Obj o);
Obj concat(const Obj& a, const Obj& b);

// coef(i, j) is the scalar on the canonical map src[j] -> dst[i]; it must be
// zero where that Hom space vanishes.
struct ObjMorphism {
  Obj src, dst;
  Matrix coef;

  bool operator==(const ObjMorphism&) const = default;
};

struct ObjSES {
  ObjMorphism i;  // A -> B
  ObjMorphism p;  // B -> C
};

struct ObjSub {
  Obj object;
  ObjMorphism inclusion;
};
struct ObjQuot {
  Obj object;
  ObjMorphism projection;
};

class Category {
 public:
  Category() = default;
  Category(Presentation pres, Field field);

  const Presentation& presentation() const noexcept { return pres_; }
  const Field& field() const noexcept { return field_; }
  int n() const noexcept { return pres_.n(); }
  int size() const noexcept { return static_cast<int>(ind_.size()); }

  const std::vector<Interval>& indecs() const noexcept { return ind_; }
  const Interval& interval(int id) const { return ind_.at(id); }
  int id(const Interval& iv) const;  // throws ArgumentError if not admissible
  std::optional<int> find(const Interval& iv) const;
  int dim(int id) const { return ind_.at(id).length(); }
  int dim(const Obj& o) const;

  std::string name(int id) const { return ind_.at(id).str(); }
  std::string name(const Obj& o) const;  // "0" or "[3,4]+[4,4]"

  int hom(int x, int y) const { return hom_[x * size() + y]; }
  int ext(int x, int y) const { return ext_[x * size() + y]; }
  int hom(const Obj& a, const Obj& b) const;
  int ext(const Obj& a, const Obj& b) const;

  // Canonical x -> y -> z composite is nonzero (both factors must be nonzero).
  bool composes(int x, int y, int z) const;

  bool is_projective(int x) const;
  bool is_injective(int x) const;
  int projective_cover(int x) const;   // P(top x)
  int injective_envelope(int x) const; // I(socle x)
  std::optional<int> syzygy(int x) const;
  std::optional<int> cosyzygy(int x) const;
  std::vector<int> projectives() const;
  std::vector<int> injectives() const;

  // Realization in repcore.
  Module realize(const Obj& o) const;
  Module realize(int x) const { return realize(Obj{x}); }
  Morphism realize(const ObjMorphism& f) const;
  // Reads a module morphism between realized objects back into scalars.
  // Throws InternalConsistencyError if it is not in the span.
  ObjMorphism canonical_form(const Obj& src, const Obj& dst, const Morphism& f) const;
  Obj identify(const Module& m) const;
  // identify plus the isomorphism realize(result) -> m.
  std::pair<Obj, Morphism> identify_with_iso(const Module& m) const;

  void set_seed(std::uint64_t seed) { seed_ = seed; }

  // Obj-level morphism algebra.
  ObjMorphism zero(const Obj& src, const Obj& dst) const;
  ObjMorphism identity(const Obj& o) const;
  ObjMorphism canonical(int x, int y) const;  // 1x1, requires hom(x,y)=1
  ObjMorphism compose(const ObjMorphism& g, const ObjMorphism& f) const;
  ObjMorphism add(const ObjMorphism& f, const ObjMorphism& g) const;
  ObjMorphism scale(int s, const ObjMorphism& f) const;
  ObjMorphism neg(const ObjMorphism& f) const { return scale(field_.p() - 1, f); }
  // [f g] : A (+) A' -> B   and   [f; g] : A -> B (+) B'
  ObjMorphism row(const ObjMorphism& f, const ObjMorphism& g) const;
  ObjMorphism column(const ObjMorphism& f, const ObjMorphism& g) const;
  ObjMorphism diag(const ObjMorphism& f, const ObjMorphism& g) const;
  // Coordinates (i, j) with hom(src[j], dst[i]) = 1, row-major; the basis of
  // Hom(src, dst) is the unit matrices at these positions.
  std::vector<std::pair<int, int>> hom_coords(const Obj& src, const Obj& dst) const;
  void validate(const ObjMorphism& f) const;

  bool is_iso(const ObjMorphism& f) const;
  bool is_injective(const ObjMorphism& f) const;
  bool is_surjective(const ObjMorphism& f) const;

  // Some h with g∘h = f (f: X -> Z, g: Y -> Z).
  std::optional<ObjMorphism> lift(const ObjMorphism& f, const ObjMorphism& g) const;
  // Some h with h∘g = f (f: X -> Z, g: X -> Y).
  std::optional<ObjMorphism> extend(const ObjMorphism& f, const ObjMorphism& g) const;

  ObjSub kernel(const ObjMorphism& f) const;
  ObjQuot cokernel(const ObjMorphism& f) const;
  // The h: coker(g) -> Z with h∘proj = f, when f kills the image of g.
  ObjMorphism descend(const ObjQuot& q, const ObjMorphism& f) const;
  // The h: X -> ker with incl∘h = f, when f lands in the kernel.
  ObjMorphism restrict_into(const ObjSub& k, const ObjMorphism& f) const;

  // Empty when valid.
  std::string validate(const ObjSES& s) const;

  // Projective presentation 0 -> Omega(c) -> P(c) -> c -> 0 of an Obj,
  // summand by summand (projective summands contribute no syzygy).
  struct Presentation1 {
    Obj omega, cover;
    ObjMorphism incl;  // omega -> cover
    ObjMorphism proj;  // cover -> c
  };
  Presentation1 projective_presentation(const Obj& c) const;

  // Ext^1(c, a) classes: positions (i, j) of omega(c)[j] -> a[i] whose
  // canonical map is not in the image of Hom(P(c), a); one F_p coordinate each.
  std::vector<std::pair<int, int>> ext_coords(const Obj& c, const Obj& a) const;
  // Conflation a -> E -> c for the class with the given coordinates.
  ObjSES extension(const Obj& c, const Obj& a, const std::vector<int>& coords) const;

  // Distinct middle terms over all classes in Ext^1(x, y) (y the sub, x the
  // quotient), split middle first.
  std::vector<Obj> extensions(int x, int y) const;

  // Direct table check against repcore (hom_space dimensions for all pairs,
  // Ext via the long exact sequence of Hom). Empty when all agree.
  std::vector<std::string> validate_tables() const;

 private:
  Presentation pres_;
  Field field_;
  std::vector<Interval> ind_;
  std::vector<int> hom_, ext_;
  std::uint64_t seed_ = 0;
};

// Census of the indecomposables in stacked notation.
std::vector<std::string> census(const Category& c);

}  // namespace ctl
