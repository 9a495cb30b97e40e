#pragma once

// The heart H/W of a twin cotorsion pair as computable data. Hom spaces
// between intervals are at most one dimensional, so the W-ideal of
// Hom(A, B) is a coordinate subspace and everything below is linear algebra
// on coefficient matrices.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cotorsion/pairs.hpp"

namespace ctl {

// Epi variant: A -> B -> U0, A and B in H, first map W-monic, U0 in add(U).
// Mono variant: T0 -> A -> B, A and B in H, second map W-epic, T0 in add(T).
struct EpiTriangle {
  ObjSES ses;
  bool mono = false;
};

// Coverage of a bounded enumeration. Pairs of end terms whose Ext space has
// more than class_cap classes are skipped and counted.
struct EnumStats {
  long pairs = 0;
  long classes = 0;
  long skipped = 0;
};
inline constexpr long class_cap = 1 << 10;

struct HeartMap {
  Obj object;
  ObjMorphism map;  // kernel: object -> A; cokernel: B -> object
};

struct MethodPair {
  bool criterion = false;  // cone / cocone membership
  bool direct = false;     // hom-functor injectivity on Ind(H)
  Obj cone;                // C_f for epi, K for mono
};

class Heart {
 public:
  Heart(const Category& c, TwinPair tp, HeartClasses h);

  const Category& category() const noexcept { return *c_; }
  const TwinPair& twin() const noexcept { return tp_; }
  const HeartClasses& classes() const noexcept { return h_; }
  // Ind(H) \ Ind(W), the objects that survive in the quotient.
  const std::vector<int>& reduced() const noexcept { return reduced_; }
  bool contains(const Obj& o) const { return h_.H.contains(o); }

  // Positions of hom_coords(a, b) spanning the W-ideal, and the rest.
  std::vector<std::pair<int, int>> w_ideal(const Obj& a, const Obj& b) const;
  std::vector<std::pair<int, int>> quotient_coords(const Obj& a, const Obj& b) const;
  bool in_w_ideal(const ObjMorphism& f) const;
  int quotient_dim(const Obj& a, const Obj& b) const;
  // The morphism with the given values on quotient_coords(a, b), zero elsewhere.
  ObjMorphism from_quotient(const Obj& a, const Obj& b, const std::vector<int>& values) const;

  bool is_w_monic(const ObjMorphism& f) const;
  bool is_w_epic(const ObjMorphism& f) const;

  MethodPair epi_methods(const ObjMorphism& f) const;
  MethodPair mono_methods(const ObjMorphism& f) const;
  // Both methods; throws InternalConsistencyError when they disagree.
  bool is_epi(const ObjMorphism& f) const;
  bool is_mono(const ObjMorphism& f) const;
  bool is_epi_direct(const ObjMorphism& f) const;
  bool is_mono_direct(const ObjMorphism& f) const;

  // Throws WitnessMissing if an approximation it needs was not found.
  HeartMap kernel(const ObjMorphism& f) const;
  HeartMap cokernel(const ObjMorphism& f) const;
  // Universal property probes against every object of Ind(H) \ Ind(W).
  // Empty when all pass.
  std::string check_kernel(const ObjMorphism& f, const HeartMap& k) const;
  std::string check_cokernel(const ObjMorphism& f, const HeartMap& q) const;

  // Deterministic order: by first enumerated object, then the other end,
  // then the extension class. Split pieces are left out, except the
  // trivial A -> A -> 0 (resp. 0 -> B -> B) triangles which come first.
  // With `required`, only triangles whose U0 (resp. T0) has a summand in it.
  std::vector<EpiTriangle> epi_triangles(const SearchBounds& b, EnumStats* stats = nullptr,
                                         const std::vector<int>* required = nullptr) const;
  std::vector<EpiTriangle> mono_triangles(const SearchBounds& b, EnumStats* stats = nullptr,
                                          const std::vector<int>* required = nullptr) const;
  // Streaming forms; fn returns false to stop. Return false iff stopped.
  bool for_each_epi_triangle(const SearchBounds& b, EnumStats* stats, const std::vector<int>* required,
                             const std::function<bool(const EpiTriangle&)>& fn) const;
  bool for_each_mono_triangle(const SearchBounds& b, EnumStats* stats, const std::vector<int>* required,
                              const std::function<bool(const EpiTriangle&)>& fn) const;
  // First triangle (in the order above) ending in u0, resp. starting at t0.
  // Summands of the given end that lie in W may split off.
  std::optional<EpiTriangle> witness_epi(const Obj& u0, const SearchBounds& b, EnumStats* stats = nullptr) const;
  std::optional<EpiTriangle> witness_mono(const Obj& t0, const SearchBounds& b, EnumStats* stats = nullptr) const;

  // B+ / B- conflations of every summand, as direct sums.
  ObjSES bplus_witness(const Obj& o) const;   // V -> W -> o
  ObjSES bminus_witness(const Obj& o) const;  // o -> W -> S

  // Self-contained description of the twin for certificates.
  json twin_json() const;
  json membership_json(const Obj& o) const;

 private:
  const Category* c_;
  TwinPair tp_;
  HeartClasses h_;
  std::vector<int> reduced_;

  Matrix induced(const Obj& x, const Obj& y, const Obj& x2, const Obj& y2,
                 const std::function<ObjMorphism(const ObjMorphism&)>& op) const;
};

Verdict check_integral(const Heart& heart, const SearchBounds& b);
Verdict check_abelian(const Heart& heart, const SearchBounds& b);
// Never claims Holds: Fails with a square, or Unknown. Gives up (Unknown)
// after probe_budget units of work: one per epi test, four per square.
inline constexpr long probe_budget = 1 << 15;
Verdict probe_integral_direct(const Heart& heart, const SearchBounds& b);

// Revalidates a Fails certificate from the checks above (or from twin
// verification) using only the data it contains. Empty when it replays.
std::string replay_certificate(const json& cert);

}  // namespace ctl
