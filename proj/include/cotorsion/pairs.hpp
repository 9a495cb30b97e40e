#pragma once

// Cotorsion pairs, twin cotorsion pairs and the classes B+, B-, H of a twin,
// together with the hearts H1, H2 of the two single pairs.

#include <vector>

#include "cotorsion/subcat.hpp"

namespace ctl {

struct CotorsionRecord {
  Subcategory u, v;
  std::vector<Approximation> left;   // V_B -> U_B -> B
  std::vector<Approximation> right;  // B -> V^B -> U^B
};

Verdict verify_cotorsion(const Category& c, const Subcategory& u, const Subcategory& v, const SearchBounds& bounds,
                         CotorsionRecord* record = nullptr);

struct TwinPair {
  Subcategory S, T, U, V, W;  // W = U ∩ T
  CotorsionRecord st, uv;
};

// Verifies both pairs and S ⊆ U. `out` is filled whenever the input parses
// into a twin shape, even if verification fails.
Verdict verify_twin(const Category& c, const Subcategory& S, const Subcategory& T, const Subcategory& U,
                    const Subcategory& V, const SearchBounds& bounds, TwinPair* out);

// V -> W -> x with W in add(W), V in add(V).
Verdict membership_bplus(const Category& c, int x, const TwinPair& tp, const SearchBounds& bounds);
// x -> W' -> S with W' in add(W), S in add(S).
Verdict membership_bminus(const Category& c, int x, const TwinPair& tp, const SearchBounds& bounds);

// Indecomposable-level membership table for one class defined by a cover or
// envelope condition.
struct MembershipTable {
  std::vector<Status> status;
  std::vector<Approximation> witness;

  Subcategory members(int universe) const;
  std::vector<int> unresolved() const;
};

struct HeartClasses {
  MembershipTable bplus, bminus;    // the twin
  MembershipTable b1plus, b1minus;  // the pair (S,T), core S ∩ T
  MembershipTable b2plus, b2minus;  // the pair (U,V), core U ∩ V
  Subcategory H, H1, H2;
  Subcategory core1, core2;
  std::vector<std::string> taint;  // unresolved memberships, if any

  bool exact() const noexcept { return taint.empty(); }
  // Ind(H) \ Ind(W): the objects that survive in the quotient.
  Subcategory reduced(const TwinPair& tp) const { return minus(H, tp.W); }
  Subcategory reduced1() const { return minus(H1, core1); }
  Subcategory reduced2() const { return minus(H2, core2); }
};

HeartClasses compute_hearts(const Category& c, const TwinPair& tp, const SearchBounds& bounds);

json heart_json(const Category& c, const TwinPair& tp, const HeartClasses& h, bool with_witnesses);

}  // namespace ctl
