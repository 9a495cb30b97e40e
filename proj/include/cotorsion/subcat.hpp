#pragma once

// Summand-closed classes of modules, represented by their indecomposables,
// together with the conflation searches the rest of the library needs.

#include <string>
#include <vector>

#include "cotorsion/serialcat.hpp"
#include "cotorsion/verdict.hpp"

namespace ctl {

class Subcategory {
 public:
  Subcategory() = default;
  Subcategory(const Category& c, std::vector<int> ids, std::string name = "", std::string provenance = "");
  Subcategory(int universe, std::vector<int> ids, std::string name = "", std::string provenance = "");

  const std::vector<int>& ids() const noexcept { return ids_; }
  int universe() const noexcept { return static_cast<int>(mask_.size()); }
  bool contains(int x) const { return mask_.at(x); }
  bool contains(const Obj& o) const;  // every summand is a member
  // Summands of o outside the class, in order.
  Obj outside(const Obj& o) const;
  bool empty() const noexcept { return ids_.empty(); }
  int size() const noexcept { return static_cast<int>(ids_.size()); }

  const std::string& name() const noexcept { return name_; }
  const std::string& provenance() const noexcept { return provenance_; }
  Subcategory& named(std::string name);

  bool operator==(const Subcategory& o) const { return mask_ == o.mask_; }

 private:
  std::vector<bool> mask_;
  std::vector<int> ids_;
  std::string name_, provenance_;
};

Subcategory everything(const Category& c);
Subcategory zero_class(const Category& c);
Subcategory projectives(const Category& c);
Subcategory injectives(const Category& c);

Subcategory oplus(const Subcategory& x, const Subcategory& y);
Subcategory inter(const Subcategory& x, const Subcategory& y);
Subcategory minus(const Subcategory& x, const Subcategory& y);
bool subset(const Subcategory& x, const Subcategory& y);
// {y : Ext^1(u, y) = 0 for all u in x}
Subcategory right_perp(const Category& c, const Subcategory& x);
// {y : Ext^1(y, v) = 0 for all v in x}
Subcategory left_perp(const Category& c, const Subcategory& x);

// First pair (u, v) with u in x, v in y and Ext^1(u, v) != 0.
std::optional<std::pair<int, int>> ext_obstruction(const Category& c, const Subcategory& x, const Subcategory& y);

// Result of an approximation search around one indecomposable b.
//   deflation:  K -> C -> b  with C in add(cover), K in add(other)
//   inflation:  b -> C -> Q  with C in add(cover), Q in add(other)
// `refuted` is set when no such conflation exists at all: if Ext vanishes
// between the two classes, every such conflation contains the minimal
// approximation of b as a summand, so checking that one is decisive.
struct Approximation {
  bool found = false;
  ObjSES witness;
  bool refuted = false;
  json detail = json::object();  // refutation or search notes
};

Approximation deflation_search(const Category& c, int b, const Subcategory& cover, const Subcategory& kernel,
                               const SearchBounds& bounds);
Approximation inflation_search(const Category& c, int b, const Subcategory& cover, const Subcategory& cokernel,
                               const SearchBounds& bounds);

// Exact replay of a refutation produced above.
bool replay_refutation(const Category& c, const json& detail, const Subcategory& cover, const Subcategory& other);

// V_B -> U_B -> B
Verdict find_left_approx(const Category& c, int b, const Subcategory& u, const Subcategory& v, const SearchBounds& bounds);
// B -> T^B -> S^B
Verdict find_right_approx(const Category& c, int b, const Subcategory& t, const Subcategory& s, const SearchBounds& bounds);

// Conflation X -> z -> Y with X in add(x), Y in add(y), decided by complete
// submodule enumeration of z. Throws EnumerationRefused past the dim cap.
Verdict star_member(const Category& c, const Obj& z, const Subcategory& x, const Subcategory& y,
                    const SearchBounds& bounds);
// Every indecomposable of a lies in x * y (enough for add(a)).
Verdict subcat_in_star(const Category& c, const Subcategory& a, const Subcategory& x, const Subcategory& y,
                       const SearchBounds& bounds);

// Multisets over `pool` with multiplicities <= mult and total dim <= cap,
// ordered by total dimension, then lexicographically. Each is sorted.
std::vector<Obj> bounded_objects(const Category& c, const std::vector<int>& pool, int mult, int dim_cap,
                                 bool include_zero = true);

}  // namespace ctl
