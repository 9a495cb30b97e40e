#pragma once

// Representations of a bound linear quiver
//
//     n -> n-1 -> ... -> 2 -> 1
//
// over F_p, with monomial relations given by vertex intervals: the relation
// [a,b] says the path from b down to a composes to zero. The arrow leaving
// vertex v+1 is stored as a dims[v] x dims[v+1] matrix. An interval module
// [a,b] is one-dimensional on a..b with identity arrows; its top is b, which
// matches the stacked notation b/.../a used for these algebras.

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cotorsion/matrix.hpp"

namespace ctl {

struct Interval {
  int lo = 1;  // socle vertex
  int hi = 1;  // top vertex

  int length() const noexcept { return hi - lo + 1; }
  bool contains(int v) const noexcept { return lo <= v && v <= hi; }
  bool contains(const Interval& o) const noexcept { return lo <= o.lo && o.hi <= hi; }

  std::string str() const;      // "[a,b]"
  std::string stacked() const;  // "b/.../a"
  static Interval parse(const std::string& text);  // either notation

  auto operator<=>(const Interval&) const = default;
};

class Presentation {
 public:
  Presentation() = default;
  // Validates and normalizes: drops relations implied by a shorter one.
  Presentation(int n, std::vector<Interval> relations);

  int n() const noexcept { return n_; }
  const std::vector<Interval>& relations() const noexcept { return relations_; }

  // No relation interval lies inside [lo,hi].
  bool admissible(const Interval& iv) const noexcept;

  bool operator==(const Presentation&) const = default;

 private:
  int n_ = 0;
  std::vector<Interval> relations_;
};

class Module {
 public:
  Module() = default;
  // arrows[k] is the map from vertex k+2 to vertex k+1 (k = 0..n-2).
  Module(Presentation pres, Field field, std::vector<int> dims, std::vector<Matrix> arrows);

  static Module zero(const Presentation& pres, const Field& field);
  static Module interval(const Presentation& pres, const Field& field, const Interval& iv);

  const Presentation& presentation() const noexcept { return pres_; }
  const Field& field() const noexcept { return field_; }
  int n() const noexcept { return pres_.n(); }

  // Vertices are 1-based.
  int dim(int v) const { return dims_.at(v - 1); }
  const std::vector<int>& dims() const noexcept { return dims_; }
  int total_dim() const noexcept;
  bool is_zero() const noexcept { return total_dim() == 0; }

  // Map from vertex v+1 to vertex v.
  const Matrix& arrow(int v) const { return arrows_.at(v - 1); }
  // Composite from vertex `from` down to vertex `to` (from >= to).
  Matrix path(int from, int to) const;

  bool same_category(const Module& o) const noexcept { return pres_ == o.pres_ && field_ == o.field_; }
  bool operator==(const Module&) const = default;

 private:
  Presentation pres_;
  Field field_;
  std::vector<int> dims_;
  std::vector<Matrix> arrows_;
};

class Morphism {
 public:
  Morphism() = default;
  // Checks shapes and every naturality square.
  Morphism(Module source, Module target, std::vector<Matrix> components);

  static Morphism identity(const Module& m);
  static Morphism zero(const Module& source, const Module& target);

  const Module& source() const noexcept { return source_; }
  const Module& target() const noexcept { return target_; }
  const Matrix& at(int v) const { return comps_.at(v - 1); }
  const std::vector<Matrix>& components() const noexcept { return comps_; }

  bool is_zero() const noexcept;
  bool is_injective() const;
  bool is_surjective() const;
  bool is_iso() const;

  bool operator==(const Morphism&) const = default;

 private:
  Module source_;
  Module target_;
  std::vector<Matrix> comps_;
};

// g after f
Morphism compose(const Morphism& g, const Morphism& f);
Morphism add(const Morphism& f, const Morphism& g);
Morphism scale(int s, const Morphism& f);
// Inverse of an isomorphism; throws ArgumentError otherwise.
Morphism inverse(const Morphism& f);
// The h with h∘q = g for a surjection q, provided g kills ker q.
Morphism descend_along_epi(const Morphism& q, const Morphism& g);
Morphism linear_combination(const std::vector<Morphism>& basis, const std::vector<int>& coeffs,
                            const Module& source, const Module& target);

// Basis of Hom(m, n): the null space of the naturality system, unknowns
// ordered by vertex then row-major entries, basis in pivot order.
std::vector<Morphism> hom_space(const Module& m, const Module& n);

struct SubObject {
  Module object;
  Morphism inclusion;  // object -> ambient
};
struct QuotientObject {
  Module object;
  Morphism projection;  // ambient -> object
};

SubObject kernel(const Morphism& f);
QuotientObject cokernel(const Morphism& f);
SubObject image(const Morphism& f);

struct SES {
  Morphism i;  // A -> B
  Morphism p;  // B -> C
};
// Empty string when valid, else a description of the first violation.
std::string validate_ses(const SES& s);

// Submodule enumeration. Per-vertex subspaces are chosen from vertex n down
// to 1, each containing the arrow image of the previous choice. Throws
// EnumerationRefused when total_dim(m) > dim_cap. The callback returns false
// to stop; the function returns false iff stopped early.
bool for_each_submodule(const Module& m, int dim_cap,
                        const std::function<bool(const SubObject&)>& visit);
std::vector<SubObject> submodules(const Module& m, int dim_cap);

// Krull-Schmidt decomposition.
struct DecomposeOptions {
  enum class Method { automatic, serial, generic };
  Method method = Method::automatic;
  int exhaustion_cap = 12;    // max dim End(M) for exhaustive idempotent search
  std::uint64_t seed = 0;     // for randomized Fitting attempts
  int fitting_attempts = 32;
};

struct Summand {
  Interval interval;
  Morphism embedding;  // Module::interval(interval) -> M
};

// Pieces sorted by interval; the embeddings assemble to an isomorphism.
std::vector<Summand> decompose(const Module& m, const DecomposeOptions& opts = {});

// Isomorphism  (+)_i interval_i -> m  assembled from the summand embeddings,
// with the direct sum laid out summand by summand in the given order.
Morphism assemble_iso(const Module& m, const std::vector<Summand>& pieces);

// Direct sum of interval modules, summand by summand at every vertex.
Module direct_sum_of_intervals(const Presentation& pres, const Field& field,
                               const std::vector<Interval>& summands);
Module direct_sum(const Module& a, const Module& b);

}  // namespace ctl
