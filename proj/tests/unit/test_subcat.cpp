#include "doctest.h"

#include <random>

#include "cotorsion/codec.hpp"
#include "cotorsion/errors.hpp"
#include "cotorsion/subcat.hpp"
#include "fixtures.hpp"

using namespace ctl;

namespace {

const Category& cat() { return spec("ex2").category; }
int I(int a, int b) { return cat().id({a, b}); }

Subcategory random_class(std::mt19937_64& rng, int density = 2) {
  std::vector<int> ids;
  for (int x = 0; x < cat().size(); ++x)
    if (rng() % density == 0) ids.push_back(x);
  return Subcategory(cat(), ids);
}

// Every object of add(cover) within mult 2 / dim 12 and every map onto b,
// looking for a surjection with kernel in add(kernel).
bool brute_deflation_exists(const Category& c, int b, const Subcategory& cover, const Subcategory& kernel) {
  std::vector<int> pool;
  for (int u : cover.ids())
    if (c.hom(u, b)) pool.push_back(u);
  for (const Obj& o : bounded_objects(c, pool, 2, 12, false)) {
    const auto coords = c.hom_coords(o, {b});
    for (long code = 1; code < (1L << coords.size()); ++code) {
      ObjMorphism p = c.zero(o, {b});
      for (size_t k = 0; k < coords.size(); ++k) p.coef(coords[k].first, coords[k].second) = (code >> k) & 1;
      const ObjSub k = c.kernel(p);
      if (c.dim(o) - c.dim(k.object) == c.dim(b) && kernel.contains(k.object)) return true;
    }
  }
  return false;
}

bool brute_inflation_exists(const Category& c, int b, const Subcategory& cover, const Subcategory& cok) {
  std::vector<int> pool;
  for (int t : cover.ids())
    if (c.hom(b, t)) pool.push_back(t);
  for (const Obj& o : bounded_objects(c, pool, 2, 12, false)) {
    const auto coords = c.hom_coords({b}, o);
    for (long code = 1; code < (1L << coords.size()); ++code) {
      ObjMorphism i = c.zero({b}, o);
      for (size_t k = 0; k < coords.size(); ++k) i.coef(coords[k].first, coords[k].second) = (code >> k) & 1;
      const ObjQuot q = c.cokernel(i);
      if (c.dim(o) - c.dim(q.object) == c.dim(b) && cok.contains(q.object)) return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("set operations") {
  std::mt19937_64 rng(1);
  const Subcategory none = zero_class(cat());
  for (int trial = 0; trial < 50; ++trial) {
    const Subcategory x = random_class(rng), y = random_class(rng), z = random_class(rng);
    CHECK(oplus(x, none) == x);
    CHECK(oplus(x, x) == x);
    CHECK(oplus(x, y) == oplus(y, x));
    CHECK(oplus(oplus(x, y), z) == oplus(x, oplus(y, z)));
    CHECK(subset(inter(x, y), x));
    CHECK(oplus(inter(x, y), minus(x, y)) == x);
    // perps are antitone
    const Subcategory xy = oplus(x, y);
    CHECK(subset(right_perp(cat(), xy), right_perp(cat(), x)));
    CHECK(subset(left_perp(cat(), xy), left_perp(cat(), x)));
  }
  CHECK(oplus(Subcategory(cat(), {I(3, 4)}), Subcategory(cat(), {I(4, 4)})).ids() ==
        std::vector<int>{I(3, 4), I(4, 4)});
}

TEST_CASE("perpendicular classes") {
  CHECK(right_perp(cat(), zero_class(cat())) == everything(cat()));
  CHECK(right_perp(cat(), projectives(cat())) == everything(cat()));
  CHECK_FALSE(right_perp(cat(), Subcategory(cat(), {I(4, 5)})).contains(I(3, 3)));
  CHECK(left_perp(cat(), injectives(cat())) == everything(cat()));
}

TEST_CASE("star membership") {
  const Category& c = cat();
  const Subcategory x = Subcategory(c, {I(3, 3)}), y = Subcategory(c, {I(4, 5)});
  CHECK(star_member(c, {I(3, 5)}, x, y, {}).holds());
  const Verdict v = star_member(c, {I(3, 5)}, y, x, {});
  CHECK(v.fails());
  CHECK(v.certificate.at("submodules_checked") == 4);
  CHECK(star_member(c, {I(3, 4)}, Subcategory(c, {I(3, 4)}), zero_class(c), {}).holds());
  CHECK_THROWS_AS(star_member(c, {I(3, 5), I(3, 5)}, y, x, {1, 4}), EnumerationRefused);
}

TEST_CASE("star membership agrees with extension middles") {
  const Category& c = cat();
  for (int x = 0; x < c.size(); ++x)
    for (int y = 0; y < c.size(); ++y)
      for (const Obj& mid : c.extensions(x, y))
        CHECK(star_member(c, mid, Subcategory(c, {y}), Subcategory(c, {x}), {}).holds());
}

TEST_CASE("subcat_in_star") {
  const PairsSpec& e1 = spec("ex1");
  const Category& c = e1.category;
  CHECK(subcat_in_star(c, e1.U, e1.U, e1.V, {}).holds());
  const Verdict a = subcat_in_star(c, e1.U, e1.S, e1.T, {});
  CHECK(a.fails());
  const Verdict b = subcat_in_star(c, e1.T, e1.U, e1.V, {});
  CHECK(b.fails());
  MESSAGE("U not in S*T at " << a.certificate.at("offending") << ", T not in U*V at " << b.certificate.at("offending"));
}

TEST_CASE("approximation searches") {
  const Category& c = cat();
  const Subcategory all = everything(c);
  for (int p : c.projectives()) CHECK(find_left_approx(c, p, all, all, {}).holds());
  for (int q : c.injectives()) CHECK(find_right_approx(c, q, all, all, {}).holds());
  const PairsSpec& e2 = spec("ex2");
  for (int b = 0; b < c.size(); ++b) {
    CHECK(find_left_approx(c, b, e2.U, e2.V, {}).holds());
    CHECK(find_right_approx(c, b, e2.V, e2.U, {}).holds());
    CHECK(find_left_approx(c, b, e2.S, e2.T, {}).holds());
    CHECK(find_right_approx(c, b, e2.T, e2.S, {}).holds());
  }
  const Verdict none = find_left_approx(c, I(3, 4), zero_class(c), all, {});
  CHECK(none.unknown());
  CHECK(none.certificate.at("refuted") == true);
  CHECK(find_right_approx(c, I(3, 4), zero_class(c), all, {}).unknown());
}

TEST_CASE("witnessed approximations are valid conflations") {
  const Category& c = cat();
  const PairsSpec& e2 = spec("ex2");
  for (int b = 0; b < c.size(); ++b) {
    const Approximation a = deflation_search(c, b, e2.U, e2.V, {});
    REQUIRE(a.found);
    CHECK(c.validate(a.witness).empty());
    CHECK(e2.U.contains(a.witness.i.dst));
    CHECK(e2.V.contains(a.witness.i.src));
    CHECK(a.witness.p.dst == Obj{b});
  }
}

TEST_CASE("approximation refutation matches exhaustive search") {
  const Category& c = cat();
  std::mt19937_64 rng(12);
  int refuted = 0, found = 0;
  for (int trial = 0; trial < 60; ++trial) {
    Subcategory cover = random_class(rng, 2);
    Subcategory other = right_perp(c, cover);  // orthogonal by construction
    const int b = static_cast<int>(rng() % c.size());
    const Approximation a = deflation_search(c, b, cover, other, {});
    CHECK((a.found || a.refuted));
    CHECK(a.found == brute_deflation_exists(c, b, cover, other));
    if (a.refuted) CHECK(replay_refutation(c, a.detail, cover, other));
    (a.found ? found : refuted)++;

    Subcategory env = random_class(rng, 2);
    Subcategory cok = left_perp(c, env);
    const Approximation d = inflation_search(c, b, env, cok, {});
    CHECK((d.found || d.refuted));
    CHECK(d.found == brute_inflation_exists(c, b, env, cok));
    if (d.refuted) CHECK(replay_refutation(c, d.detail, env, cok));
  }
  CHECK(refuted > 0);
  CHECK(found > 0);
}

TEST_CASE("bounded objects are ordered by dimension then lexicographically") {
  const Category& c = cat();
  const auto objs = bounded_objects(c, {I(3, 4), I(4, 4), I(3, 5)}, 2, 24);
  CHECK(objs.size() == 27);
  CHECK(objs.front().empty());
  for (size_t k = 1; k < objs.size(); ++k) {
    const int a = c.dim(objs[k - 1]), b = c.dim(objs[k]);
    CHECK((a < b || (a == b && objs[k - 1] < objs[k])));
  }
  CHECK(bounded_objects(c, {I(3, 5)}, 3, 7).size() == 3);
}

TEST_CASE("pairs files and expressions") {
  const PairsSpec& e3 = spec("ex3");
  CHECK(e3.U == e3.T);
  const Category& c = e3.category;
  std::map<std::string, Subcategory> env = {{"X", Subcategory(c, {I(4, 5)})}};
  CHECK(parse_class(c, "rperp(X)", env) == right_perp(c, env.at("X")));
  CHECK(parse_class(c, "add(5/4, [3,3], 4)", env).ids() == std::vector<int>{I(3, 3), I(4, 4), I(4, 5)});
  CHECK(parse_class(c, "inter(all, proj)", env) == projectives(c));
  CHECK_THROWS_AS(parse_class(c, "rperp(X", env), ArgumentError);
  CHECK_THROWS_AS(parse_class(c, "frob(X)", env), ArgumentError);
  CHECK_THROWS_AS(parse_class(c, "[1,5]", env), ArgumentError);

  const json canon = canonical_pairs_json(e3);
  const PairsSpec again = load_pairs(canon);
  CHECK(again.S == e3.S);
  CHECK(again.U == e3.U);
  CHECK(canonical_pairs_json(again) == canon);

  json cyclic = {{"category", category_json(c)},
                 {"subcategories", {{"S", "T"}, {"T", "S"}, {"U", "all"}, {"V", "all"}}}};
  CHECK_THROWS_AS(load_pairs(cyclic), ArgumentError);
}
