#include "doctest.h"

#include "cotorsion/codec.hpp"
#include "cotorsion/pairs.hpp"
#include "fixtures.hpp"

using namespace ctl;

namespace {

std::vector<std::string> names(const Category& c, const Subcategory& s) {
  std::vector<std::string> out;
  for (int x : s.ids()) out.push_back(c.name(x));
  return out;
}

std::vector<std::string> expected(const Category& c, const json& list) {
  return names(c, Subcategory(c, obj_from_json(c, list)));
}

struct Loaded {
  const PairsSpec* spec;
  TwinPair tp;
  Verdict verdict;
  HeartClasses h;
};

const Loaded& loaded(const std::string& name) {
  static std::map<std::string, Loaded> cache;
  auto it = cache.find(name);
  if (it == cache.end()) {
    Loaded l;
    l.spec = &spec(name);
    const PairsSpec& p = *l.spec;
    l.verdict = verify_twin(p.category, p.S, p.T, p.U, p.V, {}, &l.tp);
    l.h = compute_hearts(p.category, l.tp, {});
    it = cache.emplace(name, std::move(l)).first;
  }
  return it->second;
}

}  // namespace

TEST_CASE("trivial cotorsion pairs") {
  const Category& c = spec("ex2").category;
  CHECK(verify_cotorsion(c, projectives(c), everything(c), {}).holds());
  CHECK(verify_cotorsion(c, everything(c), injectives(c), {}).holds());
  const Verdict bad = verify_cotorsion(c, everything(c), everything(c), {});
  CHECK(bad.fails());
  CHECK(bad.certificate.at("kind") == "orthogonality");
}

TEST_CASE("fixture twins verify and match the quoted hearts") {
  for (const char* name : {"ex1", "ex2", "ex3"}) {
    const Loaded& l = loaded(name);
    const Category& c = l.spec->category;
    CAPTURE(name);
    CHECK(l.verdict.holds());
    CHECK(l.h.exact());
    CHECK(names(c, l.h.reduced(l.tp)) == expected(c, l.spec->expect.at("heart")));
    if (l.spec->expect.contains("h1"))
      CHECK(names(c, l.h.reduced1()) == expected(c, l.spec->expect.at("h1")));
    MESSAGE(name << " heart " << heart_json(c, l.tp, l.h, false).dump());
  }
}

TEST_CASE("ex3 has W = U = T") {
  const Loaded& l = loaded("ex3");
  CHECK(l.tp.W == l.tp.U);
  CHECK(l.tp.W == l.tp.T);
  const auto notes = l.verdict.certificate.at("notes");
  CHECK(notes.size() == 2);
}

TEST_CASE("degenerate twin") {
  const PairsSpec& p = spec("ex2");
  TwinPair tp;
  CHECK(verify_twin(p.category, p.U, p.V, p.U, p.V, {}, &tp).holds());
  CHECK(tp.W == inter(p.U, p.V));
}

TEST_CASE("corrupted fixture is rejected with a named indecomposable") {
  const PairsSpec& p = spec("ex2");
  const Category& c = p.category;
  std::vector<int> ids = p.V.ids();
  ids.erase(std::find(ids.begin(), ids.end(), c.id({4, 6})));
  const Subcategory V(c, ids, "V");
  TwinPair tp;
  const Verdict v = verify_twin(c, p.S, p.T, p.U, V, {}, &tp);
  CHECK_FALSE(v.holds());
  MESSAGE(v.summary);
  CHECK(v.summary.find('[') != std::string::npos);
}

TEST_CASE("membership queries") {
  const Loaded& l = loaded("ex2");
  const Category& c = l.spec->category;
  for (int w : l.tp.W.ids()) {
    CHECK(membership_bplus(c, w, l.tp, {}).holds());
    CHECK(membership_bminus(c, w, l.tp, {}).holds());
  }
  CHECK(membership_bplus(c, c.id({3, 5}), l.tp, {}).holds());
  CHECK(membership_bminus(c, c.id({3, 5}), l.tp, {}).holds());

  TwinPair zero;
  const Subcategory P = projectives(c), A = everything(c);
  REQUIRE(verify_twin(c, P, A, P, A, {}, &zero).holds());
  const HeartClasses h = compute_hearts(c, zero, {});
  CHECK(h.bminus.members(c.size()) == P);
  CHECK(h.reduced(zero).empty());
  // W = proj here, so a non-projective has no W-cover with kernel in V=all? it does not: W-covers are projective covers
  CHECK(membership_bplus(c, c.id({3, 4}), zero, {}).holds());

  TwinPair nocore;
  const Subcategory Z = zero_class(c);
  verify_twin(c, Z, A, Z, A, {}, &nocore);
  const Verdict u = membership_bplus(c, c.id({3, 4}), nocore, {});
  CHECK(u.unknown());
}

TEST_CASE("heart invariants on every fixture") {
  for (const char* name : {"ex1", "ex2", "ex3"}) {
    const Loaded& l = loaded(name);
    const Category& c = l.spec->category;
    const TwinPair& tp = l.tp;
    CAPTURE(name);
    // H ∩ U = W = H ∩ T
    CHECK(inter(l.h.H, tp.U) == tp.W);
    CHECK(inter(l.h.H, tp.T) == tp.W);
    // V ⊆ T and Ext(S, V) = 0
    CHECK(subset(tp.V, tp.T));
    CHECK_FALSE(ext_obstruction(c, tp.S, tp.V));
    CHECK(subset(tp.V, right_perp(c, tp.U)));
    CHECK(subset(tp.U, left_perp(c, tp.V)));
    // every map from U into a B+ object factors through its W-cover
    for (int a = 0; a < c.size(); ++a) {
      const Approximation& w = l.h.bplus.witness[a];
      if (!w.found) continue;
      for (int u : tp.U.ids()) {
        if (!c.hom(u, a)) continue;
        CHECK(c.lift(c.canonical(u, a), w.witness.p).has_value());
      }
    }
    // dually every map from a B- object into T extends along its W-envelope
    for (int a = 0; a < c.size(); ++a) {
      const Approximation& w = l.h.bminus.witness[a];
      if (!w.found) continue;
      for (int t : tp.T.ids()) {
        if (!c.hom(a, t)) continue;
        CHECK(c.extend(c.canonical(a, t), w.witness.i).has_value());
      }
    }
  }
}
