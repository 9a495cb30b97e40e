#include "cotorsion/subcat.hpp"

#include <algorithm>

#include "cotorsion/codec.hpp"
#include "cotorsion/errors.hpp"

namespace ctl {

Subcategory::Subcategory(int universe, std::vector<int> ids, std::string name, std::string provenance)
    : mask_(universe, false), name_(std::move(name)), provenance_(std::move(provenance)) {
  for (int x : ids) {
    if (x < 0 || x >= universe) throw ArgumentError("subcategory id out of range");
    mask_[x] = true;
  }
  for (int x = 0; x < universe; ++x)
    if (mask_[x]) ids_.push_back(x);
}

Subcategory::Subcategory(const Category& c, std::vector<int> ids, std::string name, std::string provenance)
    : Subcategory(c.size(), std::move(ids), std::move(name), std::move(provenance)) {}

bool Subcategory::contains(const Obj& o) const {
  return std::all_of(o.begin(), o.end(), [&](int x) { return contains(x); });
}

Obj Subcategory::outside(const Obj& o) const {
  Obj out;
  for (int x : o)
    if (!contains(x)) out.push_back(x);
  return out;
}

Subcategory& Subcategory::named(std::string name) {
  name_ = std::move(name);
  return *this;
}

Subcategory everything(const Category& c) {
  std::vector<int> ids(c.size());
  for (int x = 0; x < c.size(); ++x) ids[x] = x;
  return Subcategory(c, ids, "all");
}

Subcategory zero_class(const Category& c) { return Subcategory(c, {}, "zero"); }
Subcategory projectives(const Category& c) { return Subcategory(c, c.projectives(), "proj"); }
Subcategory injectives(const Category& c) { return Subcategory(c, c.injectives(), "inj"); }

namespace {

void same_universe(const Subcategory& x, const Subcategory& y) {
  if (x.universe() != y.universe()) throw ArgumentError("subcategories over different categories");
}

template <class Keep>
Subcategory filtered(int universe, Keep keep, std::string name) {
  std::vector<int> ids;
  for (int z = 0; z < universe; ++z)
    if (keep(z)) ids.push_back(z);
  return Subcategory(universe, ids, std::move(name));
}

}  // namespace

Subcategory oplus(const Subcategory& x, const Subcategory& y) {
  same_universe(x, y);
  return filtered(x.universe(), [&](int z) { return x.contains(z) || y.contains(z); },
                  "oplus(" + x.name() + "," + y.name() + ")");
}

Subcategory inter(const Subcategory& x, const Subcategory& y) {
  same_universe(x, y);
  return filtered(x.universe(), [&](int z) { return x.contains(z) && y.contains(z); },
                  "inter(" + x.name() + "," + y.name() + ")");
}

Subcategory minus(const Subcategory& x, const Subcategory& y) {
  same_universe(x, y);
  return filtered(x.universe(), [&](int z) { return x.contains(z) && !y.contains(z); },
                  "minus(" + x.name() + "," + y.name() + ")");
}

bool subset(const Subcategory& x, const Subcategory& y) {
  same_universe(x, y);
  return std::all_of(x.ids().begin(), x.ids().end(), [&](int z) { return y.contains(z); });
}

Subcategory right_perp(const Category& c, const Subcategory& x) {
  return filtered(c.size(),
                  [&](int y) {
                    return std::none_of(x.ids().begin(), x.ids().end(), [&](int u) { return c.ext(u, y) != 0; });
                  },
                  "rperp(" + x.name() + ")");
}

Subcategory left_perp(const Category& c, const Subcategory& x) {
  return filtered(c.size(),
                  [&](int y) {
                    return std::none_of(x.ids().begin(), x.ids().end(), [&](int v) { return c.ext(y, v) != 0; });
                  },
                  "lperp(" + x.name() + ")");
}

std::optional<std::pair<int, int>> ext_obstruction(const Category& c, const Subcategory& x, const Subcategory& y) {
  for (int u : x.ids())
    for (int v : y.ids())
      if (c.ext(u, v)) return std::make_pair(u, v);
  return std::nullopt;
}

std::vector<Obj> bounded_objects(const Category& c, const std::vector<int>& pool, int mult, int dim_cap,
                                 bool include_zero) {
  constexpr size_t limit = 2'000'000;
  std::vector<int> ids = pool;
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::vector<Obj> out;
  Obj cur;
  std::function<void(size_t, int)> rec = [&](size_t k, int budget) {
    if (k == ids.size()) {
      if (!cur.empty() || include_zero) {
        if (out.size() >= limit) throw EnumerationRefused("object enumeration refused", dim_cap);
        out.push_back(cur);
      }
      return;
    }
    rec(k + 1, budget);
    int pushed = 0;
    for (int m = 1; m <= mult && c.dim(ids[k]) * m <= budget; ++m) {
      cur.push_back(ids[k]);
      ++pushed;
      rec(k + 1, budget - c.dim(ids[k]) * m);
    }
    cur.resize(cur.size() - pushed);
  };
  rec(0, dim_cap);
  std::stable_sort(out.begin(), out.end(), [&](const Obj& a, const Obj& b) {
    const int da = c.dim(a), db = c.dim(b);
    if (da != db) return da < db;
    return a < b;
  });
  return out;
}

namespace {

ObjMorphism ones_row(const Category& c, const Obj& src, int b) {
  ObjMorphism f = c.zero(src, {b});
  for (size_t j = 0; j < src.size(); ++j) f.coef(0, static_cast<int>(j)) = 1;
  return f;
}

ObjMorphism ones_column(const Category& c, int b, const Obj& dst) {
  ObjMorphism f = c.zero({b}, dst);
  for (size_t i = 0; i < dst.size(); ++i) f.coef(static_cast<int>(i), 0) = 1;
  return f;
}

// Tries C -> b with all-ones coefficients; fills the witness on success.
std::optional<std::string> try_deflation(const Category& c, int b, const Obj& cover, const Subcategory& kernel,
                                         ObjSES& out) {
  const ObjMorphism p = ones_row(c, cover, b);
  const ObjSub k = c.kernel(p);
  if (c.dim(cover) - c.dim(k.object) != c.dim(b)) return "not surjective";
  const Obj bad = kernel.outside(k.object);
  if (!bad.empty()) return "kernel summand " + c.name(bad.front()) + " outside the kernel class";
  out = {k.inclusion, p};
  return std::nullopt;
}

std::optional<std::string> try_inflation(const Category& c, int b, const Obj& cover, const Subcategory& cokernel,
                                         ObjSES& out) {
  const ObjMorphism i = ones_column(c, b, cover);
  const ObjQuot q = c.cokernel(i);
  if (c.dim(cover) - c.dim(q.object) != c.dim(b)) return "not injective";
  const Obj bad = cokernel.outside(q.object);
  if (!bad.empty()) return "cokernel summand " + c.name(bad.front()) + " outside the cokernel class";
  out = {i, q.projection};
  return std::nullopt;
}

Obj minimal_cover(const Category& c, int b, const Subcategory& cover) {
  std::vector<int> cand;
  for (int u : cover.ids())
    if (c.hom(u, b)) cand.push_back(u);
  Obj out;
  for (int u : cand) {
    const bool redundant =
        std::any_of(cand.begin(), cand.end(), [&](int w) { return w != u && c.composes(u, w, b); });
    if (!redundant) out.push_back(u);
  }
  return out;
}

Obj minimal_envelope(const Category& c, int b, const Subcategory& cover) {
  std::vector<int> cand;
  for (int t : cover.ids())
    if (c.hom(b, t)) cand.push_back(t);
  Obj out;
  for (int t : cand) {
    const bool redundant =
        std::any_of(cand.begin(), cand.end(), [&](int w) { return w != t && c.composes(b, w, t); });
    if (!redundant) out.push_back(t);
  }
  return out;
}

Approximation search(const Category& c, int b, const Subcategory& cover, const Subcategory& other,
                     const SearchBounds& bounds, bool deflation) {
  Approximation res;
  const Obj minimal = deflation ? minimal_cover(c, b, cover) : minimal_envelope(c, b, cover);
  const bool orthogonal = deflation ? !ext_obstruction(c, cover, other) : !ext_obstruction(c, other, cover);
  auto attempt = [&](const Obj& o, ObjSES& w) {
    return deflation ? try_deflation(c, b, o, other, w) : try_inflation(c, b, o, other, w);
  };

  std::optional<std::string> why = "exceeds dim cap";
  if (c.dim(minimal) <= bounds.dim_cap) {
    ObjSES w;
    why = attempt(minimal, w);
    if (!why) {
      res.found = true;
      res.witness = w;
      return res;
    }
  }
  res.detail = {{"kind", deflation ? "deflation" : "inflation"},
                {"object", c.name(b)},
                {"minimal", obj_json(c, minimal)},
                {"reason", *why}};
  if (orthogonal && c.dim(minimal) <= bounds.dim_cap) {
    res.refuted = true;
    return res;
  }

  // Without Ext-orthogonality a non-minimal object might still work.
  std::vector<int> pool;
  for (int u : cover.ids())
    if (deflation ? c.hom(u, b) : c.hom(b, u)) pool.push_back(u);
  int tried = 0;
  for (const Obj& o : bounded_objects(c, pool, bounds.mult, bounds.dim_cap, false)) {
    ObjSES w;
    ++tried;
    if (!attempt(o, w)) {
      res.found = true;
      res.witness = w;
      res.detail = json::object();
      return res;
    }
  }
  res.detail["searched"] = tried;
  return res;
}

}  // namespace

Approximation deflation_search(const Category& c, int b, const Subcategory& cover, const Subcategory& kernel,
                               const SearchBounds& bounds) {
  return search(c, b, cover, kernel, bounds, true);
}

Approximation inflation_search(const Category& c, int b, const Subcategory& cover, const Subcategory& cokernel,
                               const SearchBounds& bounds) {
  return search(c, b, cover, cokernel, bounds, false);
}

bool replay_refutation(const Category& c, const json& detail, const Subcategory& cover, const Subcategory& other) {
  const bool deflation = detail.at("kind") == "deflation";
  const int b = c.id(Interval::parse(detail.at("object").get<std::string>()));
  const Obj claimed = obj_from_json(c, detail.at("minimal"));
  const Obj minimal = deflation ? minimal_cover(c, b, cover) : minimal_envelope(c, b, cover);
  if (claimed != minimal) return false;
  const bool orthogonal = deflation ? !ext_obstruction(c, cover, other) : !ext_obstruction(c, other, cover);
  if (!orthogonal) return false;
  ObjSES w;
  const auto why = deflation ? try_deflation(c, b, minimal, other, w) : try_inflation(c, b, minimal, other, w);
  return why.has_value();
}

namespace {

Verdict approx_verdict(const Category& c, const Approximation& a, const SearchBounds& bounds, const std::string& what) {
  if (a.found)
    return Verdict::make_holds("search", what + " found", {{"conflation", ses_json(c, a.witness)}}, bounds);
  json cert = a.detail;
  cert["refuted"] = a.refuted;
  return Verdict::make_unknown(what + (a.refuted ? " does not exist" : " not found within bounds"), cert, bounds);
}

}  // namespace

Verdict find_left_approx(const Category& c, int b, const Subcategory& u, const Subcategory& v,
                         const SearchBounds& bounds) {
  return approx_verdict(c, deflation_search(c, b, u, v, bounds), bounds, "deflation onto " + c.name(b));
}

Verdict find_right_approx(const Category& c, int b, const Subcategory& t, const Subcategory& s,
                          const SearchBounds& bounds) {
  return approx_verdict(c, inflation_search(c, b, t, s, bounds), bounds, "inflation of " + c.name(b));
}

Verdict star_member(const Category& c, const Obj& z, const Subcategory& x, const Subcategory& y,
                    const SearchBounds& bounds) {
  const Obj zs = z;
  if (x.contains(zs)) {
    const ObjSES s{c.identity(zs), c.zero(zs, {})};
    return Verdict::make_holds("submodules", "z lies in the first class", {{"conflation", ses_json(c, s)}}, bounds);
  }
  if (y.contains(zs)) {
    const ObjSES s{c.zero({}, zs), c.identity(zs)};
    return Verdict::make_holds("submodules", "z lies in the second class", {{"conflation", ses_json(c, s)}}, bounds);
  }
  const Module m = c.realize(zs);
  std::optional<ObjSES> found;
  long checked = 0;
  for_each_submodule(m, bounds.dim_cap, [&](const SubObject& sub) {
    ++checked;
    auto [obj, iso] = c.identify_with_iso(sub.object);
    if (!x.contains(obj)) return true;
    const ObjMorphism incl = c.canonical_form(obj, zs, ctl::compose(sub.inclusion, iso));
    const ObjQuot q = c.cokernel(incl);
    if (!y.contains(q.object)) return true;
    found = ObjSES{incl, q.projection};
    return false;
  });
  if (found)
    return Verdict::make_holds("submodules", "conflation found", {{"conflation", ses_json(c, *found)}}, bounds);
  return Verdict::make_fails(c.name(zs) + " admits no such conflation",
                             {{"z", obj_json(c, zs)},
                              {"first", ids_json(c, x.ids())},
                              {"second", ids_json(c, y.ids())},
                              {"submodules_checked", checked}},
                             bounds);
}

Verdict subcat_in_star(const Category& c, const Subcategory& a, const Subcategory& x, const Subcategory& y,
                       const SearchBounds& bounds) {
  json witnesses = json::object();
  for (int z : a.ids()) {
    Verdict v = star_member(c, {z}, x, y, bounds);
    if (v.fails()) {
      json cert = v.certificate;
      cert["offending"] = c.name(z);
      return Verdict::make_fails(c.name(z) + " is not in the extension class", cert, bounds);
    }
    witnesses[c.name(z)] = v.certificate.at("conflation");
  }
  return Verdict::make_holds("indecomposable check", "every indecomposable has a conflation",
                             {{"conflations", witnesses}}, bounds);
}

}  // namespace ctl
