#include "cotorsion/serialcat.hpp"

#include <algorithm>

#include "cotorsion/errors.hpp"

namespace ctl {

Obj sorted(Obj o) {
  std::sort(o.begin(), o.end());
  return o;
}

Obj concat(const Obj& a, const Obj& b) {
  Obj out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Category::Category(Presentation pres, Field field) : pres_(std::move(pres)), field_(std::move(field)) {
  for (int a = 1; a <= pres_.n(); ++a)
    for (int b = a; b <= pres_.n(); ++b)
      if (pres_.admissible({a, b})) ind_.push_back({a, b});
  const int N = size();
  hom_.assign(N * N, 0);
  ext_.assign(N * N, 0);
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y) {
      const Interval& X = ind_[x];
      const Interval& Y = ind_[y];
      hom_[x * N + y] = (X.lo <= Y.lo && Y.lo <= X.hi && X.hi <= Y.hi) ? 1 : 0;
    }
  for (int x = 0; x < N; ++x) {
    const auto om = syzygy(x);
    if (!om) continue;
    const int p = projective_cover(x);
    for (int y = 0; y < N; ++y) {
      if (!hom(*om, y)) continue;
      const bool hit = hom(p, y) && composes(*om, p, y);
      ext_[x * N + y] = hit ? 0 : 1;
    }
  }
}

std::optional<int> Category::find(const Interval& iv) const {
  auto it = std::lower_bound(ind_.begin(), ind_.end(), iv);
  if (it == ind_.end() || *it != iv) return std::nullopt;
  return static_cast<int>(it - ind_.begin());
}

int Category::id(const Interval& iv) const {
  auto f = find(iv);
  if (!f) throw ArgumentError("interval " + iv.str() + " is not an indecomposable of this algebra");
  return *f;
}

int Category::dim(const Obj& o) const {
  int d = 0;
  for (int x : o) d += dim(x);
  return d;
}

std::string Category::name(const Obj& o) const {
  if (o.empty()) return "0";
  std::string out;
  for (size_t k = 0; k < o.size(); ++k) out += (k ? "+" : "") + name(o[k]);
  return out;
}

int Category::hom(const Obj& a, const Obj& b) const {
  int t = 0;
  for (int x : a)
    for (int y : b) t += hom(x, y);
  return t;
}

int Category::ext(const Obj& a, const Obj& b) const {
  int t = 0;
  for (int x : a)
    for (int y : b) t += ext(x, y);
  return t;
}

bool Category::composes(int x, int y, int z) const {
  if (!hom(x, y) || !hom(y, z)) return false;
  return ind_[z].lo <= ind_[x].hi;
}

int Category::projective_cover(int x) const {
  const int b = ind_[x].hi;
  for (int a = 1; a <= b; ++a)
    if (pres_.admissible({a, b})) return id({a, b});
  throw InternalConsistencyError("no projective cover");
}

int Category::injective_envelope(int x) const {
  const int a = ind_[x].lo;
  for (int b = n(); b >= a; --b)
    if (pres_.admissible({a, b})) return id({a, b});
  throw InternalConsistencyError("no injective envelope");
}

bool Category::is_projective(int x) const { return projective_cover(x) == x; }
bool Category::is_injective(int x) const { return injective_envelope(x) == x; }

std::optional<int> Category::syzygy(int x) const {
  const Interval p = ind_[projective_cover(x)];
  if (p.lo == ind_[x].lo) return std::nullopt;
  return id({p.lo, ind_[x].lo - 1});
}

std::optional<int> Category::cosyzygy(int x) const {
  const Interval i = ind_[injective_envelope(x)];
  if (i.hi == ind_[x].hi) return std::nullopt;
  return id({ind_[x].hi + 1, i.hi});
}

std::vector<int> Category::projectives() const {
  std::vector<int> out;
  for (int x = 0; x < size(); ++x)
    if (is_projective(x)) out.push_back(x);
  return out;
}

std::vector<int> Category::injectives() const {
  std::vector<int> out;
  for (int x = 0; x < size(); ++x)
    if (is_injective(x)) out.push_back(x);
  return out;
}

namespace {

// slot[s][v]: row of summand s at vertex v in the realization, or -1.
std::vector<std::vector<int>> slots(const Category& c, const Obj& o) {
  std::vector<int> next(c.n() + 1, 0);
  std::vector<std::vector<int>> out(o.size(), std::vector<int>(c.n() + 1, -1));
  for (size_t s = 0; s < o.size(); ++s) {
    const Interval& iv = c.interval(o[s]);
    for (int v = iv.lo; v <= iv.hi; ++v) out[s][v] = next[v]++;
  }
  return out;
}

}  // namespace

Module Category::realize(const Obj& o) const {
  std::vector<Interval> ivs;
  for (int x : o) ivs.push_back(ind_.at(x));
  return direct_sum_of_intervals(pres_, field_, ivs);
}

Morphism Category::realize(const ObjMorphism& f) const {
  validate(f);
  const Module src = realize(f.src), dst = realize(f.dst);
  const auto ss = slots(*this, f.src), ds = slots(*this, f.dst);
  std::vector<Matrix> comps;
  for (int v = 1; v <= n(); ++v) comps.emplace_back(dst.dim(v), src.dim(v));
  for (size_t i = 0; i < f.dst.size(); ++i)
    for (size_t j = 0; j < f.src.size(); ++j) {
      const int c = f.coef(static_cast<int>(i), static_cast<int>(j));
      if (!c) continue;
      for (int v = ind_[f.dst[i]].lo; v <= ind_[f.src[j]].hi; ++v) comps[v - 1](ds[i][v], ss[j][v]) = c;
    }
  return Morphism(src, dst, std::move(comps));
}

ObjMorphism Category::canonical_form(const Obj& src, const Obj& dst, const Morphism& f) const {
  const auto ss = slots(*this, src), ds = slots(*this, dst);
  ObjMorphism out{src, dst, Matrix(static_cast<int>(dst.size()), static_cast<int>(src.size()))};
  for (size_t i = 0; i < dst.size(); ++i)
    for (size_t j = 0; j < src.size(); ++j) {
      if (!hom(src[j], dst[i])) continue;
      const int top = ind_[src[j]].hi;
      out.coef(static_cast<int>(i), static_cast<int>(j)) = f.at(top)(ds[i][top], ss[j][top]);
    }
  if (!(realize(out) == f)) throw InternalConsistencyError("morphism is not in canonical form over " + name(src));
  return out;
}

std::pair<Obj, Morphism> Category::identify_with_iso(const Module& m) const {
  DecomposeOptions opts;
  opts.seed = seed_;
  const auto pieces = decompose(m, opts);
  Obj o;
  for (const Summand& s : pieces) o.push_back(id(s.interval));
  return {o, assemble_iso(m, pieces)};
}

Obj Category::identify(const Module& m) const { return identify_with_iso(m).first; }

ObjMorphism Category::zero(const Obj& src, const Obj& dst) const {
  return {src, dst, Matrix(static_cast<int>(dst.size()), static_cast<int>(src.size()))};
}

ObjMorphism Category::identity(const Obj& o) const {
  return {o, o, Matrix::identity(static_cast<int>(o.size()))};
}

ObjMorphism Category::canonical(int x, int y) const {
  if (!hom(x, y)) throw ArgumentError("no nonzero map " + name(x) + " -> " + name(y));
  return {{x}, {y}, Matrix(1, 1, {1})};
}

void Category::validate(const ObjMorphism& f) const {
  if (f.coef.rows() != static_cast<int>(f.dst.size()) || f.coef.cols() != static_cast<int>(f.src.size()))
    throw ArgumentError("coefficient matrix shape does not match the objects");
  for (int x : f.src)
    if (x < 0 || x >= size()) throw ArgumentError("unknown indecomposable id");
  for (int x : f.dst)
    if (x < 0 || x >= size()) throw ArgumentError("unknown indecomposable id");
  for (size_t i = 0; i < f.dst.size(); ++i)
    for (size_t j = 0; j < f.src.size(); ++j) {
      const int c = f.coef(static_cast<int>(i), static_cast<int>(j));
      if (c < 0 || c >= field_.p()) throw ArgumentError("coefficient outside F_p");
      if (c && !hom(f.src[j], f.dst[i]))
        throw ArgumentError("nonzero coefficient on " + name(f.src[j]) + " -> " + name(f.dst[i]) +
                            ", where Hom vanishes");
    }
}

ObjMorphism Category::compose(const ObjMorphism& g, const ObjMorphism& f) const {
  if (f.dst != g.src) throw ArgumentError("compose: endpoint mismatch");
  ObjMorphism out = zero(f.src, g.dst);
  for (size_t k = 0; k < g.dst.size(); ++k)
    for (size_t j = 0; j < f.src.size(); ++j) {
      int acc = 0;
      for (size_t i = 0; i < f.dst.size(); ++i) {
        const int a = g.coef(static_cast<int>(k), static_cast<int>(i));
        const int b = f.coef(static_cast<int>(i), static_cast<int>(j));
        if (a && b && composes(f.src[j], f.dst[i], g.dst[k])) acc = field_.add(acc, field_.mul(a, b));
      }
      out.coef(static_cast<int>(k), static_cast<int>(j)) = acc;
    }
  return out;
}

ObjMorphism Category::add(const ObjMorphism& f, const ObjMorphism& g) const {
  if (f.src != g.src || f.dst != g.dst) throw ArgumentError("add: endpoint mismatch");
  return {f.src, f.dst, ctl::add(field_, f.coef, g.coef)};
}

ObjMorphism Category::scale(int s, const ObjMorphism& f) const {
  return {f.src, f.dst, ctl::scale(field_, s, f.coef)};
}

ObjMorphism Category::row(const ObjMorphism& f, const ObjMorphism& g) const {
  if (f.dst != g.dst) throw ArgumentError("row: targets differ");
  return {concat(f.src, g.src), f.dst, hstack(f.coef, g.coef)};
}

ObjMorphism Category::column(const ObjMorphism& f, const ObjMorphism& g) const {
  if (f.src != g.src) throw ArgumentError("column: sources differ");
  return {f.src, concat(f.dst, g.dst), vstack(f.coef, g.coef)};
}

ObjMorphism Category::diag(const ObjMorphism& f, const ObjMorphism& g) const {
  return {concat(f.src, g.src), concat(f.dst, g.dst), block_diag(f.coef, g.coef)};
}

std::vector<std::pair<int, int>> Category::hom_coords(const Obj& src, const Obj& dst) const {
  std::vector<std::pair<int, int>> out;
  for (size_t i = 0; i < dst.size(); ++i)
    for (size_t j = 0; j < src.size(); ++j)
      if (hom(src[j], dst[i])) out.emplace_back(static_cast<int>(i), static_cast<int>(j));
  return out;
}

bool Category::is_iso(const ObjMorphism& f) const { return realize(f).is_iso(); }
bool Category::is_injective(const ObjMorphism& f) const { return realize(f).is_injective(); }
bool Category::is_surjective(const ObjMorphism& f) const { return realize(f).is_surjective(); }

std::optional<ObjMorphism> Category::lift(const ObjMorphism& f, const ObjMorphism& g) const {
  if (f.dst != g.dst) throw ArgumentError("lift: targets differ");
  const Obj& X = f.src;
  const Obj& Y = g.src;
  const Obj& Z = f.dst;
  const auto unknowns = hom_coords(X, Y);
  const auto eqs = hom_coords(X, Z);
  Matrix sys(static_cast<int>(eqs.size()), static_cast<int>(unknowns.size()));
  Matrix rhs(static_cast<int>(eqs.size()), 1);
  for (size_t e = 0; e < eqs.size(); ++e) {
    const auto [k, j] = eqs[e];
    rhs(static_cast<int>(e), 0) = f.coef(k, j);
    for (size_t u = 0; u < unknowns.size(); ++u) {
      const auto [i, jj] = unknowns[u];
      if (jj != j) continue;
      if (g.coef(k, i) && composes(X[j], Y[i], Z[k])) sys(static_cast<int>(e), static_cast<int>(u)) = g.coef(k, i);
    }
  }
  auto sol = solve(field_, sys, rhs);
  if (!sol) return std::nullopt;
  ObjMorphism h = zero(X, Y);
  for (size_t u = 0; u < unknowns.size(); ++u) h.coef(unknowns[u].first, unknowns[u].second) = (*sol)(static_cast<int>(u), 0);
  return h;
}

std::optional<ObjMorphism> Category::extend(const ObjMorphism& f, const ObjMorphism& g) const {
  if (f.src != g.src) throw ArgumentError("extend: sources differ");
  const Obj& X = f.src;
  const Obj& Y = g.dst;
  const Obj& Z = f.dst;
  const auto unknowns = hom_coords(Y, Z);
  const auto eqs = hom_coords(X, Z);
  Matrix sys(static_cast<int>(eqs.size()), static_cast<int>(unknowns.size()));
  Matrix rhs(static_cast<int>(eqs.size()), 1);
  for (size_t e = 0; e < eqs.size(); ++e) {
    const auto [k, j] = eqs[e];
    rhs(static_cast<int>(e), 0) = f.coef(k, j);
    for (size_t u = 0; u < unknowns.size(); ++u) {
      const auto [kk, i] = unknowns[u];
      if (kk != k) continue;
      if (g.coef(i, j) && composes(X[j], Y[i], Z[k])) sys(static_cast<int>(e), static_cast<int>(u)) = g.coef(i, j);
    }
  }
  auto sol = solve(field_, sys, rhs);
  if (!sol) return std::nullopt;
  ObjMorphism h = zero(Y, Z);
  for (size_t u = 0; u < unknowns.size(); ++u) h.coef(unknowns[u].first, unknowns[u].second) = (*sol)(static_cast<int>(u), 0);
  return h;
}

ObjSub Category::kernel(const ObjMorphism& f) const {
  const SubObject k = ctl::kernel(realize(f));
  auto [obj, iso] = identify_with_iso(k.object);
  ObjMorphism incl = canonical_form(obj, f.src, ctl::compose(k.inclusion, iso));
  return {std::move(obj), std::move(incl)};
}

ObjQuot Category::cokernel(const ObjMorphism& f) const {
  const QuotientObject q = ctl::cokernel(realize(f));
  auto [obj, iso] = identify_with_iso(q.object);
  ObjMorphism proj = canonical_form(f.dst, obj, ctl::compose(ctl::inverse(iso), q.projection));
  return {std::move(obj), std::move(proj)};
}

ObjMorphism Category::descend(const ObjQuot& q, const ObjMorphism& f) const {
  auto h = extend(f, q.projection);
  if (!h) throw ArgumentError("descend: map does not vanish on the kernel of the projection");
  return *h;
}

ObjMorphism Category::restrict_into(const ObjSub& k, const ObjMorphism& f) const {
  auto h = lift(f, k.inclusion);
  if (!h) throw ArgumentError("restrict_into: map does not land in the subobject");
  return *h;
}

std::string Category::validate(const ObjSES& s) const {
  if (s.i.dst != s.p.src) return "middle terms differ";
  return validate_ses({realize(s.i), realize(s.p)});
}

Category::Presentation1 Category::projective_presentation(const Obj& c) const {
  Presentation1 out;
  std::vector<int> omega_of;  // summand index -> omega index or -1
  for (int x : c) {
    out.cover.push_back(projective_cover(x));
    if (auto om = syzygy(x)) {
      omega_of.push_back(static_cast<int>(out.omega.size()));
      out.omega.push_back(*om);
    } else {
      omega_of.push_back(-1);
    }
  }
  out.incl = zero(out.omega, out.cover);
  for (size_t j = 0; j < c.size(); ++j)
    if (omega_of[j] >= 0) out.incl.coef(static_cast<int>(j), omega_of[j]) = 1;
  out.proj = {out.cover, c, Matrix::identity(static_cast<int>(c.size()))};
  return out;
}

std::vector<std::pair<int, int>> Category::ext_coords(const Obj& c, const Obj& a) const {
  int om = 0;
  std::vector<std::pair<int, int>> raw;
  for (size_t j = 0; j < c.size(); ++j) {
    if (!syzygy(c[j])) continue;
    for (size_t i = 0; i < a.size(); ++i)
      if (ext(c[j], a[i])) raw.emplace_back(static_cast<int>(i), om);
    ++om;
  }
  // row-major order in the coefficient matrix omega -> a
  std::sort(raw.begin(), raw.end());
  return raw;
}

ObjSES Category::extension(const Obj& c, const Obj& a, const std::vector<int>& coords) const {
  const auto pos = ext_coords(c, a);
  if (coords.size() != pos.size()) throw ArgumentError("extension class has the wrong number of coordinates");
  const Presentation1 pr = projective_presentation(c);
  ObjMorphism phi = zero(pr.omega, a);
  for (size_t k = 0; k < pos.size(); ++k) phi.coef(pos[k].first, pos[k].second) = field_.reduce(coords[k]);
  const ObjMorphism glue = column(pr.incl, neg(phi));  // omega -> cover + a
  const ObjQuot q = cokernel(glue);
  const ObjMorphism i = compose(q.projection, column(zero(a, pr.cover), identity(a)));
  const ObjMorphism p = descend(q, row(pr.proj, zero(a, c)));
  return {i, p};
}

std::vector<Obj> Category::extensions(int x, int y) const {
  std::vector<Obj> out = {sorted({x, y})};
  if (ext(x, y)) {
    Obj mid = extension({x}, {y}, {1}).i.dst;
    if (mid != out.front()) out.push_back(mid);
  }
  return out;
}

std::vector<std::string> Category::validate_tables() const {
  std::vector<std::string> bad;
  for (int x = 0; x < size(); ++x)
    for (int y = 0; y < size(); ++y) {
      const int h = static_cast<int>(hom_space(realize(x), realize(y)).size());
      if (h != hom(x, y)) bad.push_back("hom " + name(x) + " " + name(y));
      // 0 -> Hom(x,y) -> Hom(P,y) -> Hom(Omega,y) -> Ext(x,y) -> 0, with
      // Omega the repcore kernel of the cover.
      const int p = projective_cover(x);
      const Morphism cover = realize(ObjMorphism{{p}, {x}, Matrix(1, 1, {1})});
      const Module omega = ctl::kernel(cover).object;
      const int hp = static_cast<int>(hom_space(realize(p), realize(y)).size());
      const int ho = static_cast<int>(hom_space(omega, realize(y)).size());
      if (ho - hp + h != ext(x, y)) bad.push_back("ext " + name(x) + " " + name(y));
    }
  return bad;
}

std::vector<std::string> census(const Category& c) {
  std::vector<std::string> out;
  for (const Interval& iv : c.indecs()) out.push_back(iv.stacked());
  return out;
}

}  // namespace ctl
