#include "cotorsion/heartcat.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "cotorsion/codec.hpp"
#include "cotorsion/errors.hpp"

namespace ctl {

namespace {

ObjMorphism block(const ObjMorphism& f, int r0, int nr, int c0, int nc) {
  ObjMorphism out{Obj(f.src.begin() + c0, f.src.begin() + c0 + nc), Obj(f.dst.begin() + r0, f.dst.begin() + r0 + nr),
                  Matrix(nr, nc)};
  for (int r = 0; r < nr; ++r)
    for (int k = 0; k < nc; ++k) out.coef(r, k) = f.coef(r0 + r, c0 + k);
  return out;
}

int sz(const Obj& o) { return static_cast<int>(o.size()); }

const Approximation& need(const std::vector<Approximation>& table, const Category& c, int x, const char* what) {
  const Approximation& a = table.at(x);
  if (!a.found) throw WitnessMissing(std::string("no ") + what + " conflation for " + c.name(x));
  return a;
}

ObjSES sum_of(const Category& c, const std::vector<const ObjSES*>& parts) {
  ObjSES out{c.zero({}, {}), c.zero({}, {})};
  for (const ObjSES* p : parts) {
    out.i = c.diag(out.i, p->i);
    out.p = c.diag(out.p, p->p);
  }
  return out;
}

// Calls fn on every nonzero vector of F_p^k, in odometer order.
template <class Fn>
void for_each_class(int p, int k, Fn&& fn) {
  std::vector<int> v(k, 0);
  while (true) {
    int i = 0;
    while (i < k && v[i] == p - 1) v[i++] = 0;
    if (i == k) return;
    ++v[i];
    if (!fn(v)) return;
  }
}

// Too many classes to enumerate at desk scale.
bool too_many(int p, size_t k) {
  double n = 1;
  for (size_t i = 0; i < k; ++i) n *= p;
  return n > class_cap;
}

// Counts one (end, end) pair; false when it has to be skipped.
bool admit(EnumStats* st, int p, size_t k) {
  if (!st) return !too_many(p, k);
  ++st->pairs;
  if (too_many(p, k)) {
    ++st->skipped;
    return false;
  }
  double n = 1;
  for (size_t i = 0; i < k; ++i) n *= p;
  st->classes += static_cast<long>(n) - 1;
  return true;
}

// Index of the summand of c owning each omega position of ext_coords(c, .).
std::vector<int> omega_owner(const Category& c, const Obj& o) {
  std::vector<int> out;
  for (int j = 0; j < sz(o); ++j)
    if (c.syzygy(o[j])) out.push_back(j);
  return out;
}

// Whether a dimension vector is the sum of dimension vectors of intervals
// from a pool. Middle terms of conflations have the summed vector of the
// ends, so this discards (end, end) pairs without building any extension.
// The leftmost nonzero vertex must be the bottom of some summand.
class DimFilter {
 public:
  DimFilter(const Category& c, const std::vector<int>& pool) : c_(c), pool_(pool) {}

  bool realizable(const Obj& a, const Obj& b) {
    std::vector<int> v(c_.n() + 1, 0);
    for (const Obj* o : {&a, &b})
      for (int x : *o)
        for (int k = c_.interval(x).lo; k <= c_.interval(x).hi; ++k) ++v[k];
    return go(v);
  }

 private:
  const Category& c_;
  std::vector<int> pool_;
  std::map<std::vector<int>, bool> memo_;

  bool go(std::vector<int>& v) {
    int i = 1;
    while (i < static_cast<int>(v.size()) && v[i] == 0) ++i;
    if (i == static_cast<int>(v.size())) return true;
    if (auto it = memo_.find(v); it != memo_.end()) return it->second;
    bool ok = false;
    for (int x : pool_) {
      const Interval& iv = c_.interval(x);
      if (iv.lo != i) continue;
      bool fits = true;
      for (int k = iv.lo; k <= iv.hi && fits; ++k) fits = v[k] > 0;
      if (!fits) continue;
      std::vector<int> w = v;
      for (int k = iv.lo; k <= iv.hi; ++k) --w[k];
      if ((ok = go(w))) break;
    }
    memo_.emplace(v, ok);
    return ok;
  }
};

std::string names(const Category& c, const std::vector<int>& ids) {
  std::string s;
  for (int x : ids) s += (s.empty() ? "" : ", ") + c.name(x);
  return s.empty() ? "none" : s;
}

}  // namespace

Heart::Heart(const Category& c, TwinPair tp, HeartClasses h) : c_(&c), tp_(std::move(tp)), h_(std::move(h)) {
  reduced_ = minus(h_.H, tp_.W).ids();
}

std::vector<std::pair<int, int>> Heart::w_ideal(const Obj& a, const Obj& b) const {
  std::vector<std::pair<int, int>> out;
  for (auto [i, j] : c_->hom_coords(a, b))
    for (int w : tp_.W.ids())
      if (c_->composes(a[j], w, b[i])) {
        out.emplace_back(i, j);
        break;
      }
  return out;
}

std::vector<std::pair<int, int>> Heart::quotient_coords(const Obj& a, const Obj& b) const {
  const auto ideal = w_ideal(a, b);
  std::vector<std::pair<int, int>> out;
  for (auto ij : c_->hom_coords(a, b))
    if (std::find(ideal.begin(), ideal.end(), ij) == ideal.end()) out.push_back(ij);
  return out;
}

bool Heart::in_w_ideal(const ObjMorphism& f) const {
  for (auto [i, j] : quotient_coords(f.src, f.dst))
    if (f.coef(i, j)) return false;
  return true;
}

int Heart::quotient_dim(const Obj& a, const Obj& b) const { return static_cast<int>(quotient_coords(a, b).size()); }

ObjMorphism Heart::from_quotient(const Obj& a, const Obj& b, const std::vector<int>& values) const {
  const auto q = quotient_coords(a, b);
  if (values.size() != q.size()) throw ArgumentError("from_quotient: wrong number of values");
  ObjMorphism f = c_->zero(a, b);
  for (size_t k = 0; k < q.size(); ++k) f.coef(q[k].first, q[k].second) = c_->field().reduce(values[k]);
  return f;
}

Matrix Heart::induced(const Obj& x, const Obj& y, const Obj& x2, const Obj& y2,
                      const std::function<ObjMorphism(const ObjMorphism&)>& op) const {
  const auto dom = quotient_coords(x, y);
  const auto cod = quotient_coords(x2, y2);
  Matrix m(static_cast<int>(cod.size()), static_cast<int>(dom.size()));
  for (size_t k = 0; k < dom.size(); ++k) {
    ObjMorphism e = c_->zero(x, y);
    e.coef(dom[k].first, dom[k].second) = 1;
    const ObjMorphism r = op(e);
    for (size_t l = 0; l < cod.size(); ++l) m(static_cast<int>(l), static_cast<int>(k)) = r.coef(cod[l].first, cod[l].second);
  }
  return m;
}

bool Heart::is_w_monic(const ObjMorphism& f) const {
  for (int w : tp_.W.ids())
    for (int j = 0; j < sz(f.src); ++j) {
      if (!c_->hom(f.src[j], w)) continue;
      ObjMorphism g = c_->zero(f.src, {w});
      g.coef(0, j) = 1;
      if (!c_->extend(g, f)) return false;
    }
  return true;
}

bool Heart::is_w_epic(const ObjMorphism& f) const {
  for (int w : tp_.W.ids())
    for (int i = 0; i < sz(f.dst); ++i) {
      if (!c_->hom(w, f.dst[i])) continue;
      ObjMorphism g = c_->zero({w}, f.dst);
      g.coef(i, 0) = 1;
      if (!c_->lift(g, f)) return false;
    }
  return true;
}

ObjSES Heart::bplus_witness(const Obj& o) const {
  std::vector<const ObjSES*> parts;
  for (int x : o) parts.push_back(&need(h_.bplus.witness, *c_, x, "B+").witness);
  return sum_of(*c_, parts);
}

ObjSES Heart::bminus_witness(const Obj& o) const {
  std::vector<const ObjSES*> parts;
  for (int x : o) parts.push_back(&need(h_.bminus.witness, *c_, x, "B-").witness);
  return sum_of(*c_, parts);
}

bool Heart::is_epi_direct(const ObjMorphism& f) const {
  for (int x : reduced_) {
    const Matrix m = induced(f.dst, {x}, f.src, {x}, [&](const ObjMorphism& g) { return c_->compose(g, f); });
    if (rank(c_->field(), m) != m.cols()) return false;
  }
  return true;
}

bool Heart::is_mono_direct(const ObjMorphism& f) const {
  for (int x : reduced_) {
    const Matrix m = induced({x}, f.src, {x}, f.dst, [&](const ObjMorphism& g) { return c_->compose(f, g); });
    if (rank(c_->field(), m) != m.cols()) return false;
  }
  return true;
}

MethodPair Heart::epi_methods(const ObjMorphism& f) const {
  MethodPair out;
  const ObjMorphism wa = bminus_witness(f.src).i;
  out.cone = sorted(c_->cokernel(c_->column(f, wa)).object);
  out.criterion = tp_.U.contains(out.cone);
  out.direct = is_epi_direct(f);
  return out;
}

MethodPair Heart::mono_methods(const ObjMorphism& f) const {
  MethodPair out;
  const ObjMorphism wb = bplus_witness(f.dst).p;
  out.cone = sorted(c_->kernel(c_->row(f, wb)).object);
  out.criterion = tp_.T.contains(out.cone);
  out.direct = is_mono_direct(f);
  return out;
}

bool Heart::is_epi(const ObjMorphism& f) const {
  const MethodPair m = epi_methods(f);
  if (m.criterion != m.direct)
    throw InternalConsistencyError("epi methods disagree on " + c_->name(f.src) + " -> " + c_->name(f.dst) +
                                   " (cone " + c_->name(m.cone) + ")");
  return m.direct;
}

bool Heart::is_mono(const ObjMorphism& f) const {
  const MethodPair m = mono_methods(f);
  if (m.criterion != m.direct)
    throw InternalConsistencyError("mono methods disagree on " + c_->name(f.src) + " -> " + c_->name(f.dst) +
                                   " (kernel " + c_->name(m.cone) + ")");
  return m.direct;
}

HeartMap Heart::kernel(const ObjMorphism& f) const {
  const Category& c = *c_;
  if (!contains(f.src) || !contains(f.dst)) throw ArgumentError("kernel: endpoints must lie in H");
  const ObjMorphism wb = bplus_witness(f.dst).p;
  const ObjSub k = c.kernel(c.row(f, wb));
  const Obj& C = k.object;
  const ObjMorphism g = block(k.inclusion, 0, sz(f.src), 0, sz(C));
  // C -> T1 -> S1, then the U-cover W1 -> T1
  std::vector<const ObjSES*> parts;
  for (int x : C) parts.push_back(&need(tp_.st.right, c, x, "(S,T) right").witness);
  const ObjMorphism ic = sum_of(c, parts).i;
  parts.clear();
  for (int t : ic.dst) parts.push_back(&need(tp_.uv.left, c, t, "(U,V) left").witness);
  const ObjMorphism w1 = sum_of(c, parts).p;
  const ObjSub pb = c.kernel(c.row(ic, c.neg(w1)));
  const ObjMorphism cminus = block(pb.inclusion, 0, sz(C), 0, sz(pb.object));
  HeartMap out{pb.object, c.compose(g, cminus)};
  if (!contains(out.object))
    throw InternalConsistencyError("kernel object " + c.name(out.object) + " is not in H");
  return out;
}

HeartMap Heart::cokernel(const ObjMorphism& f) const {
  const Category& c = *c_;
  if (!contains(f.src) || !contains(f.dst)) throw ArgumentError("cokernel: endpoints must lie in H");
  const ObjMorphism wa = bminus_witness(f.src).i;
  const ObjQuot q = c.cokernel(c.column(f, wa));
  const Obj& C = q.object;
  const ObjMorphism g = block(q.projection, 0, sz(C), 0, sz(f.dst));
  // U1 -> C from (U,V), then U1 -> W1 from (S,T)
  std::vector<const ObjSES*> parts;
  for (int x : C) parts.push_back(&need(tp_.uv.left, c, x, "(U,V) left").witness);
  const ObjMorphism u1 = sum_of(c, parts).p;
  parts.clear();
  for (int u : u1.src) parts.push_back(&need(tp_.st.right, c, u, "(S,T) right").witness);
  const ObjMorphism w1 = sum_of(c, parts).i;
  const ObjQuot po = c.cokernel(c.column(u1, c.neg(w1)));
  const ObjMorphism cplus = block(po.projection, 0, sz(po.object), 0, sz(C));
  HeartMap out{po.object, c.compose(cplus, g)};
  if (!contains(out.object))
    throw InternalConsistencyError("cokernel object " + c.name(out.object) + " is not in H");
  return out;
}

std::string Heart::check_kernel(const ObjMorphism& f, const HeartMap& k) const {
  const Category& c = *c_;
  if (k.map.dst != f.src) return "kernel map does not land in the source";
  if (!in_w_ideal(c.compose(f, k.map))) return "f composed with the kernel map is not in the W-ideal";
  for (int d : reduced_) {
    const Matrix phi = induced({d}, k.object, {d}, f.src, [&](const ObjMorphism& g) { return c.compose(k.map, g); });
    const Matrix psi = induced({d}, f.src, {d}, f.dst, [&](const ObjMorphism& g) { return c.compose(f, g); });
    const int r = rank(c.field(), phi);
    if (r != phi.cols()) return "factorization of probes from " + c.name(d) + " is not unique";
    if (r != psi.cols() - rank(c.field(), psi)) return "some probe from " + c.name(d) + " does not factor";
  }
  return {};
}

std::string Heart::check_cokernel(const ObjMorphism& f, const HeartMap& q) const {
  const Category& c = *c_;
  if (q.map.src != f.dst) return "cokernel map does not start at the target";
  if (!in_w_ideal(c.compose(q.map, f))) return "the cokernel map composed with f is not in the W-ideal";
  for (int d : reduced_) {
    const Matrix phi = induced(q.object, {d}, f.dst, {d}, [&](const ObjMorphism& g) { return c.compose(g, q.map); });
    const Matrix psi = induced(f.dst, {d}, f.src, {d}, [&](const ObjMorphism& g) { return c.compose(g, f); });
    const int r = rank(c.field(), phi);
    if (r != phi.cols()) return "factorization of probes to " + c.name(d) + " is not unique";
    if (r != psi.cols() - rank(c.field(), psi)) return "some probe to " + c.name(d) + " does not factor";
  }
  return {};
}

std::vector<EpiTriangle> Heart::epi_triangles(const SearchBounds& b, EnumStats* stats,
                                             const std::vector<int>* required) const {
  std::vector<EpiTriangle> out;
  for_each_epi_triangle(b, stats, required, [&](const EpiTriangle& t) {
    out.push_back(t);
    return true;
  });
  return out;
}

std::vector<EpiTriangle> Heart::mono_triangles(const SearchBounds& b, EnumStats* stats,
                                              const std::vector<int>* required) const {
  std::vector<EpiTriangle> out;
  for_each_mono_triangle(b, stats, required, [&](const EpiTriangle& t) {
    out.push_back(t);
    return true;
  });
  return out;
}

namespace {

bool has_any(const Obj& o, const std::vector<int>* required) {
  return !required || std::any_of(o.begin(), o.end(), [&](int x) {
    return std::find(required->begin(), required->end(), x) != required->end();
  });
}

}  // namespace

bool Heart::for_each_epi_triangle(const SearchBounds& b, EnumStats* stats, const std::vector<int>* required,
                                  const std::function<bool(const EpiTriangle&)>& fn) const {
  const Category& c = *c_;
  std::vector<int> pool;
  for (int u : tp_.U.ids())
    if (std::any_of(reduced_.begin(), reduced_.end(), [&](int x) { return c.ext(u, x) != 0; })) pool.push_back(u);
  const auto firsts = bounded_objects(c, reduced_, b.mult, b.dim_cap, false);
  DimFilter middles(c, h_.H.ids());
  if (!required)
    for (const Obj& a : firsts)
      if (!fn({{c.identity(a), c.zero(a, {})}, false})) return false;
  bool go = true;
  for (const Obj& a : firsts) {
    std::vector<int> hits;
    for (int u : pool)
      if (c.ext(Obj{u}, a)) hits.push_back(u);
    for (const Obj& u0 : bounded_objects(c, hits, b.mult, b.dim_cap - c.dim(a), false)) {
      if (!has_any(u0, required) || !middles.realizable(a, u0)) continue;
      const auto pos = c.ext_coords(u0, a);
      if (pos.empty() || !admit(stats, c.field().p(), pos.size())) continue;
      const auto owner = omega_owner(c, u0);
      for_each_class(c.field().p(), static_cast<int>(pos.size()), [&](const std::vector<int>& v) {
        std::vector<bool> hit(u0.size(), false);
        for (size_t k = 0; k < pos.size(); ++k)
          if (v[k]) hit[owner[pos[k].second]] = true;
        if (std::find(hit.begin(), hit.end(), false) != hit.end()) return true;
        ObjSES s = c.extension(u0, a, v);
        if (contains(s.i.dst) && is_w_monic(s.i)) go = fn({std::move(s), false});
        return go;
      });
      if (!go) return false;
    }
  }
  return true;
}

bool Heart::for_each_mono_triangle(const SearchBounds& b, EnumStats* stats, const std::vector<int>* required,
                                   const std::function<bool(const EpiTriangle&)>& fn) const {
  const Category& c = *c_;
  std::vector<int> pool;
  for (int t : tp_.T.ids())
    if (std::any_of(reduced_.begin(), reduced_.end(), [&](int x) { return c.ext(x, t) != 0; })) pool.push_back(t);
  const auto thirds = bounded_objects(c, reduced_, b.mult, b.dim_cap, false);
  DimFilter middles(c, h_.H.ids());
  if (!required)
    for (const Obj& x : thirds)
      if (!fn({{c.zero({}, x), c.identity(x)}, true})) return false;
  bool go = true;
  for (const Obj& x : thirds) {
    std::vector<int> hits;
    for (int t : pool)
      if (c.ext(x, Obj{t})) hits.push_back(t);
    for (const Obj& t0 : bounded_objects(c, hits, b.mult, b.dim_cap - c.dim(x), false)) {
      if (!has_any(t0, required) || !middles.realizable(x, t0)) continue;
      const auto pos = c.ext_coords(x, t0);
      if (pos.empty() || !admit(stats, c.field().p(), pos.size())) continue;
      for_each_class(c.field().p(), static_cast<int>(pos.size()), [&](const std::vector<int>& v) {
        std::vector<bool> hit(t0.size(), false);
        for (size_t k = 0; k < pos.size(); ++k)
          if (v[k]) hit[pos[k].first] = true;
        if (std::find(hit.begin(), hit.end(), false) != hit.end()) return true;
        ObjSES s = c.extension(x, t0, v);
        if (contains(s.i.dst) && is_w_epic(s.p)) go = fn({std::move(s), true});
        return go;
      });
      if (!go) return false;
    }
  }
  return true;
}

std::optional<EpiTriangle> Heart::witness_epi(const Obj& u0, const SearchBounds& b, EnumStats* stats) const {
  const Category& c = *c_;
  if (tp_.W.contains(u0)) return EpiTriangle{{c.zero({}, u0), c.identity(u0)}, false};
  DimFilter middles(c, h_.H.ids());
  for (const Obj& a : bounded_objects(c, reduced_, b.mult, b.dim_cap - c.dim(u0), false)) {
    if (!middles.realizable(a, u0)) continue;
    const auto pos = c.ext_coords(u0, a);
    if (pos.empty() || !admit(stats, c.field().p(), pos.size())) continue;
    const auto owner = omega_owner(c, u0);
    std::optional<EpiTriangle> found;
    for_each_class(c.field().p(), static_cast<int>(pos.size()), [&](const std::vector<int>& v) {
      std::vector<bool> hit(u0.size(), false);
      for (size_t k = 0; k < pos.size(); ++k)
        if (v[k]) hit[owner[pos[k].second]] = true;
      for (size_t j = 0; j < u0.size(); ++j)
        if (!hit[j] && !tp_.W.contains(u0[j])) return true;
      ObjSES s = c.extension(u0, a, v);
      if (!contains(s.i.dst) || !is_w_monic(s.i)) return true;
      found = EpiTriangle{std::move(s), false};
      return false;
    });
    if (found) return found;
  }
  return std::nullopt;
}

std::optional<EpiTriangle> Heart::witness_mono(const Obj& t0, const SearchBounds& b, EnumStats* stats) const {
  const Category& c = *c_;
  if (tp_.W.contains(t0)) return EpiTriangle{{c.identity(t0), c.zero(t0, {})}, true};
  DimFilter middles(c, h_.H.ids());
  for (const Obj& x : bounded_objects(c, reduced_, b.mult, b.dim_cap - c.dim(t0), false)) {
    if (!middles.realizable(x, t0)) continue;
    const auto pos = c.ext_coords(x, t0);
    if (pos.empty() || !admit(stats, c.field().p(), pos.size())) continue;
    std::optional<EpiTriangle> found;
    for_each_class(c.field().p(), static_cast<int>(pos.size()), [&](const std::vector<int>& v) {
      std::vector<bool> hit(t0.size(), false);
      for (size_t k = 0; k < pos.size(); ++k)
        if (v[k]) hit[pos[k].first] = true;
      for (size_t i = 0; i < t0.size(); ++i)
        if (!hit[i] && !tp_.W.contains(t0[i])) return true;
      ObjSES s = c.extension(x, t0, v);
      if (!contains(s.i.dst) || !is_w_epic(s.p)) return true;
      found = EpiTriangle{std::move(s), true};
      return false;
    });
    if (found) return found;
  }
  return std::nullopt;
}

json Heart::twin_json() const {
  const Category& c = *c_;
  return {{"category", category_json(c)},
          {"S", ids_json(c, tp_.S.ids())},
          {"T", ids_json(c, tp_.T.ids())},
          {"U", ids_json(c, tp_.U.ids())},
          {"V", ids_json(c, tp_.V.ids())}};
}

json Heart::membership_json(const Obj& o) const {
  const Category& c = *c_;
  json out = json::object();
  for (int x : sorted(o)) {
    if (out.contains(c.name(x))) continue;
    json e = json::object();
    if (h_.bplus.witness.at(x).found) e["B+"] = ses_json(c, h_.bplus.witness[x].witness);
    if (h_.bminus.witness.at(x).found) e["B-"] = ses_json(c, h_.bminus.witness[x].witness);
    out[c.name(x)] = e;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Decision procedures

namespace {

struct Route {
  std::string name;
  std::string summary;
  json cert;
};

json triangle_json(const Category& c, const EpiTriangle& t) {
  return {{"variant", t.mono ? "mono" : "epi"}, {"conflation", ses_json(c, t.ses)}};
}

std::vector<int> set_minus(const std::vector<int>& a, const Subcategory& b) {
  std::vector<int> out;
  for (int x : a)
    if (!b.contains(x)) out.push_back(x);
  return out;
}

struct Condition1 {
  std::vector<int> not_in_h1, not_in_h2, extra;
  bool holds() const { return not_in_h1.empty() && not_in_h2.empty() && extra.empty(); }
};

Condition1 condition1(const Heart& heart) {
  const auto& h = heart.classes();
  const auto& W = heart.twin().W;
  Condition1 out;
  out.not_in_h1 = set_minus(heart.reduced(), h.H1);
  out.not_in_h2 = set_minus(heart.reduced(), h.H2);
  const Subcategory both = minus(inter(h.H1, h.H2), W);
  for (int x : both.ids())
    if (!h.H.contains(x)) out.extra.push_back(x);
  return out;
}

// Every object of Ind(H) \ Ind(W) has quotient endomorphisms F_p and there
// are no nonzero quotient maps between distinct ones.
bool semisimple(const Heart& heart) {
  for (int x : heart.reduced())
    for (int y : heart.reduced())
      if (heart.quotient_dim({x}, {y}) != (x == y ? 1 : 0)) return false;
  return true;
}

// Objects of `from` that are not in `a` or `b` yet have Ext against the
// reduced heart in the given direction.
std::vector<std::pair<int, int>> ext_leaks(const Heart& heart, const Subcategory& from, const Subcategory& a,
                                           const Subcategory& b, bool from_first) {
  const Category& c = heart.category();
  std::vector<std::pair<int, int>> out;
  for (int u : from.ids()) {
    if (a.contains(u) || b.contains(u)) continue;
    for (int x : heart.reduced())
      if (from_first ? c.ext(u, x) : c.ext(x, u)) out.emplace_back(u, x);
  }
  return out;
}

std::optional<Route> abelian_route(const Heart& heart) {
  const Category& c = heart.category();
  const TwinPair& tp = heart.twin();
  const auto& h = heart.classes();
  if (heart.reduced().empty())
    return Route{"zero-heart", "every object of H lies in W", {{"H", ids_json(c, h.H.ids())}, {"W", ids_json(c, tp.W.ids())}}};
  const Condition1 c1 = condition1(heart);
  if (semisimple(heart)) {
    if (!c1.holds())
      throw InternalConsistencyError("semisimple heart violates H = H1 ∩ H2 modulo W");
    return Route{"semisimple",
                 "the quotient is a product of copies of vector spaces over the base field",
                 {{"heart", ids_json(c, heart.reduced())}}};
  }
  if (!c1.holds()) return std::nullopt;
  if (subset(Subcategory(c.size(), heart.reduced()), h.H1) && ext_leaks(heart, tp.U, tp.S, tp.W, true).empty())
    return Route{"prop3(1)",
                 "H ⊆ H1 and no object of U outside S ⊕ W has Ext against the heart, so epi.U ⊆ S ⊕ W",
                 {{"heart", ids_json(c, heart.reduced())}}};
  if (subset(Subcategory(c.size(), heart.reduced()), h.H2) && ext_leaks(heart, tp.T, tp.V, tp.W, false).empty())
    return Route{"prop3(2)",
                 "H ⊆ H2 and no object of T outside V ⊕ W has Ext from the heart, so T_mono ⊆ V ⊕ W",
                 {{"heart", ids_json(c, heart.reduced())}}};
  return std::nullopt;
}

struct Candidate {
  Obj z;
  ObjSES conflation;
  EpiTriangle triangle;
  auto key(const Category& c) const {
    return std::make_tuple(c.dim(z), sorted(z), sorted(conflation.i.src), sorted(conflation.p.dst));
  }
};

// Z in B-, Z outside add(U), with T0 -> Z -> U0 and U0 witnessed by an
// epi-triangle (dual: Z in B+, Z outside add(T), T0 witnessed by a mono
// triangle). The fixed end runs through bounded objects by dimension; it is
// only tested for epi.U (resp. T_mono) membership once it has produced a
// candidate Z, and the walk stops once no smaller Z can appear.
std::optional<Candidate> non_integral_search(const Heart& heart, const SearchBounds& b, bool dual, EnumStats* st) {
  const Category& c = heart.category();
  const TwinPair& tp = heart.twin();
  const auto& h = heart.classes();
  const MembershipTable& table = dual ? h.bplus : h.bminus;
  DimFilter middles(c, table.members(c.size()).ids());
  const Subcategory& end_class = dual ? tp.T : tp.U;
  const Subcategory& other = dual ? tp.U : tp.T;
  std::vector<int> ends;
  for (int y : end_class.ids())
    if (!tp.W.contains(y)) ends.push_back(y);
  std::optional<Candidate> best;
  for (const Obj& fixed : bounded_objects(c, ends, b.mult, b.dim_cap - 1, false)) {
    if (best && c.dim(fixed) + 1 > c.dim(best->z)) break;
    std::vector<int> pool;
    for (int y : other.ids())
      if (std::any_of(fixed.begin(), fixed.end(), [&](int f) { return dual ? c.ext(y, f) : c.ext(f, y); }))
        pool.push_back(y);
    std::optional<Candidate> local;
    for (const Obj& var : bounded_objects(c, pool, b.mult, b.dim_cap - c.dim(fixed), false)) {
      if (!middles.realizable(fixed, var)) continue;
      const Obj& quot = dual ? var : fixed;
      const Obj& sub = dual ? fixed : var;
      const auto pos = c.ext_coords(quot, sub);
      if (pos.empty() || !admit(st, c.field().p(), pos.size())) continue;
      const auto owner = omega_owner(c, quot);
      for_each_class(c.field().p(), static_cast<int>(pos.size()), [&](const std::vector<int>& v) {
        std::vector<bool> hit_sub(sub.size(), false), hit_quot(quot.size(), false);
        for (size_t q = 0; q < pos.size(); ++q)
          if (v[q]) hit_sub[pos[q].first] = hit_quot[owner[pos[q].second]] = true;
        for (auto* hit : {&hit_sub, &hit_quot})
          if (std::find(hit->begin(), hit->end(), false) != hit->end()) return true;
        ObjSES s = c.extension(quot, sub, v);
        const Obj z = s.i.dst;
        if ((dual ? tp.T : tp.U).contains(z)) return true;
        for (int x : z)
          if (table.status[x] != Status::holds) return true;
        Candidate cand{z, std::move(s), {}};
        if (!local || cand.key(c) < local->key(c)) local = std::move(cand);
        return true;
      });
    }
    if (!local || (best && !(local->key(c) < best->key(c)))) continue;
    auto tri = dual ? heart.witness_mono(fixed, b, st) : heart.witness_epi(fixed, b, st);
    if (!tri) continue;
    local->triangle = std::move(*tri);
    best = std::move(local);
  }
  return best;
}

json non_integral_cert(const Heart& heart, const Candidate& cand, bool dual) {
  const Category& c = heart.category();
  const EpiTriangle& tri = cand.triangle;
  const TwinPair& tp = heart.twin();
  const Obj off = (dual ? tp.T : tp.U).outside(cand.z);
  const Obj& tri_obj_a = dual ? tri.ses.i.dst : tri.ses.i.src;
  const Obj& tri_obj_b = dual ? tri.ses.p.dst : tri.ses.i.dst;
  return {{"kind", "non_integral"},
          {"condition", dual ? "B+ ∩ (T_mono * U) ⊆ T" : "B- ∩ (T * epi.U) ⊆ U"},
          {"dual", dual},
          {"twin", heart.twin_json()},
          {"Z", obj_json(c, sorted(cand.z))},
          {"offending", c.name(off.front())},
          {"conflation", ses_json(c, cand.conflation)},
          {"triangle", triangle_json(c, tri)},
          {dual ? "bplus_witness" : "bminus_witness",
           ses_json(c, dual ? heart.bplus_witness(cand.z) : heart.bminus_witness(cand.z))},
          {"memberships", heart.membership_json(concat(tri_obj_a, tri_obj_b))}};
}

json stats_json(const EnumStats& s) {
  return {{"pairs", s.pairs}, {"classes", s.classes}, {"skipped_pairs", s.skipped}};
}


}  // namespace

Verdict check_integral(const Heart& heart, const SearchBounds& b) {
  b.validate();
  const Category& c = heart.category();
  const TwinPair& tp = heart.twin();
  const auto& h = heart.classes();
  if (!h.exact()) return Verdict::make_unknown("heart memberships unresolved", {{"taint", h.taint}}, b);
  if (heart.reduced().empty())
    return Verdict::make_holds("zero-heart", "the heart is zero",
                               {{"H", ids_json(c, h.H.ids())}, {"W", ids_json(c, tp.W.ids())}}, b);
  try {
    std::optional<Route> route;
    json gen = json::object();
    for (int which : {1, 2}) {
      try {
        const Verdict v = which == 1 ? subcat_in_star(c, tp.U, tp.S, tp.T, b) : subcat_in_star(c, tp.T, tp.U, tp.V, b);
        gen[which == 1 ? "U in S*T" : "T in U*V"] = to_string(v.status);
        if (v.holds() && !route)
          route = Route{which == 1 ? "prop-gen(1)" : "prop-gen(2)",
                        which == 1 ? "U ⊆ S*T, hence B- ∩ (T*U) ⊆ U" : "T ⊆ U*V, hence B+ ∩ (T*U) ⊆ T",
                        {{"star", to_json(v)}}};
      } catch (const EnumerationRefused& e) {
        gen[which == 1 ? "U in S*T" : "T in U*V"] = std::string("refused: ") + e.what();
      }
    }
    if (!route)
      if (auto r = abelian_route(heart)) route = Route{"abelian:" + r->name, r->summary + "; abelian implies integral", r->cert};

    EnumStats se, sm;
    auto found = non_integral_search(heart, b, false, &se);
    bool dual = false;
    if (!found) {
      found = non_integral_search(heart, b, true, &sm);
      dual = found.has_value();
    }
    const json counts = {{"theorem_search", stats_json(se)}, {"dual_search", stats_json(sm)}};
    if (found && route)
      throw InternalConsistencyError("integrality route " + route->name + " contradicts a non-integrality certificate");
    if (found) {
      json cert = non_integral_cert(heart, *found, dual);
      cert["searched"] = counts;
      return Verdict::make_fails("not integral: " + c.name(sorted(found->z)) + " violates " +
                                     cert["condition"].get<std::string>(),
                                 cert, b);
    }
    if (route) {
      json cert = route->cert;
      cert["prop_gen"] = gen;
      cert["searched"] = counts;
      return Verdict::make_holds(route->name, route->summary, cert, b);
    }
    return Verdict::make_unknown("no certificate either way within bounds", {{"prop_gen", gen}, {"searched", counts}},
                                 b);
  } catch (const WitnessMissing& e) {
    return Verdict::make_unknown(e.what(), {{"taint", e.what()}}, b);
  }
}

Verdict check_abelian(const Heart& heart, const SearchBounds& b) {
  b.validate();
  const Category& c = heart.category();
  const TwinPair& tp = heart.twin();
  const auto& h = heart.classes();
  if (!h.exact()) return Verdict::make_unknown("heart memberships unresolved", {{"taint", h.taint}}, b);
  if (heart.reduced().empty())
    return Verdict::make_holds("zero-heart", "the heart is zero",
                               {{"H", ids_json(c, h.H.ids())}, {"W", ids_json(c, tp.W.ids())}}, b);
  try {
    const Condition1 c1 = condition1(heart);
    json sub = json::object();
    sub["condition1"] = {{"holds", c1.holds()},
                         {"not_in_H1", ids_json(c, c1.not_in_h1)},
                         {"not_in_H2", ids_json(c, c1.not_in_h2)},
                         {"extra", ids_json(c, c1.extra)}};
    std::optional<Verdict> failure;
    if (!c1.holds()) {
      json cert = {{"kind", "non_abelian"}, {"condition", 1}, {"twin", heart.twin_json()}};
      json ev = json::object();
      auto table_ev = [&](const MembershipTable& t, int x, const char* label) {
        json e = {{"table", label}};
        if (t.witness[x].found) e["conflation"] = ses_json(c, t.witness[x].witness);
        else e["refutation"] = t.witness[x].detail;
        return e;
      };
      std::vector<int> wit;
      std::string side;
      if (!c1.not_in_h1.empty()) {
        wit = c1.not_in_h1;
        side = "H1";
      } else if (!c1.not_in_h2.empty()) {
        wit = c1.not_in_h2;
        side = "H2";
      } else {
        wit = c1.extra;
        side = "H";
      }
      for (int x : wit) {
        json e = json::object();
        if (side == "H") {
          e["in"] = {table_ev(h.b1plus, x, "B1+"), table_ev(h.b1minus, x, "B1-"), table_ev(h.b2plus, x, "B2+"),
                     table_ev(h.b2minus, x, "B2-")};
          e["out"] = h.bplus.status[x] != Status::holds ? table_ev(h.bplus, x, "B+") : table_ev(h.bminus, x, "B-");
        } else {
          e["in"] = {table_ev(h.bplus, x, "B+"), table_ev(h.bminus, x, "B-")};
          const auto& plus = side == "H1" ? h.b1plus : h.b2plus;
          const auto& minus_t = side == "H1" ? h.b1minus : h.b2minus;
          const std::string p = side == "H1" ? "B1" : "B2";
          e["out"] = plus.status[x] != Status::holds ? table_ev(plus, x, (p + "+").c_str())
                                                     : table_ev(minus_t, x, (p + "-").c_str());
        }
        ev[c.name(x)] = e;
      }
      cert["side"] = side;
      cert["witnesses"] = ids_json(c, wit);
      cert["evidence"] = ev;
      cert["condition1"] = sub["condition1"];
      const std::string what = side == "H" ? "lie in H1 ∩ H2 but not in H" : "lie in H but not in " + side;
      failure = Verdict::make_fails("not abelian: condition (1) fails; " + names(c, wit) + " " + what, cert, b);
    }

    // Summands that would break (2) / (3). If none of them has Ext against
    // the heart, every triangle splits them off into W, and the condition
    // holds outright.
    const auto leaks2 = ext_leaks(heart, tp.U, tp.S, tp.W, true);
    const auto leaks3 = ext_leaks(heart, tp.T, tp.V, tp.W, false);
    auto firsts = [](const std::vector<std::pair<int, int>>& l) {
      std::vector<int> out;
      for (auto [u, _] : l)
        if (std::find(out.begin(), out.end(), u) == out.end()) out.push_back(u);
      return out;
    };
    const std::vector<int> bad2 = firsts(leaks2), bad3 = firsts(leaks3);
    EnumStats s2, s3;
    auto on_epi = [&](const EpiTriangle& t) {
      const Obj bad = oplus(tp.S, tp.W).outside(t.ses.p.dst);
      if (bad.empty()) return true;
      json cert = {{"kind", "non_abelian"},
                   {"condition", 2},
                   {"twin", heart.twin_json()},
                   {"triangle", triangle_json(c, t)},
                   {"offending", c.name(bad.front())},
                   {"memberships", heart.membership_json(concat(t.ses.i.src, t.ses.i.dst))}};
      if (!failure)
        failure = Verdict::make_fails("not abelian: epi.U has " + c.name(bad.front()) + " outside S ⊕ W", cert, b);
      sub["condition2"] = {{"counterexample", true}, {"offending", c.name(bad.front())}};
      return false;
    };
    if (!bad2.empty()) heart.for_each_epi_triangle(b, &s2, &bad2, on_epi);
    if (!sub.contains("condition2"))
      sub["condition2"] = {{"counterexample", false},
                         {"exact", bad2.empty()},
                         {"candidates", ids_json(c, bad2)},
                         {"enumeration", stats_json(s2)}};
    auto on_mono = [&](const EpiTriangle& t) {
      const Obj bad = oplus(tp.V, tp.W).outside(t.ses.i.src);
      if (bad.empty()) return true;
      json cert = {{"kind", "non_abelian"},
                   {"condition", 3},
                   {"twin", heart.twin_json()},
                   {"triangle", triangle_json(c, t)},
                   {"offending", c.name(bad.front())},
                   {"memberships", heart.membership_json(concat(t.ses.i.dst, t.ses.p.dst))}};
      if (!failure)
        failure = Verdict::make_fails("not abelian: T_mono has " + c.name(bad.front()) + " outside V ⊕ W", cert, b);
      sub["condition3"] = {{"counterexample", true}, {"offending", c.name(bad.front())}};
      return false;
    };
    if (!bad3.empty()) heart.for_each_mono_triangle(b, &s3, &bad3, on_mono);
    if (!sub.contains("condition3"))
      sub["condition3"] = {{"counterexample", false},
                         {"exact", bad3.empty()},
                         {"candidates", ids_json(c, bad3)},
                         {"enumeration", stats_json(s3)}};

    if (failure) {
      failure->certificate["conditions"] = sub;
      return *failure;
    }
    const Verdict integral = check_integral(heart, b);
    sub["integral"] = to_json(integral);
    if (integral.fails()) {
      json cert = {{"kind", "non_abelian"}, {"condition", "integral"}, {"integral", integral.certificate}};
      return Verdict::make_fails("not abelian: not integral", cert, b);
    }

    if (auto r = abelian_route(heart)) {
      json cert = r->cert;
      cert["conditions"] = sub;
      return Verdict::make_holds(r->name, r->summary, cert, b);
    }
    return Verdict::make_unknown("conditions hold within bounds but no theorem route closes them", {{"conditions", sub}},
                                 b);
  } catch (const WitnessMissing& e) {
    return Verdict::make_unknown(e.what(), {{"taint", e.what()}}, b);
  }
}

Verdict probe_integral_direct(const Heart& heart, const SearchBounds& b) {
  b.validate();
  const Category& c = heart.category();
  const auto& h = heart.classes();
  if (!h.exact()) return Verdict::make_unknown("heart memberships unresolved", {{"taint", h.taint}}, b);
  const int p = c.field().p();
  auto top_mult = [](const Obj& o) {
    int best = 0;
    for (int x : o) best = std::max<int>(best, std::count(o.begin(), o.end(), x));
    return best;
  };
  long squares = 0, work = 0;
  bool exhausted = false;
  try {
    // multiplicity 1 first, then deeper, all under one budget
    for (int m = 1; m <= b.mult && !exhausted; ++m) {
      const auto objs = bounded_objects(c, heart.reduced(), m, b.dim_cap, false);
      for (const Obj& D : objs)
        for (const Obj& C : objs) {
          if (m > 1 && top_mult(C) < m && top_mult(D) < m) continue;
          if (work > probe_budget) {
            exhausted = true;
            break;
          }
          const int kd = heart.quotient_dim(C, D);
          if (kd == 0 || too_many(p, kd)) continue;
          std::vector<ObjMorphism> epis;
          for_each_class(p, kd, [&](const std::vector<int>& v) {
            ObjMorphism d = heart.from_quotient(C, D, v);
            ++work;
            if (heart.is_epi(d)) epis.push_back(std::move(d));
            return true;
          });
          // B indecomposable is enough: if the pullbacks P_k -> B_k along the
          // pieces of b are epi, so is their sum, which factors through P -> B.
          for (const ObjMorphism& d : epis)
            for (int bx : heart.reduced()) {
              const Obj B{bx};
              const int kb = heart.quotient_dim(B, D);
              if (kb == 0 || too_many(p, kb)) continue;
              std::optional<json> bad;
              for_each_class(p, kb, [&](const std::vector<int>& v) {
                ++squares;
                work += 4;
                const ObjMorphism bm = heart.from_quotient(B, D, v);
                const ObjMorphism m = c.row(bm, c.neg(d));
                const HeartMap k = heart.kernel(m);
                if (auto why = heart.check_kernel(m, k); !why.empty())
                  throw InternalConsistencyError("pullback fails its universal property: " + why);
                const ObjMorphism leg = block(k.map, 0, sz(B), 0, sz(k.object));
                if (heart.is_epi(leg)) return true;
                json heart_table = json::object();
                for (int x = 0; x < c.size(); ++x) {
                  json e = {{"member", h.H.contains(x)}};
                  if (h.H.contains(x)) {
                    e["B+"] = ses_json(c, h.bplus.witness[x].witness);
                    e["B-"] = ses_json(c, h.bminus.witness[x].witness);
                  } else if (h.bplus.status[x] != Status::holds) {
                    e["table"] = "B+";
                    e["refutation"] = h.bplus.witness[x].detail;
                  } else {
                    e["table"] = "B-";
                    e["refutation"] = h.bminus.witness[x].detail;
                  }
                  heart_table[c.name(x)] = e;
                }
                bad = json{{"kind", "bad_square"},
                           {"twin", heart.twin_json()},
                           {"heart_table", heart_table},
                           {"d", morphism_json(c, d)},
                           {"b", morphism_json(c, bm)},
                           {"pullback", morphism_json(c, k.map)},
                           {"leg", morphism_json(c, leg)}};
                return false;
              });
              if (bad)
                return Verdict::make_fails("pullback of the epimorphism " + c.name(C) + " -> " + c.name(D) +
                                               " along " + c.name(B) + " -> " + c.name(D) + " is not an epimorphism",
                                           *bad, b);
            }
        }
    }
  } catch (const WitnessMissing& e) {
    return Verdict::make_unknown(e.what(), {{"taint", e.what()}}, b);
  }
  return Verdict::make_unknown(exhausted ? "probe budget exhausted" : "no bad square within bounds",
                               {{"squares", squares}, {"work", work}, {"budget", probe_budget}, {"exhausted", exhausted}},
                               b);
}

// ---------------------------------------------------------------------------
// Replay

namespace {

struct Twin {
  Category c;
  Subcategory S, T, U, V, W;
};

Twin twin_from(const json& j) {
  Twin t;
  t.c = category_from_json(j.at("category"));
  auto cls = [&](const char* k) { return Subcategory(t.c, obj_from_json(t.c, j.at(k))); };
  t.S = cls("S");
  t.T = cls("T");
  t.U = cls("U");
  t.V = cls("V");
  t.W = inter(t.U, t.T);
  return t;
}

#define REQUIRE_OR(cond, msg) \
  do {                        \
    if (!(cond)) return msg;  \
  } while (0)

std::string check_ses(const Category& c, const ObjSES& s, const char* what) {
  const std::string why = c.validate(s);
  return why.empty() ? std::string() : std::string(what) + ": " + why;
}

// B+ (V -> W -> x) and B- (x -> W -> S) conflations for one indecomposable.
std::string check_membership(const Twin& t, int x, const json& e, bool plus, bool minus_) {
  const Category& c = t.c;
  if (plus) {
    REQUIRE_OR(e.contains("B+"), "no B+ witness for " + c.name(x));
    const ObjSES s = ses_from_json(c, e.at("B+"));
    if (auto w = check_ses(c, s, "B+ witness"); !w.empty()) return w;
    REQUIRE_OR(s.p.dst == Obj{x} && t.V.contains(s.i.src) && t.W.contains(s.i.dst), "bad B+ witness for " + c.name(x));
  }
  if (minus_) {
    REQUIRE_OR(e.contains("B-"), "no B- witness for " + c.name(x));
    const ObjSES s = ses_from_json(c, e.at("B-"));
    if (auto w = check_ses(c, s, "B- witness"); !w.empty()) return w;
    REQUIRE_OR(s.i.src == Obj{x} && t.W.contains(s.i.dst) && t.S.contains(s.p.dst), "bad B- witness for " + c.name(x));
  }
  return {};
}

std::string check_in_heart(const Twin& t, const Obj& o, const json& memberships) {
  for (int x : o) {
    REQUIRE_OR(memberships.contains(t.c.name(x)), "no membership witness for " + t.c.name(x));
    if (auto w = check_membership(t, x, memberships.at(t.c.name(x)), true, true); !w.empty()) return w;
  }
  return {};
}

bool w_monic(const Twin& t, const ObjMorphism& f) {
  for (int w : t.W.ids())
    for (int j = 0; j < sz(f.src); ++j) {
      if (!t.c.hom(f.src[j], w)) continue;
      ObjMorphism g = t.c.zero(f.src, {w});
      g.coef(0, j) = 1;
      if (!t.c.extend(g, f)) return false;
    }
  return true;
}

bool w_epic(const Twin& t, const ObjMorphism& f) {
  for (int w : t.W.ids())
    for (int i = 0; i < sz(f.dst); ++i) {
      if (!t.c.hom(w, f.dst[i])) continue;
      ObjMorphism g = t.c.zero({w}, f.dst);
      g.coef(i, 0) = 1;
      if (!t.c.lift(g, f)) return false;
    }
  return true;
}

std::string check_triangle(const Twin& t, const json& j, const json& memberships, bool want_mono) {
  const Category& c = t.c;
  REQUIRE_OR((j.at("variant") == "mono") == want_mono, "triangle has the wrong variant");
  const ObjSES s = ses_from_json(c, j.at("conflation"));
  if (auto w = check_ses(c, s, "triangle"); !w.empty()) return w;
  if (want_mono) {
    if (auto w = check_in_heart(t, concat(s.i.dst, s.p.dst), memberships); !w.empty()) return w;
    REQUIRE_OR(t.T.contains(s.i.src), "first term of the mono triangle is not in T");
    REQUIRE_OR(w_epic(t, s.p), "second map of the mono triangle is not W-epic");
  } else {
    if (auto w = check_in_heart(t, concat(s.i.src, s.i.dst), memberships); !w.empty()) return w;
    REQUIRE_OR(t.U.contains(s.p.dst), "third term of the epi triangle is not in U");
    REQUIRE_OR(w_monic(t, s.i), "first map of the epi triangle is not W-monic");
  }
  return {};
}

std::string replay_non_integral(const json& cert) {
  const Twin t = twin_from(cert.at("twin"));
  const Category& c = t.c;
  const bool dual = cert.at("dual").get<bool>();
  const Obj z = obj_from_json(c, cert.at("Z"));
  const ObjSES conf = ses_from_json(c, cert.at("conflation"));
  if (auto w = check_ses(c, conf, "conflation"); !w.empty()) return w;
  REQUIRE_OR(sorted(conf.i.dst) == z, "conflation middle is not Z");
  REQUIRE_OR(t.T.contains(conf.i.src), "conflation first term is not in T");
  REQUIRE_OR(t.U.contains(conf.p.dst), "conflation third term is not in U");
  const int off = c.id(Interval::parse(cert.at("offending").get<std::string>()));
  REQUIRE_OR(std::count(z.begin(), z.end(), off) > 0, "offending summand is not a summand of Z");
  REQUIRE_OR(!(dual ? t.T : t.U).contains(off), "offending summand lies in the class after all");
  const json& tri = cert.at("triangle");
  if (auto w = check_triangle(t, tri, cert.at("memberships"), dual); !w.empty()) return w;
  const ObjSES ts = ses_from_json(c, tri.at("conflation"));
  if (dual) {
    REQUIRE_OR(sorted(ts.i.src) == sorted(conf.i.src), "T0 is not the one witnessed by the mono triangle");
    const ObjSES w = ses_from_json(c, cert.at("bplus_witness"));
    if (auto why = check_ses(c, w, "B+ witness of Z"); !why.empty()) return why;
    REQUIRE_OR(sorted(w.p.dst) == z && t.V.contains(w.i.src) && t.W.contains(w.i.dst), "bad B+ witness for Z");
  } else {
    REQUIRE_OR(sorted(ts.p.dst) == sorted(conf.p.dst), "U0 is not the one witnessed by the epi triangle");
    const ObjSES w = ses_from_json(c, cert.at("bminus_witness"));
    if (auto why = check_ses(c, w, "B- witness of Z"); !why.empty()) return why;
    REQUIRE_OR(sorted(w.i.src) == z && t.W.contains(w.i.dst) && t.S.contains(w.p.dst), "bad B- witness for Z");
  }
  return {};
}

// One membership table entry: either a conflation of the right shape or a
// refutation that replays.
std::string check_table_entry(const Twin& t, int x, const json& e, bool want_member) {
  const Category& c = t.c;
  const Subcategory core1 = inter(t.S, t.T), core2 = inter(t.U, t.V);
  const std::string label = e.at("table");
  const bool plus = label.back() == '+';
  const Subcategory& cover = label[1] == '1' ? core1 : label[1] == '2' ? core2 : t.W;
  const Subcategory& other = label[1] == '1' ? (plus ? t.T : t.S)
                             : label[1] == '2' ? (plus ? t.V : t.U)
                                               : (plus ? t.V : t.S);
  if (want_member) {
    REQUIRE_OR(e.contains("conflation"), label + " entry for " + c.name(x) + " has no conflation");
    const ObjSES s = ses_from_json(c, e.at("conflation"));
    if (auto w = check_ses(c, s, label.c_str()); !w.empty()) return w;
    if (plus)
      REQUIRE_OR(s.p.dst == Obj{x} && cover.contains(s.i.dst) && other.contains(s.i.src), "bad " + label + " conflation");
    else
      REQUIRE_OR(s.i.src == Obj{x} && cover.contains(s.i.dst) && other.contains(s.p.dst), "bad " + label + " conflation");
    return {};
  }
  REQUIRE_OR(e.contains("refutation"), label + " entry for " + c.name(x) + " has no refutation");
  const json& r = e.at("refutation");
  REQUIRE_OR(r.value("object", std::string()) == c.name(x), "refutation concerns another object");
  REQUIRE_OR(r.value("kind", std::string()) == (plus ? "deflation" : "inflation"), "refutation has the wrong kind");
  REQUIRE_OR(replay_refutation(c, r, cover, other), label + " refutation for " + c.name(x) + " does not replay");
  return {};
}

std::string replay_non_abelian(const json& cert) {
  const json& cond = cert.at("condition");
  if (cond.is_string()) return replay_certificate(cert.at("integral"));
  const Twin t = twin_from(cert.at("twin"));
  const Category& c = t.c;
  const int k = cond.get<int>();
  if (k == 1) {
    const std::string side = cert.at("side");
    for (const auto& [name, e] : cert.at("evidence").items()) {
      const int x = c.id(Interval::parse(name));
      REQUIRE_OR(!t.W.contains(x), name + " lies in W");
      for (const auto& in : e.at("in"))
        if (auto w = check_table_entry(t, x, in, true); !w.empty()) return w;
      if (auto w = check_table_entry(t, x, e.at("out"), false); !w.empty()) return w;
      const std::string out_table = e.at("out").at("table");
      const std::string want = side == "H" ? "B" : side == "H1" ? "B1" : "B2";
      REQUIRE_OR(out_table.substr(0, out_table.size() - 1) == want, "evidence refutes the wrong class");
    }
    REQUIRE_OR(!cert.at("evidence").empty(), "no witnesses");
    return {};
  }
  const json& tri = cert.at("triangle");
  if (auto w = check_triangle(t, tri, cert.at("memberships"), k == 3); !w.empty()) return w;
  const ObjSES s = ses_from_json(c, tri.at("conflation"));
  const int off = c.id(Interval::parse(cert.at("offending").get<std::string>()));
  const Obj& end = k == 2 ? s.p.dst : s.i.src;
  REQUIRE_OR(std::count(end.begin(), end.end(), off) > 0, "offending summand is not in the triangle end");
  REQUIRE_OR(!t.W.contains(off) && !(k == 2 ? t.S : t.V).contains(off), "offending summand lies in the class");
  return {};
}

std::string replay_bad_square(const json& cert) {
  const Twin t = twin_from(cert.at("twin"));
  const Category& c = t.c;
  std::vector<int> members;
  for (int x = 0; x < c.size(); ++x) {
    const json& e = cert.at("heart_table").at(c.name(x));
    if (e.at("member").get<bool>()) {
      if (auto w = check_membership(t, x, e, true, true); !w.empty()) return w;
      members.push_back(x);
    } else if (auto w = check_table_entry(t, x, e, false); !w.empty()) {
      return w;
    }
  }
  TwinPair tp;
  tp.S = t.S;
  tp.T = t.T;
  tp.U = t.U;
  tp.V = t.V;
  tp.W = t.W;
  HeartClasses h;
  h.H = Subcategory(c, members);
  const Heart heart(c, tp, h);
  const ObjMorphism d = morphism_from_json(c, cert.at("d"));
  const ObjMorphism bm = morphism_from_json(c, cert.at("b"));
  const ObjMorphism pb = morphism_from_json(c, cert.at("pullback"));
  const ObjMorphism leg = morphism_from_json(c, cert.at("leg"));
  for (const ObjMorphism* f : {&d, &bm, &pb, &leg}) c.validate(*f);
  REQUIRE_OR(d.dst == bm.dst, "d and b do not share a target");
  REQUIRE_OR(heart.contains(d.src) && heart.contains(bm.src) && heart.contains(d.dst) && heart.contains(pb.src),
             "square leaves the heart");
  REQUIRE_OR(heart.is_epi_direct(d), "d is not an epimorphism in the heart");
  const ObjMorphism m = c.row(bm, c.neg(d));
  if (auto w = heart.check_kernel(m, {pb.src, pb}); !w.empty()) return "pullback: " + w;
  REQUIRE_OR(leg == block(pb, 0, sz(bm.src), 0, sz(pb.src)), "leg is not the B-component of the pullback");
  REQUIRE_OR(!heart.is_epi_direct(leg), "the leg is an epimorphism after all");
  return {};
}

std::string replay_twin_failure(const json& cert) {
  // Certificates of twin verification nest the single-pair verdicts.
  const Twin t = twin_from(cert.at("twin"));
  const Category& c = t.c;
  if (cert.contains("inclusion")) {
    const int x = c.id(Interval::parse(cert.at("inclusion").at("outside").get<std::string>()));
    REQUIRE_OR(t.S.contains(x) && !t.U.contains(x), "inclusion witness does not replay");
    return {};
  }
  for (const char* key : {"st", "uv"}) {
    const json& v = cert.at(key);
    if (v.at("status") != "fails") continue;
    const json& pc = v.at("certificate");
    const Subcategory& u = std::string(key) == "st" ? t.S : t.U;
    const Subcategory& w = std::string(key) == "st" ? t.T : t.V;
    if (pc.at("kind") == "orthogonality") {
      const int a = c.id(Interval::parse(pc.at("u").get<std::string>()));
      const int b = c.id(Interval::parse(pc.at("v").get<std::string>()));
      REQUIRE_OR(u.contains(a) && w.contains(b) && c.ext(a, b) != 0, "orthogonality witness does not replay");
      return {};
    }
    const json& r = pc.at("refutation");
    const bool deflation = r.at("kind") == "deflation";
    REQUIRE_OR(replay_refutation(c, r, deflation ? u : w, deflation ? w : u), "approximation refutation does not replay");
    return {};
  }
  return "no failing component";
}

}  // namespace

std::string replay_certificate(const json& cert) {
  try {
    const std::string kind = cert.value("kind", std::string());
    if (kind == "non_integral") return replay_non_integral(cert);
    if (kind == "non_abelian") return replay_non_abelian(cert);
    if (kind == "bad_square") return replay_bad_square(cert);
    if (kind == "twin") return replay_twin_failure(cert);
    return "certificate kind '" + kind + "' cannot be replayed";
  } catch (const json::exception& e) {
    return std::string("malformed certificate: ") + e.what();
  } catch (const ArgumentError& e) {
    return std::string("invalid certificate data: ") + e.what();
  }
}

}  // namespace ctl
