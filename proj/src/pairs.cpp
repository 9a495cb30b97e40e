#include "cotorsion/pairs.hpp"

#include "cotorsion/codec.hpp"

namespace ctl {

Verdict verify_cotorsion(const Category& c, const Subcategory& u, const Subcategory& v, const SearchBounds& bounds,
                         CotorsionRecord* record) {
  CotorsionRecord local;
  CotorsionRecord& rec = record ? *record : local;
  rec = {u, v, {}, {}};
  const std::string label = "(" + u.name() + "," + v.name() + ")";
  if (auto bad = ext_obstruction(c, u, v)) {
    return Verdict::make_fails(
        label + ": Ext(" + c.name(bad->first) + "," + c.name(bad->second) + ") != 0",
        {{"kind", "orthogonality"}, {"u", c.name(bad->first)}, {"v", c.name(bad->second)}}, bounds);
  }
  json unwitnessed = json::array();
  json witnesses = json::object();
  for (int b = 0; b < c.size(); ++b) {
    rec.left.push_back(deflation_search(c, b, u, v, bounds));
    rec.right.push_back(inflation_search(c, b, v, u, bounds));
    for (const Approximation* a : {&rec.left.back(), &rec.right.back()}) {
      if (a->refuted)
        return Verdict::make_fails(label + ": no approximation conflation for " + c.name(b),
                                   {{"kind", "approximation"}, {"refutation", a->detail}}, bounds);
      if (!a->found) unwitnessed.push_back(c.name(b));
    }
    if (rec.left.back().found && rec.right.back().found)
      witnesses[c.name(b)] = {{"left", ses_json(c, rec.left.back().witness)},
                              {"right", ses_json(c, rec.right.back().witness)}};
  }
  if (!unwitnessed.empty())
    return Verdict::make_unknown(label + ": approximations missing within bounds", {{"unwitnessed", unwitnessed}},
                                 bounds);
  return Verdict::make_holds("witnessed", label + " is a cotorsion pair", {{"witnesses", witnesses}}, bounds);
}

Verdict verify_twin(const Category& c, const Subcategory& S, const Subcategory& T, const Subcategory& U,
                    const Subcategory& V, const SearchBounds& bounds, TwinPair* out) {
  TwinPair local;
  TwinPair& tp = out ? *out : local;
  tp.S = S;
  tp.T = T;
  tp.U = U;
  tp.V = V;
  tp.W = inter(U, T).named("W");
  const Verdict st = verify_cotorsion(c, S, T, bounds, &tp.st);
  const Verdict uv = verify_cotorsion(c, U, V, bounds, &tp.uv);
  json cert = {{"kind", "twin"},
               {"twin",
                {{"category", category_json(c)},
                 {"S", ids_json(c, S.ids())},
                 {"T", ids_json(c, T.ids())},
                 {"U", ids_json(c, U.ids())},
                 {"V", ids_json(c, V.ids())}}},
               {"st", to_json(st)},
               {"uv", to_json(uv)}};
  if (!subset(S, U)) {
    const Obj bad = U.outside(S.ids());
    cert["inclusion"] = {{"outside", c.name(bad.front())}};
    return Verdict::make_fails("S is not contained in U: " + c.name(bad.front()), cert, bounds);
  }
  if (st.fails()) return Verdict::make_fails("(S,T) is not a cotorsion pair: " + st.summary, cert, bounds);
  if (uv.fails()) return Verdict::make_fails("(U,V) is not a cotorsion pair: " + uv.summary, cert, bounds);
  cert["W"] = ids_json(c, tp.W.ids());
  json notes = json::array();
  if (tp.W == U) notes.push_back("W = U");
  if (tp.W == T) notes.push_back("W = T");
  cert["notes"] = notes;
  if (st.unknown() || uv.unknown()) return Verdict::make_unknown("twin verification incomplete", cert, bounds);
  return Verdict::make_holds("witnessed", "twin cotorsion pair", cert, bounds);
}

namespace {

Verdict membership_verdict(const Category& c, const Approximation& a, const SearchBounds& bounds,
                           const std::string& what) {
  if (a.found) return Verdict::make_holds("search", what, {{"conflation", ses_json(c, a.witness)}}, bounds);
  json cert = a.detail;
  cert["refuted"] = a.refuted;
  return Verdict::make_unknown(what + ": no witness", cert, bounds);
}

MembershipTable table(const Category& c, const SearchBounds& bounds, bool plus, const Subcategory& core,
                      const Subcategory& other) {
  MembershipTable t;
  for (int x = 0; x < c.size(); ++x) {
    Approximation a = plus ? deflation_search(c, x, core, other, bounds) : inflation_search(c, x, core, other, bounds);
    t.status.push_back(a.found ? Status::holds : a.refuted ? Status::fails : Status::unknown);
    t.witness.push_back(std::move(a));
  }
  return t;
}

}  // namespace

Verdict membership_bplus(const Category& c, int x, const TwinPair& tp, const SearchBounds& bounds) {
  return membership_verdict(c, deflation_search(c, x, tp.W, tp.V, bounds), bounds, c.name(x) + " in B+");
}

Verdict membership_bminus(const Category& c, int x, const TwinPair& tp, const SearchBounds& bounds) {
  return membership_verdict(c, inflation_search(c, x, tp.W, tp.S, bounds), bounds, c.name(x) + " in B-");
}

Subcategory MembershipTable::members(int universe) const {
  std::vector<int> ids;
  for (int x = 0; x < static_cast<int>(status.size()); ++x)
    if (status[x] == Status::holds) ids.push_back(x);
  return Subcategory(universe, ids);
}

std::vector<int> MembershipTable::unresolved() const {
  std::vector<int> out;
  for (int x = 0; x < static_cast<int>(status.size()); ++x)
    if (status[x] == Status::unknown) out.push_back(x);
  return out;
}

HeartClasses compute_hearts(const Category& c, const TwinPair& tp, const SearchBounds& bounds) {
  HeartClasses h;
  h.core1 = inter(tp.S, tp.T).named("core1");
  h.core2 = inter(tp.U, tp.V).named("core2");
  h.bplus = table(c, bounds, true, tp.W, tp.V);
  h.bminus = table(c, bounds, false, tp.W, tp.S);
  h.b1plus = table(c, bounds, true, h.core1, tp.T);
  h.b1minus = table(c, bounds, false, h.core1, tp.S);
  h.b2plus = table(c, bounds, true, h.core2, tp.V);
  h.b2minus = table(c, bounds, false, h.core2, tp.U);
  const int N = c.size();
  h.H = inter(h.bplus.members(N), h.bminus.members(N)).named("H");
  h.H1 = inter(h.b1plus.members(N), h.b1minus.members(N)).named("H1");
  h.H2 = inter(h.b2plus.members(N), h.b2minus.members(N)).named("H2");
  const std::pair<const char*, const MembershipTable*> all[] = {{"B+", &h.bplus},   {"B-", &h.bminus},
                                                                {"B1+", &h.b1plus}, {"B1-", &h.b1minus},
                                                                {"B2+", &h.b2plus}, {"B2-", &h.b2minus}};
  for (const auto& [label, t] : all)
    for (int x : t->unresolved()) h.taint.push_back(std::string(label) + " " + c.name(x));
  return h;
}

json heart_json(const Category& c, const TwinPair& tp, const HeartClasses& h, bool with_witnesses) {
  auto tab = [&](const MembershipTable& t) {
    json j = json::object();
    for (int x = 0; x < c.size(); ++x) {
      json e = {{"status", to_string(t.status[x])}};
      if (with_witnesses) {
        if (t.witness[x].found) e["conflation"] = ses_json(c, t.witness[x].witness);
        else e["refutation"] = t.witness[x].detail;
      }
      j[c.name(x)] = e;
    }
    return j;
  };
  json out = {{"W", ids_json(c, tp.W.ids())},
              {"H", ids_json(c, h.H.ids())},
              {"heart", ids_json(c, h.reduced(tp).ids())},
              {"H1", ids_json(c, h.H1.ids())},
              {"heart1", ids_json(c, h.reduced1().ids())},
              {"H2", ids_json(c, h.H2.ids())},
              {"heart2", ids_json(c, h.reduced2().ids())},
              {"exact", h.exact()}};
  if (!h.exact()) out["taint"] = h.taint;
  if (with_witnesses) {
    out["tables"] = {{"B+", tab(h.bplus)},   {"B-", tab(h.bminus)},   {"B1+", tab(h.b1plus)},
                     {"B1-", tab(h.b1minus)}, {"B2+", tab(h.b2plus)}, {"B2-", tab(h.b2minus)}};
  }
  return out;
}

}  // namespace ctl
