// One line per acceptance criterion. Exit status is the number of failures.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "cotorsion/codec.hpp"
#include "cotorsion/errors.hpp"
#include "cotorsion/heartcat.hpp"
#include "cotorsion/io.hpp"
#include "cotorsion_lab.h"

using namespace ctl;

namespace {

std::string fixtures = CTL_FIXTURE_DIR;
std::string unit_dir = CTL_UNIT_DIR;

struct Outcome {
  std::vector<std::string> problems;
  std::vector<std::string> notes;

  void need(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
};

std::set<std::string> name_set(const Category& c, const std::vector<int>& ids) {
  std::set<std::string> out;
  for (int x : ids) out.insert(c.name(x));
  return out;
}

using Names = std::set<std::string>;

struct Opened {
  PairsSpec spec;
  Verdict verdict;
  TwinPair tp;
  std::unique_ptr<Heart> heart;
};

std::unique_ptr<Opened> open(const std::string& name, const SearchBounds& b = {}) {
  auto o = std::make_unique<Opened>();
  o->spec = load_pairs_file(fixtures + "/" + name + ".json");
  const PairsSpec& p = o->spec;
  o->verdict = verify_twin(p.category, p.S, p.T, p.U, p.V, b, &o->tp);
  if (o->verdict.holds())
    o->heart = std::make_unique<Heart>(p.category, o->tp, compute_hearts(p.category, o->tp, b));
  return o;
}

Obj objn(const Category& c, std::initializer_list<const char*> ivs) {
  Obj o;
  for (const char* s : ivs) o.push_back(c.id(Interval::parse(s)));
  return sorted(o);
}

bool replay_via_capi(const json& cert, std::string* why) {
  int ok = 0;
  char* reason = nullptr;
  if (ctl_replay(cert.dump().c_str(), &ok, &reason) != CTL_OK) {
    *why = ctl_last_error();
    return false;
  }
  *why = reason;
  ctl_string_free(reason);
  return ok == 1;
}

Outcome census_and_tables() {
  Outcome r;
  ctl_category* h = nullptr;
  if (ctl_category_generate(6, "1-5,2-6", 2, &h) != CTL_OK) {
    r.need(false, std::string("generate: ") + ctl_last_error());
    return r;
  }
  char* out = nullptr;
  ctl_category_census(h, &out);
  const json got = json::parse(out);
  ctl_string_free(out);
  ctl_category_free(h);
  const json want = {"1", "2/1", "3/2/1", "4/3/2/1", "2", "3/2", "4/3/2", "5/4/3/2", "3",
                     "4/3", "5/4/3", "6/5/4/3", "4", "5/4", "6/5/4", "5", "6/5", "6"};
  r.need(got == want, "census " + got.dump());
  const Category c(Presentation(6, {{1, 5}, {2, 6}}), Field(2));
  const auto bad = c.validate_tables();
  r.need(bad.empty(), std::to_string(bad.size()) + " Hom/Ext table mismatches");
  r.notes.push_back(std::to_string(got.size()) + " indecomposables, 18x18 tables checked");
  return r;
}

Outcome example2() {
  Outcome r;
  const auto o = open("ex2");
  r.need(o->verdict.holds(), "twin verification: " + o->verdict.summary);
  if (!o->heart) return r;
  const Heart& h = *o->heart;
  const Category& c = h.category();
  r.need(name_set(c, h.reduced()) == Names{"[3,4]", "[3,5]", "[4,4]"}, "heart set");
  const Verdict vi = check_integral(h, {});
  r.need(vi.fails(), "check_integral is " + to_string(vi.status));

  const json w = read_json_file(fixtures + "/ex2_witness.json");
  std::string why;
  r.need(replay_via_capi(w, &why), "stored witness does not replay: " + why);
  r.need(w.at("Z") == json::array({"[3,5]"}), "witness Z");
  const ObjSES conf = ses_from_json(c, w.at("conflation"));
  r.need(conf.i.src == objn(c, {"[3,3]"}) && conf.i.dst == objn(c, {"[3,5]"}) && conf.p.dst == objn(c, {"[4,5]"}),
         "witness conflation");
  const ObjSES tri = ses_from_json(c, w.at("triangle").at("conflation"));
  r.need(tri.i.src == objn(c, {"[3,4]"}) && sorted(tri.i.dst) == objn(c, {"[3,5]", "[4,4]"}) &&
             tri.p.dst == objn(c, {"[4,5]"}),
         "witness epi triangle");
  if (vi.fails()) r.need(replay_via_capi(vi.certificate, &why), "fresh certificate does not replay: " + why);

  const Verdict va = check_abelian(h, {});
  r.need(va.fails(), "check_abelian is " + to_string(va.status));
  r.notes.push_back("Z=" + w.at("Z").dump());
  return r;
}

Outcome example1() {
  Outcome r;
  const auto o = open("ex1");
  r.need(o->verdict.holds(), "twin verification: " + o->verdict.summary);
  if (!o->heart) return r;
  const Heart& h = *o->heart;
  const Category& c = h.category();
  r.need(name_set(c, h.reduced()) == Names{"[3,5]"}, "heart set");
  const Verdict va = check_abelian(h, {});
  r.need(va.holds() && !va.route.empty(), "check_abelian is " + to_string(va.status));
  const Verdict vi = check_integral(h, {});
  r.need(vi.holds(), "check_integral is " + to_string(vi.status));
  const TwinPair& tp = o->tp;
  r.need(subcat_in_star(c, tp.U, tp.S, tp.T, {}).fails(), "U in S*T does not fail");
  r.need(subcat_in_star(c, tp.T, tp.U, tp.V, {}).fails(), "T in U*V does not fail");
  r.notes.push_back("abelian route " + va.route + ", integral route " + vi.route);
  return r;
}

Outcome example3() {
  Outcome r;
  const auto o = open("ex3");
  r.need(o->verdict.holds(), "twin verification: " + o->verdict.summary);
  if (!o->heart) return r;
  const Heart& h = *o->heart;
  const Category& c = h.category();
  const TwinPair& tp = o->tp;
  r.need(tp.W == tp.U && tp.W == tp.T, "W = U = T");
  r.need(name_set(c, h.reduced()) == Names{"[3,4]", "[4,5]", "[3,5]", "[4,4]", "[5,5]"}, "heart set");
  r.need(name_set(c, h.classes().reduced1().ids()) == Names{"[3,4]", "[3,5]", "[5,5]"}, "H1 set");
  const Verdict va = check_abelian(h, {});
  r.need(va.fails(), "check_abelian is " + to_string(va.status));
  if (va.fails()) {
    const json& cert = va.certificate;
    r.need(cert.at("condition") == 1, "failing condition " + cert.at("condition").dump());
    Names wit;
    for (const auto& x : cert.at("witnesses")) wit.insert(x.get<std::string>());
    r.need(wit == Names{"[4,5]", "[4,4]"}, "witnesses " + cert.at("witnesses").dump());
    const json& sub = cert.at("conditions");
    r.need(sub.at("condition2").at("counterexample") == false, "condition (2) counterexample");
    r.need(sub.at("condition3").at("counterexample") == false, "condition (3) counterexample");
    std::string why;
    r.need(replay_via_capi(cert, &why), "certificate does not replay: " + why);
  }
  return r;
}

Outcome zero_heart() {
  Outcome r;
  const Category c(Presentation(6, {{1, 5}, {2, 6}}), Field(2));
  TwinPair tp;
  const Verdict v = verify_twin(c, projectives(c), everything(c), projectives(c), everything(c), {}, &tp);
  r.need(v.holds(), "twin verification: " + v.summary);
  if (!v.holds()) return r;
  const Heart h(c, tp, compute_hearts(c, tp, {}));
  r.need(h.reduced().empty(), "heart modulo W is not empty");
  const Verdict vi = check_integral(h, {});
  const Verdict va = check_abelian(h, {});
  r.need(vi.holds() && vi.route == "zero-heart", "check_integral " + to_string(vi.status) + " " + vi.route);
  r.need(va.holds() && va.route == "zero-heart", "check_abelian " + to_string(va.status) + " " + va.route);
  return r;
}

// Exit status of the suite, or -1 when the filter selected nothing.
int run_suite(const std::string& binary, const std::string& cases) {
  const std::string cmd = unit_dir + "/" + binary + " --test-case=\"" + cases + "\" --no-version 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return -1;
  std::string text;
  char buf[4096];
  while (size_t n = fread(buf, 1, sizeof buf, pipe)) text.append(buf, n);
  const int rc = pclose(pipe);
  const auto at = text.find("test cases:");
  if (at == std::string::npos || std::atoi(text.c_str() + at + 11) == 0) return -1;
  return rc;
}

Outcome property_suites() {
  Outcome r;
  struct Suite {
    const char* tag;
    const char* binary;
    const char* cases;
  };
  const Suite suites[] = {
      {"a", "test_pairs", "heart invariants on every fixture,fixture twins verify*"},
      {"b", "test_pairs", "heart invariants on every fixture,trivial cotorsion pairs,degenerate twin"},
      {"c", "test_serialcat", "lift and extend agree with exhaustive search"},
      {"d", "test_heartcat", "epi and mono in the heart*"},
      {"e", "test_heartcat", "third terms of W-monic epis lie in U,triangle maps are epi / mono in the heart"},
      {"f", "test_heartcat", "kernels and cokernels in the heart*,kernel probes by exhaustive search"},
      {"h", "test_repcore", "serial and generic decomposition agree*,decompose small cases"},
  };
  std::string ran;
  for (const Suite& s : suites) {
    const int rc = run_suite(s.binary, s.cases);
    r.need(rc == 0, std::string("(") + s.tag + ") " + s.binary + " exit " + std::to_string(rc));
    ran += s.tag;
  }
  // (g) directly
  const SearchBounds one{1, 24};
  const auto o2 = open("ex2", one);
  const auto o1 = open("ex1", one);
  if (o2->heart && o1->heart) {
    const Verdict p2 = probe_integral_direct(*o2->heart, one);
    r.need(p2.fails(), "(g) no bad square for ex2");
    std::string why;
    if (p2.fails()) r.need(replay_via_capi(p2.certificate, &why), "(g) square does not replay: " + why);
    r.need(!probe_integral_direct(*o1->heart, one).fails(), "(g) bad square for ex1");
    ran += "g";
  } else {
    r.need(false, "(g) fixtures did not verify at mult 1");
  }
  r.notes.push_back("suites " + ran);
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) fixtures = argv[1];
  if (argc > 2) unit_dir = argv[2];
  struct Criterion {
    int id;
    const char* what;
    double limit_ms;
    std::function<Outcome()> fn;
  };
  const std::vector<Criterion> all = {
      {1, "census and Hom/Ext tables", 5000, census_and_tables},
      {2, "ex2: heart, non-integral witness, non-abelian", 60000, example2},
      {3, "ex1: heart, abelian, integral, star failures", 60000, example1},
      {4, "ex3: W = U = T, hearts, condition (1)", 60000, example3},
      {5, "zero heart", 5000, zero_heart},
      {6, "property suites", 0, property_suites},
  };
  int failed = 0;
  for (const Criterion& k : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = k.fn();
    } catch (const std::exception& e) {
      out.need(false, std::string("exception: ") + e.what());
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (k.limit_ms > 0 && ms > k.limit_ms) out.need(false, "over time limit");
    const bool ok = out.problems.empty();
    failed += !ok;
    std::ostringstream line;
    line << "ACCEPTANCE " << k.id << ": " << (ok ? "PASS" : "FAIL") << "  " << k.what << "  (" << static_cast<long>(ms)
         << " ms)";
    for (const auto& n : out.notes) line << "  [" << n << "]";
    for (const auto& p : out.problems) line << "  !" << p;
    std::cout << line.str() << std::endl;
  }
  return failed;
}
