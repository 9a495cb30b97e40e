#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cotorsion_lab.h"
#include "json.hpp"

using json = nlohmann::ordered_json;

namespace {

enum Exit { holds = 0, fails = 1, usage = 2, unknown = 3, mismatch = 4, internal = 5 };

struct Common {
  std::string format = "text";
  int mult = 2;
  int dim_cap = 24;
  std::string report;
  std::string pairs;
  std::string category;
};

struct Failure {
  ctl_error code;
  std::string what;
};

void check(ctl_error e) {
  if (e != CTL_OK) throw Failure{e, ctl_last_error()};
}

std::string take(char* s) {
  std::string out(s ? s : "");
  ctl_string_free(s);
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{CTL_E_ARGUMENT, "cannot open " + path};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

uint64_t seed_from_env() {
  const char* s = std::getenv("COTORSION_LAB_SEED");
  if (!s || !*s) return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s, &end, 10);
  if (*end) throw Failure{CTL_E_ARGUMENT, "COTORSION_LAB_SEED must be a non-negative integer"};
  return v;
}

int exit_for(const std::string& status) {
  if (status == "holds" || status == "replayed") return holds;
  if (status == "fails") return fails;
  if (status == "mismatch") return mismatch;
  return unknown;
}

void write_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw Failure{CTL_E_IO, "cannot write " + path};
    out << text;
  }
  std::filesystem::rename(tmp, path);
}

std::string text_report(const json& r) {
  std::ostringstream o;
  o << "check: " << r["check"].get<std::string>() << "\n";
  o << "verdict: " << r["verdict"].get<std::string>() << "\n";
  if (r.contains("route")) o << "route: " << r["route"].get<std::string>() << "\n";
  if (r.contains("summary")) o << "summary: " << r["summary"].get<std::string>() << "\n";
  if (r.contains("bounds") && !r["bounds"].is_null())
    o << "bounds: mult " << r["bounds"]["mult"] << ", dim cap " << r["bounds"]["dim_cap"] << "\n";
  o << "seed: " << r["seed"] << "\n";
  o << "timing_ms: " << r["timing_ms"] << "\n";
  if (r.contains("details")) o << "details:\n" << r["details"].dump(2) << "\n";
  if (r.contains("certificate")) o << "certificate:\n" << r["certificate"].dump(2) << "\n";
  return o.str();
}

int finish(const Common& o, json r) {
  if (!o.report.empty()) write_atomic(o.report, r.dump(2) + "\n");
  if (o.format == "json")
    std::cout << r.dump(2) << "\n";
  else
    std::cout << text_report(r);
  return exit_for(r["verdict"].get<std::string>());
}

json make_report(const std::string& name, const json& verdict, const Common& o, uint64_t seed, double ms) {
  json r = {{"schema", "cotorsion-lab/report"}, {"version", 1}, {"check", name}};
  r["verdict"] = verdict.at("status");
  if (verdict.contains("route")) r["route"] = verdict["route"];
  r["summary"] = verdict.value("summary", "");
  r["bounds"] = verdict.contains("bounds") ? verdict["bounds"] : json{{"mult", o.mult}, {"dim_cap", o.dim_cap}};
  r["seed"] = seed;
  r["timing_ms"] = ms;
  if (verdict.contains("certificate") && !verdict["certificate"].empty()) r["certificate"] = verdict["certificate"];
  return r;
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

struct TwinHandle {
  ctl_twin* t = nullptr;
  ctl_category* c = nullptr;
  ~TwinHandle() {
    ctl_twin_free(t);
    ctl_category_free(c);
  }
};

void open_twin(const Common& o, uint64_t seed, TwinHandle& h) {
  if (o.pairs.empty()) throw Failure{CTL_E_ARGUMENT, "--pairs is required"};
  if (!o.category.empty()) check(ctl_category_from_json(slurp(o.category).c_str(), &h.c));
  const std::string base = std::filesystem::path(o.pairs).parent_path().string();
  check(ctl_twin_open(slurp(o.pairs).c_str(), base.empty() ? "." : base.c_str(), h.c, o.mult, o.dim_cap, seed, &h.t));
}

using Check = ctl_error (*)(ctl_twin*, char**);

// Twin verification first; anything but Holds is reported as the twin check.
int run_twin_check(const std::string& name, const Common& o, Check fn) {
  const uint64_t seed = seed_from_env();
  const auto t0 = std::chrono::steady_clock::now();
  TwinHandle h;
  open_twin(o, seed, h);
  char* out = nullptr;
  check(ctl_twin_verify(h.t, &out));
  const json tv = json::parse(take(out));
  if (tv["status"] != "holds" || !fn) {
    json r = make_report("check-twin", tv, o, seed, since(t0));
    if (tv.contains("certificate")) {
      json d = {{"W", tv["certificate"].value("W", json::array())},
                {"notes", tv["certificate"].value("notes", json::array())}};
      r["details"] = d;
    }
    return finish(o, r);
  }
  check(fn(h.t, &out));
  const json v = json::parse(take(out));
  return finish(o, make_report(name, v, o, seed, since(t0)));
}

void add_common(CLI::App* app, Common& o, bool twin) {
  app->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app->add_option("--report", o.report, "also write the JSON report here");
  if (!twin) return;
  app->add_option("--pairs", o.pairs, "pairs file")->required();
  app->add_option("--category", o.category, "category file (overrides the one named in the pairs file)");
  app->add_option("--bound-mult", o.mult, "max multiplicity in enumerated objects");
  app->add_option("--dim-cap", o.dim_cap, "max total dimension in enumerated objects");
}

int to_exit(ctl_error e) {
  switch (e) {
    case CTL_E_ARGUMENT:
    case CTL_E_IO:
      return usage;
    case CTL_E_REFUSED:
    case CTL_E_DECOMPOSITION:
    case CTL_E_STATE:
      return unknown;
    default:
      return internal;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cotorsion-lab: twin cotorsion pairs and their hearts"};
  app.require_subcommand(1);
  Common o;

  int n = 0, field_char = 2;
  std::string relations, out_path;
  auto* gen = app.add_subcommand("generate", "write a category file and print its indecomposables");
  gen->add_option("--n", n, "number of vertices")->required();
  gen->add_option("--relations", relations, "relations as a-b,c-d");
  gen->add_option("--char", field_char, "field characteristic");
  gen->add_option("--out", out_path, "category file to write");
  add_common(gen, o, false);

  auto* twin = app.add_subcommand("check-twin", "verify a twin cotorsion pair");
  add_common(twin, o, true);
  bool witnesses = false;
  auto* heart = app.add_subcommand("heart", "membership tables and heart classes");
  add_common(heart, o, true);
  heart->add_flag("--witnesses", witnesses, "include conflations and refutations");
  auto* integral = app.add_subcommand("check-integral", "decide integrality of the heart");
  add_common(integral, o, true);
  auto* abelian = app.add_subcommand("check-abelian", "decide abelianness of the heart");
  add_common(abelian, o, true);
  auto* probe = app.add_subcommand("probe", "search pullback squares for a non-epi leg");
  add_common(probe, o, true);
  std::string sa, sx, sy;
  auto* star = app.add_subcommand("star", "is every indecomposable of A an extension of X by Y");
  add_common(star, o, true);
  star->add_option("--a", sa, "class expression")->required();
  star->add_option("--x", sx, "class expression")->required();
  star->add_option("--y", sy, "class expression")->required();
  std::string cert_path;
  auto* replay = app.add_subcommand("replay", "revalidate a stored certificate or report");
  replay->add_option("certificate", cert_path, "certificate or report file")->required();
  add_common(replay, o, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : usage;
  }

  try {
    if (*gen) {
      const auto t0 = std::chrono::steady_clock::now();
      ctl_category* c = nullptr;
      check(ctl_category_generate(n, relations.c_str(), field_char, &c));
      char* text = nullptr;
      char* cen = nullptr;
      const ctl_error e1 = ctl_category_to_json(c, &text);
      const ctl_error e2 = ctl_category_census(c, &cen);
      ctl_category_free(c);
      check(e1);
      check(e2);
      const json file = json::parse(take(text));
      const json census = json::parse(take(cen));
      if (!out_path.empty()) write_atomic(out_path, file.dump(2) + "\n");
      json r = {{"schema", "cotorsion-lab/report"}, {"version", 1}, {"check", "generate"}, {"verdict", "holds"}};
      r["summary"] = std::to_string(census.size()) + " indecomposables";
      r["bounds"] = nullptr;
      r["seed"] = seed_from_env();
      r["timing_ms"] = since(t0);
      r["details"] = {{"category", file}, {"indecomposables", census}};
      return finish(o, r);
    }
    if (*twin) return run_twin_check("check-twin", o, nullptr);
    if (*heart) {
      const uint64_t seed = seed_from_env();
      const auto t0 = std::chrono::steady_clock::now();
      TwinHandle h;
      open_twin(o, seed, h);
      char* out = nullptr;
      check(ctl_twin_verify(h.t, &out));
      const json tv = json::parse(take(out));
      if (tv["status"] != "holds") return finish(o, make_report("check-twin", tv, o, seed, since(t0)));
      check(ctl_twin_heart(h.t, witnesses ? 1 : 0, &out));
      json r = make_report("heart", tv, o, seed, since(t0));
      r.erase("certificate");
      r["summary"] = "heart computed";
      r["details"] = json::parse(take(out));
      return finish(o, r);
    }
    if (*integral) return run_twin_check("check-integral", o, ctl_twin_check_integral);
    if (*abelian) return run_twin_check("check-abelian", o, ctl_twin_check_abelian);
    if (*probe) return run_twin_check("probe", o, ctl_twin_probe);
    if (*star) {
      const uint64_t seed = seed_from_env();
      const auto t0 = std::chrono::steady_clock::now();
      TwinHandle h;
      open_twin(o, seed, h);
      char* out = nullptr;
      check(ctl_twin_star(h.t, sa.c_str(), sx.c_str(), sy.c_str(), &out));
      json r = make_report("star", json::parse(take(out)), o, seed, since(t0));
      r["details"] = {{"a", sa}, {"x", sx}, {"y", sy}};
      return finish(o, r);
    }
    if (*replay) {
      const auto t0 = std::chrono::steady_clock::now();
      json doc = json::parse(slurp(cert_path));
      if (doc.value("schema", "") == "cotorsion-lab/report") {
        if (!doc.contains("certificate")) throw Failure{CTL_E_ARGUMENT, "report carries no certificate"};
        doc = doc["certificate"];
      }
      int ok = 0;
      char* why = nullptr;
      check(ctl_replay(doc.dump().c_str(), &ok, &why));
      const std::string reason = take(why);
      json r = {{"schema", "cotorsion-lab/report"}, {"version", 1}, {"check", "replay"}};
      r["verdict"] = ok ? "replayed" : "mismatch";
      r["summary"] = ok ? "certificate replays" : reason;
      r["bounds"] = nullptr;
      r["seed"] = seed_from_env();
      r["timing_ms"] = since(t0);
      r["details"] = {{"kind", doc.value("kind", "")}};
      return finish(o, r);
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.what << "\n";
    return to_exit(f.code);
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return internal;
  }
  return usage;
}
