#include "cotorsion_lab.h"

#include <cstring>
#include <filesystem>
#include <memory>
#include <optional>
#include <sstream>

#include "cotorsion/codec.hpp"
#include "cotorsion/errors.hpp"
#include "cotorsion/heartcat.hpp"
#include "cotorsion/io.hpp"

struct ctl_category {
  ctl::Category c;
};

struct ctl_twin {
  ctl::PairsSpec spec;
  ctl::SearchBounds bounds;
  std::optional<ctl::Verdict> verified;
  ctl::TwinPair tp;
  std::unique_ptr<ctl::Heart> heart;
};

namespace {

thread_local std::string last_error;

struct StateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class F>
ctl_error guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return CTL_OK;
  } catch (const ctl::ArgumentError& e) {
    last_error = e.what();
    return CTL_E_ARGUMENT;
  } catch (const ctl::json::exception& e) {
    last_error = e.what();
    return CTL_E_ARGUMENT;
  } catch (const ctl::EnumerationRefused& e) {
    last_error = e.what();
    return CTL_E_REFUSED;
  } catch (const ctl::DecompositionInconclusive& e) {
    last_error = e.what();
    return CTL_E_DECOMPOSITION;
  } catch (const ctl::InternalConsistencyError& e) {
    last_error = e.what();
    return CTL_E_INTERNAL;
  } catch (const StateError& e) {
    last_error = e.what();
    return CTL_E_STATE;
  } catch (const std::filesystem::filesystem_error& e) {
    last_error = e.what();
    return CTL_E_IO;
  } catch (const std::exception& e) {
    last_error = e.what();
    return CTL_E_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void need(const void* p, const char* what) {
  if (!p) throw ctl::ArgumentError(std::string(what) + " is NULL");
}

std::vector<ctl::Interval> parse_relations(const std::string& text) {
  std::vector<ctl::Interval> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) throw ctl::ArgumentError("empty relation in '" + text + "'");
    const auto dash = item.find('-');
    if (dash == std::string::npos) throw ctl::ArgumentError("relation '" + item + "' is not of the form a-b");
    int lo = 0, hi = 0;
    try {
      size_t used = 0;
      lo = std::stoi(item.substr(0, dash), &used);
      if (used != dash) throw std::invalid_argument("");
      const std::string rest = item.substr(dash + 1);
      hi = std::stoi(rest, &used);
      if (used != rest.size()) throw std::invalid_argument("");
    } catch (const std::logic_error&) {
      throw ctl::ArgumentError("relation '" + item + "' is not of the form a-b");
    }
    out.push_back({lo, hi});
  }
  return out;
}

ctl::Verdict& ensure_verified(ctl_twin* t) {
  if (!t->verified) {
    const ctl::PairsSpec& p = t->spec;
    t->verified = ctl::verify_twin(p.category, p.S, p.T, p.U, p.V, t->bounds, &t->tp);
  }
  return *t->verified;
}

const ctl::Heart& ensure_heart(ctl_twin* t) {
  if (!t->heart) {
    const ctl::Verdict& v = ensure_verified(t);
    if (!v.holds()) throw StateError("twin verification is " + ctl::to_string(v.status) + ": " + v.summary);
    const ctl::Category& c = t->spec.category;
    t->heart = std::make_unique<ctl::Heart>(c, t->tp, ctl::compute_hearts(c, t->tp, t->bounds));
  }
  return *t->heart;
}

void emit(char** out, const ctl::json& j) {
  need(out, "output pointer");
  *out = dup(j.dump());
}

}  // namespace

extern "C" {

const char* ctl_last_error(void) { return last_error.c_str(); }
void ctl_string_free(char* s) { std::free(s); }
const char* ctl_version(void) { return "1"; }

ctl_error ctl_category_generate(int n, const char* relations, int field_char, ctl_category** out) {
  return guarded([&] {
    need(out, "output pointer");
    auto rels = parse_relations(relations ? relations : "");
    auto h = std::make_unique<ctl_category>();
    h->c = ctl::Category(ctl::Presentation(n, rels), ctl::Field(field_char));
    *out = h.release();
  });
}

ctl_error ctl_category_from_json(const char* text, ctl_category** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "output pointer");
    auto h = std::make_unique<ctl_category>();
    h->c = ctl::category_from_json(ctl::json::parse(text));
    *out = h.release();
  });
}

ctl_error ctl_category_to_json(const ctl_category* c, char** out) {
  return guarded([&] {
    need(c, "category");
    emit(out, ctl::category_json(c->c));
  });
}

ctl_error ctl_category_census(const ctl_category* c, char** out) {
  return guarded([&] {
    need(c, "category");
    emit(out, ctl::census(c->c));
  });
}

void ctl_category_set_seed(ctl_category* c, uint64_t seed) {
  if (c) c->c.set_seed(seed);
}

void ctl_category_free(ctl_category* c) { delete c; }

ctl_error ctl_twin_open(const char* pairs_text, const char* base_dir, const ctl_category* category, int bound_mult,
                        int dim_cap, uint64_t seed, ctl_twin** out) {
  return guarded([&] {
    need(pairs_text, "pairs text");
    need(out, "output pointer");
    ctl::SearchBounds b{bound_mult, dim_cap};
    b.validate();
    auto h = std::make_unique<ctl_twin>();
    h->spec = ctl::load_pairs(ctl::json::parse(pairs_text), base_dir ? base_dir : ".", category ? &category->c : nullptr);
    h->spec.category.set_seed(seed);
    h->bounds = b;
    *out = h.release();
  });
}

void ctl_twin_free(ctl_twin* t) { delete t; }

ctl_error ctl_twin_verify(ctl_twin* t, char** verdict) {
  return guarded([&] {
    need(t, "twin");
    emit(verdict, ctl::to_json(ensure_verified(t)));
  });
}

ctl_error ctl_twin_heart(ctl_twin* t, int with_witnesses, char** out) {
  return guarded([&] {
    need(t, "twin");
    const ctl::Heart& h = ensure_heart(t);
    emit(out, ctl::heart_json(h.category(), h.twin(), h.classes(), with_witnesses != 0));
  });
}

ctl_error ctl_twin_check_integral(ctl_twin* t, char** verdict) {
  return guarded([&] {
    need(t, "twin");
    emit(verdict, ctl::to_json(ctl::check_integral(ensure_heart(t), t->bounds)));
  });
}

ctl_error ctl_twin_check_abelian(ctl_twin* t, char** verdict) {
  return guarded([&] {
    need(t, "twin");
    emit(verdict, ctl::to_json(ctl::check_abelian(ensure_heart(t), t->bounds)));
  });
}

ctl_error ctl_twin_probe(ctl_twin* t, char** verdict) {
  return guarded([&] {
    need(t, "twin");
    emit(verdict, ctl::to_json(ctl::probe_integral_direct(ensure_heart(t), t->bounds)));
  });
}

ctl_error ctl_twin_star(ctl_twin* t, const char* a, const char* x, const char* y, char** verdict) {
  return guarded([&] {
    need(t, "twin");
    need(a, "a");
    need(x, "x");
    need(y, "y");
    const ctl::Category& c = t->spec.category;
    const auto& env = t->spec.classes;
    emit(verdict, ctl::to_json(ctl::subcat_in_star(c, ctl::parse_class(c, a, env), ctl::parse_class(c, x, env),
                                                   ctl::parse_class(c, y, env), t->bounds)));
  });
}

ctl_error ctl_replay(const char* certificate, int* ok, char** reason) {
  return guarded([&] {
    need(certificate, "certificate");
    need(ok, "ok");
    const std::string why = ctl::replay_certificate(ctl::json::parse(certificate));
    *ok = why.empty();
    if (reason) *reason = dup(why);
  });
}

}  // extern "C"
