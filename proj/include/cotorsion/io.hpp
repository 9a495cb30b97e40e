#pragma once

// Pairs files: four named subcategories S, T, U, V over a category, each a
// list of interval strings or an expression in the other names:
//   add(...), rperp(X), lperp(X), inter(X,Y), oplus(X,Y), minus(X,Y),
//   all, proj, inj, zero, a bare interval, or another name.

#include <map>
#include <string>

#include "cotorsion/subcat.hpp"

namespace ctl {

struct PairsSpec {
  std::string name;
  Category category;
  Subcategory S, T, U, V;
  std::map<std::string, Subcategory> classes;  // every named definition
  json expect = json::object();
  json source;  // the definitions as written
};

json read_json_file(const std::string& path);
void write_text_file_atomic(const std::string& path, const std::string& text);

// `base_dir` resolves a category given as a relative path.
PairsSpec load_pairs(const json& j, const std::string& base_dir = ".", const Category* category = nullptr);
PairsSpec load_pairs_file(const std::string& path, const Category* category = nullptr);

Subcategory parse_class(const Category& c, const std::string& expr, const std::map<std::string, Subcategory>& env);

// The same spec with the definitions replaced by explicit id lists and the
// category inlined; re-parses to an equal spec.
json canonical_pairs_json(const PairsSpec& p);

}  // namespace ctl
