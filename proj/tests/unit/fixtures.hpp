#pragma once

#include <string>

#include "cotorsion/io.hpp"

inline std::string fixture(const std::string& name) { return std::string(CTL_FIXTURE_DIR) + "/" + name; }

inline const ctl::PairsSpec& spec(const std::string& name) {
  static std::map<std::string, ctl::PairsSpec> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, ctl::load_pairs_file(fixture(name + ".json"))).first;
  return it->second;
}
