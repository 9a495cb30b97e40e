#pragma once

#include <string>

#include "json.hpp"

namespace ctl {

using json = nlohmann::ordered_json;

enum class Status { holds, fails, unknown };

std::string to_string(Status s);
Status status_from_string(const std::string& s);

struct SearchBounds {
  int mult = 2;      // max multiplicity of an indecomposable in an enumerated object
  int dim_cap = 24;  // max total dimension of an enumerated module

  void validate() const;  // throws ArgumentError
  bool operator==(const SearchBounds&) const = default;
};

// Fails always carries a certificate; Holds names the route that makes it
// definitive; Unknown means "nothing found within bounds".
struct Verdict {
  Status status = Status::unknown;
  std::string route;
  std::string summary;
  json certificate = json::object();
  SearchBounds bounds;

  bool holds() const noexcept { return status == Status::holds; }
  bool fails() const noexcept { return status == Status::fails; }
  bool unknown() const noexcept { return status == Status::unknown; }

  static Verdict make_holds(std::string route, std::string summary, json cert, SearchBounds b);
  static Verdict make_fails(std::string summary, json cert, SearchBounds b);
  static Verdict make_unknown(std::string summary, json cert, SearchBounds b);
};

json to_json(const SearchBounds& b);
SearchBounds bounds_from_json(const json& j);
json to_json(const Verdict& v);

}  // namespace ctl
