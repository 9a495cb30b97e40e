#include "cotorsion/verdict.hpp"

#include "cotorsion/errors.hpp"

namespace ctl {

std::string to_string(Status s) {
  switch (s) {
    case Status::holds: return "holds";
    case Status::fails: return "fails";
    case Status::unknown: return "unknown";
  }
  return "unknown";
}

Status status_from_string(const std::string& s) {
  if (s == "holds") return Status::holds;
  if (s == "fails") return Status::fails;
  if (s == "unknown") return Status::unknown;
  throw ArgumentError("unknown verdict '" + s + "'");
}

void SearchBounds::validate() const {
  if (mult < 1) throw ArgumentError("bound mult must be >= 1");
  if (dim_cap < 1) throw ArgumentError("dim cap must be >= 1");
}

Verdict Verdict::make_holds(std::string route, std::string summary, json cert, SearchBounds b) {
  return {Status::holds, std::move(route), std::move(summary), std::move(cert), b};
}

Verdict Verdict::make_fails(std::string summary, json cert, SearchBounds b) {
  return {Status::fails, "", std::move(summary), std::move(cert), b};
}

Verdict Verdict::make_unknown(std::string summary, json cert, SearchBounds b) {
  return {Status::unknown, "", std::move(summary), std::move(cert), b};
}

json to_json(const SearchBounds& b) { return {{"mult", b.mult}, {"dim_cap", b.dim_cap}}; }

SearchBounds bounds_from_json(const json& j) {
  SearchBounds b;
  b.mult = j.value("mult", 2);
  b.dim_cap = j.value("dim_cap", 24);
  b.validate();
  return b;
}

json to_json(const Verdict& v) {
  json j = {{"status", to_string(v.status)}, {"summary", v.summary}};
  if (!v.route.empty()) j["route"] = v.route;
  j["bounds"] = to_json(v.bounds);
  if (!v.certificate.empty()) j["certificate"] = v.certificate;
  return j;
}

}  // namespace ctl
