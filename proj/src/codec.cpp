#include "cotorsion/codec.hpp"

#include "cotorsion/errors.hpp"

namespace ctl {

json category_json(const Category& c) {
  json rels = json::array();
  for (const Interval& r : c.presentation().relations()) rels.push_back({r.lo, r.hi});
  return {{"schema", "cotorsion-lab/category"},
          {"version", schema_version},
          {"kind", "nakayama_linear"},
          {"n", c.n()},
          {"relations", rels},
          {"field_char", c.field().p()}};
}

Category category_from_json(const json& j) {
  try {
    if (j.contains("schema") && j.at("schema") != "cotorsion-lab/category")
      throw ArgumentError("not a category file");
    if (j.contains("version") && j.at("version").get<int>() != schema_version)
      throw ArgumentError("unsupported category schema version");
    if (j.value("kind", std::string("nakayama_linear")) != "nakayama_linear")
      throw ArgumentError("only kind nakayama_linear is supported");
    std::vector<Interval> rels;
    for (const auto& r : j.value("relations", json::array())) {
      if (r.is_string()) {
        rels.push_back(Interval::parse(r.get<std::string>()));
      } else {
        if (!r.is_array() || r.size() != 2) throw ArgumentError("relation must be [a,b]");
        rels.push_back({r[0].get<int>(), r[1].get<int>()});
      }
    }
    return Category(Presentation(j.at("n").get<int>(), rels), Field(j.value("field_char", 2)));
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("malformed category: ") + e.what());
  }
}

json obj_json(const Category& c, const Obj& o) {
  json out = json::array();
  for (int x : o) out.push_back(c.name(x));
  return out;
}

Obj obj_from_json(const Category& c, const json& j) {
  if (!j.is_array()) throw ArgumentError("object must be a list of intervals");
  Obj o;
  for (const auto& s : j) o.push_back(c.id(Interval::parse(s.get<std::string>())));
  return o;
}

json ids_json(const Category& c, const std::vector<int>& ids) { return obj_json(c, ids); }

json matrix_json(const Matrix& m) {
  json out = json::array();
  for (const auto& row : m.to_rows()) out.push_back(row);
  return out;
}

Matrix matrix_from_json(const json& j, int rows, int cols) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows) throw ArgumentError("matrix has the wrong row count");
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols)
      throw ArgumentError("matrix has the wrong column count");
    for (int c = 0; c < cols; ++c) m(r, c) = j[r][c].get<int>();
  }
  return m;
}

json morphism_json(const Category& c, const ObjMorphism& f) {
  return {{"src", obj_json(c, f.src)}, {"dst", obj_json(c, f.dst)}, {"coef", matrix_json(f.coef)}};
}

ObjMorphism morphism_from_json(const Category& c, const json& j) {
  try {
    ObjMorphism f;
    f.src = obj_from_json(c, j.at("src"));
    f.dst = obj_from_json(c, j.at("dst"));
    f.coef = matrix_from_json(j.at("coef"), static_cast<int>(f.dst.size()), static_cast<int>(f.src.size()));
    c.validate(f);
    return f;
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("malformed morphism: ") + e.what());
  }
}

json ses_json(const Category& c, const ObjSES& s) {
  return {{"sub", obj_json(c, s.i.src)},
          {"mid", obj_json(c, s.i.dst)},
          {"quot", obj_json(c, s.p.dst)},
          {"i", matrix_json(s.i.coef)},
          {"p", matrix_json(s.p.coef)}};
}

ObjSES ses_from_json(const Category& c, const json& j) {
  try {
    const Obj a = obj_from_json(c, j.at("sub"));
    const Obj b = obj_from_json(c, j.at("mid"));
    const Obj d = obj_from_json(c, j.at("quot"));
    ObjSES s{{a, b, matrix_from_json(j.at("i"), static_cast<int>(b.size()), static_cast<int>(a.size()))},
             {b, d, matrix_from_json(j.at("p"), static_cast<int>(d.size()), static_cast<int>(b.size()))}};
    c.validate(s.i);
    c.validate(s.p);
    return s;
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("malformed conflation: ") + e.what());
  }
}

}  // namespace ctl
