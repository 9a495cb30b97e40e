#pragma once

// JSON encodings of category data. Objects are lists of interval strings,
// morphisms carry their coefficient matrices, conflations carry both maps.

#include <vector>

#include "cotorsion/serialcat.hpp"
#include "cotorsion/verdict.hpp"

namespace ctl {

inline constexpr int schema_version = 1;

json category_json(const Category& c);
Category category_from_json(const json& j);  // accepts the file form

json obj_json(const Category& c, const Obj& o);
Obj obj_from_json(const Category& c, const json& j);
json ids_json(const Category& c, const std::vector<int>& ids);

json morphism_json(const Category& c, const ObjMorphism& f);
ObjMorphism morphism_from_json(const Category& c, const json& j);

json ses_json(const Category& c, const ObjSES& s);
ObjSES ses_from_json(const Category& c, const json& j);

json matrix_json(const Matrix& m);
Matrix matrix_from_json(const json& j, int rows, int cols);

}  // namespace ctl
