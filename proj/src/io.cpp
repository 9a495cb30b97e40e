#include "cotorsion/io.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "cotorsion/codec.hpp"
#include "cotorsion/errors.hpp"

namespace ctl {

namespace fs = std::filesystem;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ArgumentError(path + ": " + e.what());
  }
}

void write_text_file_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw ArgumentError("cannot write " + path);
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
  }
  fs::rename(tmp, path);
}

namespace {

class ExprParser {
 public:
  ExprParser(const Category& c, std::string text, const std::map<std::string, Subcategory>& env)
      : c_(c), s_(std::move(text)), env_(env) {}

  Subcategory parse() {
    Subcategory out = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return out;
  }

 private:
  const Category& c_;
  std::string s_;
  const std::map<std::string, Subcategory>& env_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ArgumentError("bad subcategory expression '" + s_ + "': " + what + " at offset " + std::to_string(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char ch) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char ch) {
    if (!eat(ch)) fail(std::string("expected '") + ch + "'");
  }

  Subcategory interval_literal() {
    skip();
    const size_t start = pos_;
    if (s_[pos_] == '[') {
      while (pos_ < s_.size() && s_[pos_] != ']') ++pos_;
      if (pos_ == s_.size()) fail("unterminated interval");
      ++pos_;
    } else {
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/')) ++pos_;
    }
    const Interval iv = Interval::parse(s_.substr(start, pos_ - start));
    return Subcategory(c_, {c_.id(iv)}, iv.str());
  }

  std::vector<Subcategory> args() {
    std::vector<Subcategory> out;
    expect('(');
    if (eat(')')) return out;
    do {
      out.push_back(expr());
    } while (eat(','));
    expect(')');
    return out;
  }

  Subcategory expr() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char ch = s_[pos_];
    if (ch == '[' || std::isdigit(static_cast<unsigned char>(ch))) return interval_literal();
    if (!std::isalpha(static_cast<unsigned char>(ch)) && ch != '_') fail("unexpected character");
    const size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    const std::string id = s_.substr(start, pos_ - start);
    skip();
    const bool call = pos_ < s_.size() && s_[pos_] == '(';
    if (!call) {
      if (auto it = env_.find(id); it != env_.end()) return it->second;
      if (id == "all") return everything(c_);
      if (id == "proj") return projectives(c_);
      if (id == "inj") return injectives(c_);
      if (id == "zero") return zero_class(c_);
      fail("unknown name '" + id + "'");
    }
    auto a = args();
    auto need = [&](size_t k) {
      if (a.size() != k) fail(id + " takes " + std::to_string(k) + " argument(s)");
    };
    if (id == "add") {
      Subcategory out = zero_class(c_);
      for (const auto& x : a) out = oplus(out, x);
      return out.named("add(...)");
    }
    if (id == "rperp") return need(1), right_perp(c_, a[0]);
    if (id == "lperp") return need(1), left_perp(c_, a[0]);
    if (id == "inter") return need(2), inter(a[0], a[1]);
    if (id == "oplus") return need(2), oplus(a[0], a[1]);
    if (id == "minus") return need(2), minus(a[0], a[1]);
    fail("unknown function '" + id + "'");
  }
};

Subcategory class_from_json(const Category& c, const json& def, const std::map<std::string, Subcategory>& env) {
  if (def.is_string()) return parse_class(c, def.get<std::string>(), env);
  if (!def.is_array()) throw ArgumentError("subcategory must be a list of intervals or an expression string");
  std::vector<int> ids;
  for (const auto& item : def) {
    if (!item.is_string()) throw ArgumentError("subcategory list entries must be strings");
    const Subcategory part = parse_class(c, item.get<std::string>(), env);
    ids.insert(ids.end(), part.ids().begin(), part.ids().end());
  }
  return Subcategory(c, ids);
}

}  // namespace

Subcategory parse_class(const Category& c, const std::string& expr, const std::map<std::string, Subcategory>& env) {
  return ExprParser(c, expr, env).parse();
}

PairsSpec load_pairs(const json& j, const std::string& base_dir, const Category* category) {
  try {
    if (j.contains("schema") && j.at("schema") != "cotorsion-lab/pairs") throw ArgumentError("not a pairs file");
    if (j.contains("version") && j.at("version").get<int>() != schema_version)
      throw ArgumentError("unsupported pairs schema version");
    PairsSpec p;
    p.name = j.value("name", std::string());
    if (category) {
      p.category = *category;
    } else if (!j.contains("category")) {
      throw ArgumentError("pairs file names no category and none was given");
    } else if (j.at("category").is_string()) {
      fs::path path = j.at("category").get<std::string>();
      if (path.is_relative()) path = fs::path(base_dir) / path;
      p.category = category_from_json(read_json_file(path.string()));
    } else {
      p.category = category_from_json(j.at("category"));
    }
    const Category& c = p.category;
    const json& defs = j.at("subcategories");
    if (!defs.is_object()) throw ArgumentError("subcategories must be an object");
    p.source = defs;

    // Definitions may refer to each other in any order.
    std::set<std::string> busy;
    std::function<const Subcategory&(const std::string&)> resolve = [&](const std::string& name) -> const Subcategory& {
      if (auto it = p.classes.find(name); it != p.classes.end()) return it->second;
      if (!busy.insert(name).second) throw ArgumentError("cyclic subcategory definition at " + name);
      std::map<std::string, Subcategory> env;
      // pull in every other definition this one might mention
      const json& def = defs.at(name);
      std::vector<std::string> texts;
      if (def.is_string()) texts.push_back(def.get<std::string>());
      if (def.is_array())
        for (const auto& item : def)
          if (item.is_string()) texts.push_back(item.get<std::string>());
      for (const auto& [other, _] : defs.items()) {
        if (other == name) continue;
        const bool mentioned = std::any_of(texts.begin(), texts.end(), [&](const std::string& t) {
          for (size_t at = t.find(other); at != std::string::npos; at = t.find(other, at + 1)) {
            const bool left = at == 0 || !std::isalnum(static_cast<unsigned char>(t[at - 1]));
            const size_t end = at + other.size();
            const bool right = end == t.size() || !std::isalnum(static_cast<unsigned char>(t[end]));
            if (left && right) return true;
          }
          return false;
        });
        if (mentioned) env.emplace(other, resolve(other));
      }
      Subcategory sc = class_from_json(c, def, env);
      sc.named(name);
      busy.erase(name);
      return p.classes.emplace(name, std::move(sc)).first->second;
    };
    for (const auto& [name, _] : defs.items()) resolve(name);
    for (const char* need : {"S", "T", "U", "V"})
      if (!p.classes.count(need)) throw ArgumentError(std::string("pairs file lacks subcategory ") + need);
    p.S = p.classes.at("S");
    p.T = p.classes.at("T");
    p.U = p.classes.at("U");
    p.V = p.classes.at("V");
    p.expect = j.value("expect", json::object());
    return p;
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("malformed pairs file: ") + e.what());
  }
}

PairsSpec load_pairs_file(const std::string& path, const Category* category) {
  return load_pairs(read_json_file(path), fs::path(path).parent_path().string(), category);
}

json canonical_pairs_json(const PairsSpec& p) {
  json defs = json::object();
  for (const char* name : {"S", "T", "U", "V"}) defs[name] = ids_json(p.category, p.classes.at(name).ids());
  for (const auto& [name, sc] : p.classes)
    if (!defs.contains(name)) defs[name] = ids_json(p.category, sc.ids());
  json out = {{"schema", "cotorsion-lab/pairs"}, {"version", schema_version}};
  if (!p.name.empty()) out["name"] = p.name;
  out["category"] = category_json(p.category);
  out["subcategories"] = defs;
  if (!p.expect.empty()) out["expect"] = p.expect;
  return out;
}

}  // namespace ctl
