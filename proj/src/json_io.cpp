#include "fls/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fls/error.hpp"

namespace fls {

namespace {

Interval read_pair(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array() || j[key].size() != 2)
    fail(ErrorCode::parse_error, std::string("field '") + key + "' must be a two-element array");
  return {parse_rational(j[key][0]), parse_rational(j[key][1])};
}

const json& field(const json& j, const char* key) {
  if (!j.contains(key)) fail(ErrorCode::parse_error, std::string("missing field '") + key + "'");
  return j[key];
}

}  // namespace

double parse_rational(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    const auto slash = s.find('/');
    try {
      std::size_t used = 0;
      if (slash == std::string::npos) {
        const double x = std::stod(s, &used);
        if (used == s.size()) return x;
      } else {
        const std::string a = s.substr(0, slash), b = s.substr(slash + 1);
        std::size_t ua = 0, ub = 0;
        const double num = std::stod(a, &ua), den = std::stod(b, &ub);
        if (ua == a.size() && ub == b.size() && den != 0.0) return num / den;
      }
    } catch (const std::exception&) {
    }
    fail(ErrorCode::parse_error, "cannot read '" + s + "' as a number or p/q");
  }
  fail(ErrorCode::parse_error, "expected a number or a p/q string");
}

SetDescriptor set_from_json(const json& j) {
  if (!j.is_object()) fail(ErrorCode::parse_error, "set must be a JSON object");
  const std::string type = field(j, "type").get<std::string>();
  if (type == "cantor") {
    const json& m = field(j, "branches");
    if (!m.is_number_integer()) fail(ErrorCode::parse_error, "branches must be an integer");
    return SetDescriptor::cantor(read_pair(j, "base_interval"), m.get<int>(),
                                 parse_rational(field(j, "contraction")));
  }
  if (type == "polyseq") return SetDescriptor::poly_sequence(parse_rational(field(j, "exponent")));
  if (type == "interval") {
    const Interval i = read_pair(j, "interval");
    return SetDescriptor::interval(i.lo, i.hi);
  }
  if (type == "points") {
    const json& p = field(j, "points");
    if (!p.is_array()) fail(ErrorCode::parse_error, "points must be an array");
    std::vector<double> pts;
    for (const auto& x : p) pts.push_back(parse_rational(x));
    return SetDescriptor::points(std::move(pts));
  }
  if (type == "union") {
    const json& s = field(j, "sets");
    if (!s.is_array()) fail(ErrorCode::parse_error, "sets must be an array");
    std::vector<SetDescriptor> members;
    for (const auto& m : s) members.push_back(set_from_json(m));
    return SetDescriptor::union_of(std::move(members));
  }
  fail(ErrorCode::parse_error, "unknown set type '" + type + "'");
}

json set_to_json(const SetDescriptor& set) {
  struct Visitor {
    json operator()(const CantorLike& c) const {
      return {{"type", "cantor"},
              {"base_interval", {c.base.lo, c.base.hi}},
              {"branches", c.branches},
              {"contraction", c.contraction}};
    }
    json operator()(const PolySequence& p) const { return {{"type", "polyseq"}, {"exponent", p.exponent}}; }
    json operator()(const FullInterval& f) const {
      return {{"type", "interval"}, {"interval", {f.range.lo, f.range.hi}}};
    }
    json operator()(const FinitePoints& f) const { return {{"type", "points"}, {"points", f.points}}; }
    json operator()(const SetUnion& u) const {
      json arr = json::array();
      for (const auto& m : u.members) arr.push_back(set_to_json(m));
      return {{"type", "union"}, {"sets", arr}};
    }
  };
  return std::visit(Visitor{}, set.variant());
}

SetDescriptor parse_set(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::parse_error, std::string("set JSON: ") + e.what());
  }
  try {
    return set_from_json(j);
  } catch (const json::exception& e) {
    fail(ErrorCode::parse_error, std::string("set JSON: ") + e.what());
  }
}

std::string set_label(const json& j) {
  if (j.is_object() && j.contains("name") && j["name"].is_string()) return j["name"].get<std::string>();
  if (j.is_object() && j.contains("type") && j["type"].is_string()) return j["type"].get<std::string>();
  return "set";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io_error, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::io_error, "cannot write '" + path + "'");
  out << text;
  if (!out) fail(ErrorCode::io_error, "write to '" + path + "' failed");
}

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string to_csv(const SampledFunction& f, const std::string& x_name, const std::string& y_name) {
  std::string out = x_name + "," + y_name + "\n";
  for (std::size_t i = 0; i < f.size(); ++i) out += fmt(f.node(i)) + "," + fmt(f.value(i)) + "\n";
  return out;
}

json to_json(const SampledFunction& f) {
  return {{"domain", {f.lo(), f.hi()}},
          {"step", f.step()},
          {"values", std::vector<double>(f.values().begin(), f.values().end())}};
}

}  // namespace fls
