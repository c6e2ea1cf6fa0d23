#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "quatpick/cli.hpp"

namespace quatpick::cli {

using nlohmann::json;

namespace {

std::string line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("syntax error at " + line_col(text, e.byte) + ": " + e.what());
  }
}

double number(const json& v, const std::string& field) {
  if (!v.is_number()) throw SchemaError("field " + field + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw SchemaError("field " + field + ": number is not finite");
  return d;
}

Quaternion quaternion(const json& v, const std::string& field) {
  if (v.is_number()) return number(v, field);
  if (!v.is_array() || v.size() != 4) throw SchemaError("field " + field + ": expected [w, x, y, z]");
  return {number(v[0], field + "[0]"), number(v[1], field + "[1]"), number(v[2], field + "[2]"),
          number(v[3], field + "[3]")};
}

std::vector<Quaternion> quaternion_list(const json& root, const std::string& key) {
  if (!root.contains(key)) throw SchemaError("field " + key + ": missing");
  const json& a = root.at(key);
  if (!a.is_array()) throw SchemaError("field " + key + ": expected a list");
  std::vector<Quaternion> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(quaternion(a[i], key + "[" + std::to_string(i) + "]"));
  return out;
}

std::uint64_t count(const json& v, const std::string& field) {
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw SchemaError("field " + field + ": expected a non-negative integer");
  return v.get<std::uint64_t>();
}

bool boolean(const json& v, const std::string& field) {
  if (!v.is_boolean()) throw SchemaError("field " + field + ": expected true or false");
  return v.get<bool>();
}

Expectation expectation(const json& e) {
  if (!e.is_object()) throw SchemaError("field expect: expected an object");
  Expectation x;
  if (e.contains("solvable")) x.solvable = boolean(e["solvable"], "expect.solvable");
  if (e.contains("determinate")) x.determinate = boolean(e["determinate"], "expect.determinate");
  if (e.contains("rank")) x.rank = count(e["rank"], "expect.rank");
  if (e.contains("exit")) x.exit_code = static_cast<int>(count(e["exit"], "expect.exit"));
  if (e.contains("values")) {
    const json& vs = e["values"];
    if (!vs.is_array()) throw SchemaError("field expect.values: expected a list");
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const std::string f = "expect.values[" + std::to_string(i) + "]";
      if (!vs[i].is_object() || !vs[i].contains("at") || !vs[i].contains("value"))
        throw SchemaError("field " + f + ": expected {at, value}");
      ValueExpectation v;
      v.at = quaternion(vs[i]["at"], f + ".at");
      v.value = quaternion(vs[i]["value"], f + ".value");
      if (vs[i].contains("tol")) v.tol = number(vs[i]["tol"], f + ".tol");
      x.values.push_back(v);
    }
  }
  return x;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

ProblemFile parse_problem(const std::string& text) {
  const json root = parse_json(text);
  if (!root.is_object()) throw SchemaError("top level: expected an object");
  ProblemFile f;
  auto nodes = quaternion_list(root, "nodes");
  auto targets = quaternion_list(root, "targets");
  if (nodes.empty()) throw SchemaError("field nodes: at least one node is required");
  if (nodes.size() != targets.size()) throw SchemaError("field targets: length differs from nodes");
  try {
    f.problem = Problem(std::move(nodes), std::move(targets));
  } catch (const DomainError& e) {
    throw SchemaError(std::string("field nodes: ") + e.what());
  }
  if (root.contains("options")) {
    const json& o = root["options"];
    if (!o.is_object()) throw SchemaError("field options: expected an object");
    if (o.contains("truncation")) {
      const auto t = count(o["truncation"], "options.truncation");
      if (t < 1 || t > 4096) throw SchemaError("field options.truncation: must lie in [1, 4096]");
      f.truncation = t;
    }
    if (o.contains("psd_tol")) {
      const json& t = o["psd_tol"];
      if (!(t.is_string() && t.get<std::string>() == "auto")) {
        const double v = number(t, "options.psd_tol");
        if (v < 0.0) throw SchemaError("field options.psd_tol: must be non-negative or \"auto\"");
        f.psd_tol = v;
      }
    }
    if (o.contains("seed")) f.seed = count(o["seed"], "options.seed");
  }
  if (root.contains("expect")) f.expect = expectation(root["expect"]);
  return f;
}

ProblemFile load_problem(const std::filesystem::path& path) { return parse_problem(slurp(path)); }

QSeries parse_coefficients(const std::string& text) {
  const json root = parse_json(text);
  const json* list = &root;
  if (root.is_object()) {
    if (!root.contains("coefficients")) throw SchemaError("field coefficients: missing");
    list = &root["coefficients"];
  }
  if (!list->is_array() || list->empty()) throw SchemaError("field coefficients: expected a non-empty list");
  std::vector<Quaternion> c;
  for (std::size_t i = 0; i < list->size(); ++i)
    c.push_back(quaternion((*list)[i], "coefficients[" + std::to_string(i) + "]"));
  return QSeries(std::move(c));
}

std::vector<Quaternion> sample_ball(std::mt19937_64& rng, std::size_t count, double radius) {
  std::uniform_real_distribution<double> u(-radius, radius);
  std::vector<Quaternion> out;
  out.reserve(count);
  while (out.size() < count) {
    const Quaternion q(u(rng), u(rng), u(rng), u(rng));
    if (abs(q) < radius) out.push_back(q);
  }
  return out;
}

}  // namespace quatpick::cli
