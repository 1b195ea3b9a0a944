#include "qrefine/problem.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "qrefine/error.hpp"

namespace qrefine {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::kParse, field + ": " + why);
}

Vector number_array(const json& v, const std::string& field) {
  if (!v.is_array()) fail(field, "expected an array of numbers");
  if (v.empty()) fail(field, "must not be empty");
  Vector out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) fail(field + "[" + std::to_string(i) + "]", "expected a number");
    out.push_back(v[i].get<double>());
  }
  return out;
}

}  // namespace

ProblemDocument parse_problem(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("document", "expected an object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "a" && key != "b" && key != "x_true") fail(key, "unknown field");
  }
  if (!doc.contains("a")) fail("a", "missing");
  if (!doc.contains("b")) fail("b", "missing");

  const json& a = doc["a"];
  if (!a.is_array() || a.empty()) fail("a", "expected a non-empty array of rows");
  const std::size_t n = a.size();
  std::vector<double> entries;
  entries.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::string field = "a[" + std::to_string(r) + "]";
    Vector row = number_array(a[r], field);
    if (row.size() != n) fail(field, "has " + std::to_string(row.size()) + " entries; the matrix must be " +
                                         std::to_string(n) + "x" + std::to_string(n));
    entries.insert(entries.end(), row.begin(), row.end());
  }
  Vector b = number_array(doc["b"], "b");
  if (b.size() != n) fail("b", "length " + std::to_string(b.size()) + " differs from matrix size " + std::to_string(n));

  ProblemDocument out{LinearSystem(Matrix(n, n, std::move(entries)), std::move(b)), std::nullopt};
  if (doc.contains("x_true")) {
    Vector x = number_array(doc["x_true"], "x_true");
    if (x.size() != n) fail("x_true", "length differs from matrix size");
    out.x_true = std::move(x);
  }
  return out;
}

ProblemDocument load_problem(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParse, path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

}  // namespace qrefine
