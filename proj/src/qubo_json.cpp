#include "qrefine/qubo_json.hpp"

#include <charconv>

#include "json.hpp"
#include "qrefine/error.hpp"

namespace qrefine {
namespace {

std::size_t parse_index(std::string_view s, std::string_view field) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw Error(ErrorCode::kParse, std::string(field) + ": bad qubit index '" + std::string(s) + "'");
  }
  return v;
}

double coefficient(const nlohmann::json& v, std::string_view field) {
  if (!v.is_number()) throw Error(ErrorCode::kParse, std::string(field) + ": coefficient is not a number");
  return v.get<double>();
}

}  // namespace

std::string dump_qubo(const QuboMatrix& q) {
  nlohmann::ordered_json doc;
  doc["num_qubits"] = q.n_qubits();
  doc["linear"] = nlohmann::ordered_json::object();
  doc["quadratic"] = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < q.n_qubits(); ++i) doc["linear"][std::to_string(i)] = q.linear()[i];
  for (const auto& [pair, v] : q.quadratic()) {
    doc["quadratic"][std::to_string(pair.first) + "," + std::to_string(pair.second)] = v;
  }
  return doc.dump();
}

QuboMatrix parse_qubo(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::kParse, "document is not an object");
  if (!doc.contains("num_qubits") || !doc["num_qubits"].is_number_unsigned()) {
    throw Error(ErrorCode::kParse, "num_qubits: missing or not a non-negative integer");
  }
  const auto n = doc["num_qubits"].get<std::size_t>();
  std::vector<double> linear(n, 0.0);
  std::map<QubitPair, double> quadratic;
  if (doc.contains("linear")) {
    if (!doc["linear"].is_object()) throw Error(ErrorCode::kParse, "linear: not an object");
    for (const auto& [key, v] : doc["linear"].items()) {
      const std::size_t i = parse_index(key, "linear");
      if (i >= n) throw Error(ErrorCode::kParse, "linear: index " + key + " out of range");
      linear[i] = coefficient(v, "linear");
    }
  }
  if (doc.contains("quadratic")) {
    if (!doc["quadratic"].is_object()) throw Error(ErrorCode::kParse, "quadratic: not an object");
    for (const auto& [key, v] : doc["quadratic"].items()) {
      const auto comma = key.find(',');
      if (comma == std::string::npos) throw Error(ErrorCode::kParse, "quadratic: key '" + key + "' lacks a comma");
      const std::size_t i = parse_index(std::string_view(key).substr(0, comma), "quadratic");
      const std::size_t j = parse_index(std::string_view(key).substr(comma + 1), "quadratic");
      if (i >= j || j >= n) throw Error(ErrorCode::kParse, "quadratic: key '" + key + "' is not i<j<num_qubits");
      quadratic[{i, j}] = coefficient(v, "quadratic");
    }
  }
  return QuboMatrix(std::move(linear), std::move(quadratic));
}

}  // namespace qrefine
