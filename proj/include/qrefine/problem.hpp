#pragma once

#include <filesystem>
#include <optional>
#include <string_view>

#include "qrefine/linalg.hpp"

namespace qrefine {

/// {"a": [[...], ...], "b": [...], "x_true": [...]?}
struct ProblemDocument {
  LinearSystem system;
  std::optional<Vector> x_true;
};

/// Strict parse: unknown keys, non-numeric entries, ragged or non-square
/// matrices and trailing garbage are all kParse errors naming the field.
ProblemDocument parse_problem(std::string_view text);
ProblemDocument load_problem(const std::filesystem::path& path);

}  // namespace qrefine
