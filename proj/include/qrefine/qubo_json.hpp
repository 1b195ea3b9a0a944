#pragma once

#include <string>
#include <string_view>

#include "qrefine/qubo.hpp"

namespace qrefine {

/// {"num_qubits":N,"linear":{"<i>":c},"quadratic":{"<i>,<j>":c}}, compact,
/// keys in ascending qubit order, shortest round-trip float formatting.
std::string dump_qubo(const QuboMatrix& q);

/// Inverse of dump_qubo; missing linear keys read as 0. Throws kParse.
QuboMatrix parse_qubo(std::string_view text);

}  // namespace qrefine
