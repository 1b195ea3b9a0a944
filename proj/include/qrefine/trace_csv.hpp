#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qrefine/refine.hpp"

namespace qrefine {

/// Shortest decimal that parses back to exactly `v`.
std::string format_double(double v);

/// Streams trace rows as they are produced. Columns: ordinal, level,
/// recenter_index, bits, qubo_energy, target_energy, residual_norm_sq,
/// error_vs_truth (empty without a truth), then c0..c{n-1} as exact decimals.
class TraceCsvWriter {
 public:
  TraceCsvWriter(std::ostream& out, std::size_t n_vars);
  void write(const IterationRecord& record);

 private:
  std::ostream& out_;
  std::size_t n_vars_;
};

void write_trace_csv(std::ostream& out, const RefinementTrace& trace);

/// Reads rows written by TraceCsvWriter. `occurrences` is not serialized
/// and reads back as 0. Throws kParse.
std::vector<IterationRecord> read_trace_csv(std::istream& in);

}  // namespace qrefine
