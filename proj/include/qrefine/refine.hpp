#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "qrefine/dyadic.hpp"
#include "qrefine/encoding.hpp"
#include "qrefine/linalg.hpp"
#include "qrefine/qubo.hpp"
#include "qrefine/samplers.hpp"

namespace qrefine {

struct RefinementConfig {
  /// Highest exponent of the first window; unset means default_m_max().
  std::optional<int> m_max;
  int l_min = -40;
  std::size_t bits_per_sign = 1;
  /// Unset means bits_per_sign.
  std::optional<std::size_t> level_step;
  std::size_t max_recenters_per_level = 1000;
  double residual_tolerance = 0.0;
  bool use_eigenbasis = false;
  SamplerConfig sampler;
  std::optional<DyadicVector> initial_center;

  std::size_t step() const { return level_step.value_or(bits_per_sign); }
  /// Throws kInvalidArgument.
  void validate(std::size_t n_vars) const;
};

/// One QUBO solve.
struct IterationRecord {
  std::size_t ordinal = 0;
  int level = 0;  // window low edge l; the window is [l, l + k - 1]
  std::size_t recenter_index = 0;
  BitVector bits;  // canonical representative of the chosen point
  double qubo_energy = 0.0;
  double target_energy = 0.0;  // -||b - A c|| ^2 for the center the QUBO was built around
  DyadicVector center_after;
  double residual_norm_sq = 0.0;
  std::optional<double> error_vs_truth;
  std::size_t occurrences = 0;  // sampler reads that landed on the chosen point

  bool moved() const { return qubo_energy < 0.0; }
};

enum class Termination { kLevelExhausted, kResidualTolerance, kRecenterCap };
std::string_view termination_name(Termination t);

struct RefinementTrace {
  std::vector<IterationRecord> records;
  DyadicVector initial_center;
  DyadicVector final_center;
  std::size_t total_qubo_solves = 0;
  Termination terminated_by = Termination::kLevelExhausted;
  std::size_t bits_per_sign = 1;
};

/// Called after every solve with the record, the QUBO and what the sampler
/// returned for it.
using SolveObserver = std::function<void(const IterationRecord&, const QuboMatrix&, const SampleSet&)>;

struct LevelOptions {
  std::size_t max_recenters = 1000;
  std::optional<Vector> truth;
  SolveObserver observer;
};

struct LevelResult {
  DyadicVector center;
  std::vector<IterationRecord> records;
  bool cap_reached = false;
};

/// Re-centers at one window [l, l + k - 1] until the zero increment is
/// optimal. A move is taken only if its energy is negative and the exact
/// residual strictly drops.
LevelResult recenter_level(const LinearSystem& system, const DyadicVector& center, int l, std::size_t k,
                           const Sampler& sampler, const LevelOptions& options = {});

RefinementTrace refine(const LinearSystem& system, const RefinementConfig& config,
                       const std::optional<Vector>& truth = std::nullopt, const SolveObserver& observer = {});

/// Same loop with increments along the unit eigenvectors of A^T A. Centers
/// in the trace stay in the original coordinates.
RefinementTrace refine_eigenbasis(const LinearSystem& system, const RefinementConfig& config,
                                  const std::optional<Vector>& truth = std::nullopt,
                                  const SolveObserver& observer = {});

/// Reads whose bits decode to `offsets`; redundant encodings of one point
/// count together.
std::size_t occurrences_at(const SampleSet& samples, const EncodingSpec& spec,
                           const std::vector<std::int64_t>& offsets);

/// 2-norm distance, from exact differences.
double error_vs_truth(const DyadicVector& center, const Vector& truth);

/// ceil(log2(||b|| / sigma_min(A) + 1)) + 1, which bounds log2 |x|.
int default_m_max(const LinearSystem& system);

/// Index of the last record of each level, in run order.
std::vector<std::size_t> level_end_indices(const RefinementTrace& trace);

}  // namespace qrefine
