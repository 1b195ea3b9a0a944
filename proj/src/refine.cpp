#include "qrefine/refine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qrefine/error.hpp"

namespace qrefine {
namespace {

class LevelRunner {
 public:
  LevelRunner(const LinearSystem& system, const WindowBuilder& builder, const Matrix* basis,
              const Sampler& sampler)
      : system_(system), builder_(builder), basis_(basis), sampler_(sampler) {}

  LevelResult run(const DyadicVector& start, int l, std::size_t k, const LevelOptions& options,
                  std::size_t first_ordinal) const {
    const EncodingSpec spec(system_.size(), l, l + static_cast<int>(k) - 1);
    LevelResult result{start, {}, false};
    DoubleDouble residual = residual_norm_sq(system_, start);
    for (std::size_t recenter = 0;; ++recenter) {
      if (recenter == options.max_recenters) {
        result.cap_reached = true;
        break;
      }
      const QuboMatrix qubo = builder_.build(result.center, spec);
      const SampleSet samples = sampler_.sample(qubo);

      IterationRecord rec;
      rec.ordinal = first_ordinal + result.records.size();
      rec.level = l;
      rec.recenter_index = recenter;
      rec.target_energy = (-residual).to_double();

      // The zero increment always has energy 0, so the candidate is the best
      // entry that actually moves; redundant encodings of zero are skipped.
      const Sample* candidate = nullptr;
      std::vector<std::int64_t> offsets;
      for (const Sample& s : samples.entries()) {
        auto o = decode_offsets(s.bits, spec);
        if (std::any_of(o.begin(), o.end(), [](std::int64_t v) { return v != 0; })) {
          candidate = &s;
          offsets = std::move(o);
          break;
        }
      }

      bool accepted = false;
      if (candidate != nullptr && candidate->energy < 0.0) {
        DyadicVector step = offsets_to_increment(offsets, spec);
        if (basis_ != nullptr) step = apply_basis(*basis_, step);
        DyadicVector moved = result.center + step;
        const DoubleDouble moved_residual = residual_norm_sq(system_, moved);
        if (moved_residual < residual) {
          accepted = true;
          rec.bits = canonical_bits(offsets, spec);
          rec.qubo_energy = candidate->energy;
          rec.occurrences = occurrences_at(samples, spec, offsets);
          result.center = std::move(moved);
          residual = moved_residual;
        }
      }
      if (!accepted) {
        const std::vector<std::int64_t> zero(spec.n_vars(), 0);
        rec.bits = BitVector(spec.n_qubits(), 0);
        rec.qubo_energy = 0.0;
        rec.occurrences = occurrences_at(samples, spec, zero);
      }
      rec.center_after = result.center;
      rec.residual_norm_sq = residual.to_double();
      if (options.truth) rec.error_vs_truth = error_vs_truth(result.center, *options.truth);
      if (options.observer) options.observer(rec, qubo, samples);
      result.records.push_back(std::move(rec));
      if (!accepted) break;
    }
    return result;
  }

 private:
  const LinearSystem& system_;
  const WindowBuilder& builder_;
  const Matrix* basis_;
  const Sampler& sampler_;
};

RefinementTrace run_refinement(const LinearSystem& system, const RefinementConfig& config,
                               const std::optional<Vector>& truth, const SolveObserver& observer,
                               const Matrix* basis) {
  const std::size_t n = system.size();
  config.validate(n);
  if (truth && truth->size() != n) throw Error(ErrorCode::kDimensionMismatch, "truth length differs from system size");

  const WindowBuilder builder = basis ? WindowBuilder(system, *basis) : WindowBuilder(system);
  const auto sampler = make_sampler(config.sampler);
  const LevelRunner runner(system, builder, basis, *sampler);

  const int k = static_cast<int>(config.bits_per_sign);
  const int step = static_cast<int>(config.step());
  const int m_max = config.m_max.value_or(default_m_max(system));

  RefinementTrace trace;
  trace.bits_per_sign = config.bits_per_sign;
  trace.initial_center = config.initial_center.value_or(DyadicVector(n));
  trace.final_center = trace.initial_center;
  LevelOptions options{config.max_recenters_per_level, truth, observer};

  auto tolerance_met = [&] {
    return residual_norm_sq(system, trace.final_center).to_double() <= config.residual_tolerance;
  };
  if (tolerance_met()) {
    trace.terminated_by = Termination::kResidualTolerance;
    return trace;
  }
  for (int l = m_max - k + 1; l >= config.l_min; l -= step) {
    LevelResult level = runner.run(trace.final_center, l, config.bits_per_sign, options, trace.records.size());
    trace.final_center = std::move(level.center);
    for (auto& r : level.records) trace.records.push_back(std::move(r));
    if (level.cap_reached) {
      trace.terminated_by = Termination::kRecenterCap;
      break;
    }
    if (tolerance_met()) {
      trace.terminated_by = Termination::kResidualTolerance;
      break;
    }
  }
  trace.total_qubo_solves = trace.records.size();
  return trace;
}

}  // namespace

std::string_view termination_name(Termination t) {
  switch (t) {
    case Termination::kLevelExhausted: return "level-exhausted";
    case Termination::kResidualTolerance: return "residual-tolerance";
    case Termination::kRecenterCap: return "recenter-cap";
  }
  return "unknown";
}

void RefinementConfig::validate(std::size_t n_vars) const {
  if (bits_per_sign < 1 || bits_per_sign > 30) throw Error(ErrorCode::kInvalidArgument, "bits_per_sign must be in [1, 30]");
  if (step() < 1) throw Error(ErrorCode::kInvalidArgument, "level_step must be >= 1");
  if (max_recenters_per_level < 1) throw Error(ErrorCode::kInvalidArgument, "max_recenters_per_level must be >= 1");
  if (!(residual_tolerance >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "residual_tolerance must be >= 0");
  if (m_max && *m_max < l_min) throw Error(ErrorCode::kInvalidArgument, "m_max must be >= l_min");
  if (initial_center && initial_center->size() != n_vars) {
    throw Error(ErrorCode::kDimensionMismatch, "initial center length differs from system size");
  }
  if (sampler.kind == SamplerKind::kExhaustive && 2 * bits_per_sign * n_vars > kExhaustiveQubitLimit) {
    throw Error(ErrorCode::kTooManyQubits, std::to_string(2 * bits_per_sign * n_vars) +
                                               " qubits per window exceed the exhaustive sampler's limit");
  }
  if (sampler.kind == SamplerKind::kAnneal) sampler.anneal.validate();
}

std::size_t occurrences_at(const SampleSet& samples, const EncodingSpec& spec,
                           const std::vector<std::int64_t>& offsets) {
  std::size_t total = 0;
  for (const Sample& s : samples.entries())
    if (decode_offsets(s.bits, spec) == offsets) total += s.occurrences;
  return total;
}

LevelResult recenter_level(const LinearSystem& system, const DyadicVector& center, int l, std::size_t k,
                           const Sampler& sampler, const LevelOptions& options) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
  if (center.size() != system.size()) throw Error(ErrorCode::kDimensionMismatch, "center length differs from system size");
  const WindowBuilder builder(system);
  return LevelRunner(system, builder, nullptr, sampler).run(center, l, k, options, 0);
}

RefinementTrace refine(const LinearSystem& system, const RefinementConfig& config,
                       const std::optional<Vector>& truth, const SolveObserver& observer) {
  if (config.use_eigenbasis) return refine_eigenbasis(system, config, truth, observer);
  return run_refinement(system, config, truth, observer, nullptr);
}

RefinementTrace refine_eigenbasis(const LinearSystem& system, const RefinementConfig& config,
                                  const std::optional<Vector>& truth, const SolveObserver& observer) {
  const EigenBasis eig = symmetric_eigen(gram(system.a));
  return run_refinement(system, config, truth, observer, &eig.vectors);
}

double error_vs_truth(const DyadicVector& center, const Vector& truth) {
  if (center.size() != truth.size()) throw Error(ErrorCode::kLengthMismatch, "truth length differs from center");
  DoubleDouble acc;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const DoubleDouble d = (center.component(i) - Dyadic::from_double(truth[i])).to_double_double();
    acc += d * d;
  }
  return sqrt(acc).to_double();
}

int default_m_max(const LinearSystem& system) {
  const EigenBasis eig = symmetric_eigen(gram(system.a));
  const double lambda_min = eig.values.back();
  if (!(lambda_min > 0.0)) throw Error(ErrorCode::kSingularMatrix, "A^T A has no positive smallest eigenvalue");
  const double bound = norm2(system.b) / std::sqrt(lambda_min);
  return static_cast<int>(std::ceil(std::log2(bound + 1.0))) + 1;
}

std::vector<std::size_t> level_end_indices(const RefinementTrace& trace) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < trace.records.size(); ++i) {
    if (i + 1 == trace.records.size() || trace.records[i + 1].level != trace.records[i].level) out.push_back(i);
  }
  return out;
}

}  // namespace qrefine
