#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qrefine/encoding.hpp"
#include "qrefine/qubo.hpp"

namespace qrefine {

struct Sample {
  BitVector bits;
  double energy = 0.0;
  std::size_t occurrences = 0;

  friend bool operator==(const Sample&, const Sample&) = default;
};

/// Distinct states sorted by (energy, bits lexicographically).
class SampleSet {
 public:
  SampleSet() = default;
  explicit SampleSet(std::vector<Sample> entries);

  const std::vector<Sample>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  const Sample& best() const { return entries_.front(); }
  std::size_t total_occurrences() const;
  /// Reads whose energy lies within `tolerance` of `target`.
  std::size_t occurrences_near(double target, double tolerance) const;

  friend bool operator==(const SampleSet&, const SampleSet&) = default;

 private:
  std::vector<Sample> entries_;
};

/// Every one of the 2^n states once. Throws kTooManyQubits above 24 qubits.
SampleSet sample_exhaustive(const QuboMatrix& q);
inline constexpr std::size_t kExhaustiveQubitLimit = 24;

struct AnnealConfig {
  std::size_t reads = 1000;
  std::size_t sweeps = 100;
  // Absolute inverse temperatures; unset means 0.05 / E and 1e4 / E with
  // E = max |coefficient| of the QUBO being sampled.
  std::optional<double> beta_start;
  std::optional<double> beta_end;
  std::uint64_t seed = 0;
  // Reads are split across threads; results do not depend on this.
  unsigned threads = 1;

  /// Throws kInvalidArgument.
  void validate() const;
};

/// Single-bit-flip Metropolis sweeps under a geometric beta schedule. Read r
/// uses its own generator seeded from (seed, r).
SampleSet sample_anneal(const QuboMatrix& q, const AnnealConfig& config);

class Sampler {
 public:
  virtual ~Sampler() = default;
  virtual SampleSet sample(const QuboMatrix& q) const = 0;
  virtual std::string name() const = 0;
  virtual bool deterministic() const = 0;
};

class ExhaustiveSampler final : public Sampler {
 public:
  SampleSet sample(const QuboMatrix& q) const override { return sample_exhaustive(q); }
  std::string name() const override { return "exhaustive"; }
  bool deterministic() const override { return true; }
};

class AnnealSampler final : public Sampler {
 public:
  explicit AnnealSampler(AnnealConfig config) : config_(config) { config_.validate(); }
  SampleSet sample(const QuboMatrix& q) const override { return sample_anneal(q, config_); }
  std::string name() const override { return "sa"; }
  bool deterministic() const override { return false; }
  const AnnealConfig& config() const { return config_; }

 private:
  AnnealConfig config_;
};

enum class SamplerKind { kExhaustive, kAnneal };

struct SamplerConfig {
  SamplerKind kind = SamplerKind::kExhaustive;
  AnnealConfig anneal;
};

std::unique_ptr<Sampler> make_sampler(const SamplerConfig& config);

}  // namespace qrefine
