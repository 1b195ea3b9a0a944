#include "qrefine/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <thread>

#include "qrefine/error.hpp"

namespace qrefine {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

SampleSet from_counts(const QuboMatrix& q, std::map<BitVector, std::size_t> counts) {
  std::vector<Sample> entries;
  entries.reserve(counts.size());
  for (auto& [bits, n] : counts) {
    const double e = energy(q, bits);
    entries.push_back(Sample{bits, e, n});
  }
  return SampleSet(std::move(entries));
}

struct Neighbor {
  std::size_t index;
  double weight;
};

}  // namespace

SampleSet::SampleSet(std::vector<Sample> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(), [](const Sample& a, const Sample& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    return a.bits < b.bits;
  });
}

std::size_t SampleSet::total_occurrences() const {
  std::size_t total = 0;
  for (const auto& s : entries_) total += s.occurrences;
  return total;
}

std::size_t SampleSet::occurrences_near(double target, double tolerance) const {
  std::size_t total = 0;
  for (const auto& s : entries_)
    if (std::abs(s.energy - target) <= tolerance) total += s.occurrences;
  return total;
}

SampleSet sample_exhaustive(const QuboMatrix& q) {
  const std::size_t n = q.n_qubits();
  if (n > kExhaustiveQubitLimit) {
    throw Error(ErrorCode::kTooManyQubits, std::to_string(n) + " qubits exceed the exhaustive limit of " +
                                               std::to_string(kExhaustiveQubitLimit));
  }
  const std::uint64_t states = std::uint64_t{1} << n;
  std::vector<Sample> entries;
  entries.reserve(states);
  const std::vector<std::pair<QubitPair, double>> pairs(q.quadratic().begin(), q.quadratic().end());
  for (std::uint64_t mask = 0; mask < states; ++mask) {
    BitVector bits(n);
    for (std::size_t i = 0; i < n; ++i) bits[i] = static_cast<std::uint8_t>((mask >> i) & 1U);
    // Same summation order as energy(), so results agree bit for bit.
    DoubleDouble acc;
    for (std::size_t i = 0; i < n; ++i)
      if (bits[i]) acc += q.linear()[i];
    for (const auto& [pair, v] : pairs)
      if (bits[pair.first] && bits[pair.second]) acc += v;
    entries.push_back(Sample{std::move(bits), acc.to_double(), 1});
  }
  return SampleSet(std::move(entries));
}

void AnnealConfig::validate() const {
  if (reads < 1) throw Error(ErrorCode::kInvalidArgument, "reads must be >= 1");
  if (sweeps < 1) throw Error(ErrorCode::kInvalidArgument, "sweeps must be >= 1");
  if (threads < 1) throw Error(ErrorCode::kInvalidArgument, "threads must be >= 1");
  if (beta_start.has_value() != beta_end.has_value()) {
    throw Error(ErrorCode::kInvalidArgument, "set both beta_start and beta_end or neither");
  }
  if (beta_start && !(*beta_start > 0.0 && *beta_start < *beta_end)) {
    throw Error(ErrorCode::kInvalidArgument, "require 0 < beta_start < beta_end");
  }
}

SampleSet sample_anneal(const QuboMatrix& q, const AnnealConfig& config) {
  config.validate();
  const std::size_t n = q.n_qubits();
  if (n == 0) return SampleSet({Sample{{}, 0.0, config.reads}});

  double beta_start = 0.0, beta_end = 0.0;
  if (config.beta_start) {
    beta_start = *config.beta_start;
    beta_end = *config.beta_end;
  } else {
    double scale = q.max_abs_coefficient();
    if (scale == 0.0) scale = 1.0;
    beta_start = 0.05 / scale;
    beta_end = 1e4 / scale;
  }
  std::vector<double> betas(config.sweeps);
  for (std::size_t s = 0; s < config.sweeps; ++s) {
    const double frac = config.sweeps == 1 ? 1.0 : static_cast<double>(s) / static_cast<double>(config.sweeps - 1);
    betas[s] = beta_start * std::pow(beta_end / beta_start, frac);
  }

  std::vector<std::vector<Neighbor>> adjacency(n);
  for (const auto& [pair, v] : q.quadratic()) {
    adjacency[pair.first].push_back({pair.second, v});
    adjacency[pair.second].push_back({pair.first, v});
  }

  std::vector<BitVector> finals(config.reads);
  auto run_read = [&](std::size_t read) {
    std::mt19937_64 rng(splitmix64(config.seed ^ splitmix64(read)));
    BitVector state(n);
    for (auto& b : state) b = static_cast<std::uint8_t>(rng() >> 63);
    // field[i]: energy change from raising q_i to 1 given the other bits.
    std::vector<double> field(q.linear());
    for (std::size_t i = 0; i < n; ++i)
      if (state[i])
        for (const auto& nb : adjacency[i]) field[nb.index] += nb.weight;
    for (double beta : betas) {
      for (std::size_t i = 0; i < n; ++i) {
        const double delta = state[i] ? -field[i] : field[i];
        if (delta > 0.0 && uniform01(rng) >= std::exp(-beta * delta)) continue;
        state[i] ^= 1U;
        const double sign = state[i] ? 1.0 : -1.0;
        for (const auto& nb : adjacency[i]) field[nb.index] += sign * nb.weight;
      }
    }
    finals[read] = std::move(state);
  };

  const std::size_t workers = std::min<std::size_t>(config.threads, config.reads);
  if (workers <= 1) {
    for (std::size_t r = 0; r < config.reads; ++r) run_read(r);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t r = w; r < config.reads; r += workers) run_read(r);
      });
    }
  }

  std::map<BitVector, std::size_t> counts;
  for (auto& s : finals) ++counts[std::move(s)];
  return from_counts(q, std::move(counts));
}

std::unique_ptr<Sampler> make_sampler(const SamplerConfig& config) {
  if (config.kind == SamplerKind::kAnneal) return std::make_unique<AnnealSampler>(config.anneal);
  return std::make_unique<ExhaustiveSampler>();
}

}  // namespace qrefine
