#pragma once

#include <cstdint>
#include <vector>

#include "hawkesnet/types.hpp"

namespace hawkesnet {

struct MotifSpec {
    enum class Kind { Circle, Star };
    Kind kind = Kind::Circle;
    int size = 5;
    double coefficient = 0.3;
};

struct SimulateConfig {
    double burn_in = -1.0;           // < 0: default 10/rate for exponential kernels
    std::size_t max_events = 10000000;
    bool check_stability = true;
};

class StabilityError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class RunawayError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Ogata modified thinning. Deterministic given seed. Burn-in on [-B, 0) is discarded.
ExperimentData simulate_hawkes(const ExperimentModel& model, double horizon, std::uint64_t seed,
                               const SimulateConfig& cfg = {});

/// Independent experiments; each uses a seed sub-stream derived from (seed, m).
MultiExperimentData simulate_multi(const MultiModel& model, const std::vector<double>& horizons,
                                   std::uint64_t seed, const SimulateConfig& cfg = {});

/// Tile p units with per-experiment motif layouts. Circle: directed cycle 1→2→…→k→1.
/// Star: all edges directed hub (first node of the block) → leaves.
MultiModel make_benchmark_networks(int p, const std::vector<std::vector<MotifSpec>>& layouts,
                                   double mu, const KernelSpec& kernel, Link link = Link::Linear);

/// The three-network circle/star benchmark: all circles (0.3), mostly circles with
/// (size/motifs-dependent) star substitutions, all stars (0.6).
MultiModel default_benchmark(int p = 100, double mu = 0.2);

/// Seed of the per-experiment sub-stream used by simulate_multi.
std::uint64_t simulate_stream_seed(std::uint64_t seed, std::size_t experiment_index);

}  // namespace hawkesnet
