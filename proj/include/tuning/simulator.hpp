#pragma once

#include "tuning/model.hpp"
#include "tuning/rng.hpp"

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

namespace tuning {

enum class EventKind { FreeMove, Absorption, Transfer };

std::string_view to_string(EventKind kind);

/// One step of the controlled process. A transfer event carries the transfer
/// cost plus the income of the arrival state; the initial state is reported as
/// a free move.
struct TrajectoryEvent {
    std::int64_t step = 0;
    Label state;
    EventKind kind = EventKind::FreeMove;
    double income_delta = 0.0;
};

struct SimulationOptions {
    std::uint64_t max_segment_steps = 1'000'000'000; // CycleLimit beyond this
};

/// Cycle statistics. A cycle runs from one boundary hit to the next; the
/// segment from the start state to the first absorption is not counted.
struct SimulationStats {
    std::int64_t cycles = 0;
    double total_income = 0.0;
    double i_hat = 0.0; // total_income / cycles
    double std_error = 0.0;
    std::array<std::int64_t, 2> boundary_counts{}; // boundary at which each cycle starts
};

/// Streaming moments of per-cycle incomes for one replication.
struct CycleMoments {
    std::int64_t cycles = 0;
    double total = 0.0;
    double mean = 0.0;
    double m2 = 0.0; // sum of squared deviations from the mean
    std::array<std::int64_t, 2> boundary_counts{};

    void add(double income, int boundary);
    void merge(const CycleMoments& other); // Chan et al. pairwise combination
    SimulationStats stats() const;
};

/// Inverse-CDF sampling of the one-step law of the free evolution and of the
/// transfer distributions, both over ascending labels.
class TransitionSampler {
public:
    TransitionSampler(const ChainSpec& spec, const Strategy& strategy);

    /// Next label from internal state `from` (0-based internal index).
    Label step(Eigen::Index from, Rng& rng) const;
    /// Transfer target after absorption in boundary `s`.
    Label transfer(int s, Rng& rng) const;

private:
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> row_cdf_; // n x (n + 2), by label
    std::array<Eigen::VectorXd, 2> transfer_cdf_; // n each
};

/// Single-stream run of `cycles` cycles from the given seed.
CycleMoments simulate_replication(const ChainSpec& spec, const Strategy& strategy,
                                  std::int64_t cycles, std::uint64_t seed,
                                  const SimulationOptions& options = {});

/// Runs `replications` independent streams with seeds derive_seed(seed, k), each
/// of `cycles` cycles, and pools them in replication order. Throws CycleLimit.
SimulationStats simulate(const ChainSpec& spec, const Strategy& strategy, std::int64_t cycles,
                         std::uint64_t seed, std::int64_t replications = 1,
                         const SimulationOptions& options = {});

/// First `max_steps` steps of the controlled process started from label 2,
/// using the same random stream as simulate(..., replications = 1).
std::vector<TrajectoryEvent> sample_trajectory(const ChainSpec& spec, const Strategy& strategy,
                                               std::int64_t max_steps, std::uint64_t seed);

/// Counts of absorption in boundary 0 and 1 over `segments` free evolutions
/// started at `start`.
std::array<std::int64_t, 2> absorption_counts(const ChainSpec& spec, Label start,
                                              std::int64_t segments, std::uint64_t seed,
                                              const SimulationOptions& options = {});

} // namespace tuning
