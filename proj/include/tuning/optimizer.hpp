#pragma once

#include "tuning/absorption.hpp"
#include "tuning/direction.hpp"
#include "tuning/model.hpp"
#include "tuning/rng.hpp"
#include "tuning/stationary.hpp"

#include <cstdint>
#include <optional>

namespace tuning {

/// Optimal deterministic control: transfer to m0_star after hitting boundary 0,
/// to m1_star after hitting boundary 1.
struct OptimalControl {
    Label m0_star;
    Label m1_star;
    double value = 0.0;
    Direction direction = Direction::Maximize;
    CostCoefficients tables;
};

/// Exhaustive search of the test function C(m0, m1) over the control grid.
/// Ties resolve to the lexicographically smallest (m0, m1). Throws BNotPositive
/// when some absorption probability is <= positivity_epsilon.
OptimalControl solve_tuning(const ChainSpec& spec, Direction direction = Direction::Maximize,
                            double positivity_epsilon = kDefaultPositivityEpsilon);

inline constexpr double kRefutationTolerance = 1e-9;

struct RefutationReport {
    std::int64_t samples = 0;
    std::optional<double> best_observed; // max (maximize) or min (minimize) of sampled I
    std::optional<double> gap;           // distance from the optimum, >= 0 unless violated
    std::int64_t violations = 0;         // samples beating the optimum by > tolerance
    double tolerance = kRefutationTolerance;
};

/// Evaluates the indicator on `samples` strategy pairs drawn from the flat
/// Dirichlet distribution and checks none of them beats `control`. Sample i uses
/// the stream derive_seed(seed, i), so the result is independent of threading.
RefutationReport refute_with_random_strategies(const ChainSpec& spec, const OptimalControl& control,
                                               std::int64_t samples, std::uint64_t seed);

/// Flat-Dirichlet draw over n points via normalized exponentials.
Eigen::VectorXd sample_flat_dirichlet(Eigen::Index n, Rng& rng);

} // namespace tuning
