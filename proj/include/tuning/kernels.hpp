#pragma once

// Data-parallel kernels. The OpenMP versions are what the library calls; the
// serial versions are kept as references for tests and benchmarks and must
// produce bit-identical results.

#include "tuning/direction.hpp"
#include "tuning/model.hpp"
#include "tuning/simulator.hpp"
#include "tuning/stationary.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace tuning::kernels {

/// Inputs of the test function: gain0 = d0 + r, gain1 = d1 + r, b = absorption
/// probabilities.
struct GridInputs {
    Eigen::VectorXd gain0;
    Eigen::VectorXd gain1;
    Eigen::MatrixXd b;
};

struct GridPoint {
    Eigen::Index m0 = 0; // internal index
    Eigen::Index m1 = 0;
    double value = 0.0;
};

/// Best sampled indicator value and number of samples beyond `threshold` in the
/// optimization direction.
struct SearchResult {
    double best = 0.0;
    std::int64_t beyond_threshold = 0;
};

CostCoefficients cost_tables(const GridInputs& in);

/// Extremum of `table`, smallest (m0, m1) on ties. Table must be non-empty.
GridPoint extremum(const Eigen::MatrixXd& table, Direction direction);

/// Indicator (embedded route) of `samples` flat-Dirichlet strategies; sample i
/// drawn from derive_seed(seed, i). Requires samples >= 1.
SearchResult random_search(const ChainSpec& spec, const AbsorptionAnalysis& analysis,
                           Direction direction, std::int64_t samples, std::uint64_t seed,
                           double threshold);

/// One CycleMoments per replication k, seeded by derive_seed(seed, k).
std::vector<CycleMoments> replications(const ChainSpec& spec, const Strategy& strategy,
                                       std::int64_t cycles, std::uint64_t seed,
                                       std::int64_t count, const SimulationOptions& options);

namespace serial {

CostCoefficients cost_tables(const GridInputs& in);
GridPoint extremum(const Eigen::MatrixXd& table, Direction direction);
SearchResult random_search(const ChainSpec& spec, const AbsorptionAnalysis& analysis,
                           Direction direction, std::int64_t samples, std::uint64_t seed,
                           double threshold);
std::vector<CycleMoments> replications(const ChainSpec& spec, const Strategy& strategy,
                                       std::int64_t cycles, std::uint64_t seed,
                                       std::int64_t count, const SimulationOptions& options);

} // namespace serial

/// Value-then-lexicographic preference used by both extremum versions.
inline bool better(const GridPoint& a, const GridPoint& b, Direction direction) {
    if (a.value != b.value) {
        return direction == Direction::Maximize ? a.value > b.value : a.value < b.value;
    }
    return a.m0 != b.m0 ? a.m0 < b.m0 : a.m1 < b.m1;
}

} // namespace tuning::kernels
