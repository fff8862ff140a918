#include "kernels_detail.hpp"

#include <stdexcept>

namespace tuning::kernels::serial {

CostCoefficients cost_tables(const GridInputs& in) {
    const auto n = in.b.rows();
    auto out = detail::allocate_tables(n);
    for (Eigen::Index m0 = 0; m0 < n; ++m0) {
        for (Eigen::Index m1 = 0; m1 < n; ++m1) detail::fill_cell(in, m0, m1, out);
    }
    return out;
}

GridPoint extremum(const Eigen::MatrixXd& table, Direction direction) {
    if (table.size() == 0) throw std::invalid_argument("empty table");
    GridPoint best{0, 0, table(0, 0)};
    for (Eigen::Index m0 = 0; m0 < table.rows(); ++m0) {
        for (Eigen::Index m1 = 0; m1 < table.cols(); ++m1) {
            const GridPoint p{m0, m1, table(m0, m1)};
            if (better(p, best, direction)) best = p;
        }
    }
    return best;
}

SearchResult random_search(const ChainSpec& spec, const AbsorptionAnalysis& analysis,
                           Direction direction, std::int64_t samples, std::uint64_t seed,
                           double threshold) {
    if (samples < 1) throw std::invalid_argument("samples must be positive");
    SearchResult result;
    for (std::int64_t i = 0; i < samples; ++i) {
        const double v = detail::sampled_indicator(spec, analysis, seed, i);
        if (i == 0 || detail::beyond(v, result.best, direction)) result.best = v;
        if (detail::beyond(v, threshold, direction)) ++result.beyond_threshold;
    }
    return result;
}

std::vector<CycleMoments> replications(const ChainSpec& spec, const Strategy& strategy,
                                       std::int64_t cycles, std::uint64_t seed,
                                       std::int64_t count, const SimulationOptions& options) {
    std::vector<CycleMoments> out(static_cast<size_t>(count));
    for (std::int64_t k = 0; k < count; ++k) {
        out[static_cast<size_t>(k)] = simulate_replication(
            spec, strategy, cycles, derive_seed(seed, static_cast<std::uint64_t>(k)), options);
    }
    return out;
}

} // namespace tuning::kernels::serial
