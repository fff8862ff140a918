#include "kernels_detail.hpp"

#include <exception>
#include <stdexcept>

namespace tuning::kernels {

namespace {

// OpenMP regions must not leak exceptions; keep the first one and rethrow.
class FirstError {
public:
    template <typename F>
    void run(F&& f) noexcept {
        try {
            f();
        } catch (...) {
#pragma omp critical(tuning_first_error)
            if (!error_) error_ = std::current_exception();
        }
    }

    void rethrow() const {
        if (error_) std::rethrow_exception(error_);
    }

private:
    std::exception_ptr error_;
};

} // namespace

CostCoefficients cost_tables(const GridInputs& in) {
    const auto n = in.b.rows();
    auto out = detail::allocate_tables(n);
#pragma omp parallel for schedule(static)
    for (Eigen::Index m0 = 0; m0 < n; ++m0) {
        for (Eigen::Index m1 = 0; m1 < n; ++m1) detail::fill_cell(in, m0, m1, out);
    }
    return out;
}

GridPoint extremum(const Eigen::MatrixXd& table, Direction direction) {
    if (table.size() == 0) throw std::invalid_argument("empty table");
    GridPoint best{0, 0, table(0, 0)};
#pragma omp parallel
    {
        GridPoint local = best;
#pragma omp for schedule(static) nowait
        for (Eigen::Index m0 = 0; m0 < table.rows(); ++m0) {
            for (Eigen::Index m1 = 0; m1 < table.cols(); ++m1) {
                const GridPoint p{m0, m1, table(m0, m1)};
                if (better(p, local, direction)) local = p;
            }
        }
#pragma omp critical(tuning_extremum)
        if (better(local, best, direction)) best = local;
    }
    return best;
}

SearchResult random_search(const ChainSpec& spec, const AbsorptionAnalysis& analysis,
                           Direction direction, std::int64_t samples, std::uint64_t seed,
                           double threshold) {
    if (samples < 1) throw std::invalid_argument("samples must be positive");
    // Sample 0 seeds the running extremum so min and max share one reduction shape.
    double best = detail::sampled_indicator(spec, analysis, seed, 0);
    std::int64_t beyond_count = detail::beyond(best, threshold, direction) ? 1 : 0;
    FirstError guard;
    const bool maximize = direction == Direction::Maximize;
#pragma omp parallel
    {
        double local = best;
        std::int64_t local_count = 0;
#pragma omp for schedule(static) nowait
        for (std::int64_t i = 1; i < samples; ++i) {
            guard.run([&] {
                const double v = detail::sampled_indicator(spec, analysis, seed, i);
                if (detail::beyond(v, local, direction)) local = v;
                if (detail::beyond(v, threshold, direction)) ++local_count;
            });
        }
#pragma omp critical(tuning_random_search)
        {
            if (maximize ? local > best : local < best) best = local;
            beyond_count += local_count;
        }
    }
    guard.rethrow();
    return SearchResult{best, beyond_count};
}

std::vector<CycleMoments> replications(const ChainSpec& spec, const Strategy& strategy,
                                       std::int64_t cycles, std::uint64_t seed,
                                       std::int64_t count, const SimulationOptions& options) {
    std::vector<CycleMoments> out(static_cast<size_t>(count));
    FirstError guard;
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t k = 0; k < count; ++k) {
        guard.run([&] {
            out[static_cast<size_t>(k)] = simulate_replication(
                spec, strategy, cycles, derive_seed(seed, static_cast<std::uint64_t>(k)), options);
        });
    }
    guard.rethrow();
    return out;
}

} // namespace tuning::kernels
