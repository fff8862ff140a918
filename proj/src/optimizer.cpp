#include "tuning/optimizer.hpp"

#include "tuning/error.hpp"
#include "tuning/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace tuning {

Eigen::VectorXd sample_flat_dirichlet(Eigen::Index n, Rng& rng) {
    Eigen::VectorXd w(n);
    for (Eigen::Index i = 0; i < n; ++i) w(i) = -std::log1p(-uniform01(rng));
    const double total = w.sum();
    if (!(total > 0.0)) {
        // Every draw was exactly zero; fall back to the barycenter.
        return Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
    }
    return w / total;
}

OptimalControl solve_tuning(const ChainSpec& spec, Direction direction,
                            double positivity_epsilon) {
    require_valid(spec);
    const auto analysis = analyze(spec);
    require_positive(analysis, positivity_epsilon);

    OptimalControl control;
    control.direction = direction;
    control.tables = cost_coefficients(spec, analysis);
    const auto best = kernels::extremum(control.tables.c_table, direction);
    control.m0_star = label_of(best.m0);
    control.m1_star = label_of(best.m1);
    control.value = best.value;
    return control;
}

RefutationReport refute_with_random_strategies(const ChainSpec& spec,
                                               const OptimalControl& control,
                                               std::int64_t samples, std::uint64_t seed) {
    RefutationReport report;
    if (samples < 0) throw std::invalid_argument("samples must be non-negative");
    report.samples = samples;
    if (samples == 0) return report;

    require_valid(spec);
    const auto analysis = analyze(spec);
    require_positive(analysis);

    const bool maximize = control.direction == Direction::Maximize;
    const double threshold =
        maximize ? control.value + report.tolerance : control.value - report.tolerance;
    const auto result =
        kernels::random_search(spec, analysis, control.direction, samples, seed, threshold);
    report.best_observed = result.best;
    report.gap = maximize ? control.value - result.best : result.best - control.value;
    report.violations = result.beyond_threshold;
    return report;
}

} // namespace tuning
