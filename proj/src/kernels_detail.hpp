#pragma once

// Per-cell and per-sample work shared by the serial and OpenMP kernels so both
// produce identical bits.

#include "tuning/kernels.hpp"
#include "tuning/optimizer.hpp"
#include "tuning/rng.hpp"

namespace tuning::kernels::detail {

inline CostCoefficients allocate_tables(Eigen::Index n) {
    return CostCoefficients{Eigen::MatrixXd(n, n), Eigen::MatrixXd(n, n), Eigen::MatrixXd(n, n)};
}

inline void fill_cell(const GridInputs& in, Eigen::Index m0, Eigen::Index m1,
                      CostCoefficients& out) {
    const double a = in.gain0(m0) * in.b(m1, 0) + in.gain1(m1) * in.b(m0, 1);
    const double b = in.b(m0, 1) + in.b(m1, 0);
    out.a_table(m0, m1) = a;
    out.b_table(m0, m1) = b;
    out.c_table(m0, m1) = a / b;
}

inline double sampled_indicator(const ChainSpec& spec, const AbsorptionAnalysis& analysis,
                                std::uint64_t seed, std::int64_t index) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(index)));
    Strategy s;
    s.alpha0 = sample_flat_dirichlet(spec.n_internal, rng);
    s.alpha1 = sample_flat_dirichlet(spec.n_internal, rng);
    return indicator(s, spec, analysis, IndicatorRoute::Embedded, -1.0);
}

inline bool beyond(double value, double threshold, Direction direction) {
    return direction == Direction::Maximize ? value > threshold : value < threshold;
}

} // namespace tuning::kernels::detail
