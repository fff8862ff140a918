#include "tuning/stationary.hpp"

#include "tuning/error.hpp"
#include "tuning/kernels.hpp"

#include <stdexcept>
#include <string>

namespace tuning {

namespace {

constexpr double kDegenerateFlow = 1e-14;

void check_sizes(const Strategy& strategy, Eigen::Index n) {
    if (strategy.alpha0.size() != n || strategy.alpha1.size() != n) {
        throw TuningError(ErrorCode::DimensionMismatch,
                          "strategy length does not match the number of internal states");
    }
}

void check_sizes(const ChainSpec& spec, const AbsorptionAnalysis& analysis) {
    const auto n = spec.n_internal;
    if (analysis.b.rows() != n || analysis.b.cols() != 2 || analysis.r.size() != n ||
        spec.d0.size() != n || spec.d1.size() != n) {
        throw TuningError(ErrorCode::DimensionMismatch,
                          "absorption analysis does not match the model");
    }
}

// Expected profit of a cycle that starts with a transfer from boundary s to each
// internal state.
Eigen::VectorXd cycle_gain(const ChainSpec& spec, const AbsorptionAnalysis& analysis, int s) {
    return (s == 0 ? spec.d0 : spec.d1) + analysis.r;
}

double fractional_route(const Strategy& st, const ChainSpec& spec,
                        const AbsorptionAnalysis& an) {
    const Eigen::VectorXd g0 = cycle_gain(spec, an, 0);
    const Eigen::VectorXd g1 = cycle_gain(spec, an, 1);
    const auto n = spec.n_internal;
    double num = 0.0;
    double den = 0.0;
    for (Eigen::Index m0 = 0; m0 < n; ++m0) {
        for (Eigen::Index m1 = 0; m1 < n; ++m1) {
            const double w = st.alpha0(m0) * st.alpha1(m1);
            num += (g0(m0) * an.b(m1, 0) + g1(m1) * an.b(m0, 1)) * w;
            den += (an.b(m0, 1) + an.b(m1, 0)) * w;
        }
    }
    if (!(den > kDegenerateFlow)) {
        throw TuningError(ErrorCode::DegenerateChain, "embedded chain never changes boundary");
    }
    return num / den;
}

double ratio_route(const Strategy& st, const ChainSpec& spec, const AbsorptionAnalysis& an) {
    const double leave0 = st.alpha0.dot(an.b.col(1)); // p~01
    const double leave1 = st.alpha1.dot(an.b.col(0)); // p~10
    const double rho0 = st.alpha0.dot(cycle_gain(spec, an, 0));
    const double rho1 = st.alpha1.dot(cycle_gain(spec, an, 1));
    const double den = leave0 + leave1;
    if (!(den > kDegenerateFlow)) {
        throw TuningError(ErrorCode::DegenerateChain, "embedded chain never changes boundary");
    }
    return (rho0 * leave1 + rho1 * leave0) / den;
}

} // namespace

std::string_view to_string(IndicatorRoute route) {
    switch (route) {
    case IndicatorRoute::Fractional: return "fractional";
    case IndicatorRoute::Ratio: return "ratio";
    case IndicatorRoute::Embedded: return "embedded";
    }
    return "embedded";
}

IndicatorRoute parse_route(std::string_view name) {
    if (name == "fractional") return IndicatorRoute::Fractional;
    if (name == "ratio") return IndicatorRoute::Ratio;
    if (name == "embedded") return IndicatorRoute::Embedded;
    throw std::invalid_argument("unknown route '" + std::string(name) + "'");
}

Eigen::Matrix2d embedded_transition(const Strategy& strategy, const AbsorptionAnalysis& analysis) {
    check_sizes(strategy, analysis.b.rows());
    Eigen::Matrix2d p;
    p.row(0) = strategy.alpha0.transpose() * analysis.b;
    p.row(1) = strategy.alpha1.transpose() * analysis.b;
    return p;
}

Eigen::Vector2d stationary_distribution(const Eigen::Matrix2d& p_tilde) {
    const double flow = p_tilde(0, 1) + p_tilde(1, 0);
    if (!(flow > kDegenerateFlow)) {
        throw TuningError(ErrorCode::DegenerateChain,
                          "both boundary states are absorbing in the embedded chain");
    }
    return Eigen::Vector2d(p_tilde(1, 0) / flow, p_tilde(0, 1) / flow);
}

Eigen::Vector2d visit_income(const Strategy& strategy, const ChainSpec& spec,
                             const AbsorptionAnalysis& analysis) {
    check_sizes(spec, analysis);
    check_sizes(strategy, spec.n_internal);
    return Eigen::Vector2d(strategy.alpha0.dot(cycle_gain(spec, analysis, 0)),
                           strategy.alpha1.dot(cycle_gain(spec, analysis, 1)));
}

EmbeddedChain embedded_chain(const Strategy& strategy, const ChainSpec& spec,
                             const AbsorptionAnalysis& analysis) {
    EmbeddedChain chain;
    chain.p_tilde = embedded_transition(strategy, analysis);
    chain.pi = stationary_distribution(chain.p_tilde);
    chain.rho = visit_income(strategy, spec, analysis);
    return chain;
}

CostCoefficients cost_coefficients(const ChainSpec& spec, const AbsorptionAnalysis& analysis) {
    check_sizes(spec, analysis);
    auto tables = kernels::cost_tables(kernels::GridInputs{
        cycle_gain(spec, analysis, 0), cycle_gain(spec, analysis, 1), analysis.b});
    if (tables.b_table.size() > 0 && !(tables.b_table.minCoeff() > 0.0)) {
        throw TuningError(ErrorCode::BNotPositive,
                          "test-function denominator B(m0, m1) is not positive");
    }
    return tables;
}

double indicator(const Strategy& strategy, const ChainSpec& spec,
                 const AbsorptionAnalysis& analysis, IndicatorRoute route,
                 double positivity_epsilon) {
    check_sizes(spec, analysis);
    check_sizes(strategy, spec.n_internal);
    require_positive(analysis, positivity_epsilon);
    switch (route) {
    case IndicatorRoute::Fractional: return fractional_route(strategy, spec, analysis);
    case IndicatorRoute::Ratio: return ratio_route(strategy, spec, analysis);
    case IndicatorRoute::Embedded: break;
    }
    const auto chain = embedded_chain(strategy, spec, analysis);
    return chain.pi.dot(chain.rho);
}

} // namespace tuning
