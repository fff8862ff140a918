#pragma once

#include "tuning/absorption.hpp"
#include "tuning/model.hpp"

#include <Eigen/Dense>

#include <string_view>

namespace tuning {

/// The chain of successive boundary states visited by the controlled process.
struct EmbeddedChain {
    Eigen::Matrix2d p_tilde;
    Eigen::Vector2d pi;
    Eigen::Vector2d rho; // expected profit of one boundary-to-boundary cycle
};

/// Tables over the control grid (m0, m1), row = m0, column = m1, both 0-based
/// internal indices.
struct CostCoefficients {
    Eigen::MatrixXd a_table;
    Eigen::MatrixXd b_table;
    Eigen::MatrixXd c_table;
};

enum class IndicatorRoute { Fractional, Ratio, Embedded };

std::string_view to_string(IndicatorRoute route);
IndicatorRoute parse_route(std::string_view name);

Eigen::Matrix2d embedded_transition(const Strategy& strategy, const AbsorptionAnalysis& analysis);

/// Closed-form stationary law of a two-state chain. Throws DegenerateChain when
/// p01 + p10 <= 1e-14.
Eigen::Vector2d stationary_distribution(const Eigen::Matrix2d& p_tilde);

Eigen::Vector2d visit_income(const Strategy& strategy, const ChainSpec& spec,
                             const AbsorptionAnalysis& analysis);

EmbeddedChain embedded_chain(const Strategy& strategy, const ChainSpec& spec,
                             const AbsorptionAnalysis& analysis);

/// A, B and C = A / B over the whole grid. Requires strictly positive
/// absorption probabilities (throws BNotPositive otherwise).
CostCoefficients cost_coefficients(const ChainSpec& spec, const AbsorptionAnalysis& analysis);

/// Stationary cost indicator I(alpha0, alpha1), reported per embedded step.
///
/// Fractional evaluates the double-sum quotient of the A and B tables, Ratio the
/// expanded single-sum quotient, Embedded the stationary average pi . rho. All
/// three agree to rounding. Positivity of the absorption probabilities is
/// enforced with `positivity_epsilon`; pass a negative value to skip the check
/// (the embedded route then reports DegenerateChain where appropriate).
double indicator(const Strategy& strategy, const ChainSpec& spec,
                 const AbsorptionAnalysis& analysis,
                 IndicatorRoute route = IndicatorRoute::Embedded,
                 double positivity_epsilon = kDefaultPositivityEpsilon);

} // namespace tuning
