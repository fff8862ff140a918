#pragma once

#include "tuning/model.hpp"

#include <Eigen/Dense>

namespace tuning {

struct AbsorptionAnalysis {
    Eigen::MatrixXd b; // n_internal x 2: P(absorbed in 0), P(absorbed in 1)
    Eigen::VectorXd r; // expected income until absorption, start state counted
};

/// Solves (I - p00) X = rhs by LU with partial pivoting. Throws SingularSystem
/// when I - p00 is numerically singular or the residual bound
/// max|(I - p00) X - rhs| <= 1e-10 * max(1, max|rhs|) is not met.
Eigen::MatrixXd fundamental_solve(const Eigen::MatrixXd& p00, const Eigen::MatrixXd& rhs);
Eigen::VectorXd fundamental_solve(const Eigen::MatrixXd& p00, const Eigen::VectorXd& rhs);

Eigen::MatrixXd absorption_probabilities(const ChainSpec& spec);

Eigen::VectorXd expected_income(const ChainSpec& spec);

/// B and r from a single factorization.
AbsorptionAnalysis analyze(const ChainSpec& spec);

inline constexpr double kDefaultPositivityEpsilon = 1e-12;

/// One B_NOT_POSITIVE error per absorption probability <= epsilon.
ValidationReport check_positivity(const AbsorptionAnalysis& analysis,
                                  double epsilon = kDefaultPositivityEpsilon);

/// Throws BNotPositive if check_positivity reports anything. A negative epsilon
/// disables the check.
void require_positive(const AbsorptionAnalysis& analysis,
                      double epsilon = kDefaultPositivityEpsilon);

} // namespace tuning
