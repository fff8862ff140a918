#include "tuning/absorption.hpp"

#include "tuning/error.hpp"

#include <algorithm>
#include <sstream>

namespace tuning {

namespace {

constexpr double kPivotTolerance = 1e-14;
constexpr double kResidualTolerance = 1e-10;

class FundamentalSystem {
public:
    explicit FundamentalSystem(const Eigen::MatrixXd& p00)
        : system_(Eigen::MatrixXd::Identity(p00.rows(), p00.cols()) - p00) {
        if (p00.rows() != p00.cols()) {
            throw TuningError(ErrorCode::DimensionMismatch, "p00 must be square");
        }
        if (system_.size() == 0) return;
        lu_.compute(system_);
        const double scale = std::max(1.0, system_.lpNorm<Eigen::Infinity>());
        const double min_pivot = lu_.matrixLU().diagonal().cwiseAbs().minCoeff();
        if (!(min_pivot > kPivotTolerance * scale)) {
            throw TuningError(ErrorCode::SingularSystem,
                              "I - P00 is singular: absorption is not certain");
        }
    }

    Eigen::MatrixXd solve(const Eigen::MatrixXd& rhs) const {
        if (rhs.rows() != system_.rows()) {
            throw TuningError(ErrorCode::DimensionMismatch,
                              "right-hand side row count does not match P00");
        }
        if (system_.size() == 0) return rhs;
        Eigen::MatrixXd x = lu_.solve(rhs);
        const double residual = (system_ * x - rhs).lpNorm<Eigen::Infinity>();
        const double bound =
            kResidualTolerance * std::max(1.0, rhs.size() ? rhs.lpNorm<Eigen::Infinity>() : 0.0);
        if (!(residual <= bound)) {
            std::ostringstream msg;
            msg << "I - P00 is numerically singular (residual " << residual << ")";
            throw TuningError(ErrorCode::SingularSystem, msg.str());
        }
        return x;
    }

private:
    Eigen::MatrixXd system_;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

} // namespace

Eigen::MatrixXd fundamental_solve(const Eigen::MatrixXd& p00, const Eigen::MatrixXd& rhs) {
    return FundamentalSystem(p00).solve(rhs);
}

Eigen::VectorXd fundamental_solve(const Eigen::MatrixXd& p00, const Eigen::VectorXd& rhs) {
    return FundamentalSystem(p00).solve(rhs);
}

Eigen::MatrixXd absorption_probabilities(const ChainSpec& spec) {
    return fundamental_solve(spec.p00, spec.p01);
}

Eigen::VectorXd expected_income(const ChainSpec& spec) {
    return fundamental_solve(spec.p00, spec.c);
}

AbsorptionAnalysis analyze(const ChainSpec& spec) {
    const FundamentalSystem system(spec.p00);
    return AbsorptionAnalysis{system.solve(spec.p01), system.solve(spec.c)};
}

ValidationReport check_positivity(const AbsorptionAnalysis& analysis, double epsilon) {
    ValidationReport report;
    for (Eigen::Index i = 0; i < analysis.b.rows(); ++i) {
        for (Eigen::Index j = 0; j < analysis.b.cols(); ++j) {
            if (analysis.b(i, j) <= epsilon) {
                std::ostringstream msg;
                msg.precision(17);
                msg << "absorption probability b(" << label_of(i).value << "," << j
                    << ") = " << analysis.b(i, j) << " is not above " << epsilon;
                report.errors.push_back({"B_NOT_POSITIVE", msg.str(), label_of(i).value});
            }
        }
    }
    return report;
}

void require_positive(const AbsorptionAnalysis& analysis, double epsilon) {
    if (epsilon < 0.0) return;
    const auto report = check_positivity(analysis, epsilon);
    if (!report.ok()) {
        throw TuningError(ErrorCode::BNotPositive, report.errors.front().message);
    }
}

} // namespace tuning
