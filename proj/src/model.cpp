#include "tuning/model.hpp"

#include "tuning/error.hpp"

#include <cmath>
#include <queue>
#include <sstream>

namespace tuning {

namespace {

void add(std::vector<Violation>& out, std::string code, std::string message,
         std::optional<int> label = std::nullopt) {
    out.push_back(Violation{std::move(code), std::move(message), label});
}

std::string row_name(Eigen::Index i) {
    return "state " + std::to_string(label_of(i).value);
}

bool all_finite(const Eigen::MatrixXd& m) {
    return m.allFinite();
}

// Reverse breadth-first search from the boundary over strictly positive edges.
std::vector<bool> reaches_boundary(const ChainSpec& spec) {
    const auto n = spec.n_internal;
    std::vector<bool> reached(static_cast<size_t>(n), false);
    std::queue<Eigen::Index> frontier;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (spec.p01(i, 0) > 0.0 || spec.p01(i, 1) > 0.0) {
            reached[static_cast<size_t>(i)] = true;
            frontier.push(i);
        }
    }
    while (!frontier.empty()) {
        const auto j = frontier.front();
        frontier.pop();
        for (Eigen::Index i = 0; i < n; ++i) {
            if (!reached[static_cast<size_t>(i)] && spec.p00(i, j) > 0.0) {
                reached[static_cast<size_t>(i)] = true;
                frontier.push(i);
            }
        }
    }
    return reached;
}

void check_distribution(std::vector<Violation>& errors, const Eigen::VectorXd& alpha,
                        std::string_view name, Eigen::Index n_internal) {
    if (alpha.size() != n_internal) {
        std::ostringstream msg;
        msg << name << " has length " << alpha.size() << ", expected " << n_internal;
        add(errors, "DIMENSION", msg.str());
        return;
    }
    if (!alpha.allFinite()) {
        add(errors, "NON_FINITE", std::string(name) + " contains a non-finite entry");
        return;
    }
    for (Eigen::Index i = 0; i < n_internal; ++i) {
        if (alpha(i) < 0.0) {
            std::ostringstream msg;
            msg << name << " has negative mass " << alpha(i) << " at " << row_name(i);
            add(errors, "NEGATIVE_MASS", msg.str(), label_of(i).value);
        }
    }
    const double total = alpha.sum();
    if (std::abs(total - 1.0) > kRowSumTolerance) {
        std::ostringstream msg;
        msg.precision(17);
        msg << name << " sums to " << total << ", expected 1";
        add(errors, "NOT_NORMALIZED", msg.str());
    }
}

} // namespace

bool ValidationReport::has_error(std::string_view code) const {
    for (const auto& e : errors) {
        if (e.code == code) return true;
    }
    return false;
}

ValidationReport validate_chain(const ChainSpec& spec) {
    ValidationReport report;
    auto& errors = report.errors;
    const auto n = spec.n_internal;

    if (n < 1) {
        add(errors, "DIMENSION", "n_internal must be at least 1");
        return report;
    }
    auto expect_shape = [&](const Eigen::MatrixXd& m, Eigen::Index rows, Eigen::Index cols,
                            std::string_view name) {
        if (m.rows() == rows && m.cols() == cols) return true;
        std::ostringstream msg;
        msg << name << " is " << m.rows() << "x" << m.cols() << ", expected " << rows << "x"
            << cols;
        add(errors, "DIMENSION", msg.str());
        return false;
    };
    bool shapes = expect_shape(spec.p00, n, n, "p00");
    shapes = expect_shape(spec.p01, n, 2, "p01") && shapes;
    shapes = expect_shape(spec.c, n, 1, "c") && shapes;
    shapes = expect_shape(spec.d0, n, 1, "d0") && shapes;
    shapes = expect_shape(spec.d1, n, 1, "d1") && shapes;
    if (!shapes) return report;

    if (!all_finite(spec.p00) || !all_finite(spec.p01) || !spec.c.allFinite() ||
        !spec.d0.allFinite() || !spec.d1.allFinite()) {
        add(errors, "NON_FINITE", "model contains a non-finite number");
        return report;
    }

    for (Eigen::Index i = 0; i < n; ++i) {
        const bool in_range = (spec.p00.row(i).array() >= 0.0).all() &&
                              (spec.p00.row(i).array() <= 1.0).all() &&
                              (spec.p01.row(i).array() >= 0.0).all() &&
                              (spec.p01.row(i).array() <= 1.0).all();
        if (!in_range) {
            add(errors, "PROB_RANGE", row_name(i) + " has a transition probability outside [0, 1]",
                label_of(i).value);
        }
        const double total = spec.p00.row(i).sum() + spec.p01.row(i).sum();
        if (std::abs(total - 1.0) > kRowSumTolerance) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "row of " << row_name(i) << " sums to " << total << ", expected 1";
            add(errors, "ROW_SUM", msg.str(), label_of(i).value);
        }
    }

    const auto reached = reaches_boundary(spec);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!reached[static_cast<size_t>(i)]) {
            add(errors, "NO_ABSORPTION", "no boundary state is reachable from " + row_name(i),
                label_of(i).value);
        }
    }

    if ((spec.d0.array() >= 0.0).any()) {
        add(report.warnings, "NON_NEGATIVE_TRANSFER_COST", "d0 has non-negative entries");
    }
    if ((spec.d1.array() >= 0.0).any()) {
        add(report.warnings, "NON_NEGATIVE_TRANSFER_COST", "d1 has non-negative entries");
    }
    return report;
}

ValidationReport validate_strategy(const Strategy& strategy, Eigen::Index n_internal) {
    ValidationReport report;
    check_distribution(report.errors, strategy.alpha0, "alpha0", n_internal);
    check_distribution(report.errors, strategy.alpha1, "alpha1", n_internal);
    return report;
}

Strategy degenerate_strategy(Label m0, Label m1, Eigen::Index n_internal) {
    for (const Label m : {m0, m1}) {
        if (index_of(m) < 0 || index_of(m) >= n_internal) {
            std::ostringstream msg;
            msg << "label " << m.value << " outside internal range 2.." << n_internal + 1;
            throw TuningError(ErrorCode::LabelOutOfRange, msg.str());
        }
    }
    Strategy s{Eigen::VectorXd::Zero(n_internal), Eigen::VectorXd::Zero(n_internal)};
    s.alpha0(index_of(m0)) = 1.0;
    s.alpha1(index_of(m1)) = 1.0;
    return s;
}

Strategy uniform_strategy(Eigen::Index n_internal) {
    const Eigen::VectorXd u =
        Eigen::VectorXd::Constant(n_internal, 1.0 / static_cast<double>(n_internal));
    return Strategy{u, u};
}

void require_valid(const ChainSpec& spec) {
    const auto report = validate_chain(spec);
    if (!report.ok()) {
        throw TuningError(ErrorCode::InvalidModel, report.errors.front().message);
    }
}

void require_valid(const Strategy& strategy, Eigen::Index n_internal) {
    const auto report = validate_strategy(strategy, n_internal);
    if (!report.ok()) {
        throw TuningError(ErrorCode::InvalidStrategy, report.errors.front().message);
    }
}

} // namespace tuning
