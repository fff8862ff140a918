#pragma once

#include <Eigen/Dense>

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace tuning {

/// State label in the external numbering: 0 and 1 are the boundary states,
/// 2..n_internal+1 the internal (admissible) states.
struct Label {
    int value = 0;

    constexpr auto operator<=>(const Label&) const = default;
};

inline constexpr int kFirstInternalLabel = 2;

constexpr Label label_of(Eigen::Index internal_index) {
    return Label{static_cast<int>(internal_index) + kFirstInternalLabel};
}

constexpr Eigen::Index index_of(Label label) {
    return label.value - kFirstInternalLabel;
}

/// The controlled model. Only the internal rows of the transition matrix are
/// stored; boundary states are absorbing within a free-evolution segment.
struct ChainSpec {
    Eigen::Index n_internal = 0;
    Eigen::MatrixXd p00; // n_internal x n_internal
    Eigen::MatrixXd p01; // n_internal x 2, columns = boundary 0, boundary 1
    Eigen::VectorXd c;   // income per step spent in an internal state
    Eigen::VectorXd d0;  // transfer cost from boundary 0 into each internal state
    Eigen::VectorXd d1;  // transfer cost from boundary 1 into each internal state
};

/// Transfer distributions applied after absorption in boundary 0 resp. 1.
struct Strategy {
    Eigen::VectorXd alpha0;
    Eigen::VectorXd alpha1;

    const Eigen::VectorXd& from_boundary(int s) const { return s == 0 ? alpha0 : alpha1; }
};

struct Violation {
    std::string code;
    std::string message;
    std::optional<int> label; // offending state label, when there is one
};

struct ValidationReport {
    std::vector<Violation> errors;
    std::vector<Violation> warnings;

    bool ok() const { return errors.empty(); }
    bool has_error(std::string_view code) const;
};

inline constexpr double kRowSumTolerance = 1e-9;

ValidationReport validate_chain(const ChainSpec& spec);

ValidationReport validate_strategy(const Strategy& strategy, Eigen::Index n_internal);

/// Point-mass strategy at (m0, m1). Throws LabelOutOfRange.
Strategy degenerate_strategy(Label m0, Label m1, Eigen::Index n_internal);

/// Same distribution after either boundary.
Strategy uniform_strategy(Eigen::Index n_internal);

/// Throws InvalidModel / InvalidStrategy carrying the first error message.
void require_valid(const ChainSpec& spec);
void require_valid(const Strategy& strategy, Eigen::Index n_internal);

} // namespace tuning
