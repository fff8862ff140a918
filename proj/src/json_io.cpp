#include "tuning/json_io.hpp"

#include "tuning/error.hpp"

#include <fstream>
#include <ostream>

namespace tuning::io {

namespace {

constexpr int kCsvDigits = 17;

[[noreturn]] void malformed(const std::string& what) {
    throw TuningError(ErrorCode::InvalidModel, "malformed document: " + what);
}

const json& field(const json& doc, const char* key) {
    if (!doc.is_object() || !doc.contains(key)) malformed(std::string("missing key '") + key + "'");
    return doc.at(key);
}

double number(const json& v, const std::string& where) {
    if (!v.is_number()) malformed(where + " is not a number");
    return v.get<double>();
}

Eigen::VectorXd vector_from(const json& v, const std::string& name) {
    if (!v.is_array()) malformed(name + " is not an array");
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    for (size_t i = 0; i < v.size(); ++i) {
        out(static_cast<Eigen::Index>(i)) = number(v[i], name + "[" + std::to_string(i) + "]");
    }
    return out;
}

Eigen::MatrixXd matrix_from(const json& v, const std::string& name,
                            std::optional<size_t> cols = std::nullopt) {
    if (!v.is_array()) malformed(name + " is not an array of rows");
    const size_t rows = v.size();
    size_t width = cols.value_or(rows == 0 ? 0 : (v[0].is_array() ? v[0].size() : 0));
    Eigen::MatrixXd out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(width));
    for (size_t i = 0; i < rows; ++i) {
        const auto& row = v[i];
        const std::string where = name + "[" + std::to_string(i) + "]";
        if (!row.is_array()) malformed(where + " is not an array");
        if (row.size() != width) {
            malformed(where + " has " + std::to_string(row.size()) + " entries, expected " +
                      std::to_string(width));
        }
        for (size_t j = 0; j < width; ++j) {
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                number(row[j], where + "[" + std::to_string(j) + "]");
        }
    }
    return out;
}

json array_of(const Eigen::VectorXd& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

json rows_of(const Eigen::MatrixXd& m) {
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        out.push_back(std::move(row));
    }
    return out;
}

json violations(const std::vector<Violation>& items) {
    json out = json::array();
    for (const auto& v : items) {
        json entry{{"code", v.code}, {"message", v.message}};
        if (v.label) entry["label"] = *v.label;
        out.push_back(std::move(entry));
    }
    return out;
}

} // namespace

ChainSpec chain_from_json(const json& doc) {
    ChainSpec spec;
    const auto& n = field(doc, "n_internal");
    if (!n.is_number_integer()) malformed("n_internal is not an integer");
    spec.n_internal = n.get<Eigen::Index>();
    spec.p00 = matrix_from(field(doc, "p00"), "p00");
    spec.p01 = matrix_from(field(doc, "p01"), "p01", 2);
    spec.c = vector_from(field(doc, "c"), "c");
    spec.d0 = vector_from(field(doc, "d0"), "d0");
    spec.d1 = vector_from(field(doc, "d1"), "d1");
    return spec;
}

Strategy strategy_from_json(const json& doc) {
    try {
        return Strategy{vector_from(field(doc, "alpha0"), "alpha0"),
                        vector_from(field(doc, "alpha1"), "alpha1")};
    } catch (const TuningError& e) {
        throw TuningError(ErrorCode::InvalidStrategy, e.what());
    }
}

json to_json(const ChainSpec& spec) {
    return json{{"n_internal", spec.n_internal}, {"p00", rows_of(spec.p00)},
                {"p01", rows_of(spec.p01)},      {"c", array_of(spec.c)},
                {"d0", array_of(spec.d0)},       {"d1", array_of(spec.d1)}};
}

json to_json(const Strategy& strategy) {
    return json{{"alpha0", array_of(strategy.alpha0)}, {"alpha1", array_of(strategy.alpha1)}};
}

json to_json(const ValidationReport& report) {
    return json{{"valid", report.ok()},
                {"errors", violations(report.errors)},
                {"warnings", violations(report.warnings)}};
}

json to_json(const AbsorptionAnalysis& analysis) {
    return json{{"b", rows_of(analysis.b)}, {"r", array_of(analysis.r)}};
}

json to_json(const EmbeddedChain& chain) {
    return json{{"p_tilde", rows_of(chain.p_tilde)},
                {"pi", array_of(chain.pi)},
                {"rho", array_of(chain.rho)}};
}

json to_json(const OptimalControl& control) {
    return json{{"m0_star", control.m0_star.value},
                {"m1_star", control.m1_star.value},
                {"value", control.value},
                {"direction", std::string(to_string(control.direction))}};
}

json to_json(const RefutationReport& report) {
    json out{{"samples", report.samples},
             {"violations", report.violations},
             {"tolerance", report.tolerance}};
    out["best_observed"] = report.best_observed ? json(*report.best_observed) : json(nullptr);
    out["gap"] = report.gap ? json(*report.gap) : json(nullptr);
    return out;
}

json to_json(const SimulationStats& stats) {
    return json{{"cycles", stats.cycles},
                {"total_income", stats.total_income},
                {"i_hat", stats.i_hat},
                {"std_error", stats.std_error},
                {"boundary_counts", {stats.boundary_counts[0], stats.boundary_counts[1]}}};
}

json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw TuningError(ErrorCode::Io, "cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw TuningError(ErrorCode::Io, path.string() + ": " + e.what());
    }
}

void write_table_csv(std::ostream& out, const Eigen::MatrixXd& table) {
    const auto old = out.precision(kCsvDigits);
    out << "m0\\m1";
    for (Eigen::Index j = 0; j < table.cols(); ++j) out << ',' << label_of(j).value;
    out << '\n';
    for (Eigen::Index i = 0; i < table.rows(); ++i) {
        out << label_of(i).value;
        for (Eigen::Index j = 0; j < table.cols(); ++j) out << ',' << table(i, j);
        out << '\n';
    }
    out.precision(old);
}

void write_analysis_csv(std::ostream& out, const AbsorptionAnalysis& analysis) {
    const auto old = out.precision(kCsvDigits);
    out << "label,b0,b1,r\n";
    for (Eigen::Index i = 0; i < analysis.b.rows(); ++i) {
        out << label_of(i).value << ',' << analysis.b(i, 0) << ',' << analysis.b(i, 1) << ','
            << analysis.r(i) << '\n';
    }
    out.precision(old);
}

void write_trajectory_csv(std::ostream& out, std::span<const TrajectoryEvent> events) {
    const auto old = out.precision(kCsvDigits);
    out << "step,state,event_kind,income_delta\n";
    for (const auto& e : events) {
        out << e.step << ',' << e.state.value << ',' << to_string(e.kind) << ','
            << e.income_delta << '\n';
    }
    out.precision(old);
}

} // namespace tuning::io
