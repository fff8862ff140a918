#include "tuning/cli.hpp"

#include "tuning/absorption.hpp"
#include "tuning/error.hpp"
#include "tuning/json_io.hpp"
#include "tuning/optimizer.hpp"
#include "tuning/simulator.hpp"
#include "tuning/stationary.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

namespace tuning::cli {

namespace {

using io::json;

enum class Command { Validate, Analyze, Indicator, Table, Solve, Simulate, Trajectory };

struct RunConfig {
    Command command = Command::Validate;
    std::string model_path;
    std::string strategy_path;
    std::vector<int> degenerate;
    std::string format = "json";
    std::string table_format = "csv";
    std::string out_path;
    bool echo_model = false;

    std::string direction = "max";
    std::string route = "embedded";
    std::string which = "c";
    std::string table_csv;
    double positivity_epsilon = kDefaultPositivityEpsilon;
    std::int64_t cycles = 100000;
    std::int64_t replications = 1;
    std::int64_t samples = 0;
    std::int64_t max_steps = 1000;
    std::uint64_t max_segment_steps = SimulationOptions{}.max_segment_steps;
    std::optional<std::uint64_t> seed;
};

// Carries an exit status and a ready-made document up to run().
struct Failure {
    int status;
    json document;
};

[[noreturn]] void fail(int status, std::string_view code, const std::string& message) {
    throw Failure{status, json{{"error", {{"code", std::string(code)}, {"message", message}}}}};
}

int status_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::SingularSystem:
    case ErrorCode::BNotPositive:
    case ErrorCode::DegenerateChain:
    case ErrorCode::CycleLimit: return kNumericFailure;
    case ErrorCode::InvalidModel:
    case ErrorCode::InvalidStrategy: return kValidationFailed;
    case ErrorCode::DimensionMismatch:
    case ErrorCode::LabelOutOfRange:
    case ErrorCode::Io: return kUsage;
    }
    return kUsage;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("TUNING_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            fail(kUsage, "USAGE", std::string("TUNING_SEED is not an unsigned integer: ") + env);
        }
    }
    return 0;
}

ChainSpec load_model(const RunConfig& cfg) {
    ChainSpec spec;
    try {
        spec = io::chain_from_json(io::load_json(cfg.model_path));
    } catch (const TuningError& e) {
        if (e.code() == ErrorCode::Io) throw;
        ValidationReport report;
        report.errors.push_back({"MALFORMED", e.what(), std::nullopt});
        throw Failure{kValidationFailed, io::to_json(report)};
    }
    if (cfg.command == Command::Validate) return spec;
    const auto report = validate_chain(spec);
    if (!report.ok()) throw Failure{kValidationFailed, io::to_json(report)};
    return spec;
}

Strategy load_strategy(const RunConfig& cfg, const ChainSpec& spec) {
    Strategy strategy;
    if (!cfg.degenerate.empty()) {
        strategy = degenerate_strategy(Label{cfg.degenerate[0]}, Label{cfg.degenerate[1]},
                                       spec.n_internal);
    } else if (!cfg.strategy_path.empty()) {
        try {
            strategy = io::strategy_from_json(io::load_json(cfg.strategy_path));
        } catch (const TuningError& e) {
            if (e.code() == ErrorCode::Io) throw;
            ValidationReport report;
            report.errors.push_back({"MALFORMED", e.what(), std::nullopt});
            throw Failure{kValidationFailed, io::to_json(report)};
        }
    } else if (spec.n_internal == 1) {
        strategy = uniform_strategy(1); // the only strategy there is
    } else {
        fail(kUsage, "USAGE", "a strategy is required: --strategy FILE or --degenerate M0 M1");
    }
    const auto report = validate_strategy(strategy, spec.n_internal);
    if (!report.ok()) throw Failure{kValidationFailed, io::to_json(report)};
    return strategy;
}

class Output {
public:
    Output(const RunConfig& cfg, std::ostream& fallback) : stream_(&fallback) {
        if (!cfg.out_path.empty()) {
            file_.open(cfg.out_path);
            if (!file_) fail(kUsage, "IO_ERROR", "cannot write " + cfg.out_path);
            stream_ = &file_;
        }
    }

    std::ostream& stream() { return *stream_; }

    void document(json doc) { *stream_ << doc.dump(2) << '\n'; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

json with_model(json doc, const RunConfig& cfg, const ChainSpec& spec) {
    if (cfg.echo_model) doc["model"] = io::to_json(spec);
    return doc;
}

int execute(const RunConfig& cfg, Output& output) {
    const ChainSpec spec = load_model(cfg);
    const bool csv = cfg.format == "csv";

    switch (cfg.command) {
    case Command::Validate: {
        json doc = io::to_json(validate_chain(spec));
        bool ok = doc["valid"].get<bool>();
        if (ok && (!cfg.strategy_path.empty() || !cfg.degenerate.empty())) {
            const auto s = load_strategy(cfg, spec);
            doc["strategy"] = io::to_json(validate_strategy(s, spec.n_internal));
        }
        output.document(with_model(std::move(doc), cfg, spec));
        return ok ? kOk : kValidationFailed;
    }
    case Command::Analyze: {
        const auto analysis = analyze(spec);
        if (csv) {
            io::write_analysis_csv(output.stream(), analysis);
        } else {
            json doc = io::to_json(analysis);
            doc["positivity"] = io::to_json(check_positivity(analysis, cfg.positivity_epsilon));
            output.document(with_model(std::move(doc), cfg, spec));
        }
        return kOk;
    }
    case Command::Indicator: {
        const auto strategy = load_strategy(cfg, spec);
        const auto analysis = analyze(spec);
        const auto route = parse_route(cfg.route);
        const double value = indicator(strategy, spec, analysis, route, cfg.positivity_epsilon);
        json doc{{"value", value}, {"route", std::string(to_string(route))},
                 {"strategy", io::to_json(strategy)}};
        output.document(with_model(std::move(doc), cfg, spec));
        return kOk;
    }
    case Command::Table: {
        const auto analysis = analyze(spec);
        require_positive(analysis, cfg.positivity_epsilon);
        const auto tables = cost_coefficients(spec, analysis);
        const auto& table = cfg.which == "a" ? tables.a_table
                            : cfg.which == "b" ? tables.b_table
                                               : tables.c_table;
        if (cfg.table_format == "csv") {
            io::write_table_csv(output.stream(), table);
        } else {
            json rows = json::array();
            for (Eigen::Index i = 0; i < table.rows(); ++i) {
                json row = json::array();
                for (Eigen::Index j = 0; j < table.cols(); ++j) row.push_back(table(i, j));
                rows.push_back(std::move(row));
            }
            output.document(with_model(json{{"table", cfg.which}, {"values", rows}}, cfg, spec));
        }
        return kOk;
    }
    case Command::Solve: {
        const auto control =
            solve_tuning(spec, parse_direction(cfg.direction), cfg.positivity_epsilon);
        json doc = io::to_json(control);
        if (cfg.samples > 0) {
            const auto report = refute_with_random_strategies(spec, control, cfg.samples,
                                                              cfg.seed.value_or(default_seed()));
            doc["refutation"] = io::to_json(report);
        }
        if (!cfg.table_csv.empty()) {
            std::ofstream table(cfg.table_csv);
            if (!table) fail(kUsage, "IO_ERROR", "cannot write " + cfg.table_csv);
            io::write_table_csv(table, control.tables.c_table);
        }
        output.document(with_model(std::move(doc), cfg, spec));
        return kOk;
    }
    case Command::Simulate: {
        const auto strategy = load_strategy(cfg, spec);
        const auto stats =
            simulate(spec, strategy, cfg.cycles, cfg.seed.value_or(default_seed()),
                     cfg.replications, SimulationOptions{cfg.max_segment_steps});
        output.document(with_model(io::to_json(stats), cfg, spec));
        return kOk;
    }
    case Command::Trajectory: {
        const auto strategy = load_strategy(cfg, spec);
        const auto events =
            sample_trajectory(spec, strategy, cfg.max_steps, cfg.seed.value_or(default_seed()));
        io::write_trajectory_csv(output.stream(), events);
        return kOk;
    }
    }
    return kUsage;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("-m,--model", cfg.model_path, "Model JSON file")->required();
    sub->add_option("-o,--out", cfg.out_path, "Write the document here instead of stdout");
    sub->add_flag("--echo-model", cfg.echo_model, "Embed the parsed model in the JSON output");
}

void add_strategy(CLI::App* sub, RunConfig& cfg) {
    auto* file = sub->add_option("-s,--strategy", cfg.strategy_path, "Strategy JSON file");
    auto* point = sub->add_option("--degenerate", cfg.degenerate,
                                  "Point-mass strategy at labels M0 M1")
                      ->expected(2);
    file->excludes(point);
}

void add_positivity(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--positivity-epsilon", cfg.positivity_epsilon,
                    "Absorption probabilities must exceed this; negative disables the check")
        ->capture_default_str();
}

void add_seed(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--seed", cfg.seed, "RNG seed (default: $TUNING_SEED or 0)");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Optimal intervention control of absorbing Markov chains", "tuning"};
    app.require_subcommand(1);
    app.allow_extras(false);

    auto* validate = app.add_subcommand("validate", "Check a model (and optionally a strategy)");
    add_common(validate, cfg);
    add_strategy(validate, cfg);

    auto* analyze_cmd = app.add_subcommand("analyze", "Absorption probabilities and incomes");
    add_common(analyze_cmd, cfg);
    add_positivity(analyze_cmd, cfg);
    analyze_cmd->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "csv"}));

    auto* indicator_cmd = app.add_subcommand("indicator", "Stationary cost indicator of a strategy");
    add_common(indicator_cmd, cfg);
    add_strategy(indicator_cmd, cfg);
    add_positivity(indicator_cmd, cfg);
    indicator_cmd->add_option("--route", cfg.route)
        ->check(CLI::IsMember({"embedded", "fractional", "ratio"}))
        ->capture_default_str();

    auto* table = app.add_subcommand("table", "Test-function tables over the control grid");
    add_common(table, cfg);
    add_positivity(table, cfg);
    table->add_option("--which", cfg.which, "a, b or c")->check(CLI::IsMember({"a", "b", "c"}));
    table->add_option("--format", cfg.table_format)->check(CLI::IsMember({"json", "csv"}));

    auto* solve = app.add_subcommand("solve", "Optimal deterministic control");
    add_common(solve, cfg);
    add_positivity(solve, cfg);
    add_seed(solve, cfg);
    solve->add_option("--direction", cfg.direction)
        ->check(CLI::IsMember({"max", "min", "maximize", "minimize"}))
        ->capture_default_str();
    solve->add_option("--refute-samples", cfg.samples, "Random strategies to test against")
        ->check(CLI::NonNegativeNumber);
    solve->add_option("--table-csv", cfg.table_csv, "Also write the C table as CSV");

    auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo estimate of the indicator");
    add_common(simulate_cmd, cfg);
    add_strategy(simulate_cmd, cfg);
    add_seed(simulate_cmd, cfg);
    simulate_cmd->add_option("--cycles", cfg.cycles)->check(CLI::PositiveNumber)->capture_default_str();
    simulate_cmd->add_option("--replications", cfg.replications)
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    simulate_cmd->add_option("--max-segment-steps", cfg.max_segment_steps)
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    auto* trajectory = app.add_subcommand("trajectory", "Sample path as CSV");
    add_common(trajectory, cfg);
    add_strategy(trajectory, cfg);
    add_seed(trajectory, cfg);
    trajectory->add_option("--max-steps", cfg.max_steps)->check(CLI::PositiveNumber)->capture_default_str();

    std::vector<const char*> argv{"tuning"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        out << json{{"error", {{"code", "USAGE"}, {"message", e.what()}}}}.dump(2) << '\n';
        return kUsage;
    }

    const std::pair<CLI::App*, Command> commands[] = {
        {validate, Command::Validate},   {analyze_cmd, Command::Analyze},
        {indicator_cmd, Command::Indicator}, {table, Command::Table},
        {solve, Command::Solve},         {simulate_cmd, Command::Simulate},
        {trajectory, Command::Trajectory}};
    for (const auto& [sub, command] : commands) {
        if (sub->parsed()) cfg.command = command;
    }

    std::optional<Output> output;
    try {
        output.emplace(cfg, out);
        const bool csv_document =
            (cfg.command == Command::Analyze && cfg.format == "csv") ||
            (cfg.command == Command::Table && cfg.table_format == "csv") ||
            cfg.command == Command::Trajectory;
        if (cfg.echo_model && csv_document) {
            fail(kUsage, "USAGE", "--echo-model requires JSON output");
        }
        return execute(cfg, *output);
    } catch (const Failure& f) {
        const auto& doc = f.document;
        if (doc.contains("error")) err << doc["error"]["message"].get<std::string>() << '\n';
        (output ? output->stream() : out) << doc.dump(2) << '\n';
        return f.status;
    } catch (const TuningError& e) {
        err << e.what() << '\n';
        (output ? output->stream() : out)
            << json{{"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}}}.dump(2)
            << '\n';
        return status_for(e.code());
    } catch (const std::exception& e) {
        err << e.what() << '\n';
        (output ? output->stream() : out)
            << json{{"error", {{"code", "USAGE"}, {"message", e.what()}}}}.dump(2) << '\n';
        return kUsage;
    }
}

} // namespace tuning::cli
