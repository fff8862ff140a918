#include "tuning/cli.hpp"
#include "tuning/json_io.hpp"

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using tuning::io::json;

namespace {

struct Result {
    int status;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int status = tuning::cli::run(args, out, err);
    return {status, out.str(), err.str()};
}

std::string fixture(const char* name) { return std::string(TUNING_FIXTURES) + "/" + name; }

json document(const Result& r) { return json::parse(r.out); }

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        std::vector<std::string> cells;
        std::istringstream fields(line);
        std::string cell;
        while (std::getline(fields, cell, ',')) cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return rows;
}

std::filesystem::path temp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

} // namespace

TEST_CASE("validate") {
    const auto ok = run({"validate", "--model", fixture("reference.json")});
    CHECK(ok.status == 0);
    CHECK(document(ok)["valid"] == true);

    const auto bad = run({"validate", "--model", fixture("row_sum.json")});
    CHECK(bad.status == 1);
    const auto doc = document(bad);
    REQUIRE(doc["errors"].size() == 1);
    CHECK(doc["errors"][0]["code"] == "ROW_SUM");
    CHECK(doc["errors"][0]["label"] == 2);

    const auto loop = run({"validate", "--model", fixture("no_absorption.json")});
    CHECK(loop.status == 1);
    CHECK(document(loop)["errors"][0]["code"] == "NO_ABSORPTION");

    const auto ragged = run({"validate", "--model", fixture("ragged.json")});
    CHECK(ragged.status == 1);
    CHECK(document(ragged)["errors"][0]["code"] == "MALFORMED");

    const auto strat = run({"validate", "-m", fixture("reference.json"), "-s",
                            fixture("bad_strategy.json")});
    CHECK(strat.status == 1);
    CHECK(document(strat)["errors"][0]["code"] == "NOT_NORMALIZED");
}

TEST_CASE("analyze") {
    const auto r = run({"analyze", "--model", fixture("reference.json")});
    CHECK(r.status == 0);
    const auto doc = document(r);
    CHECK(doc["b"][1][0].get<double>() == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(doc["r"][1].get<double>() == doctest::Approx(10.0 / 3.0).epsilon(1e-14));
    CHECK(doc["positivity"]["valid"] == true);

    const auto csv = run({"analyze", "--model", fixture("reference.json"), "--format", "csv"});
    CHECK(csv.status == 0);
    const auto rows = csv_rows(csv.out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == std::vector<std::string>{"label", "b0", "b1", "r"});
    CHECK(rows[1][0] == "2");
    CHECK(std::stod(rows[1][1]) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::stod(rows[2][3]) == doctest::Approx(10.0 / 3.0).epsilon(1e-14));

    const auto sing = run({"analyze", "--model", fixture("singular.json")});
    CHECK(sing.status == 3);
    CHECK(document(sing)["error"]["code"] == "SINGULAR_SYSTEM");
}

TEST_CASE("indicator") {
    for (const char* route : {"embedded", "ratio", "fractional"}) {
        const auto r = run({"indicator", "-m", fixture("reference.json"), "--degenerate", "3", "3",
                            "--route", route});
        CHECK(r.status == 0);
        CHECK(document(r)["value"].get<double>() == doctest::Approx(129.0 / 45.0).epsilon(1e-13));
    }
    const auto file = run({"indicator", "-m", fixture("reference.json"), "--strategy",
                           fixture("reference_uniform_strategy.json")});
    CHECK(file.status == 0);

    const auto missing = run({"indicator", "-m", fixture("reference.json")});
    CHECK(missing.status == 2);

    const auto out_of_range =
        run({"indicator", "-m", fixture("reference.json"), "--degenerate", "5", "2"});
    CHECK(out_of_range.status == 2);
    CHECK(document(out_of_range)["error"]["code"] == "LABEL_OUT_OF_RANGE");

    const auto degenerate = run({"indicator", "-m", fixture("split_boundaries.json"),
                                 "--degenerate", "2", "3", "--positivity-epsilon", "-1"});
    CHECK(degenerate.status == 3);
    CHECK(document(degenerate)["error"]["code"] == "DEGENERATE_CHAIN");

    const auto forced = run({"indicator", "-m", fixture("single_state.json")});
    CHECK(forced.status == 0);
    CHECK(document(forced)["value"].get<double>() == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("table") {
    const auto r = run({"table", "-m", fixture("reference.json")});
    CHECK(r.status == 0);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == std::vector<std::string>{"m0\\m1", "2", "3"});
    CHECK(rows[1][0] == "2");
    CHECK(rows[2][0] == "3");
    const double expected[2][2] = {{1.9, 2.68}, {71.0 / 35.0, 129.0 / 45.0}};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            CHECK(rows[i + 1][j + 1].size() >= 16); // full precision
            CHECK(std::stod(rows[i + 1][j + 1]) == doctest::Approx(expected[i][j]).epsilon(1e-14));
        }
    }
    const auto b = run({"table", "-m", fixture("reference.json"), "--which", "b", "--format", "json"});
    CHECK(b.status == 0);
    CHECK(document(b)["values"][0][0].get<double>() == doctest::Approx(1.0));
    const auto one_sided = run({"table", "-m", fixture("one_sided.json")});
    CHECK(one_sided.status == 3);
}

TEST_CASE("solve") {
    const auto r = run({"solve", "-m", fixture("reference.json"), "--direction", "max",
                        "--refute-samples", "1000", "--seed", "3"});
    CHECK(r.status == 0);
    const auto doc = document(r);
    CHECK(doc["m0_star"] == 3);
    CHECK(doc["m1_star"] == 3);
    CHECK(doc["value"].get<double>() == doctest::Approx(129.0 / 45.0).epsilon(1e-13));
    CHECK(doc["refutation"]["violations"] == 0);

    const auto table_path = temp_file("tuning_cli_test_table.csv");
    const auto min = run({"solve", "-m", fixture("reference.json"), "--direction", "min",
                          "--table-csv", table_path.string()});
    CHECK(min.status == 0);
    CHECK(document(min)["m0_star"] == 2);
    std::ifstream table(table_path);
    std::string header;
    std::getline(table, header);
    CHECK(header == "m0\\m1,2,3");

    const auto one_sided = run({"solve", "-m", fixture("one_sided.json")});
    CHECK(one_sided.status == 3);
    CHECK(document(one_sided)["error"]["code"] == "B_NOT_POSITIVE");
}

TEST_CASE("simulate") {
    const std::vector<std::string> args{"simulate", "-m", fixture("reference.json"), "--degenerate",
                                        "3", "3", "--cycles", "100000", "--seed", "42"};
    const auto a = run(args);
    const auto b = run(args);
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    const auto doc = document(a);
    CHECK(doc["cycles"] == 100000);
    CHECK(std::abs(doc["i_hat"].get<double>() - 129.0 / 45.0) <=
          4.0 * doc["std_error"].get<double>());

    const auto limit = run({"simulate", "-m", fixture("slow.json"), "--cycles", "1000",
                            "--max-segment-steps", "5"});
    CHECK(limit.status == 3);
    CHECK(document(limit)["error"]["code"] == "CYCLE_LIMIT");

    const auto det = run({"simulate", "-m", fixture("single_state.json"), "--cycles", "50",
                          "--replications", "3"});
    CHECK(det.status == 0);
    CHECK(document(det)["i_hat"].get<double>() == 4.0);
    CHECK(document(det)["std_error"].get<double>() == 0.0);
}

TEST_CASE("TUNING_SEED sets the default seed") {
    const std::vector<std::string> base{"simulate", "-m", fixture("reference.json"), "--degenerate",
                                        "2", "3", "--cycles", "500"};
    auto with_seed = base;
    with_seed.insert(with_seed.end(), {"--seed", "77"});
    const auto explicit_seed = run(with_seed);

    ::setenv("TUNING_SEED", "77", 1);
    const auto from_env = run(base);
    ::unsetenv("TUNING_SEED");
    const auto default_seed = run(base);
    CHECK(from_env.out == explicit_seed.out);
    CHECK(default_seed.out != explicit_seed.out);
}

TEST_CASE("trajectory") {
    const auto r = run({"trajectory", "-m", fixture("reference.json"), "--degenerate", "2", "3",
                        "--max-steps", "20", "--seed", "1"});
    CHECK(r.status == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "step,state,event_kind,income_delta");
    int rows = 0;
    while (std::getline(lines, line)) ++rows;
    CHECK(rows == 20);
}

TEST_CASE("usage errors") {
    CHECK(run({}).status == 2);
    CHECK(run({"solve"}).status == 2);
    CHECK(run({"solve", "-m", fixture("reference.json"), "--bogus"}).status == 2);
    CHECK(run({"frobnicate"}).status == 2);
    CHECK(run({"solve", "-m", fixture("reference.json"), "--direction", "sideways"}).status == 2);
    CHECK(run({"solve", "-m", fixture("missing.json")}).status == 2);
    const auto usage = run({"solve", "-m", fixture("reference.json"), "--bogus"});
    CHECK(document(usage)["error"]["code"] == "USAGE");
    CHECK(run({"trajectory", "-m", fixture("reference.json"), "--degenerate", "2", "2",
               "--echo-model"}).status == 2);
}

TEST_CASE("echo-model round trip") {
    const auto first = run({"analyze", "-m", fixture("reference.json"), "--echo-model"});
    REQUIRE(first.status == 0);
    const auto doc = document(first);
    const auto path = temp_file("tuning_cli_test_echo.json");
    {
        std::ofstream f(path);
        f << doc["model"].dump();
    }
    CHECK(run({"validate", "-m", path.string()}).status == 0);
    const auto second = run({"analyze", "-m", path.string(), "--echo-model"});
    CHECK(second.out == first.out);
}

TEST_CASE("--out writes the document to a file") {
    const auto path = temp_file("tuning_cli_test_out.json");
    const auto r = run({"solve", "-m", fixture("reference.json"), "--out", path.string()});
    CHECK(r.status == 0);
    CHECK(r.out.empty());
    CHECK(tuning::io::load_json(path)["m0_star"] == 3);
}

TEST_CASE("installed binary reports exit statuses") {
    auto status_of = [](const std::string& args) {
        const std::string cmd = std::string(TUNING_CLI) + " " + args + " > /dev/null 2>&1";
        const int raw = std::system(cmd.c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    CHECK(status_of("solve -m " + fixture("reference.json")) == 0);
    CHECK(status_of("validate -m " + fixture("row_sum.json")) == 1);
    CHECK(status_of("solve --nonsense") == 2);
    CHECK(status_of("analyze -m " + fixture("singular.json")) == 3);
}
