#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli_app.hpp"
#include "submatroid/serialize.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
    int exit_code;
    std::string out;
    std::string err;
};

CliResult cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = submatroid::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / ("submatroid_test_" + name);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("generate, solve, verify pipeline") {
    const fs::path inst = temp_file("pipeline.json");
    CliResult gen = cli({"generate", "random", "--shape", "partition", "--m", "2", "--n", "4",
                         "--seed", "5", "--out", inst.string()});
    REQUIRE(gen.exit_code == 0);

    CliResult solve = cli({"solve", inst.string(), "--algorithm", "greedy-m"});
    CHECK(solve.exit_code == 0);
    const auto report = nlohmann::json::parse(solve.out);
    CHECK(report.at("analysis").at("bounds").contains("partition"));

    CliResult verify = cli({"verify", inst.string(), "--algorithm", "greedy-on"});
    CHECK(verify.exit_code == 0);
    const auto verification = nlohmann::json::parse(verify.out);
    CHECK(verification.at("verification").at("all_pass") == true);
    CHECK(verification.at("verification").at("online").at("permutations") == 24);
    fs::remove(inst);
}

TEST_CASE("solve output is deterministic") {
    const fs::path inst = temp_file("det.json");
    REQUIRE(cli({"generate", "random", "--shape", "tabular", "--n", "6", "--matroid", "partition",
                 "--seed", "9", "--out", inst.string()})
                .exit_code == 0);
    CliResult a = cli({"solve", inst.string(), "--algorithm", "greedy"});
    CliResult b = cli({"solve", inst.string(), "--algorithm", "greedy"});
    CHECK(a.out == b.out);
    fs::remove(inst);
}

TEST_CASE("solving a modular instance reports a unit discriminant bound") {
    const fs::path inst = temp_file("modular.json");
    {
        submatroid::GroundSet g(4);
        submatroid::Instance instance{submatroid::GeneralInstance{
            submatroid::Valuation::modular(g, {4, 3, 2, 1}), submatroid::Matroid::uniform(g, 2)}};
        submatroid::save_instance(instance, inst);
    }
    CliResult solve = cli({"solve", inst.string(), "--algorithm", "greedy"});
    REQUIRE(solve.exit_code == 0);
    const auto report = nlohmann::json::parse(solve.out);
    CHECK(report.at("analysis").at("bounds").at("general").get<double>() == 1.0);
    fs::remove(inst);
}

TEST_CASE("eps-preferring ties steer the tight general instance") {
    const fs::path inst = temp_file("tg.json");
    REQUIRE(cli({"generate", "tight-general", "--c", "0.5", "--d", "1.5", "--K", "4", "--out",
                 inst.string()})
                .exit_code == 0);
    CliResult solve = cli({"solve", inst.string(), "--algorithm", "greedy", "--tie-policy",
                           "prefer:4,5,6,7"});
    REQUIRE(solve.exit_code == 0);
    const auto report = nlohmann::json::parse(solve.out);
    const double value = report.at("trace").at("final_value").get<double>();
    // d * sum of (d(1-c))^{i-1} for i = 1..4
    CHECK(value == doctest::Approx(1.5 * (1 + 0.75 + 0.5625 + 0.421875)).epsilon(1e-12));
    fs::remove(inst);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(cli({"solve"}).exit_code == 2);
    CHECK(cli({"bogus"}).exit_code == 2);
    CHECK(cli({"solve", "/nonexistent.json", "--algorithm", "greedy"}).exit_code == 2);

    const fs::path inst = temp_file("usage.json");
    REQUIRE(cli({"generate", "random", "--shape", "tabular", "--n", "5", "--seed", "3", "--out",
                 inst.string()})
                .exit_code == 0);
    CHECK(cli({"solve", inst.string(), "--algorithm", "simplex"}).exit_code == 2);
    CHECK(cli({"solve", inst.string(), "--algorithm", "greedy-m"}).exit_code == 2);
    CHECK(cli({"solve", inst.string(), "--algorithm", "greedy", "--tie-policy", "sideways"})
              .exit_code == 2);
    fs::remove(inst);

    const fs::path part = temp_file("usage_part.json");
    REQUIRE(cli({"generate", "random", "--shape", "partition", "--m", "2", "--n", "3", "--seed",
                 "4", "--out", part.string()})
                .exit_code == 0);
    CliResult bad_arrival =
        cli({"solve", part.string(), "--algorithm", "greedy-on", "--arrival", "0,1,1"});
    CHECK(bad_arrival.exit_code == 2);
    CHECK(bad_arrival.err.find("permutation") != std::string::npos);
    fs::remove(part);

    CliResult bad_params = cli({"generate", "tight-partition", "--c", "0.5", "--d", "2.5"});
    CHECK(bad_params.exit_code == 2);
    CHECK(bad_params.err.find("1/(1-c)") != std::string::npos);
}

TEST_CASE("a broken explicit family fails before any run") {
    const fs::path inst = temp_file("broken_family.json");
    {
        std::ofstream out(inst);
        out << R"({
          "format_version": 1,
          "ground": {"size": 2},
          "matroid": {"kind": "explicit-family", "independent_sets": [[], [0], [0, 1]]},
          "valuation": {"kind": "modular", "weights": [1, 1]}
        })";
    }
    CliResult verify = cli({"verify", inst.string(), "--algorithm", "greedy"});
    CHECK(verify.exit_code == 2);
    CHECK(verify.err.find("hereditary") != std::string::npos);
    CHECK(cli({"solve", inst.string(), "--algorithm", "greedy"}).exit_code == 2);
    fs::remove(inst);
}

TEST_CASE("validate flags broken oracles with exit code 1") {
    const fs::path inst = temp_file("broken.json");
    {
        std::ofstream out(inst);
        out << R"({
          "format_version": 1,
          "ground": {"size": 2},
          "matroid": {"kind": "uniform", "rank": 2},
          "valuation": {"kind": "tabular", "table": {"0": 0, "1": 2, "2": 1, "3": 1}}
        })";
    }
    CliResult validate = cli({"validate", inst.string()});
    CHECK(validate.exit_code == 1);
    const auto report = nlohmann::json::parse(validate.out);
    CHECK(report.at("passed") == false);
    CHECK(report.at("violations").size() > 0);

    const fs::path good = temp_file("good.json");
    REQUIRE(cli({"generate", "random", "--shape", "tabular", "--n", "5", "--seed", "8", "--out",
                 good.string()})
                .exit_code == 0);
    CHECK(cli({"validate", good.string()}).exit_code == 0);
    fs::remove(inst);
    fs::remove(good);
}

TEST_CASE("SUBMATROID_CAP bounds the enumeration") {
    const fs::path inst = temp_file("cap.json");
    REQUIRE(cli({"generate", "random", "--shape", "tabular", "--n", "8", "--matroid", "uniform",
                 "--seed", "12", "--out", inst.string()})
                .exit_code == 0);
    setenv("SUBMATROID_CAP", "2", 1);
    CliResult capped = cli({"verify", inst.string(), "--algorithm", "greedy"});
    unsetenv("SUBMATROID_CAP");
    CHECK(capped.exit_code == 3);
    CHECK(capped.err.find("cap") != std::string::npos);
    CHECK(cli({"verify", inst.string(), "--algorithm", "greedy"}).exit_code == 0);
    fs::remove(inst);
}

TEST_CASE("verify on default tight-partition parameters converges to its limit") {
    const fs::path inst = temp_file("tp_default.json");
    REQUIRE(cli({"generate", "tight-partition", "--out", inst.string()}).exit_code == 0);
    CliResult verify = cli({"verify", inst.string(), "--algorithm", "greedy-m"});
    REQUIRE(verify.exit_code == 0);
    const auto report = nlohmann::json::parse(verify.out);
    CHECK(report.at("verification").at("all_pass") == true);
    for (const auto& check : report.at("verification").at("checks")) {
        if (check.at("name") != "discriminant") continue;
        CHECK(check.at("bound").get<double>() == doctest::Approx(6.0 / 7.0).epsilon(1e-9));
        CHECK(check.at("slack").get<double>() >= 0.0);
        CHECK(check.at("slack").get<double>() <= 1e-3);
    }
    fs::remove(inst);
}

TEST_CASE("verify writes sampled sweeps with their seed") {
    const fs::path inst = temp_file("sampled.json");
    REQUIRE(cli({"generate", "random", "--shape", "partition", "--m", "3", "--n", "5", "--seed",
                 "6", "--out", inst.string()})
                .exit_code == 0);
    CliResult sampled = cli({"verify", inst.string(), "--algorithm", "greedy-on", "--sample",
                             "20", "--seed", "123"});
    REQUIRE(sampled.exit_code == 0);
    const auto report = nlohmann::json::parse(sampled.out);
    CHECK(report.at("verification").at("online").at("exhaustive") == false);
    CHECK(report.at("verification").at("online").at("seed") == 123);
    CHECK(report.at("verification").at("online").at("permutations") == 20);
    fs::remove(inst);
}

TEST_SUITE_END();
