#include "cli_app.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "submatroid/brute_force.hpp"
#include "submatroid/errors.hpp"
#include "submatroid/instances.hpp"
#include "submatroid/serialize.hpp"
#include "submatroid/validate.hpp"

namespace submatroid::cli {

namespace {

std::uint64_t enumeration_cap() {
    if (const char* env = std::getenv("SUBMATROID_CAP")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw InputError("SUBMATROID_CAP must be a positive integer");
        }
    }
    return kDefaultEnumerationCap;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw InputError(what + ": '" + item + "' is not an integer");
        }
    }
    if (out.empty()) throw InputError(what + ": empty list");
    return out;
}

GreedyConfig make_greedy_config(const std::string& tie_policy, double tolerance) {
    GreedyConfig config;
    config.tolerance.relative = tolerance;
    if (tie_policy == "lowest-index") {
        config.tie_policy = TiePolicy::LowestIndex;
    } else if (tie_policy == "highest-index") {
        config.tie_policy = TiePolicy::HighestIndex;
    } else if (tie_policy.rfind("prefer:", 0) == 0) {
        config.tie_policy = TiePolicy::PreferenceList;
        config.preference = parse_int_list(tie_policy.substr(7), "--tie-policy preference list");
    } else {
        throw InputError("--tie-policy must be lowest-index, highest-index, or prefer:<ids>");
    }
    return config;
}

std::string tie_policy_name(const GreedyConfig& config) {
    switch (config.tie_policy) {
    case TiePolicy::LowestIndex: return "lowest-index";
    case TiePolicy::HighestIndex: return "highest-index";
    case TiePolicy::PreferenceList: return "preference-list";
    }
    return "lowest-index";
}

void write_output(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(out_path);
    if (!file) throw InputError(out_path + ": cannot open for writing");
    file << text;
}

struct CommonOptions {
    std::string instance_path;
    std::string algorithm = "greedy";
    std::string tie_policy = "lowest-index";
    std::string arrival;
    std::string out_path;
    double tolerance = 1e-9;
};

std::vector<int> resolve_arrival(const CommonOptions& opts, int resources) {
    if (opts.arrival.empty()) {
        std::vector<int> identity(static_cast<size_t>(resources));
        for (int i = 0; i < resources; ++i) identity[static_cast<size_t>(i)] = i;
        return identity;
    }
    return parse_int_list(opts.arrival, "--arrival");
}

int cmd_solve(const CommonOptions& opts, std::ostream& out) {
    const Instance instance = load_instance(opts.instance_path);
    const GreedyConfig config = make_greedy_config(opts.tie_policy, opts.tolerance);

    RunReport report;
    report.config.algorithm = opts.algorithm;
    report.config.tie_policy = tie_policy_name(config);
    report.config.preference = config.preference;
    report.config.tolerance = config.tolerance;

    GroundSet ground;
    if (opts.algorithm == "greedy") {
        const GeneralInstance general = to_general(instance);
        report.trace = run_greedy(general.valuation, general.matroid, config);
        report.analysis = analyze_greedy(general.valuation, general.matroid, report.trace,
                                         config.tolerance);
        ground = general.valuation.ground();
    } else if (opts.algorithm == "greedy-m") {
        if (opts.tie_policy != "lowest-index")
            throw InputError("--tie-policy applies to the greedy algorithm only; greedy-m uses "
                             "its own tie rule");
        const PartitionInstance& partition = as_partition(instance);
        report.trace = run_greedy_m(partition, config.tolerance);
        report.analysis = analyze_greedy_m(partition, report.trace, config.tolerance);
        ground = partition.pair_ground();
    } else if (opts.algorithm == "greedy-on") {
        if (opts.tie_policy != "lowest-index")
            throw InputError("--tie-policy applies to the greedy algorithm only; greedy-on uses "
                             "its own tie rule");
        const PartitionInstance& partition = as_partition(instance);
        const std::vector<int> arrival = resolve_arrival(opts, partition.num_resources());
        report.trace = run_greedy_on(partition, arrival, config.tolerance);
        report.analysis = analyze_greedy_on(partition, report.trace, config.tolerance);
        report.config.arrival = arrival;
        ground = partition.pair_ground();
    } else {
        throw InputError("--algorithm must be greedy, greedy-m, or greedy-on");
    }
    write_output(run_report_to_json(report, ground), opts.out_path, out);
    return 0;
}

int cmd_verify(const CommonOptions& opts, bool all_permutations, std::optional<int> sample,
               std::uint64_t seed, std::ostream& out) {
    const Instance instance = load_instance(opts.instance_path);
    const std::uint64_t cap = enumeration_cap();
    const Tolerance tol{opts.tolerance, 1e-12};

    RunConfigEcho echo;
    echo.algorithm = opts.algorithm;
    echo.tolerance = tol;

    VerificationRecord record;
    if (opts.algorithm == "greedy") {
        const GeneralInstance general = to_general(instance);
        GreedyConfig config = make_greedy_config(opts.tie_policy, opts.tolerance);
        echo.tie_policy = tie_policy_name(config);
        echo.preference = config.preference;
        const auto reference = analytic_optimum(general.valuation, general.matroid);
        record = verify_greedy(general.valuation, general.matroid, config, reference, cap);
    } else if (opts.algorithm == "greedy-m") {
        const PartitionInstance& partition = as_partition(instance);
        record = verify_greedy_m(partition, tol, analytic_optimum(partition), cap);
    } else if (opts.algorithm == "greedy-on") {
        PermutationMode mode = PermutationMode::all_permutations();
        if (sample) {
            mode = PermutationMode::sampled(*sample, seed);
            echo.seed = seed;
        } else if (!all_permutations) {
            // Default to the exhaustive sweep; it is the meaningful check.
        }
        const PartitionInstance& partition = as_partition(instance);
        record = verify_greedy_on(partition, mode, tol, analytic_optimum(partition), cap);
    } else {
        throw InputError("--algorithm must be greedy, greedy-m, or greedy-on");
    }
    write_output(verification_to_json(record, echo), opts.out_path, out);
    return record.all_pass ? 0 : 1;
}

int cmd_validate(const std::string& instance_path, int limit, const std::string& out_path,
                 std::ostream& out) {
    const Instance instance = load_instance(instance_path);
    const GeneralInstance general = to_general(instance);
    ValidationLimits limits;
    limits.exhaustive_limit = limit;
    const ValidationReport report = validate_oracles(general.valuation, general.matroid, limits);
    write_output(validation_to_json(report, general.valuation.ground()), out_path, out);
    return report.passed() ? 0 : 1;
}

struct GenerateOptions {
    std::string family;
    double c = 0.5;
    double d = 1.5;
    double epsilon = 1e-6;
    int n = 8;
    bool n_given = false;
    int k = 40;
    int m = 2;
    std::string shape = "tabular";
    std::string matroid = "uniform";
    std::uint64_t seed = 0;
    std::string out_path;
};

int cmd_generate(const GenerateOptions& opts, std::ostream& out) {
    Instance instance = [&]() -> Instance {
        if (opts.family == "tight-partition") {
            // default depth 30: deep enough for the ratio to sit within
            // 1e-3 of its limit
            TightPartitionParams params{opts.c, opts.d, opts.epsilon,
                                        opts.n_given ? opts.n : 30};
            return gen_tight_partition(params);
        }
        if (opts.family == "tight-general") {
            TightGeneralParams params{opts.c, opts.d, opts.k};
            return gen_tight_general(params);
        }
        if (opts.family == "random") {
            if (opts.shape == "tabular") {
                RandomMatroidKind kind;
                if (opts.matroid == "uniform") kind = RandomMatroidKind::Uniform;
                else if (opts.matroid == "partition") kind = RandomMatroidKind::Partition;
                else if (opts.matroid == "explicit") kind = RandomMatroidKind::Explicit;
                else throw InputError("--matroid must be uniform, partition, or explicit");
                return gen_random_tabular(opts.seed, opts.n, kind);
            }
            if (opts.shape == "partition")
                return gen_random_partition(opts.seed, opts.m, opts.n);
            throw InputError("--shape must be tabular or partition");
        }
        throw InputError("family must be tight-partition, tight-general, or random");
    }();
    write_output(emit_instance(instance), opts.out_path, out);
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Greedy submodular maximization under matroid constraints, with "
                 "instance-dependent guarantee analysis"};
    app.require_subcommand(1);

    CommonOptions solve_opts;
    CLI::App* solve = app.add_subcommand("solve", "Run an algorithm and write a run report");
    solve->add_option("instance", solve_opts.instance_path, "Instance file")->required();
    solve->add_option("--algorithm", solve_opts.algorithm, "greedy | greedy-m | greedy-on");
    solve->add_option("--tie-policy", solve_opts.tie_policy,
                      "lowest-index | highest-index | prefer:<id,id,...>");
    solve->add_option("--arrival", solve_opts.arrival,
                      "Arrival permutation for greedy-on, e.g. 2,0,1");
    solve->add_option("--tolerance", solve_opts.tolerance, "Relative comparison tolerance");
    solve->add_option("--out", solve_opts.out_path, "Output file (default: stdout)");

    CommonOptions verify_opts;
    bool all_permutations = false;
    std::optional<int> sample;
    std::uint64_t seed = 0;
    CLI::App* verify =
        app.add_subcommand("verify", "Check measured ratios against the guarantee bounds");
    verify->add_option("instance", verify_opts.instance_path, "Instance file")->required();
    verify->add_option("--algorithm", verify_opts.algorithm, "greedy | greedy-m | greedy-on");
    verify->add_option("--tie-policy", verify_opts.tie_policy,
                       "Tie policy for the greedy algorithm");
    verify->add_option("--tolerance", verify_opts.tolerance, "Relative comparison tolerance");
    verify->add_flag("--all-permutations", all_permutations,
                     "Sweep every arrival order (greedy-on; default)");
    verify->add_option("--sample", sample, "Sample this many arrival orders instead");
    verify->add_option("--seed", seed, "Seed for --sample");
    verify->add_option("--out", verify_opts.out_path, "Output file (default: stdout)");

    GenerateOptions gen_opts;
    CLI::App* generate = app.add_subcommand("generate", "Write an instance file");
    generate->add_option("family", gen_opts.family, "tight-partition | tight-general | random")
        ->required();
    generate->add_option("--c", gen_opts.c, "Curvature parameter");
    generate->add_option("--d", gen_opts.d, "Discriminant parameter");
    generate->add_option("--epsilon", gen_opts.epsilon, "Perturbation (tight-partition)");
    CLI::Option* n_option = generate->add_option("--n", gen_opts.n, "Resources / elements");
    generate->add_option("--K", gen_opts.k, "Rank (tight-general)");
    generate->add_option("--m", gen_opts.m, "Users (random partition shape)");
    generate->add_option("--shape", gen_opts.shape, "tabular | partition (random family)");
    generate->add_option("--matroid", gen_opts.matroid,
                         "uniform | partition | explicit (random tabular shape)");
    generate->add_option("--seed", gen_opts.seed, "Random seed");
    generate->add_option("--out", gen_opts.out_path, "Output file (default: stdout)");

    std::string validate_path;
    std::string validate_out;
    int validate_limit = 12;
    CLI::App* validate = app.add_subcommand("validate", "Check the oracle axioms only");
    validate->add_option("instance", validate_path, "Instance file")->required();
    validate->add_option("--limit", validate_limit, "Exhaustive-check size limit");
    validate->add_option("--out", validate_out, "Output file (default: stdout)");

    std::vector<const char*> argv;
    argv.push_back("submatroid");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (solve->parsed()) return cmd_solve(solve_opts, out);
        if (verify->parsed())
            return cmd_verify(verify_opts, all_permutations, sample, seed, out);
        if (generate->parsed()) {
            gen_opts.n_given = n_option->count() > 0;
            return cmd_generate(gen_opts, out);
        }
        if (validate->parsed())
            return cmd_validate(validate_path, validate_limit, validate_out, out);
    } catch (const ResourceError& e) {
        err << "resource error: " << e.what() << "\n";
        return 3;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

} // namespace submatroid::cli
