#include "submatroid/serialize.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "submatroid/errors.hpp"

namespace submatroid {

using json = nlohmann::ordered_json;

namespace {

json extreal_to_json(const ExtReal& v) {
    if (v.is_infinite()) return json("inf");
    return json(v.value());
}

json element_list(const std::vector<ElementId>& ids) { return json(ids); }

json set_to_json(const ElementSet& s) { return json(s.elements()); }

json valuation_to_json(const Valuation& z) {
    json out;
    switch (z.kind()) {
    case Valuation::Kind::Tabular: {
        out["kind"] = "tabular";
        json table = json::object();
        const auto& values = z.table();
        for (size_t mask = 0; mask < values.size(); ++mask)
            table[std::to_string(mask)] = values[mask];
        out["table"] = std::move(table);
        break;
    }
    case Valuation::Kind::Modular:
        out["kind"] = "modular";
        out["weights"] = z.weights();
        break;
    case Valuation::Kind::Coverage:
        out["kind"] = "coverage";
        out["covers"] = z.covers();
        out["universe_weights"] = z.universe_weights();
        break;
    case Valuation::Kind::PartitionSum: {
        out["kind"] = "partition-sum";
        json users = json::array();
        for (const auto& u : z.users()) users.push_back(valuation_to_json(u));
        out["users"] = std::move(users);
        break;
    }
    case Valuation::Kind::TightPartitionUser:
        out["kind"] = "tight-partition-user";
        out["role"] = z.tight_role();
        out["c"] = z.tight_c();
        out["d"] = z.tight_d();
        out["epsilon"] = z.tight_epsilon();
        out["resources"] = z.tight_resources();
        break;
    case Valuation::Kind::TightGeneral:
        out["kind"] = "tight-general";
        out["c"] = z.tight_c();
        out["d"] = z.tight_d();
        out["rank"] = z.tight_rank();
        break;
    }
    return out;
}

json matroid_to_json(const Matroid& m) {
    json out;
    switch (m.kind()) {
    case Matroid::Kind::Uniform:
        out["kind"] = "uniform";
        out["rank"] = m.uniform_rank();
        break;
    case Matroid::Kind::Partition:
        out["kind"] = "partition";
        out["blocks"] = m.partition_blocks();
        out["capacities"] = m.partition_capacities();
        break;
    case Matroid::Kind::PairPartition:
        out["kind"] = "pair-partition";
        out["users"] = m.pair_users();
        out["resources"] = m.pair_resources();
        break;
    case Matroid::Kind::ExplicitFamily: {
        out["kind"] = "explicit-family";
        json family = json::array();
        for (const auto& s : m.family()) family.push_back(s.elements());
        out["independent_sets"] = std::move(family);
        break;
    }
    }
    return out;
}

struct ParseContext {
    const std::string& origin;

    [[noreturn]] void fail(const std::string& what) const {
        throw InputError(origin + ": " + what);
    }

    const json& require(const json& j, const char* key) const {
        if (!j.is_object() || !j.contains(key)) fail(std::string("missing field '") + key + "'");
        return j.at(key);
    }

    int require_int(const json& j, const char* key) const {
        const json& v = require(j, key);
        if (!v.is_number_integer()) fail(std::string("field '") + key + "' must be an integer");
        return v.get<int>();
    }

    double require_number(const json& j, const char* key) const {
        const json& v = require(j, key);
        if (!v.is_number()) fail(std::string("field '") + key + "' must be a number");
        return v.get<double>();
    }

    std::string require_string(const json& j, const char* key) const {
        const json& v = require(j, key);
        if (!v.is_string()) fail(std::string("field '") + key + "' must be a string");
        return v.get<std::string>();
    }
};

Valuation parse_valuation(const json& j, const ParseContext& ctx, int ground_size,
                          const GroundSet& ground) {
    const std::string kind = ctx.require_string(j, "kind");
    if (kind == "tabular") {
        const json& table = ctx.require(j, "table");
        if (!table.is_object()) ctx.fail("tabular table must be an object keyed by bitmask");
        if (ground_size > 20) ctx.fail("tabular oracles are capped at 20 elements");
        const size_t expected = size_t{1} << ground_size;
        std::vector<double> values(expected, 0.0);
        std::vector<bool> seen(expected, false);
        for (const auto& [key, value] : table.items()) {
            size_t mask = 0;
            try {
                mask = std::stoull(key);
            } catch (const std::exception&) {
                ctx.fail("tabular mask key '" + key + "' is not an integer");
            }
            if (mask >= expected) ctx.fail("tabular mask key '" + key + "' is out of range");
            if (!value.is_number()) ctx.fail("tabular value for mask " + key + " must be a number");
            values[mask] = value.get<double>();
            seen[mask] = true;
        }
        for (size_t mask = 0; mask < expected; ++mask)
            if (!seen[mask]) ctx.fail("tabular table is missing mask " + std::to_string(mask));
        if (values[0] != 0.0) ctx.fail("tabular table must map mask 0 to exactly 0");
        return Valuation::tabular(ground, std::move(values));
    }
    if (kind == "modular") {
        const json& w = ctx.require(j, "weights");
        if (!w.is_array() || static_cast<int>(w.size()) != ground_size)
            ctx.fail("modular weights must list one number per element");
        return Valuation::modular(ground, w.get<std::vector<double>>());
    }
    if (kind == "coverage") {
        const json& covers = ctx.require(j, "covers");
        const json& weights = ctx.require(j, "universe_weights");
        if (!covers.is_array() || static_cast<int>(covers.size()) != ground_size)
            ctx.fail("coverage covers must list one set per element");
        return Valuation::coverage(ground, covers.get<std::vector<std::vector<int>>>(),
                                   weights.get<std::vector<double>>());
    }
    if (kind == "tight-partition-user") {
        return Valuation::tight_partition_user(
            ctx.require_int(j, "role"), ctx.require_number(j, "c"), ctx.require_number(j, "d"),
            ctx.require_number(j, "epsilon"), ctx.require_int(j, "resources"));
    }
    if (kind == "tight-general") {
        return Valuation::tight_general(ctx.require_number(j, "c"), ctx.require_number(j, "d"),
                                        ctx.require_int(j, "rank"));
    }
    ctx.fail("unknown valuation kind '" + kind + "'");
}

Matroid parse_matroid(const json& j, const ParseContext& ctx, const GroundSet& ground) {
    const std::string kind = ctx.require_string(j, "kind");
    if (kind == "uniform") return Matroid::uniform(ground, ctx.require_int(j, "rank"));
    if (kind == "partition") {
        const json& blocks = ctx.require(j, "blocks");
        const json& caps = ctx.require(j, "capacities");
        return Matroid::partition(ground, blocks.get<std::vector<std::vector<ElementId>>>(),
                                  caps.get<std::vector<int>>());
    }
    if (kind == "explicit-family") {
        const json& family = ctx.require(j, "independent_sets");
        if (!family.is_array()) ctx.fail("independent_sets must be an array of element arrays");
        std::vector<ElementSet> sets;
        sets.reserve(family.size());
        for (const auto& entry : family) sets.push_back(ElementSet(entry.get<std::vector<ElementId>>()));
        return Matroid::explicit_family(ground, std::move(sets));
    }
    ctx.fail("unknown matroid kind '" + kind + "'");
}

} // namespace

namespace {

Instance parse_instance_body(const json& root, const ParseContext& ctx) {
    if (!root.is_object()) ctx.fail("instance file must be a JSON object");
    const int version = ctx.require_int(root, "format_version");
    if (version != kInstanceFormatVersion)
        ctx.fail("unsupported format_version " + std::to_string(version));

    const json& ground_j = ctx.require(root, "ground");
    const int size = ctx.require_int(ground_j, "size");
    std::vector<std::string> labels;
    if (ground_j.contains("labels")) labels = ground_j.at("labels").get<std::vector<std::string>>();

    const json& matroid_j = ctx.require(root, "matroid");
    const json& valuation_j = ctx.require(root, "valuation");
    const std::string matroid_kind = ctx.require_string(matroid_j, "kind");
    const std::string valuation_kind = ctx.require_string(valuation_j, "kind");

    if (matroid_kind == "pair-partition" || valuation_kind == "partition-sum") {
        if (matroid_kind != "pair-partition" || valuation_kind != "partition-sum")
            ctx.fail("partition instances need a pair-partition matroid together with a "
                     "partition-sum valuation");
        const int users = ctx.require_int(matroid_j, "users");
        const int resources = ctx.require_int(matroid_j, "resources");
        if (users * resources != size)
            ctx.fail("pair ground size does not equal users x resources");
        const json& user_list = ctx.require(valuation_j, "users");
        if (!user_list.is_array() || static_cast<int>(user_list.size()) != users)
            ctx.fail("partition-sum must list one valuation per user");
        std::vector<Valuation> user_vals;
        const GroundSet resource_ground(resources);
        for (const auto& entry : user_list)
            user_vals.push_back(parse_valuation(entry, ctx, resources, resource_ground));
        return PartitionInstance(std::move(user_vals));
    }

    GroundSet ground(size, std::move(labels));
    Valuation z = parse_valuation(valuation_j, ctx, size, ground);
    Matroid m = parse_matroid(matroid_j, ctx, ground);
    return GeneralInstance{std::move(z), std::move(m)};
}

} // namespace

Instance parse_instance(const std::string& text, const std::string& origin) {
    ParseContext ctx{origin};
    json root;
    try {
        root = json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(origin + ": " + e.what());
    }
    try {
        return parse_instance_body(root, ctx);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(origin + ": " + e.what());
    }
}

Instance load_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError(path.string() + ": cannot open file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_instance(buffer.str(), path.string());
}

std::string emit_instance(const Instance& instance) {
    json root;
    root["format_version"] = kInstanceFormatVersion;
    if (const auto* general = std::get_if<GeneralInstance>(&instance)) {
        const GroundSet& ground = general->valuation.ground();
        json ground_j;
        ground_j["size"] = ground.size();
        if (ground.has_custom_labels()) {
            std::vector<std::string> labels;
            for (ElementId e = 0; e < ground.size(); ++e) labels.push_back(ground.label(e));
            ground_j["labels"] = std::move(labels);
        }
        root["ground"] = std::move(ground_j);
        root["matroid"] = matroid_to_json(general->matroid);
        root["valuation"] = valuation_to_json(general->valuation);
    } else {
        const auto& partition = std::get<PartitionInstance>(instance);
        json ground_j;
        ground_j["size"] = partition.num_users() * partition.num_resources();
        root["ground"] = std::move(ground_j);
        json matroid_j;
        matroid_j["kind"] = "pair-partition";
        matroid_j["users"] = partition.num_users();
        matroid_j["resources"] = partition.num_resources();
        root["matroid"] = std::move(matroid_j);
        json valuation_j;
        valuation_j["kind"] = "partition-sum";
        json users = json::array();
        for (const auto& u : partition.users()) users.push_back(valuation_to_json(u));
        valuation_j["users"] = std::move(users);
        root["valuation"] = std::move(valuation_j);
    }
    return root.dump(2) + "\n";
}

void save_instance(const Instance& instance, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw InputError(path.string() + ": cannot open file for writing");
    out << emit_instance(instance);
}

const GeneralInstance& as_general(const Instance& instance) {
    if (const auto* general = std::get_if<GeneralInstance>(&instance)) return *general;
    throw InputError("this command needs a general (valuation, matroid) instance");
}

const PartitionInstance& as_partition(const Instance& instance) {
    if (const auto* partition = std::get_if<PartitionInstance>(&instance)) return *partition;
    throw InputError("this algorithm needs a partition instance (pair-partition matroid with "
                     "partition-sum valuation)");
}

GeneralInstance to_general(const Instance& instance) {
    if (const auto* general = std::get_if<GeneralInstance>(&instance)) return *general;
    const auto& partition = std::get<PartitionInstance>(instance);
    return GeneralInstance{partition.combined(), partition.pair_matroid()};
}

namespace {

json config_to_json(const RunConfigEcho& config) {
    json out;
    out["algorithm"] = config.algorithm;
    out["tie_policy"] = config.tie_policy;
    if (!config.preference.empty()) out["preference"] = config.preference;
    json tol;
    tol["relative"] = config.tolerance.relative;
    tol["absolute"] = config.tolerance.absolute;
    out["tolerance"] = std::move(tol);
    if (config.arrival) out["arrival"] = *config.arrival;
    if (config.seed) out["seed"] = *config.seed;
    return out;
}

json trace_to_json(const GreedyTrace& trace, const GuaranteeReport& analysis,
                   const GroundSet& ground) {
    json steps = json::array();
    for (size_t i = 0; i < trace.steps.size(); ++i) {
        const StepRecord& step = trace.steps[i];
        json s;
        s["iteration"] = step.iteration;
        s["chosen"] = step.chosen;
        s["chosen_label"] = ground.label(step.chosen);
        s["gain"] = step.gain;
        s["eligible_count"] = step.eligible_count;
        if (step.runner_up_gain)
            s["runner_up_gain"] = *step.runner_up_gain;
        else
            s["runner_up_gain"] = nullptr;
        s["tie_set"] = element_list(step.tie_set);
        if (i < analysis.discriminants.size())
            s["discriminant"] = extreal_to_json(analysis.discriminants[i]);
        s["post_i0"] = step.iteration >= analysis.i0;
        steps.push_back(std::move(s));
    }
    json out;
    out["steps"] = std::move(steps);
    out["final_set"] = set_to_json(trace.final_set);
    json labels = json::array();
    for (ElementId e : trace.final_set) labels.push_back(ground.label(e));
    out["final_labels"] = std::move(labels);
    out["final_value"] = trace.final_value;
    return out;
}

json analysis_to_json(const GuaranteeReport& analysis) {
    json out;
    out["curvature"] = analysis.curvature;
    if (!analysis.per_user_curvature.empty())
        out["per_user_curvature"] = analysis.per_user_curvature;
    if (!analysis.step_curvatures.empty()) out["step_curvatures"] = analysis.step_curvatures;
    out["i0"] = analysis.i0;
    out["d_min"] = extreal_to_json(analysis.d_min);
    out["unique_basis"] = analysis.unique_basis;
    json bounds;
    bounds["half"] = analysis.bound_half;
    bounds["curvature"] = analysis.bound_curvature;
    if (analysis.bound_partition) bounds["partition"] = *analysis.bound_partition;
    if (analysis.bound_general) bounds["general"] = *analysis.bound_general;
    if (analysis.bound_online) bounds["online"] = *analysis.bound_online;
    if (analysis.bound_refined) bounds["refined"] = *analysis.bound_refined;
    out["bounds"] = std::move(bounds);
    return out;
}

json verification_body(const VerificationRecord& record) {
    json out;
    out["algorithm"] = record.algorithm;
    out["algorithm_value"] = record.algorithm_value;
    out["optimum_value"] = record.optimum_value;
    out["measured_ratio"] = record.measured_ratio;
    out["enumerated_count"] = record.enumerated_count;
    json checks = json::array();
    for (const auto& check : record.checks) {
        json c;
        c["name"] = check.name;
        c["bound"] = check.bound;
        c["ratio"] = check.ratio;
        c["slack"] = check.slack;
        c["pass"] = check.pass;
        checks.push_back(std::move(c));
    }
    out["checks"] = std::move(checks);
    out["all_pass"] = record.all_pass;
    if (record.permutations) {
        json online;
        online["permutations"] = *record.permutations;
        online["exhaustive"] = record.exhaustive_permutations;
        online["worst_ratio"] = *record.worst_ratio;
        online["worst_sigma"] = record.worst_sigma;
        if (record.sample_seed) online["seed"] = *record.sample_seed;
        out["online"] = std::move(online);
    }
    return out;
}

} // namespace

std::string run_report_to_json(const RunReport& report, const GroundSet& ground) {
    json root;
    root["format_version"] = kInstanceFormatVersion;
    root["config"] = config_to_json(report.config);
    root["trace"] = trace_to_json(report.trace, report.analysis, ground);
    root["analysis"] = analysis_to_json(report.analysis);
    if (report.verification) root["verification"] = verification_body(*report.verification);
    return root.dump(2) + "\n";
}

std::string verification_to_json(const VerificationRecord& record, const RunConfigEcho& config) {
    json root;
    root["format_version"] = kInstanceFormatVersion;
    root["config"] = config_to_json(config);
    root["verification"] = verification_body(record);
    root["analysis"] = analysis_to_json(record.analysis);
    return root.dump(2) + "\n";
}

std::string validation_to_json(const ValidationReport& report, const GroundSet& ground) {
    (void)ground;
    json root;
    root["passed"] = report.passed();
    root["exhaustive"] = report.exhaustive;
    json violations = json::array();
    for (const auto& v : report.violations) {
        json item;
        switch (v.axiom) {
        case Violation::Axiom::EmptySetIndependent: item["axiom"] = "empty-set"; break;
        case Violation::Axiom::Hereditary: item["axiom"] = "hereditary"; break;
        case Violation::Axiom::Augmentation: item["axiom"] = "augmentation"; break;
        case Violation::Axiom::NormalizedAtEmpty: item["axiom"] = "normalization"; break;
        case Violation::Axiom::Monotone: item["axiom"] = "monotonicity"; break;
        case Violation::Axiom::Submodular: item["axiom"] = "submodularity"; break;
        }
        item["s"] = set_to_json(v.s);
        item["t"] = set_to_json(v.t);
        if (v.x >= 0) item["x"] = v.x;
        item["detail"] = v.detail;
        violations.push_back(std::move(item));
    }
    root["violations"] = std::move(violations);
    return root.dump(2) + "\n";
}

} // namespace submatroid
