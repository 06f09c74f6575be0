#ifndef SUBMATROID_SERIALIZE_HPP_
#define SUBMATROID_SERIALIZE_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "submatroid/brute_force.hpp"
#include "submatroid/greedy.hpp"
#include "submatroid/instances.hpp"
#include "submatroid/validate.hpp"

namespace submatroid {

/// A loaded instance file: either a general (valuation, matroid) pair or a
/// partition instance with per-user valuations.
using Instance = std::variant<GeneralInstance, PartitionInstance>;

inline constexpr int kInstanceFormatVersion = 1;

/// Parses an instance description. `origin` is used in error messages.
/// Malformed input raises InputError with position context; a broken
/// explicit-family matroid fails its axiom checks here, before any run.
Instance parse_instance(const std::string& text, const std::string& origin = "<memory>");
Instance load_instance(const std::filesystem::path& path);

/// Canonical JSON emission; parse(emit(x)) reproduces x and re-emission is
/// byte-identical. Doubles are written round-trip exactly.
std::string emit_instance(const Instance& instance);
void save_instance(const Instance& instance, const std::filesystem::path& path);

const GeneralInstance& as_general(const Instance& instance);   // InputError on mismatch
const PartitionInstance& as_partition(const Instance& instance);
/// Any instance viewed as (valuation, matroid); partition instances become
/// their pair matroid and combined valuation.
GeneralInstance to_general(const Instance& instance);

/// Configuration echo included in every report so a run can be reproduced
/// from its output alone.
struct RunConfigEcho {
    std::string algorithm; // "greedy" | "greedy-m" | "greedy-on"
    std::string tie_policy = "lowest-index";
    std::vector<ElementId> preference;
    Tolerance tolerance{};
    std::optional<std::vector<int>> arrival;
    std::optional<std::uint64_t> seed;
};

struct RunReport {
    RunConfigEcho config;
    GreedyTrace trace;
    GuaranteeReport analysis;
    std::optional<VerificationRecord> verification;
};

std::string run_report_to_json(const RunReport& report, const GroundSet& ground);
std::string verification_to_json(const VerificationRecord& record, const RunConfigEcho& config);
std::string validation_to_json(const ValidationReport& report, const GroundSet& ground);

} // namespace submatroid

#endif
