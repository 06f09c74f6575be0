#ifndef SUBMATROID_BRUTE_FORCE_HPP_
#define SUBMATROID_BRUTE_FORCE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "submatroid/analysis.hpp"
#include "submatroid/greedy.hpp"
#include "submatroid/matroid.hpp"
#include "submatroid/valuation.hpp"

namespace submatroid {

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

/// Exact maximizer over all bases, found by exhaustive enumeration.
struct OptimumCertificate {
    ElementSet optimum_set;
    double optimum_value = 0.0;
    std::uint64_t enumerated_count = 0; // bases examined
};

/// Enumerates cardinality-K subsets in lexicographic order with independence
/// pruning on prefixes. Ties keep the lexicographically first basis. Throws
/// ResourceError once more than `cap` bases have been examined.
OptimumCertificate brute_force_optimum(const Valuation& z, const Matroid& m,
                                       std::uint64_t cap = kDefaultEnumerationCap);

/// Independent enumeration strategy for partition instances: walks all m^n
/// user assignments directly. Must agree with brute_force_optimum over the
/// pair matroid.
OptimumCertificate brute_force_optimum_assignments(const PartitionInstance& instance,
                                                   std::uint64_t cap = kDefaultEnumerationCap);

/// Exhaustive curvature: full minimization over all (S, j) pairs rather than
/// the single-superset shortcut. Reference oracle for curvature(). Requires
/// n <= 12.
double brute_force_curvature(const Valuation& z, const Tolerance& tol = {});

/// Exact optimum of a closed-form tight instance without enumeration. The
/// exchange argument for these families leaves exactly two terminal
/// allocation patterns; both are evaluated and the better one is returned
/// (enumerated_count == 2). Tests cross-check this against exhaustive
/// enumeration at small sizes. Returns nullopt for anything else.
std::optional<OptimumCertificate> analytic_optimum(const PartitionInstance& instance);
std::optional<OptimumCertificate> analytic_optimum(const Valuation& z, const Matroid& m);

/// Permutation sweep mode for the online algorithm.
struct PermutationMode {
    bool all = true;     // every permutation (requires n <= 8)
    int samples = 0;     // sampled mode: number of random permutations
    std::uint64_t seed = 0;
    static PermutationMode all_permutations() { return {true, 0, 0}; }
    static PermutationMode sampled(int k, std::uint64_t seed) { return {false, k, seed}; }
};

struct CompetitiveRatioResult {
    double worst_ratio = 1.0;
    std::vector<int> worst_sigma;
    int permutations = 0;
    bool exhaustive = true; // sampled results only upper-bound the worst case
    std::optional<std::uint64_t> seed;
};

/// min over arrival orders of online-greedy value / offline optimum. The
/// optimum is arrival-independent and computed once.
CompetitiveRatioResult exhaustive_competitive_ratio(const PartitionInstance& instance,
                                                    const PermutationMode& mode,
                                                    const Tolerance& tol = {},
                                                    std::uint64_t cap = kDefaultEnumerationCap);

struct BoundCheck {
    std::string name; // "half", "curvature", "discriminant", "refined"
    double bound = 0.0;
    double ratio = 0.0;
    double slack = 0.0; // ratio - bound
    bool pass = false;
};

struct VerificationRecord {
    std::string algorithm;
    double algorithm_value = 0.0;
    double optimum_value = 0.0;
    double measured_ratio = 1.0;
    std::uint64_t enumerated_count = 0;
    std::vector<BoundCheck> checks;
    bool all_pass = true;
    GuaranteeReport analysis;

    // Online sweeps only.
    std::optional<int> permutations;
    std::optional<double> worst_ratio;
    std::vector<int> worst_sigma;
    std::optional<std::uint64_t> sample_seed;
    bool exhaustive_permutations = false;
};

/// Runs plain greedy, computes its guarantees, and checks the measured
/// ratio against every applicable bound. `reference` supplies a known exact
/// optimum and skips the enumeration (used for instances past the cap whose
/// optimum is known analytically).
VerificationRecord verify_greedy(const Valuation& z, const Matroid& m,
                                 const GreedyConfig& config = {},
                                 const std::optional<OptimumCertificate>& reference = {},
                                 std::uint64_t cap = kDefaultEnumerationCap);

VerificationRecord verify_greedy_m(const PartitionInstance& instance, const Tolerance& tol = {},
                                   const std::optional<OptimumCertificate>& reference = {},
                                   std::uint64_t cap = kDefaultEnumerationCap);

/// Checks every arrival order (or a seeded sample) against the online bound.
VerificationRecord verify_greedy_on(const PartitionInstance& instance,
                                    const PermutationMode& mode = PermutationMode::all_permutations(),
                                    const Tolerance& tol = {},
                                    const std::optional<OptimumCertificate>& reference = {},
                                    std::uint64_t cap = kDefaultEnumerationCap);

} // namespace submatroid

#endif
