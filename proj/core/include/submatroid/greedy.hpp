#ifndef SUBMATROID_GREEDY_HPP_
#define SUBMATROID_GREEDY_HPP_

#include <optional>
#include <span>
#include <vector>

#include "submatroid/matroid.hpp"
#include "submatroid/numeric.hpp"
#include "submatroid/valuation.hpp"

namespace submatroid {

/// How run_greedy resolves ties among elements whose gains are equal within
/// tolerance. The plain algorithm may pick arbitrarily, so the policy is
/// injectable; the tight general-matroid instance needs ties steered toward
/// its epsilon elements to exhibit the worst case.
enum class TiePolicy { LowestIndex, HighestIndex, PreferenceList };

struct GreedyConfig {
    TiePolicy tie_policy = TiePolicy::LowestIndex;
    /// For TiePolicy::PreferenceList: earlier entries win; elements missing
    /// from the list rank after all listed ones, by ascending index.
    std::vector<ElementId> preference;
    Tolerance tolerance{};
};

/// One greedy iteration. For the partition algorithms `chosen` (and the tie
/// set) hold user-major pair ids.
struct StepRecord {
    int iteration = 0; // 1-based
    ElementId chosen = -1;
    double gain = 0.0;
    int eligible_count = 0;
    std::optional<double> runner_up_gain; // absent when no rival exists
    std::vector<ElementId> tie_set;       // all candidates tied for the max gain
};

struct GreedyTrace {
    std::vector<StepRecord> steps;
    ElementSet final_set;
    double final_value = 0.0;

    /// Chosen elements in pick order.
    std::vector<ElementId> order() const;
};

/// Plain greedy over a rank-K matroid: K iterations, each adding the
/// eligible element of maximum marginal gain.
GreedyTrace run_greedy(const Valuation& z, const Matroid& m, const GreedyConfig& config = {});

/// Greedy for the partition problem. Each of the n iterations allocates one
/// still-unallocated resource to the user-resource pair of maximum gain.
/// Gain ties are broken by minimizing c_u + 1/d_i(u,r), where d_i(u,r) is
/// the gain ratio of (u,r) against the best rival user for r; residual ties
/// go to the highest pair index.
GreedyTrace run_greedy_m(const PartitionInstance& instance, const Tolerance& tol = {});

/// Online variant: resources arrive in the order given by the permutation
/// `arrival` and each is immediately and irrevocably allocated to the user
/// with maximum gain. Gain ties go to the user of least curvature, residual
/// ties to the lowest user index.
GreedyTrace run_greedy_on(const PartitionInstance& instance, std::span<const int> arrival,
                          const Tolerance& tol = {});

} // namespace submatroid

#endif
