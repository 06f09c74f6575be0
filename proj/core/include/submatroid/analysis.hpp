#ifndef SUBMATROID_ANALYSIS_HPP_
#define SUBMATROID_ANALYSIS_HPP_

#include <optional>
#include <utility>
#include <vector>

#include "submatroid/greedy.hpp"
#include "submatroid/matroid.hpp"
#include "submatroid/numeric.hpp"
#include "submatroid/valuation.hpp"

namespace submatroid {

/// Curvature c = 1 - min over j with rho_j(empty) > 0 of
/// rho_j(N \ {j}) / rho_j(empty). Submodularity makes S = N \ {j} the
/// minimizer over all supersets, so this single evaluation per element is
/// exact. Returns 0 when no element has positive initial gain (then Z == 0).
double curvature(const Valuation& z, const Tolerance& tol = {});

/// Curvature of each user's valuation. The combined instance curvature is
/// the maximum entry.
std::vector<double> per_user_curvatures(const PartitionInstance& instance,
                                        const Tolerance& tol = {});

/// Discriminant d_i per step of a plain greedy trace: the chosen gain
/// divided by the best rival eligible gain, infinite when every rival gain
/// is zero. Recomputes gains from (z, m) and rejects traces that do not
/// replay consistently.
std::vector<ExtReal> discriminant_general(const GreedyTrace& trace, const Valuation& z,
                                          const Matroid& m, const Tolerance& tol = {});

/// Partition discriminant d_i^p: chosen pair's gain against the best rival
/// user's gain for the same resource. With a single user every entry is
/// infinite.
std::vector<ExtReal> discriminant_partition(const GreedyTrace& trace,
                                            const PartitionInstance& instance);

/// Online discriminant d_t^o; same rival-user ratio with the arriving
/// resource fixed by the trace.
std::vector<ExtReal> discriminant_online(const GreedyTrace& trace,
                                         const PartitionInstance& instance);

/// First iteration i at which exactly K-i+1 eligible elements remained
/// (afterwards every greedy pick lies in every basis). K+1 when never
/// attained during the run.
int compute_i0(const GreedyTrace& trace, int rank);

/// When exactly K-|S| eligible extensions remain they form the forced tail:
/// the set lies in every basis extending S. Returns absent otherwise.
std::optional<std::vector<ElementId>> forced_tail(const Matroid& m, const ElementSet& s);

/// Minimum discriminant over iterations strictly before i0; infinite when
/// that range is empty.
ExtReal d_min_before(const std::vector<ExtReal>& discriminants, int i0);

/// min(1, 1/(c + max over i < i0 of 1/d_i)), with 1/inf = 0. An empty range
/// yields min(1, 1/c), which is 1 for all c in [0,1].
double discriminant_bound(double c, const std::vector<ExtReal>& discriminants, int i0);

/// min(1, 1 / max over steps of (c_u + 1/d)), over (curvature of chosen
/// user, discriminant) per step.
double partition_discriminant_bound(const std::vector<std::pair<double, ExtReal>>& per_step);

/// Same formula as partition_discriminant_bound with online discriminants.
double online_discriminant_bound(const std::vector<std::pair<double, ExtReal>>& per_step);

/// Orders basis B against the ordered basis A so that A^{i-1} + b_i is
/// independent for every i and every common element keeps its A position.
/// Elements of the intersection are pinned first; remaining positions are
/// filled from the highest down, lowest-index feasible candidate first, so
/// the result is deterministic. Throws InputError when no feasible
/// assignment exists, which cannot happen for a genuine matroid.
std::vector<ElementId> basis_exchange_ordering(const Matroid& m,
                                               const std::vector<ElementId>& ordered_a,
                                               const ElementSet& b);

struct RefinedBound {
    double bound = 1.0;
    /// d'_i per step (1-based), present for steps i < i0 where the greedy
    /// pick differs from the matched optimal element.
    std::vector<std::optional<ExtReal>> d_prime;
};

/// Refined guarantee from an exact optimum: orders omega against the greedy
/// order, forms d'_i = rho_i / rho_{omega_i}(G^{i-1}) over the steps before
/// i0 where greedy and omega disagree, and returns
/// min(1, 1/(c + max 1/d'_i)). Never below discriminant_bound since d_i <= d'_i.
RefinedBound refined_bound_from_optimum(const GreedyTrace& trace, const Valuation& z,
                                        const Matroid& m, const ElementSet& omega,
                                        const Tolerance& tol = {});

/// Everything the guarantee layer can say about one run.
struct GuaranteeReport {
    double curvature = 0.0;                  // global c (max user curvature for partition runs)
    std::vector<double> per_user_curvature;  // partition runs only
    std::vector<double> step_curvatures;     // c of chosen user per step (partition runs)
    std::vector<ExtReal> discriminants;      // per step
    int i0 = 0;
    ExtReal d_min = ExtReal::infinity();     // over i < i0
    bool unique_basis = false;               // i0 == 1
    double bound_half = 0.5;
    double bound_curvature = 1.0;            // 1/(1+c)
    std::optional<double> bound_general;     // min(1, 1/(c + 1/d_min)), plain greedy
    std::optional<double> bound_partition;   // offline partition runs
    std::optional<double> bound_online;      // online partition runs
    std::optional<double> bound_refined;     // set when an exact optimum was available
};

GuaranteeReport analyze_greedy(const Valuation& z, const Matroid& m, const GreedyTrace& trace,
                               const Tolerance& tol = {});
GuaranteeReport analyze_greedy_m(const PartitionInstance& instance, const GreedyTrace& trace,
                                 const Tolerance& tol = {});
GuaranteeReport analyze_greedy_on(const PartitionInstance& instance, const GreedyTrace& trace,
                                  const Tolerance& tol = {});

} // namespace submatroid

#endif
