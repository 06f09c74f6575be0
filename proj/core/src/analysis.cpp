#include "submatroid/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "submatroid/errors.hpp"

namespace submatroid {

double curvature(const Valuation& z, const Tolerance& tol) {
    const int n = z.ground().size();
    ElementSet full;
    for (ElementId e = 0; e < n; ++e) full.insert(e);
    const double z_full = z.value(full);

    double min_ratio = 1.0;
    bool any_positive = false;
    for (ElementId j = 0; j < n; ++j) {
        const double initial = z.value(ElementSet{j});
        if (initial <= 0.0) {
            if (initial < -tol.margin(initial, 0.0))
                throw InputError("curvature: negative singleton value, oracle is not monotone");
            continue;
        }
        any_positive = true;
        const double tail = z_full - z.value(full.without(j));
        if (tail < -tol.margin(z_full, 0.0))
            throw InputError("curvature: negative marginal gain, oracle is not monotone");
        min_ratio = std::min(min_ratio, std::max(0.0, tail) / initial);
    }
    if (!any_positive) return 0.0; // Z is identically zero
    return std::clamp(1.0 - min_ratio, 0.0, 1.0);
}

std::vector<double> per_user_curvatures(const PartitionInstance& instance, const Tolerance& tol) {
    std::vector<double> out;
    out.reserve(static_cast<size_t>(instance.num_users()));
    for (const auto& user : instance.users()) out.push_back(curvature(user, tol));
    return out;
}

namespace {

ExtReal ratio_or_infinity(double chosen_gain, double rival_max) {
    if (rival_max <= 0.0) return ExtReal::infinity();
    return ExtReal(chosen_gain / rival_max);
}

} // namespace

std::vector<ExtReal> discriminant_general(const GreedyTrace& trace, const Valuation& z,
                                          const Matroid& m, const Tolerance& tol) {
    std::vector<ExtReal> out;
    out.reserve(trace.steps.size());
    ElementSet prefix;
    double prefix_value = 0.0;
    for (const auto& step : trace.steps) {
        const std::vector<ElementId> eligible = eligible_extensions(m, prefix);
        double chosen_gain = 0.0;
        double rival_max = 0.0;
        bool found = false;
        bool has_rival = false;
        for (ElementId e : eligible) {
            const double gain = z.value(prefix.with(e)) - prefix_value;
            if (e == step.chosen) {
                chosen_gain = gain;
                found = true;
            } else {
                rival_max = std::max(rival_max, gain);
                has_rival = true;
            }
        }
        if (!found || !tol.close(chosen_gain, step.gain))
            throw InputError("discriminant_general: trace does not replay on these oracles");
        out.push_back(has_rival ? ratio_or_infinity(chosen_gain, rival_max)
                                : ExtReal::infinity());
        prefix.insert(step.chosen);
        prefix_value += chosen_gain;
    }
    return out;
}

namespace {

// Rival-user gain ratios for a partition-algorithm trace, replayed against
// the per-user oracles. Works for both the offline and the online variant;
// only the provenance of the allocated resource order differs.
std::vector<ExtReal> partition_discriminants(const GreedyTrace& trace,
                                             const PartitionInstance& instance) {
    const int m = instance.num_users();
    const int n = instance.num_resources();
    std::vector<ElementSet> user_sets(static_cast<size_t>(m));
    std::vector<double> user_values(static_cast<size_t>(m), 0.0);
    std::vector<ExtReal> out;
    out.reserve(trace.steps.size());
    for (const auto& step : trace.steps) {
        const PairElement chosen = pair_of(step.chosen, n);
        if (chosen.user < 0 || chosen.user >= m)
            throw InputError("partition discriminant: trace references unknown user");
        double chosen_gain = 0.0;
        double rival_max = 0.0;
        for (int u = 0; u < m; ++u) {
            const double gain =
                instance.user(u).value(user_sets[static_cast<size_t>(u)].with(chosen.resource)) -
                user_values[static_cast<size_t>(u)];
            if (u == chosen.user)
                chosen_gain = gain;
            else
                rival_max = std::max(rival_max, gain);
        }
        out.push_back(m > 1 ? ratio_or_infinity(chosen_gain, rival_max) : ExtReal::infinity());
        user_sets[static_cast<size_t>(chosen.user)].insert(chosen.resource);
        user_values[static_cast<size_t>(chosen.user)] += chosen_gain;
    }
    return out;
}

} // namespace

std::vector<ExtReal> discriminant_partition(const GreedyTrace& trace,
                                            const PartitionInstance& instance) {
    return partition_discriminants(trace, instance);
}

std::vector<ExtReal> discriminant_online(const GreedyTrace& trace,
                                         const PartitionInstance& instance) {
    return partition_discriminants(trace, instance);
}

int compute_i0(const GreedyTrace& trace, int rank) {
    for (const auto& step : trace.steps)
        if (step.eligible_count == rank - step.iteration + 1) return step.iteration;
    return rank + 1;
}

std::optional<std::vector<ElementId>> forced_tail(const Matroid& m, const ElementSet& s) {
    std::vector<ElementId> eligible = eligible_extensions(m, s);
    if (static_cast<int>(eligible.size()) == m.rank() - s.size()) return eligible;
    return std::nullopt;
}

ExtReal d_min_before(const std::vector<ExtReal>& discriminants, int i0) {
    ExtReal best = ExtReal::infinity();
    for (int i = 1; i < i0 && i <= static_cast<int>(discriminants.size()); ++i)
        best = std::min(best, discriminants[static_cast<size_t>(i - 1)]);
    return best;
}

double discriminant_bound(double c, const std::vector<ExtReal>& discriminants, int i0) {
    double worst_inverse = 0.0;
    for (int i = 1; i < i0 && i <= static_cast<int>(discriminants.size()); ++i)
        worst_inverse =
            std::max(worst_inverse, discriminants[static_cast<size_t>(i - 1)].reciprocal_or_zero());
    const double denom = c + worst_inverse;
    return denom <= 1.0 ? 1.0 : 1.0 / denom;
}

namespace {

double bound_per_step_max(const std::vector<std::pair<double, ExtReal>>& per_step) {
    double worst = 0.0;
    for (const auto& [c_u, d] : per_step) worst = std::max(worst, c_u + d.reciprocal_or_zero());
    return worst <= 1.0 ? 1.0 : 1.0 / worst;
}

} // namespace

double partition_discriminant_bound(const std::vector<std::pair<double, ExtReal>>& per_step) {
    return bound_per_step_max(per_step);
}

double online_discriminant_bound(const std::vector<std::pair<double, ExtReal>>& per_step) {
    return bound_per_step_max(per_step);
}

std::vector<ElementId> basis_exchange_ordering(const Matroid& m,
                                               const std::vector<ElementId>& ordered_a,
                                               const ElementSet& b) {
    const int rank = m.rank();
    if (static_cast<int>(ordered_a.size()) != rank)
        throw InputError("basis_exchange_ordering: A must be an ordered basis");
    ElementSet a_set;
    for (ElementId e : ordered_a) a_set.insert(e);
    if (a_set.size() != rank || !m.independent(a_set))
        throw InputError("basis_exchange_ordering: A is not a basis");
    if (b.size() != rank || !m.independent(b))
        throw InputError("basis_exchange_ordering: B is not a basis");

    std::vector<ElementId> result(static_cast<size_t>(rank), -1);
    // Common elements are pinned to their A positions; every valid ordering
    // must place them there.
    for (int i = 0; i < rank; ++i)
        if (b.contains(ordered_a[static_cast<size_t>(i)]))
            result[static_cast<size_t>(i)] = ordered_a[static_cast<size_t>(i)];

    std::vector<ElementId> remaining = set_difference(b, a_set).elements();
    // Fill open positions from the highest down. Feasibility only loosens as
    // the prefix shrinks, so any feasible pick keeps the rest assignable.
    for (int i = rank; i >= 1; --i) {
        if (result[static_cast<size_t>(i - 1)] != -1) continue;
        ElementSet prefix;
        for (int j = 0; j < i - 1; ++j) prefix.insert(ordered_a[static_cast<size_t>(j)]);
        ElementId picked = -1;
        for (ElementId cand : remaining) {
            if (m.independent(prefix.with(cand))) {
                picked = cand;
                break;
            }
        }
        if (picked == -1)
            throw InputError("basis_exchange_ordering: no feasible assignment, matroid axioms do not "
                             "hold for this input");
        result[static_cast<size_t>(i - 1)] = picked;
        remaining.erase(std::find(remaining.begin(), remaining.end(), picked));
    }
    return result;
}

RefinedBound refined_bound_from_optimum(const GreedyTrace& trace, const Valuation& z, const Matroid& m,
                                const ElementSet& omega, const Tolerance& tol) {
    const int rank = m.rank();
    if (omega.size() != rank || !m.independent(omega))
        throw InputError("refined_bound_from_optimum: omega is not a basis");
    const std::vector<ElementId> greedy_order = trace.order();
    const std::vector<ElementId> omega_order = basis_exchange_ordering(m, greedy_order, omega);
    const int i0 = compute_i0(trace, rank);
    const double c = curvature(z, tol);

    RefinedBound out;
    out.d_prime.assign(trace.steps.size(), std::nullopt);
    double worst_inverse = 0.0;
    ElementSet prefix;
    double prefix_value = 0.0;
    for (int i = 1; i <= rank; ++i) {
        const ElementId g_i = greedy_order[static_cast<size_t>(i - 1)];
        const ElementId w_i = omega_order[static_cast<size_t>(i - 1)];
        if (i < i0 && w_i != g_i) {
            // Steps where greedy and the matched optimal element agree
            // contribute nothing; d'_i is taken over G \ Omega.
            const double rho_i = trace.steps[static_cast<size_t>(i - 1)].gain;
            const double rho_omega = z.value(prefix.with(w_i)) - prefix_value;
            const ExtReal d_prime = ratio_or_infinity(rho_i, rho_omega);
            out.d_prime[static_cast<size_t>(i - 1)] = d_prime;
            worst_inverse = std::max(worst_inverse, d_prime.reciprocal_or_zero());
        }
        prefix.insert(g_i);
        prefix_value += trace.steps[static_cast<size_t>(i - 1)].gain;
    }
    const double denom = c + worst_inverse;
    out.bound = denom <= 1.0 ? 1.0 : 1.0 / denom;
    return out;
}

GuaranteeReport analyze_greedy(const Valuation& z, const Matroid& m, const GreedyTrace& trace,
                               const Tolerance& tol) {
    GuaranteeReport report;
    report.curvature = curvature(z, tol);
    report.discriminants = discriminant_general(trace, z, m, tol);
    report.i0 = compute_i0(trace, m.rank());
    report.d_min = d_min_before(report.discriminants, report.i0);
    report.unique_basis = report.i0 == 1;
    report.bound_curvature = 1.0 / (1.0 + report.curvature);
    report.bound_general = discriminant_bound(report.curvature, report.discriminants, report.i0);
    return report;
}

namespace {

GuaranteeReport analyze_partition(const PartitionInstance& instance, const GreedyTrace& trace,
                                  const Tolerance& tol, bool online) {
    GuaranteeReport report;
    report.per_user_curvature = per_user_curvatures(instance, tol);
    report.curvature = 0.0;
    for (double c : report.per_user_curvature) report.curvature = std::max(report.curvature, c);
    report.discriminants = partition_discriminants(trace, instance);
    report.i0 = compute_i0(trace, instance.num_resources());
    report.d_min = d_min_before(report.discriminants, report.i0);
    report.unique_basis = report.i0 == 1;
    report.bound_curvature = 1.0 / (1.0 + report.curvature);

    const int n = instance.num_resources();
    std::vector<std::pair<double, ExtReal>> per_step;
    per_step.reserve(trace.steps.size());
    for (size_t i = 0; i < trace.steps.size(); ++i) {
        const PairElement p = pair_of(trace.steps[i].chosen, n);
        const double c_u = report.per_user_curvature[static_cast<size_t>(p.user)];
        report.step_curvatures.push_back(c_u);
        per_step.emplace_back(c_u, report.discriminants[i]);
    }
    if (online)
        report.bound_online = online_discriminant_bound(per_step);
    else
        report.bound_partition = partition_discriminant_bound(per_step);
    return report;
}

} // namespace

GuaranteeReport analyze_greedy_m(const PartitionInstance& instance, const GreedyTrace& trace,
                                 const Tolerance& tol) {
    return analyze_partition(instance, trace, tol, false);
}

GuaranteeReport analyze_greedy_on(const PartitionInstance& instance, const GreedyTrace& trace,
                                  const Tolerance& tol) {
    return analyze_partition(instance, trace, tol, true);
}

} // namespace submatroid
