#include "submatroid/greedy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "submatroid/analysis.hpp"
#include "submatroid/errors.hpp"

namespace submatroid {

namespace {

// Index of the winner among tied candidates under the configured policy.
ElementId pick_tied(const std::vector<ElementId>& tied, const GreedyConfig& cfg) {
    switch (cfg.tie_policy) {
    case TiePolicy::LowestIndex:
        return *std::min_element(tied.begin(), tied.end());
    case TiePolicy::HighestIndex:
        return *std::max_element(tied.begin(), tied.end());
    case TiePolicy::PreferenceList: {
        auto rank = [&](ElementId e) {
            for (size_t i = 0; i < cfg.preference.size(); ++i)
                if (cfg.preference[i] == e) return static_cast<int>(i);
            return static_cast<int>(cfg.preference.size()) + e;
        };
        return *std::min_element(tied.begin(), tied.end(),
                                 [&](ElementId a, ElementId b) { return rank(a) < rank(b); });
    }
    }
    return tied.front();
}

std::vector<ElementId> tied_for_best(const std::vector<ElementId>& candidates,
                                     const std::vector<double>& gains, double best,
                                     const Tolerance& tol) {
    std::vector<ElementId> tied;
    for (size_t k = 0; k < candidates.size(); ++k)
        if (tol.close(gains[k], best)) tied.push_back(candidates[k]);
    return tied;
}

} // namespace

std::vector<ElementId> GreedyTrace::order() const {
    std::vector<ElementId> out;
    out.reserve(steps.size());
    for (const auto& s : steps) out.push_back(s.chosen);
    return out;
}

GreedyTrace run_greedy(const Valuation& z, const Matroid& m, const GreedyConfig& config) {
    if (!(z.ground() == m.ground()))
        throw InputError("run_greedy: valuation and matroid ground sets differ");
    const int rank = m.rank();
    if (rank < 1) throw InputError("run_greedy: matroid rank must be at least 1");

    GreedyTrace trace;
    ElementSet chosen_set;
    double current = 0.0;
    for (int i = 1; i <= rank; ++i) {
        const std::vector<ElementId> eligible = eligible_extensions(m, chosen_set);
        if (eligible.empty())
            throw InputError("run_greedy: matroid rank inconsistency, no eligible element at "
                             "iteration " +
                             std::to_string(i));
        std::vector<double> gains(eligible.size());
        double best = -std::numeric_limits<double>::infinity();
        for (size_t k = 0; k < eligible.size(); ++k) {
            gains[k] = z.value(chosen_set.with(eligible[k])) - current;
            best = std::max(best, gains[k]);
        }
        const std::vector<ElementId> tied =
            tied_for_best(eligible, gains, best, config.tolerance);
        const ElementId pick = pick_tied(tied, config);

        StepRecord step;
        step.iteration = i;
        step.chosen = pick;
        step.eligible_count = static_cast<int>(eligible.size());
        step.tie_set = tied;
        std::optional<double> runner_up;
        for (size_t k = 0; k < eligible.size(); ++k) {
            if (eligible[k] == pick) {
                step.gain = gains[k];
                continue;
            }
            if (!runner_up || gains[k] > *runner_up) runner_up = gains[k];
        }
        step.runner_up_gain = runner_up;
        trace.steps.push_back(std::move(step));

        chosen_set.insert(pick);
        current += trace.steps.back().gain;
    }
    trace.final_set = chosen_set;
    trace.final_value = z.value(chosen_set);
    return trace;
}

namespace {

// Shared state for the two partition algorithms: per-user allocations with
// cached values, so gains are single oracle calls.
struct PartitionRun {
    const PartitionInstance& inst;
    std::vector<ElementSet> user_sets;
    std::vector<double> user_values;

    explicit PartitionRun(const PartitionInstance& instance)
        : inst(instance),
          user_sets(static_cast<size_t>(instance.num_users())),
          user_values(static_cast<size_t>(instance.num_users()), 0.0) {}

    double gain(int u, int r) const {
        return inst.user(u).value(user_sets[static_cast<size_t>(u)].with(r)) -
               user_values[static_cast<size_t>(u)];
    }

    void allocate(int u, int r, double g) {
        user_sets[static_cast<size_t>(u)].insert(r);
        user_values[static_cast<size_t>(u)] += g;
    }

    GreedyTrace finish(std::vector<StepRecord> steps) const {
        GreedyTrace trace;
        trace.steps = std::move(steps);
        const int n = inst.num_resources();
        double total = 0.0;
        for (int u = 0; u < inst.num_users(); ++u) {
            total += inst.user(u).value(user_sets[static_cast<size_t>(u)]);
            for (ElementId r : user_sets[static_cast<size_t>(u)])
                trace.final_set.insert(pair_id({u, r}, n));
        }
        trace.final_value = total;
        return trace;
    }
};

} // namespace

GreedyTrace run_greedy_m(const PartitionInstance& instance, const Tolerance& tol) {
    const int m = instance.num_users();
    const int n = instance.num_resources();
    if (m == 0 || n == 0) throw InputError("run_greedy_m: empty instance");

    const std::vector<double> user_curv = per_user_curvatures(instance, tol);
    PartitionRun run(instance);
    std::vector<bool> allocated(static_cast<size_t>(n), false);
    std::vector<StepRecord> steps;

    for (int i = 1; i <= n; ++i) {
        // Gains for every unallocated resource under every user.
        std::vector<std::vector<double>> gains(static_cast<size_t>(m),
                                               std::vector<double>(static_cast<size_t>(n), 0.0));
        double best = -std::numeric_limits<double>::infinity();
        for (int u = 0; u < m; ++u)
            for (int r = 0; r < n; ++r) {
                if (allocated[static_cast<size_t>(r)]) continue;
                gains[static_cast<size_t>(u)][static_cast<size_t>(r)] = run.gain(u, r);
                best = std::max(best, gains[static_cast<size_t>(u)][static_cast<size_t>(r)]);
            }

        std::vector<PairElement> tied;
        for (int u = 0; u < m; ++u)
            for (int r = 0; r < n; ++r)
                if (!allocated[static_cast<size_t>(r)] &&
                    tol.close(gains[static_cast<size_t>(u)][static_cast<size_t>(r)], best))
                    tied.push_back({u, r});

        PairElement pick = tied.front();
        if (tied.size() > 1) {
            // Tie rule: minimize c_u + 1/d_i(u,r) against the best rival
            // user for the same resource; 1/d := 0 when every rival gain is
            // zero. Residual ties go to the highest pair index.
            auto key = [&](PairElement p) {
                double rival = 0.0;
                for (int u2 = 0; u2 < m; ++u2) {
                    if (u2 == p.user) continue;
                    rival = std::max(rival,
                                     gains[static_cast<size_t>(u2)][static_cast<size_t>(p.resource)]);
                }
                const double own = gains[static_cast<size_t>(p.user)][static_cast<size_t>(p.resource)];
                const double inv_d = (rival > tol.absolute && own > 0.0) ? rival / own : 0.0;
                return user_curv[static_cast<size_t>(p.user)] + inv_d;
            };
            double best_key = std::numeric_limits<double>::infinity();
            int best_id = -1;
            for (PairElement p : tied) {
                const double k = key(p);
                const int id = pair_id(p, n);
                if (k < best_key - tol.margin(k, best_key)) {
                    best_key = k;
                    best_id = id;
                    pick = p;
                } else if (tol.close(k, best_key) && id > best_id) {
                    best_id = id;
                    pick = p;
                }
            }
        }

        StepRecord step;
        step.iteration = i;
        step.chosen = pair_id(pick, n);
        step.gain = gains[static_cast<size_t>(pick.user)][static_cast<size_t>(pick.resource)];
        step.eligible_count = m * (n - i + 1);
        for (PairElement p : tied) step.tie_set.push_back(pair_id(p, n));
        std::sort(step.tie_set.begin(), step.tie_set.end());
        std::optional<double> runner_up;
        for (int u = 0; u < m; ++u)
            for (int r = 0; r < n; ++r) {
                if (allocated[static_cast<size_t>(r)] || (u == pick.user && r == pick.resource))
                    continue;
                const double g = gains[static_cast<size_t>(u)][static_cast<size_t>(r)];
                if (!runner_up || g > *runner_up) runner_up = g;
            }
        step.runner_up_gain = runner_up;
        steps.push_back(std::move(step));

        allocated[static_cast<size_t>(pick.resource)] = true;
        run.allocate(pick.user, pick.resource, steps.back().gain);
    }
    return run.finish(std::move(steps));
}

GreedyTrace run_greedy_on(const PartitionInstance& instance, std::span<const int> arrival,
                          const Tolerance& tol) {
    const int m = instance.num_users();
    const int n = instance.num_resources();
    if (m == 0 || n == 0) throw InputError("run_greedy_on: empty instance");
    if (static_cast<int>(arrival.size()) != n)
        throw InputError("run_greedy_on: arrival order must list every resource exactly once");
    std::vector<bool> seen(static_cast<size_t>(n), false);
    for (int r : arrival) {
        if (r < 0 || r >= n || seen[static_cast<size_t>(r)])
            throw InputError("run_greedy_on: arrival order is not a permutation of 0..n-1");
        seen[static_cast<size_t>(r)] = true;
    }

    // Curvatures do not depend on the arrival order, so compute them once.
    const std::vector<double> user_curv = per_user_curvatures(instance, tol);
    PartitionRun run(instance);
    std::vector<StepRecord> steps;

    for (int t = 1; t <= n; ++t) {
        const int r = arrival[static_cast<size_t>(t - 1)];
        std::vector<double> gains(static_cast<size_t>(m));
        double best = -std::numeric_limits<double>::infinity();
        for (int u = 0; u < m; ++u) {
            gains[static_cast<size_t>(u)] = run.gain(u, r);
            best = std::max(best, gains[static_cast<size_t>(u)]);
        }
        int pick = -1;
        std::vector<ElementId> tie_set;
        for (int u = 0; u < m; ++u) {
            if (!tol.close(gains[static_cast<size_t>(u)], best)) continue;
            tie_set.push_back(pair_id({u, r}, n));
            if (pick == -1) {
                pick = u;
                continue;
            }
            // Ties go to the least-curvature user, then the lowest index.
            const double cu = user_curv[static_cast<size_t>(u)];
            const double cp = user_curv[static_cast<size_t>(pick)];
            if (cu < cp - tol.margin(cu, cp)) pick = u;
        }

        StepRecord step;
        step.iteration = t;
        step.chosen = pair_id({pick, r}, n);
        step.gain = gains[static_cast<size_t>(pick)];
        step.eligible_count = m * (n - t + 1);
        step.tie_set = std::move(tie_set);
        std::optional<double> runner_up;
        for (int u = 0; u < m; ++u) {
            if (u == pick) continue;
            if (!runner_up || gains[static_cast<size_t>(u)] > *runner_up)
                runner_up = gains[static_cast<size_t>(u)];
        }
        step.runner_up_gain = runner_up;
        steps.push_back(std::move(step));

        run.allocate(pick, r, steps.back().gain);
    }
    return run.finish(std::move(steps));
}

} // namespace submatroid
