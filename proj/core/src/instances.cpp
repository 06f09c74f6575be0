#include "submatroid/instances.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "submatroid/errors.hpp"
#include "submatroid/validate.hpp"

namespace submatroid {

void TightPartitionParams::validate() const {
    if (c < 0.0 || c > 1.0) throw InputError("tight-partition: c must lie in [0,1]");
    if (d < 1.0) throw InputError("tight-partition: d must be at least 1");
    if (c < 1.0 && d > 1.0 / (1.0 - c))
        throw InputError("tight-partition: d must not exceed 1/(1-c); boundary values are "
                         "allowed");
    if (epsilon <= 0.0) throw InputError("tight-partition: epsilon must be positive");
    if (d - epsilon < 1.0) throw InputError("tight-partition: d - epsilon must be at least 1");
    if (resources < 1) throw InputError("tight-partition: need at least one resource");
}

PartitionInstance gen_tight_partition(const TightPartitionParams& p) {
    p.validate();
    std::vector<Valuation> users;
    users.push_back(Valuation::tight_partition_user(1, p.c, p.d, p.epsilon, p.resources));
    users.push_back(Valuation::tight_partition_user(2, p.c, p.d, p.epsilon, p.resources));
    return PartitionInstance(std::move(users));
}

ElementSet tight_partition_greedy_allocation(const TightPartitionParams& p) {
    ElementSet out;
    for (int r = 0; r < p.resources; ++r) {
        const int user = (r % 2 == 0) ? 0 : 1; // odd resources (1-based) to user 1
        out.insert(pair_id({user, r}, p.resources));
    }
    return out;
}

ElementSet tight_partition_optimal_allocation(const TightPartitionParams& p) {
    ElementSet out;
    for (int r = 0; r < p.resources; ++r) {
        const int user = (r % 2 == 0) ? 1 : 0;
        out.insert(pair_id({user, r}, p.resources));
    }
    return out;
}

namespace {

// sum_{j=0..terms-1} q^j, stable at the q == 1 boundary
double geometric_sum(double q, int terms) {
    if (terms <= 0) return 0.0;
    if (std::fabs(1.0 - q) < 1e-14) return static_cast<double>(terms);
    return (1.0 - std::pow(q, terms)) / (1.0 - q);
}

} // namespace

double tight_partition_greedy_value(const TightPartitionParams& p) {
    return p.d * geometric_sum(p.d * (1.0 - p.c), p.resources);
}

double tight_partition_optimal_value(const TightPartitionParams& p) {
    // 1 for the first resource plus one geometric term per later resource.
    return 1.0 + p.d_minus() * geometric_sum(p.d_minus() * (1.0 - p.c), p.resources - 1);
}

double tight_partition_ratio_limit(const TightPartitionParams& p) {
    return 1.0 / (1.0 / p.d + p.c);
}

void TightGeneralParams::validate() const {
    if (c < 0.0 || c > 1.0) throw InputError("tight-general: c must lie in [0,1]");
    if (d < 1.0) throw InputError("tight-general: d must be at least 1");
    if (rank < 1) throw InputError("tight-general: rank must be at least 1");
}

GeneralInstance gen_tight_general(const TightGeneralParams& p) {
    p.validate();
    Valuation z = Valuation::tight_general(p.c, p.d, p.rank);
    std::vector<std::vector<ElementId>> blocks;
    std::vector<int> capacities;
    for (int i = 1; i <= p.rank; ++i) {
        blocks.push_back({tight_general_nu(p, i), tight_general_eps(p, i)});
        capacities.push_back(1);
    }
    Matroid m = Matroid::partition(z.ground(), std::move(blocks), std::move(capacities));
    return {std::move(z), std::move(m)};
}

ElementId tight_general_nu(const TightGeneralParams& p, int i) {
    if (i < 1 || i > p.rank) throw InputError("tight-general: index out of range");
    return i - 1;
}

ElementId tight_general_eps(const TightGeneralParams& p, int i) {
    if (i < 1 || i > p.rank) throw InputError("tight-general: index out of range");
    return p.rank + i - 1;
}

ElementSet tight_general_greedy_set(const TightGeneralParams& p) {
    ElementSet out;
    for (int i = 1; i <= p.rank; ++i) out.insert(tight_general_eps(p, i));
    return out;
}

ElementSet tight_general_optimal_set(const TightGeneralParams& p) {
    ElementSet out;
    for (int i = 1; i <= p.rank; ++i) out.insert(tight_general_nu(p, i));
    return out;
}

std::vector<ElementId> tight_general_eps_preference(const TightGeneralParams& p) {
    std::vector<ElementId> pref;
    for (int i = 1; i <= p.rank; ++i) pref.push_back(tight_general_eps(p, i));
    return pref;
}

double tight_general_greedy_value(const TightGeneralParams& p) {
    return p.d * geometric_sum(p.d * (1.0 - p.c), p.rank);
}

double tight_general_optimal_value(const TightGeneralParams& p) {
    // nu_1 contributes 1; nu_i for i >= 2 contributes d (d(1-c))^{i-2}.
    return 1.0 + p.d * geometric_sum(p.d * (1.0 - p.c), p.rank - 1);
}

double tight_general_ratio_limit(const TightGeneralParams& p) {
    return 1.0 / (1.0 / p.d + p.c);
}

namespace {

// Explicit bounded sampling keeps generated instances reproducible across
// standard library implementations.
int bounded(std::mt19937_64& rng, int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

// Integer-valued monotone submodular constructions. Integer values make
// exact gain ties common, which exercises every tie-break path.
std::vector<double> random_table(std::mt19937_64& rng, int n) {
    const std::uint64_t full = std::uint64_t{1} << n;
    std::vector<double> table(static_cast<size_t>(full), 0.0);
    const int flavor = bounded(rng, 0, 9);
    if (flavor < 5) {
        // weighted coverage
        const int universe = n + bounded(rng, 2, 5);
        std::vector<int> weights(static_cast<size_t>(universe));
        for (auto& w : weights) w = bounded(rng, 1, 5);
        std::vector<std::uint64_t> covers(static_cast<size_t>(n), 0);
        for (int e = 0; e < n; ++e)
            for (int point = 0; point < universe; ++point)
                if (bounded(rng, 0, 4) < 2) covers[static_cast<size_t>(e)] |= std::uint64_t{1} << point;
        for (std::uint64_t mask = 1; mask < full; ++mask) {
            std::uint64_t covered = 0;
            for (int e = 0; e < n; ++e)
                if ((mask >> e) & 1) covered |= covers[static_cast<size_t>(e)];
            double v = 0.0;
            for (int point = 0; point < universe; ++point)
                if ((covered >> point) & 1) v += weights[static_cast<size_t>(point)];
            table[static_cast<size_t>(mask)] = v;
        }
    } else if (flavor < 9) {
        // sum of budget-capped modular functions (piecewise-linear concave
        // of modular, hence submodular)
        const int budgets = bounded(rng, 1, 3);
        std::vector<std::vector<int>> w(static_cast<size_t>(budgets),
                                        std::vector<int>(static_cast<size_t>(n)));
        std::vector<int> caps(static_cast<size_t>(budgets));
        for (int b = 0; b < budgets; ++b) {
            int total = 0;
            for (int e = 0; e < n; ++e) {
                w[static_cast<size_t>(b)][static_cast<size_t>(e)] = bounded(rng, 0, 4);
                total += w[static_cast<size_t>(b)][static_cast<size_t>(e)];
            }
            caps[static_cast<size_t>(b)] = std::max(1, total * bounded(rng, 3, 7) / 10);
        }
        for (std::uint64_t mask = 1; mask < full; ++mask) {
            double v = 0.0;
            for (int b = 0; b < budgets; ++b) {
                int s = 0;
                for (int e = 0; e < n; ++e)
                    if ((mask >> e) & 1) s += w[static_cast<size_t>(b)][static_cast<size_t>(e)];
                v += std::min(s, caps[static_cast<size_t>(b)]);
            }
            table[static_cast<size_t>(mask)] = v;
        }
    } else {
        // plain modular
        std::vector<int> weights(static_cast<size_t>(n));
        for (auto& w : weights) w = bounded(rng, 1, 9);
        for (std::uint64_t mask = 1; mask < full; ++mask) {
            double v = 0.0;
            for (int e = 0; e < n; ++e)
                if ((mask >> e) & 1) v += weights[static_cast<size_t>(e)];
            table[static_cast<size_t>(mask)] = v;
        }
    }
    return table;
}

Matroid random_structured_matroid(std::mt19937_64& rng, const GroundSet& ground) {
    const int n = ground.size();
    if (bounded(rng, 0, 1) == 0) return Matroid::uniform(ground, bounded(rng, 1, n));
    const int parts = std::min(n, bounded(rng, 2, 3));
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    for (int i = n - 1; i > 0; --i)
        std::swap(order[static_cast<size_t>(i)],
                  order[static_cast<size_t>(bounded(rng, 0, i))]);
    std::vector<std::vector<ElementId>> blocks(static_cast<size_t>(parts));
    for (int i = 0; i < n; ++i)
        blocks[static_cast<size_t>(i % parts)].push_back(order[static_cast<size_t>(i)]);
    std::vector<int> caps;
    for (const auto& b : blocks) caps.push_back(bounded(rng, 1, static_cast<int>(b.size())));
    return Matroid::partition(ground, std::move(blocks), std::move(caps));
}

// Column matroid of a random GF(2) matrix; a genuine matroid that is neither
// uniform nor partition in general.
Matroid random_gf2_matroid(std::mt19937_64& rng, const GroundSet& ground) {
    const int n = ground.size();
    const int dim = bounded(rng, 2, 4);
    std::vector<std::uint32_t> columns(static_cast<size_t>(n));
    for (auto& col : columns) col = static_cast<std::uint32_t>(bounded(rng, 1, (1 << dim) - 1));

    auto independent = [&](std::uint64_t mask) {
        std::vector<std::uint32_t> basis;
        for (int e = 0; e < n; ++e) {
            if (((mask >> e) & 1) == 0) continue;
            std::uint32_t v = columns[static_cast<size_t>(e)];
            for (std::uint32_t b : basis) v = std::min(v, v ^ b);
            if (v == 0) return false;
            basis.push_back(v);
            std::sort(basis.rbegin(), basis.rend());
        }
        return true;
    };

    std::vector<ElementSet> family;
    const std::uint64_t full = std::uint64_t{1} << n;
    for (std::uint64_t mask = 0; mask < full; ++mask)
        if (independent(mask)) family.push_back(ElementSet::from_mask(mask));
    return Matroid::explicit_family(ground, std::move(family));
}

std::vector<ElementSet> materialize_family(const Matroid& m) {
    std::vector<ElementSet> family;
    const std::uint64_t full = std::uint64_t{1} << m.ground().size();
    for (std::uint64_t mask = 0; mask < full; ++mask) {
        const ElementSet s = ElementSet::from_mask(mask);
        if (m.independent(s)) family.push_back(s);
    }
    return family;
}

} // namespace

Matroid gen_random_explicit_matroid(std::uint64_t seed, int n) {
    if (n < 1 || n > 12) throw InputError("explicit matroid generation is limited to 12 elements");
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 1);
    const GroundSet ground(n);
    const int flavor = bounded(rng, 0, 2);
    if (flavor == 2) return random_gf2_matroid(rng, ground);
    const Matroid structured = random_structured_matroid(rng, ground);
    return Matroid::explicit_family(ground, materialize_family(structured));
}

GeneralInstance gen_random_tabular(std::uint64_t seed, int n, RandomMatroidKind kind) {
    if (n < 1 || n > 12) throw InputError("random tabular generation is limited to 12 elements");
    std::mt19937_64 rng(seed);
    const GroundSet ground(n);
    Valuation z = Valuation::tabular(ground, random_table(rng, n));

    Matroid m = [&] {
        switch (kind) {
        case RandomMatroidKind::Uniform:
            return Matroid::uniform(ground, bounded(rng, 1, n));
        case RandomMatroidKind::Partition:
            return random_structured_matroid(rng, ground);
        case RandomMatroidKind::Explicit:
            return gen_random_explicit_matroid(rng(), n);
        }
        throw InputError("unknown matroid kind");
    }();

    GeneralInstance instance{std::move(z), std::move(m)};
    const ValidationReport report = validate_oracles(instance.valuation, instance.matroid);
    if (!report.passed())
        throw Error("generated instance failed validation: " + report.summary());
    return instance;
}

PartitionInstance gen_random_partition(std::uint64_t seed, int users, int resources) {
    if (users < 1 || resources < 1)
        throw InputError("random partition instance needs at least one user and one resource");
    if (resources > 12) throw InputError("random partition generation is limited to 12 resources");
    std::mt19937_64 rng(seed ^ 0xa5a5a5a5a5a5a5a5ULL);
    const GroundSet ground(resources);
    std::vector<Valuation> vals;
    vals.reserve(static_cast<size_t>(users));
    for (int u = 0; u < users; ++u)
        vals.push_back(Valuation::tabular(ground, random_table(rng, resources)));
    return PartitionInstance(std::move(vals));
}

} // namespace submatroid
