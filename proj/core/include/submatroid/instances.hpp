#ifndef SUBMATROID_INSTANCES_HPP_
#define SUBMATROID_INSTANCES_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "submatroid/matroid.hpp"
#include "submatroid/valuation.hpp"

namespace submatroid {

/// Parameters of the two-user partition family whose greedy-to-optimal
/// ratio approaches 1/(1/d + c). Requires 0 <= c <= 1, 1 <= d <= 1/(1-c)
/// (boundary allowed), epsilon > 0 and d - epsilon >= 1.
struct TightPartitionParams {
    double c = 0.5;
    double d = 1.5;
    double epsilon = 1e-6;
    int resources = 8;

    double d_minus() const { return d - epsilon; }
    void validate() const; // throws InputError naming the violated constraint
};

PartitionInstance gen_tight_partition(const TightPartitionParams& p);

/// Greedy allocation (u1,r1),(u2,r2),(u1,r3),... as pair ids.
ElementSet tight_partition_greedy_allocation(const TightPartitionParams& p);
/// Optimal allocation (u2,r1),(u1,r2),(u2,r3),... as pair ids. Optimal for
/// n >= 3; at n <= 2 the greedy allocation itself is optimal.
ElementSet tight_partition_optimal_allocation(const TightPartitionParams& p);

/// Closed-form value of the greedy allocation:
/// d (1 - (d(1-c))^n) / (1 - d(1-c)), i.e. n geometric terms.
double tight_partition_greedy_value(const TightPartitionParams& p);
/// Closed-form value of the alternating allocation:
/// 1 + sum_{i=2..n} d_-^{i-1} (1-c)^{i-2}, i.e. 1 plus n-1 geometric terms.
double tight_partition_optimal_value(const TightPartitionParams& p);
/// Limit of greedy/optimal as epsilon -> 0, n -> inf: 1/(1/d + c).
double tight_partition_ratio_limit(const TightPartitionParams& p);

/// Parameters of the 2K-element general-matroid family (blocks {nu_i,
/// eps_i} of capacity 1). Requires 0 <= c <= 1, d >= 1, rank >= 1.
struct TightGeneralParams {
    double c = 0.5;
    double d = 1.5;
    int rank = 4;

    void validate() const;
};

struct GeneralInstance {
    Valuation valuation;
    Matroid matroid;
};

/// Element ids: nu_i -> i-1, eps_i -> rank + i - 1 (i = 1..rank).
GeneralInstance gen_tight_general(const TightGeneralParams& p);

ElementId tight_general_nu(const TightGeneralParams& p, int i);  // 1-based
ElementId tight_general_eps(const TightGeneralParams& p, int i); // 1-based
ElementSet tight_general_greedy_set(const TightGeneralParams& p);   // all eps
ElementSet tight_general_optimal_set(const TightGeneralParams& p);  // all nu
/// A preference list that steers gain ties toward the eps elements.
std::vector<ElementId> tight_general_eps_preference(const TightGeneralParams& p);

/// Closed-form greedy value d * sum_{i=1..K} (d(1-c))^{i-1}.
double tight_general_greedy_value(const TightGeneralParams& p);
/// Closed-form value of the all-nu basis: 1 + d * sum_{i=1..K-1} (d(1-c))^{i-1}.
/// That basis is the optimum for K >= 3; for K <= 2 the all-eps basis wins.
double tight_general_optimal_value(const TightGeneralParams& p);
/// Limit of greedy/optimal as K -> inf: 1/(1/d + c).
double tight_general_ratio_limit(const TightGeneralParams& p);

/// Random instance generation. Valuations are integer-valued coverage or
/// budget-capped-modular constructions (submodular and monotone by
/// construction, with frequent exact ties) or occasionally plain modular.
/// Deterministic per seed.
enum class RandomMatroidKind { Uniform, Partition, Explicit };

GeneralInstance gen_random_tabular(std::uint64_t seed, int n, RandomMatroidKind kind);
PartitionInstance gen_random_partition(std::uint64_t seed, int users, int resources);
/// A genuine random matroid materialized as an explicit family (uniform,
/// partition, or GF(2)-linear column matroid). n <= 12.
Matroid gen_random_explicit_matroid(std::uint64_t seed, int n);

} // namespace submatroid

#endif
