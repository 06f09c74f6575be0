#ifndef SUBMATROID_MATROID_HPP_
#define SUBMATROID_MATROID_HPP_

#include <memory>
#include <vector>

#include "submatroid/ground_set.hpp"

namespace submatroid {

/// Independence oracle over a finite ground set. Immutable after
/// construction; cheap to copy and safe to share across threads.
///
/// Supported kinds: uniform (|S| <= K), partition (per-block capacities),
/// pair-partition (at most one user per resource), and an explicit family of
/// independent sets. Explicit families are checked against all three matroid
/// axioms at construction unless the unchecked factory is used.
class Matroid {
public:
    enum class Kind { Uniform, Partition, PairPartition, ExplicitFamily };

    static Matroid uniform(GroundSet ground, int rank);
    static Matroid partition(GroundSet ground, std::vector<std::vector<ElementId>> blocks,
                             std::vector<int> capacities);
    static Matroid pair_partition(int users, int resources);
    static Matroid explicit_family(GroundSet ground, std::vector<ElementSet> family);
    /// Skips the axiom checks. Intended for feeding deliberately broken
    /// families to the validator.
    static Matroid explicit_family_unchecked(GroundSet ground, std::vector<ElementSet> family);

    bool independent(const ElementSet& s) const;
    int rank() const;
    const GroundSet& ground() const;
    Kind kind() const;

    // Descriptor access, used by serialization. Calling an accessor that
    // does not match kind() is an error.
    int uniform_rank() const;
    const std::vector<std::vector<ElementId>>& partition_blocks() const;
    const std::vector<int>& partition_capacities() const;
    int pair_users() const;
    int pair_resources() const;
    const std::vector<ElementSet>& family() const;

private:
    struct Impl;
    explicit Matroid(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

/// All x not in S with S + x independent (the eligible extensions S_bot).
/// Empty exactly when S is a basis. S must be independent.
std::vector<ElementId> eligible_extensions(const Matroid& m, const ElementSet& s);

} // namespace submatroid

#endif
