#include "submatroid/matroid.hpp"

#include <algorithm>
#include <unordered_set>

#include "submatroid/errors.hpp"

namespace submatroid {

struct Matroid::Impl {
    Kind kind = Kind::Uniform;
    GroundSet ground;

    // uniform
    int rank_k = 0;

    // partition
    std::vector<std::vector<ElementId>> blocks;
    std::vector<int> capacities;
    std::vector<int> block_of; // element -> block index

    // pair-partition
    int users = 0;
    int resources = 0;

    // explicit family
    std::vector<ElementSet> family;
    std::unordered_set<std::uint64_t> family_masks;

    int rank = 0;

    bool independent(const ElementSet& s) const {
        for (ElementId e : s)
            if (!ground.contains(e)) return false;
        switch (kind) {
        case Kind::Uniform:
            return s.size() <= rank_k;
        case Kind::Partition: {
            std::vector<int> used(blocks.size(), 0);
            for (ElementId e : s) {
                const int b = block_of[static_cast<size_t>(e)];
                if (++used[static_cast<size_t>(b)] > capacities[static_cast<size_t>(b)])
                    return false;
            }
            return true;
        }
        case Kind::PairPartition: {
            std::vector<bool> taken(static_cast<size_t>(resources), false);
            for (ElementId e : s) {
                const int r = e % resources;
                if (taken[static_cast<size_t>(r)]) return false;
                taken[static_cast<size_t>(r)] = true;
            }
            return true;
        }
        case Kind::ExplicitFamily:
            return family_masks.count(s.mask()) != 0;
        }
        return false;
    }
};

namespace {

void check_explicit_axioms(const GroundSet& ground, const std::vector<ElementSet>& family,
                           const std::unordered_set<std::uint64_t>& masks) {
    bool has_empty = false;
    for (const auto& s : family) {
        if (s.empty()) has_empty = true;
        for (ElementId e : s)
            if (!ground.contains(e))
                throw InputError("explicit family contains unknown element " + std::to_string(e));
    }
    if (!has_empty) throw InputError("explicit family violates axiom: empty set not independent");

    for (const auto& s : family) {
        for (ElementId e : s) {
            if (masks.count(s.without(e).mask()) == 0)
                throw InputError("explicit family violates hereditary axiom: subset obtained by "
                                 "removing element " +
                                 std::to_string(e) + " is missing");
        }
    }

    for (const auto& s : family) {
        for (const auto& t : family) {
            if (t.size() <= s.size()) continue;
            bool extended = false;
            for (ElementId e : set_difference(t, s)) {
                if (masks.count(s.with(e).mask()) != 0) {
                    extended = true;
                    break;
                }
            }
            if (!extended)
                throw InputError("explicit family violates augmentation axiom for a set pair of "
                                 "sizes " +
                                 std::to_string(s.size()) + " and " + std::to_string(t.size()));
        }
    }
}

} // namespace

Matroid Matroid::uniform(GroundSet ground, int rank) {
    if (rank < 1 || rank > ground.size())
        throw InputError("uniform matroid rank must be in 1..n");
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Uniform;
    impl->ground = std::move(ground);
    impl->rank_k = rank;
    impl->rank = rank;
    return Matroid(std::move(impl));
}

Matroid Matroid::partition(GroundSet ground, std::vector<std::vector<ElementId>> blocks,
                           std::vector<int> capacities) {
    if (blocks.size() != capacities.size())
        throw InputError("partition matroid needs one capacity per block");
    std::vector<int> block_of(static_cast<size_t>(ground.size()), -1);
    for (size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].empty()) throw InputError("partition matroid blocks must be nonempty");
        for (ElementId e : blocks[b]) {
            if (!ground.contains(e))
                throw InputError("partition block contains unknown element " + std::to_string(e));
            if (block_of[static_cast<size_t>(e)] != -1)
                throw InputError("partition blocks must be disjoint");
            block_of[static_cast<size_t>(e)] = static_cast<int>(b);
        }
        if (capacities[b] < 1 || capacities[b] > static_cast<int>(blocks[b].size()))
            throw InputError("partition capacity must be in 1..|block|");
    }
    for (int e = 0; e < ground.size(); ++e)
        if (block_of[static_cast<size_t>(e)] == -1)
            throw InputError("partition blocks must cover the ground set");

    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Partition;
    impl->ground = std::move(ground);
    impl->blocks = std::move(blocks);
    impl->capacities = std::move(capacities);
    impl->block_of = std::move(block_of);
    impl->rank = 0;
    for (int c : impl->capacities) impl->rank += c;
    return Matroid(std::move(impl));
}

Matroid Matroid::pair_partition(int users, int resources) {
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::PairPartition;
    impl->ground = GroundSet::pairs(users, resources);
    impl->users = users;
    impl->resources = resources;
    impl->rank = resources;
    return Matroid(std::move(impl));
}

Matroid Matroid::explicit_family_unchecked(GroundSet ground, std::vector<ElementSet> family) {
    if (ground.size() > 63) throw InputError("explicit families are limited to 63 elements");
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::ExplicitFamily;
    impl->ground = std::move(ground);
    impl->family = std::move(family);
    for (const auto& s : impl->family) {
        impl->family_masks.insert(s.mask());
        impl->rank = std::max(impl->rank, s.size());
    }
    return Matroid(std::move(impl));
}

Matroid Matroid::explicit_family(GroundSet ground, std::vector<ElementSet> family) {
    Matroid m = explicit_family_unchecked(std::move(ground), std::move(family));
    check_explicit_axioms(m.impl_->ground, m.impl_->family, m.impl_->family_masks);
    if (m.impl_->rank < 1) throw InputError("explicit family has rank 0");
    return m;
}

bool Matroid::independent(const ElementSet& s) const { return impl_->independent(s); }
int Matroid::rank() const { return impl_->rank; }
const GroundSet& Matroid::ground() const { return impl_->ground; }
Matroid::Kind Matroid::kind() const { return impl_->kind; }

int Matroid::uniform_rank() const {
    if (impl_->kind != Kind::Uniform) throw InputError("not a uniform matroid");
    return impl_->rank_k;
}

const std::vector<std::vector<ElementId>>& Matroid::partition_blocks() const {
    if (impl_->kind != Kind::Partition) throw InputError("not a partition matroid");
    return impl_->blocks;
}

const std::vector<int>& Matroid::partition_capacities() const {
    if (impl_->kind != Kind::Partition) throw InputError("not a partition matroid");
    return impl_->capacities;
}

int Matroid::pair_users() const {
    if (impl_->kind != Kind::PairPartition) throw InputError("not a pair-partition matroid");
    return impl_->users;
}

int Matroid::pair_resources() const {
    if (impl_->kind != Kind::PairPartition) throw InputError("not a pair-partition matroid");
    return impl_->resources;
}

const std::vector<ElementSet>& Matroid::family() const {
    if (impl_->kind != Kind::ExplicitFamily) throw InputError("not an explicit-family matroid");
    return impl_->family;
}

std::vector<ElementId> eligible_extensions(const Matroid& m, const ElementSet& s) {
    if (!m.independent(s)) throw InputError("eligible_extensions: set is not independent");
    std::vector<ElementId> out;
    ElementSet probe = s;
    for (ElementId e = 0; e < m.ground().size(); ++e) {
        if (s.contains(e)) continue;
        probe.insert(e);
        if (m.independent(probe)) out.push_back(e);
        probe.erase(e);
    }
    return out;
}

} // namespace submatroid
