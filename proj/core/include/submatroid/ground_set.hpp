#ifndef SUBMATROID_GROUND_SET_HPP_
#define SUBMATROID_GROUND_SET_HPP_

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace submatroid {

/// Elements are dense indices 0..n-1. The index order is fixed at
/// construction and doubles as the canonical tie-break order.
using ElementId = int;

/// Finite ground set with optional string labels. Labels are metadata only;
/// identity is the index.
class GroundSet {
public:
    GroundSet() = default;
    explicit GroundSet(int size);
    GroundSet(int size, std::vector<std::string> labels);

    /// Ground set of user x resource pairs, indexed user-major:
    /// id(u, r) = u * resources + r.
    static GroundSet pairs(int users, int resources);

    int size() const { return size_; }
    bool contains(ElementId e) const { return e >= 0 && e < size_; }
    const std::string& label(ElementId e) const;
    bool has_custom_labels() const { return custom_labels_; }

    bool operator==(const GroundSet& other) const { return size_ == other.size_; }

private:
    int size_ = 0;
    std::vector<std::string> labels_;
    bool custom_labels_ = false;
};

/// Small set of ground-set elements with value semantics; elements are kept
/// sorted ascending. Sized for the instance scales this library targets
/// (tens of elements), not for large-scale work.
class ElementSet {
public:
    ElementSet() = default;
    ElementSet(std::initializer_list<ElementId> ids);
    explicit ElementSet(const std::vector<ElementId>& ids);
    static ElementSet from_mask(std::uint64_t mask);

    bool contains(ElementId e) const;
    void insert(ElementId e);
    void erase(ElementId e);
    ElementSet with(ElementId e) const;
    ElementSet without(ElementId e) const;

    int size() const { return static_cast<int>(ids_.size()); }
    bool empty() const { return ids_.empty(); }
    const std::vector<ElementId>& elements() const { return ids_; }

    /// Bitmask form; requires every element id < 64.
    std::uint64_t mask() const;

    bool is_subset_of(const ElementSet& other) const;

    auto begin() const { return ids_.begin(); }
    auto end() const { return ids_.end(); }

    bool operator==(const ElementSet&) const = default;

private:
    std::vector<ElementId> ids_;
};

ElementSet set_union(const ElementSet& a, const ElementSet& b);
ElementSet set_difference(const ElementSet& a, const ElementSet& b);

/// One user-resource pair of a partition instance.
struct PairElement {
    int user = 0;
    int resource = 0;
    bool operator==(const PairElement&) const = default;
};

constexpr ElementId pair_id(PairElement p, int resources) {
    return p.user * resources + p.resource;
}

constexpr PairElement pair_of(ElementId id, int resources) {
    return PairElement{id / resources, id % resources};
}

} // namespace submatroid

#endif
