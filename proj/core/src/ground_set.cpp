#include "submatroid/ground_set.hpp"

#include <algorithm>
#include <bit>

#include "submatroid/errors.hpp"

namespace submatroid {

GroundSet::GroundSet(int size) : size_(size) {
    if (size < 0) throw InputError("ground set size must be nonnegative");
    labels_.reserve(static_cast<size_t>(size));
    for (int i = 0; i < size; ++i) labels_.push_back("e" + std::to_string(i));
}

GroundSet::GroundSet(int size, std::vector<std::string> labels) : GroundSet(size) {
    if (!labels.empty()) {
        if (static_cast<int>(labels.size()) != size)
            throw InputError("label count does not match ground set size");
        labels_ = std::move(labels);
        custom_labels_ = true;
    }
}

GroundSet GroundSet::pairs(int users, int resources) {
    if (users < 1 || resources < 1)
        throw InputError("pair ground set needs at least one user and one resource");
    std::vector<std::string> labels;
    labels.reserve(static_cast<size_t>(users) * static_cast<size_t>(resources));
    for (int u = 0; u < users; ++u)
        for (int r = 0; r < resources; ++r)
            labels.push_back("u" + std::to_string(u) + ":r" + std::to_string(r));
    GroundSet g(users * resources, std::move(labels));
    g.custom_labels_ = false; // derived, not user supplied
    return g;
}

const std::string& GroundSet::label(ElementId e) const {
    if (!contains(e)) throw InputError("unknown element id " + std::to_string(e));
    return labels_[static_cast<size_t>(e)];
}

ElementSet::ElementSet(std::initializer_list<ElementId> ids) {
    for (ElementId e : ids) insert(e);
}

ElementSet::ElementSet(const std::vector<ElementId>& ids) {
    for (ElementId e : ids) insert(e);
}

ElementSet ElementSet::from_mask(std::uint64_t mask) {
    ElementSet s;
    while (mask != 0) {
        const int bit = std::countr_zero(mask);
        s.ids_.push_back(bit);
        mask &= mask - 1;
    }
    return s;
}

bool ElementSet::contains(ElementId e) const {
    return std::binary_search(ids_.begin(), ids_.end(), e);
}

void ElementSet::insert(ElementId e) {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), e);
    if (it == ids_.end() || *it != e) ids_.insert(it, e);
}

void ElementSet::erase(ElementId e) {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), e);
    if (it != ids_.end() && *it == e) ids_.erase(it);
}

ElementSet ElementSet::with(ElementId e) const {
    ElementSet s = *this;
    s.insert(e);
    return s;
}

ElementSet ElementSet::without(ElementId e) const {
    ElementSet s = *this;
    s.erase(e);
    return s;
}

std::uint64_t ElementSet::mask() const {
    std::uint64_t m = 0;
    for (ElementId e : ids_) {
        if (e < 0 || e >= 64) throw InputError("element id out of mask range");
        m |= std::uint64_t{1} << e;
    }
    return m;
}

bool ElementSet::is_subset_of(const ElementSet& other) const {
    return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(), ids_.end());
}

ElementSet set_union(const ElementSet& a, const ElementSet& b) {
    std::vector<ElementId> out;
    std::set_union(a.elements().begin(), a.elements().end(), b.elements().begin(),
                   b.elements().end(), std::back_inserter(out));
    ElementSet s;
    for (ElementId e : out) s.insert(e);
    return s;
}

ElementSet set_difference(const ElementSet& a, const ElementSet& b) {
    std::vector<ElementId> out;
    std::set_difference(a.elements().begin(), a.elements().end(), b.elements().begin(),
                        b.elements().end(), std::back_inserter(out));
    ElementSet s;
    for (ElementId e : out) s.insert(e);
    return s;
}

} // namespace submatroid
