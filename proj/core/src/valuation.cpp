#include "submatroid/valuation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "submatroid/errors.hpp"

namespace submatroid {

struct Valuation::Impl {
    Kind kind = Kind::Modular;
    GroundSet ground;

    std::vector<double> table;   // tabular, indexed by subset mask
    std::vector<double> weights; // modular

    // coverage
    std::vector<std::vector<int>> covers;
    std::vector<std::uint64_t> cover_masks;
    std::vector<double> universe_weights;

    // partition-sum
    std::vector<Valuation> users;
    int resources = 0;

    // tight families
    int role = 0;
    double c = 0.0, d = 0.0, epsilon = 0.0;
    int rank = 0;
    // per-resource contribution, 1-based index, split by whether the paired
    // predecessor resource is present
    std::vector<double> contrib_out, contrib_in;
    std::vector<double> qd_pow; // (d(1-c))^j for the tight general family

    double value(const ElementSet& s) const;

    double tight_partition_value(const ElementSet& s) const {
        // Contribution of r_i (1-based) depends only on whether r_{i-1} is
        // in the same user's set.
        double total = 0.0;
        for (ElementId e : s) {
            const int i = e + 1;
            const bool pred_in = i >= 2 && s.contains(e - 1);
            total += pred_in ? contrib_in[static_cast<size_t>(i)]
                             : contrib_out[static_cast<size_t>(i)];
        }
        return total;
    }

    double tight_general_value(const ElementSet& s) const {
        // nu_i is id i-1, eps_i is id K+i-1. eps contributions are
        // unconditional; nu_i's contribution depends on whether eps_{i-1}
        // is present.
        double total = 0.0;
        for (ElementId e : s) {
            if (e >= rank) {
                const int i = e - rank + 1;
                total += d * qd_pow[static_cast<size_t>(i - 1)];
            } else {
                const int i = e + 1;
                const bool eps_pred = i >= 2 && s.contains(rank + i - 2);
                if (i == 1 || eps_pred)
                    total += qd_pow[static_cast<size_t>(i - 1)];
                else
                    total += d * qd_pow[static_cast<size_t>(i - 2)];
            }
        }
        return total;
    }
};

double Valuation::Impl::value(const ElementSet& s) const {
    switch (kind) {
    case Kind::Tabular:
        return table[s.mask()];
    case Kind::Modular: {
        double total = 0.0;
        for (ElementId e : s) total += weights[static_cast<size_t>(e)];
        return total;
    }
    case Kind::Coverage: {
        std::uint64_t covered = 0;
        for (ElementId e : s) covered |= cover_masks[static_cast<size_t>(e)];
        double total = 0.0;
        while (covered != 0) {
            const int p = std::countr_zero(covered);
            total += universe_weights[static_cast<size_t>(p)];
            covered &= covered - 1;
        }
        return total;
    }
    case Kind::PartitionSum: {
        std::vector<ElementSet> per_user(users.size());
        for (ElementId e : s) {
            const PairElement p = pair_of(e, resources);
            per_user[static_cast<size_t>(p.user)].insert(p.resource);
        }
        double total = 0.0;
        for (size_t u = 0; u < users.size(); ++u) total += users[u].value(per_user[u]);
        return total;
    }
    case Kind::TightPartitionUser:
        return tight_partition_value(s);
    case Kind::TightGeneral:
        return tight_general_value(s);
    }
    return 0.0;
}

Valuation Valuation::tabular(GroundSet ground, std::vector<double> table) {
    if (ground.size() > 20) throw InputError("tabular oracles are capped at 20 elements");
    const size_t expected = size_t{1} << ground.size();
    if (table.size() != expected)
        throw InputError("tabular oracle needs exactly 2^n values");
    if (table[0] != 0.0) throw InputError("tabular oracle must have value 0 on the empty set");
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Tabular;
    impl->ground = std::move(ground);
    impl->table = std::move(table);
    return Valuation(std::move(impl));
}

Valuation Valuation::modular(GroundSet ground, std::vector<double> weights) {
    if (static_cast<int>(weights.size()) != ground.size())
        throw InputError("modular oracle needs one weight per element");
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Modular;
    impl->ground = std::move(ground);
    impl->weights = std::move(weights);
    return Valuation(std::move(impl));
}

Valuation Valuation::coverage(GroundSet ground, std::vector<std::vector<int>> covers,
                              std::vector<double> universe_weights) {
    if (static_cast<int>(covers.size()) != ground.size())
        throw InputError("coverage oracle needs one cover set per element");
    if (universe_weights.size() > 64)
        throw InputError("coverage universes are capped at 64 points");
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::Coverage;
    impl->ground = std::move(ground);
    impl->cover_masks.reserve(covers.size());
    for (auto& cover : covers) {
        std::sort(cover.begin(), cover.end());
        std::uint64_t mask = 0;
        for (int p : cover) {
            if (p < 0 || p >= static_cast<int>(universe_weights.size()))
                throw InputError("cover set references unknown universe point");
            mask |= std::uint64_t{1} << p;
        }
        impl->cover_masks.push_back(mask);
    }
    impl->covers = std::move(covers);
    impl->universe_weights = std::move(universe_weights);
    return Valuation(std::move(impl));
}

Valuation Valuation::partition_sum(std::vector<Valuation> users) {
    if (users.empty()) throw InputError("partition-sum oracle needs at least one user");
    const int n = users[0].ground().size();
    for (const auto& u : users)
        if (u.ground().size() != n)
            throw InputError("all users of a partition-sum oracle must share one resource set");
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::PartitionSum;
    impl->ground = GroundSet::pairs(static_cast<int>(users.size()), n);
    impl->resources = n;
    impl->users = std::move(users);
    return Valuation(std::move(impl));
}

Valuation Valuation::tight_partition_user(int role, double c, double d, double epsilon, int n) {
    if (role != 1 && role != 2) throw InputError("tight partition user role must be 1 or 2");
    if (n < 1) throw InputError("tight partition user needs at least one resource");
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::TightPartitionUser;
    impl->ground = GroundSet(n);
    impl->role = role;
    impl->c = c;
    impl->d = d;
    impl->epsilon = epsilon;

    // Per-resource contributions. Odd columns of user 1 and even columns of
    // user 2 carry the unconditional d^i (1-c)^{i-1} entries; the opposite
    // columns carry d_-^{i-1} (1-c)^{i-2}, multiplied by another (1-c) when
    // the predecessor resource already belongs to the same user. Resource 1
    // under user 2 is the plain unit entry.
    const double dm = d - epsilon;
    const double one_mc = 1.0 - c;
    impl->contrib_out.assign(static_cast<size_t>(n) + 1, 0.0);
    impl->contrib_in.assign(static_cast<size_t>(n) + 1, 0.0);
    double qd_pow = 1.0;  // (d(1-c))^{i-1}
    double qdm_pow = 1.0; // (d_-(1-c))^{i-2}, tracked from i = 2
    for (int i = 1; i <= n; ++i) {
        const bool unconditional = (role == 1) ? (i % 2 == 1) : (i % 2 == 0);
        double out, in;
        if (role == 2 && i == 1) {
            out = in = 1.0;
        } else if (unconditional) {
            out = in = d * qd_pow;
        } else {
            out = dm * qdm_pow;
            in = out * one_mc;
        }
        impl->contrib_out[static_cast<size_t>(i)] = out;
        impl->contrib_in[static_cast<size_t>(i)] = in;
        qd_pow *= d * one_mc;
        if (i >= 2) qdm_pow *= dm * one_mc;
    }
    return Valuation(std::move(impl));
}

Valuation Valuation::tight_general(double c, double d, int rank) {
    if (rank < 1) throw InputError("tight general instance needs rank >= 1");
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::TightGeneral;
    std::vector<std::string> labels;
    for (int i = 1; i <= rank; ++i) labels.push_back("nu" + std::to_string(i));
    for (int i = 1; i <= rank; ++i) labels.push_back("eps" + std::to_string(i));
    impl->ground = GroundSet(2 * rank, std::move(labels));
    impl->c = c;
    impl->d = d;
    impl->rank = rank;
    impl->qd_pow.assign(static_cast<size_t>(rank) + 1, 1.0);
    for (int j = 1; j <= rank; ++j)
        impl->qd_pow[static_cast<size_t>(j)] =
            impl->qd_pow[static_cast<size_t>(j - 1)] * d * (1.0 - c);
    return Valuation(std::move(impl));
}

double Valuation::value(const ElementSet& s) const {
    for (ElementId e : s)
        if (!impl_->ground.contains(e))
            throw InputError("valuation queried with unknown element " + std::to_string(e));
    return impl_->value(s);
}

const GroundSet& Valuation::ground() const { return impl_->ground; }
Valuation::Kind Valuation::kind() const { return impl_->kind; }

namespace {

[[noreturn]] void kind_mismatch(const char* what) {
    throw InputError(std::string("valuation descriptor mismatch: ") + what);
}

} // namespace

const std::vector<double>& Valuation::table() const {
    if (impl_->kind != Kind::Tabular) kind_mismatch("not tabular");
    return impl_->table;
}
const std::vector<double>& Valuation::weights() const {
    if (impl_->kind != Kind::Modular) kind_mismatch("not modular");
    return impl_->weights;
}
const std::vector<std::vector<int>>& Valuation::covers() const {
    if (impl_->kind != Kind::Coverage) kind_mismatch("not coverage");
    return impl_->covers;
}
const std::vector<double>& Valuation::universe_weights() const {
    if (impl_->kind != Kind::Coverage) kind_mismatch("not coverage");
    return impl_->universe_weights;
}
const std::vector<Valuation>& Valuation::users() const {
    if (impl_->kind != Kind::PartitionSum) kind_mismatch("not partition-sum");
    return impl_->users;
}
int Valuation::tight_role() const {
    if (impl_->kind != Kind::TightPartitionUser) kind_mismatch("not a tight partition user");
    return impl_->role;
}
double Valuation::tight_c() const {
    if (impl_->kind != Kind::TightPartitionUser && impl_->kind != Kind::TightGeneral)
        kind_mismatch("not a tight family");
    return impl_->c;
}
double Valuation::tight_d() const {
    if (impl_->kind != Kind::TightPartitionUser && impl_->kind != Kind::TightGeneral)
        kind_mismatch("not a tight family");
    return impl_->d;
}
double Valuation::tight_epsilon() const {
    if (impl_->kind != Kind::TightPartitionUser) kind_mismatch("not a tight partition user");
    return impl_->epsilon;
}
int Valuation::tight_rank() const {
    if (impl_->kind != Kind::TightGeneral) kind_mismatch("not the tight general family");
    return impl_->rank;
}
int Valuation::tight_resources() const {
    if (impl_->kind != Kind::TightPartitionUser) kind_mismatch("not a tight partition user");
    return impl_->ground.size();
}

double marginal_gain(const Valuation& z, const ElementSet& s, ElementId q) {
    if (!z.ground().contains(q))
        throw InputError("marginal_gain: unknown element " + std::to_string(q));
    for (ElementId e : s)
        if (!z.ground().contains(e))
            throw InputError("marginal_gain: set contains unknown element " + std::to_string(e));
    if (s.contains(q))
        throw InputError("marginal_gain: element " + std::to_string(q) + " is already in the set");
    return z.value(s.with(q)) - z.value(s);
}

PartitionInstance::PartitionInstance(std::vector<Valuation> users) : users_(std::move(users)) {
    if (users_.empty()) throw InputError("partition instance needs at least one user");
    resources_ = users_[0].ground().size();
    if (resources_ < 1) throw InputError("partition instance needs at least one resource");
    for (const auto& u : users_)
        if (u.ground().size() != resources_)
            throw InputError("all users of a partition instance must share one resource set");
}

GroundSet PartitionInstance::pair_ground() const {
    return GroundSet::pairs(num_users(), num_resources());
}

Matroid PartitionInstance::pair_matroid() const {
    return Matroid::pair_partition(num_users(), num_resources());
}

Valuation PartitionInstance::combined() const { return Valuation::partition_sum(users_); }

} // namespace submatroid
