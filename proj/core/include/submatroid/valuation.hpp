#ifndef SUBMATROID_VALUATION_HPP_
#define SUBMATROID_VALUATION_HPP_

#include <memory>
#include <vector>

#include "submatroid/ground_set.hpp"
#include "submatroid/matroid.hpp"

namespace submatroid {

/// Set-function oracle Z with Z(empty) = 0. Immutable and cheap to copy.
///
/// Tabular oracles store all 2^n values explicitly (hard cap n <= 20) and
/// are the random-test workhorse. The closed-form kinds evaluate on demand,
/// which keeps the tight instance families usable at sizes where a table
/// would be infeasible.
class Valuation {
public:
    enum class Kind {
        Tabular,
        Modular,
        Coverage,
        PartitionSum,
        TightPartitionUser,
        TightGeneral,
    };

    /// table[mask] for every subset mask; table[0] must be exactly 0.
    static Valuation tabular(GroundSet ground, std::vector<double> table);
    static Valuation modular(GroundSet ground, std::vector<double> weights);
    /// Z(S) = total weight of the union of the cover sets of elements in S.
    static Valuation coverage(GroundSet ground, std::vector<std::vector<int>> covers,
                              std::vector<double> universe_weights);
    /// Z(S) = sum over users u of Z_u(S_u), over a user x resource pair
    /// ground set. All per-user oracles must share one resource ground.
    static Valuation partition_sum(std::vector<Valuation> users);
    /// One user of the two-user tight partition family. role is 1 or 2.
    static Valuation tight_partition_user(int role, double c, double d, double epsilon,
                                          int resources);
    /// The 2K-element tight instance for the general matroid bound.
    static Valuation tight_general(double c, double d, int rank);

    double value(const ElementSet& s) const;
    const GroundSet& ground() const;
    Kind kind() const;

    // Descriptor access for serialization; must match kind().
    const std::vector<double>& table() const;
    const std::vector<double>& weights() const;
    const std::vector<std::vector<int>>& covers() const;
    const std::vector<double>& universe_weights() const;
    const std::vector<Valuation>& users() const;
    int tight_role() const;
    double tight_c() const;
    double tight_d() const;
    double tight_epsilon() const;
    int tight_rank() const;
    int tight_resources() const;

private:
    struct Impl;
    explicit Valuation(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

/// rho_q(S) = Z(S + q) - Z(S). q must be a ground element outside S.
double marginal_gain(const Valuation& z, const ElementSet& s, ElementId q);

/// A submodular welfare / partition problem: one valuation per user over a
/// shared resource set. Equivalent to maximizing the partition-sum oracle
/// over the pair-partition matroid.
class PartitionInstance {
public:
    explicit PartitionInstance(std::vector<Valuation> users);

    int num_users() const { return static_cast<int>(users_.size()); }
    int num_resources() const { return resources_; }
    const std::vector<Valuation>& users() const { return users_; }
    const Valuation& user(int u) const { return users_.at(static_cast<size_t>(u)); }

    GroundSet pair_ground() const;
    Matroid pair_matroid() const;
    Valuation combined() const;

private:
    std::vector<Valuation> users_;
    int resources_ = 0;
};

} // namespace submatroid

#endif
