#include <doctest.h>

#include "submatroid/errors.hpp"
#include "submatroid/ground_set.hpp"
#include "submatroid/instances.hpp"
#include "submatroid/matroid.hpp"
#include "submatroid/validate.hpp"
#include "submatroid/valuation.hpp"
#include "test_util.hpp"

#include <random>

using namespace submatroid;

TEST_SUITE_BEGIN("core");

TEST_CASE("ground set labels and bounds") {
    GroundSet g(3, {"a", "b", "c"});
    CHECK(g.size() == 3);
    CHECK(g.label(1) == "b");
    CHECK_THROWS_AS((void)g.label(3), InputError);
    GroundSet pairs = GroundSet::pairs(2, 3);
    CHECK(pairs.size() == 6);
    CHECK(pairs.label(pair_id({1, 2}, 3)) == "u1:r2");
}

TEST_CASE("element set operations") {
    ElementSet s{3, 1};
    CHECK(s.elements() == std::vector<ElementId>{1, 3});
    CHECK(s.contains(3));
    CHECK_FALSE(s.contains(2));
    s.insert(2);
    s.insert(2);
    CHECK(s.size() == 3);
    s.erase(1);
    CHECK(s.elements() == std::vector<ElementId>{2, 3});
    CHECK(s.mask() == 0b1100);
    CHECK(ElementSet::from_mask(0b1100) == s);
    CHECK(set_union(ElementSet{1}, ElementSet{2}) == ElementSet{1, 2});
    CHECK(set_difference(ElementSet{1, 2}, ElementSet{2}) == ElementSet{1});
    CHECK(ElementSet{1}.is_subset_of(ElementSet{1, 2}));

    std::mt19937_64 rng(7);
    for (int it = 0; it < 200; ++it) {
        const std::uint64_t mask = rng() & 0xffff;
        CHECK(ElementSet::from_mask(mask).mask() == mask);
    }
}

TEST_CASE("pair element indexing round trip") {
    for (int u = 0; u < 3; ++u)
        for (int r = 0; r < 4; ++r) {
            const ElementId id = pair_id({u, r}, 4);
            CHECK(pair_of(id, 4) == PairElement{u, r});
        }
}

TEST_CASE("marginal gain on a two-element table") {
    // Z({a}) = 2, Z({b}) = 3, Z({a,b}) = 4
    Valuation z = Valuation::tabular(GroundSet(2), {0, 2, 3, 4});
    CHECK(marginal_gain(z, ElementSet{0}, 1) == doctest::Approx(2.0));
    CHECK(marginal_gain(z, ElementSet{}, 0) == doctest::Approx(2.0));
}

TEST_CASE("marginal gain of a modular oracle is its weight") {
    Valuation z = Valuation::modular(GroundSet(4), {1, 5, 3, 2});
    CHECK(marginal_gain(z, ElementSet{}, 1) == 5.0);
    CHECK(marginal_gain(z, ElementSet{0, 2}, 1) == 5.0);
    CHECK(marginal_gain(z, ElementSet{0, 2, 3}, 1) == 5.0);
}

TEST_CASE("marginal gain on the tight partition instance at the empty set") {
    TightPartitionParams params{0.5, 1.5, 1e-6, 6};
    PartitionInstance inst = gen_tight_partition(params);
    CHECK(marginal_gain(inst.user(0), ElementSet{}, 0) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(marginal_gain(inst.combined(), ElementSet{}, pair_id({0, 0}, 6)) ==
          doctest::Approx(1.5).epsilon(1e-12));
    CHECK(marginal_gain(inst.user(1), ElementSet{}, 0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("marginal gain rejects bad arguments") {
    Valuation z = Valuation::modular(GroundSet(2), {1, 2});
    CHECK_THROWS_AS((void)marginal_gain(z, ElementSet{}, 5), InputError);
    CHECK_THROWS_AS((void)marginal_gain(z, ElementSet{1}, 1), InputError);
}

TEST_CASE("eligible extensions per matroid kind") {
    SUBCASE("uniform") {
        Matroid m = Matroid::uniform(GroundSet(3), 2);
        CHECK(eligible_extensions(m, ElementSet{0}) == std::vector<ElementId>{1, 2});
        CHECK(eligible_extensions(m, ElementSet{0, 2}).empty());
    }
    SUBCASE("partition with unit capacities") {
        Matroid m = Matroid::partition(GroundSet(4), {{0, 1}, {2, 3}}, {1, 1});
        CHECK(eligible_extensions(m, ElementSet{1}) == std::vector<ElementId>{2, 3});
    }
    SUBCASE("pair partition consumes a resource") {
        Matroid m = Matroid::pair_partition(2, 2);
        // after (u0, r0): only r1 pairs remain
        CHECK(eligible_extensions(m, ElementSet{pair_id({0, 0}, 2)}) ==
              std::vector<ElementId>{pair_id({0, 1}, 2), pair_id({1, 1}, 2)});
    }
    SUBCASE("dependent input is rejected") {
        Matroid m = Matroid::uniform(GroundSet(3), 1);
        CHECK_THROWS_AS((void)eligible_extensions(m, ElementSet{0, 1}), InputError);
    }
}

TEST_CASE("matroid constructor validation") {
    CHECK_THROWS_AS((void)Matroid::uniform(GroundSet(3), 0), InputError);
    CHECK_THROWS_AS((void)Matroid::uniform(GroundSet(3), 4), InputError);
    CHECK_THROWS_AS((void)Matroid::partition(GroundSet(3), {{0, 1}}, {1}), InputError);
    CHECK_THROWS_AS((void)Matroid::partition(GroundSet(2), {{0, 1}}, {3}), InputError);
    CHECK_THROWS_AS((void)Matroid::partition(GroundSet(2), {{0}, {0, 1}}, {1, 1}), InputError);
    CHECK(Matroid::partition(GroundSet(4), {{0, 2}, {1, 3}}, {1, 2}).rank() == 3);
    CHECK(Matroid::pair_partition(3, 4).rank() == 4);
}

TEST_CASE("explicit families are checked eagerly") {
    GroundSet g(2);
    // {a,b} present but {b} missing
    std::vector<ElementSet> broken{ElementSet{}, ElementSet{0}, ElementSet{0, 1}};
    CHECK_THROWS_AS((void)Matroid::explicit_family(g, broken), InputError);
    // missing empty set
    CHECK_THROWS_AS((void)Matroid::explicit_family(g, {ElementSet{0}}), InputError);
    // augmentation failure: two maximal sets of different size
    std::vector<ElementSet> unbalanced{ElementSet{}, ElementSet{0}, ElementSet{1}, ElementSet{2},
                                       ElementSet{0, 1}};
    CHECK_THROWS_AS((void)Matroid::explicit_family(GroundSet(3), unbalanced), InputError);

    std::vector<ElementSet> ok{ElementSet{}, ElementSet{0}, ElementSet{1}};
    Matroid m = Matroid::explicit_family(g, ok);
    CHECK(m.rank() == 1);
    CHECK(m.independent(ElementSet{1}));
    CHECK_FALSE(m.independent(ElementSet{0, 1}));
}

TEST_CASE("validator examples") {
    SUBCASE("modular oracle over a uniform matroid passes") {
        Valuation z = Valuation::modular(GroundSet(4), {1, 2, 3, 4});
        Matroid m = Matroid::uniform(GroundSet(4), 2);
        CHECK(validate_oracles(z, m).passed());
    }
    SUBCASE("monotonicity violation is witnessed") {
        // Z({a,b}) < Z({a})
        Valuation z = Valuation::tabular(GroundSet(2), {0, 2, 1, 1});
        Matroid m = Matroid::uniform(GroundSet(2), 2);
        ValidationReport report = validate_oracles(z, m);
        CHECK_FALSE(report.passed());
        bool found = false;
        for (const auto& v : report.violations)
            if (v.axiom == Violation::Axiom::Monotone && v.s == ElementSet{0} &&
                v.t == ElementSet{0, 1})
                found = true;
        CHECK(found);
    }
    SUBCASE("hereditary violation is witnessed with the missing subset") {
        std::vector<ElementSet> broken{ElementSet{}, ElementSet{0}, ElementSet{0, 1}};
        Matroid m = Matroid::explicit_family_unchecked(GroundSet(2), broken);
        Valuation z = Valuation::modular(GroundSet(2), {1, 1});
        ValidationReport report = validate_oracles(z, m);
        CHECK_FALSE(report.passed());
        bool found = false;
        for (const auto& v : report.violations)
            if (v.axiom == Violation::Axiom::Hereditary && v.s == ElementSet{1}) found = true;
        CHECK(found);
    }
    SUBCASE("submodularity violation is witnessed") {
        // supermodular: Z({a,b}) = 3 while singletons are worth 1
        Valuation z = Valuation::tabular(GroundSet(2), {0, 1, 1, 3});
        Matroid m = Matroid::uniform(GroundSet(2), 2);
        ValidationReport report = validate_oracles(z, m);
        bool found = false;
        for (const auto& v : report.violations)
            if (v.axiom == Violation::Axiom::Submodular) found = true;
        CHECK(found);
    }
    SUBCASE("sampled mode flags large grounds") {
        Valuation z = Valuation::modular(GroundSet(16), std::vector<double>(16, 1.0));
        Matroid m = Matroid::uniform(GroundSet(16), 4);
        ValidationReport report = validate_oracles(z, m);
        CHECK(report.passed());
        CHECK_FALSE(report.exhaustive);
    }
}

TEST_CASE("eligible extensions are exactly the independent one-element growths") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        const int n = 4 + static_cast<int>(seed % 4);
        GeneralInstance inst = gen_random_tabular(seed, n, testutil::kind_for(seed));
        const Matroid& m = inst.matroid;
        const std::uint64_t full = std::uint64_t{1} << n;
        for (std::uint64_t mask = 0; mask < full; ++mask) {
            const ElementSet s = ElementSet::from_mask(mask);
            if (!m.independent(s)) continue;
            const std::vector<ElementId> eligible = eligible_extensions(m, s);
            for (ElementId e = 0; e < n; ++e) {
                if (s.contains(e)) continue;
                const bool listed =
                    std::find(eligible.begin(), eligible.end(), e) != eligible.end();
                CHECK(listed == m.independent(s.with(e)));
            }
        }
    }
}

TEST_CASE("monotone oracles never produce negative gains") {
    for (std::uint64_t seed = 20; seed < 28; ++seed) {
        GeneralInstance inst = gen_random_tabular(seed, 7, RandomMatroidKind::Uniform);
        const std::uint64_t full = std::uint64_t{1} << 7;
        for (std::uint64_t mask = 0; mask < full; ++mask) {
            const ElementSet s = ElementSet::from_mask(mask);
            for (ElementId q = 0; q < 7; ++q)
                if (!s.contains(q)) CHECK(marginal_gain(inst.valuation, s, q) >= 0.0);
        }
    }
}

TEST_CASE("partition-sum equals the sum of per-user values") {
    PartitionInstance inst = gen_random_partition(5, 2, 4);
    Valuation combined = inst.combined();
    const int n = inst.num_resources();
    for (std::uint64_t mask = 0; mask < (1u << 8); ++mask) {
        ElementSet pairs;
        std::vector<ElementSet> per_user(2);
        for (int id = 0; id < 8; ++id) {
            if (((mask >> id) & 1) == 0) continue;
            pairs.insert(id);
            per_user[static_cast<size_t>(pair_of(id, n).user)].insert(pair_of(id, n).resource);
        }
        double direct = inst.user(0).value(per_user[0]) + inst.user(1).value(per_user[1]);
        CHECK(combined.value(pairs) == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("tabular constructor guards") {
    CHECK_THROWS_AS((void)Valuation::tabular(GroundSet(2), {0, 1, 2}), InputError);
    CHECK_THROWS_AS((void)Valuation::tabular(GroundSet(2), {1, 1, 2, 3}), InputError);
    CHECK_THROWS_AS((void)Valuation::modular(GroundSet(2), {1}), InputError);
}

TEST_SUITE_END();
