#include <doctest.h>

#include <algorithm>
#include <cstring>
#include <future>

#include "submatroid/analysis.hpp"
#include "submatroid/brute_force.hpp"
#include "submatroid/errors.hpp"
#include "submatroid/greedy.hpp"
#include "submatroid/instances.hpp"
#include "test_util.hpp"

using namespace submatroid;

TEST_SUITE_BEGIN("greedy");

TEST_CASE("rank-1 uniform picks the single best element") {
    Valuation z = Valuation::modular(GroundSet(3), {1, 5, 3});
    Matroid m = Matroid::uniform(GroundSet(3), 1);
    GreedyTrace trace = run_greedy(z, m);
    CHECK(trace.final_set == ElementSet{1});
    CHECK(trace.final_value == 5.0);
    CHECK(trace.steps.size() == 1);
    CHECK(trace.steps[0].eligible_count == 3);
    CHECK(trace.steps[0].runner_up_gain == 3.0);
}

TEST_CASE("tight general instance with eps-preferring ties picks every eps") {
    TightGeneralParams params{0.5, 1.5, 4};
    GeneralInstance inst = gen_tight_general(params);
    GreedyConfig config;
    config.tie_policy = TiePolicy::PreferenceList;
    config.preference = tight_general_eps_preference(params);
    GreedyTrace trace = run_greedy(inst.valuation, inst.matroid, config);
    CHECK(trace.final_set == tight_general_greedy_set(params));
    CHECK(trace.final_value ==
          doctest::Approx(tight_general_greedy_value(params)).epsilon(1e-12));
    // step i gains are d (d(1-c))^{i-1} and step i < K ties eps_i with nu_{i+1}
    double expected_gain = params.d;
    for (int i = 1; i <= params.rank; ++i) {
        const StepRecord& step = trace.steps[static_cast<size_t>(i - 1)];
        CHECK(step.chosen == tight_general_eps(params, i));
        CHECK(step.gain == doctest::Approx(expected_gain).epsilon(1e-12));
        CHECK(step.eligible_count == 2 * (params.rank - i + 1));
        if (i < params.rank)
            CHECK(step.tie_set ==
                  std::vector<ElementId>{tight_general_nu(params, i + 1),
                                         tight_general_eps(params, i)});
        else
            CHECK(step.tie_set == std::vector<ElementId>{tight_general_eps(params, i)});
        expected_gain *= params.d * (1.0 - params.c);
    }

    // highest-index ties behave the same on this layout
    GreedyConfig highest;
    highest.tie_policy = TiePolicy::HighestIndex;
    CHECK(run_greedy(inst.valuation, inst.matroid, highest).final_set ==
          tight_general_greedy_set(params));
    // lowest-index ties walk to the optimum instead
    GreedyTrace lowest = run_greedy(inst.valuation, inst.matroid);
    CHECK(lowest.final_set == tight_general_optimal_set(params));
}

TEST_CASE("modular valuations make greedy exactly optimal") {
    for (std::uint64_t seed = 100; seed < 112; ++seed) {
        const int n = 5 + static_cast<int>(seed % 3);
        std::vector<double> weights;
        for (int e = 0; e < n; ++e)
            weights.push_back(static_cast<double>((seed * 31 + static_cast<std::uint64_t>(e) * 7) % 13));
        Valuation z = Valuation::modular(GroundSet(n), weights);
        GeneralInstance shape = gen_random_tabular(seed, n, testutil::kind_for(seed));
        GreedyTrace trace = run_greedy(z, shape.matroid);
        OptimumCertificate opt = brute_force_optimum(z, shape.matroid);
        CHECK(trace.final_value == doctest::Approx(opt.optimum_value).epsilon(1e-12));
    }
}

TEST_CASE("greedy reports a rank inconsistency on a broken family") {
    std::vector<ElementSet> broken{ElementSet{}, ElementSet{0}, ElementSet{1, 2}};
    Matroid m = Matroid::explicit_family_unchecked(GroundSet(3), broken);
    Valuation z = Valuation::modular(GroundSet(3), {3, 1, 1});
    CHECK_THROWS_AS((void)run_greedy(z, m), InputError);
}

TEST_CASE("single-user partition run allocates everything to that user") {
    PartitionInstance inst = gen_random_partition(3, 1, 5);
    GreedyTrace trace = run_greedy_m(inst);
    CHECK(trace.steps.size() == 5);
    ElementSet all;
    for (int r = 0; r < 5; ++r) all.insert(r);
    CHECK(trace.final_value == doctest::Approx(inst.user(0).value(all)).epsilon(1e-12));
}

TEST_CASE("tight partition run allocates in the documented order") {
    TightPartitionParams params{0.5, 1.5, 1e-6, 7};
    PartitionInstance inst = gen_tight_partition(params);
    GreedyTrace trace = run_greedy_m(inst);
    CHECK(trace.final_set == tight_partition_greedy_allocation(params));
    for (int i = 1; i <= params.resources; ++i) {
        const PairElement chosen = pair_of(trace.steps[static_cast<size_t>(i - 1)].chosen,
                                           params.resources);
        CHECK(chosen.resource == i - 1);
        CHECK(chosen.user == ((i % 2 == 1) ? 0 : 1));
    }
    CHECK(trace.final_value ==
          doctest::Approx(tight_partition_greedy_value(params)).epsilon(1e-9));
}

TEST_CASE("an overwhelmingly better user receives every resource") {
    const int n = 5;
    std::vector<double> big, tiny;
    for (int r = 0; r < n; ++r) {
        big.push_back(100.0 * (r + 1));
        tiny.push_back(0.25);
    }
    PartitionInstance inst(
        {Valuation::modular(GroundSet(n), big), Valuation::modular(GroundSet(n), tiny)});
    GreedyTrace trace = run_greedy_m(inst);
    for (const auto& step : trace.steps)
        CHECK(pair_of(step.chosen, n).user == 0);
    OptimumCertificate opt = brute_force_optimum_assignments(inst);
    CHECK(trace.final_value == doctest::Approx(opt.optimum_value).epsilon(1e-12));
}

TEST_CASE("empty partition instances are rejected") {
    CHECK_THROWS_AS((void)PartitionInstance(std::vector<Valuation>{}), InputError);
}

TEST_CASE("online with one resource matches the offline choice") {
    PartitionInstance inst = gen_random_partition(9, 3, 1);
    const std::vector<int> arrival{0};
    GreedyTrace online = run_greedy_on(inst, arrival);
    OptimumCertificate opt = brute_force_optimum_assignments(inst);
    CHECK(online.final_value == doctest::Approx(opt.optimum_value).epsilon(1e-12));
}

TEST_CASE("identity arrival reproduces the offline run on the tight instance") {
    TightPartitionParams params{0.5, 1.5, 1e-6, 6};
    PartitionInstance inst = gen_tight_partition(params);
    std::vector<int> identity{0, 1, 2, 3, 4, 5};
    GreedyTrace online = run_greedy_on(inst, identity);
    GreedyTrace offline = run_greedy_m(inst);
    CHECK(online.final_set == offline.final_set);
    CHECK(online.order() == offline.order());
}

TEST_CASE("modular users make the online run arrival-independent and optimal") {
    PartitionInstance inst({Valuation::modular(GroundSet(4), {4, 1, 3, 2}),
                            Valuation::modular(GroundSet(4), {2, 5, 1, 6})});
    OptimumCertificate opt = brute_force_optimum_assignments(inst);
    std::vector<int> sigma{0, 1, 2, 3};
    do {
        GreedyTrace trace = run_greedy_on(inst, sigma);
        CHECK(trace.final_value == doctest::Approx(opt.optimum_value).epsilon(1e-12));
    } while (std::next_permutation(sigma.begin(), sigma.end()));
}

TEST_CASE("arrival order must be a permutation") {
    PartitionInstance inst = gen_random_partition(11, 2, 3);
    CHECK_THROWS_AS((void)run_greedy_on(inst, std::vector<int>{0, 1}), InputError);
    CHECK_THROWS_AS((void)run_greedy_on(inst, std::vector<int>{0, 1, 1}), InputError);
    CHECK_THROWS_AS((void)run_greedy_on(inst, std::vector<int>{0, 1, 3}), InputError);
}

TEST_CASE("greedy value stays above half the optimum") {
    for (std::uint64_t seed = 200; seed < 260; ++seed) {
        const int n = 4 + static_cast<int>(seed % 7);
        GeneralInstance inst = gen_random_tabular(seed, n, testutil::kind_for(seed));
        GreedyTrace trace = run_greedy(inst.valuation, inst.matroid);
        OptimumCertificate opt = brute_force_optimum(inst.valuation, inst.matroid);
        const double ratio =
            opt.optimum_value == 0.0 ? 1.0 : trace.final_value / opt.optimum_value;
        CHECK(ratio >= 0.5 - 1e-9);
    }
}

TEST_CASE("trace structure invariants hold on random instances") {
    for (std::uint64_t seed = 300; seed < 330; ++seed) {
        const int n = 4 + static_cast<int>(seed % 6);
        GeneralInstance inst = gen_random_tabular(seed, n, testutil::kind_for(seed));
        GreedyTrace trace = run_greedy(inst.valuation, inst.matroid);
        const int rank = inst.matroid.rank();
        CHECK(static_cast<int>(trace.steps.size()) == rank);
        CHECK(trace.final_set.size() == rank);
        CHECK(eligible_extensions(inst.matroid, trace.final_set).empty()); // basis

        ElementSet prefix;
        double total = 0.0;
        for (const auto& step : trace.steps) {
            const std::vector<ElementId> eligible = eligible_extensions(inst.matroid, prefix);
            CHECK(std::find(eligible.begin(), eligible.end(), step.chosen) != eligible.end());
            CHECK(step.eligible_count == static_cast<int>(eligible.size()));
            CHECK(step.eligible_count >= rank - step.iteration + 1);
            if (step.runner_up_gain) CHECK(step.gain >= *step.runner_up_gain - 1e-9);
            CHECK(!step.tie_set.empty());
            prefix.insert(step.chosen);
            total += step.gain;
        }
        CHECK(total == doctest::Approx(trace.final_value).epsilon(1e-9));
    }
}

TEST_CASE("replay is bit identical") {
    GeneralInstance inst = gen_random_tabular(424242, 8, RandomMatroidKind::Partition);
    GreedyTrace a = run_greedy(inst.valuation, inst.matroid);
    GreedyTrace b = run_greedy(inst.valuation, inst.matroid);
    REQUIRE(a.steps.size() == b.steps.size());
    CHECK(std::memcmp(&a.final_value, &b.final_value, sizeof(double)) == 0);
    for (size_t i = 0; i < a.steps.size(); ++i) {
        CHECK(a.steps[i].chosen == b.steps[i].chosen);
        CHECK(std::memcmp(&a.steps[i].gain, &b.steps[i].gain, sizeof(double)) == 0);
        CHECK(a.steps[i].tie_set == b.steps[i].tie_set);
    }

    PartitionInstance pinst = gen_random_partition(777, 3, 5);
    GreedyTrace pa = run_greedy_m(pinst);
    GreedyTrace pb = run_greedy_m(pinst);
    CHECK(pa.order() == pb.order());
    CHECK(std::memcmp(&pa.final_value, &pb.final_value, sizeof(double)) == 0);
}

TEST_CASE("immutable instances support concurrent runs") {
    GeneralInstance inst = gen_random_tabular(512, 8, RandomMatroidKind::Partition);
    GreedyTrace reference = run_greedy(inst.valuation, inst.matroid);
    std::vector<std::future<GreedyTrace>> futures;
    for (int i = 0; i < 8; ++i)
        futures.push_back(std::async(std::launch::async, [&] {
            return run_greedy(inst.valuation, inst.matroid);
        }));
    for (auto& f : futures) {
        GreedyTrace trace = f.get();
        CHECK(trace.final_set == reference.final_set);
        CHECK(trace.final_value == reference.final_value);
    }
}

TEST_CASE("plain greedy on the pair matroid matches greedy-m when no ties occur") {
    int compared = 0;
    for (std::uint64_t seed = 400; seed < 460; ++seed) {
        PartitionInstance inst =
            gen_random_partition(seed, 2 + static_cast<int>(seed % 2), 3 + static_cast<int>(seed % 3));
        GreedyTrace via_m = run_greedy_m(inst);
        GreedyTrace via_general = run_greedy(inst.combined(), inst.pair_matroid());
        bool any_tie = false;
        for (const auto& step : via_m.steps) any_tie = any_tie || step.tie_set.size() > 1;
        for (const auto& step : via_general.steps) any_tie = any_tie || step.tie_set.size() > 1;
        if (any_tie) continue;
        ++compared;
        CHECK(via_m.order() == via_general.order());
    }
    CHECK(compared > 5); // the sweep must actually exercise tie-free instances
}

TEST_SUITE_END();
