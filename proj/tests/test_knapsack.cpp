#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "qhw/knapsack.hpp"

using namespace qhw;

namespace {

KnapsackInstance small() { return KnapsackInstance{"small", {2, 3, 4}, {3, 4, 5}, 5}; }

Bitstring random_bits(std::size_t n, Rng& rng) {
    Bitstring x(n);
    for (auto& b : x) {
        b = rng.chance(0.5);
    }
    return x;
}

} // namespace

TEST_CASE("generate_instance is deterministic and follows the profile") {
    const auto a = generate_instance(200, InstanceProfile::strongly_correlated, 1);
    const auto b = generate_instance(200, InstanceProfile::strongly_correlated, 1);
    CHECK(a == b);
    CHECK(a != generate_instance(200, InstanceProfile::strongly_correlated, 2));
    CHECK(a.size() == 200);
    CHECK(a.id == "sc-200-s1");
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.profits[i] - a.weights[i] == 5);
        CHECK(a.weights[i] >= 1);
        CHECK(a.weights[i] <= 10);
    }
    CHECK(a.capacity == (a.total_weight() + 1) / 2);
    CHECK(a.capacity <= a.total_weight());

    const auto u = generate_instance(300, InstanceProfile::uncorrelated, 4);
    std::set<std::int64_t> profits(u.profits.begin(), u.profits.end());
    CHECK(*profits.begin() == 1);
    CHECK(*profits.rbegin() == 10);
    CHECK(generate_instance(500).size() == 500);
    CHECK_THROWS_AS(generate_instance(0), std::invalid_argument);
}

TEST_CASE("profile names") {
    CHECK(parse_profile("uncorrelated") == InstanceProfile::uncorrelated);
    CHECK(profile_name(parse_profile("strongly_correlated")) == "strongly_correlated");
    CHECK_THROWS_AS(parse_profile("weakly"), std::invalid_argument);
}

TEST_CASE("evaluate sums profits of feasible selections") {
    const auto inst = small();
    CHECK(evaluate(inst, {0, 0, 0}) == 0);
    CHECK(evaluate(inst, {1, 1, 0}) == 7);
    CHECK(evaluate(inst, {0, 0, 1}) == 5);
    CHECK_THROWS_AS(evaluate(inst, {1, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(evaluate(inst, {1, 1}), std::invalid_argument);
}

TEST_CASE("repair of the small instance") {
    const auto inst = small();
    std::set<Fitness> outcomes;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Rng rng(seed);
        const Bitstring x = repair(inst, {1, 1, 1}, rng);
        REQUIRE(is_feasible(inst, x));
        outcomes.insert(evaluate(inst, x));
    }
    CHECK(outcomes == std::set<Fitness>{5, 7});

    Rng rng(1);
    CHECK(repair(inst, {1, 1, 0}, rng) == Bitstring{1, 1, 0});
}

TEST_CASE("repair is feasible and profit-monotone") {
    Rng rng(31);
    for (int trial = 0; trial < 300; ++trial) {
        const auto inst = generate_instance(1 + rng.below(40),
                                            trial % 2 ? InstanceProfile::uncorrelated
                                                      : InstanceProfile::strongly_correlated,
                                            rng());
        const Bitstring x = random_bits(inst.size(), rng);
        const Bitstring r = repair(inst, x, rng);
        REQUIRE(is_feasible(inst, r));
        if (is_feasible(inst, x)) {
            CHECK(evaluate(inst, r) >= evaluate(inst, x));
            // Only additions happen on feasible input.
            for (std::size_t i = 0; i < x.size(); ++i) {
                CHECK(r[i] >= x[i]);
            }
        }
        CHECK(is_feasible(inst, repair(inst, Bitstring(inst.size(), 1), rng)));
    }
}

TEST_CASE("brute force optimum") {
    CHECK(brute_force_optimum(small()) == 7);
    CHECK(brute_force_optimum(KnapsackInstance{"all", {1, 2, 3}, {4, 5, 6}, 10}) == 15);
    CHECK(brute_force_optimum(KnapsackInstance{"heavy", {9}, {4}, 5}) == 0);
    CHECK_THROWS_AS(brute_force_optimum(generate_instance(25)), std::invalid_argument);

    Rng rng(8);
    for (int trial = 0; trial < 40; ++trial) {
        const auto inst = generate_instance(1 + rng.below(16),
                                            trial % 2 ? InstanceProfile::uncorrelated
                                                      : InstanceProfile::strongly_correlated,
                                            rng());
        CHECK(brute_force_optimum(inst) ==
              oracle::knapsack_optimum(inst.weights, inst.profits, inst.capacity));
    }
}

TEST_CASE("repaired solutions never beat the optimum") {
    Rng rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const auto inst = generate_instance(4 + rng.below(20), InstanceProfile::strongly_correlated,
                                            rng());
        const Fitness opt = brute_force_optimum(inst);
        for (int k = 0; k < 50; ++k) {
            CHECK(evaluate(inst, repair(inst, random_bits(inst.size(), rng), rng)) <= opt);
        }
    }
}

TEST_CASE("instance JSON is byte-stable") {
    const auto inst = small();
    const std::string text = instance_to_json(inst);
    CHECK(text == "{\"capacity\":5,\"id\":\"small\",\"profits\":[3,4,5],\"weights\":[2,3,4]}\n");
    CHECK(instance_from_json(text) == inst);
    CHECK(instance_to_json(instance_from_json(text)) == text);

    CHECK_THROWS_AS(instance_from_json("{\"id\":\"x\"}"), std::runtime_error);
    CHECK_THROWS_AS(
        instance_from_json("{\"capacity\":5,\"id\":\"x\",\"profits\":[3],\"weights\":[2,3]}"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        instance_from_json("{\"capacity\":5,\"id\":\"x\",\"profits\":[0],\"weights\":[2]}"),
        std::invalid_argument);
}
