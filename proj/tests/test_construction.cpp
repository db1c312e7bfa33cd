#include <doctest.h>

#include "fixtures.hpp"
#include "tatsp/construction.hpp"
#include "tatsp/evaluation.hpp"

using namespace tatsp;

namespace {

SubsolverConfig fast_subsolver()
{
    SubsolverConfig cfg;
    cfg.limits.time_limit = std::chrono::duration<double>(1e6);
    cfg.limits.max_starts = 20;
    return cfg;
}

// Directed path 0->1->...->n-1->0 plus a few shortcuts that lead into dead ends.
Instance trap_instance(int n)
{
    std::vector<Arc> arcs;
    for (NodeId i = 0; i < n; ++i)
        arcs.push_back({i, static_cast<NodeId>((i + 1) % n), 1.0});
    for (NodeId i = 0; i + 2 < n; ++i)
        arcs.push_back({i, static_cast<NodeId>(i + 2), 1.0});
    return Instance(n, arcs, {});
}

} // namespace

TEST_CASE("simple randomized construction")
{
    Rng rng(1);
    const Instance a = fixtures::fix_a();
    for (int k = 0; k < 20; ++k)
    {
        const auto res = simple_randomized(a, rng);
        REQUIRE(res.success());
        CHECK(res.cost == 3.0);
    }

    const Instance sparse(3, {{0, 1, 1.0}, {1, 2, 1.0}}, {});
    CHECK_FALSE(simple_randomized(sparse, rng).success());

    const Instance trap = trap_instance(6);
    int ok = 0;
    for (int k = 0; k < 200; ++k)
    {
        const auto res = simple_randomized(trap, rng);
        if (res)
        {
            ++ok;
            CHECK(is_feasible(trap, *res.tour));
            CHECK(res.cost == evaluate_tour(trap, *res.tour).total_cost);
        }
    }
    CHECK(ok > 0);
    CHECK(ok < 200);
}

TEST_CASE("rcl size")
{
    CHECK(rcl_size(0.0, 10) == 1);
    CHECK(rcl_size(0.1, 10) == 1);
    CHECK(rcl_size(0.1, 11) == 2);
    CHECK(rcl_size(0.5, 3) == 2);
    CHECK(rcl_size(1.0, 7) == 7);
    CHECK(rcl_size(0.3, 10) == 3);
}

TEST_CASE("pure greedy follows the trigger on FIX-B")
{
    Rng rng(4);
    const auto res = randomized_greedy(fixtures::fix_b(), RclParams{0.0}, rng);
    REQUIRE(res.success());
    CHECK(*res.tour == Tour{{0, 1, 2, 3}});
    CHECK(res.cost == 4.0);
}

TEST_CASE("greedy costs match the evaluator")
{
    Rng gen(17);
    for (int k = 0; k < 40; ++k)
    {
        fixtures::RandomSpec spec;
        spec.n = 5 + static_cast<int>(gen.below(8));
        spec.relations = 6 * spec.n;
        const Instance inst = fixtures::random_instance(gen, spec);
        Rng rng(static_cast<std::uint64_t>(k));
        const auto res = randomized_greedy(inst, RclParams{0.3}, rng);
        REQUIRE(res.success());
        CHECK(std::abs(res.cost - evaluate_tour(inst, *res.tour).total_cost) <= 1e-9);
    }
}

TEST_CASE("additive and multiplicative perturbations")
{
    Rng gen(23);
    fixtures::RandomSpec spec;
    spec.n = 7;
    const Instance inst = fixtures::random_instance(gen, spec);

    Rng rng(55);
    Rng clone = rng;
    const CostMatrix add = perturb_additive(inst, 0.5, rng);
    for (std::size_t a = 0; a < inst.arc_count(); ++a)
    {
        const double expect = inst.arcs()[a].cost + 0.5 * clone.uniform(-1.0, 1.0);
        CHECK(add.costs[a] == expect);
        CHECK(std::abs(add.costs[a] - inst.arcs()[a].cost) <= 0.5);
    }

    clone = rng;
    const CostMatrix mul = perturb_multiplicative(inst, 1.5, rng);
    for (std::size_t a = 0; a < inst.arc_count(); ++a)
    {
        CHECK(mul.costs[a] == inst.arcs()[a].cost * (1.5 * clone.uniform01()));
        CHECK(mul.costs[a] >= 0.0);
        CHECK(mul.costs[a] <= 1.5 * inst.arcs()[a].cost);
    }

    CHECK_THROWS_AS(perturb_additive(inst, -1.0, rng), std::invalid_argument);
    CHECK_THROWS_AS(perturb_multiplicative(inst, 0.0, rng), std::invalid_argument);
}

TEST_CASE("biased perturbation")
{
    const std::vector<int> pos{0, 1, 2, 3, 4};
    CHECK(cyclic_distance(pos, 0, 4) == 1);
    CHECK(cyclic_distance(pos, 1, 3) == 2);
    CHECK(cyclic_distance(pos, 2, 2) == 0);

    const Instance b = fixtures::fix_b();
    const std::vector<NodeId> identity{0, 1, 2, 3};
    const CostMatrix cm = perturb_biased_with_prior(b, 0.1, 3.0, identity);
    CHECK(cm[*b.find_arc(0, 1)] == doctest::Approx(1.1));
    CHECK(cm[*b.find_arc(2, 3)] == doctest::Approx(5.1));
    CHECK(cm[*b.find_arc(1, 2)] == 1.0);

    // Trigger (0,1), target (3,2): d(1,3) = 2 so the weight shrinks by 2^beta.
    auto arcs = fixtures::complete_arcs(4, 1.0);
    const Instance far(4, arcs, {{fixtures::arc_of(arcs, 0, 1), fixtures::arc_of(arcs, 3, 2), 8.0}});
    const CostMatrix fm = perturb_biased_with_prior(far, 1.0, 3.0, identity);
    CHECK(fm[*far.find_arc(0, 1)] == doctest::Approx(1.0 + 8.0 / 8.0));
    CHECK(fm[*far.find_arc(3, 2)] == doctest::Approx(1.0 + 8.0 / 8.0));

    // A prior that spreads the arcs apart lowers every weight.
    const std::vector<NodeId> spread{0, 2, 1, 3};
    const CostMatrix sm = perturb_biased_with_prior(b, 0.1, 3.0, spread);
    CHECK(sm[*b.find_arc(0, 1)] < 1.1);
    CHECK(sm[*b.find_arc(0, 1)] > 1.0);

    CHECK_THROWS_AS(perturb_biased_with_prior(b, 0.1, 3.0, std::vector<NodeId>{0, 1}), std::invalid_argument);
}

TEST_CASE("mip construction")
{
    const Instance b = fixtures::fix_b();
    Rng rng(2);
    const auto res = mip_construction(b, base_costs(b), fast_subsolver(), rng);
    REQUIRE(res.success());
    CHECK(res.cost == 4.0);

    Rng gen(31);
    for (int k = 0; k < 15; ++k)
    {
        fixtures::RandomSpec spec;
        spec.n = 5 + static_cast<int>(gen.below(10));
        spec.relations = 4 * spec.n;
        const Instance inst = fixtures::random_instance(gen, spec);
        const std::string before = fixtures::to_text(inst);
        for (Heuristic h : {Heuristic::MipAdditive, Heuristic::MipMultiplicative, Heuristic::MipBiased,
                            Heuristic::RandomizedGreedy, Heuristic::SimpleRandomized})
        {
            ConstructionConfig cfg = ConstructionConfig::defaults_for(h);
            cfg.subsolver = fast_subsolver();
            Rng r(static_cast<std::uint64_t>(k));
            const auto out = construct(inst, cfg, r);
            if (out)
                CHECK(out.cost == evaluate_tour(inst, *out.tour).total_cost);
            else
                CHECK(h == Heuristic::SimpleRandomized);
        }
        CHECK(fixtures::to_text(inst) == before);
    }
}

TEST_CASE("heuristic names")
{
    for (Heuristic h : {Heuristic::SimpleRandomized, Heuristic::RandomizedGreedy, Heuristic::MipAdditive,
                        Heuristic::MipMultiplicative, Heuristic::MipBiased})
        CHECK(parse_heuristic(to_string(h)) == h);
    CHECK(to_string(Heuristic::MipBiased) == "mip-bias");
    CHECK_THROWS_AS(parse_heuristic("nope"), std::invalid_argument);
    CHECK(ConstructionConfig::defaults_for(Heuristic::MipMultiplicative).beta == 1.5);
    CHECK(ConstructionConfig::defaults_for(Heuristic::RandomizedGreedy).alpha == 0.1);
}
