#include <doctest.h>

#include "fixtures.hpp"
#include "tatsp/evaluation.hpp"
#include "tatsp/grasp.hpp"

using namespace tatsp;

namespace {

GraspConfig capped(std::size_t iterations, std::uint64_t seed = 1)
{
    GraspConfig cfg;
    cfg.max_iterations = iterations;
    cfg.time_limit = std::chrono::duration<double>(1e6);
    cfg.seed = seed;
    cfg.construction.subsolver.limits.time_limit = std::chrono::duration<double>(1e6);
    cfg.construction.subsolver.limits.max_starts = 20;
    return cfg;
}

Instance medium(std::uint64_t seed)
{
    Rng rng(seed);
    fixtures::RandomSpec spec;
    spec.n = 12;
    spec.relations = 96;
    return fixtures::random_instance(rng, spec);
}

} // namespace

TEST_CASE("FIX-B")
{
    const auto res = run_grasp(fixtures::fix_b(), capped(5));
    REQUIRE(res.found());
    CHECK(res.best_cost == 4.0);
    CHECK(res.iterations == 5);
}

TEST_CASE("one iteration equals construction plus descent")
{
    const Instance inst = medium(3);
    const GraspConfig cfg = capped(1, 77);
    const auto res = run_grasp(inst, cfg);
    REQUIRE(res.found());

    Rng rng(mix_seed(77, 0));
    const auto built = construct(inst, cfg.construction, rng);
    REQUIRE(built.success());
    const auto local = descent(inst, *built.tour, cfg.neighborhoods);
    CHECK(*res.best_tour == local.tour);
    CHECK(res.best_cost == local.cost);
    REQUIRE(res.history.size() == 1);
    CHECK(res.history[0].construction_cost == built.cost);
}

TEST_CASE("determinism and worker independence")
{
    const Instance inst = medium(5);
    const auto a = run_grasp(inst, capped(8, 9));
    const auto b = run_grasp(inst, capped(8, 9));
    GraspConfig par = capped(8, 9);
    par.parallel_workers = 3;
    const auto c = run_grasp(inst, par);
    REQUIRE(a.found());
    CHECK(*a.best_tour == *b.best_tour);
    CHECK(*a.best_tour == *c.best_tour);
    CHECK(a.best_cost == c.best_cost);
    REQUIRE(a.history.size() == c.history.size());
    for (std::size_t k = 0; k < a.history.size(); ++k)
    {
        CHECK(a.history[k].iteration == c.history[k].iteration);
        CHECK(a.history[k].post_descent_cost == c.history[k].post_descent_cost);
    }
}

TEST_CASE("run invariants")
{
    for (Heuristic h : {Heuristic::SimpleRandomized, Heuristic::RandomizedGreedy, Heuristic::MipAdditive})
    {
        const Instance inst = medium(11);
        GraspConfig cfg = capped(6, 4);
        const auto sub = cfg.construction.subsolver;
        cfg.construction = ConstructionConfig::defaults_for(h);
        cfg.construction.subsolver = sub;
        const auto res = run_grasp(inst, cfg);
        REQUIRE(res.found());
        CHECK(res.iterations == 6);
        CHECK(res.history.size() + res.construction_failures == res.iterations);
        CHECK(evaluate_tour(inst, *res.best_tour).total_cost == res.best_cost);
        double best = res.history.front().post_descent_cost;
        for (std::size_t k = 0; k < res.history.size(); ++k)
        {
            CHECK(res.history[k].post_descent_cost <= res.history[k].construction_cost);
            best = std::min(best, res.history[k].post_descent_cost);
            if (k > 0)
            {
                CHECK(res.history[k].iteration > res.history[k - 1].iteration);
            }
        }
        CHECK(best == res.best_cost);
    }
}

TEST_CASE("time limit stops the loop")
{
    GraspConfig cfg;
    cfg.time_limit = std::chrono::duration<double>(0.2);
    cfg.construction.subsolver.limits.max_starts = 5;
    const auto started = std::chrono::steady_clock::now();
    const auto res = run_grasp(medium(1), cfg);
    const double took = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    CHECK(res.found());
    CHECK(res.iterations >= 1);
    CHECK(took < 5.0);
}

TEST_CASE("no solution when every construction fails")
{
    const Instance sparse(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {3, 1, 1.0}, {2, 0, 1.0}}, {});
    GraspConfig cfg = capped(4);
    cfg.construction = ConstructionConfig::defaults_for(Heuristic::SimpleRandomized);
    const auto res = run_grasp(sparse, cfg);
    CHECK_FALSE(res.found());
    CHECK(res.construction_failures == 4);
    CHECK(res.history.empty());
    CHECK(to_json(res)["best_cost"].is_null());
}

TEST_CASE("validation")
{
    GraspConfig cfg;
    cfg.time_limit = std::chrono::duration<double>(0.0);
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = GraspConfig{};
    cfg.neighborhoods.clear();
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = GraspConfig{};
    cfg.parallel_workers = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = GraspConfig{};
    cfg.construction = ConstructionConfig::defaults_for(Heuristic::RandomizedGreedy);
    cfg.construction.alpha = 1.5;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    CHECK_NOTHROW(GraspConfig{}.validate());
}

TEST_CASE("json")
{
    const auto res = run_grasp(fixtures::fix_b(), capped(2));
    const auto j = to_json(res);
    CHECK(j["found"] == true);
    CHECK(j["best_cost"] == 4.0);
    CHECK(j["iterations"] == 2);
    CHECK(j["best_tour"].size() == 4);
    const auto c = to_json(capped(2));
    CHECK(c["construction"] == "mip-bias");
    CHECK(c["max_iterations"] == 2);
    CHECK(c["neighborhoods"].size() == 3);
}
