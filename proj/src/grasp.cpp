#include "tatsp/grasp.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "tatsp/rng.hpp"

namespace tatsp {

void GraspConfig::validate() const
{
    if (!(time_limit.count() > 0.0))
        throw std::invalid_argument("time limit must be positive");
    if (neighborhoods.empty())
        throw std::invalid_argument("at least one neighborhood is required");
    if (parallel_workers < 1)
        throw std::invalid_argument("parallel_workers must be at least 1");
    if (construction.heuristic == Heuristic::RandomizedGreedy &&
        !(construction.alpha >= 0.0 && construction.alpha <= 1.0))
        throw std::invalid_argument("RCL alpha must lie in [0, 1]");
}

namespace {

struct Outcome
{
    std::size_t iteration;
    bool success;
    double construction_cost;
    DescentResult descent;
    double elapsed_seconds;
};

} // namespace

GraspResult run_grasp(const Instance& inst, const GraspConfig& cfg)
{
    cfg.validate();

    using clock = std::chrono::steady_clock;
    const auto started = clock::now();
    const auto deadline = started + std::chrono::duration_cast<clock::duration>(cfg.time_limit);

    std::atomic<std::size_t> next_iteration{0};
    std::mutex merge;
    std::vector<Outcome> outcomes;

    const auto worker = [&] {
        for (;;)
        {
            if (clock::now() >= deadline)
                return;
            const std::size_t k = next_iteration.fetch_add(1);
            if (cfg.max_iterations && k >= *cfg.max_iterations)
                return;

            Rng rng(mix_seed(cfg.seed, k));
            Outcome out{k, false, 0.0, {}, 0.0};
            const ConstructionResult built = construct(inst, cfg.construction, rng);
            if (built)
            {
                out.success = true;
                out.construction_cost = built.cost;
                out.descent = descent(inst, *built.tour, cfg.neighborhoods);
            }
            out.elapsed_seconds = std::chrono::duration<double>(clock::now() - started).count();

            const std::lock_guard lock(merge);
            outcomes.push_back(std::move(out));
        }
    };

    if (cfg.parallel_workers == 1)
        worker();
    else
    {
        std::vector<std::jthread> pool;
        for (int w = 0; w < cfg.parallel_workers; ++w)
            pool.emplace_back(worker);
    }

    std::sort(outcomes.begin(), outcomes.end(),
              [](const Outcome& a, const Outcome& b) { return a.iteration < b.iteration; });

    GraspResult res;
    res.iterations = outcomes.size();
    for (Outcome& o : outcomes)
    {
        if (!o.success)
        {
            ++res.construction_failures;
            continue;
        }
        res.history.push_back({o.iteration, o.construction_cost, o.descent.cost, o.elapsed_seconds});
        if (!res.best_tour || o.descent.cost < res.best_cost)
        {
            res.best_cost = o.descent.cost;
            res.best_tour = std::move(o.descent.tour);
        }
    }
    return res;
}

nlohmann::json to_json(const GraspConfig& cfg)
{
    nlohmann::json neighborhoods = nlohmann::json::array();
    for (MoveKind k : cfg.neighborhoods)
        neighborhoods.push_back(std::string(to_string(k)));
    nlohmann::json j = {
        {"construction", std::string(to_string(cfg.construction.heuristic))},
        {"alpha", cfg.construction.alpha},
        {"beta", cfg.construction.beta},
        {"subsolver_time_limit_s", cfg.construction.subsolver.limits.time_limit.count()},
        {"pool_size", cfg.construction.subsolver.limits.pool_size},
        {"subsolver_max_starts", cfg.construction.subsolver.limits.max_starts},
        {"neighborhoods", neighborhoods},
        {"time_limit_s", cfg.time_limit.count()},
        {"seed", cfg.seed},
        {"workers", cfg.parallel_workers},
    };
    j["max_iterations"] = cfg.max_iterations ? nlohmann::json(*cfg.max_iterations) : nlohmann::json(nullptr);
    return j;
}

nlohmann::json to_json(const GraspResult& result)
{
    nlohmann::json history = nlohmann::json::array();
    for (const IterationRecord& r : result.history)
        history.push_back({{"iteration", r.iteration},
                           {"construction_cost", r.construction_cost},
                           {"post_descent_cost", r.post_descent_cost},
                           {"elapsed_s", r.elapsed_seconds}});
    nlohmann::json j = {
        {"found", result.found()},
        {"iterations", result.iterations},
        {"construction_failures", result.construction_failures},
        {"history", history},
    };
    if (result.found())
    {
        j["best_cost"] = result.best_cost;
        j["best_tour"] = result.best_tour->nodes;
    }
    else
        j["best_cost"] = nullptr;
    return j;
}

} // namespace tatsp
