#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "tatsp/construction.hpp"
#include "tatsp/instance.hpp"
#include "tatsp/local_search.hpp"

#include <json.hpp>

namespace tatsp {

struct GraspConfig
{
    ConstructionConfig construction = ConstructionConfig::defaults_for(Heuristic::MipBiased);
    std::vector<MoveKind> neighborhoods = all_neighborhoods;
    std::chrono::duration<double> time_limit{60.0};
    std::optional<std::size_t> max_iterations;
    std::uint64_t seed = 0;
    int parallel_workers = 1;

    // Throws std::invalid_argument.
    void validate() const;
};

struct IterationRecord
{
    std::size_t iteration;
    double construction_cost;
    double post_descent_cost;
    double elapsed_seconds; // since the run started, at the end of this iteration
};

struct GraspResult
{
    std::optional<Tour> best_tour;
    double best_cost = 0.0;
    std::size_t iterations = 0; // attempted, failures included
    std::size_t construction_failures = 0;
    std::vector<IterationRecord> history; // successful iterations, ascending index

    bool found() const noexcept { return best_tour.has_value(); }
};

/// Repeated construction + descent until the wall-clock or iteration budget
/// runs out. Iteration k draws from Rng(mix_seed(seed, k)), so results do not
/// depend on the worker count; the incumbent is the lowest cost, earliest
/// iteration. An iteration that has started always finishes. A run where
/// every construction failed returns found() == false.
GraspResult run_grasp(const Instance& inst, const GraspConfig& cfg);

nlohmann::json to_json(const GraspConfig& cfg);
nlohmann::json to_json(const GraspResult& result);

} // namespace tatsp
