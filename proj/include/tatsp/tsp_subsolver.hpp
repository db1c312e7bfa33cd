#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <vector>

#include "tatsp/instance.hpp"
#include "tatsp/rng.hpp"

namespace tatsp {

// Per-arc costs aligned with Instance arc indices. Relations play no part.
struct CostMatrix
{
    std::vector<double> costs;

    double operator[](ArcId a) const { return costs[static_cast<std::size_t>(a)]; }
};

CostMatrix base_costs(const Instance& inst);

// Plain TSP cost of a tour under `cm`; nullopt if an arc is missing.
std::optional<double> static_tour_cost(const Instance& inst, const CostMatrix& cm, const Tour& tour);

inline constexpr int held_karp_max_nodes = 16;

/// Exact minimum-cost Hamiltonian cycle under `cm` by Held-Karp dynamic
/// programming. Ties go to the lowest predecessor id, so the result is
/// deterministic. Throws CapabilityError above held_karp_max_nodes and
/// InfeasibleError when the arc set admits no cycle.
Tour held_karp(const Instance& inst, const CostMatrix& cm);

// Distinct tours, ascending by (cost, node sequence).
struct TourPool
{
    std::vector<Tour> tours;
    std::vector<double> costs;

    bool empty() const noexcept { return tours.empty(); }
    std::size_t size() const noexcept { return tours.size(); }
};

struct PoolLimits
{
    std::size_t pool_size = 10;
    std::chrono::duration<double> time_limit{2.0};
    std::size_t max_starts = 200; // iteration cap; the deterministic budget
};

/// Multi-start randomized nearest neighbour followed by 2-Opt descent under
/// `cm`, stopping at `max_starts` starts or `time_limit`, whichever first.
/// Returns up to `pool_size` best distinct feasible tours; empty when no
/// start reached a Hamiltonian cycle.
TourPool heuristic_pool(const Instance& inst, const CostMatrix& cm, const PoolLimits& limits, Rng& rng);

struct SubsolverConfig
{
    PoolLimits limits;
    int exact_node_limit = 13; // Held-Karp at or below this node count
};

/// Pool used by the MIP-based constructions: the Held-Karp optimum when the
/// instance is small enough, topped up with heuristic_pool tours.
TourPool solve_tsp_pool(const Instance& inst, const CostMatrix& cm, const SubsolverConfig& cfg, Rng& rng);

} // namespace tatsp
