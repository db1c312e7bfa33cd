#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "tatsp/instance.hpp"
#include "tatsp/rng.hpp"
#include "tatsp/tsp_subsolver.hpp"

namespace tatsp {

// A construction either yields a feasible tour with its true TA-TSP cost, or
// reports a dead end. Failure is a value so callers can count success rates.
struct ConstructionResult
{
    std::optional<Tour> tour;
    double cost = 0.0;

    bool success() const noexcept { return tour.has_value(); }
    explicit operator bool() const noexcept { return success(); }
};

ConstructionResult simple_randomized(const Instance& inst, Rng& rng);

struct RclParams
{
    double alpha = 0.1; // share of feasible successors kept, in [0, 1]
};

// max(1, ceil(alpha * feasible))
std::size_t rcl_size(double alpha, std::size_t feasible);

/// Semi-greedy construction: each feasible successor is priced with the exact
/// trigger-aware incremental cost, candidates are sorted by (cost, node id),
/// and the next node is drawn uniformly from the first rcl_size() of them.
ConstructionResult randomized_greedy(const Instance& inst, RclParams params, Rng& rng);

// c' = c + alpha * U(-1, 1), per arc.
CostMatrix perturb_additive(const Instance& inst, double alpha, Rng& rng);

// c' = c * (beta * U(0, 1)), per arc.
CostMatrix perturb_multiplicative(const Instance& inst, double beta, Rng& rng);

// Cyclic distance between the positions of i and j in a prior node order.
int cyclic_distance(std::span<const int> position, NodeId i, NodeId j);

/// Relation-aware perturbation from a prior node order `prior` (a permutation
/// of all nodes). With p_ij = 1/d_ij, each relation with trigger (a1,a2) and
/// target (b1,b2) gets p_r = p_a1a2 * p_b1b2 / max(1, d_a2b1)^beta, and both
/// of its arcs receive alpha * p_r * c_r on top of their base cost.
CostMatrix perturb_biased_with_prior(const Instance& inst, double alpha, double beta,
                                     std::span<const NodeId> prior);

// Draws the prior order uniformly at random.
CostMatrix perturb_biased(const Instance& inst, double alpha, double beta, Rng& rng);

/// Solves the relation-free TSP on `cm`, prices every pool tour with the true
/// objective, and keeps the cheapest (ties: pool order).
ConstructionResult mip_construction(const Instance& inst, const CostMatrix& cm, const SubsolverConfig& cfg,
                                    Rng& rng);

enum class Heuristic
{
    SimpleRandomized,
    RandomizedGreedy,
    MipAdditive,
    MipMultiplicative,
    MipBiased
};

std::string_view to_string(Heuristic h); // src, rgc, mip-add, mip-mul, mip-bias
Heuristic parse_heuristic(std::string_view text);

struct ConstructionConfig
{
    Heuristic heuristic = Heuristic::MipBiased;
    double alpha = 0.1;
    double beta = 3.0;
    SubsolverConfig subsolver;

    // Tuned parameters per heuristic: rgc alpha 0.1, mip-add alpha 0.1,
    // mip-mul beta 1.5, mip-bias (0.1, 3.0).
    static ConstructionConfig defaults_for(Heuristic h);
};

ConstructionResult construct(const Instance& inst, const ConstructionConfig& cfg, Rng& rng);

} // namespace tatsp
