#pragma once

#include <cstddef>
#include <optional>

#include "tatsp/instance.hpp"

// Ground truth for small instances. Nothing here calls into the evaluation
// module; costs are recomputed straight from the activation conditions.
namespace tatsp::oracle {

/// Tour cost from the literal activation conditions: relation (t, a) is
/// active iff both arcs are in the tour, t comes before a, and no other
/// relation (k, a) has k in the tour strictly between t and a.
/// Throws InfeasibleError if the tour uses a missing arc and
/// std::invalid_argument if it is not a depot-anchored permutation.
double definitional_evaluate(const Instance& inst, const Tour& tour);

inline constexpr int brute_force_max_nodes = 10;

struct OracleResult
{
    std::optional<Tour> best_tour; // empty when no Hamiltonian cycle exists
    double best_cost = 0.0;
    std::size_t enumerated = 0; // feasible Hamiltonian cycles seen

    bool feasible() const noexcept { return best_tour.has_value(); }
};

/// Enumerates every ordering of nodes 1..n-1 lexicographically; ties keep the
/// lexicographically smallest tour. Throws CapabilityError above
/// brute_force_max_nodes.
OracleResult brute_force_optimum(const Instance& inst);

} // namespace tatsp::oracle
