#pragma once

#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tatsp/instance.hpp"

namespace tatsp {

// Δ(r) = c(r) - c(target). Negative for discount relations.
double delta_cost(const Instance& inst, RelationId r);

struct TourEvaluation
{
    double total_cost = 0.0;
    std::vector<double> arc_costs;                        // per tour position
    std::vector<std::optional<RelationId>> active_relations; // per tour position
};

/// Path-dependent cost of a Hamiltonian cycle.
///
/// The arc at position p pays c(r) for the relation r whose trigger sits at
/// the largest position strictly below p (among triggers present in the
/// tour), and its base cost when no such trigger exists. Triggers that occur
/// after the target never count, and the closing arc is last.
///
/// Throws std::invalid_argument for a malformed tour and InfeasibleError
/// naming the missing arc.
TourEvaluation evaluate_tour(const Instance& inst, const Tour& tour);

// Same rule without the per-arc detail; nullopt when an arc is missing.
// The node sequence must already be a depot-anchored permutation.
std::optional<double> tour_cost(const Instance& inst, std::span<const NodeId> nodes);

/// Open path from the depot, grown one node at a time.
///
/// Appending never changes the cost of arcs already placed (they all precede
/// the new arc, so the new arc cannot become their trigger), so the running
/// cost only ever grows by the new arc's effective cost.
class PartialState
{
public:
    struct TriggerMark
    {
        std::size_t position;
        RelationId relation;
    };

    explicit PartialState(const Instance& inst);

    const std::vector<NodeId>& sequence() const noexcept { return sequence_; }
    NodeId last() const noexcept { return sequence_.back(); }
    bool visited(NodeId v) const { return visited_[static_cast<std::size_t>(v)]; }
    bool complete() const noexcept { return sequence_.size() == visited_.size(); }
    double running_cost() const noexcept { return running_cost_; }

    // Latest relation whose trigger was placed, keyed by target arc.
    const std::unordered_map<ArcId, TriggerMark>& last_trigger_by_target() const noexcept
    {
        return last_trigger_;
    }

    // Effective cost arc (last, next) would pay. Throws InfeasibleError if the arc is missing.
    double incremental_cost(const Instance& inst, NodeId next) const;

    // Appends `next` and returns its incremental cost.
    double extend(const Instance& inst, NodeId next);

    // Effective cost of the closing arc (last, depot). Throws InfeasibleError if missing.
    double closing_cost(const Instance& inst) const;

private:
    double effective_cost(const Instance& inst, ArcId a) const;

    std::vector<bool> visited_;
    std::vector<NodeId> sequence_;
    double running_cost_ = 0.0;
    std::unordered_map<ArcId, TriggerMark> last_trigger_;
};

// Value-returning form: (incremental cost, extended state).
std::pair<double, PartialState> extend_partial(const Instance& inst, const PartialState& state, NodeId next);

// 100 * (cost - best_known) / best_known. Throws std::domain_error for best_known <= 0.
double gap(double cost, double best_known);

} // namespace tatsp
