#include "tatsp/evaluation.hpp"

#include <stdexcept>
#include <string>

#include "tatsp/errors.hpp"

namespace tatsp {

double delta_cost(const Instance& inst, RelationId r)
{
    const Relation& rel = inst.relation(r);
    return rel.cost - inst.arc(rel.target).cost;
}

namespace {

// Node position and successor scratch, reused across calls on one thread.
struct TourIndex
{
    std::vector<std::size_t> position;
    std::vector<NodeId> successor;

    void build(std::span<const NodeId> nodes)
    {
        const std::size_t n = nodes.size();
        position.resize(n);
        successor.resize(n);
        for (std::size_t p = 0; p < n; ++p)
        {
            const auto v = static_cast<std::size_t>(nodes[p]);
            position[v] = p;
            successor[v] = nodes[(p + 1) % n];
        }
    }

    // Position of arc (tail, head) if it is in the tour.
    std::optional<std::size_t> arc_position(const Arc& arc) const
    {
        if (successor[static_cast<std::size_t>(arc.tail)] != arc.head)
            return std::nullopt;
        return position[static_cast<std::size_t>(arc.tail)];
    }
};

// Active relation for the tour arc `a` at position p, if any.
std::optional<RelationId> active_relation(const Instance& inst, const TourIndex& index, ArcId a,
                                          std::size_t p)
{
    std::optional<RelationId> best;
    std::size_t best_pos = 0;
    for (RelationId r : inst.relations_by_target(a))
    {
        const auto trigger_pos = index.arc_position(inst.arc(inst.relation(r).trigger));
        if (!trigger_pos || *trigger_pos >= p)
            continue;
        if (!best || *trigger_pos > best_pos)
        {
            best = r;
            best_pos = *trigger_pos;
        }
    }
    return best;
}

} // namespace

TourEvaluation evaluate_tour(const Instance& inst, const Tour& tour)
{
    check_tour_shape(inst, tour.nodes);
    TourIndex index;
    index.build(tour.nodes);

    const std::size_t n = tour.size();
    TourEvaluation ev;
    ev.arc_costs.resize(n);
    ev.active_relations.resize(n);
    for (std::size_t p = 0; p < n; ++p)
    {
        const NodeId u = tour.nodes[p];
        const NodeId v = tour.successor(p);
        const auto a = inst.find_arc(u, v);
        if (!a)
            throw InfeasibleError("tour uses missing arc (" + std::to_string(u) + "," + std::to_string(v) + ")");
        const auto r = active_relation(inst, index, *a, p);
        ev.active_relations[p] = r;
        ev.arc_costs[p] = r ? inst.relation(*r).cost : inst.arc(*a).cost;
        ev.total_cost += ev.arc_costs[p];
    }
    return ev;
}

std::optional<double> tour_cost(const Instance& inst, std::span<const NodeId> nodes)
{
    thread_local TourIndex index;
    index.build(nodes);

    const std::size_t n = nodes.size();
    double total = 0.0;
    for (std::size_t p = 0; p < n; ++p)
    {
        const auto a = inst.find_arc(nodes[p], nodes[(p + 1) % n]);
        if (!a)
            return std::nullopt;
        const auto r = active_relation(inst, index, *a, p);
        total += r ? inst.relation(*r).cost : inst.arc(*a).cost;
    }
    return total;
}

// ---------------------------------------------------------------------------

PartialState::PartialState(const Instance& inst)
    : visited_(static_cast<std::size_t>(inst.node_count()), false), sequence_{depot}
{
    visited_[depot] = true;
}

double PartialState::effective_cost(const Instance& inst, ArcId a) const
{
    if (const auto it = last_trigger_.find(a); it != last_trigger_.end())
        return inst.relation(it->second.relation).cost;
    return inst.arc(a).cost;
}

double PartialState::incremental_cost(const Instance& inst, NodeId next) const
{
    const auto a = inst.find_arc(last(), next);
    if (!a)
        throw InfeasibleError("cannot extend with missing arc (" + std::to_string(last()) + "," +
                              std::to_string(next) + ")");
    return effective_cost(inst, *a);
}

double PartialState::extend(const Instance& inst, NodeId next)
{
    if (next < 0 || next >= inst.node_count())
        throw std::invalid_argument("unknown node " + std::to_string(next));
    if (visited(next))
        throw std::invalid_argument("node " + std::to_string(next) + " already visited");
    const auto a = inst.find_arc(last(), next);
    if (!a)
        throw InfeasibleError("cannot extend with missing arc (" + std::to_string(last()) + "," +
                              std::to_string(next) + ")");

    const double cost = effective_cost(inst, *a);
    const std::size_t position = sequence_.size() - 1;
    // The new arc is now the latest trigger for each of its targets.
    for (RelationId r : inst.relations_by_trigger(*a))
        last_trigger_[inst.relation(r).target] = TriggerMark{position, r};

    visited_[static_cast<std::size_t>(next)] = true;
    sequence_.push_back(next);
    running_cost_ += cost;
    return cost;
}

double PartialState::closing_cost(const Instance& inst) const
{
    const auto a = inst.find_arc(last(), depot);
    if (!a)
        throw InfeasibleError("no closing arc (" + std::to_string(last()) + ",0)");
    return effective_cost(inst, *a);
}

std::pair<double, PartialState> extend_partial(const Instance& inst, const PartialState& state, NodeId next)
{
    PartialState out = state;
    const double cost = out.extend(inst, next);
    return {cost, std::move(out)};
}

double gap(double cost, double best_known)
{
    if (!(best_known > 0.0))
        throw std::domain_error("best-known cost must be positive");
    return 100.0 * (cost - best_known) / best_known;
}

} // namespace tatsp
