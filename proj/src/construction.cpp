#include "tatsp/construction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>

#include "tatsp/evaluation.hpp"

namespace tatsp {

namespace {

// Unvisited out-neighbours of the path end. On the final step only nodes
// with an arc back to the depot qualify.
std::vector<NodeId> feasible_successors(const Instance& inst, const PartialState& state)
{
    const bool last_step = state.sequence().size() + 1 == static_cast<std::size_t>(inst.node_count());
    std::vector<NodeId> out;
    for (ArcId a : inst.out_arcs(state.last()))
    {
        const NodeId v = inst.arc(a).head;
        if (state.visited(v) || (last_step && !inst.has_arc(v, depot)))
            continue;
        out.push_back(v);
    }
    return out;
}

ConstructionResult finish(const Instance& inst, const PartialState& state)
{
    if (!inst.has_arc(state.last(), depot))
        return {};
    ConstructionResult res;
    res.cost = state.running_cost() + state.closing_cost(inst);
    res.tour = Tour{state.sequence()};
    return res;
}

} // namespace

ConstructionResult simple_randomized(const Instance& inst, Rng& rng)
{
    PartialState state(inst);
    while (!state.complete())
    {
        const auto candidates = feasible_successors(inst, state);
        if (candidates.empty())
            return {};
        state.extend(inst, candidates[rng.below(candidates.size())]);
    }
    return finish(inst, state);
}

std::size_t rcl_size(double alpha, std::size_t feasible)
{
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument("RCL alpha must lie in [0, 1]");
    // The epsilon keeps e.g. 0.1 * 20 from rounding up to 3.
    const auto k = static_cast<std::size_t>(std::ceil(alpha * static_cast<double>(feasible) - 1e-9));
    return std::clamp<std::size_t>(k, 1, std::max<std::size_t>(feasible, 1));
}

ConstructionResult randomized_greedy(const Instance& inst, RclParams params, Rng& rng)
{
    PartialState state(inst);
    std::vector<std::pair<double, NodeId>> priced;
    while (!state.complete())
    {
        const auto candidates = feasible_successors(inst, state);
        if (candidates.empty())
            return {};
        priced.clear();
        for (NodeId v : candidates)
            priced.emplace_back(state.incremental_cost(inst, v), v);
        std::sort(priced.begin(), priced.end());
        const std::size_t k = rcl_size(params.alpha, priced.size());
        state.extend(inst, priced[rng.below(k)].second);
    }
    return finish(inst, state);
}

CostMatrix perturb_additive(const Instance& inst, double alpha, Rng& rng)
{
    if (!(alpha >= 0.0))
        throw std::invalid_argument("additive perturbation needs alpha >= 0");
    CostMatrix cm = base_costs(inst);
    for (double& c : cm.costs)
        c += alpha * rng.uniform(-1.0, 1.0);
    return cm;
}

CostMatrix perturb_multiplicative(const Instance& inst, double beta, Rng& rng)
{
    if (!(beta > 0.0))
        throw std::invalid_argument("multiplicative perturbation needs beta > 0");
    CostMatrix cm = base_costs(inst);
    for (double& c : cm.costs)
        c *= beta * rng.uniform01();
    return cm;
}

int cyclic_distance(std::span<const int> position, NodeId i, NodeId j)
{
    const int n = static_cast<int>(position.size());
    const int d = std::abs(position[static_cast<std::size_t>(i)] - position[static_cast<std::size_t>(j)]);
    return std::min(d, n - d);
}

CostMatrix perturb_biased_with_prior(const Instance& inst, double alpha, double beta,
                                     std::span<const NodeId> prior)
{
    if (!(alpha >= 0.0) || !(beta >= 0.0))
        throw std::invalid_argument("biased perturbation needs alpha >= 0 and beta >= 0");
    if (prior.size() != static_cast<std::size_t>(inst.node_count()))
        throw std::invalid_argument("prior order must list every node");

    std::vector<int> position(prior.size(), -1);
    for (std::size_t p = 0; p < prior.size(); ++p)
        position.at(static_cast<std::size_t>(prior[p])) = static_cast<int>(p);
    if (std::find(position.begin(), position.end(), -1) != position.end())
        throw std::invalid_argument("prior order is not a permutation");

    const auto usage = [&](const Arc& a) { return 1.0 / cyclic_distance(position, a.tail, a.head); };

    CostMatrix cm = base_costs(inst);
    for (const Relation& r : inst.relations())
    {
        const Arc& trigger = inst.arc(r.trigger);
        const Arc& target = inst.arc(r.target);
        const int gap_nodes = std::max(1, cyclic_distance(position, trigger.head, target.tail));
        const double p_r = usage(trigger) * usage(target) / std::pow(static_cast<double>(gap_nodes), beta);
        const double penalty = alpha * p_r * r.cost;
        cm.costs[static_cast<std::size_t>(r.trigger)] += penalty;
        cm.costs[static_cast<std::size_t>(r.target)] += penalty;
    }
    return cm;
}

CostMatrix perturb_biased(const Instance& inst, double alpha, double beta, Rng& rng)
{
    std::vector<NodeId> prior(static_cast<std::size_t>(inst.node_count()));
    std::iota(prior.begin(), prior.end(), 0);
    rng.shuffle(std::span<NodeId>(prior));
    return perturb_biased_with_prior(inst, alpha, beta, prior);
}

ConstructionResult mip_construction(const Instance& inst, const CostMatrix& cm, const SubsolverConfig& cfg,
                                    Rng& rng)
{
    const TourPool pool = solve_tsp_pool(inst, cm, cfg, rng);
    ConstructionResult best;
    for (const Tour& t : pool.tours)
    {
        const auto cost = tour_cost(inst, t.nodes);
        if (!cost)
            continue;
        if (!best || *cost < best.cost)
        {
            best.tour = t;
            best.cost = *cost;
        }
    }
    return best;
}

std::string_view to_string(Heuristic h)
{
    switch (h)
    {
    case Heuristic::SimpleRandomized: return "src";
    case Heuristic::RandomizedGreedy: return "rgc";
    case Heuristic::MipAdditive: return "mip-add";
    case Heuristic::MipMultiplicative: return "mip-mul";
    case Heuristic::MipBiased: return "mip-bias";
    }
    return "mip-bias";
}

Heuristic parse_heuristic(std::string_view text)
{
    for (Heuristic h : {Heuristic::SimpleRandomized, Heuristic::RandomizedGreedy, Heuristic::MipAdditive,
                        Heuristic::MipMultiplicative, Heuristic::MipBiased})
        if (to_string(h) == text)
            return h;
    throw std::invalid_argument("unknown construction '" + std::string(text) + "'");
}

ConstructionConfig ConstructionConfig::defaults_for(Heuristic h)
{
    ConstructionConfig cfg;
    cfg.heuristic = h;
    switch (h)
    {
    case Heuristic::SimpleRandomized: break;
    case Heuristic::RandomizedGreedy: cfg.alpha = 0.1; break;
    case Heuristic::MipAdditive: cfg.alpha = 0.1; break;
    case Heuristic::MipMultiplicative: cfg.beta = 1.5; break;
    case Heuristic::MipBiased:
        cfg.alpha = 0.1;
        cfg.beta = 3.0;
        break;
    }
    return cfg;
}

ConstructionResult construct(const Instance& inst, const ConstructionConfig& cfg, Rng& rng)
{
    switch (cfg.heuristic)
    {
    case Heuristic::SimpleRandomized: return simple_randomized(inst, rng);
    case Heuristic::RandomizedGreedy: return randomized_greedy(inst, {cfg.alpha}, rng);
    case Heuristic::MipAdditive:
        return mip_construction(inst, perturb_additive(inst, cfg.alpha, rng), cfg.subsolver, rng);
    case Heuristic::MipMultiplicative:
        return mip_construction(inst, perturb_multiplicative(inst, cfg.beta, rng), cfg.subsolver, rng);
    case Heuristic::MipBiased:
        return mip_construction(inst, perturb_biased(inst, cfg.alpha, cfg.beta, rng), cfg.subsolver, rng);
    }
    return {};
}

} // namespace tatsp
