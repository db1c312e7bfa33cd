#include "tatsp/tsp_subsolver.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <string>

#include "tatsp/errors.hpp"

namespace tatsp {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// Dense node-by-node view of `cm`, +inf where the arc is missing.
class DenseCosts
{
public:
    DenseCosts(const Instance& inst, const CostMatrix& cm)
        : n_(static_cast<std::size_t>(inst.node_count())), w_(n_ * n_, inf)
    {
        if (cm.costs.size() != inst.arc_count())
            throw std::invalid_argument("cost matrix is not aligned with the instance arcs");
        for (std::size_t a = 0; a < inst.arc_count(); ++a)
        {
            const Arc& arc = inst.arcs()[a];
            w_[static_cast<std::size_t>(arc.tail) * n_ + static_cast<std::size_t>(arc.head)] = cm.costs[a];
        }
    }

    double operator()(NodeId u, NodeId v) const
    {
        return w_[static_cast<std::size_t>(u) * n_ + static_cast<std::size_t>(v)];
    }

    std::size_t size() const noexcept { return n_; }

private:
    std::size_t n_;
    std::vector<double> w_;
};

// First-improvement 2-Opt on a directed cycle. Reversing positions i+1..j
// flips the inner arcs, so their reverse costs come from a second prefix sum.
void two_opt_descent(std::vector<NodeId>& t, const DenseCosts& w)
{
    const std::size_t n = t.size();
    if (n < 4)
        return;
    std::vector<double> fwd(n + 1), rev(n + 1);
    std::vector<std::size_t> rev_missing(n + 1);

    bool improved = true;
    while (improved)
    {
        improved = false;
        fwd[0] = rev[0] = 0.0;
        rev_missing[0] = 0;
        for (std::size_t k = 0; k < n; ++k)
        {
            const NodeId u = t[k];
            const NodeId v = t[(k + 1) % n];
            fwd[k + 1] = fwd[k] + w(u, v);
            const double back = w(v, u);
            const bool missing = back == inf;
            rev[k + 1] = rev[k] + (missing ? 0.0 : back);
            rev_missing[k + 1] = rev_missing[k] + (missing ? 1 : 0);
        }

        for (std::size_t i = 0; i + 2 < n && !improved; ++i)
        {
            for (std::size_t j = i + 2; j < n; ++j)
            {
                if (i == 0 && j == n - 1)
                    continue;
                const double in1 = w(t[i], t[j]);
                const double in2 = w(t[i + 1], t[(j + 1) % n]);
                if (in1 == inf || in2 == inf || rev_missing[j] != rev_missing[i + 1])
                    continue;
                const double delta = in1 + in2 + (rev[j] - rev[i + 1]) - (fwd[j + 1] - fwd[i]);
                if (delta < -1e-9)
                {
                    std::reverse(t.begin() + static_cast<std::ptrdiff_t>(i + 1),
                                 t.begin() + static_cast<std::ptrdiff_t>(j + 1));
                    improved = true;
                    break;
                }
            }
        }
    }
}

// Nearest-neighbour completion from depot -> first. The last node must
// close back to the depot.
std::optional<std::vector<NodeId>> nearest_neighbour(const Instance& inst, const DenseCosts& w, NodeId first)
{
    const std::size_t n = w.size();
    std::vector<bool> visited(n, false);
    std::vector<NodeId> seq{depot, first};
    visited[depot] = visited[static_cast<std::size_t>(first)] = true;
    while (seq.size() < n)
    {
        const bool last_step = seq.size() + 1 == n;
        NodeId best = -1;
        double best_cost = inf;
        for (ArcId a : inst.out_arcs(seq.back()))
        {
            const NodeId v = inst.arc(a).head;
            if (visited[static_cast<std::size_t>(v)] || (last_step && w(v, depot) == inf))
                continue;
            const double c = w(seq.back(), v);
            if (c < best_cost || (c == best_cost && v < best))
            {
                best = v;
                best_cost = c;
            }
        }
        if (best < 0)
            return std::nullopt;
        visited[static_cast<std::size_t>(best)] = true;
        seq.push_back(best);
    }
    if (w(seq.back(), depot) == inf)
        return std::nullopt;
    return seq;
}

// Segment exchange A B C D -> A C B D on positions 1..n-1; keeps arc
// orientation, so it suits asymmetric costs.
std::vector<NodeId> double_bridge(const std::vector<NodeId>& t, Rng& rng)
{
    const std::size_t n = t.size();
    std::size_t cut[3];
    do
    {
        for (auto& c : cut)
            c = 1 + static_cast<std::size_t>(rng.below(n - 1));
        std::sort(std::begin(cut), std::end(cut));
    } while (cut[0] == cut[1] || cut[1] == cut[2]);
    std::vector<NodeId> out(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(cut[0]));
    out.insert(out.end(), t.begin() + static_cast<std::ptrdiff_t>(cut[1]), t.begin() + static_cast<std::ptrdiff_t>(cut[2]));
    out.insert(out.end(), t.begin() + static_cast<std::ptrdiff_t>(cut[0]), t.begin() + static_cast<std::ptrdiff_t>(cut[1]));
    out.insert(out.end(), t.begin() + static_cast<std::ptrdiff_t>(cut[2]), t.end());
    return out;
}

double path_cost(const std::vector<NodeId>& t, const DenseCosts& w)
{
    double total = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k)
        total += w(t[k], t[(k + 1) % t.size()]);
    return total;
}

TourPool to_pool(const std::map<std::vector<NodeId>, double>& found, std::size_t pool_size)
{
    std::vector<std::pair<double, const std::vector<NodeId>*>> order;
    order.reserve(found.size());
    for (const auto& [tour, cost] : found)
        order.emplace_back(cost, &tour);
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first)
            return a.first < b.first;
        return *a.second < *b.second;
    });
    TourPool pool;
    for (std::size_t i = 0; i < order.size() && i < pool_size; ++i)
    {
        pool.tours.push_back(Tour{*order[i].second});
        pool.costs.push_back(order[i].first);
    }
    return pool;
}

} // namespace

CostMatrix base_costs(const Instance& inst)
{
    CostMatrix cm;
    cm.costs.reserve(inst.arc_count());
    for (const Arc& a : inst.arcs())
        cm.costs.push_back(a.cost);
    return cm;
}

std::optional<double> static_tour_cost(const Instance& inst, const CostMatrix& cm, const Tour& tour)
{
    double total = 0.0;
    for (std::size_t p = 0; p < tour.size(); ++p)
    {
        const auto a = inst.find_arc(tour.nodes[p], tour.successor(p));
        if (!a)
            return std::nullopt;
        total += cm[*a];
    }
    return total;
}

Tour held_karp(const Instance& inst, const CostMatrix& cm)
{
    const int n = inst.node_count();
    if (n > held_karp_max_nodes)
        throw CapabilityError("Held-Karp supports at most " + std::to_string(held_karp_max_nodes) +
                              " nodes, instance has " + std::to_string(n));
    if (n < 2)
        throw InfeasibleError("no Hamiltonian cycle on a single node");

    const DenseCosts w(inst, cm);
    const int m = n - 1; // nodes 1..n-1 map to bits 0..m-1
    const std::size_t states = std::size_t{1} << m;
    std::vector<double> dp(states * static_cast<std::size_t>(m), inf);
    std::vector<std::int8_t> parent(states * static_cast<std::size_t>(m), -1);
    const auto at = [m](std::size_t mask, int j) { return mask * static_cast<std::size_t>(m) + static_cast<std::size_t>(j); };

    for (int j = 0; j < m; ++j)
        dp[at(std::size_t{1} << j, j)] = w(depot, j + 1);

    for (std::size_t mask = 1; mask < states; ++mask)
    {
        for (int j = 0; j < m; ++j)
        {
            if (!(mask & (std::size_t{1} << j)))
                continue;
            const double base = dp[at(mask, j)];
            if (base == inf)
                continue;
            for (int k = 0; k < m; ++k)
            {
                if (mask & (std::size_t{1} << k))
                    continue;
                const double step = w(j + 1, k + 1);
                if (step == inf)
                    continue;
                const std::size_t next = mask | (std::size_t{1} << k);
                if (base + step < dp[at(next, k)])
                {
                    dp[at(next, k)] = base + step;
                    parent[at(next, k)] = static_cast<std::int8_t>(j);
                }
            }
        }
    }

    const std::size_t full = states - 1;
    int last = -1;
    double best = inf;
    for (int j = 0; j < m; ++j)
    {
        const double close = w(j + 1, depot);
        if (dp[at(full, j)] == inf || close == inf)
            continue;
        if (dp[at(full, j)] + close < best)
        {
            best = dp[at(full, j)] + close;
            last = j;
        }
    }
    if (last < 0)
        throw InfeasibleError("no Hamiltonian cycle exists under the given arcs");

    std::vector<NodeId> rev;
    std::size_t mask = full;
    for (int j = last; j >= 0;)
    {
        rev.push_back(j + 1);
        const int p = parent[at(mask, j)];
        mask &= ~(std::size_t{1} << j);
        j = p;
    }
    Tour tour;
    tour.nodes.push_back(depot);
    tour.nodes.insert(tour.nodes.end(), rev.rbegin(), rev.rend());
    return tour;
}

TourPool heuristic_pool(const Instance& inst, const CostMatrix& cm, const PoolLimits& limits, Rng& rng)
{
    if (limits.pool_size < 1)
        throw std::invalid_argument("pool size must be at least 1");
    const DenseCosts w(inst, cm);
    const std::size_t n = w.size();
    std::map<std::vector<NodeId>, double> found;
    if (n < 2)
        return {};
    if (n == 2)
    {
        std::vector<NodeId> t{depot, 1};
        if (w(0, 1) != inf && w(1, 0) != inf)
            found.emplace(t, path_cost(t, w));
        return to_pool(found, limits.pool_size);
    }

    const auto first_arcs = inst.out_arcs(depot);
    if (first_arcs.empty())
        return {};

    using clock = std::chrono::steady_clock;
    const auto deadline = clock::now() + std::chrono::duration_cast<clock::duration>(limits.time_limit);
    std::vector<std::vector<NodeId>> optima;
    for (std::size_t start = 0; start < limits.max_starts; ++start)
    {
        if (start > 0 && clock::now() >= deadline)
            break;
        std::optional<std::vector<NodeId>> t;
        if (start % 2 == 1 && !optima.empty() && n >= 5)
        {
            t = double_bridge(optima[rng.below(optima.size())], rng);
            if (path_cost(*t, w) == inf)
                t.reset();
        }
        else
        {
            const NodeId first = inst.arc(first_arcs[rng.below(first_arcs.size())]).head;
            t = nearest_neighbour(inst, w, first);
        }
        if (!t)
            continue;
        two_opt_descent(*t, w);
        if (found.emplace(*t, path_cost(*t, w)).second)
            optima.push_back(*t);
    }
    return to_pool(found, limits.pool_size);
}

TourPool solve_tsp_pool(const Instance& inst, const CostMatrix& cm, const SubsolverConfig& cfg, Rng& rng)
{
    std::map<std::vector<NodeId>, double> found;
    if (inst.node_count() <= cfg.exact_node_limit && inst.node_count() <= held_karp_max_nodes)
    {
        try
        {
            const Tour t = held_karp(inst, cm);
            found.emplace(t.nodes, *static_tour_cost(inst, cm, t));
        }
        catch (const InfeasibleError&)
        {
            return {};
        }
    }
    const TourPool extra = heuristic_pool(inst, cm, cfg.limits, rng);
    for (const Tour& t : extra.tours)
        found.emplace(t.nodes, *static_tour_cost(inst, cm, t));
    return to_pool(found, cfg.limits.pool_size);
}

} // namespace tatsp
