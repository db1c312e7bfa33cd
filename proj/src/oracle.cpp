#include "tatsp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "tatsp/errors.hpp"

namespace tatsp::oracle {

namespace {

// Tables built once from the raw arc and relation lists.
class Definitions
{
public:
    explicit Definitions(const Instance& inst) : n_(static_cast<std::size_t>(inst.node_count()))
    {
        cost_.assign(n_ * n_, NAN);
        for (const Arc& a : inst.arcs())
            cost_[idx(a.tail, a.head)] = a.cost;
        incoming_.resize(n_ * n_);
        for (const Relation& r : inst.relations())
        {
            const Arc& trig = inst.arcs().at(static_cast<std::size_t>(r.trigger));
            const Arc& targ = inst.arcs().at(static_cast<std::size_t>(r.target));
            incoming_[idx(targ.tail, targ.head)].push_back({trig.tail, trig.head, r.cost});
        }
    }

    // nullopt when the cycle uses a missing arc
    std::optional<double> cost(const std::vector<NodeId>& tour, std::vector<int>& position) const
    {
        const std::size_t n = tour.size();
        for (std::size_t p = 0; p < n; ++p)
            position[static_cast<std::size_t>(tour[p])] = static_cast<int>(p);

        // Position of arc (u, v) in the tour, or -1.
        const auto where = [&](NodeId u, NodeId v) {
            const int p = position[static_cast<std::size_t>(u)];
            return tour[(static_cast<std::size_t>(p) + 1) % n] == v ? p : -1;
        };

        double total = 0.0;
        for (std::size_t p = 0; p < n; ++p)
        {
            const NodeId u = tour[p];
            const NodeId v = tour[(p + 1) % n];
            const double base = cost_[idx(u, v)];
            if (std::isnan(base))
                return std::nullopt;

            const auto& candidates = incoming_[idx(u, v)];
            const int target_pos = static_cast<int>(p);
            double paid = base;
            for (const Trigger& t : candidates)
            {
                const int tp = where(t.tail, t.head);
                if (tp < 0 || tp >= target_pos) // conditions 1 and 2
                    continue;
                bool overridden = false; // condition 3
                for (const Trigger& other : candidates)
                {
                    if (&other == &t)
                        continue;
                    const int op = where(other.tail, other.head);
                    if (op >= 0 && tp < op && op < target_pos)
                    {
                        overridden = true;
                        break;
                    }
                }
                if (!overridden)
                {
                    paid = t.cost;
                    break;
                }
            }
            total += paid;
        }
        return total;
    }

private:
    struct Trigger
    {
        NodeId tail;
        NodeId head;
        double cost;
    };

    std::size_t idx(NodeId u, NodeId v) const
    {
        return static_cast<std::size_t>(u) * n_ + static_cast<std::size_t>(v);
    }

    std::size_t n_;
    std::vector<double> cost_;
    std::vector<std::vector<Trigger>> incoming_;
};

void require_permutation(const Instance& inst, const Tour& tour)
{
    const auto n = static_cast<std::size_t>(inst.node_count());
    if (tour.size() != n || tour.nodes.front() != 0)
        throw std::invalid_argument("tour must list every node once, starting at 0");
    std::vector<NodeId> sorted = tour.nodes;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < n; ++i)
        if (sorted[i] != static_cast<NodeId>(i))
            throw std::invalid_argument("tour must list every node once, starting at 0");
}

} // namespace

double definitional_evaluate(const Instance& inst, const Tour& tour)
{
    require_permutation(inst, tour);
    const Definitions defs(inst);
    std::vector<int> position(tour.size());
    const auto c = defs.cost(tour.nodes, position);
    if (!c)
        throw InfeasibleError("tour uses an arc the instance does not contain");
    return *c;
}

OracleResult brute_force_optimum(const Instance& inst)
{
    const int n = inst.node_count();
    if (n > brute_force_max_nodes)
        throw CapabilityError("brute force is limited to " + std::to_string(brute_force_max_nodes) +
                              " nodes, instance has " + std::to_string(n));

    OracleResult res;
    if (n < 2)
        return res;
    const Definitions defs(inst);
    std::vector<NodeId> tour(static_cast<std::size_t>(n));
    std::iota(tour.begin(), tour.end(), 0);
    std::vector<int> position(tour.size());
    do
    {
        const auto c = defs.cost(tour, position);
        if (!c)
            continue;
        ++res.enumerated;
        if (!res.best_tour || *c < res.best_cost)
        {
            res.best_cost = *c;
            res.best_tour = Tour{tour};
        }
    } while (std::next_permutation(tour.begin() + 1, tour.end()));
    return res;
}

} // namespace tatsp::oracle
