#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tatsp/instance.hpp"
#include "tatsp/rng.hpp"

namespace fixtures {

using namespace tatsp;

inline std::vector<Arc> complete_arcs(int n, double cost)
{
    std::vector<Arc> arcs;
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = 0; j < n; ++j)
            if (i != j)
                arcs.push_back({i, j, cost});
    return arcs;
}

inline ArcId arc_of(const std::vector<Arc>& arcs, NodeId u, NodeId v)
{
    for (std::size_t a = 0; a < arcs.size(); ++a)
        if (arcs[a].tail == u && arcs[a].head == v)
            return static_cast<ArcId>(a);
    return -1;
}

// Complete 3-node digraph, unit costs, no relations.
inline Instance fix_a() { return Instance(3, complete_arcs(3, 1.0), {}, "fix_a"); }

// Complete 4-node digraph, unit costs except c(2,3) = 5; r0 = (0,1) -> (2,3) at cost 1.
inline Instance fix_b()
{
    auto arcs = complete_arcs(4, 1.0);
    arcs[static_cast<std::size_t>(arc_of(arcs, 2, 3))].cost = 5.0;
    std::vector<Relation> rels{{arc_of(arcs, 0, 1), arc_of(arcs, 2, 3), 1.0}};
    return Instance(4, arcs, rels, "fix_b");
}

// FIX-B plus r1 = (1,2) -> (2,3) at cost 4.
inline Instance fix_c()
{
    auto arcs = complete_arcs(4, 1.0);
    arcs[static_cast<std::size_t>(arc_of(arcs, 2, 3))].cost = 5.0;
    std::vector<Relation> rels{{arc_of(arcs, 0, 1), arc_of(arcs, 2, 3), 1.0},
                               {arc_of(arcs, 1, 2), arc_of(arcs, 2, 3), 4.0}};
    return Instance(4, arcs, rels, "fix_c");
}

inline const char* fix_a_text = "TATSP 1\n"
                                "3 6 0\n"
                                "A 0 1 1\nA 0 2 1\nA 1 0 1\nA 1 2 1\nA 2 0 1\nA 2 1 1\n";

inline const char* fix_b_text = "TATSP 1\n"
                                "# complete 4-node digraph\n"
                                "4 12 1\n"
                                "A 0 1 1\nA 0 2 1\nA 0 3 1\n"
                                "A 1 0 1\nA 1 2 1\nA 1 3 1\n"
                                "A 2 0 1\nA 2 1 1\nA 2 3 5\n"
                                "A 3 0 1\nA 3 1 1\nA 3 2 1\n"
                                "R 0 8 1\n";

struct RandomSpec
{
    int n = 6;
    double density = 1.0;      // probability an off-cycle arc exists
    int relations = 10;
    double cost_lo = 1.0;
    double cost_hi = 100.0;
    double relation_lo = 0.5;  // relation cost as a multiple of the target cost
    double relation_hi = 2.0;
};

// Random instance with a planted Hamiltonian cycle, so at least one tour
// exists even when density < 1.
inline Instance random_instance(Rng& rng, const RandomSpec& spec)
{
    const int n = spec.n;
    std::vector<NodeId> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(std::span<NodeId>(order.data() + 1, order.size() - 1));
    std::set<std::pair<NodeId, NodeId>> planted;
    for (int p = 0; p < n; ++p)
        planted.emplace(order[static_cast<std::size_t>(p)], order[static_cast<std::size_t>((p + 1) % n)]);

    std::vector<Arc> arcs;
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j = 0; j < n; ++j)
            if (i != j && (planted.contains({i, j}) || rng.uniform01() < spec.density))
                arcs.push_back({i, j, rng.uniform(spec.cost_lo, spec.cost_hi)});

    std::vector<Relation> rels;
    std::set<std::pair<ArcId, ArcId>> used;
    const auto m = static_cast<std::uint64_t>(arcs.size());
    const auto cap = static_cast<int>(std::min<std::uint64_t>(m * (m - 1), static_cast<std::uint64_t>(spec.relations)));
    while (static_cast<int>(rels.size()) < cap)
    {
        const auto t = static_cast<ArcId>(rng.below(m));
        const auto g = static_cast<ArcId>(rng.below(m));
        if (t == g || !used.emplace(t, g).second)
            continue;
        const double c = arcs[static_cast<std::size_t>(g)].cost;
        rels.push_back({t, g, c * rng.uniform(spec.relation_lo, spec.relation_hi)});
    }
    return Instance(n, std::move(arcs), std::move(rels), "random");
}

// Uniform random feasible tour by rejection; falls back to the planted-style
// search only through retries, so use on dense instances.
inline Tour random_tour(const Instance& inst, Rng& rng)
{
    std::vector<NodeId> nodes(static_cast<std::size_t>(inst.node_count()));
    std::iota(nodes.begin(), nodes.end(), 0);
    for (int attempt = 0; attempt < 100000; ++attempt)
    {
        rng.shuffle(std::span<NodeId>(nodes.data() + 1, nodes.size() - 1));
        Tour t{nodes};
        if (is_feasible(inst, t))
            return t;
    }
    throw std::runtime_error("no feasible random tour found");
}

inline std::string to_text(const Instance& inst)
{
    std::ostringstream ss;
    write_instance(ss, inst);
    return ss.str();
}

} // namespace fixtures
