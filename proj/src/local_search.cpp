#include "tatsp/local_search.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>

#include "tatsp/errors.hpp"
#include "tatsp/evaluation.hpp"

namespace tatsp {

std::string_view to_string(MoveKind k)
{
    switch (k)
    {
    case MoveKind::TwoOpt: return "twoopt";
    case MoveKind::Swap: return "swap";
    case MoveKind::Relocate: return "relocate";
    }
    return "twoopt";
}

MoveKind parse_move_kind(std::string_view text)
{
    for (MoveKind k : all_neighborhoods)
        if (to_string(k) == text)
            return k;
    throw std::invalid_argument("unknown neighborhood '" + std::string(text) + "'");
}

std::vector<MoveKind> parse_neighborhoods(std::string_view text)
{
    std::vector<MoveKind> kinds;
    std::stringstream ss{std::string(text)};
    for (std::string item; std::getline(ss, item, ',');)
    {
        const MoveKind k = parse_move_kind(item);
        if (std::find(kinds.begin(), kinds.end(), k) != kinds.end())
            throw std::invalid_argument("neighborhood '" + item + "' listed twice");
        kinds.push_back(k);
    }
    if (kinds.empty())
        throw std::invalid_argument("at least one neighborhood is required");
    return kinds;
}

bool is_valid_move(std::size_t tour_size, const Move& m)
{
    const int n = static_cast<int>(tour_size);
    switch (m.kind)
    {
    case MoveKind::TwoOpt:
        return m.i >= 0 && m.j < n && m.j >= m.i + 2 && !(m.i == 0 && m.j == n - 1);
    case MoveKind::Swap:
        return m.i >= 1 && m.j < n && m.i < m.j;
    case MoveKind::Relocate:
        return m.i >= 1 && m.i < n && m.j >= 0 && m.j < n && m.j != m.i && m.j != m.i - 1;
    }
    return false;
}

std::vector<Move> enumerate_moves(std::size_t tour_size, MoveKind kind)
{
    const int n = static_cast<int>(tour_size);
    std::vector<Move> moves;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
        {
            const Move m{kind, i, j};
            if (is_valid_move(tour_size, m))
                moves.push_back(m);
        }
    return moves;
}

void apply_move_in_place(std::vector<NodeId>& nodes, const Move& m)
{
    const int n = static_cast<int>(nodes.size());
    if (m.i < 0 || m.j < 0 || m.i >= n || m.j >= n)
        throw std::out_of_range("move index outside the tour");
    if (!is_valid_move(nodes.size(), m))
        throw std::invalid_argument("invalid move for this tour");

    const auto at = [&](int p) { return nodes.begin() + p; };
    switch (m.kind)
    {
    case MoveKind::TwoOpt: std::reverse(at(m.i + 1), at(m.j + 1)); break;
    case MoveKind::Swap: std::swap(nodes[static_cast<std::size_t>(m.i)], nodes[static_cast<std::size_t>(m.j)]); break;
    case MoveKind::Relocate:
        if (m.j > m.i)
            std::rotate(at(m.i), at(m.i + 1), at(m.j + 1));
        else
            std::rotate(at(m.j + 1), at(m.i), at(m.i + 1));
        break;
    }
}

Tour apply_move(const Tour& t, const Move& m)
{
    Tour out = t;
    apply_move_in_place(out.nodes, m);
    return out;
}

std::optional<double> evaluate_move(const Instance& inst, const Tour& t, const Move& m)
{
    const auto before = tour_cost(inst, t.nodes);
    if (!before)
        throw InfeasibleError("evaluate_move needs a feasible starting tour");
    const Tour moved = apply_move(t, m);
    const auto after = tour_cost(inst, moved.nodes);
    if (!after)
        return std::nullopt;
    return *after - *before;
}

namespace {

struct MoveTables
{
    std::vector<std::vector<Move>> by_kind;

    MoveTables(std::size_t n, std::span<const MoveKind> kinds)
    {
        for (MoveKind k : kinds)
            by_kind.push_back(enumerate_moves(n, k));
    }
};

// Scans in order; on success leaves the moved sequence in `scratch`.
std::optional<Move> scan(const Instance& inst, const std::vector<NodeId>& nodes, double cost,
                         const MoveTables& tables, std::vector<NodeId>& scratch, double& new_cost)
{
    for (const auto& moves : tables.by_kind)
        for (const Move& m : moves)
        {
            scratch = nodes;
            apply_move_in_place(scratch, m);
            const auto c = tour_cost(inst, scratch);
            if (c && *c - cost < -improvement_epsilon)
            {
                new_cost = *c;
                return m;
            }
        }
    return std::nullopt;
}

} // namespace

std::optional<Move> find_improving_move(const Instance& inst, const Tour& t, std::span<const MoveKind> kinds)
{
    const auto cost = tour_cost(inst, t.nodes);
    if (!cost)
        throw InfeasibleError("local search needs a feasible tour");
    const MoveTables tables(t.size(), kinds);
    std::vector<NodeId> scratch;
    double new_cost = 0.0;
    return scan(inst, t.nodes, *cost, tables, scratch, new_cost);
}

DescentResult descent(const Instance& inst, const Tour& t, std::span<const MoveKind> kinds)
{
    check_tour_shape(inst, t.nodes);
    const auto start = tour_cost(inst, t.nodes);
    if (!start)
        throw InfeasibleError("local search needs a feasible tour");

    DescentResult res{t, *start, 0, {*start}};
    const MoveTables tables(t.size(), kinds);
    std::vector<NodeId> scratch;
    double new_cost = 0.0;
    while (scan(inst, res.tour.nodes, res.cost, tables, scratch, new_cost))
    {
        res.tour.nodes.swap(scratch);
        res.cost = new_cost;
        ++res.moves_applied;
        res.cost_trace.push_back(new_cost);
    }
    return res;
}

} // namespace tatsp
