#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tatsp/instance.hpp"

namespace tatsp {

enum class MoveKind
{
    TwoOpt,
    Swap,
    Relocate
};

std::string_view to_string(MoveKind k); // twoopt, swap, relocate
MoveKind parse_move_kind(std::string_view text);

// Comma-separated, non-empty, order kept, no repeats.
std::vector<MoveKind> parse_neighborhoods(std::string_view text);

inline const std::vector<MoveKind> all_neighborhoods{MoveKind::TwoOpt, MoveKind::Swap, MoveKind::Relocate};

/// Positions refer to the tour before the move.
///   TwoOpt(i, j):   drop arcs at positions i and j (non-adjacent), reverse nodes i+1..j.
///   Swap(i, j):     exchange the nodes at positions i < j; the depot never moves.
///   Relocate(i, j): take the node at position i and reinsert it right after
///                   the node at position j (j != i, j != i-1).
struct Move
{
    MoveKind kind;
    int i;
    int j;

    friend bool operator==(const Move&, const Move&) = default;
};

bool is_valid_move(std::size_t tour_size, const Move& m);

// All moves of `kind` for a tour of `tour_size` nodes, lexicographic in (i, j).
std::vector<Move> enumerate_moves(std::size_t tour_size, MoveKind kind);

inline std::vector<Move> enumerate_moves(const Tour& t, MoveKind kind) { return enumerate_moves(t.size(), kind); }

// Throws std::out_of_range for indices outside the tour and std::invalid_argument
// for a structurally invalid move. The result may use arcs the instance lacks.
Tour apply_move(const Tour& t, const Move& m);
void apply_move_in_place(std::vector<NodeId>& nodes, const Move& m);

// Cost change by full re-evaluation of both tours; nullopt if the moved tour
// uses a missing arc.
std::optional<double> evaluate_move(const Instance& inst, const Tour& t, const Move& m);

inline constexpr double improvement_epsilon = 1e-9;

struct DescentResult
{
    Tour tour;
    double cost = 0.0;
    std::size_t moves_applied = 0;
    std::vector<double> cost_trace; // cost after each accepted move, starting with the input cost
};

/// Multi-neighbourhood first-improvement descent. Scans the neighbourhoods in
/// the given order; the first move with delta < -improvement_epsilon is
/// applied and the scan restarts from the first neighbourhood. Stops when a
/// full pass finds nothing. Throws InfeasibleError if `t` is infeasible.
DescentResult descent(const Instance& inst, const Tour& t, std::span<const MoveKind> kinds);

// First improving move over the given neighbourhoods, if any.
std::optional<Move> find_improving_move(const Instance& inst, const Tour& t, std::span<const MoveKind> kinds);

} // namespace tatsp
