#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tatsp {

using NodeId = std::int32_t;
using ArcId = std::int32_t;
using RelationId = std::int32_t;

inline constexpr NodeId depot = 0;

struct Arc
{
    NodeId tail;
    NodeId head;
    double cost;
};

// Traversing `trigger` before `target` (with no later trigger in between)
// replaces the target's base cost by `cost`.
struct Relation
{
    ArcId trigger;
    ArcId target;
    double cost;
};

/// Directed TA-TSP instance. Immutable after construction; the constructor
/// validates every invariant and throws std::invalid_argument on violation.
class Instance
{
public:
    Instance(std::int32_t node_count, std::vector<Arc> arcs, std::vector<Relation> relations,
             std::string name = {});

    std::int32_t node_count() const noexcept { return node_count_; }
    std::size_t arc_count() const noexcept { return arcs_.size(); }
    std::size_t relation_count() const noexcept { return relations_.size(); }

    const std::vector<Arc>& arcs() const noexcept { return arcs_; }
    const std::vector<Relation>& relations() const noexcept { return relations_; }
    const Arc& arc(ArcId a) const { return arcs_[static_cast<std::size_t>(a)]; }
    const Relation& relation(RelationId r) const { return relations_[static_cast<std::size_t>(r)]; }
    const std::string& name() const noexcept { return name_; }

    std::optional<ArcId> find_arc(NodeId tail, NodeId head) const;
    bool has_arc(NodeId tail, NodeId head) const { return find_arc(tail, head).has_value(); }

    std::span<const RelationId> relations_by_target(ArcId a) const;
    std::span<const RelationId> relations_by_trigger(ArcId a) const;
    std::span<const ArcId> out_arcs(NodeId v) const;

private:
    std::int32_t node_count_;
    std::vector<Arc> arcs_;
    std::vector<Relation> relations_;
    std::string name_;

    std::vector<ArcId> arc_matrix_; // node_count² entries, -1 where no arc
    std::vector<std::vector<RelationId>> by_target_;
    std::vector<std::vector<RelationId>> by_trigger_;
    std::vector<std::vector<ArcId>> out_arcs_;
};

// Hamiltonian cycle as a node sequence starting at the depot. Arc at
// position p is (nodes[p], nodes[p+1]); the closing arc has position n-1.
struct Tour
{
    std::vector<NodeId> nodes;

    std::size_t size() const noexcept { return nodes.size(); }
    NodeId successor(std::size_t position) const { return nodes[(position + 1) % nodes.size()]; }

    friend bool operator==(const Tour&, const Tour&) = default;
    friend auto operator<=>(const Tour&, const Tour&) = default;
};

// Checks the permutation/depot shape only (not arc existence).
// Throws std::invalid_argument.
void check_tour_shape(const Instance& inst, std::span<const NodeId> nodes);

// True when the shape is valid and every tour arc, closing arc included, exists.
bool is_feasible(const Instance& inst, const Tour& tour);

Instance parse_instance(std::istream& in, std::string name = {});
Instance read_instance_file(const std::filesystem::path& path);
void write_instance(std::ostream& out, const Instance& inst);
void write_instance_file(const std::filesystem::path& path, const Instance& inst);

struct Solution
{
    Tour tour;
    std::optional<double> cost;
};

Solution parse_solution(std::istream& in);
Solution read_solution_file(const std::filesystem::path& path);
void write_solution(std::ostream& out, const Tour& tour, double cost);

// Shortest decimal text that parses back to the same double.
std::string format_number(double value);

} // namespace tatsp
