#include "tatsp/instance.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "tatsp/errors.hpp"

namespace tatsp {

namespace {

std::string arc_text(NodeId tail, NodeId head)
{
    return "(" + std::to_string(tail) + "," + std::to_string(head) + ")";
}

} // namespace

Instance::Instance(std::int32_t node_count, std::vector<Arc> arcs, std::vector<Relation> relations,
                   std::string name)
    : node_count_(node_count), arcs_(std::move(arcs)), relations_(std::move(relations)), name_(std::move(name))
{
    if (node_count_ <= 0)
        throw std::invalid_argument("node count must be positive");

    const auto n = static_cast<std::size_t>(node_count_);
    arc_matrix_.assign(n * n, -1);
    out_arcs_.resize(n);
    for (std::size_t a = 0; a < arcs_.size(); ++a)
    {
        const Arc& arc = arcs_[a];
        if (arc.tail < 0 || arc.tail >= node_count_ || arc.head < 0 || arc.head >= node_count_)
            throw std::invalid_argument("arc " + std::to_string(a) + " has an unknown node id");
        if (arc.tail == arc.head)
            throw std::invalid_argument("arc " + std::to_string(a) + " is a self-loop");
        if (!(arc.cost >= 0.0) || !std::isfinite(arc.cost))
            throw std::invalid_argument("arc " + std::to_string(a) + " has a negative or non-finite cost");
        ArcId& slot = arc_matrix_[static_cast<std::size_t>(arc.tail) * n + static_cast<std::size_t>(arc.head)];
        if (slot >= 0)
            throw std::invalid_argument("duplicate arc " + arc_text(arc.tail, arc.head));
        slot = static_cast<ArcId>(a);
        out_arcs_[static_cast<std::size_t>(arc.tail)].push_back(static_cast<ArcId>(a));
    }

    by_target_.resize(arcs_.size());
    by_trigger_.resize(arcs_.size());
    std::set<std::pair<ArcId, ArcId>> seen;
    const auto arc_count = static_cast<ArcId>(arcs_.size());
    for (std::size_t r = 0; r < relations_.size(); ++r)
    {
        const Relation& rel = relations_[r];
        if (rel.trigger < 0 || rel.trigger >= arc_count || rel.target < 0 || rel.target >= arc_count)
            throw std::invalid_argument("relation " + std::to_string(r) + " references a missing arc");
        if (rel.trigger == rel.target)
            throw std::invalid_argument("relation " + std::to_string(r) + " is a self-relation");
        if (!(rel.cost >= 0.0) || !std::isfinite(rel.cost))
            throw std::invalid_argument("relation " + std::to_string(r) + " has a negative or non-finite cost");
        if (!seen.emplace(rel.trigger, rel.target).second)
            throw std::invalid_argument("duplicate relation " + std::to_string(rel.trigger) + "->" +
                                        std::to_string(rel.target));
        by_target_[static_cast<std::size_t>(rel.target)].push_back(static_cast<RelationId>(r));
        by_trigger_[static_cast<std::size_t>(rel.trigger)].push_back(static_cast<RelationId>(r));
    }
}

std::optional<ArcId> Instance::find_arc(NodeId tail, NodeId head) const
{
    if (tail < 0 || head < 0 || tail >= node_count_ || head >= node_count_)
        return std::nullopt;
    const ArcId a = arc_matrix_[static_cast<std::size_t>(tail) * static_cast<std::size_t>(node_count_) +
                                static_cast<std::size_t>(head)];
    if (a < 0)
        return std::nullopt;
    return a;
}

std::span<const RelationId> Instance::relations_by_target(ArcId a) const
{
    return by_target_[static_cast<std::size_t>(a)];
}

std::span<const RelationId> Instance::relations_by_trigger(ArcId a) const
{
    return by_trigger_[static_cast<std::size_t>(a)];
}

std::span<const ArcId> Instance::out_arcs(NodeId v) const
{
    return out_arcs_[static_cast<std::size_t>(v)];
}

void check_tour_shape(const Instance& inst, std::span<const NodeId> nodes)
{
    const auto n = static_cast<std::size_t>(inst.node_count());
    if (nodes.size() != n)
        throw std::invalid_argument("tour has " + std::to_string(nodes.size()) + " nodes, instance has " +
                                    std::to_string(n));
    if (nodes.front() != depot)
        throw std::invalid_argument("tour must start at the depot");
    std::vector<bool> seen(n, false);
    for (NodeId v : nodes)
    {
        if (v < 0 || static_cast<std::size_t>(v) >= n)
            throw std::invalid_argument("tour contains unknown node " + std::to_string(v));
        if (seen[static_cast<std::size_t>(v)])
            throw std::invalid_argument("tour visits node " + std::to_string(v) + " twice");
        seen[static_cast<std::size_t>(v)] = true;
    }
}

bool is_feasible(const Instance& inst, const Tour& tour)
{
    try
    {
        check_tour_shape(inst, tour.nodes);
    }
    catch (const std::invalid_argument&)
    {
        return false;
    }
    for (std::size_t p = 0; p < tour.size(); ++p)
        if (!inst.has_arc(tour.nodes[p], tour.successor(p)))
            return false;
    return true;
}

std::string format_number(double value)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------------------
// Text formats

namespace {

struct LineReader
{
    std::istream& in;
    std::size_t line_no = 0;

    // Next non-blank line with comments stripped, split into tokens.
    bool next(std::vector<std::string>& tokens)
    {
        std::string line;
        while (std::getline(in, line))
        {
            ++line_no;
            if (const auto hash = line.find('#'); hash != std::string::npos)
                line.erase(hash);
            std::istringstream ss(line);
            tokens.clear();
            for (std::string tok; ss >> tok;)
                tokens.push_back(tok);
            if (!tokens.empty())
                return true;
        }
        return false;
    }
};

template <typename T>
bool parse_token(const std::string& tok, T& out)
{
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    const auto res = std::from_chars(first, last, out);
    if (res.ec != std::errc{} || res.ptr != last)
        return false;
    if constexpr (std::is_floating_point_v<T>)
        return std::isfinite(out);
    return true;
}

} // namespace

Instance parse_instance(std::istream& in, std::string name)
{
    LineReader reader{in};
    std::vector<std::string> tok;

    if (!reader.next(tok) || tok.size() != 2 || tok[0] != "TATSP" || tok[1] != "1")
        throw ParseError("malformed header (expected 'TATSP 1')", reader.line_no);

    std::int64_t n = 0, m = 0, k = 0;
    if (!reader.next(tok) || tok.size() != 3 || !parse_token(tok[0], n) || !parse_token(tok[1], m) ||
        !parse_token(tok[2], k) || n <= 0 || m < 0 || k < 0 || n > (1 << 20))
        throw ParseError("malformed size line (expected '<nodes> <arcs> <relations>')", reader.line_no);

    std::vector<Arc> arcs;
    arcs.reserve(static_cast<std::size_t>(m));
    std::set<std::pair<NodeId, NodeId>> arc_keys;
    for (std::int64_t i = 0; i < m; ++i)
    {
        if (!reader.next(tok))
            throw ParseError("expected " + std::to_string(m) + " arcs, found " + std::to_string(i),
                             reader.line_no);
        std::int64_t tail = 0, head = 0;
        double cost = 0.0;
        if (tok.size() != 4 || tok[0] != "A" || !parse_token(tok[1], tail) || !parse_token(tok[2], head) ||
            !parse_token(tok[3], cost))
            throw ParseError("malformed arc line", reader.line_no);
        if (tail < 0 || tail >= n || head < 0 || head >= n)
            throw ParseError("unknown node id", reader.line_no);
        if (tail == head)
            throw ParseError("self-loop arc", reader.line_no);
        if (cost < 0.0)
            throw ParseError("negative arc cost", reader.line_no);
        if (!arc_keys.emplace(static_cast<NodeId>(tail), static_cast<NodeId>(head)).second)
            throw ParseError("duplicate arc " + arc_text(static_cast<NodeId>(tail), static_cast<NodeId>(head)),
                             reader.line_no);
        arcs.push_back({static_cast<NodeId>(tail), static_cast<NodeId>(head), cost});
    }

    std::vector<Relation> relations;
    relations.reserve(static_cast<std::size_t>(k));
    std::set<std::pair<ArcId, ArcId>> rel_keys;
    for (std::int64_t i = 0; i < k; ++i)
    {
        if (!reader.next(tok))
            throw ParseError("expected " + std::to_string(k) + " relations, found " + std::to_string(i),
                             reader.line_no);
        std::int64_t trigger = 0, target = 0;
        double cost = 0.0;
        if (tok.size() != 4 || tok[0] != "R" || !parse_token(tok[1], trigger) || !parse_token(tok[2], target) ||
            !parse_token(tok[3], cost))
            throw ParseError("malformed relation line", reader.line_no);
        if (trigger < 0 || trigger >= m || target < 0 || target >= m)
            throw ParseError("dangling relation reference", reader.line_no);
        if (trigger == target)
            throw ParseError("self-relation", reader.line_no);
        if (cost < 0.0)
            throw ParseError("negative relation cost", reader.line_no);
        if (!rel_keys.emplace(static_cast<ArcId>(trigger), static_cast<ArcId>(target)).second)
            throw ParseError("duplicate relation", reader.line_no);
        relations.push_back({static_cast<ArcId>(trigger), static_cast<ArcId>(target), cost});
    }

    if (reader.next(tok))
        throw ParseError("unexpected content after declared arcs and relations", reader.line_no);

    return Instance(static_cast<std::int32_t>(n), std::move(arcs), std::move(relations), std::move(name));
}

Instance read_instance_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open instance file " + path.string());
    return parse_instance(in, path.stem().string());
}

void write_instance(std::ostream& out, const Instance& inst)
{
    out << "TATSP 1\n";
    if (!inst.name().empty())
        out << "# " << inst.name() << '\n';
    out << inst.node_count() << ' ' << inst.arc_count() << ' ' << inst.relation_count() << '\n';
    for (const Arc& a : inst.arcs())
        out << "A " << a.tail << ' ' << a.head << ' ' << format_number(a.cost) << '\n';
    for (const Relation& r : inst.relations())
        out << "R " << r.trigger << ' ' << r.target << ' ' << format_number(r.cost) << '\n';
}

void write_instance_file(const std::filesystem::path& path, const Instance& inst)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write instance file " + path.string());
    write_instance(out, inst);
    if (!out)
        throw std::runtime_error("failed writing " + path.string());
}

Solution parse_solution(std::istream& in)
{
    LineReader reader{in};
    std::vector<std::string> tok;
    if (!reader.next(tok))
        throw ParseError("empty solution file", 0);

    Solution sol;
    for (const std::string& t : tok)
    {
        NodeId v = 0;
        if (!parse_token(t, v))
            throw ParseError("malformed node sequence", reader.line_no);
        sol.tour.nodes.push_back(v);
    }

    if (reader.next(tok))
    {
        double cost = 0.0;
        if (tok.size() != 2 || tok[0] != "cost" || !parse_token(tok[1], cost))
            throw ParseError("malformed cost line (expected 'cost <value>')", reader.line_no);
        sol.cost = cost;
        if (reader.next(tok))
            throw ParseError("unexpected content after cost line", reader.line_no);
    }
    return sol;
}

Solution read_solution_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open solution file " + path.string());
    return parse_solution(in);
}

void write_solution(std::ostream& out, const Tour& tour, double cost)
{
    for (std::size_t i = 0; i < tour.size(); ++i)
        out << (i ? " " : "") << tour.nodes[i];
    out << "\ncost " << format_number(cost) << '\n';
}

} // namespace tatsp
