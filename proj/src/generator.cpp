#include "tatsp/generator.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "tatsp/errors.hpp"
#include "tatsp/rng.hpp"

namespace tatsp {

std::string_view to_string(Scenario s)
{
    switch (s)
    {
    case Scenario::Balanced: return "balanced";
    case Scenario::Increase: return "increase";
    case Scenario::Decrease: return "decrease";
    }
    return "balanced";
}

Scenario parse_scenario(std::string_view text)
{
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "balanced")
        return Scenario::Balanced;
    if (lower == "increase")
        return Scenario::Increase;
    if (lower == "decrease")
        return Scenario::Decrease;
    throw std::invalid_argument("unknown scenario '" + std::string(text) + "'");
}

std::pair<double, double> relation_cost_factors(Scenario s)
{
    switch (s)
    {
    case Scenario::Balanced: return {0.5, 2.0};
    case Scenario::Increase: return {1.0, 2.0};
    case Scenario::Decrease: return {0.5, 1.0};
    }
    return {0.5, 2.0};
}

std::string RgSpec::file_name() const
{
    std::ostringstream ss;
    ss << "rg_" << to_string(scenario) << "_n" << nodes << "_r" << relations << "_k" << replica << ".tatsp";
    return ss.str();
}

Instance generate_rg(const RgSpec& spec)
{
    if (spec.nodes < 2)
        throw std::domain_error("RG instances need at least 2 nodes");
    if (spec.relations < 0)
        throw std::domain_error("relation count must be nonnegative");
    const auto n = static_cast<std::int64_t>(spec.nodes);
    const std::int64_t m = n * (n - 1);
    if (spec.relations > m * (m - 1))
        throw std::domain_error("relation count " + std::to_string(spec.relations) + " exceeds the " +
                                std::to_string(m * (m - 1)) + " available (trigger, target) pairs");

    Rng rng(spec.seed);
    std::vector<std::array<double, 2>> points(static_cast<std::size_t>(n));
    for (auto& p : points)
    {
        p[0] = rng.uniform(0.0, rg_square_side);
        p[1] = rng.uniform(0.0, rg_square_side);
    }

    std::vector<Arc> arcs;
    arcs.reserve(static_cast<std::size_t>(m));
    for (NodeId i = 0; i < spec.nodes; ++i)
        for (NodeId j = 0; j < spec.nodes; ++j)
            if (i != j)
            {
                const auto& a = points[static_cast<std::size_t>(i)];
                const auto& b = points[static_cast<std::size_t>(j)];
                arcs.push_back({i, j, std::hypot(a[0] - b[0], a[1] - b[1])});
            }

    const auto [lo, hi] = relation_cost_factors(spec.scenario);
    std::vector<Relation> relations;
    relations.reserve(static_cast<std::size_t>(spec.relations));
    std::set<std::pair<ArcId, ArcId>> used;
    while (static_cast<std::int64_t>(relations.size()) < spec.relations)
    {
        const auto trigger = static_cast<ArcId>(rng.below(static_cast<std::uint64_t>(m)));
        const auto target = static_cast<ArcId>(rng.below(static_cast<std::uint64_t>(m)));
        if (trigger == target || !used.emplace(trigger, target).second)
            continue;
        const double c = arcs[static_cast<std::size_t>(target)].cost;
        relations.push_back({trigger, target, rng.uniform(lo * c, hi * c)});
    }

    std::string name = spec.file_name();
    name.erase(name.rfind('.'));
    return Instance(spec.nodes, std::move(arcs), std::move(relations), std::move(name));
}

std::vector<std::int64_t> rg_relation_counts(std::int32_t nodes)
{
    const std::int64_t n = nodes;
    return {n / 2, 2 * n, 4 * n, 8 * n, 16 * n};
}

std::vector<RgSpec> rg_suite(std::uint64_t base_seed)
{
    std::vector<RgSpec> specs;
    std::uint64_t ordinal = 0;
    for (Scenario s : {Scenario::Balanced, Scenario::Increase, Scenario::Decrease})
        for (std::int32_t n : {10, 15, 20, 25})
            for (std::int64_t k : rg_relation_counts(n))
                for (std::int32_t replica = 0; replica < 3; ++replica)
                    specs.push_back({s, n, k, replica, mix_seed(base_seed, ordinal++)});
    return specs;
}

void write_manifest(std::ostream& out, const std::vector<RgSpec>& specs)
{
    out << "scenario,n,relations,replica,seed,filename\n";
    for (const RgSpec& s : specs)
        out << to_string(s.scenario) << ',' << s.nodes << ',' << s.relations << ',' << s.replica << ','
            << s.seed << ',' << s.file_name() << '\n';
}

std::vector<ManifestEntry> parse_manifest(std::istream& in)
{
    std::vector<ManifestEntry> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || (line_no == 1 && line.rfind("scenario,", 0) == 0))
            continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        for (std::string f; std::getline(ss, f, ',');)
            fields.push_back(f);
        if (fields.size() != 6)
            throw ParseError("manifest row needs 6 fields", line_no);
        try
        {
            ManifestEntry e;
            e.spec.scenario = parse_scenario(fields[0]);
            e.spec.nodes = std::stoi(fields[1]);
            e.spec.relations = std::stoll(fields[2]);
            e.spec.replica = std::stoi(fields[3]);
            e.spec.seed = std::stoull(fields[4]);
            e.filename = fields[5];
            entries.push_back(std::move(e));
        }
        catch (const std::exception& ex)
        {
            throw ParseError(std::string("malformed manifest row: ") + ex.what(), line_no);
        }
    }
    return entries;
}

} // namespace tatsp
