#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tatsp/instance.hpp"

namespace tatsp {

// Relation-cost regime of the synthetic RG instances, relative to the
// target arc's base cost c: Balanced [c/2, 2c], Increase [c, 2c], Decrease [c/2, c].
enum class Scenario
{
    Balanced,
    Increase,
    Decrease
};

std::string_view to_string(Scenario s);
Scenario parse_scenario(std::string_view text); // case-insensitive; throws std::invalid_argument

// Sampling interval (as multiples of the target base cost).
std::pair<double, double> relation_cost_factors(Scenario s);

struct RgSpec
{
    Scenario scenario = Scenario::Balanced;
    std::int32_t nodes = 10;
    std::int64_t relations = 5;
    std::int32_t replica = 0;
    std::uint64_t seed = 0;

    std::string file_name() const;
};

inline constexpr double rg_square_side = 5000.0; // meters

/// Complete Euclidean digraph on `nodes` uniform points in the square plus
/// `relations` distinct (trigger, target) pairs of distinct arcs, each with a
/// cost drawn uniformly from the scenario interval. Deterministic per seed.
/// Throws std::domain_error when the pair capacity is exceeded.
Instance generate_rg(const RgSpec& spec);

// floor(n/2), 2n, 4n, 8n, 16n
std::vector<std::int64_t> rg_relation_counts(std::int32_t nodes);

/// The 180-instance RG suite: 3 scenarios x n in {10,15,20,25} x 5 relation
/// counts x 3 replicas, seeds derived from `base_seed` and the spec ordinal.
std::vector<RgSpec> rg_suite(std::uint64_t base_seed);

// CSV header `scenario,n,relations,replica,seed,filename` plus one row per spec.
void write_manifest(std::ostream& out, const std::vector<RgSpec>& specs);

struct ManifestEntry
{
    RgSpec spec;
    std::string filename;
};

std::vector<ManifestEntry> parse_manifest(std::istream& in);

} // namespace tatsp
