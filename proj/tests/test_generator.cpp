#include <doctest.h>

#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "tatsp/generator.hpp"

using namespace tatsp;

TEST_CASE("small balanced instance")
{
    const Instance inst = generate_rg({Scenario::Balanced, 10, 5, 0, 1});
    CHECK(inst.node_count() == 10);
    CHECK(inst.arc_count() == 90);
    CHECK(inst.relation_count() == 5);
}

TEST_CASE("scenario names")
{
    CHECK(to_string(Scenario::Increase) == "increase");
    CHECK(parse_scenario("Balanced") == Scenario::Balanced);
    CHECK(parse_scenario("DECREASE") == Scenario::Decrease);
    CHECK_THROWS_AS(parse_scenario("flat"), std::invalid_argument);
    CHECK(RgSpec{Scenario::Decrease, 15, 30, 2, 0}.file_name() == "rg_decrease_n15_r30_k2.tatsp");
}

TEST_CASE("relation costs stay inside the scenario interval")
{
    for (Scenario s : {Scenario::Balanced, Scenario::Increase, Scenario::Decrease})
    {
        const auto [lo, hi] = relation_cost_factors(s);
        const Instance inst = generate_rg({s, 12, 16 * 12, 0, 7});
        std::set<std::pair<ArcId, ArcId>> pairs;
        for (const Relation& r : inst.relations())
        {
            const double c = inst.arc(r.target).cost;
            CHECK(r.cost >= lo * c - 1e-9);
            CHECK(r.cost <= hi * c + 1e-9);
            CHECK(r.trigger != r.target);
            CHECK(pairs.emplace(r.trigger, r.target).second);
        }
    }
}

TEST_CASE("arc costs are symmetric Euclidean distances")
{
    const Instance inst = generate_rg({Scenario::Balanced, 15, 10, 0, 3});
    for (const Arc& a : inst.arcs())
    {
        CHECK(a.cost >= 0.0);
        CHECK(a.cost <= rg_square_side * std::sqrt(2.0));
        CHECK(inst.arc(*inst.find_arc(a.head, a.tail)).cost == a.cost);
    }
}

TEST_CASE("determinism")
{
    const RgSpec spec{Scenario::Increase, 10, 40, 1, 12345};
    const Instance a = generate_rg(spec);
    const Instance b = generate_rg(spec);
    std::ostringstream sa, sb;
    write_instance(sa, a);
    write_instance(sb, b);
    CHECK(sa.str() == sb.str());

    RgSpec other = spec;
    other.seed = 12346;
    std::ostringstream sc;
    write_instance(sc, generate_rg(other));
    CHECK(sa.str() != sc.str());
}

TEST_CASE("capacity")
{
    CHECK_THROWS_AS(generate_rg({Scenario::Balanced, 3, 31, 0, 1}), std::domain_error);
    CHECK(generate_rg({Scenario::Balanced, 3, 30, 0, 1}).relation_count() == 30);
}

TEST_CASE("suite layout")
{
    CHECK(rg_relation_counts(10) == std::vector<std::int64_t>{5, 20, 40, 80, 160});
    CHECK(rg_relation_counts(15) == std::vector<std::int64_t>{7, 30, 60, 120, 240});
    const auto suite = rg_suite(42);
    CHECK(suite.size() == 180);
    std::map<Scenario, int> per;
    std::set<std::string> names;
    std::set<std::uint64_t> seeds;
    for (const auto& s : suite)
    {
        ++per[s.scenario];
        names.insert(s.file_name());
        seeds.insert(s.seed);
    }
    CHECK(per[Scenario::Balanced] == 60);
    CHECK(per[Scenario::Increase] == 60);
    CHECK(per[Scenario::Decrease] == 60);
    CHECK(names.size() == 180);
    CHECK(seeds.size() == 180);
}

TEST_CASE("balanced relation cost mean")
{
    // E[U(c/2, 2c)] / c = 1.25
    double ratio_sum = 0.0;
    std::size_t count = 0;
    for (std::uint64_t seed = 0; count < 10000; ++seed)
    {
        const Instance inst = generate_rg({Scenario::Balanced, 10, 1000, 0, seed});
        for (const Relation& r : inst.relations())
        {
            ratio_sum += r.cost / inst.arc(r.target).cost;
            ++count;
        }
    }
    CHECK(std::abs(ratio_sum / static_cast<double>(count) - 1.25) <= 0.02 * 1.25);
}

TEST_CASE("manifest round trip")
{
    const auto suite = rg_suite(9);
    std::stringstream ss;
    write_manifest(ss, suite);
    const auto entries = parse_manifest(ss);
    REQUIRE(entries.size() == suite.size());
    for (std::size_t i = 0; i < suite.size(); ++i)
    {
        CHECK(entries[i].spec.scenario == suite[i].scenario);
        CHECK(entries[i].spec.nodes == suite[i].nodes);
        CHECK(entries[i].spec.relations == suite[i].relations);
        CHECK(entries[i].spec.replica == suite[i].replica);
        CHECK(entries[i].spec.seed == suite[i].seed);
        CHECK(entries[i].filename == suite[i].file_name());
    }
}
