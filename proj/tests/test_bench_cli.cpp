#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "tatsp/bench.hpp"
#include "tatsp/cli.hpp"
#include "tatsp/generator.hpp"

using namespace tatsp;
namespace fs = std::filesystem;

namespace {

struct Run
{
    int code;
    std::string out;
    std::string err;
};

Run tatsp_cli(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / ("tatsp_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

// Small manifest of n = 6 RG instances.
fs::path small_manifest(const fs::path& dir)
{
    std::vector<RgSpec> specs;
    for (int k = 0; k < 3; ++k)
        specs.push_back({Scenario::Balanced, 6, 12, k, mix_seed(5, static_cast<std::uint64_t>(k))});
    for (const RgSpec& s : specs)
        write_instance_file(dir / s.file_name(), generate_rg(s));
    std::ofstream mf(dir / "manifest.csv");
    write_manifest(mf, specs);
    return dir / "manifest.csv";
}

} // namespace

TEST_CASE("generate")
{
    const fs::path dir = scratch_dir("generate");
    const Run one = tatsp_cli({"generate", "--scenario", "increase", "--nodes", "10", "--relations", "20", "--seed", "3",
                               "--out", dir.string()});
    CHECK(one.code == cli::exit_ok);
    const Instance inst = read_instance_file(dir / "rg_increase_n10_r20_k0.tatsp");
    CHECK(inst.relation_count() == 20);

    CHECK(tatsp_cli({"generate", "--out", dir.string()}).code == cli::exit_usage);
    CHECK(tatsp_cli({"generate", "--suite", "xx", "--out", dir.string()}).code == cli::exit_usage);
    CHECK(tatsp_cli({"generate", "--scenario", "flat", "--nodes", "5", "--relations", "1", "--out", dir.string()}).code ==
          cli::exit_usage);
    CHECK(tatsp_cli({"generate", "--scenario", "balanced", "--nodes", "3", "--relations", "99", "--out", dir.string()})
              .code == cli::exit_usage);
    CHECK(tatsp_cli({"frobnicate"}).code == cli::exit_usage);
    CHECK(tatsp_cli({}).code == cli::exit_usage);
}

TEST_CASE("generate the full suite")
{
    const fs::path dir = scratch_dir("suite");
    const Run r = tatsp_cli({"generate", "--suite", "rg", "--seed", "1", "--out", dir.string()});
    REQUIRE(r.code == cli::exit_ok);
    std::ifstream mf(dir / "manifest.csv");
    const auto entries = parse_manifest(mf);
    CHECK(entries.size() == 180);
    for (const auto& e : entries)
        CHECK(fs::exists(dir / e.filename));
}

TEST_CASE("solve, evaluate, export and check")
{
    const fs::path dir = scratch_dir("solve");
    spit(dir / "fix_b.tatsp", fixtures::fix_b_text);
    const std::string inst = (dir / "fix_b.tatsp").string();
    const std::string sol = (dir / "fix_b.sol").string();

    const Run s = tatsp_cli({"solve", "--instance", inst, "--out", sol, "--max-iterations", "3", "--seed", "1"});
    REQUIRE(s.code == cli::exit_ok);
    CHECK(s.out.find("\"best_cost\": 4.0") != std::string::npos);
    CHECK(slurp(sol).find("\ncost 4\n") != std::string::npos);
    const Run solved = tatsp_cli({"evaluate", "--instance", inst, "--solution", sol});
    CHECK(solved.code == cli::exit_ok);
    CHECK(solved.out.rfind("cost 4, ", 0) == 0);
    CHECK(solved.err.empty());

    spit(dir / "best.sol", "0 1 2 3\n");
    const Run e = tatsp_cli({"evaluate", "--instance", inst, "--solution", (dir / "best.sol").string()});
    CHECK(e.code == cli::exit_ok);
    CHECK(e.out.rfind("cost 4, active: r0 on arc (2,3)\n", 0) == 0);
    CHECK(e.out.find("  2 (2,3) 1 via r0\n") != std::string::npos);

    spit(dir / "other.sol", "0 2 3 1\n");
    const Run e2 = tatsp_cli({"evaluate", "--instance", inst, "--solution", (dir / "other.sol").string()});
    CHECK(e2.out.rfind("cost 8, active: none\n", 0) == 0);

    const std::string lp = (dir / "fix_b.lp").string();
    const Run x = tatsp_cli({"export-mip", "--instance", inst, "--out", lp});
    CHECK(x.code == cli::exit_ok);
    CHECK(slurp(lp).find("- 4 y_r0") != std::string::npos);
    CHECK(tatsp_cli({"export-mip", "--instance", inst, "--out", lp, "--max-constraints", "5"}).code == cli::exit_usage);

    const Run c = tatsp_cli({"check-mip", "--instance", inst, "--solution", sol});
    CHECK(c.code == cli::exit_ok);
    CHECK(c.out == "feasible true\nobjective 4\nevaluator 4\n");

    const Run o = tatsp_cli({"oracle", "--instance", inst});
    CHECK(o.code == cli::exit_ok);
    CHECK(o.out == "best_cost 4\ntour 0 1 2 3\nenumerated 6\n");
}

TEST_CASE("error exit codes")
{
    const fs::path dir = scratch_dir("errors");
    spit(dir / "sparse.tatsp", "TATSP 1\n3 2 0\nA 0 1 1\nA 1 2 1\n");
    spit(dir / "bad.tatsp", "TATSP 1\n3 6 1\nA 0 1 1\nA 0 2 1\nA 1 0 1\nA 1 2 1\nA 2 0 1\nA 2 1 1\nR 7 2 1.0\n");
    spit(dir / "a.sol", "0 1 2\n");
    const std::string sparse = (dir / "sparse.tatsp").string();

    const Run ev = tatsp_cli({"evaluate", "--instance", sparse, "--solution", (dir / "a.sol").string()});
    CHECK(ev.code == cli::exit_infeasible);
    CHECK(ev.err.find("(2,0)") != std::string::npos);

    const Run s = tatsp_cli({"solve", "--instance", sparse, "--construction", "src", "--max-iterations", "3"});
    CHECK(s.code == cli::exit_no_solution);

    const Run bad = tatsp_cli({"oracle", "--instance", (dir / "bad.tatsp").string()});
    CHECK(bad.code == cli::exit_usage);
    CHECK(bad.err.find("dangling relation reference, line 9") != std::string::npos);

    CHECK(tatsp_cli({"oracle", "--instance", (dir / "missing.tatsp").string()}).code == cli::exit_failure);
    CHECK(tatsp_cli({"oracle", "--instance", sparse}).code == cli::exit_no_solution);
    CHECK(tatsp_cli({"solve", "--instance", sparse, "--neighborhoods", "swap,swap"}).code == cli::exit_usage);
}

TEST_CASE("bench is reproducible and gaps are non-negative against the oracle")
{
    const fs::path dir = scratch_dir("bench");
    const std::string manifest = small_manifest(dir).string();
    const std::vector<std::string> base{"bench", "--manifest", manifest, "--methods", "src,rgc,mip-bias,grasp",
                                        "--seeds", "1,2", "--trials", "3", "--max-iterations", "3",
                                        "--subsolver-max-starts", "10", "--no-timing"};
    auto first = base, second = base;
    first.insert(first.end(), {"--out", (dir / "a.csv").string()});
    second.insert(second.end(), {"--out", (dir / "b.csv").string(), "--workers", "2"});
    const Run r1 = tatsp_cli(first);
    const Run r2 = tatsp_cli(second);
    REQUIRE(r1.code == cli::exit_ok);
    REQUIRE(r2.code == cli::exit_ok);
    const std::string a = slurp(dir / "a.csv");
    CHECK(a == slurp(dir / "b.csv"));
    CHECK(r1.out == r2.out);

    std::istringstream in(a);
    std::string line;
    std::getline(in, line);
    CHECK(line == "instance,method,seed,cost,best_known,gap_pct,time_ms,success");
    int rows = 0;
    while (std::getline(in, line))
    {
        ++rows;
        std::vector<std::string> f;
        std::stringstream ss(line);
        for (std::string x; std::getline(ss, x, ',');)
            f.push_back(x);
        f.resize(8);
        CHECK(f[6].empty());
        if (f[7] == "1")
        {
            REQUIRE_FALSE(f[5].empty());
            CHECK(std::stod(f[5]) >= -1e-9);
        }
    }
    CHECK(rows == 3 * 4 * 2);
}

TEST_CASE("summary statistics")
{
    std::vector<bench::BenchRow> rows;
    for (double g : {1.0, 2.0, 3.0})
        rows.push_back({"i", "m", 0, 100.0 + g, 100.0, g, 1000, true});
    rows.push_back({"i", "m", 1, std::nullopt, 100.0, std::nullopt, 1000, false});
    const auto s = bench::summarize(rows);
    REQUIRE(s.size() == 1);
    CHECK(s[0].cells == 4);
    CHECK(s[0].successes == 3);
    CHECK(s[0].gap_mean == doctest::Approx(2.0));
    CHECK(s[0].gap_std == doctest::Approx(1.0));
    CHECK(bench::mean_pm_std(2.0, 1.0) == "2.00 ± 1.00");

    std::istringstream bk("instance,best_cost\nfoo,12.5\nbar,3\n");
    const auto m = bench::parse_best_known(bk);
    CHECK(m.at("foo") == 12.5);
    CHECK(m.at("bar") == 3.0);
    CHECK(bench::is_known_method("grasp-no-swap"));
    CHECK_FALSE(bench::is_known_method("grasp-no-oropt"));
}
