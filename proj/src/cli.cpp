#include "tatsp/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tatsp/bench.hpp"
#include "tatsp/construction.hpp"
#include "tatsp/errors.hpp"
#include "tatsp/evaluation.hpp"
#include "tatsp/generator.hpp"
#include "tatsp/grasp.hpp"
#include "tatsp/instance.hpp"
#include "tatsp/mip_model.hpp"
#include "tatsp/oracle.hpp"

namespace tatsp::cli {

namespace fs = std::filesystem;

namespace {

// Thrown by handlers for flag combinations CLI11 cannot express.
struct UsageError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

std::uint64_t default_seed()
{
    if (const char* env = std::getenv("TATSP_SEED"))
    {
        try
        {
            return std::stoull(env);
        }
        catch (const std::exception&)
        {
            throw UsageError(std::string("TATSP_SEED is not an unsigned integer: ") + env);
        }
    }
    return 0;
}

void ensure_directory(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw std::runtime_error("cannot create directory " + dir.string() + ": " + ec.message());
}

std::string arc_text(const Instance& inst, ArcId a)
{
    return "(" + std::to_string(inst.arc(a).tail) + "," + std::to_string(inst.arc(a).head) + ")";
}

// ---------------------------------------------------------------------------

struct GenerateArgs
{
    std::string suite;
    std::string scenario;
    int nodes = 0;
    long long relations = -1;
    int replica = 0;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out)
{
    const std::uint64_t seed = a.seed ? *a.seed : default_seed();
    if (a.out_dir.empty())
        throw UsageError("--out is required");
    const bool single = !a.scenario.empty() || a.nodes > 0 || a.relations >= 0;
    if (!a.suite.empty() && single)
        throw UsageError("--suite cannot be combined with --scenario/--nodes/--relations");
    if (a.suite.empty() && !single)
        throw UsageError("give either --suite rg or --scenario, --nodes and --relations");

    const fs::path dir(a.out_dir);
    if (!a.suite.empty())
    {
        if (a.suite != "rg")
            throw UsageError("unknown suite '" + a.suite + "' (only 'rg')");
        const auto specs = rg_suite(seed);
        ensure_directory(dir);
        for (const RgSpec& s : specs)
            write_instance_file(dir / s.file_name(), generate_rg(s));
        std::ofstream manifest(dir / "manifest.csv");
        write_manifest(manifest, specs);
        if (!manifest)
            throw std::runtime_error("failed writing manifest");
        out << "wrote " << specs.size() << " instances and manifest.csv to " << dir.string() << '\n';
        return exit_ok;
    }

    if (a.scenario.empty() || a.nodes <= 0 || a.relations < 0)
        throw UsageError("single-instance mode needs --scenario, --nodes and --relations");
    RgSpec spec;
    try
    {
        spec.scenario = parse_scenario(a.scenario);
    }
    catch (const std::invalid_argument& e)
    {
        throw UsageError(e.what());
    }
    spec.nodes = a.nodes;
    spec.relations = a.relations;
    spec.replica = a.replica;
    spec.seed = seed;
    Instance inst = [&] {
        try
        {
            return generate_rg(spec);
        }
        catch (const std::domain_error& e)
        {
            throw UsageError(e.what());
        }
    }();
    ensure_directory(dir);
    write_instance_file(dir / spec.file_name(), inst);
    out << "wrote " << (dir / spec.file_name()).string() << '\n';
    return exit_ok;
}

// ---------------------------------------------------------------------------

struct SolveArgs
{
    std::string instance;
    std::string out;
    std::string summary;
    std::string construction = "mip-bias";
    std::optional<double> alpha;
    std::optional<double> beta;
    double time_limit = 60.0;
    double subsolver_time_limit = 2.0;
    std::size_t subsolver_max_starts = PoolLimits{}.max_starts;
    std::size_t pool_size = PoolLimits{}.pool_size;
    std::string neighborhoods = "twoopt,swap,relocate";
    std::optional<std::uint64_t> seed;
    int workers = 1;
    std::optional<std::size_t> max_iterations;
};

GraspConfig grasp_config(const SolveArgs& a)
{
    GraspConfig cfg;
    try
    {
        cfg.construction = ConstructionConfig::defaults_for(parse_heuristic(a.construction));
        cfg.neighborhoods = parse_neighborhoods(a.neighborhoods);
    }
    catch (const std::invalid_argument& e)
    {
        throw UsageError(e.what());
    }
    if (a.alpha)
        cfg.construction.alpha = *a.alpha;
    if (a.beta)
        cfg.construction.beta = *a.beta;
    cfg.construction.subsolver.limits.time_limit = std::chrono::duration<double>(a.subsolver_time_limit);
    cfg.construction.subsolver.limits.max_starts = a.subsolver_max_starts;
    cfg.construction.subsolver.limits.pool_size = a.pool_size;
    cfg.time_limit = std::chrono::duration<double>(a.time_limit);
    cfg.max_iterations = a.max_iterations;
    cfg.seed = a.seed ? *a.seed : default_seed();
    cfg.parallel_workers = a.workers;
    try
    {
        cfg.validate();
    }
    catch (const std::invalid_argument& e)
    {
        throw UsageError(e.what());
    }
    return cfg;
}

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err)
{
    const GraspConfig cfg = grasp_config(a);
    const Instance inst = read_instance_file(a.instance);
    const GraspResult res = run_grasp(inst, cfg);

    nlohmann::json summary = {{"instance", inst.name()}, {"config", to_json(cfg)}, {"result", to_json(res)}};
    if (a.summary.empty())
        out << summary.dump(2) << '\n';
    else
    {
        std::ofstream f(a.summary);
        f << summary.dump(2) << '\n';
        if (!f)
            throw std::runtime_error("failed writing " + a.summary);
    }

    if (!res.found())
    {
        err << "no solution found: " << res.construction_failures << " of " << res.iterations
            << " constructions failed\n";
        return exit_no_solution;
    }
    if (!a.out.empty())
    {
        std::ofstream f(a.out);
        write_solution(f, *res.best_tour, res.best_cost);
        if (!f)
            throw std::runtime_error("failed writing " + a.out);
    }
    else if (!a.summary.empty())
        write_solution(out, *res.best_tour, res.best_cost);
    return exit_ok;
}

// ---------------------------------------------------------------------------

int cmd_evaluate(const std::string& instance_path, const std::string& solution_path, std::ostream& out,
                 std::ostream& err)
{
    const Instance inst = read_instance_file(instance_path);
    const Solution sol = read_solution_file(solution_path);
    TourEvaluation ev;
    try
    {
        ev = evaluate_tour(inst, sol.tour);
    }
    catch (const std::invalid_argument& e)
    {
        err << "infeasible tour: " << e.what() << '\n';
        return exit_infeasible;
    }
    catch (const InfeasibleError& e)
    {
        err << "infeasible tour: " << e.what() << '\n';
        return exit_infeasible;
    }

    std::ostringstream active;
    bool any = false;
    for (std::size_t p = 0; p < ev.active_relations.size(); ++p)
        if (const auto r = ev.active_relations[p])
        {
            active << (any ? "; " : "") << 'r' << *r << " on arc " << arc_text(inst, inst.relation(*r).target);
            any = true;
        }
    out << "cost " << format_number(ev.total_cost) << ", active: " << (any ? active.str() : "none") << '\n';
    for (std::size_t p = 0; p < sol.tour.size(); ++p)
    {
        out << "  " << p << " (" << sol.tour.nodes[p] << "," << sol.tour.successor(p) << ") "
            << format_number(ev.arc_costs[p]);
        if (ev.active_relations[p])
            out << " via r" << *ev.active_relations[p];
        out << '\n';
    }
    if (sol.cost && std::abs(*sol.cost - ev.total_cost) > 1e-9)
        err << "note: file reports cost " << format_number(*sol.cost) << '\n';
    return exit_ok;
}

// ---------------------------------------------------------------------------

struct BenchArgs
{
    std::string manifest;
    std::string methods = "src,rgc,mip-add,mip-mul,mip-bias,grasp";
    std::string seeds;
    std::size_t trials = 10;
    double time_limit = 60.0;
    std::optional<std::size_t> max_iterations;
    double subsolver_time_limit = 2.0;
    std::size_t subsolver_max_starts = PoolLimits{}.max_starts;
    std::string best_known;
    std::optional<int> max_nodes;
    std::string scenario;
    int workers = 1;
    std::string out;
    std::string summary;
    bool no_timing = false;
};

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> items;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty())
            items.push_back(item);
    return items;
}

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err)
{
    bench::BenchConfig cfg;
    cfg.methods = split_list(a.methods);
    if (cfg.methods.empty())
        throw UsageError("--methods must name at least one method");
    for (const std::string& m : cfg.methods)
        if (!bench::is_known_method(m))
            throw UsageError("unknown method '" + m + "'");
    cfg.seeds.clear();
    if (a.seeds.empty())
        cfg.seeds.push_back(default_seed());
    else
        for (const std::string& s : split_list(a.seeds))
        {
            try
            {
                cfg.seeds.push_back(std::stoull(s));
            }
            catch (const std::exception&)
            {
                throw UsageError("bad seed '" + s + "'");
            }
        }
    cfg.trials = a.trials;
    cfg.time_limit_s = a.time_limit;
    cfg.max_iterations = a.max_iterations;
    cfg.subsolver_time_limit_s = a.subsolver_time_limit;
    cfg.subsolver_max_starts = a.subsolver_max_starts;
    cfg.workers = a.workers;
    if (cfg.trials < 1 || cfg.workers < 1 || !(cfg.time_limit_s > 0.0))
        throw UsageError("--trials, --workers and --time-limit must be positive");

    std::ifstream mf(a.manifest);
    if (!mf)
        throw std::runtime_error("cannot open manifest " + a.manifest);
    const auto entries = parse_manifest(mf);
    const fs::path base = fs::path(a.manifest).parent_path();
    std::optional<Scenario> only;
    if (!a.scenario.empty())
    {
        try
        {
            only = parse_scenario(a.scenario);
        }
        catch (const std::invalid_argument& e)
        {
            throw UsageError(e.what());
        }
    }

    std::vector<std::unique_ptr<Instance>> owned;
    std::vector<bench::NamedInstance> instances;
    for (const ManifestEntry& e : entries)
    {
        if (a.max_nodes && e.spec.nodes > *a.max_nodes)
            continue;
        if (only && e.spec.scenario != *only)
            continue;
        owned.push_back(std::make_unique<Instance>(read_instance_file(base / e.filename)));
        instances.push_back({owned.back()->name(), owned.back().get()});
    }

    std::map<std::string, double> best_known;
    if (!a.best_known.empty())
    {
        std::ifstream bf(a.best_known);
        if (!bf)
            throw std::runtime_error("cannot open best-known file " + a.best_known);
        best_known = bench::parse_best_known(bf);
    }
    else
    {
        for (const bench::NamedInstance& ni : instances)
        {
            if (ni.instance->node_count() > oracle::brute_force_max_nodes)
                continue;
            const auto res = oracle::brute_force_optimum(*ni.instance);
            if (res.feasible() && res.best_cost > 0.0)
                best_known[ni.name] = res.best_cost;
        }
    }

    const auto rows = bench::run_bench(instances, best_known, cfg, err);
    const bool timing = !a.no_timing;
    {
        std::ofstream f(a.out);
        bench::write_rows(f, rows, timing);
        if (!f)
            throw std::runtime_error("failed writing " + a.out);
    }
    const auto summary = bench::summarize(rows);
    bench::write_summary(out, summary, timing);
    if (!a.summary.empty())
    {
        std::ofstream f(a.summary);
        bench::write_summary(f, summary, timing);
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------

int cmd_export_mip(const std::string& instance_path, const std::string& out_path, std::size_t max_constraints,
                   std::ostream& out)
{
    const Instance inst = read_instance_file(instance_path);
    const mip::Model model = mip::build_model(inst, {max_constraints});
    std::ofstream f(out_path);
    mip::write_lp(model, f);
    if (!f)
        throw std::runtime_error("failed writing " + out_path);
    out << "wrote " << out_path << ": " << model.variables.size() << " variables, " << model.constraints.size()
        << " constraints\n";
    return exit_ok;
}

int cmd_check_mip(const std::string& instance_path, const std::string& solution_path, std::size_t max_constraints,
                  std::ostream& out, std::ostream& err)
{
    const Instance inst = read_instance_file(instance_path);
    const Solution sol = read_solution_file(solution_path);
    if (!is_feasible(inst, sol.tour))
    {
        err << "infeasible tour: not a Hamiltonian cycle over existing arcs\n";
        return exit_infeasible;
    }
    const mip::Model model = mip::build_model(inst, {max_constraints});
    const mip::CheckReport report = mip::check_assignment(model, mip::tour_assignment(inst, sol.tour));
    const double evaluated = evaluate_tour(inst, sol.tour).total_cost;
    out << "feasible " << (report.feasible ? "true" : "false") << '\n';
    out << "objective " << format_number(report.objective) << '\n';
    out << "evaluator " << format_number(evaluated) << '\n';
    for (const mip::Violation& v : report.violated)
        out << "violated " << mip::family_tag(v.family) << ' ' << v.row << " lhs " << format_number(v.lhs) << " rhs "
            << format_number(v.rhs) << '\n';
    for (const std::string& b : report.bound_violations)
        out << "bound " << b << '\n';
    return report.feasible ? exit_ok : exit_infeasible;
}

int cmd_oracle(const std::string& instance_path, std::ostream& out, std::ostream& err)
{
    const Instance inst = read_instance_file(instance_path);
    const oracle::OracleResult res = oracle::brute_force_optimum(inst);
    if (!res.feasible())
    {
        err << "no Hamiltonian cycle exists\n";
        out << "enumerated 0\n";
        return exit_no_solution;
    }
    out << "best_cost " << format_number(res.best_cost) << "\ntour";
    for (NodeId v : res.best_tour->nodes)
        out << ' ' << v;
    out << "\nenumerated " << res.enumerated << '\n';
    return exit_ok;
}

} // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Trigger arc TSP toolkit"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Generate synthetic RG instances");
    generate->add_option("--suite", gen.suite, "Whole suite (rg)");
    generate->add_option("--scenario", gen.scenario, "balanced | increase | decrease");
    generate->add_option("--nodes", gen.nodes, "Node count");
    generate->add_option("--relations", gen.relations, "Relation count");
    generate->add_option("--replica", gen.replica, "Replica index used in the file name");
    generate->add_option("--seed", gen.seed, "Seed (default $TATSP_SEED or 0)");
    generate->add_option("--out", gen.out_dir, "Output directory");

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "Run GRASP on an instance");
    solve_cmd->add_option("--instance", solve.instance, "Instance file")->required();
    solve_cmd->add_option("--out", solve.out, "Solution file to write");
    solve_cmd->add_option("--summary", solve.summary, "JSON summary file (default: stdout)");
    solve_cmd->add_option("--construction", solve.construction, "src | rgc | mip-add | mip-mul | mip-bias");
    solve_cmd->add_option("--alpha", solve.alpha, "RCL share, additive noise, or bias penalty weight");
    solve_cmd->add_option("--beta", solve.beta, "Multiplicative noise or bias distance exponent");
    solve_cmd->add_option("--time-limit", solve.time_limit, "GRASP wall-clock budget in seconds");
    solve_cmd->add_option("--subsolver-time-limit", solve.subsolver_time_limit, "TSP sub-solver budget in seconds");
    solve_cmd->add_option("--subsolver-max-starts", solve.subsolver_max_starts, "TSP sub-solver start cap");
    solve_cmd->add_option("--pool-size", solve.pool_size, "Tours kept from each sub-solve");
    solve_cmd->add_option("--neighborhoods", solve.neighborhoods, "Ordered subset of twoopt,swap,relocate");
    solve_cmd->add_option("--seed", solve.seed, "Seed (default $TATSP_SEED or 0)");
    solve_cmd->add_option("--workers", solve.workers, "Parallel GRASP workers");
    solve_cmd->add_option("--max-iterations", solve.max_iterations, "Iteration cap");

    std::string eval_instance, eval_solution;
    auto* evaluate = app.add_subcommand("evaluate", "Evaluate a solution file");
    evaluate->add_option("--instance", eval_instance, "Instance file")->required();
    evaluate->add_option("--solution", eval_solution, "Solution file")->required();

    BenchArgs bench_args;
    auto* bench_cmd = app.add_subcommand("bench", "Run methods over a manifest and report gaps");
    bench_cmd->add_option("--manifest", bench_args.manifest, "manifest.csv from generate")->required();
    bench_cmd->add_option("--methods", bench_args.methods, "Comma-separated methods");
    bench_cmd->add_option("--seeds", bench_args.seeds, "Comma-separated seeds (default $TATSP_SEED or 0)");
    bench_cmd->add_option("--trials", bench_args.trials, "Constructions per construction-only cell");
    bench_cmd->add_option("--time-limit", bench_args.time_limit, "GRASP budget per cell in seconds");
    bench_cmd->add_option("--max-iterations", bench_args.max_iterations, "GRASP iteration cap per cell");
    bench_cmd->add_option("--subsolver-time-limit", bench_args.subsolver_time_limit, "TSP sub-solver budget");
    bench_cmd->add_option("--subsolver-max-starts", bench_args.subsolver_max_starts, "TSP sub-solver start cap");
    bench_cmd->add_option("--best-known", bench_args.best_known, "CSV instance,best_cost");
    bench_cmd->add_option("--max-nodes", bench_args.max_nodes, "Skip instances with more nodes");
    bench_cmd->add_option("--scenario", bench_args.scenario, "Only this scenario");
    bench_cmd->add_option("--workers", bench_args.workers, "Concurrent cells");
    bench_cmd->add_option("--out", bench_args.out, "Row CSV")->required();
    bench_cmd->add_option("--summary", bench_args.summary, "Per-method summary CSV");
    bench_cmd->add_flag("--no-timing", bench_args.no_timing, "Leave wall-clock columns empty");

    std::string mip_instance, mip_out, mip_solution;
    std::size_t max_constraints = mip::ModelLimits{}.max_constraints;
    auto* export_mip = app.add_subcommand("export-mip", "Write the MIP model in LP format");
    export_mip->add_option("--instance", mip_instance, "Instance file")->required();
    export_mip->add_option("--out", mip_out, "LP file")->required();
    export_mip->add_option("--max-constraints", max_constraints, "Model size cap");

    auto* check_mip = app.add_subcommand("check-mip", "Check a tour against the MIP model");
    check_mip->add_option("--instance", mip_instance, "Instance file")->required();
    check_mip->add_option("--solution", mip_solution, "Solution file")->required();
    check_mip->add_option("--max-constraints", max_constraints, "Model size cap");

    std::string oracle_instance;
    auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive optimum for small instances");
    oracle_cmd->add_option("--instance", oracle_instance, "Instance file")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try
    {
        if (generate->parsed())
            return cmd_generate(gen, out);
        if (solve_cmd->parsed())
            return cmd_solve(solve, out, err);
        if (evaluate->parsed())
            return cmd_evaluate(eval_instance, eval_solution, out, err);
        if (bench_cmd->parsed())
            return cmd_bench(bench_args, out, err);
        if (export_mip->parsed())
            return cmd_export_mip(mip_instance, mip_out, max_constraints, out);
        if (check_mip->parsed())
            return cmd_check_mip(mip_instance, mip_solution, max_constraints, out, err);
        if (oracle_cmd->parsed())
            return cmd_oracle(oracle_instance, out, err);
    }
    catch (const UsageError& e)
    {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const ParseError& e)
    {
        err << "parse error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const CapabilityError& e)
    {
        err << "too large: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const InfeasibleError& e)
    {
        err << "infeasible: " << e.what() << '\n';
        return exit_infeasible;
    }
    catch (const std::exception& e)
    {
        err << "error: " << e.what() << '\n';
        return exit_failure;
    }
    return exit_usage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    std::vector<std::string> storage{"tatsp"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (std::string& s : storage)
        argv.push_back(s.data());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace tatsp::cli
