#include "tatsp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "tatsp/construction.hpp"
#include "tatsp/errors.hpp"
#include "tatsp/evaluation.hpp"
#include "tatsp/grasp.hpp"
#include "tatsp/rng.hpp"

namespace tatsp::bench {

namespace {

const std::vector<std::string> grasp_methods{"grasp", "grasp-no-twoopt", "grasp-no-swap", "grasp-no-relocate"};

bool is_construction(const std::string& name)
{
    try
    {
        parse_heuristic(name);
        return true;
    }
    catch (const std::invalid_argument&)
    {
        return false;
    }
}

SubsolverConfig subsolver_for(const BenchConfig& cfg)
{
    SubsolverConfig sub;
    sub.limits.time_limit = std::chrono::duration<double>(cfg.subsolver_time_limit_s);
    sub.limits.max_starts = cfg.subsolver_max_starts;
    return sub;
}

std::optional<double> run_construction(const Instance& inst, const std::string& method, std::uint64_t seed,
                                       const BenchConfig& cfg)
{
    ConstructionConfig cc = ConstructionConfig::defaults_for(parse_heuristic(method));
    cc.subsolver = subsolver_for(cfg);
    std::optional<double> best;
    for (std::size_t t = 0; t < cfg.trials; ++t)
    {
        Rng rng(mix_seed(seed, t));
        const ConstructionResult res = construct(inst, cc, rng);
        if (res && (!best || res.cost < *best))
            best = res.cost;
    }
    return best;
}

std::optional<double> run_grasp_method(const Instance& inst, const std::string& method, std::uint64_t seed,
                                       const BenchConfig& cfg)
{
    GraspConfig gc;
    gc.construction.subsolver = subsolver_for(cfg);
    gc.time_limit = std::chrono::duration<double>(cfg.time_limit_s);
    gc.max_iterations = cfg.max_iterations;
    gc.seed = seed;
    if (method != "grasp")
    {
        const MoveKind dropped = parse_move_kind(method.substr(std::string("grasp-no-").size()));
        std::erase(gc.neighborhoods, dropped);
    }
    const GraspResult res = run_grasp(inst, gc);
    if (!res.found())
        return std::nullopt;
    return res.best_cost;
}

std::string csv_number(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

} // namespace

bool is_known_method(const std::string& name)
{
    return is_construction(name) ||
           std::find(grasp_methods.begin(), grasp_methods.end(), name) != grasp_methods.end();
}

std::vector<BenchRow> run_bench(const std::vector<NamedInstance>& instances,
                                const std::map<std::string, double>& best_known, const BenchConfig& cfg,
                                std::ostream& warnings)
{
    for (const std::string& m : cfg.methods)
        if (!is_known_method(m))
            throw std::invalid_argument("unknown bench method '" + m + "'");
    if (cfg.workers < 1)
        throw std::invalid_argument("workers must be at least 1");

    for (const NamedInstance& ni : instances)
        if (!best_known.contains(ni.name))
            warnings << "warning: no best-known cost for " << ni.name << "; gap column left empty\n";

    struct Cell
    {
        const NamedInstance* inst;
        const std::string* method;
        std::uint64_t seed;
    };
    std::vector<Cell> cells;
    for (const NamedInstance& ni : instances)
        for (const std::string& m : cfg.methods)
            for (std::uint64_t s : cfg.seeds)
                cells.push_back({&ni, &m, s});

    std::vector<BenchRow> rows(cells.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t k = next.fetch_add(1); k < cells.size(); k = next.fetch_add(1))
        {
            const Cell& c = cells[k];
            const auto started = std::chrono::steady_clock::now();
            const std::optional<double> cost = is_construction(*c.method)
                                                   ? run_construction(*c.inst->instance, *c.method, c.seed, cfg)
                                                   : run_grasp_method(*c.inst->instance, *c.method, c.seed, cfg);
            const auto elapsed = std::chrono::steady_clock::now() - started;

            BenchRow& row = rows[k];
            row.instance = c.inst->name;
            row.method = *c.method;
            row.seed = c.seed;
            row.cost = cost;
            row.success = cost.has_value();
            row.time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
            if (const auto it = best_known.find(c.inst->name); it != best_known.end())
            {
                row.best_known = it->second;
                if (cost && it->second > 0.0)
                    row.gap_pct = gap(*cost, it->second);
            }
        }
    };
    if (cfg.workers == 1)
        worker();
    else
    {
        std::vector<std::jthread> pool;
        for (int w = 0; w < cfg.workers; ++w)
            pool.emplace_back(worker);
    }
    return rows;
}

std::map<std::string, double> parse_best_known(std::istream& in)
{
    std::map<std::string, double> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || (line_no == 1 && line.rfind("instance,", 0) == 0))
            continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw ParseError("best-known row needs 'instance,best_cost'", line_no);
        try
        {
            out[line.substr(0, comma)] = std::stod(line.substr(comma + 1));
        }
        catch (const std::exception&)
        {
            throw ParseError("malformed best-known cost", line_no);
        }
    }
    return out;
}

void write_rows(std::ostream& out, const std::vector<BenchRow>& rows, bool with_timing)
{
    out << "instance,method,seed,cost,best_known,gap_pct,time_ms,success\n";
    for (const BenchRow& r : rows)
    {
        out << r.instance << ',' << r.method << ',' << r.seed << ',' << csv_number(r.cost) << ','
            << csv_number(r.best_known) << ',' << csv_number(r.gap_pct) << ',';
        if (with_timing)
            out << r.time_ms;
        out << ',' << (r.success ? "true" : "false") << '\n';
    }
}

namespace {

void mean_std(const std::vector<double>& xs, double& mean, double& sd)
{
    mean = sd = 0.0;
    if (xs.empty())
        return;
    for (double x : xs)
        mean += x;
    mean /= static_cast<double>(xs.size());
    if (xs.size() < 2)
        return;
    double ss = 0.0;
    for (double x : xs)
        ss += (x - mean) * (x - mean);
    sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

} // namespace

std::vector<MethodSummary> summarize(const std::vector<BenchRow>& rows)
{
    std::vector<std::string> order;
    std::map<std::string, std::vector<const BenchRow*>> by_method;
    for (const BenchRow& r : rows)
    {
        if (!by_method.contains(r.method))
            order.push_back(r.method);
        by_method[r.method].push_back(&r);
    }

    std::vector<MethodSummary> out;
    for (const std::string& m : order)
    {
        MethodSummary s;
        s.method = m;
        std::vector<double> gaps, times;
        for (const BenchRow* r : by_method[m])
        {
            ++s.cells;
            if (r->success)
                ++s.successes;
            if (r->gap_pct)
                gaps.push_back(*r->gap_pct);
            times.push_back(static_cast<double>(r->time_ms) / 1000.0);
        }
        s.gaps = gaps.size();
        mean_std(gaps, s.gap_mean, s.gap_std);
        mean_std(times, s.time_mean_s, s.time_std_s);
        out.push_back(s);
    }
    return out;
}

std::string mean_pm_std(double mean, double sd)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.2f \xC2\xB1 %.2f", mean, sd);
    return buf;
}

void write_summary(std::ostream& out, const std::vector<MethodSummary>& summary, bool with_timing)
{
    out << "method,cells,success_rate,gap_pct,time_s\n";
    for (const MethodSummary& s : summary)
    {
        char rate[32];
        std::snprintf(rate, sizeof rate, "%.2f",
                      s.cells ? static_cast<double>(s.successes) / static_cast<double>(s.cells) : 0.0);
        out << s.method << ',' << s.cells << ',' << rate << ',' << (s.gaps ? mean_pm_std(s.gap_mean, s.gap_std) : "")
            << ',' << (with_timing ? mean_pm_std(s.time_mean_s, s.time_std_s) : "") << '\n';
    }
}

} // namespace tatsp::bench
