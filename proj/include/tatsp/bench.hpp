#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tatsp/instance.hpp"

namespace tatsp::bench {

struct BenchRow
{
    std::string instance;
    std::string method;
    std::uint64_t seed = 0;
    std::optional<double> cost;       // absent when the method found nothing
    std::optional<double> best_known;
    std::optional<double> gap_pct;    // present iff cost and best_known are
    std::int64_t time_ms = 0;
    bool success = false;
};

// Method names: src, rgc, mip-add, mip-mul, mip-bias (best of `trials`
// constructions), and grasp, grasp-no-twoopt, grasp-no-swap, grasp-no-relocate.
bool is_known_method(const std::string& name);

struct BenchConfig
{
    std::vector<std::string> methods{"src", "rgc", "mip-add", "mip-mul", "mip-bias", "grasp"};
    std::vector<std::uint64_t> seeds{0};
    std::size_t trials = 10;
    double time_limit_s = 60.0;
    std::optional<std::size_t> max_iterations;
    double subsolver_time_limit_s = 2.0;
    std::size_t subsolver_max_starts = 200;
    int workers = 1;
};

struct NamedInstance
{
    std::string name;
    const Instance* instance;
};

/// Runs every (instance, method, seed) cell. Rows come back in input order
/// (instance-major, then method, then seed) whatever the worker count.
/// best_known maps instance name to reference cost; instances missing from it
/// get no gap and a line on `warnings`.
std::vector<BenchRow> run_bench(const std::vector<NamedInstance>& instances,
                                const std::map<std::string, double>& best_known, const BenchConfig& cfg,
                                std::ostream& warnings);

// CSV `instance,best_cost`; header optional.
std::map<std::string, double> parse_best_known(std::istream& in);

// Header `instance,method,seed,cost,best_known,gap_pct,time_ms,success`.
// With `with_timing` false the time_ms field is left empty so that reports
// from identical seeds and iteration caps compare byte for byte.
void write_rows(std::ostream& out, const std::vector<BenchRow>& rows, bool with_timing);

struct MethodSummary
{
    std::string method;
    std::size_t cells = 0;
    std::size_t successes = 0;
    std::size_t gaps = 0;
    double gap_mean = 0.0;
    double gap_std = 0.0;
    double time_mean_s = 0.0;
    double time_std_s = 0.0;
};

// Per method, in first-appearance order. std is the sample standard deviation.
std::vector<MethodSummary> summarize(const std::vector<BenchRow>& rows);

// "mean ± std", two decimals.
std::string mean_pm_std(double mean, double sd);

void write_summary(std::ostream& out, const std::vector<MethodSummary>& summary, bool with_timing);

} // namespace tatsp::bench
