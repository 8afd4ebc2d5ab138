#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "pto/planner.hpp"
#include "pto/validate.hpp"

namespace pto {

struct BenchmarkRecord {
    std::uint64_t seed = 0;
    std::size_t iterations = 0;
    SamplerKind sampler = SamplerKind::Uniform;
    bool success = false;
    bool valid = false;
    double treeCost = kInfinity;
    double rawCost = kInfinity;
    PhaseTimes times;
    PlanStats stats;
};

struct BenchmarkSummary {
    std::size_t iterations = 0;
    std::size_t runs = 0;
    std::size_t successes = 0;
    double successRate = 0;
    /// Over successful runs; population standard deviation.
    double meanCost = kInfinity;
    double stdCost = 0;
    double meanTime = 0;
};

inline const char* samplerName(SamplerKind k) { return k == SamplerKind::CameraBased ? "camera" : "uniform"; }

/// One planner run per (iteration budget, seed); seeds run in parallel.
/// Records come back ordered by budget, then by position in `seeds`.
inline std::vector<BenchmarkRecord> runBenchmark(const Environment& env, PlannerConfig config,
                                                 const std::vector<std::size_t>& budgets,
                                                 const std::vector<std::uint64_t>& seeds, unsigned threads = 0)
{
    std::vector<BenchmarkRecord> records(budgets.size() * seeds.size());
    if (records.empty()) return records;
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(records.size()));

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        for (std::size_t k = next++; k < records.size() && !failed; k = next++) {
            try {
                PlannerConfig c = config;
                c.iterations = budgets[k / seeds.size()];
                c.sampler.seed = seeds[k % seeds.size()];
                const PlanResult r = planPathTree(env, c);
                BenchmarkRecord& rec = records[k];
                rec.seed = c.sampler.seed;
                rec.iterations = c.iterations;
                rec.sampler = c.sampler.kind;
                rec.success = r.success;
                rec.valid = r.success && validatePathTree(r.tree, env, c.resolution).passed();
                rec.treeCost = r.cost;
                rec.rawCost = r.rawCost;
                rec.times = r.times;
                rec.stats = r.stats;
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return records;
}

inline std::vector<BenchmarkSummary> summarize(const std::vector<BenchmarkRecord>& records)
{
    std::vector<BenchmarkSummary> out;
    for (const auto& r : records) {
        auto it = std::find_if(out.begin(), out.end(), [&](const auto& s) { return s.iterations == r.iterations; });
        if (it == out.end()) {
            out.push_back({});
            it = out.end() - 1;
            it->iterations = r.iterations;
        }
        ++it->runs;
        it->meanTime += r.times.total;
    }
    for (auto& s : out) {
        std::vector<double> costs;
        for (const auto& r : records)
            if (r.iterations == s.iterations && r.success) costs.push_back(r.treeCost);
        s.successes = costs.size();
        s.successRate = static_cast<double>(s.successes) / static_cast<double>(s.runs);
        s.meanTime /= static_cast<double>(s.runs);
        if (costs.empty()) continue;
        double sum = 0;
        for (const double c : costs) sum += c;
        s.meanCost = sum / static_cast<double>(costs.size());
        double sq = 0;
        for (const double c : costs) sq += (c - s.meanCost) * (c - s.meanCost);
        s.stdCost = std::sqrt(sq / static_cast<double>(costs.size()));
    }
    return out;
}

/// Per-run rows followed by one summary row per budget (seed column "summary").
inline std::string benchmarkCsv(const std::vector<BenchmarkRecord>& records)
{
    std::ostringstream s;
    s.precision(10);
    s << "seed,iterations,sampler,success,valid,tree_cost,raw_cost,t_random_graph,t_belief_graph,t_costs,"
         "t_extraction,t_simplification,t_total,random_vertices,random_edges,beliefs,belief_vertices,belief_edges,"
         "tree_vertices,success_rate,mean_cost,std_cost\n";
    auto cost = [](double c) {
        if (!std::isfinite(c)) return std::string();
        std::ostringstream o;
        o.precision(12);
        o << c;
        return o.str();
    };
    for (const auto& r : records) {
        s << r.seed << ',' << r.iterations << ',' << samplerName(r.sampler) << ',' << r.success << ',' << r.valid << ','
          << cost(r.treeCost) << ',' << cost(r.rawCost) << ',' << r.times.randomGraph << ',' << r.times.beliefGraph
          << ',' << r.times.costs << ',' << r.times.extraction << ',' << r.times.simplification << ','
          << r.times.total << ',' << r.stats.randomVertices << ',' << r.stats.randomEdges << ',' << r.stats.beliefs
          << ',' << r.stats.beliefVertices << ',' << r.stats.beliefEdges << ',' << r.stats.treeVertices << ",,,\n";
    }
    const char* sampler = records.empty() ? "" : samplerName(records.front().sampler);
    for (const auto& m : summarize(records)) {
        s << "summary," << m.iterations << ',' << sampler << ",,,,,,,,,," << m.meanTime << ",,,,,,," << m.successRate
          << ',' << cost(m.meanCost) << ',' << (std::isfinite(m.meanCost) ? cost(m.stdCost) : "") << '\n';
    }
    return s.str();
}

}  // namespace pto
