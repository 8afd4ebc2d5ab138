#pragma once

#include <chrono>
#include <cstddef>
#include <string>

#include "pto/belief_graph.hpp"
#include "pto/expected_costs.hpp"
#include "pto/path_tree.hpp"
#include "pto/random_graph.hpp"
#include "pto/samplers.hpp"
#include "pto/simplify.hpp"

namespace pto {

struct PlannerConfig {
    std::size_t iterations = 1000;
    double radius = 0.5;
    /// <= 0 selects robotRadius / 2
    double resolution = 0;
    std::size_t simplifyRounds = 100;
    SamplerConfig sampler;
};

/// Wall-clock seconds per pipeline phase.
struct PhaseTimes {
    double randomGraph = 0;
    double beliefGraph = 0;
    double costs = 0;
    double extraction = 0;
    double simplification = 0;
    double total = 0;
};

struct PlanStats {
    std::size_t randomVertices = 0;
    std::size_t randomEdges = 0;
    std::size_t beliefs = 0;
    std::size_t beliefVertices = 0;
    std::size_t beliefEdges = 0;
    std::size_t treeVertices = 0;
};

struct PlanResult {
    bool success = false;
    std::string failure;
    /// Extracted tree before shortcutting and its expected cost.
    PathTree rawTree;
    double rawCost = kInfinity;
    /// Final (shortcut) tree and its expected cost.
    PathTree tree;
    double cost = kInfinity;
    /// Cost-to-go of the start vertex in the initial belief.
    double startCost = kInfinity;
    PhaseTimes times;
    PlanStats stats;
};

namespace detail {

class Stopwatch {
public:
    double lap()
    {
        const auto now = std::chrono::steady_clock::now();
        const double s = std::chrono::duration<double>(now - last_).count();
        last_ = now;
        return s;
    }

private:
    std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

}  // namespace detail

/// Full pipeline: random graph, belief graph, expected costs, extraction,
/// shortcutting. Deterministic for a given environment and config.
inline PlanResult planPathTree(const Environment& env, const PlannerConfig& config)
{
    PlanResult result;
    const double resolution = config.resolution > 0 ? config.resolution : env.defaultResolution();
    detail::Stopwatch clock;
    detail::Stopwatch total;

    StateSampler sampler(config.sampler);
    RandomGraphParams params;
    params.maxIterations = config.iterations;
    params.radius = config.radius;
    params.resolution = resolution;
    const RandomGraph graph = buildRandomGraph(env, sampler, params);
    result.times.randomGraph = clock.lap();
    result.stats.randomVertices = graph.vertices().size();
    result.stats.randomEdges = graph.edges().size();

    try {
        const auto beliefs = env.world.allBeliefStates(env.initialBelief);
        result.stats.beliefs = beliefs.size();
        const BeliefGraph bg = buildBeliefGraph(graph, beliefs, env.world, env);
        result.times.beliefGraph = clock.lap();
        result.stats.beliefVertices = bg.vertices().size();
        result.stats.beliefEdges = bg.edges().size();

        const CostTable costs = computeExpectedCosts(bg);
        result.times.costs = clock.lap();
        result.startCost = costs[bg.startVertex()];

        result.rawTree = extractPathTree(bg, costs);
        result.times.extraction = clock.lap();
    } catch (const PlanningError& e) {
        result.failure = e.what();
        result.times.total = total.lap();
        return result;
    }
    result.rawCost = evaluatePathTreeCost(result.rawTree, env);

    Rng rng(config.sampler.seed ^ 0x9e3779b97f4a7c15ULL);
    result.tree = simplifyPathTree(result.rawTree, env, config.simplifyRounds, rng, resolution);
    result.cost = evaluatePathTreeCost(result.tree, env);
    result.times.simplification = clock.lap();
    result.stats.treeVertices = result.tree.size();
    result.success = true;
    result.times.total = total.lap();
    return result;
}

}  // namespace pto
