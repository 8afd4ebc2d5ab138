#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

#include "pto/belief_graph.hpp"

namespace pto {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Action that attains a vertex's cost-to-go.
struct Decision {
    enum class Kind { None, Goal, Move, Observe };
    Kind kind = Kind::None;
    /// Move: next belief-graph vertex. Observe: index into vertex.observations.
    std::size_t target = 0;
};

struct CostTable {
    std::vector<double> costs;
    std::vector<Decision> policy;

    double operator[](std::size_t v) const { return costs.at(v); }
    std::size_t size() const { return costs.size(); }
};

/// Expected cost of an observation branch; infinite if any posterior is.
inline double observationValue(const ObservationBranch& branch, const std::vector<double>& costs)
{
    double value = 0;
    for (std::size_t i = 0; i < branch.children.size(); ++i) {
        const double c = costs[branch.children[i]];
        if (c == kInfinity) return kInfinity;
        value += branch.probabilities[i] * c;
    }
    return value;
}

/// Dijkstra-style Bellman updates from the goal vertices. Movement:
/// cost(u) <= d(u,v) + cost(v). Observation at u: cost(u) <= sum p_i cost(child_i).
/// A vertex is re-queued whenever its cost drops, so the result is the least
/// fixed point of both update rules.
inline CostTable computeExpectedCosts(const BeliefGraph& bg)
{
    const std::size_t n = bg.vertices().size();
    CostTable table{std::vector<double>(n, kInfinity), std::vector<Decision>(n)};
    using Entry = std::pair<double, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;

    for (std::size_t v = 0; v < n; ++v) {
        if (!bg.vertex(v).isGoal) continue;
        table.costs[v] = 0;
        table.policy[v] = {Decision::Kind::Goal, 0};
        queue.emplace(0.0, v);
    }

    while (!queue.empty()) {
        const auto [cost, v] = queue.top();
        queue.pop();
        if (cost > table.costs[v]) continue;

        for (const auto& [u, e] : bg.movementNeighbors(v)) {
            const double candidate = bg.edges()[e].length + cost;
            if (candidate < table.costs[u]) {
                table.costs[u] = candidate;
                table.policy[u] = {Decision::Kind::Move, v};
                queue.emplace(candidate, u);
            }
        }
        for (const auto& [u, branch] : bg.observationParents(v)) {
            const double candidate = observationValue(bg.vertex(u).observations[branch], table.costs);
            if (candidate < table.costs[u]) {
                table.costs[u] = candidate;
                table.policy[u] = {Decision::Kind::Observe, branch};
                queue.emplace(candidate, u);
            }
        }
    }
    return table;
}

}  // namespace pto
