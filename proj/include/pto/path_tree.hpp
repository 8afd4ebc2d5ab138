#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "pto/belief_graph.hpp"
#include "pto/expected_costs.hpp"

namespace pto {

struct PathTreeVertex {
    RobotState state;
    bool isGoal = false;
    Belief belief;
};

struct PathTreeEdge {
    std::size_t from = 0;
    std::size_t to = 0;
    bool isObservation = false;
};

/// Directed contingency plan rooted at vertex 0. Movement edges keep the
/// belief, observation edges keep the state.
class PathTree {
public:
    std::size_t addVertex(PathTreeVertex v)
    {
        vertices_.push_back(std::move(v));
        children_.emplace_back();
        parent_.push_back(kNoVertex);
        return vertices_.size() - 1;
    }

    std::size_t addEdge(std::size_t from, std::size_t to, bool isObservation)
    {
        if (from >= vertices_.size() || to >= vertices_.size()) throw std::out_of_range("path tree: no such vertex");
        if (parent_[to] != kNoVertex) throw std::invalid_argument("path tree: vertex already has a parent");
        if (to == 0) throw std::invalid_argument("path tree: the root cannot have a parent");
        edges_.push_back({from, to, isObservation});
        children_[from].push_back(edges_.size() - 1);
        parent_[to] = from;
        return edges_.size() - 1;
    }

    static constexpr std::size_t root() { return 0; }
    bool empty() const { return vertices_.empty(); }
    std::size_t size() const { return vertices_.size(); }
    const std::vector<PathTreeVertex>& vertices() const { return vertices_; }
    const PathTreeVertex& vertex(std::size_t v) const { return vertices_.at(v); }
    const std::vector<PathTreeEdge>& edges() const { return edges_; }
    /// Outgoing edge ids of v.
    const std::vector<std::size_t>& children(std::size_t v) const { return children_.at(v); }
    std::size_t parent(std::size_t v) const { return parent_.at(v); }

    std::vector<std::size_t> leaves() const
    {
        std::vector<std::size_t> out;
        for (std::size_t v = 0; v < vertices_.size(); ++v)
            if (children_[v].empty()) out.push_back(v);
        return out;
    }

    /// Vertices with outgoing observation edges.
    std::vector<std::size_t> observationVertices() const
    {
        std::vector<std::size_t> out;
        for (std::size_t v = 0; v < vertices_.size(); ++v) {
            for (const auto e : children_[v]) {
                if (edges_[e].isObservation) {
                    out.push_back(v);
                    break;
                }
            }
        }
        return out;
    }

private:
    std::vector<PathTreeVertex> vertices_;
    std::vector<PathTreeEdge> edges_;
    std::vector<std::vector<std::size_t>> children_;
    std::vector<std::size_t> parent_;
};

namespace detail {

inline void extendPathTree(const BeliefGraph& bg, const CostTable& costs, PathTree& tree, std::size_t node,
                           std::size_t current, std::vector<bool>& visited)
{
    while (!bg.vertex(current).isGoal) {
        const Decision& d = costs.policy.at(current);
        if (d.kind == Decision::Kind::Move) {
            const std::size_t next = d.target;
            if (visited[next]) throw PlanningError("path tree extraction revisited a vertex");
            const auto& nv = bg.vertex(next);
            const std::size_t child = tree.addVertex({nv.state, nv.isGoal, bg.belief(next)});
            tree.addEdge(node, child, false);
            visited[next] = true;
            node = child;
            current = next;
        } else if (d.kind == Decision::Kind::Observe) {
            for (const auto next : bg.vertex(current).observations.at(d.target).children) {
                const auto& nv = bg.vertex(next);
                const std::size_t child = tree.addVertex({nv.state, nv.isGoal, bg.belief(next)});
                tree.addEdge(node, child, true);
                visited[next] = true;
                if (!nv.isGoal) extendPathTree(bg, costs, tree, child, next, visited);
            }
            return;
        } else {
            throw PlanningError("path tree extraction reached a vertex with no admissible successor");
        }
    }
}

}  // namespace detail

/// Walks the cost-to-go from the start vertex: movement decisions extend the
/// current branch, observation decisions fork one branch per posterior, and
/// every branch ends at a goal vertex.
inline PathTree extractPathTree(const BeliefGraph& bg, const CostTable& costs)
{
    const std::size_t start = bg.startVertex();
    if (start == kNoVertex || costs[start] == kInfinity)
        throw PlanningError("no path tree: the start vertex has infinite cost-to-go");
    PathTree tree;
    const auto& sv = bg.vertex(start);
    tree.addVertex({sv.state, sv.isGoal, bg.belief(start)});
    std::vector<bool> visited(bg.vertices().size(), false);
    visited[start] = true;
    detail::extendPathTree(bg, costs, tree, PathTree::root(), start, visited);
    return tree;
}

/// Expected cost of a path tree: movement edge lengths weighted by the
/// probability of reaching them, i.e. the product of branching probabilities
/// on the observation edges above.
inline double evaluatePathTreeCost(const PathTree& tree, const Environment& env)
{
    if (tree.empty()) return 0;
    double total = 0;
    std::vector<std::pair<std::size_t, double>> stack{{PathTree::root(), 1.0}};
    while (!stack.empty()) {
        const auto [v, p] = stack.back();
        stack.pop_back();
        for (const auto e : tree.children(v)) {
            const auto& edge = tree.edges()[e];
            const auto& from = tree.vertex(edge.from);
            const auto& to = tree.vertex(edge.to);
            if (edge.isObservation) {
                const double branch = env.world.branchingProbability(from.belief, to.belief).convert_to<double>();
                stack.emplace_back(edge.to, p * branch);
            } else {
                total += p * env.distance(from.state, to.state);
                stack.emplace_back(edge.to, p);
            }
        }
    }
    return total;
}

}  // namespace pto
