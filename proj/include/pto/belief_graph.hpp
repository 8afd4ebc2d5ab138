#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <vector>

#include "pto/environment.hpp"
#include "pto/random_graph.hpp"

namespace pto {

inline constexpr std::size_t kNoVertex = std::numeric_limits<std::size_t>::max();

/// One observation available at a belief-graph vertex: the posterior vertices
/// (same random vertex, refined beliefs) and their branching probabilities.
struct ObservationBranch {
    std::size_t objectIndex = 0;
    std::vector<std::size_t> children;
    std::vector<double> probabilities;
};

struct BeliefGraphVertex {
    std::size_t randomVertex = 0;
    std::size_t beliefIndex = 0;
    RobotState state;
    bool isGoal = false;
    std::vector<ObservationBranch> observations;
};

struct BeliefGraphEdge {
    std::size_t source = 0;
    std::size_t target = 0;
    bool isWorldConnection = false;
    double length = 0;
};

struct Neighbor {
    std::size_t vertex;
    std::size_t edge;
};

struct ObservationParent {
    std::size_t source;
    std::size_t branch;
};

/// Product of the random graph with the reachable beliefs. Movement edges stay
/// inside a belief layer and are undirected; observation edges are directed
/// from the observing vertex to its posteriors at the same configuration.
class BeliefGraph {
public:
    BeliefGraph() = default;
    BeliefGraph(std::vector<Belief> beliefs, std::size_t numRandomVertices)
        : beliefs_(std::move(beliefs)), numBeliefs_(beliefs_.size()),
          lookup_(numRandomVertices * beliefs_.size(), kNoVertex)
    {
    }

    std::size_t addVertex(BeliefGraphVertex v)
    {
        const std::size_t id = vertices_.size();
        lookup_.at(v.randomVertex * numBeliefs_ + v.beliefIndex) = id;
        vertices_.push_back(std::move(v));
        movement_.emplace_back();
        parents_.emplace_back();
        return id;
    }

    std::size_t addMovementEdge(std::size_t a, std::size_t b, double length)
    {
        edges_.push_back({a, b, false, length});
        const std::size_t e = edges_.size() - 1;
        movement_[a].push_back({b, e});
        movement_[b].push_back({a, e});
        return e;
    }

    void addObservation(std::size_t source, ObservationBranch branch)
    {
        auto& v = vertices_.at(source);
        for (const auto child : branch.children) {
            edges_.push_back({source, child, true, 0.0});
            parents_.at(child).push_back({source, v.observations.size()});
        }
        v.observations.push_back(std::move(branch));
    }

    /// Belief-graph vertex of (random vertex, belief index), or kNoVertex.
    std::size_t find(std::size_t randomVertex, std::size_t beliefIndex) const
    {
        return lookup_.at(randomVertex * numBeliefs_ + beliefIndex);
    }

    const std::vector<BeliefGraphVertex>& vertices() const { return vertices_; }
    const BeliefGraphVertex& vertex(std::size_t v) const { return vertices_.at(v); }
    const std::vector<BeliefGraphEdge>& edges() const { return edges_; }
    const std::vector<Neighbor>& movementNeighbors(std::size_t v) const { return movement_.at(v); }
    const std::vector<ObservationParent>& observationParents(std::size_t v) const { return parents_.at(v); }
    const std::vector<Belief>& beliefs() const { return beliefs_; }
    const Belief& belief(std::size_t v) const { return beliefs_.at(vertices_.at(v).beliefIndex); }

    std::size_t startVertex() const { return startVertex_; }
    void setStartVertex(std::size_t v) { startVertex_ = v; }

private:
    std::vector<Belief> beliefs_;
    std::size_t numBeliefs_ = 0;
    std::vector<std::size_t> lookup_;
    std::vector<BeliefGraphVertex> vertices_;
    std::vector<BeliefGraphEdge> edges_;
    std::vector<std::vector<Neighbor>> movement_;
    std::vector<std::vector<ObservationParent>> parents_;
    std::size_t startVertex_ = kNoVertex;
};

/// Lifts the random graph into belief space. `beliefs` must be the reachable
/// belief set of env.initialBelief. An object is observable at a vertex under
/// belief b when the sensor reports it in every hypothesis of b's support.
/// Each observation is kept as its own branch so that branching probabilities
/// of one observation sum to one.
inline BeliefGraph buildBeliefGraph(const RandomGraph& g, const std::vector<Belief>& beliefs, const World& world,
                                    const Environment& env)
{
    const std::size_t numBeliefs = beliefs.size();
    std::vector<WorldSet> supports;
    supports.reserve(numBeliefs);
    for (const auto& b : beliefs) supports.push_back(b.support());

    std::map<Belief, std::size_t> beliefIndex;
    for (std::size_t i = 0; i < numBeliefs; ++i) beliefIndex.emplace(beliefs[i], i);
    const auto initial = beliefIndex.find(env.initialBelief);
    if (initial == beliefIndex.end()) throw PlanningError("initial belief is not among the reachable beliefs");

    BeliefGraph bg(beliefs, g.vertices().size());

    // vertices: (v, b) exists iff v has an incident edge valid throughout supp(b)
    for (std::size_t v = 0; v < g.vertices().size(); ++v) {
        for (std::size_t bi = 0; bi < numBeliefs; ++bi) {
            bool reachable = false;
            for (const auto e : g.incidentEdges(v)) {
                if (isSubset(supports[bi], g.edge(e).validWorlds)) {
                    reachable = true;
                    break;
                }
            }
            if (!reachable) continue;
            const RobotState& s = g.vertex(v).state;
            bg.addVertex({v, bi, s, isGoal(s, beliefs[bi], env), {}});
        }
    }

    // movement edges inside each compatible belief layer
    for (const auto& e : g.edges()) {
        for (std::size_t bi = 0; bi < numBeliefs; ++bi) {
            if (!isSubset(supports[bi], e.validWorlds)) continue;
            bg.addMovementEdge(bg.find(e.source, bi), bg.find(e.target, bi), e.length);
        }
    }

    // observation edges
    const std::size_t numObjects = world.numObjects();
    std::vector<WorldSet> visibleIn(numObjects);
    const std::size_t numVertices = bg.vertices().size();
    for (std::size_t id = 0; id < numVertices; ++id) {
        const std::size_t rv = bg.vertex(id).randomVertex;
        const std::size_t bi = bg.vertex(id).beliefIndex;
        std::fill(visibleIn.begin(), visibleIn.end(), WorldSet{0});
        const auto& observable = g.vertex(rv).observableObjects;
        for (std::size_t h = 0; h < observable.size(); ++h)
            for (const auto o : observable[h]) visibleIn.at(o) |= worldBit(h);

        for (std::size_t o = 0; o < numObjects; ++o) {
            if (!isSubset(supports[bi], visibleIn[o])) continue;
            const auto posteriors = world.observe(beliefs[bi], o);
            if (posteriors.size() < 2) continue;
            ObservationBranch branch{o, {}, {}};
            for (const auto& post : posteriors) {
                const auto child = bg.find(rv, beliefIndex.at(post.posterior));
                if (child == kNoVertex) break;
                branch.children.push_back(child);
                branch.probabilities.push_back(
                    world.branchingProbability(beliefs[bi], post.posterior).convert_to<double>());
            }
            if (branch.children.size() == posteriors.size()) bg.addObservation(id, std::move(branch));
        }
    }

    const std::size_t start = bg.find(0, initial->second);
    if (start == kNoVertex) throw PlanningError("start vertex is unreachable in the initial belief");
    bg.setStartVertex(start);
    return bg;
}

}  // namespace pto
