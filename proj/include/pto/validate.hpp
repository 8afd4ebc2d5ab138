#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pto/path_tree.hpp"

namespace pto {

struct ConstraintCheck {
    std::string name;
    std::vector<std::string> violations;

    bool passed() const { return violations.empty(); }
};

struct ValidationReport {
    ConstraintCheck structure{"structure", {}};
    ConstraintCheck completeness{"completeness", {}};
    ConstraintCheck motionValidity{"motion-validity", {}};
    ConstraintCheck beliefConsistency{"belief-consistency", {}};

    bool passed() const
    {
        return structure.passed() && completeness.passed() && motionValidity.passed() && beliefConsistency.passed();
    }
    std::vector<const ConstraintCheck*> checks() const
    {
        return {&structure, &completeness, &motionValidity, &beliefConsistency};
    }
};

/// Objects whose observation at `parent` yields exactly the given posteriors.
/// In Goals mode several objects can split a belief the same way.
inline std::vector<std::size_t> matchingObservations(const World& world, const Belief& parent,
                                                     const std::vector<Belief>& posteriors)
{
    std::vector<Belief> wanted = posteriors;
    std::sort(wanted.begin(), wanted.end());
    std::vector<std::size_t> out;
    for (std::size_t o = 0; o < world.numObjects(); ++o) {
        const auto obs = world.observe(parent, o);
        if (obs.size() < 2) continue;
        std::vector<Belief> got;
        for (const auto& x : obs) got.push_back(x.posterior);
        std::sort(got.begin(), got.end());
        if (got == wanted) out.push_back(o);
    }
    return out;
}

/// First matching object the sensor reports at `state` in every hypothesis
/// of the parent belief.
inline std::optional<std::size_t> observedObject(const Environment& env, const RobotState& state,
                                                 const Belief& parent, const std::vector<Belief>& posteriors)
{
    for (const auto o : matchingObservations(env.world, parent, posteriors)) {
        bool everywhere = true;
        for (const auto h : worldIndices(parent.support())) {
            const auto seen = targetsFound(state, h, env);
            if (std::find(seen.begin(), seen.end(), o) == seen.end()) {
                everywhere = false;
                break;
            }
        }
        if (everywhere) return o;
    }
    return std::nullopt;
}

/// Checks a path tree against the planning constraints:
///  - structure: a tree rooted at the start in the initial belief, where no
///    vertex mixes movement and observation successors;
///  - completeness: executing the tree in every hypothesis of the initial
///    support ends at a leaf satisfying that hypothesis' goal;
///  - motion validity: each movement edge is collision free in every
///    hypothesis its belief allows;
///  - belief consistency: movement keeps the belief, and each observation
///    fork equals the Bayes posteriors of an object the sensor reports there
///    in every hypothesis of the parent belief.
inline ValidationReport validatePathTree(const PathTree& tree, const Environment& env, double resolution = 0)
{
    ValidationReport report;
    if (resolution <= 0) resolution = env.defaultResolution();
    if (tree.empty()) {
        report.structure.violations.push_back("tree is empty");
        return report;
    }
    const World& world = env.world;
    for (const auto& v : tree.vertices()) {
        if (v.belief.size() != world.numWorlds()) {
            report.structure.violations.push_back("vertex belief does not match the hypothesis space");
            return report;
        }
    }

    auto& structure = report.structure.violations;
    const auto& root = tree.vertex(PathTree::root());
    if (!atPosition(root.state, env.start, env.goalTolerance())) structure.push_back("root is not at the start state");
    if (!(root.belief == env.initialBelief)) structure.push_back("root belief differs from the initial belief");
    for (std::size_t v = 1; v < tree.size(); ++v)
        if (tree.parent(v) == kNoVertex) structure.push_back("vertex " + std::to_string(v) + " is unreachable");
    for (std::size_t v = 0; v < tree.size(); ++v) {
        std::size_t moves = 0;
        std::size_t observations = 0;
        for (const auto e : tree.children(v)) (tree.edges()[e].isObservation ? observations : moves)++;
        if (observations > 0 && moves > 0)
            structure.push_back("vertex " + std::to_string(v) + " mixes movement and observation successors");
        if (moves > 1 && observations == 0)
            structure.push_back("vertex " + std::to_string(v) + " branches without an observation");
    }
    if (!structure.empty()) return report;

    for (const auto& e : tree.edges()) {
        const auto& from = tree.vertex(e.from);
        const auto& to = tree.vertex(e.to);
        const std::string label = std::to_string(e.from) + "->" + std::to_string(e.to);
        if (e.isObservation) continue;
        if (!(from.belief == to.belief))
            report.beliefConsistency.violations.push_back("movement edge " + label + " changes the belief");
        const WorldSet support = from.belief.support();
        const WorldSet valid = motionValidWorlds(from.state, to.state, env, resolution);
        if (!isSubset(support, valid)) {
            std::string worlds;
            for (const auto h : worldIndices(support & ~valid)) worlds += (worlds.empty() ? "" : ",") + std::to_string(h);
            report.motionValidity.violations.push_back("movement edge " + label + " collides in hypotheses {" + worlds +
                                                       "}");
        }
    }

    for (const auto v : tree.observationVertices()) {
        const auto& parent = tree.vertex(v);
        std::vector<Belief> posteriors;
        for (const auto e : tree.children(v)) {
            const auto& child = tree.vertex(tree.edges()[e].to);
            if (!(child.state == parent.state))
                report.beliefConsistency.violations.push_back("observation at vertex " + std::to_string(v) +
                                                              " moves the robot");
            posteriors.push_back(child.belief);
        }
        if (matchingObservations(world, parent.belief, posteriors).empty()) {
            report.beliefConsistency.violations.push_back("posteriors at vertex " + std::to_string(v) +
                                                          " are not the Bayes update of any single observation");
            continue;
        }
        if (!observedObject(env, parent.state, parent.belief, posteriors))
            report.beliefConsistency.violations.push_back("no object that splits the belief this way is visible from vertex " +
                                                          std::to_string(v) + " in every hypothesis");
    }

    for (const auto h : worldIndices(env.initialBelief.support())) {
        std::size_t v = PathTree::root();
        bool stuck = false;
        while (!tree.children(v).empty()) {
            const auto& out = tree.children(v);
            if (!tree.edges()[out.front()].isObservation) {
                v = tree.edges()[out.front()].to;
                continue;
            }
            std::size_t next = kNoVertex;
            for (const auto e : out)
                if (containsWorld(tree.vertex(tree.edges()[e].to).belief.support(), h)) next = tree.edges()[e].to;
            if (next == kNoVertex) {
                report.completeness.violations.push_back("hypothesis " + std::to_string(h) +
                                                         " has no posterior at vertex " + std::to_string(v));
                stuck = true;
                break;
            }
            v = next;
        }
        if (stuck) continue;
        if (!atPosition(tree.vertex(v).state, goalFor(h, env), env.goalTolerance()))
            report.completeness.violations.push_back("hypothesis " + std::to_string(h) + " ends at leaf " +
                                                     std::to_string(v) + " which is not its goal");
    }
    return report;
}

}  // namespace pto
