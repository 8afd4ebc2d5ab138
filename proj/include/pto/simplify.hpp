#pragma once

#include <algorithm>
#include <cstddef>
#include <random>
#include <utility>
#include <vector>

#include "pto/path_tree.hpp"
#include "pto/samplers.hpp"

namespace pto {

/// Maximal movement-only chains of a path tree. Each chain starts and ends at
/// a key vertex (root, observation source or posterior, branch point, leaf);
/// interior vertices have exactly one movement edge in and one out.
inline std::vector<std::vector<std::size_t>> movementSegments(const PathTree& tree)
{
    const std::size_t n = tree.size();
    std::vector<bool> key(n, false);
    for (std::size_t v = 0; v < n; ++v) {
        const auto& out = tree.children(v);
        const std::size_t parent = tree.parent(v);
        bool enteredByObservation = false;
        if (parent != kNoVertex)
            for (const auto e : tree.children(parent))
                if (tree.edges()[e].to == v) enteredByObservation = tree.edges()[e].isObservation;
        key[v] = v == PathTree::root() || enteredByObservation || out.size() != 1 || tree.edges()[out[0]].isObservation;
    }
    std::vector<std::vector<std::size_t>> segments;
    for (std::size_t v = 0; v < n; ++v) {
        if (!key[v]) continue;
        for (const auto e : tree.children(v)) {
            if (tree.edges()[e].isObservation) continue;
            std::vector<std::size_t> seg{v};
            std::size_t cur = tree.edges()[e].to;
            seg.push_back(cur);
            while (!key[cur]) {
                cur = tree.edges()[tree.children(cur).front()].to;
                seg.push_back(cur);
            }
            segments.push_back(std::move(seg));
        }
    }
    return segments;
}

namespace detail {

struct Waypoint {
    RobotState state;
    std::size_t original = kNoVertex;  // tree vertex id, kNoVertex for inserted points
};

/// Point at arc length `s` along the polyline: edge index and interpolated state.
inline std::pair<std::size_t, RobotState> pointAt(const std::vector<Waypoint>& wp, const std::vector<double>& cum,
                                                  double s)
{
    std::size_t i = static_cast<std::size_t>(std::upper_bound(cum.begin(), cum.end(), s) - cum.begin());
    i = std::min(i == 0 ? 0 : i - 1, wp.size() - 2);
    const double len = cum[i + 1] - cum[i];
    const double t = len > 0 ? std::clamp((s - cum[i]) / len, 0.0, 1.0) : 0.0;
    return {i, interpolate(wp[i].state, wp[i + 1].state, t)};
}

}  // namespace detail

/// Shortcutting between observation points. Per movement segment, `rounds`
/// attempts pick two random points along the segment and replace the part in
/// between by a straight motion when it is valid in every hypothesis the
/// segment's belief allows and strictly shorter. Key vertices and the branch
/// structure are kept as they are; shortcut endpoints become new vertices.
inline PathTree simplifyPathTree(const PathTree& tree, const Environment& env, std::size_t rounds, Rng& rng,
                                 double resolution = 0)
{
    if (tree.empty()) return tree;
    if (resolution <= 0) resolution = env.defaultResolution();
    constexpr double kMinGain = 1e-12;
    constexpr double kSnap = 1e-9;

    std::vector<std::vector<detail::Waypoint>> paths;
    for (const auto& seg : movementSegments(tree)) {
        std::vector<detail::Waypoint> wp;
        for (const auto v : seg) wp.push_back({tree.vertex(v).state, v});
        const WorldSet support = tree.vertex(seg.front()).belief.support();
        auto valid = [&](const RobotState& a, const RobotState& b) {
            return isSubset(support, motionValidWorlds(a, b, env, resolution));
        };

        for (std::size_t round = 0; round < rounds && wp.size() > 2; ++round) {
            std::vector<double> cum{0.0};
            for (std::size_t k = 0; k + 1 < wp.size(); ++k) cum.push_back(cum.back() + env.distance(wp[k].state, wp[k + 1].state));
            std::uniform_real_distribution<double> pick(0.0, cum.back());
            double s1 = pick(rng);
            double s2 = pick(rng);
            if (s1 > s2) std::swap(s1, s2);
            const auto [i, a] = detail::pointAt(wp, cum, s1);
            const auto [j, b] = detail::pointAt(wp, cum, s2);
            if (i == j) continue;

            // snap to existing waypoints so no zero-length edges appear
            const bool keepA = env.distance(wp[i].state, a) > kSnap && env.distance(a, wp[i + 1].state) > kSnap;
            const bool keepB = env.distance(wp[j].state, b) > kSnap && env.distance(b, wp[j + 1].state) > kSnap;
            const std::size_t ia = keepA || env.distance(wp[i].state, a) <= kSnap ? i : i + 1;
            const std::size_t jb = keepB || env.distance(b, wp[j + 1].state) <= kSnap ? j + 1 : j;
            const RobotState& from = keepA ? a : wp[ia].state;
            const RobotState& to = keepB ? b : wp[jb].state;
            if (!keepA && !keepB && jb <= ia + 1) continue;

            double before = cum[jb] - cum[ia];
            double after = env.distance(from, to);
            if (keepA) after += env.distance(wp[ia].state, a);
            if (keepB) after += env.distance(b, wp[jb].state);
            if (!(after < before - kMinGain)) continue;
            if (!valid(from, to)) continue;
            if (keepA && !valid(wp[ia].state, a)) continue;
            if (keepB && !valid(b, wp[jb].state)) continue;

            std::vector<detail::Waypoint> next(wp.begin(), wp.begin() + static_cast<std::ptrdiff_t>(ia + 1));
            if (keepA) next.push_back({a, kNoVertex});
            if (keepB) next.push_back({b, kNoVertex});
            next.insert(next.end(), wp.begin() + static_cast<std::ptrdiff_t>(jb), wp.end());
            wp = std::move(next);
        }
        paths.push_back(std::move(wp));
    }

    std::vector<bool> kept(tree.size(), false);
    kept[PathTree::root()] = true;
    for (const auto& wp : paths)
        for (const auto& w : wp)
            if (w.original != kNoVertex) kept[w.original] = true;
    for (const auto& e : tree.edges())
        if (e.isObservation) kept[e.from] = kept[e.to] = true;

    PathTree out;
    std::vector<std::size_t> newId(tree.size(), kNoVertex);
    for (std::size_t v = 0; v < tree.size(); ++v)
        if (kept[v]) newId[v] = out.addVertex(tree.vertex(v));
    for (const auto& e : tree.edges())
        if (e.isObservation) out.addEdge(newId[e.from], newId[e.to], true);
    for (const auto& wp : paths) {
        const Belief& belief = tree.vertex(wp.front().original).belief;
        std::size_t prev = newId[wp.front().original];
        for (std::size_t k = 1; k < wp.size(); ++k) {
            const std::size_t id = wp[k].original != kNoVertex ? newId[wp[k].original]
                                                               : out.addVertex({wp[k].state, false, belief});
            out.addEdge(prev, id, false);
            prev = id;
        }
    }
    return out;
}

}  // namespace pto
