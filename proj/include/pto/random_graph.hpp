#pragma once

#include <cmath>
#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pto/environment.hpp"
#include "pto/samplers.hpp"

namespace pto {

class PlanningError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RandomGraphVertex {
    RobotState state;
    /// observableObjects[h] = objects the sensor reports at this state in hypothesis h
    std::vector<std::vector<std::size_t>> observableObjects;
};

struct RandomGraphEdge {
    std::size_t source = 0;
    std::size_t target = 0;
    WorldSet validWorlds = 0;
    double length = 0;
};

/// Undirected configuration-space graph with per-edge world validity.
class RandomGraph {
public:
    std::size_t addVertex(RobotState state, std::vector<std::vector<std::size_t>> observable)
    {
        vertices_.push_back({state, std::move(observable)});
        adjacency_.emplace_back();
        return vertices_.size() - 1;
    }

    /// Adds worlds to the edge a-b, creating it on first use.
    std::size_t connect(std::size_t a, std::size_t b, WorldSet worlds, double length)
    {
        if (a == b) throw std::invalid_argument("random graph: self loop");
        if (worlds == 0) throw std::invalid_argument("random graph: edge without valid worlds");
        if (a >= vertices_.size() || b >= vertices_.size()) throw std::out_of_range("random graph: no such vertex");
        const auto key = edgeKey(a, b);
        if (auto it = edgeIndex_.find(key); it != edgeIndex_.end()) {
            edges_[it->second].validWorlds |= worlds;
            return it->second;
        }
        edges_.push_back({a, b, worlds, length});
        const std::size_t id = edges_.size() - 1;
        edgeIndex_.emplace(key, id);
        adjacency_[a].push_back(id);
        adjacency_[b].push_back(id);
        return id;
    }

    std::optional<std::size_t> findEdge(std::size_t a, std::size_t b) const
    {
        if (auto it = edgeIndex_.find(edgeKey(a, b)); it != edgeIndex_.end()) return it->second;
        return std::nullopt;
    }

    const std::vector<RandomGraphVertex>& vertices() const { return vertices_; }
    const std::vector<RandomGraphEdge>& edges() const { return edges_; }
    const RandomGraphVertex& vertex(std::size_t v) const { return vertices_.at(v); }
    const RandomGraphEdge& edge(std::size_t e) const { return edges_.at(e); }
    const std::vector<std::size_t>& incidentEdges(std::size_t v) const { return adjacency_.at(v); }
    std::size_t other(std::size_t e, std::size_t v) const
    {
        return edges_[e].source == v ? edges_[e].target : edges_[e].source;
    }

private:
    static std::uint64_t edgeKey(std::size_t a, std::size_t b)
    {
        if (a > b) std::swap(a, b);
        return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
    }

    std::vector<RandomGraphVertex> vertices_;
    std::vector<RandomGraphEdge> edges_;
    std::vector<std::vector<std::size_t>> adjacency_;
    std::unordered_map<std::uint64_t, std::size_t> edgeIndex_;
};

struct RandomGraphParams {
    std::size_t maxIterations = 1000;
    double radius = 0.5;
    /// <= 0 selects the environment default (robotRadius / 2)
    double resolution = 0;
    /// Sampling stops after this many consecutive rejected draws.
    std::size_t maxConsecutiveRejections = 100000;
};

namespace detail {

/// Uniform grid over positions; cell size = connection radius. Since the
/// metric dominates Euclidean distance, the 3x3 neighbourhood holds every
/// candidate within the radius.
class PositionGrid {
public:
    explicit PositionGrid(double cell) : cell_(cell) {}

    void insert(std::size_t id, Vec2 p) { cells_[key(cellOf(p.x), cellOf(p.y))].push_back(id); }

    template <typename Fn>
    void forEachNear(Vec2 p, Fn&& fn) const
    {
        const auto cx = cellOf(p.x);
        const auto cy = cellOf(p.y);
        for (std::int64_t dx = -1; dx <= 1; ++dx)
            for (std::int64_t dy = -1; dy <= 1; ++dy)
                if (auto it = cells_.find(key(cx + dx, cy + dy)); it != cells_.end())
                    for (const auto id : it->second) fn(id);
    }

private:
    std::int64_t cellOf(double v) const { return static_cast<std::int64_t>(std::floor(v / cell_)); }
    static std::uint64_t key(std::int64_t x, std::int64_t y)
    {
        return (static_cast<std::uint64_t>(x) << 32) ^ static_cast<std::uint64_t>(y & 0xffffffff);
    }

    double cell_;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> cells_;
};

}  // namespace detail

inline std::vector<std::vector<std::size_t>> observableInAllWorlds(const RobotState& s, const Environment& env)
{
    std::vector<std::vector<std::size_t>> out;
    out.reserve(env.numWorlds());
    for (std::size_t h = 0; h < env.numWorlds(); ++h) out.push_back(targetsFound(s, h, env));
    return out;
}

/// Incremental random-graph construction over an environment.
class RandomGraphBuilder {
public:
    RandomGraphBuilder(const Environment& env, double radius, double resolution)
        : env_(env), radius_(radius), resolution_(resolution > 0 ? resolution : env.defaultResolution()),
          grid_(radius)
    {
        if (!(radius > 0)) throw std::invalid_argument("connection radius must be positive");
    }

    /// Adds a vertex and connects it to every neighbour within the radius, in
    /// every hypothesis where the straight motion is valid.
    std::size_t insert(const RobotState& s)
    {
        const std::size_t v = graph_.addVertex(s, observableInAllWorlds(s, env_));
        std::vector<std::size_t> near;
        grid_.forEachNear(s.position(), [&](std::size_t u) { near.push_back(u); });
        std::sort(near.begin(), near.end());
        for (const auto u : near) {
            const RobotState& other = graph_.vertex(u).state;
            const double d = env_.distance(s, other);
            if (d > radius_) continue;
            const WorldSet worlds = motionValidWorlds(s, other, env_, resolution_);
            if (worlds != 0) graph_.connect(v, u, worlds, d);
        }
        grid_.insert(v, s.position());
        return v;
    }

    RandomGraph& graph() { return graph_; }
    RandomGraph take() { return std::move(graph_); }

private:
    const Environment& env_;
    double radius_;
    double resolution_;
    RandomGraph graph_;
    detail::PositionGrid grid_;
};

/// Headings at the start position that look at each object present in some
/// hypothesis, in object order.
inline std::vector<RobotState> startObservationStates(const Environment& env)
{
    ObjectMask present = 0;
    for (std::size_t h = 0; h < env.numWorlds(); ++h) present |= env.world.hypotheses().presentObjects(h);
    std::vector<RobotState> out;
    for (const auto& obj : env.poObjects) {
        if (((present >> obj.index) & 1U) == 0) continue;
        if (obj.shape.center == env.start.position()) continue;
        out.push_back(facing(env.start.position(), obj.shape.center));
    }
    return out;
}

/// Rapidly exploring random graph. Vertex 0 is the start, followed by the
/// start-position observation states. Each iteration samples a hypothesis,
/// draws a state, rejects it unless valid in that hypothesis, then connects
/// it. Rejected draws do not count as iterations.
inline RandomGraph buildRandomGraph(const Environment& env, StateSampler& sampler, const RandomGraphParams& params)
{
    for (std::size_t h = 0; h < env.numWorlds(); ++h)
        if (!isValid(env.start, h, env))
            throw PlanningError("start state is invalid in hypothesis " + std::to_string(h));

    RandomGraphBuilder builder(env, params.radius, params.resolution);
    builder.insert(env.start);
    for (const auto& s : startObservationStates(env)) builder.insert(s);

    std::size_t iteration = 0;
    std::size_t rejectedInARow = 0;
    while (iteration < params.maxIterations) {
        const std::size_t h = sampler.uniformIndex(env.numWorlds());
        const Sample sample = sampler.draw(env, h);
        if (!isValid(sample.state, h, env)) {
            if (++rejectedInARow >= params.maxConsecutiveRejections) break;
            continue;
        }
        rejectedInARow = 0;
        builder.insert(sample.state);
        ++iteration;
    }
    return builder.take();
}

}  // namespace pto
