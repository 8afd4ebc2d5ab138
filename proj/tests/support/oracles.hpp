#pragma once

// Reference solvers used only by the tests. They share the geometric
// primitives with the library but none of the planning code.

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <tuple>
#include <numbers>
#include <queue>
#include <vector>

#include "pto/pto.hpp"

namespace oracle {

using pto::Belief;
using pto::ObjectMask;
using pto::WorldSet;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Arc {
    std::size_t to;
    double length;
    WorldSet valid;
};

/// Undirected graph with per-hypothesis observable objects at each node.
struct Graph {
    std::vector<std::vector<Arc>> adj;
    std::vector<std::vector<ObjectMask>> observable;  // [node][hypothesis]

    std::size_t size() const { return adj.size(); }
    void link(std::size_t a, std::size_t b, double length, WorldSet valid)
    {
        adj[a].push_back({b, length, valid});
        adj[b].push_back({a, length, valid});
    }
};

/// Plain Dijkstra from `source`.
inline std::vector<double> dijkstra(const std::vector<std::vector<Arc>>& adj, std::size_t source)
{
    std::vector<double> d(adj.size(), kInf);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    d[source] = 0;
    pq.push({0, source});
    while (!pq.empty()) {
        const auto [du, u] = pq.top();
        pq.pop();
        if (du > d[u]) continue;
        for (const auto& a : adj[u]) {
            if (du + a.length < d[a.to]) {
                d[a.to] = du + a.length;
                pq.push({d[a.to], a.to});
            }
        }
    }
    return d;
}

/// Shortest distance from vertex 0 to any vertex at the (single) goal.
inline double randomGraphDijkstra(const pto::RandomGraph& g, const pto::Environment& env)
{
    std::vector<std::vector<Arc>> adj(g.vertices().size());
    for (const auto& e : g.edges()) {
        adj[e.source].push_back({e.target, e.length, e.validWorlds});
        adj[e.target].push_back({e.source, e.length, e.validWorlds});
    }
    const auto d = dijkstra(adj, 0);
    double best = kInf;
    for (std::size_t v = 0; v < g.vertices().size(); ++v)
        if (pto::atPosition(g.vertex(v).state, env.goals.front(), env.goalTolerance())) best = std::min(best, d[v]);
    return best;
}

/// Optimal expected cost over (node x belief). Beliefs are solved from the
/// most informed to the least: a belief's value at each node is a shortest
/// path over edges valid in its whole support, seeded with 0 at goal nodes
/// and with the expected posterior value wherever an object can be observed
/// in every hypothesis of the support.
class ProductDp {
public:
    using GoalFn = std::function<bool(std::size_t node, const Belief&)>;

    ProductDp(const Graph& g, const pto::World& world, const Belief& b0, GoalFn goal)
        : g_(g), world_(world), goal_(std::move(goal))
    {
        beliefs_ = world.allBeliefStates(b0);
        std::vector<std::size_t> order(beliefs_.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return std::popcount(beliefs_[a].support()) < std::popcount(beliefs_[b].support());
        });
        for (std::size_t i = 0; i < beliefs_.size(); ++i) index_.emplace(beliefs_[i], i);
        values_.assign(beliefs_.size(), {});
        for (const auto i : order) solve(i);
    }

    double value(std::size_t node, const Belief& b) const { return values_.at(index_.at(b)).at(node); }

private:
    void solve(std::size_t bi)
    {
        const Belief& b = beliefs_[bi];
        const WorldSet support = b.support();
        const std::size_t n = g_.size();
        std::vector<double> v(n, kInf);
        for (std::size_t q = 0; q < n; ++q) {
            if (goal_(q, b)) {
                v[q] = 0;
                continue;
            }
            ObjectMask visible = ~ObjectMask{0};
            for (std::size_t h = 0; h < world_.numWorlds(); ++h)
                if ((support >> h) & 1U) visible &= g_.observable[q][h];
            for (std::size_t o = 0; o < world_.numObjects(); ++o) {
                if (((visible >> o) & 1U) == 0) continue;
                const auto obs = world_.observe(b, o);
                if (obs.size() < 2) continue;
                double e = 0;
                for (const auto& x : obs)
                    e += world_.branchingProbability(b, x.posterior).convert_to<double>() *
                         values_[index_.at(x.posterior)][q];
                v[q] = std::min(v[q], e);
            }
        }
        using Item = std::pair<double, std::size_t>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        for (std::size_t q = 0; q < n; ++q)
            if (v[q] < kInf) pq.push({v[q], q});
        while (!pq.empty()) {
            const auto [dq, q] = pq.top();
            pq.pop();
            if (dq > v[q]) continue;
            for (const auto& a : g_.adj[q]) {
                if ((support & ~a.valid) != 0) continue;
                if (dq + a.length < v[a.to]) {
                    v[a.to] = dq + a.length;
                    pq.push({v[a.to], a.to});
                }
            }
        }
        values_[bi] = std::move(v);
    }

    const Graph& g_;
    const pto::World& world_;
    GoalFn goal_;
    std::vector<Belief> beliefs_;
    std::map<Belief, std::size_t> index_;
    std::vector<std::vector<double>> values_;
};

inline ObjectMask visibleObjects(const pto::RobotState& s, std::size_t h, const pto::Environment& env)
{
    ObjectMask m = 0;
    for (const auto o : pto::targetsFound(s, h, env)) m |= ObjectMask{1} << o;
    return m;
}

/// 6x6 grid of unit cells split by a wall at column 3. Each row in `doorRows`
/// holds a door (one object per row, in order) and row 5 is always open. A
/// cell carries one state per door, facing it; states of one cell are joined
/// by zero-length edges, equal headings of 4-neighbouring cells by unit edges.
/// The same graph is returned for the planner and for the oracle.
struct GridWorld {
    pto::Environment env;
    pto::RandomGraph graph;
    Graph oracle;
    std::vector<bool> goal;
};

inline GridWorld makeGridWorld(const Belief& prior, const std::vector<int>& doorRows)
{
    GridWorld w;
    auto& env = w.env;
    env.bounds = {{0, 0}, {6, 6}};
    env.robotRadius = 0.2;
    env.sensor = {std::numbers::pi / 4, 1.6};
    std::vector<pto::Vec2> doors;
    for (int r = 0; r < 5; ++r) {
        if (std::find(doorRows.begin(), doorRows.end(), r) != doorRows.end()) continue;
        env.staticObstacles.push_back(pto::ConvexPolygon::rectangle({3, double(r)}, {4, r + 1.0}));
    }
    for (std::size_t k = 0; k < doorRows.size(); ++k) {
        doors.push_back({3.5, doorRows[k] + 0.5});
        env.poObjects.push_back({k, pto::Circle{doors.back(), 0.3}});
    }
    env.start = pto::facing({0.5, 2.5}, doors.front());
    env.goals = {pto::facing({5.5, 2.5}, doors.front())};
    env.initialBelief = prior;
    env.finalize();

    const std::size_t worlds = env.numWorlds();
    std::vector<std::pair<int, int>> cells{{0, 2}};
    for (int j = 0; j < 6; ++j)
        for (int i = 0; i < 6; ++i)
            if (!(i == 0 && j == 2)) cells.emplace_back(i, j);
    std::map<std::tuple<int, int, std::size_t>, std::size_t> id;
    std::vector<pto::RobotState> states;
    for (const auto& [i, j] : cells) {
        for (std::size_t k = 0; k < doors.size(); ++k) {
            const auto s = pto::facing({i + 0.5, j + 0.5}, doors[k]);
            bool any = false;
            for (std::size_t h = 0; h < worlds; ++h) any = any || pto::isValid(s, h, env);
            if (!any) break;
            id[{i, j, k}] = states.size();
            states.push_back(s);
            std::vector<std::vector<std::size_t>> seen;
            for (std::size_t h = 0; h < worlds; ++h) seen.push_back(pto::targetsFound(s, h, env));
            w.graph.addVertex(s, seen);
            w.goal.push_back(i == 5 && j == 2);
        }
    }
    w.oracle.adj.assign(states.size(), {});
    w.oracle.observable.assign(states.size(), std::vector<ObjectMask>(worlds, 0));
    for (std::size_t v = 0; v < states.size(); ++v)
        for (std::size_t h = 0; h < worlds; ++h) w.oracle.observable[v][h] = visibleObjects(states[v], h, env);
    auto join = [&](std::size_t a, std::size_t b, double length) {
        const WorldSet valid = pto::motionValidWorlds(states[a], states[b], env, env.defaultResolution());
        if (valid == 0) return;
        w.graph.connect(a, b, valid, length);
        w.oracle.link(a, b, length, valid);
    };
    for (const auto& [key, a] : id) {
        const auto [i, j, k] = key;
        for (std::size_t k2 = k + 1; k2 < doors.size(); ++k2)
            if (const auto it = id.find({i, j, k2}); it != id.end()) join(a, it->second, 0.0);
        for (const auto& [di, dj] : {std::pair{1, 0}, std::pair{0, 1}})
            if (const auto it = id.find({i + di, j + dj, k}); it != id.end()) join(a, it->second, 1.0);
    }
    return w;
}

/// Square lattice of spacing `step` over the environment with edges to all
/// lattice points within `radius`. Heading is free (zero angular weight), so
/// an object counts as observable when some heading sees it.
struct Lattice {
    Graph graph;
    std::vector<pto::Vec2> points;
    std::size_t start = 0;
    std::size_t goal = 0;
};

inline Lattice buildLattice(const pto::Environment& env, double step, double radius)
{
    Lattice lat;
    const auto& lo = env.bounds.min;
    const auto& hi = env.bounds.max;
    const int nx = static_cast<int>(std::floor((hi.x - lo.x) / step + 1e-9)) + 1;
    const int ny = static_cast<int>(std::floor((hi.y - lo.y) / step + 1e-9)) + 1;
    const double resolution = env.defaultResolution();
    const std::size_t worlds = env.numWorlds();
    std::vector<long> id(static_cast<std::size_t>(nx * ny), -1);
    auto cell = [&](int i, int j) { return static_cast<std::size_t>(j * nx + i); };
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const pto::Vec2 p{lo.x + i * step, lo.y + j * step};
            bool anyValid = false;
            for (std::size_t h = 0; h < worlds && !anyValid; ++h)
                anyValid = pto::isValid(pto::RobotState(p.x, p.y, 0), h, env);
            if (!anyValid) continue;
            id[cell(i, j)] = static_cast<long>(lat.points.size());
            lat.points.push_back(p);
        }
    }
    auto nearest = [&](pto::Vec2 p) {
        const int i = static_cast<int>(std::lround((p.x - lo.x) / step));
        const int j = static_cast<int>(std::lround((p.y - lo.y) / step));
        return static_cast<std::size_t>(id.at(cell(i, j)));
    };
    lat.start = nearest(env.start.position());
    lat.goal = nearest(env.goals.front().position());

    const std::size_t n = lat.points.size();
    lat.graph.adj.assign(n, {});
    lat.graph.observable.assign(n, std::vector<ObjectMask>(worlds, 0));
    const int reach = static_cast<int>(std::floor(radius / step + 1e-9));
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const long a = id[cell(i, j)];
            if (a < 0) continue;
            const pto::Vec2 pa = lat.points[static_cast<std::size_t>(a)];
            for (const auto& obj : env.poObjects) {
                const auto s = pto::facing(pa, obj.shape.center);
                for (std::size_t h = 0; h < worlds; ++h)
                    lat.graph.observable[static_cast<std::size_t>(a)][h] |= visibleObjects(s, h, env) &
                                                                            (ObjectMask{1} << obj.index);
            }
            // each undirected pair once: neighbours lexicographically after (j, i)
            for (int dj = 0; dj <= reach; ++dj) {
                for (int di = -reach; di <= reach; ++di) {
                    if (dj == 0 && di <= 0) continue;
                    if (std::hypot(di, dj) * step > radius + 1e-9) continue;
                    const int i2 = i + di;
                    const int j2 = j + dj;
                    if (i2 < 0 || i2 >= nx || j2 >= ny) continue;
                    const long b = id[cell(i2, j2)];
                    if (b < 0) continue;
                    const pto::Vec2 pb = lat.points[static_cast<std::size_t>(b)];
                    const WorldSet valid = pto::motionValidWorlds(pto::RobotState(pa.x, pa.y, 0),
                                                                  pto::RobotState(pb.x, pb.y, 0), env, resolution);
                    if (valid == 0) continue;
                    lat.graph.link(static_cast<std::size_t>(a), static_cast<std::size_t>(b), pto::norm(pb - pa), valid);
                }
            }
        }
    }
    return lat;
}

/// Optimal expected cost from the start on a lattice (Obstacles mode).
inline double latticeOptimum(const pto::Environment& env, double step, double radius)
{
    const Lattice lat = buildLattice(env, step, radius);
    const ProductDp dp(lat.graph, env.world, env.initialBelief,
                       [&](std::size_t q, const Belief&) { return q == lat.goal; });
    return dp.value(lat.start, env.initialBelief);
}

}  // namespace oracle
