#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "pto/belief.hpp"
#include "pto/geometry.hpp"

namespace pto {

struct SensorParams {
    double fovHalfAngle = std::numbers::pi / 4;  // radians, (0, pi]
    double range = 1.0;
};

struct PartiallyObservableObject {
    std::size_t index = 0;
    Circle shape;
    bool blocksWhenPresent = true;
};

/// 2D world with a disc robot and a cone-of-view sensor. Immutable once
/// finalize() has run; every query takes the hypothesis as a parameter.
struct Environment {
    Bounds bounds;
    std::vector<Shape> staticObstacles;
    std::vector<PartiallyObservableObject> poObjects;
    RobotState start;
    /// Goals mode: one goal per location. Obstacles mode: a single shared goal.
    std::vector<RobotState> goals;
    double robotRadius = 0.1;
    SensorParams sensor;
    WorldMode mode = WorldMode::Obstacles;
    Belief initialBelief;
    double angularWeight = 0.0;

    World world;

    /// Builds the hypothesis space, defaults the initial belief to uniform and
    /// checks invariants. Throws std::invalid_argument.
    void finalize();

    std::size_t numWorlds() const { return world.numWorlds(); }
    double defaultResolution() const { return robotRadius / 2; }
    double goalTolerance() const { return robotRadius / 10; }
    double distance(const RobotState& a, const RobotState& b) const { return pto::distance(a, b, angularWeight); }
};

/// Objects whose disc would block the robot at position p, and whether static
/// geometry or the bounds are hit.
struct CollisionProbe {
    bool blockedStatically = false;
    ObjectMask objects = 0;
};

inline CollisionProbe probeCollisions(Vec2 p, const Environment& env)
{
    CollisionProbe probe;
    if (!env.bounds.containsDisc(p, env.robotRadius)) {
        probe.blockedStatically = true;
        return probe;
    }
    for (const auto& s : env.staticObstacles) {
        if (discOverlaps(s, p, env.robotRadius)) {
            probe.blockedStatically = true;
            return probe;
        }
    }
    for (const auto& o : env.poObjects)
        if (o.blocksWhenPresent && discOverlaps(o.shape, p, env.robotRadius)) probe.objects |= ObjectMask{1} << o.index;
    return probe;
}

inline WorldSet validWorldsFor(const CollisionProbe& probe, const Environment& env)
{
    if (probe.blockedStatically) return 0;
    WorldSet valid = 0;
    for (std::size_t h = 0; h < env.numWorlds(); ++h)
        if ((env.world.hypotheses().presentObjects(h) & probe.objects) == 0) valid |= worldBit(h);
    return valid;
}

inline bool isValid(const RobotState& s, std::size_t hIdx, const Environment& env)
{
    if (hIdx >= env.numWorlds()) throw std::out_of_range("isValid: hypothesis index out of range");
    const auto probe = probeCollisions(s.position(), env);
    return !probe.blockedStatically && (env.world.hypotheses().presentObjects(hIdx) & probe.objects) == 0;
}

/// Hypotheses in which every interpolated state of the straight motion a->b
/// is valid. States are spaced at most `resolution` apart, endpoints included.
inline WorldSet motionValidWorlds(const RobotState& a, const RobotState& b, const Environment& env, double resolution)
{
    if (!(resolution > 0)) throw std::invalid_argument("motion resolution must be positive");
    // canonical direction so that a->b and b->a test identical points
    const bool swap = std::tie(b.x, b.y) < std::tie(a.x, a.y);
    const Vec2 p0 = swap ? b.position() : a.position();
    const Vec2 p1 = swap ? a.position() : b.position();
    const double len = norm(p1 - p0);
    const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(len / resolution)));
    CollisionProbe total;
    for (std::size_t i = 0; i <= steps; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(steps);
        const auto probe = probeCollisions(p0 + t * (p1 - p0), env);
        if (probe.blockedStatically) return 0;
        total.objects |= probe.objects;
    }
    return validWorldsFor(total, env);
}

inline bool isMotionValid(const RobotState& a, const RobotState& b, std::size_t hIdx, const Environment& env,
                          double resolution)
{
    if (hIdx >= env.numWorlds()) throw std::out_of_range("isMotionValid: hypothesis index out of range");
    return containsWorld(motionValidWorlds(a, b, env, resolution), hIdx);
}

/// Objects the sensor reports at state s in hypothesis hIdx: within range,
/// inside the field of view, and with an unobstructed line of sight. The
/// queried object's own presence does not matter; present objects occlude.
inline std::vector<std::size_t> targetsFound(const RobotState& s, std::size_t hIdx, const Environment& env)
{
    if (hIdx >= env.numWorlds()) throw std::out_of_range("targetsFound: hypothesis index out of range");
    const ObjectMask present = env.world.hypotheses().presentObjects(hIdx);
    const Vec2 eye = s.position();
    std::vector<std::size_t> found;
    for (const auto& obj : env.poObjects) {
        const Vec2 target = obj.shape.center;
        const Vec2 d = target - eye;
        const double dist = norm(d);
        if (dist > env.sensor.range) continue;
        if (dist > 0 && std::abs(shortestArc(s.theta, std::atan2(d.y, d.x))) > env.sensor.fovHalfAngle) continue;
        bool occluded = false;
        for (const auto& wall : env.staticObstacles) {
            if (segmentCrosses(wall, eye, target)) {
                occluded = true;
                break;
            }
        }
        for (const auto& other : env.poObjects) {
            if (occluded) break;
            if (other.index == obj.index || ((present >> other.index) & 1U) == 0) continue;
            occluded = segmentCrosses(Shape{other.shape}, eye, target);
        }
        if (!occluded) found.push_back(obj.index);
    }
    return found;
}

/// Goal state for hypothesis hIdx.
inline const RobotState& goalFor(std::size_t hIdx, const Environment& env)
{
    if (env.mode == WorldMode::Obstacles) return env.goals.front();
    const ObjectMask present = env.world.hypotheses().presentObjects(hIdx);
    return env.goals.at(static_cast<std::size_t>(std::countr_zero(present)));
}

inline bool atPosition(const RobotState& s, const RobotState& goal, double tolerance)
{
    return std::hypot(s.x - goal.x, s.y - goal.y) <= tolerance;
}

/// Goal condition of a state under a belief. Obstacles: the shared goal is
/// reached. Goals: the belief is final on hypothesis i and the state is at goal i.
inline bool isGoal(const RobotState& s, const Belief& b, const Environment& env)
{
    if (env.mode == WorldMode::Obstacles) return atPosition(s, env.goals.front(), env.goalTolerance());
    if (!b.isFinal()) return false;
    const auto h = static_cast<std::size_t>(std::countr_zero(b.support()));
    return atPosition(s, goalFor(h, env), env.goalTolerance());
}

inline void Environment::finalize()
{
    if (!(bounds.min.x <= bounds.max.x && bounds.min.y <= bounds.max.y))
        throw std::invalid_argument("bounds: min exceeds max");
    if (!(robotRadius > 0)) throw std::invalid_argument("robotRadius must be positive");
    if (!(sensor.fovHalfAngle > 0 && sensor.fovHalfAngle <= std::numbers::pi))
        throw std::invalid_argument("sensor.fovHalfAngle must lie in (0, pi]");
    if (!(sensor.range > 0)) throw std::invalid_argument("sensor.range must be positive");
    if (angularWeight < 0) throw std::invalid_argument("angularWeight must be nonnegative");
    for (std::size_t i = 0; i < poObjects.size(); ++i) {
        if (poObjects[i].index != i) throw std::invalid_argument("poObjects: index must match list position");
        if (!(poObjects[i].shape.radius > 0)) throw std::invalid_argument("poObjects: radius must be positive");
        poObjects[i].blocksWhenPresent = mode == WorldMode::Obstacles;
    }
    world = World(mode, poObjects.size());
    if (mode == WorldMode::Goals && goals.size() != poObjects.size())
        throw std::invalid_argument("goals: goals mode needs one goal per location (" +
                                    std::to_string(poObjects.size()) + "), got " + std::to_string(goals.size()));
    if (mode == WorldMode::Obstacles && goals.size() != 1)
        throw std::invalid_argument("goals: obstacles mode needs exactly one goal");
    if (initialBelief.size() == 0) initialBelief = Belief::uniform(world.numWorlds());
    if (initialBelief.size() != world.numWorlds())
        throw std::invalid_argument("initialBelief: expected " + std::to_string(world.numWorlds()) + " entries");
    for (std::size_t h = 0; h < world.numWorlds(); ++h)
        if (!isValid(start, h, *this))
            throw std::invalid_argument("start: invalid in hypothesis " + std::to_string(h));
}

}  // namespace pto
