#pragma once

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "pto/environment.hpp"
#include "pto/path_tree.hpp"

namespace pto {

using Json = nlohmann::ordered_json;

/// Malformed input file; `path` is the JSON pointer of the offending value.
class FormatError : public std::runtime_error {
public:
    FormatError(std::string path, const std::string& message)
        : std::runtime_error(path.empty() ? message : path + ": " + message), path_(std::move(path)), message_(message)
    {
    }
    const std::string& path() const { return path_; }
    const std::string& message() const { return message_; }

private:
    std::string path_;
    std::string message_;
};

namespace detail {

inline const Json& require(const Json& j, const std::string& key, const std::string& path)
{
    if (!j.is_object()) throw FormatError(path, "expected an object");
    const auto it = j.find(key);
    if (it == j.end()) throw FormatError(path + "/" + key, "missing");
    return *it;
}

inline double number(const Json& j, const std::string& path)
{
    if (!j.is_number()) throw FormatError(path, "expected a number");
    return j.get<double>();
}

inline double numberAt(const Json& j, const std::string& key, const std::string& path)
{
    return number(require(j, key, path), path + "/" + key);
}

inline Vec2 point(const Json& j, const std::string& path)
{
    if (!j.is_array() || j.size() != 2) throw FormatError(path, "expected [x, y]");
    return {number(j[0], path + "/0"), number(j[1], path + "/1")};
}

inline const Json& array(const Json& j, const std::string& key, const std::string& path)
{
    const Json& a = require(j, key, path);
    if (!a.is_array()) throw FormatError(path + "/" + key, "expected an array");
    return a;
}

inline RobotState stateDeg(const Json& j, const std::string& path)
{
    const double theta = j.is_object() && j.contains("thetaDeg") ? numberAt(j, "thetaDeg", path) : 0.0;
    return RobotState(numberAt(j, "x", path), numberAt(j, "y", path), degToRad(theta));
}

inline Json pointJson(Vec2 p) { return Json::array({p.x, p.y}); }

inline Json stateJson(const RobotState& s) { return {{"x", s.x}, {"y", s.y}, {"thetaDeg", radToDeg(s.theta)}}; }

inline Belief beliefFrom(const Json& j, const std::string& path)
{
    if (!j.is_array()) throw FormatError(path, "expected an array of \"p/q\" strings");
    std::vector<std::string> entries;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_string()) throw FormatError(path + "/" + std::to_string(i), "expected a \"p/q\" string");
        entries.push_back(j[i].get<std::string>());
    }
    try {
        return Belief::fromStrings(entries);
    } catch (const std::invalid_argument& e) {
        throw FormatError(path, e.what());
    }
}

inline Json readJsonFile(const std::string& file)
{
    std::ifstream in(file);
    if (!in) throw FormatError("", "cannot open file");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw FormatError("", e.what());
    }
}

// errors from a file get "file:path" as their location
template <class Fn>
auto fromFile(const std::string& file, Fn&& parse)
{
    try {
        return parse(readJsonFile(file));
    } catch (const FormatError& e) {
        throw FormatError(e.path().empty() ? file : file + ":" + e.path(), e.message());
    }
}

}  // namespace detail

/// Scenario schema (angles in degrees):
/// {bounds:{min:[x,y],max:[x,y]}, robotRadius, sensor:{fovHalfAngleDeg, range},
///  staticObstacles:[{polygon:[[x,y],...]} | {circle:{center:[x,y], radius}}],
///  poObjects:[{center:[x,y], radius}], mode:"obstacles"|"goals",
///  start:{x,y,thetaDeg}, goals:[{x,y,thetaDeg}], initialBelief:["p/q",...],
///  angularWeight}
/// initialBelief and angularWeight are optional.
inline Environment parseScenario(const Json& j)
{
    using namespace detail;
    Environment env;
    const Json& bounds = require(j, "bounds", "");
    env.bounds = {point(require(bounds, "min", "/bounds"), "/bounds/min"),
                  point(require(bounds, "max", "/bounds"), "/bounds/max")};
    env.robotRadius = numberAt(j, "robotRadius", "");
    const Json& sensor = require(j, "sensor", "");
    env.sensor.fovHalfAngle = degToRad(numberAt(sensor, "fovHalfAngleDeg", "/sensor"));
    env.sensor.range = numberAt(sensor, "range", "/sensor");

    if (j.contains("staticObstacles")) {
        const Json& obstacles = array(j, "staticObstacles", "");
        for (std::size_t i = 0; i < obstacles.size(); ++i) {
            const std::string path = "/staticObstacles/" + std::to_string(i);
            const Json& o = obstacles[i];
            if (o.is_object() && o.contains("polygon")) {
                const Json& pts = array(o, "polygon", path);
                std::vector<Vec2> vertices;
                for (std::size_t k = 0; k < pts.size(); ++k)
                    vertices.push_back(point(pts[k], path + "/polygon/" + std::to_string(k)));
                try {
                    env.staticObstacles.emplace_back(ConvexPolygon(std::move(vertices)));
                } catch (const std::invalid_argument& e) {
                    throw FormatError(path + "/polygon", e.what());
                }
            } else if (o.is_object() && o.contains("circle")) {
                const Json& c = o["circle"];
                const Circle circle{point(require(c, "center", path + "/circle"), path + "/circle/center"),
                                    numberAt(c, "radius", path + "/circle")};
                if (!(circle.radius > 0)) throw FormatError(path + "/circle/radius", "must be positive");
                env.staticObstacles.emplace_back(circle);
            } else {
                throw FormatError(path, "expected {polygon: ...} or {circle: ...}");
            }
        }
    }

    const Json& objects = array(j, "poObjects", "");
    for (std::size_t i = 0; i < objects.size(); ++i) {
        const std::string path = "/poObjects/" + std::to_string(i);
        env.poObjects.push_back(
            {i, Circle{point(require(objects[i], "center", path), path + "/center"), numberAt(objects[i], "radius", path)},
             true});
    }

    const Json& mode = require(j, "mode", "");
    if (mode == "obstacles") env.mode = WorldMode::Obstacles;
    else if (mode == "goals") env.mode = WorldMode::Goals;
    else throw FormatError("/mode", "expected \"obstacles\" or \"goals\"");

    env.start = stateDeg(require(j, "start", ""), "/start");
    const Json& goals = array(j, "goals", "");
    for (std::size_t i = 0; i < goals.size(); ++i) env.goals.push_back(stateDeg(goals[i], "/goals/" + std::to_string(i)));
    if (j.contains("initialBelief")) env.initialBelief = beliefFrom(j["initialBelief"], "/initialBelief");
    if (j.contains("angularWeight")) env.angularWeight = numberAt(j, "angularWeight", "");

    try {
        env.finalize();
    } catch (const std::invalid_argument& e) {
        // messages lead with the offending field, e.g. "sensor.range must be positive"
        const std::string msg = e.what();
        const auto end = msg.find_first_of(": ");
        std::string field = msg.substr(0, end);
        std::replace(field.begin(), field.end(), '.', '/');
        throw FormatError("/" + field, msg.substr(msg[end] == ':' ? end + 2 : end + 1));
    }
    return env;
}

inline Environment loadScenario(const std::string& file)
{
    return detail::fromFile(file, [](const Json& j) { return parseScenario(j); });
}

inline Json scenarioToJson(const Environment& env)
{
    using namespace detail;
    Json j;
    j["bounds"] = {{"min", pointJson(env.bounds.min)}, {"max", pointJson(env.bounds.max)}};
    j["robotRadius"] = env.robotRadius;
    j["sensor"] = {{"fovHalfAngleDeg", radToDeg(env.sensor.fovHalfAngle)}, {"range", env.sensor.range}};
    Json obstacles = Json::array();
    for (const auto& s : env.staticObstacles) {
        if (const auto* c = std::get_if<Circle>(&s)) {
            obstacles.push_back({{"circle", {{"center", pointJson(c->center)}, {"radius", c->radius}}}});
        } else {
            Json pts = Json::array();
            for (const auto& v : std::get<ConvexPolygon>(s).vertices()) pts.push_back(pointJson(v));
            obstacles.push_back({{"polygon", pts}});
        }
    }
    j["staticObstacles"] = obstacles;
    Json objects = Json::array();
    for (const auto& o : env.poObjects) objects.push_back({{"center", pointJson(o.shape.center)}, {"radius", o.shape.radius}});
    j["poObjects"] = objects;
    j["mode"] = env.mode == WorldMode::Obstacles ? "obstacles" : "goals";
    j["start"] = stateJson(env.start);
    Json goals = Json::array();
    for (const auto& g : env.goals) goals.push_back(stateJson(g));
    j["goals"] = goals;
    j["initialBelief"] = env.initialBelief.toStrings();
    if (env.angularWeight != 0) j["angularWeight"] = env.angularWeight;
    return j;
}

/// {vertices:[{id,x,y,thetaDeg,isGoal,belief}], edges:[{from,to,isObservation}], root}
inline Json pathTreeToJson(const PathTree& tree)
{
    Json vertices = Json::array();
    for (std::size_t v = 0; v < tree.size(); ++v) {
        const auto& x = tree.vertex(v);
        vertices.push_back({{"id", v},
                            {"x", x.state.x},
                            {"y", x.state.y},
                            {"thetaDeg", radToDeg(x.state.theta)},
                            {"isGoal", x.isGoal},
                            {"belief", x.belief.toStrings()}});
    }
    Json edges = Json::array();
    for (const auto& e : tree.edges()) edges.push_back({{"from", e.from}, {"to", e.to}, {"isObservation", e.isObservation}});
    return {{"vertices", vertices}, {"edges", edges}, {"root", PathTree::root()}};
}

inline PathTree pathTreeFromJson(const Json& j)
{
    using namespace detail;
    PathTree tree;
    const Json& vertices = array(j, "vertices", "");
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const std::string path = "/vertices/" + std::to_string(i);
        const Json& v = vertices[i];
        const Json& id = require(v, "id", path);
        if (!id.is_number_integer() || id.get<long long>() != static_cast<long long>(i))
            throw FormatError(path + "/id", "ids must be 0..n-1 in order");
        const Json& goal = require(v, "isGoal", path);
        if (!goal.is_boolean()) throw FormatError(path + "/isGoal", "expected a boolean");
        tree.addVertex({stateDeg(v, path), goal.get<bool>(), beliefFrom(require(v, "belief", path), path + "/belief")});
    }
    const Json& root = require(j, "root", "");
    if (!root.is_number_unsigned() || root.get<std::size_t>() != 0) throw FormatError("/root", "root must be vertex 0");
    const Json& edges = array(j, "edges", "");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const std::string path = "/edges/" + std::to_string(i);
        const Json& from = require(edges[i], "from", path);
        const Json& to = require(edges[i], "to", path);
        const Json& obs = require(edges[i], "isObservation", path);
        if (!from.is_number_unsigned() || !to.is_number_unsigned() || !obs.is_boolean())
            throw FormatError(path, "expected {from: id, to: id, isObservation: bool}");
        try {
            tree.addEdge(from.get<std::size_t>(), to.get<std::size_t>(), obs.get<bool>());
        } catch (const std::exception& e) {
            throw FormatError(path, e.what());
        }
    }
    return tree;
}

inline PathTree loadPathTree(const std::string& file)
{
    return detail::fromFile(file, [](const Json& j) { return pathTreeFromJson(j); });
}

inline void writeTextFile(const std::string& file, const std::string& text)
{
    std::ofstream out(file, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + file);
    out << text;
}

}  // namespace pto
