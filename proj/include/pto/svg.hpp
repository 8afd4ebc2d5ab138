#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "pto/path_tree.hpp"
#include "pto/validate.hpp"

namespace pto {

namespace detail {

class SvgCanvas {
public:
    SvgCanvas(const Bounds& b, double pixelsPerUnit) : bounds_(b), scale_(pixelsPerUnit) {}

    double x(double wx) const { return (wx - bounds_.min.x) * scale_; }
    double y(double wy) const { return (bounds_.max.y - wy) * scale_; }
    double len(double l) const { return l * scale_; }
    double width() const { return len(bounds_.max.x - bounds_.min.x); }
    double height() const { return len(bounds_.max.y - bounds_.min.y); }

private:
    Bounds bounds_;
    double scale_;
};

inline const char* paletteColor(std::size_t i)
{
    static constexpr std::array<const char*, 8> palette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                        "#ff7f0e", "#17becf", "#e377c2", "#8c564b"};
    return palette[i % palette.size()];
}

}  // namespace detail

/// SVG drawing of a scenario and a path tree. Trunk edges shared by several
/// leaves are black. Each leaf gets one polyline (class "branch") from its
/// last branch point, coloured by the first hypothesis its belief allows.
/// Observation points are dots in the colour of the observed object.
inline std::string renderSvg(const Environment& env, const PathTree& tree, double pixelsPerUnit = 100)
{
    for (const auto& v : tree.vertices())
        if (v.belief.size() != env.numWorlds())
            throw std::invalid_argument("tree beliefs have " + std::to_string(v.belief.size()) +
                                        " entries but the scenario has " + std::to_string(env.numWorlds()) +
                                        " hypotheses");
    const detail::SvgCanvas c(env.bounds, pixelsPerUnit);
    std::ostringstream s;
    s.precision(6);
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << c.width() << "\" height=\"" << c.height()
      << "\" viewBox=\"0 0 " << c.width() << ' ' << c.height() << "\">\n";
    s << "<rect class=\"bounds\" x=\"0\" y=\"0\" width=\"" << c.width() << "\" height=\"" << c.height()
      << "\" fill=\"white\" stroke=\"black\"/>\n";

    for (const auto& shape : env.staticObstacles) {
        if (const auto* circle = std::get_if<Circle>(&shape)) {
            s << "<circle class=\"obstacle\" cx=\"" << c.x(circle->center.x) << "\" cy=\"" << c.y(circle->center.y)
              << "\" r=\"" << c.len(circle->radius) << "\" fill=\"#555\"/>\n";
        } else {
            s << "<polygon class=\"obstacle\" points=\"";
            for (const auto& v : std::get<ConvexPolygon>(shape).vertices()) s << c.x(v.x) << ',' << c.y(v.y) << ' ';
            s << "\" fill=\"#555\"/>\n";
        }
    }
    for (const auto& o : env.poObjects) {
        s << "<circle class=\"po-object\" cx=\"" << c.x(o.shape.center.x) << "\" cy=\"" << c.y(o.shape.center.y)
          << "\" r=\"" << c.len(o.shape.radius) << "\" fill=\"none\" stroke=\"" << detail::paletteColor(o.index)
          << "\" stroke-width=\"2\" stroke-dasharray=\"4 3\"/>\n";
        s << "<text x=\"" << c.x(o.shape.center.x) << "\" y=\"" << c.y(o.shape.center.y)
          << "\" font-size=\"12\" text-anchor=\"middle\">" << o.index << "</text>\n";
    }
    s << "<circle class=\"start\" cx=\"" << c.x(env.start.x) << "\" cy=\"" << c.y(env.start.y) << "\" r=\"6\" fill=\"green\"/>\n";
    for (const auto& g : env.goals)
        s << "<circle class=\"goal\" cx=\"" << c.x(g.x) << "\" cy=\"" << c.y(g.y) << "\" r=\"6\" fill=\"orange\"/>\n";

    if (!tree.empty()) {
        // leaves below each vertex
        std::vector<std::size_t> below(tree.size(), 0);
        for (const auto leaf : tree.leaves())
            for (std::size_t v = leaf; v != kNoVertex; v = tree.parent(v)) ++below[v];

        for (const auto& e : tree.edges()) {
            if (below[e.to] <= 1 || e.isObservation) continue;
            const auto& a = tree.vertex(e.from).state;
            const auto& b = tree.vertex(e.to).state;
            s << "<line class=\"trunk\" x1=\"" << c.x(a.x) << "\" y1=\"" << c.y(a.y) << "\" x2=\"" << c.x(b.x)
              << "\" y2=\"" << c.y(b.y) << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
        }
        for (const auto leaf : tree.leaves()) {
            std::vector<std::size_t> chain{leaf};
            std::size_t v = leaf;
            while (tree.parent(v) != kNoVertex && below[v] == 1) {
                v = tree.parent(v);
                chain.push_back(v);
            }
            const auto hypothesis = static_cast<std::size_t>(std::countr_zero(tree.vertex(leaf).belief.support()));
            s << "<polyline class=\"branch\" fill=\"none\" stroke=\"" << detail::paletteColor(hypothesis)
              << "\" stroke-width=\"2\" points=\"";
            for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
                const auto& p = tree.vertex(*it).state;
                s << c.x(p.x) << ',' << c.y(p.y) << ' ';
            }
            s << "\"/>\n";
        }
        for (const auto v : tree.observationVertices()) {
            std::vector<Belief> posteriors;
            for (const auto e : tree.children(v)) posteriors.push_back(tree.vertex(tree.edges()[e].to).belief);
            const auto& p = tree.vertex(v).state;
            auto object = observedObject(env, p, tree.vertex(v).belief, posteriors);
            if (!object) {
                const auto any = matchingObservations(env.world, tree.vertex(v).belief, posteriors);
                if (!any.empty()) object = any.front();
            }
            s << "<circle class=\"observation\" cx=\"" << c.x(p.x) << "\" cy=\"" << c.y(p.y)
              << "\" r=\"5\" fill=\""
              << (object ? detail::paletteColor(*object) : "black") << "\"><title>observe "
              << (object ? std::to_string(*object) : std::string("?")) << "</title></circle>\n";
        }
    }
    s << "</svg>\n";
    return s.str();
}

}  // namespace pto
