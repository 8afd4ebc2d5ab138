#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace pto {

/// Partially observable objects are either obstacles (any presence combination
/// is a world) or goal locations (exactly one location holds the object).
enum class WorldMode { Obstacles, Goals };

using Rational = boost::multiprecision::cpp_rational;

/// Set of hypothesis indices, bit i = hypothesis i.
using WorldSet = std::uint64_t;
/// Set of object indices, bit i = object i.
using ObjectMask = std::uint64_t;

inline constexpr std::size_t kMaxHypotheses = 64;

inline constexpr WorldSet worldBit(std::size_t i) { return WorldSet{1} << i; }

inline constexpr WorldSet allWorlds(std::size_t count)
{
    return count >= 64 ? ~WorldSet{0} : (WorldSet{1} << count) - 1;
}

inline constexpr bool containsWorld(WorldSet set, std::size_t i) { return (set >> i) & 1U; }

inline constexpr bool isSubset(WorldSet a, WorldSet b) { return (a & ~b) == 0; }

inline std::vector<std::size_t> worldIndices(WorldSet set)
{
    std::vector<std::size_t> out;
    while (set != 0) {
        out.push_back(static_cast<std::size_t>(std::countr_zero(set)));
        set &= set - 1;
    }
    return out;
}

struct WorldHypothesis {
    std::vector<bool> presence;
    std::size_t index = 0;

    bool present(std::size_t object) const { return presence.at(object); }
};

class HypothesisSpace {
public:
    HypothesisSpace() = default;

    /// Obstacles: 2^n hypotheses, hypothesis k has object i present iff bit i of k is set.
    /// Goals: n one-hot hypotheses, hypothesis i has the object at location i.
    static HypothesisSpace enumerate(WorldMode mode, std::size_t numObjects)
    {
        HypothesisSpace space;
        space.mode_ = mode;
        space.numObjects_ = numObjects;
        if (mode == WorldMode::Goals) {
            if (numObjects == 0)
                throw std::invalid_argument("goals mode needs at least one goal location");
            if (numObjects > kMaxHypotheses)
                throw std::invalid_argument("too many goal locations (max 64)");
            for (std::size_t i = 0; i < numObjects; ++i) {
                WorldHypothesis h{std::vector<bool>(numObjects, false), i};
                h.presence[i] = true;
                space.hypotheses_.push_back(std::move(h));
            }
        } else {
            if (numObjects > 6)
                throw std::invalid_argument("too many obstacle objects (max 6, 64 hypotheses)");
            const std::size_t count = std::size_t{1} << numObjects;
            for (std::size_t k = 0; k < count; ++k) {
                WorldHypothesis h{std::vector<bool>(numObjects, false), k};
                for (std::size_t i = 0; i < numObjects; ++i)
                    h.presence[i] = ((k >> i) & 1U) != 0;
                space.hypotheses_.push_back(std::move(h));
            }
        }
        space.presentMasks_.reserve(space.hypotheses_.size());
        for (const auto& h : space.hypotheses_) {
            ObjectMask mask = 0;
            for (std::size_t i = 0; i < numObjects; ++i)
                if (h.presence[i]) mask |= ObjectMask{1} << i;
            space.presentMasks_.push_back(mask);
        }
        return space;
    }

    WorldMode mode() const { return mode_; }
    std::size_t numObjects() const { return numObjects_; }
    std::size_t size() const { return hypotheses_.size(); }
    const WorldHypothesis& operator[](std::size_t i) const { return hypotheses_.at(i); }
    const std::vector<WorldHypothesis>& hypotheses() const { return hypotheses_; }

    /// Objects present under hypothesis h.
    ObjectMask presentObjects(std::size_t h) const { return presentMasks_.at(h); }

    /// Hypotheses under which object `object` has the given presence.
    WorldSet worldsWhere(std::size_t object, bool present) const
    {
        WorldSet set = 0;
        for (std::size_t h = 0; h < hypotheses_.size(); ++h)
            if (hypotheses_[h].presence[object] == present) set |= worldBit(h);
        return set;
    }

private:
    WorldMode mode_ = WorldMode::Obstacles;
    std::size_t numObjects_ = 0;
    std::vector<WorldHypothesis> hypotheses_;
    std::vector<ObjectMask> presentMasks_;
};

inline Rational parseRational(const std::string& text)
{
    using boost::multiprecision::cpp_int;
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(cpp_int(text));
        const cpp_int num(text.substr(0, slash));
        const cpp_int den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a rational \"p/q\": '" + text + "'");
    }
}

inline std::string formatRational(const Rational& r)
{
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

/// Exact probability distribution over a hypothesis space.
class Belief {
public:
    Belief() = default;

    explicit Belief(std::vector<Rational> probs) : probs_(std::move(probs))
    {
        if (probs_.empty()) throw std::invalid_argument("belief over an empty hypothesis space");
        if (probs_.size() > kMaxHypotheses) throw std::invalid_argument("belief exceeds 64 hypotheses");
        Rational sum = 0;
        for (const auto& p : probs_) {
            if (p < 0) throw std::invalid_argument("belief entry is negative");
            sum += p;
        }
        if (sum != 1) throw std::invalid_argument("belief entries sum to " + formatRational(sum) + ", not 1");
    }

    static Belief uniform(std::size_t n)
    {
        return Belief(std::vector<Rational>(n, Rational(1, static_cast<long long>(n))));
    }

    static Belief certain(std::size_t n, std::size_t index)
    {
        std::vector<Rational> probs(n, Rational(0));
        probs.at(index) = 1;
        return Belief(std::move(probs));
    }

    static Belief fromStrings(const std::vector<std::string>& entries)
    {
        std::vector<Rational> probs;
        probs.reserve(entries.size());
        for (const auto& e : entries) probs.push_back(parseRational(e));
        return Belief(std::move(probs));
    }

    std::vector<std::string> toStrings() const
    {
        std::vector<std::string> out;
        out.reserve(probs_.size());
        for (const auto& p : probs_) out.push_back(formatRational(p));
        return out;
    }

    std::size_t size() const { return probs_.size(); }
    const Rational& operator[](std::size_t i) const { return probs_.at(i); }
    const std::vector<Rational>& probs() const { return probs_; }

    double probability(std::size_t i) const { return probs_.at(i).convert_to<double>(); }

    WorldSet support() const
    {
        WorldSet s = 0;
        for (std::size_t i = 0; i < probs_.size(); ++i)
            if (probs_[i] > 0) s |= worldBit(i);
        return s;
    }

    bool isFinal() const
    {
        return std::count_if(probs_.begin(), probs_.end(), [](const Rational& p) { return p == 1; }) == 1;
    }

    friend bool operator==(const Belief& a, const Belief& b) { return a.probs_ == b.probs_; }
    friend bool operator<(const Belief& a, const Belief& b)
    {
        return std::lexicographical_compare(a.probs_.begin(), a.probs_.end(), b.probs_.begin(), b.probs_.end());
    }

private:
    std::vector<Rational> probs_;
};

inline std::string toString(const Belief& b)
{
    std::string out = "(";
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (i) out += ",";
        out += formatRational(b[i]);
    }
    return out + ")";
}

struct ObservationOutcome {
    std::size_t objectIndex = 0;
    bool seenPresent = false;

    friend bool operator==(const ObservationOutcome&, const ObservationOutcome&) = default;
};

struct Observation {
    ObservationOutcome outcome;
    Belief posterior;
};

/// The world object: hypothesis space plus the belief algebra over it.
class World {
public:
    World() = default;
    explicit World(HypothesisSpace space) : space_(std::move(space))
    {
        for (std::size_t i = 0; i < space_.numObjects(); ++i) {
            presentWorlds_.push_back(space_.worldsWhere(i, true));
        }
    }
    World(WorldMode mode, std::size_t numObjects) : World(HypothesisSpace::enumerate(mode, numObjects)) {}

    const HypothesisSpace& hypotheses() const { return space_; }
    std::size_t numWorlds() const { return space_.size(); }
    std::size_t numObjects() const { return space_.numObjects(); }
    WorldMode mode() const { return space_.mode(); }

    /// Bayes update with the deterministic binary sensor. Outcomes with zero
    /// prior mass are dropped; an already determined object yields {b}.
    std::vector<Observation> observe(const Belief& b, std::size_t object) const
    {
        if (object >= space_.numObjects()) throw std::out_of_range("observe: object index out of range");
        checkSize(b);
        const WorldSet present = presentWorlds_[object];
        Rational massPresent = 0;
        Rational massAbsent = 0;
        for (std::size_t h = 0; h < b.size(); ++h)
            (containsWorld(present, h) ? massPresent : massAbsent) += b[h];

        if (massPresent == 0 || massAbsent == 0)
            return {Observation{{object, massAbsent == 0}, b}};

        std::vector<Observation> out;
        for (const bool seen : {false, true}) {
            const Rational& mass = seen ? massPresent : massAbsent;
            std::vector<Rational> post(b.size(), Rational(0));
            for (std::size_t h = 0; h < b.size(); ++h)
                if (containsWorld(present, h) == seen) post[h] = b[h] / mass;
            out.push_back(Observation{{object, seen}, Belief(std::move(post))});
        }
        return out;
    }

    /// Breadth-first closure of {b0} under observe, in discovery order.
    std::vector<Belief> allBeliefStates(const Belief& b0) const
    {
        checkSize(b0);
        std::vector<Belief> order{b0};
        std::map<Belief, std::size_t> seen{{b0, 0}};
        for (std::size_t next = 0; next < order.size(); ++next) {
            for (std::size_t o = 0; o < space_.numObjects(); ++o) {
                for (auto& obs : observe(order[next], o)) {
                    if (seen.emplace(obs.posterior, order.size()).second) order.push_back(std::move(obs.posterior));
                }
            }
        }
        return order;
    }

    /// Beliefs whose support lies inside validWorlds.
    std::vector<Belief> compatibleBeliefs(WorldSet validWorlds, const std::vector<Belief>& beliefs) const
    {
        std::vector<Belief> out;
        for (const auto& b : beliefs)
            if (isSubset(b.support(), validWorlds)) out.push_back(b);
        return out;
    }

    /// Mass of `parent` on the support of `child`.
    Rational branchingProbability(const Belief& parent, const Belief& child) const
    {
        checkSize(parent);
        checkSize(child);
        Rational p = 0;
        for (std::size_t i = 0; i < parent.size(); ++i)
            if (child[i] > 0) p += parent[i];
        return p;
    }

    static bool isFinalBelief(const Belief& b) { return b.isFinal(); }

private:
    void checkSize(const Belief& b) const
    {
        if (b.size() != space_.size())
            throw std::invalid_argument("belief has " + std::to_string(b.size()) + " entries, world has " +
                                        std::to_string(space_.size()) + " hypotheses");
    }

    HypothesisSpace space_;
    std::vector<WorldSet> presentWorlds_;
};

}  // namespace pto
