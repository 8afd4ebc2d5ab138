#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "pto/belief.hpp"

using namespace pto;

namespace {

Belief B(std::initializer_list<const char*> entries)
{
    std::vector<std::string> s(entries.begin(), entries.end());
    return Belief::fromStrings(s);
}

std::set<Belief> asSet(const std::vector<Belief>& v) { return {v.begin(), v.end()}; }

// Every belief reachable from a uniform prior is uniform over the worlds
// consistent with a partial assignment (unknown / absent / present per object).
std::set<Belief> partialAssignmentOracle(std::size_t n)
{
    const std::size_t worlds = std::size_t{1} << n;
    std::set<Belief> out;
    std::size_t codes = 1;
    for (std::size_t i = 0; i < n; ++i) codes *= 3;
    for (std::size_t code = 0; code < codes; ++code) {
        std::vector<int> fixed(n);
        std::size_t c = code;
        for (std::size_t i = 0; i < n; ++i, c /= 3) fixed[i] = static_cast<int>(c % 3) - 1;  // -1 unknown
        std::vector<std::size_t> match;
        for (std::size_t h = 0; h < worlds; ++h) {
            bool ok = true;
            for (std::size_t i = 0; i < n; ++i)
                if (fixed[i] >= 0 && static_cast<int>((h >> i) & 1U) != fixed[i]) ok = false;
            if (ok) match.push_back(h);
        }
        std::vector<Rational> p(worlds, Rational(0));
        for (const auto h : match) p[h] = Rational(1, static_cast<long long>(match.size()));
        out.insert(Belief(p));
    }
    return out;
}

}  // namespace

TEST(Hypotheses, ObstaclesTwoObjectsOrder)
{
    const auto space = HypothesisSpace::enumerate(WorldMode::Obstacles, 2);
    ASSERT_EQ(space.size(), 4u);
    const std::vector<std::vector<bool>> expected{{false, false}, {true, false}, {false, true}, {true, true}};
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_EQ(space[k].presence, expected[k]);
        EXPECT_EQ(space[k].index, k);
    }
}

TEST(Hypotheses, GoalsThreeOneHot)
{
    const auto space = HypothesisSpace::enumerate(WorldMode::Goals, 3);
    ASSERT_EQ(space.size(), 3u);
    EXPECT_EQ(space[0].presence, (std::vector<bool>{true, false, false}));
    EXPECT_EQ(space[1].presence, (std::vector<bool>{false, true, false}));
    EXPECT_EQ(space[2].presence, (std::vector<bool>{false, false, true}));
}

TEST(Hypotheses, EmptyObstacleSpaceHasOneWorld)
{
    const auto space = HypothesisSpace::enumerate(WorldMode::Obstacles, 0);
    ASSERT_EQ(space.size(), 1u);
    EXPECT_TRUE(space[0].presence.empty());
}

TEST(Hypotheses, GoalsWithoutLocationsRejected)
{
    EXPECT_THROW(HypothesisSpace::enumerate(WorldMode::Goals, 0), std::invalid_argument);
    EXPECT_THROW(HypothesisSpace::enumerate(WorldMode::Obstacles, 7), std::invalid_argument);
}

TEST(Hypotheses, CountsAndOneHotProperty)
{
    for (std::size_t n = 0; n <= 6; ++n) EXPECT_EQ(HypothesisSpace::enumerate(WorldMode::Obstacles, n).size(), 1u << n);
    for (std::size_t n = 1; n <= 10; ++n) {
        const auto space = HypothesisSpace::enumerate(WorldMode::Goals, n);
        ASSERT_EQ(space.size(), n);
        for (const auto& h : space.hypotheses()) EXPECT_EQ(std::count(h.presence.begin(), h.presence.end(), true), 1);
    }
}

TEST(BeliefType, RejectsInvalidEntries)
{
    EXPECT_THROW(B({"1/2", "1/4"}), std::invalid_argument);
    EXPECT_THROW(B({"3/2", "-1/2"}), std::invalid_argument);
    EXPECT_THROW(B({"1/0"}), std::invalid_argument);
    EXPECT_THROW(B({"abc"}), std::invalid_argument);
    EXPECT_NO_THROW(B({"1/3", "2/3"}));
}

TEST(BeliefType, StringRoundTripIsExact)
{
    const Belief b = B({"1/3", "0", "2/6", "1/3"});
    EXPECT_EQ(b.toStrings(), (std::vector<std::string>{"1/3", "0", "1/3", "1/3"}));
    EXPECT_EQ(Belief::fromStrings(b.toStrings()), b);
}

TEST(Observe, UniformFourWorldsObjectZero)
{
    const World world(WorldMode::Obstacles, 2);
    const auto obs = world.observe(Belief::uniform(4), 0);
    ASSERT_EQ(obs.size(), 2u);
    EXPECT_FALSE(obs[0].outcome.seenPresent);
    EXPECT_EQ(obs[0].posterior, B({"1/2", "0", "1/2", "0"}));
    EXPECT_TRUE(obs[1].outcome.seenPresent);
    EXPECT_EQ(obs[1].posterior, B({"0", "1/2", "0", "1/2"}));
}

TEST(Observe, CertainBeliefIsFixedPoint)
{
    const World world(WorldMode::Obstacles, 2);
    const Belief b = Belief::certain(4, 0);
    for (std::size_t o = 0; o < 2; ++o) {
        const auto obs = world.observe(b, o);
        ASSERT_EQ(obs.size(), 1u);
        EXPECT_EQ(obs[0].posterior, b);
        EXPECT_FALSE(obs[0].outcome.seenPresent);
    }
}

TEST(Observe, GoalsModeLocationZero)
{
    const World world(WorldMode::Goals, 3);
    const auto obs = world.observe(Belief::uniform(3), 0);
    ASSERT_EQ(obs.size(), 2u);
    EXPECT_EQ(obs[0].posterior, B({"0", "1/2", "1/2"}));
    EXPECT_FALSE(obs[0].outcome.seenPresent);
    EXPECT_EQ(obs[1].posterior, B({"1", "0", "0"}));
    EXPECT_TRUE(obs[1].outcome.seenPresent);
}

TEST(Observe, InvalidObjectIndex)
{
    const World world(WorldMode::Obstacles, 2);
    EXPECT_THROW(world.observe(Belief::uniform(4), 2), std::out_of_range);
    EXPECT_THROW(world.observe(Belief::uniform(3), 0), std::invalid_argument);
}

TEST(AllBeliefStates, DoorSetFromUniform)
{
    const World world(WorldMode::Obstacles, 2);
    const auto beliefs = world.allBeliefStates(Belief::uniform(4));
    const std::set<Belief> expected{
        B({"1/4", "1/4", "1/4", "1/4"}), B({"1/2", "1/2", "0", "0"}), B({"1", "0", "0", "0"}),
        B({"0", "1", "0", "0"}),         B({"0", "0", "1/2", "1/2"}), B({"0", "0", "1", "0"}),
        B({"0", "0", "0", "1"}),         B({"1/2", "0", "1/2", "0"}), B({"0", "1/2", "0", "1/2"})};
    EXPECT_EQ(beliefs.size(), 9u);
    EXPECT_EQ(asSet(beliefs), expected);
    EXPECT_EQ(beliefs.front(), Belief::uniform(4));
}

TEST(AllBeliefStates, BoxSetFromUniform)
{
    const World world(WorldMode::Goals, 3);
    const auto beliefs = world.allBeliefStates(Belief::uniform(3));
    const std::set<Belief> expected{B({"1/3", "1/3", "1/3"}), B({"1", "0", "0"}),     B({"0", "1/2", "1/2"}),
                                    B({"0", "1", "0"}),       B({"0", "0", "1"}),     B({"1/2", "0", "1/2"}),
                                    B({"1/2", "1/2", "0"})};
    EXPECT_EQ(beliefs.size(), 7u);
    EXPECT_EQ(asSet(beliefs), expected);
}

TEST(AllBeliefStates, NoObjectsGivesPrior)
{
    const World world(WorldMode::Obstacles, 0);
    const auto beliefs = world.allBeliefStates(Belief::uniform(1));
    ASSERT_EQ(beliefs.size(), 1u);
    EXPECT_EQ(beliefs[0], Belief::uniform(1));
}

TEST(AllBeliefStates, DiscoveryOrderIsBreadthFirst)
{
    const World world(WorldMode::Obstacles, 2);
    const auto beliefs = world.allBeliefStates(Belief::uniform(4));
    // level 1: object 0 absent, object 0 present, object 1 absent, object 1 present
    EXPECT_EQ(beliefs[1], B({"1/2", "0", "1/2", "0"}));
    EXPECT_EQ(beliefs[2], B({"0", "1/2", "0", "1/2"}));
    EXPECT_EQ(beliefs[3], B({"1/2", "1/2", "0", "0"}));
    EXPECT_EQ(beliefs[4], B({"0", "0", "1/2", "1/2"}));
}

TEST(AllBeliefStates, ThreeToTheNAgainstPartialAssignments)
{
    for (std::size_t n = 0; n <= 4; ++n) {
        const World world(WorldMode::Obstacles, n);
        const auto beliefs = world.allBeliefStates(Belief::uniform(world.numWorlds()));
        std::size_t pow3 = 1;
        for (std::size_t i = 0; i < n; ++i) pow3 *= 3;
        EXPECT_EQ(beliefs.size(), pow3) << "n=" << n;
        EXPECT_EQ(asSet(beliefs), partialAssignmentOracle(n)) << "n=" << n;
    }
}

TEST(AllBeliefStates, ClosedUnderObserveAndNormalized)
{
    std::mt19937_64 rng(7);
    for (std::size_t n = 1; n <= 4; ++n) {
        const World world(WorldMode::Obstacles, n);
        // random non-uniform prior with integer weights
        std::vector<long long> w(world.numWorlds());
        for (auto& x : w) x = std::uniform_int_distribution<long long>(0, 5)(rng);
        w[0] += 1;
        const long long total = std::accumulate(w.begin(), w.end(), 0LL);
        std::vector<Rational> p;
        for (const auto x : w) p.emplace_back(x, total);
        const auto beliefs = world.allBeliefStates(Belief(p));
        const auto set = asSet(beliefs);
        EXPECT_EQ(set.size(), beliefs.size());
        for (const auto& b : beliefs) {
            for (std::size_t o = 0; o < n; ++o) {
                Rational mass = 0;
                for (const auto& obs : world.observe(b, o)) {
                    EXPECT_TRUE(set.count(obs.posterior));
                    EXPECT_EQ(std::accumulate(obs.posterior.probs().begin(), obs.posterior.probs().end(), Rational(0)),
                              Rational(1));
                    mass += world.branchingProbability(b, obs.posterior);
                }
                EXPECT_EQ(mass, Rational(1));
            }
        }
    }
}

TEST(Compatible, SupportSubsetFilter)
{
    const World world(WorldMode::Obstacles, 2);
    const auto beliefs = world.allBeliefStates(Belief::uniform(4));
    EXPECT_EQ(world.compatibleBeliefs(allWorlds(4), beliefs).size(), beliefs.size());
    EXPECT_TRUE(world.compatibleBeliefs(0, beliefs).empty());
    const auto got = world.compatibleBeliefs(worldBit(0) | worldBit(2), beliefs);
    // oracle: keep beliefs with zero mass on hypotheses 1 and 3
    std::set<Belief> expected;
    for (const auto& b : beliefs)
        if (b[1] == 0 && b[3] == 0) expected.insert(b);
    EXPECT_EQ(asSet(got), expected);
    EXPECT_EQ(asSet(got), (std::set<Belief>{B({"1", "0", "0", "0"}), B({"0", "0", "1", "0"}), B({"1/2", "0", "1/2", "0"})}));
}

TEST(Branching, Examples)
{
    const World door(WorldMode::Obstacles, 2);
    EXPECT_EQ(door.branchingProbability(Belief::uniform(4), B({"1/2", "0", "1/2", "0"})), Rational(1, 2));
    EXPECT_EQ(door.branchingProbability(Belief::certain(4, 0), Belief::certain(4, 0)), Rational(1));
    const World box(WorldMode::Goals, 3);
    EXPECT_EQ(box.branchingProbability(Belief::uniform(3), B({"0", "1/2", "1/2"})), Rational(2, 3));
}

TEST(Branching, AlwaysHalfFromUniformObstacles)
{
    for (std::size_t n = 1; n <= 4; ++n) {
        const World world(WorldMode::Obstacles, n);
        for (const auto& b : world.allBeliefStates(Belief::uniform(world.numWorlds()))) {
            for (std::size_t o = 0; o < n; ++o) {
                const auto obs = world.observe(b, o);
                if (obs.size() < 2) continue;
                for (const auto& x : obs) EXPECT_EQ(world.branchingProbability(b, x.posterior), Rational(1, 2));
            }
        }
    }
}

TEST(FinalBelief, Examples)
{
    EXPECT_TRUE(World::isFinalBelief(B({"0", "1", "0", "0"})));
    EXPECT_FALSE(World::isFinalBelief(B({"1/2", "1/2", "0", "0"})));
    EXPECT_FALSE(World::isFinalBelief(Belief::uniform(4)));
}

TEST(FinalBelief, ObserveIsIdempotent)
{
    const World world(WorldMode::Obstacles, 3);
    for (std::size_t h = 0; h < 8; ++h)
        for (std::size_t o = 0; o < 3; ++o) {
            const auto obs = world.observe(Belief::certain(8, h), o);
            ASSERT_EQ(obs.size(), 1u);
            EXPECT_EQ(obs[0].posterior, Belief::certain(8, h));
            EXPECT_EQ(obs[0].outcome.seenPresent, ((h >> o) & 1U) != 0);
        }
}
