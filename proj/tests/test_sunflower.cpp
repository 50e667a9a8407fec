#include "oracles.hpp"

#include "sunflower/experiments.hpp"
#include "sunflower/sunflower.hpp"

#include <gtest/gtest.h>

using namespace sunflower;

namespace {

SetFamily make(int n, int k, std::vector<ElementSet> sets) { return SetFamily{n, k, std::move(sets)}; }

SetFamily singletons(int n)
{
    SetFamily f{n, 1, {}};
    for (int e = 1; e <= n; ++e) f.sets.push_back(ElementSet{e});
    return f;
}

SetFamily complete(int n, int k)
{
    SetFamily f{n, k, {}};
    for_each_combination(f.ground(), k, [&](ElementSet s) {
        f.sets.push_back(s);
        return true;
    });
    return f;
}

void expect_valid(const SetFamily& f, const Sunflower& s, int p)
{
    ASSERT_EQ(s.petals.size(), static_cast<std::size_t>(p));
    const auto sets = oracle::sets_of(f);
    oracle::Set core;
    EXPECT_TRUE(oracle::is_sunflower(sets, s.petals, &core));
    EXPECT_EQ(oracle::to_set(s.core), core);
    for (std::size_t i = 0; i < s.petals.size(); ++i)
        for (std::size_t j = i + 1; j < s.petals.size(); ++j) EXPECT_NE(f[s.petals[i]], f[s.petals[j]]);
}

}  // namespace

TEST(IsSunflower, Examples)
{
    EXPECT_EQ(is_sunflower(make(4, 2, {{1, 2}, {1, 3}, {1, 4}}), {0, 1, 2}), ElementSet{1});
    EXPECT_EQ(is_sunflower(make(6, 2, {{1, 2}, {3, 4}, {5, 6}}), {0, 1, 2}), ElementSet{});
    EXPECT_FALSE(is_sunflower(make(3, 2, {{1, 2}, {2, 3}, {1, 3}}), {0, 1, 2}));
    const auto f = make(3, 2, {{1, 2}, {2, 3}});
    EXPECT_THROW(is_sunflower(f, {0, 0}), std::invalid_argument);
    EXPECT_THROW(is_sunflower(f, {0, 5}), std::out_of_range);
    EXPECT_THROW(is_sunflower(f, {0}), std::invalid_argument);
}

TEST(ErdosRado, Examples)
{
    const auto two = find_sunflower_erdos_rado(make(2, 1, {{1}, {2}}), 2);
    ASSERT_TRUE(two);
    EXPECT_EQ(two->petals, (std::vector<std::size_t>{0, 1}));
    EXPECT_TRUE(two->core.empty());

    EXPECT_FALSE(find_sunflower_erdos_rado(generate_extremal(3, 2), 3));
    EXPECT_THROW(find_sunflower_erdos_rado(make(2, 2, {{1, 2}, {1, 2}}), 2), std::invalid_argument);
}

TEST(ErdosRado, NineTwoSubsetsOfEightAlwaysYieldThreeSunflower)
{
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto f = generate_random_family(8, 2, 9, seed, true);
        const auto s = find_sunflower_erdos_rado(f, 3);
        ASSERT_TRUE(s) << "seed " << seed;
        expect_valid(f, *s, 3);
    }
}

TEST(ErdosRado, CompletenessAboveBoundAgainstOracle)
{
    // Above (p-1)^k k! every extraction succeeds; below it, found/none agrees with the oracle
    // whenever the extractor finds something.
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
        const int l = 4 + static_cast<int>(seed % 8);
        const auto f = generate_random_family(7, 2, static_cast<std::size_t>(l), seed, true);
        const auto s = find_sunflower_erdos_rado(f, 3);
        const bool exists = oracle::has_sunflower(oracle::sets_of(f), 3);
        if (l > 8) EXPECT_TRUE(s);
        if (s) {
            EXPECT_TRUE(exists);
            expect_valid(f, *s, 3);
        }
    }
}

TEST(ErdosRado, CoreReattachment)
{
    // Every member contains 9; the link is eight singletons.
    SetFamily f{9, 2, {}};
    for (int e = 1; e <= 8; ++e) f.sets.push_back(ElementSet{e, 9});
    const auto s = find_sunflower_erdos_rado(f, 3);
    ASSERT_TRUE(s);
    expect_valid(f, *s, 3);
    EXPECT_EQ(s->core, ElementSet{9});
}

TEST(SamplePartition, SizesAndDeterminism)
{
    const auto a = sample_partition(6, 3, std::uint64_t{1});
    for (const auto& part : a.parts) EXPECT_EQ(part.size(), 2);
    const auto b = sample_partition(7, 3, std::uint64_t{2});
    EXPECT_EQ(b.parts[0].size(), 3);
    EXPECT_EQ(b.parts[1].size(), 2);
    EXPECT_EQ(b.parts[2].size(), 2);
    EXPECT_EQ(sample_partition(20, 4, std::uint64_t{11}).parts, sample_partition(20, 4, std::uint64_t{11}).parts);
    EXPECT_THROW(sample_partition(2, 3, std::uint64_t{0}), std::invalid_argument);
}

TEST(SamplePartition, ValidityOverManySeeds)
{
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const int n = 3 + static_cast<int>(seed % 20);
        const int p = 1 + static_cast<int>(seed % 3);
        const auto s = sample_partition(n, p, seed);
        ElementSet all;
        for (const auto& part : s.parts) {
            EXPECT_FALSE(part.intersects(all));
            EXPECT_GE(part.size(), n / p);
            all |= part;
        }
        EXPECT_EQ(all, ElementSet::range(1, n));
    }
}

TEST(DisjointByPartition, Examples)
{
    const auto s = find_disjoint_by_partition(singletons(6), 3, 1, 0);
    ASSERT_TRUE(s);
    EXPECT_EQ(s->size(), 3u);
    EXPECT_FALSE(find_disjoint_by_partition(make(3, 2, {{1, 2}, {1, 3}}), 2, 500, 4));

    const auto c = complete(8, 2);
    const auto picks = find_disjoint_by_partition(c, 3, 100, 5);
    ASSERT_TRUE(picks);
    ElementSet used;
    for (auto i : *picks) {
        EXPECT_FALSE(c[i].intersects(used));
        used |= c[i];
    }
    EXPECT_EQ(find_disjoint_by_partition(c, 3, 100, 5), picks);
}

TEST(SpreadFinder, Examples)
{
    SpreadParams params;
    // k = 1: any p singletons.
    const auto s = find_sunflower_spread(singletons(12), 3, params, {10, 1, false});
    ASSERT_TRUE(s);
    EXPECT_TRUE(s->core.empty());
    expect_valid(singletons(12), *s, 3);

    // Small r forces the recursion through Z = {9}.
    SetFamily star{9, 2, {}};
    for (int e = 1; e <= 8; ++e) star.sets.push_back(ElementSet{e, 9});
    params.alpha = Rational(101, 100);
    const auto t = find_sunflower_spread(star, 3, params, {10, 1, false});
    ASSERT_TRUE(t);
    EXPECT_EQ(t->core, ElementSet{9});
    expect_valid(star, *t, 3);

    EXPECT_FALSE(find_sunflower_spread(generate_extremal(3, 2), 3, SpreadParams{}, {200, 3, false}));
}

TEST(SpreadFinder, Repeats)
{
    const auto f = make(3, 2, {{1, 2}, {2, 3}, {1, 2}, {1, 2}});
    const auto s = find_sunflower_spread(f, 3, SpreadParams{}, {10, 0, true});
    ASSERT_TRUE(s);
    EXPECT_EQ(s->petals, (std::vector<std::size_t>{0, 2, 3}));
    EXPECT_EQ(s->core, (ElementSet{1, 2}));
    EXPECT_FALSE(find_sunflower_spread(f, 3, SpreadParams{}, {10, 0, false}));
}

TEST(SpreadFinder, SoundnessBattery)
{
    SpreadParams params;
    params.alpha = Rational(101, 100);
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
        const auto f = generate_random_family(10, 2 + static_cast<int>(seed % 2), 10 + seed % 20, seed, true);
        const auto s = find_sunflower_spread(f, 3, params, {200, seed, false});
        if (s) expect_valid(f, *s, 3);
        if (s) EXPECT_TRUE(oracle::has_sunflower(oracle::sets_of(f), 3));
    }
}

TEST(GreedyVersusMaximum, MaximumIsAtLeastGreedy)
{
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto f = generate_random_family(9, 3, 12, seed, false);
        const auto best = max_disjoint(f);
        EXPECT_GE(best.size(), greedy_disjoint(f).size());
        ElementSet used;
        for (auto i : best) {
            EXPECT_FALSE(f[i].intersects(used));
            used |= f[i];
        }
    }
}
