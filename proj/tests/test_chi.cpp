#include "oracles.hpp"

#include "sunflower/chi.hpp"

#include <gtest/gtest.h>

using namespace sunflower;

namespace {

SetFamily make(int n, int k, std::vector<ElementSet> sets) { return SetFamily{n, k, std::move(sets)}; }

}  // namespace

TEST(Chi, Examples)
{
    const auto f = make(3, 2, {{1, 2}, {2, 3}});
    auto c = chi(f, 0, ElementSet{2, 3});
    EXPECT_TRUE(c.value.empty());
    EXPECT_EQ(c.witness, 1u);

    c = chi(f, 0, ElementSet{});
    EXPECT_EQ(c.value, (ElementSet{1, 2}));
    EXPECT_EQ(c.witness, 0u);

    const auto g = make(3, 2, {{1, 2}, {1, 3}, {2, 3}});
    c = chi(g, 0, ElementSet{3});
    EXPECT_EQ(c.value, ElementSet{1});
    EXPECT_EQ(c.witness, 1u);
    EXPECT_EQ(c.size(), 1);

    EXPECT_THROW(chi(g, 3, ElementSet{}), std::out_of_range);
}

TEST(Covers, Examples)
{
    const auto complete = generate_random_family(4, 2, 6, 0, true);
    const auto y = covers(complete, ElementSet{1, 2});
    ASSERT_TRUE(y);
    EXPECT_EQ(complete[*y], (ElementSet{1, 2}));
    EXPECT_FALSE(covers(complete, ElementSet{}));
    EXPECT_EQ(covers(generate_extremal(3, 2), ElementSet{1, 4}), std::optional<std::size_t>(1));
}

TEST(ChiProfile, Examples)
{
    auto sizes = [](const std::vector<ChiResult>& v) {
        std::vector<int> s;
        for (const auto& c : v) s.push_back(c.size());
        return s;
    };
    EXPECT_EQ(sizes(chi_profile(make(3, 2, {{1, 2}, {2, 3}}), ElementSet{2, 3})), (std::vector<int>{0, 0}));
    EXPECT_EQ(sizes(chi_profile(make(4, 2, {{1, 2}, {3, 4}}), ElementSet{})), (std::vector<int>{2, 2}));
    EXPECT_EQ(sizes(chi_profile(generate_extremal(3, 2), ElementSet{3, 4})), (std::vector<int>{1, 1, 1, 1}));
}

TEST(Chi, MatchesDefinitionOracle)
{
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const int n = 6 + static_cast<int>(seed % 3);
        const auto f = generate_random_family(n, 1 + static_cast<int>(seed % 3), 8, seed, false);
        const auto sets = oracle::sets_of(f);
        for (const auto& w : oracle::power_set(n)) {
            const auto profile = chi_profile(f, ElementSet::of(w));
            for (std::size_t x = 0; x < f.size(); ++x) {
                const auto want = oracle::chi(sets, x, w);
                const auto got = chi(f, x, ElementSet::of(w));
                EXPECT_EQ(oracle::to_set(got.value), want.value);
                EXPECT_EQ(got.witness, want.witness);
                EXPECT_EQ(profile[x].size(), got.size());
            }
        }
    }
}

TEST(Chi, StructuralInvariants)
{
    for (std::uint64_t seed = 100; seed < 115; ++seed) {
        const auto f = generate_random_family(7, 3, 9, seed, false);
        const ElementSet ground = f.ground();
        for (std::uint64_t wb = 0; wb < (1u << 7); ++wb) {
            const ElementSet w = ElementSet::from_bits(wb);
            const auto cover = covers(f, w);
            for (std::size_t x = 0; x < f.size(); ++x) {
                const auto c = chi(f, x, w);
                EXPECT_EQ(c.value, f[c.witness] - w);
                EXPECT_TRUE(f[c.witness].subset_of(f[x] | w));
                EXPECT_TRUE(c.value.subset_of(f[x]));
                EXPECT_EQ(c.value.empty(), cover.has_value());
                // Adding any element to W can only shrink chi.
                (ground - w).for_each([&](int e) {
                    ElementSet bigger = w;
                    bigger.insert(e);
                    EXPECT_LE(chi(f, x, bigger).size(), c.size());
                });
            }
        }
    }
}
