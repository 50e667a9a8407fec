#include "oracles.hpp"

#include "sunflower/prefix_code.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace sunflower;

namespace {

PrefixCode code(std::vector<std::string> words) { return PrefixCode::parse_lines(words); }

}  // namespace

TEST(BitString, ParseAndPrint)
{
    EXPECT_EQ(BitString::parse("0110").to_string(), "0110");
    EXPECT_EQ(BitString::parse("").size(), 0u);
    EXPECT_THROW(BitString::parse("012"), std::invalid_argument);
    EXPECT_TRUE(BitString::parse("01").is_prefix_of(BitString::parse("011")));
    EXPECT_FALSE(BitString::parse("1").is_prefix_of(BitString::parse("011")));
}

TEST(CheckPrefixFree, Examples)
{
    EXPECT_FALSE(check_prefix_free(code({"0", "10", "11"})));
    EXPECT_EQ(check_prefix_free(code({"0", "01"})), (std::pair<std::size_t, std::size_t>{0, 1}));
    EXPECT_EQ(check_prefix_free(code({"", "1"})), (std::pair<std::size_t, std::size_t>{0, 1}));
    EXPECT_EQ(check_prefix_free(code({"10", "0", "1"})), (std::pair<std::size_t, std::size_t>{0, 2}));
    EXPECT_EQ(check_prefix_free(code({"11", "0", "11"})), (std::pair<std::size_t, std::size_t>{0, 2}));
    EXPECT_FALSE(check_prefix_free(code({""})));
}

TEST(CheckPrefixFree, AgreesWithQuadraticScan)
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<std::string> words;
        const int t = 1 + static_cast<int>(rng() % 8);
        for (int i = 0; i < t; ++i) {
            std::string w;
            const int len = static_cast<int>(rng() % 4);
            for (int b = 0; b < len; ++b) w += (rng() & 1) ? '1' : '0';
            words.push_back(w);
        }
        std::optional<std::pair<std::size_t, std::size_t>> want;
        for (std::size_t i = 0; i < words.size() && !want; ++i)
            for (std::size_t j = i + 1; j < words.size() && !want; ++j)
                if (words[j].rfind(words[i], 0) == 0 || words[i].rfind(words[j], 0) == 0) want = std::pair{i, j};
        EXPECT_EQ(check_prefix_free(code(words)), want);
    }
}

TEST(Kraft, Examples)
{
    EXPECT_EQ(kraft_sum(code({"0", "10", "11"})), Rational(1));
    EXPECT_EQ(kraft_sum(code({"00", "01"})), Rational(1, 2));
    EXPECT_EQ(kraft_sum(code({"0", "10", "110"})), Rational(7, 8));
    EXPECT_THROW(kraft_sum(code({"0", "01"})), std::invalid_argument);
}

TEST(Shannon, Examples)
{
    const auto a = shannon_converse_check(code({"0", "10", "11"}));
    EXPECT_EQ(a.mean_length, Rational(5, 3));
    EXPECT_NEAR(a.bound, 1.5849625, 1e-6);
    EXPECT_TRUE(a.holds);
    const auto b = shannon_converse_check(code({"0", "1"}));
    EXPECT_EQ(b.mean_length, Rational(1));
    EXPECT_TRUE(b.holds);
    EXPECT_THROW(shannon_converse_check(code({"1", "10"})), std::invalid_argument);
}

TEST(Shannon, RandomTreeCodes)
{
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto words = oracle::random_prefix_code(1 + rng() % 64, rng);
        const auto c = code(words);
        ASSERT_FALSE(check_prefix_free(c));
        EXPECT_LE(kraft_sum(c), 1);
        EXPECT_TRUE(shannon_converse_check(c).holds);
    }
}

TEST(Unary, Examples)
{
    EXPECT_EQ(unary_encode(0).to_string(), "1");
    EXPECT_EQ(unary_encode(3).to_string(), "0001");
    for (std::uint64_t m = 0; m <= 64; ++m) EXPECT_EQ(unary_decode(unary_encode(m)), m);
    EXPECT_THROW(unary_decode(BitString::parse("000")), DecodeError);
    EXPECT_THROW(unary_decode(BitString::parse("0101")), DecodeError);
}

TEST(FixedWidth, Widths)
{
    EXPECT_EQ(fixed_width(1), 0u);
    EXPECT_EQ(fixed_width(2), 1u);
    EXPECT_EQ(fixed_width(3), 2u);
    EXPECT_EQ(fixed_width(4), 2u);
    EXPECT_EQ(fixed_width(5), 3u);
    EXPECT_EQ(fixed_width(BigInt(1) << 70), 70u);
}

TEST(BitReader, RejectsCorruption)
{
    BitWriter w;
    w.ranked(2, 3);
    const auto bits = w.take();
    BitReader ok(bits);
    EXPECT_EQ(ok.ranked(3), 2);
    BitReader bad(BitString::parse("11"));
    EXPECT_THROW(bad.ranked(3), DecodeError);
    BitReader shortr(BitString::parse("1"));
    EXPECT_THROW(shortr.ranked(3), DecodeError);
}

TEST(SubsetRank, Examples)
{
    EXPECT_EQ(rank_subset({1, 2, 3}, 1, 1, ElementSet{2}), 1);
    EXPECT_EQ(rank_subset({1, 2, 3, 4}, 2, 2, ElementSet{1, 2}), 0);
    EXPECT_EQ(SubsetRanker(std::vector<int>{1, 2, 3, 4}, 1, 2).total(), 10);
    EXPECT_THROW(rank_subset({1, 2, 3}, 1, 1, ElementSet{1, 2}), std::invalid_argument);
    EXPECT_THROW(rank_subset({1, 2, 3}, 1, 2, ElementSet{4}), std::invalid_argument);
}

TEST(SubsetRank, ExhaustiveRoundTripAndOrder)
{
    const std::vector<int> ground{2, 3, 5, 7, 11, 13, 17, 19};
    for (int lo = 0; lo <= 8; ++lo)
        for (int hi = lo; hi <= 8; ++hi) {
            const SubsetRanker ranker(ground, lo, hi);
            std::vector<ElementSet> listed;
            for (int s = lo; s <= hi; ++s)
                for_each_combination(ground, s, [&](ElementSet x) {
                    listed.push_back(x);
                    return true;
                });
            ASSERT_EQ(ranker.total(), BigInt(listed.size()));
            for (std::size_t i = 0; i < listed.size(); ++i) {
                EXPECT_EQ(ranker.rank(listed[i]), BigInt(i));
                EXPECT_EQ(ranker.unrank(BigInt(i)), listed[i]);
            }
            EXPECT_THROW(ranker.unrank(ranker.total()), std::out_of_range);
        }
}
