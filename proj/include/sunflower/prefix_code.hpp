#pragma once

#include "sunflower/element_set.hpp"
#include "sunflower/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sunflower {

class BitString {
public:
    BitString() = default;

    /// From a string of '0'/'1' characters.
    static BitString parse(std::string_view text)
    {
        BitString b;
        for (char c : text) {
            if (c != '0' && c != '1') throw std::invalid_argument("bit strings contain only 0 and 1");
            b.push_back(c == '1');
        }
        return b;
    }

    void push_back(bool bit) { bits_.push_back(bit); }
    void append(const BitString& other) { bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end()); }
    void pop_back() { bits_.pop_back(); }

    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }
    bool operator[](std::size_t i) const { return bits_[i]; }

    bool is_prefix_of(const BitString& other) const
    {
        return size() <= other.size() && std::equal(bits_.begin(), bits_.end(), other.bits_.begin());
    }

    std::string to_string() const
    {
        std::string s;
        s.reserve(bits_.size());
        for (bool b : bits_) s += b ? '1' : '0';
        return s;
    }

    friend bool operator==(const BitString&, const BitString&) = default;
    friend auto operator<=>(const BitString& a, const BitString& b) { return a.bits_ <=> b.bits_; }

private:
    std::vector<bool> bits_;
};

/// Raised when a bit stream cannot be decoded (underrun, out-of-range field, trailing bits).
class DecodeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bits needed to name one of `count` values: ceil(log2 count), 0 for count == 1.
inline unsigned fixed_width(const BigInt& count)
{
    if (count < 1) throw std::invalid_argument("fixed-width field over an empty range");
    if (count == 1) return 0;
    return static_cast<unsigned>(boost::multiprecision::msb(BigInt(count - 1))) + 1;
}

class BitWriter {
public:
    void bit(bool b) { out_.push_back(b); }

    /// 0^m 1.
    void unary(std::uint64_t m)
    {
        for (std::uint64_t i = 0; i < m; ++i) out_.push_back(false);
        out_.push_back(true);
    }

    /// `value` big-endian in exactly `width` bits.
    void fixed(const BigInt& value, unsigned width)
    {
        if (value < 0 || (width < 512 && value >= ipow(BigInt(2), width)))
            throw std::invalid_argument("value does not fit its fixed-width field");
        for (unsigned i = width; i-- > 0;) out_.push_back(boost::multiprecision::bit_test(value, i));
    }

    /// Rank among `count` alternatives, using fixed_width(count) bits.
    void ranked(const BigInt& rank, const BigInt& count)
    {
        if (rank >= count) throw std::invalid_argument("rank outside its range");
        fixed(rank, fixed_width(count));
    }

    /// One bit per element of `over` (ascending): 1 iff the element is in `subset`.
    void bitmap(ElementSet subset, ElementSet over)
    {
        over.for_each([&](int e) { out_.push_back(subset.contains(e)); });
    }

    std::size_t size() const { return out_.size(); }
    const BitString& bits() const { return out_; }
    BitString take() { return std::move(out_); }

private:
    BitString out_;
};

class BitReader {
public:
    explicit BitReader(const BitString& in) : in_(in) {}

    bool bit()
    {
        if (pos_ >= in_.size()) throw DecodeError("bit stream truncated");
        return in_[pos_++];
    }

    std::uint64_t unary()
    {
        std::uint64_t m = 0;
        while (!bit()) ++m;
        return m;
    }

    BigInt fixed(unsigned width)
    {
        BigInt v = 0;
        for (unsigned i = 0; i < width; ++i) v = (v << 1) | (bit() ? 1 : 0);
        return v;
    }

    BigInt ranked(const BigInt& count)
    {
        BigInt v = fixed(fixed_width(count));
        if (v >= count) throw DecodeError("field rank " + v.str() + " out of range " + count.str());
        return v;
    }

    ElementSet bitmap(ElementSet over)
    {
        ElementSet s;
        over.for_each([&](int e) {
            if (bit()) s.insert(e);
        });
        return s;
    }

    std::size_t position() const { return pos_; }
    bool exhausted() const { return pos_ == in_.size(); }

private:
    const BitString& in_;
    std::size_t pos_ = 0;
};

inline BitString unary_encode(std::uint64_t m)
{
    BitWriter w;
    w.unary(m);
    return w.take();
}

/// Inverse of unary_encode; the input must be exactly one unary word.
inline std::uint64_t unary_decode(const BitString& bits)
{
    BitReader r(bits);
    const auto m = r.unary();
    if (!r.exhausted()) throw DecodeError("trailing bits after unary word");
    return m;
}

/// E: [t] -> {0,1}*. Word i encodes i (0-based).
struct PrefixCode {
    std::vector<BitString> words;

    std::size_t size() const { return words.size(); }

    static PrefixCode parse_lines(const std::vector<std::string>& lines)
    {
        PrefixCode c;
        for (const auto& l : lines) c.words.push_back(BitString::parse(l));
        return c;
    }
};

/// nullopt when prefix-free; otherwise the lexicographically first (i, j), i < j, where one word prefixes the other.
inline std::optional<std::pair<std::size_t, std::size_t>> check_prefix_free(const PrefixCode& code)
{
    // A prefix relation in sorted order always shows up between neighbours; only fall back to
    // the quadratic scan when one exists.
    std::vector<std::size_t> order(code.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return code.words[a] < code.words[b]; });
    bool clash = false;
    for (std::size_t i = 1; i < order.size() && !clash; ++i)
        clash = code.words[order[i - 1]].is_prefix_of(code.words[order[i]]);
    if (!clash) return std::nullopt;

    for (std::size_t i = 0; i < code.size(); ++i)
        for (std::size_t j = i + 1; j < code.size(); ++j)
            if (code.words[i].is_prefix_of(code.words[j]) || code.words[j].is_prefix_of(code.words[i])) return std::pair{i, j};
    return std::nullopt;
}

namespace detail {

inline void require_prefix_free(const PrefixCode& code)
{
    if (const auto clash = check_prefix_free(code))
        throw std::invalid_argument("code is not prefix-free: words " + std::to_string(clash->first + 1) + " and " +
                                    std::to_string(clash->second + 1));
}

}  // namespace detail

/// Exact sum of 2^-len over all words.
inline Rational kraft_sum(const PrefixCode& code)
{
    detail::require_prefix_free(code);
    std::size_t longest = 0;
    for (const auto& w : code.words) longest = std::max(longest, w.size());
    BigInt num = 0;
    for (const auto& w : code.words) num += BigInt(1) << static_cast<unsigned>(longest - w.size());
    return Rational(num, BigInt(1) << static_cast<unsigned>(longest));
}

struct ShannonReport {
    Rational mean_length;
    double bound = 0;   ///< log2 t, for display only
    bool holds = false; ///< decided as 2^(sum of lengths) >= t^t
};

/// Mean word length versus log2 t, compared without logarithms.
inline ShannonReport shannon_converse_check(const PrefixCode& code)
{
    detail::require_prefix_free(code);
    if (code.size() == 0) throw std::invalid_argument("empty code");
    BigInt total = 0;
    for (const auto& w : code.words) total += w.size();
    const auto t = code.size();
    ShannonReport r;
    r.mean_length = Rational(total, t);
    r.bound = std::log2(static_cast<double>(t));
    r.holds = (BigInt(1) << static_cast<unsigned>(total)) >= ipow(BigInt(t), static_cast<unsigned>(t));
    return r;
}

/// Ranks subsets of an ordered ground list with lo <= |S| <= hi: size-major, then lexicographic
/// in ground order.
class SubsetRanker {
public:
    SubsetRanker(std::vector<int> ground, int lo, int hi) : ground_(std::move(ground)), lo_(lo), hi_(hi)
    {
        const int m = static_cast<int>(ground_.size());
        if (lo_ < 0 || hi_ < lo_) throw std::invalid_argument("bad subset size range");
        hi_ = std::min(hi_, m);
        // binom_[a][b] = C(a, b)
        binom_.assign(static_cast<std::size_t>(m + 1), std::vector<BigInt>(static_cast<std::size_t>(m + 1), 0));
        for (int a = 0; a <= m; ++a) {
            binom_[a][0] = 1;
            for (int b = 1; b <= a; ++b) binom_[a][b] = binom_[a - 1][b - 1] + (b <= a - 1 ? binom_[a - 1][b] : BigInt(0));
        }
        offset_.assign(static_cast<std::size_t>(std::max(hi_, lo_) + 2), 0);
        total_ = 0;
        for (int s = lo_; s <= hi_; ++s) {
            offset_[static_cast<std::size_t>(s)] = total_;
            total_ += choose(m, s);
        }
    }

    SubsetRanker(ElementSet ground, int lo, int hi) : SubsetRanker(ground.elements(), lo, hi) {}

    const BigInt& total() const { return total_; }
    unsigned width() const { return fixed_width(total_); }

    BigInt rank(ElementSet s) const
    {
        const int m = static_cast<int>(ground_.size());
        const int size = s.size();
        if (size < lo_ || size > hi_) throw std::invalid_argument("subset size outside the ranked range");
        std::vector<int> pos;
        for (int i = 0; i < m; ++i)
            if (s.contains(ground_[static_cast<std::size_t>(i)])) pos.push_back(i);
        if (static_cast<int>(pos.size()) != size) throw std::invalid_argument("subset is not contained in the ground list");

        BigInt r = offset_[static_cast<std::size_t>(size)];
        int prev = -1;
        for (int i = 0; i < size; ++i) {
            for (int c = prev + 1; c < pos[static_cast<std::size_t>(i)]; ++c) r += choose(m - 1 - c, size - 1 - i);
            prev = pos[static_cast<std::size_t>(i)];
        }
        return r;
    }

    ElementSet unrank(BigInt r) const
    {
        if (r < 0 || r >= total_) throw std::out_of_range("subset rank out of range");
        const int m = static_cast<int>(ground_.size());
        int size = lo_;
        while (size < hi_ && r >= offset_[static_cast<std::size_t>(size)] + choose(m, size)) ++size;
        r -= offset_[static_cast<std::size_t>(size)];
        ElementSet s;
        int c = 0;
        for (int i = 0; i < size; ++i) {
            for (;; ++c) {
                const BigInt block = choose(m - 1 - c, size - 1 - i);
                if (r < block) break;
                r -= block;
            }
            s.insert(ground_[static_cast<std::size_t>(c)]);
            ++c;
        }
        return s;
    }

private:
    const BigInt& choose(int a, int b) const
    {
        static const BigInt zero = 0;
        if (a < 0 || b < 0 || b > a) return zero;
        return binom_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    }

    std::vector<int> ground_;
    int lo_;
    int hi_;
    std::vector<std::vector<BigInt>> binom_;
    std::vector<BigInt> offset_;
    BigInt total_;
};

inline BigInt rank_subset(const std::vector<int>& ground, int lo, int hi, ElementSet s)
{
    return SubsetRanker(ground, lo, hi).rank(s);
}

inline ElementSet unrank_subset(const std::vector<int>& ground, int lo, int hi, const BigInt& r)
{
    return SubsetRanker(ground, lo, hi).unrank(r);
}

}  // namespace sunflower
