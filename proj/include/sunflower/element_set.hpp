#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sunflower {

/// Largest supported ground set. Elements are numbered 1..kMaxGround.
inline constexpr int kMaxGround = 64;

/// A subset of the ground set [n], stored as a 64-bit mask (element e lives in bit e-1).
class ElementSet {
public:
    constexpr ElementSet() = default;

    ElementSet(std::initializer_list<int> elements)
    {
        for (int e : elements) insert(e);
    }

    static constexpr ElementSet from_bits(std::uint64_t bits)
    {
        ElementSet s;
        s.bits_ = bits;
        return s;
    }

    /// {lo, lo+1, ..., hi}; empty when hi < lo.
    static ElementSet range(int lo, int hi)
    {
        ElementSet s;
        for (int e = lo; e <= hi; ++e) s.insert(e);
        return s;
    }

    template <class Range>
    static ElementSet of(const Range& elements)
    {
        ElementSet s;
        for (int e : elements) s.insert(e);
        return s;
    }

    constexpr std::uint64_t bits() const { return bits_; }
    constexpr int size() const { return std::popcount(bits_); }
    constexpr bool empty() const { return bits_ == 0; }

    constexpr bool contains(int e) const
    {
        return e >= 1 && e <= kMaxGround && ((bits_ >> (e - 1)) & 1U) != 0;
    }

    void insert(int e)
    {
        check_element(e);
        bits_ |= std::uint64_t{1} << (e - 1);
    }

    void erase(int e)
    {
        check_element(e);
        bits_ &= ~(std::uint64_t{1} << (e - 1));
    }

    constexpr bool subset_of(ElementSet other) const { return (bits_ & ~other.bits_) == 0; }
    constexpr bool intersects(ElementSet other) const { return (bits_ & other.bits_) != 0; }

    /// Largest element, or 0 for the empty set.
    constexpr int max_element() const { return bits_ == 0 ? 0 : 64 - std::countl_zero(bits_); }
    /// Smallest element, or 0 for the empty set.
    constexpr int min_element() const { return bits_ == 0 ? 0 : std::countr_zero(bits_) + 1; }

    /// Calls f(e) for every element in ascending order.
    template <class F>
    void for_each(F&& f) const
    {
        for (std::uint64_t b = bits_; b != 0; b &= b - 1) f(std::countr_zero(b) + 1);
    }

    std::vector<int> elements() const
    {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(size()));
        for_each([&](int e) { out.push_back(e); });
        return out;
    }

    /// "{1,3,4}"; "{}" for the empty set.
    std::string to_string() const
    {
        std::string s = "{";
        bool first = true;
        for_each([&](int e) {
            if (!first) s += ',';
            s += std::to_string(e);
            first = false;
        });
        return s + "}";
    }

    friend constexpr ElementSet operator|(ElementSet a, ElementSet b) { return from_bits(a.bits_ | b.bits_); }
    friend constexpr ElementSet operator&(ElementSet a, ElementSet b) { return from_bits(a.bits_ & b.bits_); }
    /// Set difference.
    friend constexpr ElementSet operator-(ElementSet a, ElementSet b) { return from_bits(a.bits_ & ~b.bits_); }
    ElementSet& operator|=(ElementSet o) { bits_ |= o.bits_; return *this; }
    ElementSet& operator&=(ElementSet o) { bits_ &= o.bits_; return *this; }
    ElementSet& operator-=(ElementSet o) { bits_ &= ~o.bits_; return *this; }
    friend constexpr bool operator==(ElementSet, ElementSet) = default;

private:
    static void check_element(int e)
    {
        if (e < 1 || e > kMaxGround)
            throw std::out_of_range("element " + std::to_string(e) + " outside 1.." + std::to_string(kMaxGround));
    }

    std::uint64_t bits_ = 0;
};

/// Lexicographic order on the ascending element lists: {1,4} < {2,3}, {1} < {1,2}.
inline bool lex_less(ElementSet a, ElementSet b)
{
    std::uint64_t x = a.bits(), y = b.bits();
    while (x != 0 && y != 0) {
        const int ex = std::countr_zero(x);
        const int ey = std::countr_zero(y);
        if (ex != ey) return ex < ey;
        x &= x - 1;
        y &= y - 1;
    }
    return x == 0 && y != 0;
}

/// Orders first by cardinality, then lexicographically.
inline bool size_lex_less(ElementSet a, ElementSet b)
{
    if (a.size() != b.size()) return a.size() < b.size();
    return lex_less(a, b);
}

/// Calls f(sub) for every non-empty subset of s (no particular order).
template <class F>
void for_each_nonempty_subset(ElementSet s, F&& f)
{
    const std::uint64_t full = s.bits();
    for (std::uint64_t sub = full; sub != 0; sub = (sub - 1) & full) f(ElementSet::from_bits(sub));
}

/// Calls f(sub) for every size-w subset of `ground` in lexicographic order of element lists.
/// Returns early (and returns false) when f returns false.
template <class F>
bool for_each_combination(const std::vector<int>& ground, int w, F&& f)
{
    const int m = static_cast<int>(ground.size());
    if (w < 0 || w > m) return true;
    std::vector<int> pos(static_cast<std::size_t>(w));
    for (int i = 0; i < w; ++i) pos[static_cast<std::size_t>(i)] = i;
    for (;;) {
        ElementSet s;
        for (int p : pos) s.insert(ground[static_cast<std::size_t>(p)]);
        if (!f(s)) return false;
        int i = w - 1;
        while (i >= 0 && pos[static_cast<std::size_t>(i)] == m - w + i) --i;
        if (i < 0) return true;
        ++pos[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < w; ++j) pos[static_cast<std::size_t>(j)] = pos[static_cast<std::size_t>(j - 1)] + 1;
    }
}

template <class F>
bool for_each_combination(ElementSet ground, int w, F&& f)
{
    return for_each_combination(ground.elements(), w, std::forward<F>(f));
}

}  // namespace sunflower
