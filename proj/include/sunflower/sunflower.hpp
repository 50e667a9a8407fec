#pragma once

#include "sunflower/chi.hpp"
#include "sunflower/family.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sunflower {

/// p members whose pairwise intersections all equal `core`. Petals are ascending indices.
struct Sunflower {
    ElementSet core;
    std::vector<std::size_t> petals;

    friend bool operator==(const Sunflower&, const Sunflower&) = default;
};

/// The common pairwise intersection of the indexed members, or nullopt if the intersections differ.
inline std::optional<ElementSet> is_sunflower(const SetFamily& f, std::span<const std::size_t> indices)
{
    if (indices.size() < 2) throw std::invalid_argument("a sunflower needs at least two members");
    std::vector<std::size_t> sorted(indices.begin(), indices.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("duplicate index in sunflower candidate");
    if (sorted.back() >= f.size())
        throw std::out_of_range("index " + std::to_string(sorted.back() + 1) + " outside 1.." + std::to_string(f.size()));

    const ElementSet core = f[indices[0]] & f[indices[1]];
    for (std::size_t i = 0; i < indices.size(); ++i)
        for (std::size_t j = i + 1; j < indices.size(); ++j)
            if ((f[indices[i]] & f[indices[j]]) != core) return std::nullopt;
    return core;
}

inline std::optional<ElementSet> is_sunflower(const SetFamily& f, std::initializer_list<std::size_t> indices)
{
    return is_sunflower(f, std::span<const std::size_t>(indices.begin(), indices.size()));
}

/// Greedy maximal pairwise-disjoint subfamily, scanning in index order.
inline std::vector<std::size_t> greedy_disjoint(const SetFamily& f)
{
    std::vector<std::size_t> picked;
    ElementSet used;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i].intersects(used)) continue;
        picked.push_back(i);
        used |= f[i];
    }
    return picked;
}

/// Classical Erdős–Rado extraction. Guaranteed to succeed when l > (p-1)^k k!.
/// Requires distinct sets.
inline std::optional<Sunflower> find_sunflower_erdos_rado(const SetFamily& f, int p)
{
    if (p < 2) throw std::invalid_argument("p must be at least 2");
    if (f.has_duplicates()) throw std::invalid_argument("Erdős–Rado extraction needs distinct sets");
    if (f.empty() || f.k == 0) return std::nullopt;

    const auto disjoint = greedy_disjoint(f);
    if (disjoint.size() >= static_cast<std::size_t>(p))
        return Sunflower{ElementSet{}, {disjoint.begin(), disjoint.begin() + p}};

    // Every member meets the union of the greedy sets; recurse on its most popular element.
    ElementSet pool;
    for (auto i : disjoint) pool |= f[i];
    int best_element = 0;
    std::size_t best_count = 0;
    pool.for_each([&](int e) {
        const std::size_t c = count_supersets(f, ElementSet{e});
        if (c > best_count) {
            best_count = c;
            best_element = e;
        }
    });
    const ElementSet z{best_element};
    std::vector<std::size_t> origin;
    const SetFamily sub = link(f, z, &origin);
    auto inner = find_sunflower_erdos_rado(sub, p);
    if (!inner) return std::nullopt;
    inner->core |= z;
    for (auto& i : inner->petals) i = origin[i];
    return inner;
}

/// W_1..W_p: a uniformly shuffled [n] cut into consecutive blocks of size floor(n/p),
/// the first n mod p blocks taking one extra element.
struct PartitionSample {
    std::vector<ElementSet> parts;
};

template <class Rng>
PartitionSample sample_partition(int n, int p, Rng& rng)
{
    if (p < 1) throw std::invalid_argument("p must be positive");
    if (n < p) throw std::invalid_argument("cannot partition [" + std::to_string(n) + "] into " + std::to_string(p) + " parts");
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 1);
    std::shuffle(perm.begin(), perm.end(), rng);

    PartitionSample out;
    const int base = n / p;
    const int extra = n % p;
    std::size_t next = 0;
    for (int i = 0; i < p; ++i) {
        ElementSet part;
        const int size = base + (i < extra ? 1 : 0);
        for (int j = 0; j < size; ++j) part.insert(perm[next++]);
        out.parts.push_back(part);
    }
    return out;
}

inline PartitionSample sample_partition(int n, int p, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    return sample_partition(n, p, rng);
}

/// Covered member per part of one partition, or nullopt if some part covers nothing.
inline std::optional<std::vector<std::size_t>> covered_per_part(const SetFamily& f, const PartitionSample& partition)
{
    std::vector<std::size_t> picks;
    for (const auto& part : partition.parts) {
        const auto y = covers(f, part);
        if (!y) return std::nullopt;
        picks.push_back(*y);
    }
    return picks;
}

/// Rejection-samples random partitions until every part covers a member; returns one member per part
/// (in part order). These are pairwise disjoint because the parts are.
inline std::optional<std::vector<std::size_t>> find_disjoint_by_partition(const SetFamily& f, int p, std::size_t max_iters,
                                                                         std::uint64_t seed)
{
    if (f.n < p) throw std::invalid_argument("need n >= p");
    if (f.k < 1) throw std::invalid_argument("disjoint search needs non-empty sets");
    std::mt19937_64 rng(seed);
    for (std::size_t it = 0; it < max_iters; ++it) {
        if (auto picks = covered_per_part(f, sample_partition(f.n, p, rng))) return picks;
    }
    return std::nullopt;
}

struct SpreadSearchOptions {
    std::size_t max_iters = 1000;
    std::uint64_t seed = 0;
    /// Accept p copies of one repeated set as a (degenerate) sunflower.
    bool allow_repeats = false;
};

namespace detail {

inline std::optional<Sunflower> spread_search(const SetFamily& f, const SpreadParams& params,
                                              const SpreadSearchOptions& opt)
{
    const int p = params.p;
    if (f.empty() || f.k == 0) return std::nullopt;
    if (f.k == 1) {
        if (f.size() < static_cast<std::size_t>(p)) return std::nullopt;
        std::vector<std::size_t> petals(static_cast<std::size_t>(p));
        std::iota(petals.begin(), petals.end(), std::size_t{0});
        return Sunflower{ElementSet{}, petals};
    }

    const Rational r = r_threshold(params, f.k);
    const SpreadReport report = spread_check(f, r);
    if (!report.spread) {
        const ElementSet z = report.witness->z;
        std::vector<std::size_t> origin;
        auto inner = spread_search(link(f, z, &origin), params, opt);
        if (!inner) return std::nullopt;
        inner->core |= z;
        for (auto& i : inner->petals) i = origin[i];
        return inner;
    }

    // size hypothesis: l > r^k
    if (Rational(f.size()) <= rpow(r, f.k)) return std::nullopt;
    if (f.n < p) return std::nullopt;
    auto picks = find_disjoint_by_partition(f, p, opt.max_iters, opt.seed);
    if (!picks) return std::nullopt;
    std::sort(picks->begin(), picks->end());
    return Sunflower{ElementSet{}, *picks};
}

}  // namespace detail

/// Sunflower search following the induction on k: recurse on the link of a spreadness witness,
/// otherwise look for p disjoint members through random partitions.
inline std::optional<Sunflower> find_sunflower_spread(const SetFamily& f, int p, SpreadParams params,
                                                      const SpreadSearchOptions& opt = {})
{
    if (p < 2) throw std::invalid_argument("p must be at least 2");
    params.p = p;

    // Group repeats; the search runs on first occurrences only.
    std::map<std::uint64_t, std::vector<std::size_t>> occurrences;
    for (std::size_t i = 0; i < f.size(); ++i) occurrences[f[i].bits()].push_back(i);
    if (opt.allow_repeats) {
        std::optional<Sunflower> best;
        for (const auto& [bits, idx] : occurrences) {
            if (idx.size() < static_cast<std::size_t>(p)) continue;
            Sunflower s{ElementSet::from_bits(bits), {idx.begin(), idx.begin() + p}};
            if (!best || s.petals < best->petals) best = s;
        }
        if (best) return best;
    }

    SetFamily distinct{f.n, f.k, {}};
    std::vector<std::size_t> origin;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (occurrences[f[i].bits()].front() != i) continue;
        distinct.sets.push_back(f[i]);
        origin.push_back(i);
    }
    auto found = detail::spread_search(distinct, params, opt);
    if (!found) return std::nullopt;
    for (auto& i : found->petals) i = origin[i];
    std::sort(found->petals.begin(), found->petals.end());
    return found;
}

}  // namespace sunflower
