#pragma once

#include "sunflower/family.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sunflower {

/// chi(x, W) = S_y \ W for the y minimising |S_y \ W| among members with S_y ⊆ S_x ∪ W
/// (smallest y on ties). `witness` is that y.
struct ChiResult {
    ElementSet value;
    std::size_t witness = 0;

    int size() const { return value.size(); }
    friend bool operator==(const ChiResult&, const ChiResult&) = default;
};

inline ChiResult chi(const SetFamily& f, std::size_t x, ElementSet w)
{
    if (x >= f.size())
        throw std::out_of_range("index " + std::to_string(x + 1) + " outside 1.." + std::to_string(f.size()));
    const ElementSet allowed = f[x] | w;
    ChiResult best{f[x] - w, x};
    // ascending scan; strict improvement keeps the smallest index on ties
    for (std::size_t y = 0; y < f.size(); ++y) {
        if (!f[y].subset_of(allowed)) continue;
        const ElementSet residual = f[y] - w;
        if (residual.size() < best.size() || (residual.size() == best.size() && y < best.witness)) best = {residual, y};
    }
    return best;
}

/// Smallest y with S_y ⊆ W.
inline std::optional<std::size_t> covers(const SetFamily& f, ElementSet w)
{
    for (std::size_t y = 0; y < f.size(); ++y)
        if (f[y].subset_of(w)) return y;
    return std::nullopt;
}

inline std::vector<ChiResult> chi_profile(const SetFamily& f, ElementSet w)
{
    std::vector<ChiResult> out;
    out.reserve(f.size());
    // A covered member makes every chi empty with the same witness.
    if (const auto y = covers(f, w)) {
        out.assign(f.size(), ChiResult{ElementSet{}, *y});
        return out;
    }
    for (std::size_t x = 0; x < f.size(); ++x) out.push_back(chi(f, x, w));
    return out;
}

}  // namespace sunflower
