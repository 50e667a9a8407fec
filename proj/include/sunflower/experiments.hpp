#pragma once

#include "sunflower/chi.hpp"
#include "sunflower/encoding_audit.hpp"
#include "sunflower/family.hpp"
#include "sunflower/sunflower.hpp"

#include <boost/math/distributions/beta.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

namespace sunflower {

/// Enumeration limits; exceeding one raises BudgetError instead of silently sampling.
struct Budget {
    std::uint64_t max_enumeration = 20'000'000;  ///< C(n,w) * l for exact expectations
    std::uint64_t max_tuples = 20'000'000;       ///< C(l,p) for the sunflower oracle
    std::size_t max_backtrack = 64;              ///< l for max_disjoint
};

/// Sample mean with its standard error; half_width is the 95% normal-approximation radius.
struct Estimate {
    double mean = 0;
    double std_error = 0;
    double half_width = 0;
    std::size_t trials = 0;
};

namespace detail {

class RunningMean {
public:
    void add(double x)
    {
        ++n_;
        const double delta = x - mean_;
        mean_ += delta / static_cast<double>(n_);
        m2_ += delta * (x - mean_);
    }

    Estimate finish() const
    {
        Estimate e;
        e.trials = n_;
        e.mean = mean_;
        if (n_ > 1) e.std_error = std::sqrt(m2_ / static_cast<double>(n_ - 1) / static_cast<double>(n_));
        e.half_width = 1.96 * e.std_error;
        return e;
    }

private:
    std::size_t n_ = 0;
    double mean_ = 0;
    double m2_ = 0;
};

template <class Rng>
ElementSet random_subset(int n, int w, Rng& rng)
{
    std::vector<int> ground(static_cast<std::size_t>(n));
    std::iota(ground.begin(), ground.end(), 1);
    std::vector<int> pick;
    std::sample(ground.begin(), ground.end(), std::back_inserter(pick), w, rng);
    return ElementSet::of(pick);
}

inline void check_w(const SetFamily& f, int w)
{
    if (w < 0 || w > f.n) throw std::invalid_argument("w must lie in 0..n");
    if (f.empty()) throw std::invalid_argument("experiments need a non-empty family");
}

inline void check_enumeration(const SetFamily& f, int w, const Budget& budget)
{
    const BigInt work = binomial(f.n, w) * f.size();
    if (work > budget.max_enumeration)
        throw BudgetError("C(n,w)*l = " + work.str() + " exceeds the enumeration budget " + std::to_string(budget.max_enumeration));
}

}  // namespace detail

/// E|chi(X,W)| for uniform X and uniform W of size exactly w, exactly.
inline Rational exact_chi_expectation(const SetFamily& f, int w, const Budget& budget = {})
{
    detail::check_w(f, w);
    detail::check_enumeration(f, w, budget);
    BigInt total = 0;
    BigInt sets = 0;
    for_each_combination(f.ground(), w, [&](ElementSet W) {
        for (const auto& c : chi_profile(f, W)) total += c.size();
        ++sets;
        return true;
    });
    return Rational(total, sets * f.size());
}

inline Estimate estimate_chi_expectation(const SetFamily& f, int w, std::size_t trials, std::uint64_t seed)
{
    detail::check_w(f, w);
    if (trials < 1) throw std::invalid_argument("trials must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, f.size() - 1);
    detail::RunningMean acc;
    for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t x = pick(rng);
        const ElementSet W = detail::random_subset(f.n, w, rng);
        acc.add(chi(f, x, W).size());
    }
    return acc.finish();
}

/// Pr[some member ⊆ W] for uniform W of size w, exactly.
inline Rational exact_coverage_probability(const SetFamily& f, int w, const Budget& budget = {})
{
    detail::check_w(f, w);
    detail::check_enumeration(f, w, budget);
    BigInt hits = 0, sets = 0;
    for_each_combination(f.ground(), w, [&](ElementSet W) {
        if (covers(f, W)) ++hits;
        ++sets;
        return true;
    });
    return Rational(hits, sets);
}

struct CoverageEstimate {
    Estimate estimate;
    std::size_t successes = 0;
    double exact_lower = 0;  ///< Clopper-Pearson 95% interval
    double exact_upper = 1;
};

/// Clopper-Pearson interval for `successes` out of `trials` at the given confidence.
inline std::pair<double, double> clopper_pearson(std::size_t successes, std::size_t trials, double confidence = 0.95)
{
    const double alpha = 1 - confidence;
    const auto s = static_cast<double>(successes);
    const auto t = static_cast<double>(trials);
    const double lo = successes == 0 ? 0.0 : boost::math::ibeta_inv(s, t - s + 1, alpha / 2);
    const double hi = successes == trials ? 1.0 : boost::math::ibeta_inv(s + 1, t - s, 1 - alpha / 2);
    return {lo, hi};
}

inline CoverageEstimate estimate_coverage_probability(const SetFamily& f, int w, std::size_t trials, std::uint64_t seed)
{
    detail::check_w(f, w);
    if (trials < 1) throw std::invalid_argument("trials must be positive");
    std::mt19937_64 rng(seed);
    detail::RunningMean acc;
    CoverageEstimate out;
    for (std::size_t t = 0; t < trials; ++t) {
        const bool hit = covers(f, detail::random_subset(f.n, w, rng)).has_value();
        out.successes += hit ? 1 : 0;
        acc.add(hit ? 1.0 : 0.0);
    }
    out.estimate = acc.finish();
    std::tie(out.exact_lower, out.exact_upper) = clopper_pearson(out.successes, trials);
    return out;
}

/// One row of experiment output.
struct ExperimentRecord {
    std::string statistic;
    int m_or_w = 0;
    std::optional<Rational> exact;
    double value = 0;
    std::optional<double> ci_halfwidth;  // estimates only
    std::size_t trials = 0;
    std::optional<std::uint64_t> seed;
    std::uint64_t family_hash = 0;
    std::string note;
};

/// FNV-1a over the canonical serialisation.
inline std::uint64_t family_hash(const SetFamily& f)
{
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : serialize_family(f)) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

struct ScheduleOptions {
    std::size_t trials = 10000;
    std::uint64_t seed = 0;
    Budget budget;
    /// Enumerate when C(n,w)*l fits the budget, otherwise sample.
    bool prefer_exact = true;
};

/// |W| = ceil(kappa m n / r).
inline int schedule_size(const SetFamily& f, const Rational& kappa, const Rational& r, int m)
{
    const Rational size = kappa * m * f.n / r;
    BigInt c = numerator(size) / denominator(size);
    if (c * denominator(size) < numerator(size)) ++c;
    return c.convert_to<int>();
}

/// E|chi(X,W)| along |W| = ceil(kappa m n / r), m = 0..m_max, with each level's ratio to the previous.
/// Ratios are recorded, not asserted.
inline std::vector<ExperimentRecord> contraction_schedule(const SetFamily& f, const Rational& r, const Rational& kappa,
                                                          int m_max, const ScheduleOptions& opt = {})
{
    if (r <= 0 || kappa <= 0) throw std::invalid_argument("r and kappa must be positive");
    if (m_max < 0) throw std::invalid_argument("m_max must be non-negative");
    for (int m = 0; m <= m_max; ++m)
        if (schedule_size(f, kappa, r, m) > f.n)
            throw std::invalid_argument("schedule size at m=" + std::to_string(m) + " exceeds n");

    const std::uint64_t hash = family_hash(f);
    std::vector<ExperimentRecord> out;
    std::optional<double> previous;
    for (int m = 0; m <= m_max; ++m) {
        const int w = schedule_size(f, kappa, r, m);
        ExperimentRecord rec;
        rec.statistic = "chi_expectation";
        rec.m_or_w = m;
        rec.family_hash = hash;
        rec.note = "w=" + std::to_string(w);
        const bool exact = opt.prefer_exact && binomial(f.n, w) * f.size() <= opt.budget.max_enumeration;
        if (exact) {
            rec.exact = exact_chi_expectation(f, w, opt.budget);
            rec.value = to_double(*rec.exact);
        } else {
            const Estimate e = estimate_chi_expectation(f, w, opt.trials, opt.seed + static_cast<std::uint64_t>(m));
            rec.value = e.mean;
            rec.ci_halfwidth = e.half_width;
            rec.trials = opt.trials;
            rec.seed = opt.seed + static_cast<std::uint64_t>(m);
        }
        out.push_back(rec);
        if (previous && *previous > 0) {
            ExperimentRecord ratio = rec;
            ratio.statistic = "contraction_ratio";
            ratio.exact.reset();
            if (out[out.size() - 2].exact && rec.exact) ratio.exact = *rec.exact / *out[out.size() - 2].exact;
            ratio.value = rec.value / *previous;
            ratio.ci_halfwidth.reset();
            out.push_back(ratio);
        }
        previous = rec.value;
    }
    return out;
}

/// Fraction of random partitions in which every part covers a member.
inline Estimate partition_success_rate(const SetFamily& f, int p, std::size_t trials, std::uint64_t seed)
{
    if (f.n < p) throw std::invalid_argument("need n >= p");
    if (trials < 1) throw std::invalid_argument("trials must be positive");
    std::mt19937_64 rng(seed);
    detail::RunningMean acc;
    for (std::size_t t = 0; t < trials; ++t) acc.add(covered_per_part(f, sample_partition(f.n, p, rng)) ? 1.0 : 0.0);
    return acc.finish();
}

/// Every p-tuple of indices (ascending, in lexicographic order) forming a sunflower.
/// With `distinct`, tuples containing equal sets are skipped.
inline std::vector<Sunflower> brute_force_sunflowers(const SetFamily& f, int p, bool distinct = true, const Budget& budget = {})
{
    if (p < 2) throw std::invalid_argument("p must be at least 2");
    const BigInt tuples = binomial(static_cast<long long>(f.size()), p);
    if (tuples > budget.max_tuples)
        throw BudgetError("C(l,p) = " + tuples.str() + " exceeds the tuple budget " + std::to_string(budget.max_tuples));

    std::vector<Sunflower> out;
    std::vector<std::size_t> chosen;
    const auto l = f.size();
    // core is fixed by the first two members; later members must meet each earlier one exactly in it
    auto extend = [&](auto&& self, std::size_t start, ElementSet core) -> void {
        if (chosen.size() == static_cast<std::size_t>(p)) {
            out.push_back({core, chosen});
            return;
        }
        for (std::size_t i = start; i + (static_cast<std::size_t>(p) - chosen.size()) <= l; ++i) {
            ElementSet next_core = core;
            bool ok = true;
            if (chosen.size() == 1) next_core = f[chosen[0]] & f[i];
            for (auto c : chosen) {
                if ((f[c] & f[i]) != next_core || (distinct && f[c] == f[i])) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            chosen.push_back(i);
            self(self, i + 1, next_core);
            chosen.pop_back();
        }
    };
    extend(extend, 0, ElementSet{});
    return out;
}

/// A maximum pairwise-disjoint index set; the lexicographically smallest among maximums.
inline std::vector<std::size_t> max_disjoint(const SetFamily& f, const Budget& budget = {})
{
    if (f.size() > budget.max_backtrack)
        throw BudgetError("l = " + std::to_string(f.size()) + " exceeds the backtracking budget " +
                          std::to_string(budget.max_backtrack));
    std::vector<std::size_t> best, current;
    // include-first DFS visits index sequences in lexicographic order; only strict gains replace
    auto search = [&](auto&& self, std::size_t i, ElementSet used) -> void {
        if (current.size() + (f.size() - i) <= best.size()) return;
        if (i == f.size()) {
            best = current;
            return;
        }
        if (!f[i].intersects(used)) {
            current.push_back(i);
            self(self, i + 1, used | f[i]);
            current.pop_back();
        }
        self(self, i + 1, used);
    };
    search(search, 0, ElementSet{});
    return best;
}

}  // namespace sunflower
