#pragma once

#include "sunflower/element_set.hpp"
#include "sunflower/rational.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sunflower {

/// Default cap on the number of sets a generator may produce.
inline constexpr std::uint64_t kDefaultSetBudget = std::uint64_t{1} << 22;

/// An ordered sequence S_1..S_l of k-subsets of [n]. Repeats are allowed.
/// Indices in the C++ API are 0-based; files and the CLI use 1-based positions.
struct SetFamily {
    int n = 0;
    int k = 0;
    std::vector<ElementSet> sets;

    std::size_t size() const { return sets.size(); }
    bool empty() const { return sets.empty(); }
    const ElementSet& operator[](std::size_t i) const { return sets[i]; }

    /// Union of [n].
    ElementSet ground() const { return ElementSet::range(1, n); }

    bool has_duplicates() const
    {
        std::vector<std::uint64_t> b;
        b.reserve(sets.size());
        for (const auto& s : sets) b.push_back(s.bits());
        std::sort(b.begin(), b.end());
        return std::adjacent_find(b.begin(), b.end()) != b.end();
    }

    friend bool operator==(const SetFamily&, const SetFamily&) = default;
};

/// Throws std::invalid_argument unless every set is a k-subset of [n].
inline void validate(const SetFamily& f)
{
    if (f.n < 0 || f.n > kMaxGround)
        throw std::invalid_argument("n=" + std::to_string(f.n) + " outside 0.." + std::to_string(kMaxGround));
    if (f.k < 0 || f.k > f.n)
        throw std::invalid_argument("k=" + std::to_string(f.k) + " outside 0..n=" + std::to_string(f.n));
    const ElementSet ground = f.ground();
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!f[i].subset_of(ground))
            throw std::invalid_argument("set " + std::to_string(i + 1) + " has an element exceeding n=" + std::to_string(f.n));
        if (f[i].size() != f.k)
            throw std::invalid_argument("set " + std::to_string(i + 1) + " has size " + std::to_string(f[i].size()) +
                                        " ≠ k=" + std::to_string(f.k));
    }
}

/// A family-file problem, tagged with the 1-based line it was found on.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
    {
    }
    int line() const { return line_; }

private:
    int line_;
};

namespace detail {

// Input iterator that bumps a line counter each time it steps over '\n'.
class LineCountingIterator {
public:
    using iterator_category = std::input_iterator_tag;
    using value_type = char;
    using difference_type = std::ptrdiff_t;
    using pointer = const char*;
    using reference = const char&;

    LineCountingIterator() = default;
    LineCountingIterator(const char* p, int* line) : p_(p), line_(line) {}

    reference operator*() const { return *p_; }
    LineCountingIterator& operator++()
    {
        if (*p_ == '\n') ++*line_;
        ++p_;
        return *this;
    }
    LineCountingIterator operator++(int)
    {
        auto tmp = *this;
        ++*this;
        return tmp;
    }
    friend bool operator==(const LineCountingIterator& a, const LineCountingIterator& b) { return a.p_ == b.p_; }
    friend bool operator!=(const LineCountingIterator& a, const LineCountingIterator& b) { return a.p_ != b.p_; }

private:
    const char* p_ = nullptr;
    int* line_ = nullptr;
};

// SAX handler for {"n": int, "k": int, "sets": [[int,...],...]}.
class FamilySax : public nlohmann::json_sax<nlohmann::json> {
public:
    explicit FamilySax(const int* line) : line_(line) {}

    struct RawSet {
        int line;
        std::vector<std::uint64_t> elements;
    };

    std::optional<std::int64_t> n, k;
    int n_line = 0, k_line = 0;
    bool saw_sets = false;
    std::vector<RawSet> sets;

    bool null() override { return unexpected("null"); }
    bool boolean(bool) override { return unexpected("boolean"); }
    bool number_float(number_float_t, const string_t&) override { return unexpected("non-integer number"); }
    bool string(string_t&) override { return unexpected("string"); }
    bool binary(binary_t&) override { return unexpected("binary value"); }

    bool number_integer(number_integer_t v) override
    {
        if (v < 0) fail("negative value " + std::to_string(v));
        return number_unsigned(static_cast<number_unsigned_t>(v));
    }

    bool number_unsigned(number_unsigned_t v) override
    {
        if (depth_ == 1 && (key_ == "n" || key_ == "k")) {
            if (v > static_cast<number_unsigned_t>(1) << 30) fail(key_ + " is too large");
            (key_ == "n" ? n : k) = static_cast<std::int64_t>(v);
            (key_ == "n" ? n_line : k_line) = *line_;
            return true;
        }
        if (depth_ == 3) {
            sets.back().elements.push_back(v);
            return true;
        }
        return unexpected("integer");
    }

    bool start_object(std::size_t) override
    {
        if (depth_ != 0) return unexpected("object");
        ++depth_;
        return true;
    }

    bool key(string_t& key) override
    {
        if (key != "n" && key != "k" && key != "sets") fail("unknown key \"" + key + "\"");
        if ((key == "n" && n) || (key == "k" && k) || (key == "sets" && saw_sets)) fail("duplicate key \"" + key + "\"");
        key_ = key;
        return true;
    }

    bool end_object() override
    {
        --depth_;
        return true;
    }

    bool start_array(std::size_t) override
    {
        if (depth_ == 1 && key_ == "sets") {
            saw_sets = true;
            depth_ = 2;
            return true;
        }
        if (depth_ == 2) {
            depth_ = 3;
            sets.push_back({*line_, {}});
            return true;
        }
        return unexpected("array");
    }

    bool end_array() override
    {
        --depth_;
        return true;
    }

    bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception& ex) override
    {
        std::string msg = ex.what();
        // Drop nlohmann's "[json.exception.parse_error.101] parse error at line 1, column 2: " prefix.
        if (auto col = msg.find("column"); col != std::string::npos) {
            if (auto pos = msg.find(": ", col); pos != std::string::npos) msg = msg.substr(pos + 2);
        }
        fail("malformed JSON: " + msg);
        return false;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(*line_, what); }
    bool unexpected(const std::string& what)
    {
        fail("unexpected " + what + (depth_ == 1 ? " for key \"" + key_ + "\"" : ""));
    }

    const int* line_;
    int depth_ = 0;
    std::string key_;
};

}  // namespace detail

/// Parses the family file format {"n": int, "k": int, "sets": [[int,...],...]}.
/// Errors are ParseError carrying the offending line.
inline SetFamily parse_family(std::string_view text)
{
    int line = 1;
    detail::FamilySax sax(&line);
    detail::LineCountingIterator first(text.data(), &line);
    detail::LineCountingIterator last(text.data() + text.size(), &line);
    nlohmann::json::sax_parse(first, last, &sax);

    if (!sax.n) throw ParseError(line, "missing key \"n\"");
    if (!sax.k) throw ParseError(line, "missing key \"k\"");
    if (!sax.saw_sets) throw ParseError(line, "missing key \"sets\"");
    if (*sax.n > kMaxGround)
        throw ParseError(sax.n_line, "n=" + std::to_string(*sax.n) + " exceeds the supported maximum " + std::to_string(kMaxGround));
    if (*sax.k > *sax.n)
        throw ParseError(sax.k_line, "k=" + std::to_string(*sax.k) + " exceeds n=" + std::to_string(*sax.n));

    SetFamily f;
    f.n = static_cast<int>(*sax.n);
    f.k = static_cast<int>(*sax.k);
    f.sets.reserve(sax.sets.size());
    for (const auto& raw : sax.sets) {
        ElementSet s;
        std::uint64_t prev = 0;
        for (std::uint64_t e : raw.elements) {
            if (e < 1) throw ParseError(raw.line, "element 0 is below 1");
            if (e > static_cast<std::uint64_t>(f.n))
                throw ParseError(raw.line, "element " + std::to_string(e) + " exceeds n=" + std::to_string(f.n));
            if (e <= prev) throw ParseError(raw.line, "elements must be strictly increasing");
            s.insert(static_cast<int>(e));
            prev = e;
        }
        if (raw.elements.size() != static_cast<std::size_t>(f.k))
            throw ParseError(raw.line, "set size " + std::to_string(raw.elements.size()) + " ≠ k=" + std::to_string(f.k));
        f.sets.push_back(s);
    }
    return f;
}

/// Canonical text form: one set per line, accepted back by parse_family.
inline std::string serialize_family(const SetFamily& f)
{
    std::ostringstream os;
    os << "{\n  \"n\": " << f.n << ",\n  \"k\": " << f.k << ",\n  \"sets\": [";
    for (std::size_t i = 0; i < f.size(); ++i) {
        os << (i == 0 ? "\n    [" : ",\n    [");
        bool first = true;
        f[i].for_each([&](int e) {
            os << (first ? "" : ", ") << e;
            first = false;
        });
        os << ']';
    }
    os << (f.empty() ? "]\n}\n" : "\n  ]\n}\n");
    return os.str();
}

inline SetFamily read_family_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open family file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_family(ss.str());
}

inline void write_family_file(const std::string& path, const SetFamily& f)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write family file '" + path + "'");
    out << serialize_family(f);
}

/// Checked (p-1)^k; throws std::overflow_error beyond `limit`.
inline std::uint64_t extremal_size(int p, int k, std::uint64_t limit = kDefaultSetBudget)
{
    std::uint64_t count = 1;
    for (int i = 0; i < k; ++i) {
        if (count > limit / static_cast<std::uint64_t>(p - 1))
            throw std::overflow_error("(p-1)^k exceeds the set budget " + std::to_string(limit));
        count *= static_cast<std::uint64_t>(p - 1);
    }
    return count;
}

/// The (p-1)^k sets that pick one element from each of k blocks of size p-1, in lexicographic order.
/// Contains no p-sunflower.
inline SetFamily generate_extremal(int p, int k, std::uint64_t max_sets = kDefaultSetBudget)
{
    if (p < 2) throw std::invalid_argument("p must be at least 2");
    if (k < 1) throw std::invalid_argument("k must be at least 1");
    if (static_cast<long long>(k) * (p - 1) > kMaxGround)
        throw std::overflow_error("ground set k(p-1) exceeds " + std::to_string(kMaxGround));
    const std::uint64_t count = extremal_size(p, k, max_sets);

    SetFamily f;
    f.n = k * (p - 1);
    f.k = k;
    f.sets.reserve(count);
    std::vector<int> choice(static_cast<std::size_t>(k), 0);  // odometer; last block varies fastest
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        ElementSet s;
        for (int b = 0; b < k; ++b) s.insert(b * (p - 1) + choice[static_cast<std::size_t>(b)] + 1);
        f.sets.push_back(s);
        for (int b = k - 1; b >= 0; --b) {
            if (++choice[static_cast<std::size_t>(b)] < p - 1) break;
            choice[static_cast<std::size_t>(b)] = 0;
        }
    }
    return f;
}

/// Binomial coefficient C(n, k) as an arbitrary-precision integer (0 outside 0 <= k <= n).
inline BigInt binomial(long long n, long long k)
{
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// `count` uniformly random k-subsets of [n], deterministic in `seed`.
/// With `distinct`, repeats are rejected and resampled.
inline SetFamily generate_random_family(int n, int k, std::size_t count, std::uint64_t seed, bool distinct)
{
    if (n < 0 || n > kMaxGround) throw std::invalid_argument("n outside 0.." + std::to_string(kMaxGround));
    if (k < 0 || k > n) throw std::invalid_argument("k outside 0..n");
    if (distinct && BigInt(count) > binomial(n, k))
        throw std::invalid_argument("cannot draw " + std::to_string(count) + " distinct " + std::to_string(k) +
                                    "-subsets of [" + std::to_string(n) + "]: only " + binomial(n, k).str() + " exist");
    std::mt19937_64 rng(seed);
    std::vector<int> ground(static_cast<std::size_t>(n));
    std::iota(ground.begin(), ground.end(), 1);

    SetFamily f;
    f.n = n;
    f.k = k;
    std::set<std::uint64_t> seen;
    while (f.size() < count) {
        std::vector<int> pick;
        std::sample(ground.begin(), ground.end(), std::back_inserter(pick), k, rng);
        const ElementSet s = ElementSet::of(pick);
        if (distinct && !seen.insert(s.bits()).second) continue;
        f.sets.push_back(s);
    }
    return f;
}

/// The link of F at Z: {S \ Z : Z ⊆ S} in original order, over the same ground set.
/// `origin`, when given, receives the source index of each kept set.
inline SetFamily link(const SetFamily& f, ElementSet z, std::vector<std::size_t>* origin = nullptr)
{
    if (z.size() > f.k) throw std::invalid_argument("link set larger than k");
    SetFamily out;
    out.n = f.n;
    out.k = f.k - z.size();
    if (origin) origin->clear();
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!z.subset_of(f[i])) continue;
        out.sets.push_back(f[i] - z);
        if (origin) origin->push_back(i);
    }
    return out;
}

inline std::size_t count_supersets(const SetFamily& f, ElementSet z)
{
    return static_cast<std::size_t>(
        std::count_if(f.sets.begin(), f.sets.end(), [&](ElementSet s) { return z.subset_of(s); }));
}

/// For every non-empty Z contained in some member, the number of members containing Z.
inline std::unordered_map<std::uint64_t, std::size_t> subset_counts(const SetFamily& f)
{
    std::unordered_map<std::uint64_t, std::size_t> counts;
    for (const auto& s : f.sets) for_each_nonempty_subset(s, [&](ElementSet z) { ++counts[z.bits()]; });
    return counts;
}

/// Z together with the number of members containing it.
struct SpreadWitness {
    ElementSet z;
    std::size_t count = 0;
};

struct SpreadReport {
    bool spread = true;
    std::optional<SpreadWitness> witness;  // set iff !spread
};

namespace detail {

struct SpreadCandidate {
    ElementSet z;
    std::size_t count;
    int degree;  // k - |Z|; the candidate's value is count^(1/degree), infinite at degree 0
};

// Larger count^(1/degree) first, then smaller |Z|, then lexicographically smaller Z.
inline bool better_candidate(const SpreadCandidate& a, const SpreadCandidate& b)
{
    if (a.degree == 0 || b.degree == 0) {
        if (a.degree != b.degree) return a.degree == 0;
    } else {
        const BigInt lhs = ipow(BigInt(a.count), static_cast<unsigned>(b.degree));
        const BigInt rhs = ipow(BigInt(b.count), static_cast<unsigned>(a.degree));
        if (lhs != rhs) return lhs > rhs;
    }
    if (a.z.size() != b.z.size()) return a.z.size() < b.z.size();
    return lex_less(a.z, b.z);
}

}  // namespace detail

/// Exact r-spread test: every non-empty Z lies in at most r^(k-|Z|) members.
/// With r = a/b the test is count * b^d <= a^d in integers.
inline SpreadReport spread_check(const SetFamily& f, const Rational& r)
{
    if (r <= 0) throw std::invalid_argument("spread parameter must be positive");
    const BigInt a(numerator(r));
    const BigInt b(denominator(r));
    std::vector<BigInt> a_pow{1}, b_pow{1};
    for (int d = 1; d <= f.k; ++d) {
        a_pow.push_back(a_pow.back() * a);
        b_pow.push_back(b_pow.back() * b);
    }

    std::optional<detail::SpreadCandidate> best;
    for (const auto& [bits, count] : subset_counts(f)) {
        const ElementSet z = ElementSet::from_bits(bits);
        const int d = f.k - z.size();
        if (BigInt(count) * b_pow[static_cast<std::size_t>(d)] <= a_pow[static_cast<std::size_t>(d)]) continue;
        const detail::SpreadCandidate c{z, count, d};
        if (!best || detail::better_candidate(c, *best)) best = c;
    }
    if (!best) return {};
    return {false, SpreadWitness{best->z, best->count}};
}

/// The least r making a family r-spread: max over 0 < |Z| < k of count(Z)^(1/(k-|Z|)),
/// infinite when a set repeats. Families with no such Z report 1.
struct SpreadNumber {
    bool infinite = false;
    std::size_t count = 1;
    int degree = 1;
    ElementSet witness;

    double approx() const
    {
        if (infinite) return std::numeric_limits<double>::infinity();
        return std::pow(static_cast<double>(count), 1.0 / degree);
    }

    /// True iff value <= r, i.e. the family is r-spread.
    bool at_most(const Rational& r) const
    {
        if (infinite) return false;
        const auto d = static_cast<unsigned>(degree);
        return BigInt(count) * ipow(BigInt(denominator(r)), d) <= ipow(BigInt(numerator(r)), d);
    }

    std::string to_string() const
    {
        if (infinite) return "inf";
        if (degree == 1) return std::to_string(count);
        return std::to_string(count) + "^(1/" + std::to_string(degree) + ")";
    }
};

inline SpreadNumber spread_number(const SetFamily& f)
{
    std::optional<detail::SpreadCandidate> best, duplicate;
    for (const auto& [bits, count] : subset_counts(f)) {
        const ElementSet z = ElementSet::from_bits(bits);
        const int d = f.k - z.size();
        const detail::SpreadCandidate c{z, count, d};
        if (d == 0) {
            if (count >= 2 && (!duplicate || lex_less(z, duplicate->z))) duplicate = c;
        } else if (!best || detail::better_candidate(c, *best)) {
            best = c;
        }
    }
    SpreadNumber out;
    if (duplicate) {
        out.infinite = true;
        out.count = duplicate->count;
        out.degree = 0;
        out.witness = duplicate->z;
    } else if (best && best->count > 1) {
        out.count = best->count;
        out.degree = best->degree;
        out.witness = best->z;
    }
    return out;
}

/// Sunflower-size and covering-lemma constants. Defaults exist so small demos run;
/// no correctness claim attaches to them.
struct SpreadParams {
    int p = 2;
    Rational alpha = 4;
    Rational beta = 2;
    Rational gamma = Rational(1, 4);
    Rational epsilon = Rational(1, 4);

    void validate() const
    {
        if (p < 2) throw std::invalid_argument("p must be at least 2");
        if (alpha <= 1) throw std::invalid_argument("alpha must exceed 1");
        if (beta <= 1) throw std::invalid_argument("beta must exceed 1");
        if (gamma <= 0 || gamma >= Rational(1, 2)) throw std::invalid_argument("gamma must lie in (0, 1/2)");
        if (epsilon <= 0 || epsilon >= Rational(1, 2)) throw std::invalid_argument("epsilon must lie in (0, 1/2)");
    }
};

enum class ThresholdForm {
    sunflower,  ///< alpha * p * log2(p k)
    covering,   ///< beta * (1/gamma) * log2(k / epsilon)
};

/// Rational upper bound (within 2^-20) on the spread threshold, base-2 logarithms throughout.
inline Rational r_threshold(const SpreadParams& params, int k, ThresholdForm form = ThresholdForm::sunflower)
{
    if (form == ThresholdForm::sunflower) {
        if (static_cast<long long>(params.p) * k < 2) throw std::domain_error("r(p,k) needs p*k >= 2");
        return scaled_log2_upper(params.alpha * params.p, Rational(static_cast<long long>(params.p) * k));
    }
    if (params.gamma <= 0) throw std::domain_error("gamma must be positive");
    if (params.epsilon <= 0) throw std::domain_error("epsilon must be positive");
    const Rational x = Rational(k) / params.epsilon;
    if (x <= 1) throw std::domain_error("r(k,gamma,epsilon) needs k/epsilon > 1");
    return scaled_log2_upper(params.beta / params.gamma, x);
}

}  // namespace sunflower
