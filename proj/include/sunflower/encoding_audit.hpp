#pragma once

// Executable two-case prefix-free encoding of pairs (x, V) for a fixed conditioning set U,
// with W = U ∪ V. The encoder emits a case bit and then one of two field schedules; every
// field width is computable by the decoder from what it has read so far, which makes each
// codeword self-delimiting.
//
// Case 0 (every A has |tau(A,x,V)| <= phi):
//   unary |chi(x,U)| · rank of V ∪ chi(x,U) · bitmap of chi(x,U) ∩ chi(j,U) over chi(j,U)
//   · unary |chi(x,W)| · rank of x in tau(A) · bitmap of V ∩ chi(x,U) over chi(x,U)
// Case 1 (some A has |tau(A,x,V)| > phi):
//   rank of x in [l] · bitmap of A over chi(x,U) · rank of V among the v-sets violating for (x, A)

#include "sunflower/chi.hpp"
#include "sunflower/family.hpp"
#include "sunflower/prefix_code.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sunflower {

inline constexpr std::uint64_t kDefaultAuditBudget = 20000;

struct AuditConfig {
    ElementSet u;
    int v = 1;
    Rational rho = 2;
    Rational r = 2;
};

/// Encoder fields, in emission order within each case.
enum class Field : std::size_t {
    chi_u_size,     // 0a  unary |chi(x,U)|
    union_rank,     // 0b  V ∪ chi(x,U)
    overlap,        // 0c  chi(x,U) ∩ chi(j,U)
    chi_w_size,     // 0c' unary |chi(x,W)|
    tau_rank,       // 0d  x within tau(A)
    tail,           // 0e  V ∩ chi(x,U)
    index,          // 1a  x
    pattern,        // 1b  A
    violator_rank,  // 1c  V among violating sets
};

inline constexpr std::size_t kFieldCount = 9;
inline constexpr std::array<std::string_view, kFieldCount> kFieldNames = {
    "bits_0a", "bits_0b", "bits_0c", "bits_0c2", "bits_0d", "bits_0e", "bits_1a", "bits_1b", "bits_1c"};

struct EncodedPair {
    BitString bits;
    bool case_bit = false;
    std::vector<std::pair<Field, std::size_t>> fields;  // widths, excluding the case bit
    int chi_u = 0;
    int chi_w = 0;
    std::size_t j = 0;   // case 0: minimiser of |chi(j,U)| inside V ∪ chi(x,U)
    int overlap = -1;    // case 0: |chi(j,U) ∩ chi(x,U)|
    BigInt candidates;   // |tau(A)| in case 0, number of violating V in case 1
};

class PairCoder {
public:
    PairCoder(SetFamily family, AuditConfig config) : f_(std::move(family)), cfg_(std::move(config))
    {
        validate(f_);
        if (f_.empty()) throw std::invalid_argument("audit needs a non-empty family");
        if (!cfg_.u.subset_of(f_.ground())) throw std::invalid_argument("U must be a subset of [n]");
        if (cfg_.v < 1) throw std::invalid_argument("v must be at least 1");
        if (cfg_.rho <= 1) throw std::invalid_argument("rho must exceed 1");
        if (cfg_.r <= 0) throw std::invalid_argument("r must be positive");
        free_ = f_.ground() - cfg_.u;
        if (cfg_.v > free_.size()) throw std::invalid_argument("v exceeds |[n] \\ U|");
        free_list_ = free_.elements();
        chi_u_ = chi_profile(f_, cfg_.u);
    }

    const SetFamily& family() const { return f_; }
    const AuditConfig& config() const { return cfg_; }
    ElementSet free_elements() const { return free_; }
    ElementSet chi_u(std::size_t x) const { return chi_u_.at(x).value; }

    /// r^k (rho v/n)^|chi(x,U)| (v r/n)^-a_size, exactly.
    Rational phi(std::size_t x, int a_size) const
    {
        const Rational n(f_.n);
        return rpow(cfg_.r, f_.k) * rpow(cfg_.rho * cfg_.v / n, chi_u(x).size()) * rpow(cfg_.r * cfg_.v / n, -a_size);
    }

    /// {y : A ⊆ chi(y,U) ⊆ V ∪ chi(x,U), |chi(y,U)| = |chi(x,U)|}, ascending.
    std::vector<std::size_t> tau(ElementSet a, std::size_t x, ElementSet v) const
    {
        const ElementSet cu = chi_u(x);
        if (!a.subset_of(cu)) throw std::invalid_argument("A must be a subset of chi(x,U)");
        return tau_within(a, v | cu, cu.size());
    }

    /// |{y in tau(A,x,V) : chi(y,U) ∩ chi(x,U) = B}|.
    std::size_t count_tally(ElementSet a, ElementSet b, std::size_t x, ElementSet v) const
    {
        const ElementSet cu = chi_u(x);
        if (!a.subset_of(b) || !b.subset_of(cu)) throw std::invalid_argument("need A ⊆ B ⊆ chi(x,U)");
        std::size_t n = 0;
        for (auto y : tau(a, x, v))
            if ((chi_u(y) & cu) == b) ++n;
        return n;
    }

    /// First (lexicographic) A ⊆ chi(x,U) of size a_size with |tau(A,x,V)| > phi.
    std::optional<ElementSet> violating_set(std::size_t x, ElementSet v, int a_size) const
    {
        const Rational threshold = phi(x, a_size);
        std::optional<ElementSet> found;
        for_each_combination(chi_u(x), a_size, [&](ElementSet a) {
            if (Rational(tau(a, x, v).size()) > threshold) found = a;
            return !found;
        });
        return found;
    }

    /// All v-subsets V' of [n] \ U with |tau(A,x,V')| > phi(x,|A|), in lexicographic order.
    std::vector<ElementSet> violators(std::size_t x, ElementSet a) const
    {
        const Rational threshold = phi(x, a.size());
        std::vector<ElementSet> out;
        for_each_combination(free_list_, cfg_.v, [&](ElementSet v) {
            if (Rational(tau(a, x, v).size()) > threshold) out.push_back(v);
            return true;
        });
        return out;
    }

    EncodedPair encode(std::size_t x, ElementSet v) const
    {
        if (x >= f_.size()) throw std::out_of_range("index outside the family");
        if (v.size() != cfg_.v) throw std::invalid_argument("|V| must equal v=" + std::to_string(cfg_.v));
        if (!v.subset_of(free_)) throw std::invalid_argument("V must avoid U and lie in [n]");

        const ElementSet cu = chi_u(x);
        const ChiResult cw = chi(f_, x, cfg_.u | v);
        EncodedPair out;
        out.chi_u = cu.size();
        out.chi_w = cw.size();

        BitWriter w;
        std::size_t mark = 0;
        auto close = [&](Field field) {
            out.fields.emplace_back(field, w.size() - mark);
            mark = w.size();
        };

        const auto violation = violating_set(x, v, out.chi_w);
        out.case_bit = violation.has_value();
        w.bit(out.case_bit);
        mark = w.size();

        if (!out.case_bit) {
            const int m = cu.size();
            w.unary(static_cast<std::uint64_t>(m));
            close(Field::chi_u_size);

            const ElementSet t = v | cu;
            const SubsetRanker ranker(free_list_, cfg_.v, cfg_.v + m);
            w.ranked(ranker.rank(t), ranker.total());
            close(Field::union_rank);

            out.j = *minimiser(t);
            const ElementSet cj = chi_u(out.j);
            if (cj.size() > m) throw std::logic_error("minimiser larger than chi(x,U)");
            const ElementSet inter = cu & cj;
            w.bitmap(inter, cj);
            close(Field::overlap);
            out.overlap = inter.size();
            if (out.chi_w > out.overlap) throw std::logic_error("|chi(x,W)| exceeds |chi(j,U) ∩ chi(x,U)|");

            w.unary(static_cast<std::uint64_t>(out.chi_w));
            close(Field::chi_w_size);

            const auto candidates = tau_within(smallest(inter, out.chi_w), t, m);
            const auto it = std::find(candidates.begin(), candidates.end(), x);
            if (it == candidates.end()) throw std::logic_error("x missing from its own tau set");
            out.candidates = candidates.size();
            w.ranked(static_cast<std::size_t>(it - candidates.begin()), out.candidates);
            close(Field::tau_rank);

            w.bitmap(v & cu, cu);
            close(Field::tail);
        } else {
            w.ranked(x, f_.size());
            close(Field::index);
            w.bitmap(*violation, cu);
            close(Field::pattern);
            const auto list = violators(x, *violation);
            const auto it = std::find(list.begin(), list.end(), v);
            if (it == list.end()) throw std::logic_error("V missing from its violator list");
            out.candidates = list.size();
            w.ranked(static_cast<std::size_t>(it - list.begin()), out.candidates);
            close(Field::violator_rank);
        }
        out.bits = w.take();
        return out;
    }

    /// Reads one codeword from `in`.
    std::pair<std::size_t, ElementSet> decode_one(BitReader& in) const
    {
        if (!in.bit()) {
            const auto m64 = in.unary();
            if (m64 > static_cast<std::uint64_t>(f_.k)) throw DecodeError("|chi(x,U)| exceeds k");
            const int m = static_cast<int>(m64);
            const SubsetRanker ranker(free_list_, cfg_.v, cfg_.v + m);
            const ElementSet t = ranker.unrank(in.ranked(ranker.total()));
            const auto j = minimiser(t);
            if (!j) throw DecodeError("no chi(j,U) inside the decoded union");
            const ElementSet inter = in.bitmap(chi_u(*j));
            const auto a64 = in.unary();
            if (a64 > static_cast<std::uint64_t>(inter.size())) throw DecodeError("|chi(x,W)| exceeds the overlap");
            const auto candidates = tau_within(smallest(inter, static_cast<int>(a64)), t, m);
            if (candidates.empty()) throw DecodeError("empty tau set");
            const std::size_t x = candidates[in.ranked(candidates.size()).convert_to<std::size_t>()];
            const ElementSet cu = chi_u(x);
            const ElementSet v = (t - cu) | in.bitmap(cu);
            if (v.size() != cfg_.v || !v.subset_of(free_)) throw DecodeError("decoded V has the wrong shape");
            return {x, v};
        }
        const std::size_t x = in.ranked(f_.size()).convert_to<std::size_t>();
        const ElementSet a = in.bitmap(chi_u(x));
        const auto list = violators(x, a);
        if (list.empty()) throw DecodeError("no violating V for the decoded pattern");
        return {x, list[in.ranked(list.size()).convert_to<std::size_t>()]};
    }

    std::pair<std::size_t, ElementSet> decode(const BitString& bits) const
    {
        BitReader in(bits);
        auto pair = decode_one(in);
        if (!in.exhausted()) throw DecodeError("trailing bits after codeword");
        return pair;
    }

    /// Length the analytic argument allows for this pair (case bit included); display only.
    double analytic_bits(const EncodedPair& e) const
    {
        const double n = f_.n;
        const double v = cfg_.v;
        const double m = e.chi_u;
        const double log_choose = std::log2(binomial(free_.size(), cfg_.v).convert_to<double>());
        if (!e.case_bit) {
            const double log_phi = f_.k * std::log2(to_double(cfg_.r)) + m * std::log2(to_double(cfg_.rho) * v / n) -
                                   e.chi_w * std::log2(v * to_double(cfg_.r) / n);
            return 1 + (m + 1) + (log_choose + m * std::log2(n / v) + 1) + m + (log_phi + 1) + m;
        }
        return 1 + (f_.k * std::log2(to_double(cfg_.r)) + 1) + m + (log_choose + m * std::log2(6.0 / to_double(cfg_.rho)) + 1);
    }

private:
    std::vector<std::size_t> tau_within(ElementSet a, ElementSet t, int m) const
    {
        std::vector<std::size_t> out;
        for (std::size_t y = 0; y < f_.size(); ++y) {
            const ElementSet cy = chi_u(y);
            if (cy.size() == m && a.subset_of(cy) && cy.subset_of(t)) out.push_back(y);
        }
        return out;
    }

    std::optional<std::size_t> minimiser(ElementSet t) const
    {
        std::optional<std::size_t> best;
        for (std::size_t y = 0; y < f_.size(); ++y) {
            const ElementSet cy = chi_u(y);
            if (cy.subset_of(t) && (!best || cy.size() < chi_u(*best).size())) best = y;
        }
        return best;
    }

    // The lexicographically first size-`count` subset of s: its `count` smallest elements.
    static ElementSet smallest(ElementSet s, int count)
    {
        ElementSet out;
        s.for_each([&](int e) {
            if (out.size() < count) out.insert(e);
        });
        return out;
    }

    SetFamily f_;
    AuditConfig cfg_;
    ElementSet free_;
    std::vector<int> free_list_;
    std::vector<ChiResult> chi_u_;
};

inline Rational phi(const SetFamily& f, const AuditConfig& cfg, std::size_t x, int a_size)
{
    return PairCoder(f, cfg).phi(x, a_size);
}

inline std::vector<std::size_t> tau(const SetFamily& f, const AuditConfig& cfg, ElementSet a, std::size_t x, ElementSet v)
{
    return PairCoder(f, cfg).tau(a, x, v);
}

inline std::size_t count_tally(const SetFamily& f, const AuditConfig& cfg, ElementSet a, ElementSet b, std::size_t x,
                               ElementSet v)
{
    return PairCoder(f, cfg).count_tally(a, b, x, v);
}

inline BitString encode_pair(const SetFamily& f, const AuditConfig& cfg, std::size_t x, ElementSet v)
{
    return PairCoder(f, cfg).encode(x, v).bits;
}

inline std::pair<std::size_t, ElementSet> decode_pair(const SetFamily& f, const AuditConfig& cfg, const BitString& bits)
{
    return PairCoder(f, cfg).decode(bits);
}

struct PairRecord {
    std::size_t x = 0;
    ElementSet v;
    bool case_bit = false;
    std::size_t total_bits = 0;
    std::array<std::optional<std::size_t>, kFieldCount> fields{};
    int chi_u = 0;
    int chi_w = 0;
    int overlap = -1;
    double analytic_bits = 0;
};

/// Least-squares fit of (codeword length - log2 pair_count) ~ intercept + a |chi(x,U)| + b |chi(x,W)|.
struct LengthFit {
    double intercept = 0;
    double per_chi_u = 0;
    double per_chi_w = 0;
};

struct AuditReport {
    std::size_t pair_count = 0;
    std::vector<PairRecord> pairs;
    std::vector<BitString> codewords;
    std::optional<std::pair<std::size_t, std::size_t>> prefix_violation;
    std::size_t decode_failures = 0;
    Rational mean_length;
    double log_pairs = 0;
    bool lemma_holds = false;  ///< mean length >= log2(pair_count), decided in integers
    Rational mean_chi_u;
    Rational mean_chi_w;
    std::size_t case0_pairs = 0;
    std::size_t case1_pairs = 0;
    std::size_t analytic_exceeded = 0;  ///< pairs longer than analytic_bits
    LengthFit fit;
    std::vector<std::string> warnings;

    bool prefix_free() const { return !prefix_violation.has_value(); }
    bool round_trip() const { return decode_failures == 0; }
};

class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Encodes every pair (x, V), V a v-subset of [n] \ U, and checks decoding, prefix-freeness and
/// the mean-length lower bound.
inline AuditReport audit(const SetFamily& f, const AuditConfig& cfg, std::uint64_t max_pairs = kDefaultAuditBudget)
{
    const PairCoder coder(f, cfg);
    const int n = f.n;
    const int u = cfg.u.size();
    const BigInt space = BigInt(f.size()) * binomial(n - u, cfg.v);
    if (space > max_pairs) throw BudgetError("pair space " + space.str() + " exceeds the audit budget " + std::to_string(max_pairs));

    AuditReport rep;
    if (3 * (n - u - f.k) < n) rep.warnings.push_back("n - u - k < n/3");
    if (n <= 6 * f.k) rep.warnings.push_back("n/k <= 6");

    BigInt total_bits = 0, sum_u = 0, sum_w = 0;
    for (std::size_t x = 0; x < f.size(); ++x) {
        for_each_combination(coder.free_elements(), cfg.v, [&](ElementSet v) {
            const EncodedPair e = coder.encode(x, v);
            PairRecord rec;
            rec.x = x;
            rec.v = v;
            rec.case_bit = e.case_bit;
            rec.total_bits = e.bits.size();
            for (const auto& [field, width] : e.fields) rec.fields[static_cast<std::size_t>(field)] = width;
            rec.chi_u = e.chi_u;
            rec.chi_w = e.chi_w;
            rec.overlap = e.overlap;
            rec.analytic_bits = coder.analytic_bits(e);
            if (static_cast<double>(rec.total_bits) > rec.analytic_bits + 1e-9) ++rep.analytic_exceeded;
            ++(e.case_bit ? rep.case1_pairs : rep.case0_pairs);

            try {
                if (coder.decode(e.bits) != std::pair{x, v}) ++rep.decode_failures;
            } catch (const DecodeError&) {
                ++rep.decode_failures;
            }
            total_bits += rec.total_bits;
            sum_u += rec.chi_u;
            sum_w += rec.chi_w;
            rep.pairs.push_back(rec);
            rep.codewords.push_back(e.bits);
            return true;
        });
    }

    rep.pair_count = rep.pairs.size();
    const auto count = static_cast<long long>(rep.pair_count);
    rep.mean_length = Rational(total_bits, count);
    rep.mean_chi_u = Rational(sum_u, count);
    rep.mean_chi_w = Rational(sum_w, count);
    rep.log_pairs = std::log2(static_cast<double>(rep.pair_count));

    const PrefixCode code{rep.codewords};
    rep.prefix_violation = check_prefix_free(code);
    rep.lemma_holds = rep.prefix_free() && shannon_converse_check(code).holds;

    Eigen::MatrixXd design(rep.pair_count, 3);
    Eigen::VectorXd excess(rep.pair_count);
    for (std::size_t i = 0; i < rep.pair_count; ++i) {
        const auto row = static_cast<Eigen::Index>(i);
        design(row, 0) = 1.0;
        design(row, 1) = rep.pairs[i].chi_u;
        design(row, 2) = rep.pairs[i].chi_w;
        excess(row) = static_cast<double>(rep.pairs[i].total_bits) - rep.log_pairs;
    }
    const Eigen::VectorXd coef = design.completeOrthogonalDecomposition().solve(excess);
    rep.fit = {coef(0), coef(1), coef(2)};
    return rep;
}

}  // namespace sunflower
