#include "cli.hpp"

#include "sunflower/chi.hpp"
#include "sunflower/encoding_audit.hpp"
#include "sunflower/experiments.hpp"
#include "sunflower/family.hpp"
#include "sunflower/prefix_code.hpp"
#include "sunflower/sunflower.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sunflower::cli {
namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string fmt(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

// "1,2,5" -> {1,2,5}; "" -> {}
ElementSet parse_elements(const std::string& text, int n)
{
    ElementSet s;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (item.empty()) continue;
        std::size_t used = 0;
        int e = 0;
        try {
            e = std::stoi(item, &used);
        } catch (const std::exception&) {
            throw UsageError("bad element '" + item + "'");
        }
        if (used != item.size()) throw UsageError("bad element '" + item + "'");
        if (e < 1 || e > n) throw UsageError("element " + std::to_string(e) + " outside 1..n=" + std::to_string(n));
        s.insert(e);
    }
    return s;
}

std::string join_indices(const std::vector<std::size_t>& idx)
{
    std::string s;
    for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? "," : "") + std::to_string(idx[i] + 1);
    return s;
}

json indices_json(const std::vector<std::size_t>& idx)
{
    json a = json::array();
    for (auto i : idx) a.push_back(i + 1);
    return a;
}

std::ofstream open_output(const std::string& path)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + path + "'");
    return f;
}

Rational rational_option(const std::string& text, const char* name)
{
    try {
        return parse_rational(text);
    } catch (const std::exception& e) {
        throw UsageError(std::string("--") + name + ": " + e.what());
    }
}

struct Globals {
    int threads = 0;
    std::optional<std::uint64_t> budget;

    Budget experiment_budget() const
    {
        Budget b;
        if (budget) b.max_enumeration = b.max_tuples = *budget;
        return b;
    }
};

// ---------------------------------------------------------------- gen

struct GenArgs {
    bool extremal = false, random = false, distinct = false;
    int p = 0, k = 0, n = 0;
    std::size_t count = 0;
    std::optional<std::uint64_t> seed;
    std::string output;
};

void add_gen(CLI::App& app, GenArgs& a)
{
    auto* c = app.add_subcommand("gen", "Generate a family file (extremal construction or random sets)");
    auto* ext = c->add_flag("--extremal", a.extremal, "The (p-1)^k block construction");
    auto* rnd = c->add_flag("--random", a.random, "Uniformly random k-subsets of [n]");
    ext->excludes(rnd);
    c->add_option("--p", a.p, "Petal count (extremal)");
    c->add_option("--k", a.k, "Set size");
    c->add_option("--n", a.n, "Ground-set size (random)");
    c->add_option("--l", a.count, "Number of sets (random)");
    c->add_option("--seed", a.seed, "RNG seed (random)");
    c->add_flag("--distinct", a.distinct, "Reject repeated sets (random)");
    c->add_option("-o,--output", a.output, "Output family file (default: stdout)");
}

int run_gen(const GenArgs& a, std::ostream& out)
{
    SetFamily f;
    if (a.extremal) {
        if (a.p < 2 || a.k < 1) throw UsageError("gen --extremal needs --p >= 2 and --k >= 1");
        f = generate_extremal(a.p, a.k);
    } else if (a.random) {
        if (!a.seed) throw UsageError("gen --random needs --seed");
        f = generate_random_family(a.n, a.k, a.count, *a.seed, a.distinct);
    } else {
        throw UsageError("gen needs --extremal or --random");
    }
    if (a.output.empty()) {
        out << serialize_family(f);
    } else {
        write_family_file(a.output, f);
        out << "wrote " << f.size() << " sets (n=" << f.n << ", k=" << f.k << ") to " << a.output << "\n";
    }
    return kOk;
}

// ---------------------------------------------------------------- spread

struct SpreadArgs {
    std::string family, r;
    bool as_json = false;
};

void add_spread(CLI::App& app, SpreadArgs& a)
{
    auto* c = app.add_subcommand("spread", "Check r-spreadness, or report the spread number when --r is omitted");
    c->add_option("--family", a.family, "Family file")->required();
    c->add_option("--r", a.r, "Spread parameter, e.g. 19/10 or 1.9");
    c->add_flag("--json", a.as_json, "Machine-readable output");
}

int run_spread(const SpreadArgs& a, std::ostream& out)
{
    const SetFamily f = read_family_file(a.family);
    if (a.r.empty()) {
        const SpreadNumber s = spread_number(f);
        if (a.as_json) {
            out << json{{"infinite", s.infinite}, {"count", s.count}, {"degree", s.degree},
                        {"witness", s.witness.elements()}, {"approx", s.infinite ? json(nullptr) : json(s.approx())}}
                       .dump()
                << "\n";
        } else {
            out << "spread number: " << s.to_string();
            if (!s.infinite) out << " ~ " << fmt(s.approx());
            if (!s.witness.empty()) out << " (Z=" << s.witness.to_string() << ")";
            out << "\n";
        }
        return kOk;
    }
    const Rational r = rational_option(a.r, "r");
    if (r <= 1) throw UsageError("--r must exceed 1");
    const SpreadReport rep = spread_check(f, r);
    if (a.as_json) {
        json j{{"spread", rep.spread}, {"r", to_string(r)}};
        if (rep.witness) j["witness"] = {{"Z", rep.witness->z.elements()}, {"count", rep.witness->count}};
        out << j.dump() << "\n";
    } else if (rep.spread) {
        out << "spread: r=" << to_string(r) << "\n";
    } else {
        const int d = f.k - rep.witness->z.size();
        out << "violated: witness Z=" << rep.witness->z.to_string() << ", count=" << rep.witness->count << " > r^" << d
            << " (r=" << to_string(r) << ")\n";
    }
    return rep.spread ? kOk : kNegative;
}

// ---------------------------------------------------------------- chi

struct ChiArgs {
    std::string family, w;
    std::size_t x = 0;
    bool as_json = false;
};

void add_chi(CLI::App& app, ChiArgs& a)
{
    auto* c = app.add_subcommand("chi", "Evaluate chi(x, W)");
    c->add_option("--family", a.family, "Family file")->required();
    c->add_option("--x", a.x, "Member index (1-based)")->required();
    c->add_option("--w", a.w, "Comma-separated elements of W")->required();
    c->add_flag("--json", a.as_json, "Machine-readable output");
}

int run_chi(const ChiArgs& a, std::ostream& out)
{
    const SetFamily f = read_family_file(a.family);
    if (a.x < 1 || a.x > f.size()) throw UsageError("--x must lie in 1.." + std::to_string(f.size()));
    const ChiResult c = chi(f, a.x - 1, parse_elements(a.w, f.n));
    if (a.as_json)
        out << json{{"value", c.value.elements()}, {"witness", c.witness + 1}, {"size", c.size()}}.dump() << "\n";
    else
        out << "chi=" << c.value.to_string() << " witness=" << c.witness + 1 << " size=" << c.size() << "\n";
    return kOk;
}

// ---------------------------------------------------------------- sunflower

struct SunflowerArgs {
    std::string family, method = "erdos-rado", alpha;
    int p = 0;
    std::size_t max_iters = 1000;
    std::optional<std::uint64_t> seed;
    bool allow_repeats = false, as_json = false;
};

void add_sunflower(CLI::App& app, SunflowerArgs& a)
{
    auto* c = app.add_subcommand("sunflower", "Extract a p-sunflower");
    c->add_option("--family", a.family, "Family file")->required();
    c->add_option("--p", a.p, "Petal count")->required()->check(CLI::Range(2, 1 << 20));
    c->add_option("--method", a.method, "erdos-rado or spread")->check(CLI::IsMember({"erdos-rado", "spread"}));
    c->add_option("--alpha", a.alpha, "Spread threshold constant (method spread, default 4)");
    c->add_option("--max-iters", a.max_iters, "Partition samples per disjointness search");
    c->add_option("--seed", a.seed, "RNG seed (required for method spread)");
    c->add_flag("--allow-repeats", a.allow_repeats, "Accept p copies of one repeated set");
    c->add_flag("--json", a.as_json, "Machine-readable output");
}

void print_sunflower(std::ostream& out, const std::optional<Sunflower>& s, bool as_json)
{
    if (as_json) {
        out << (s ? json{{"found", true}, {"core", s->core.elements()}, {"petals", indices_json(s->petals)}}
                  : json{{"found", false}})
                       .dump()
            << "\n";
    } else if (s) {
        out << "core=" << s->core.to_string() << " petals=" << join_indices(s->petals) << "\n";
    } else {
        out << "none\n";
    }
}

int run_sunflower(const SunflowerArgs& a, std::ostream& out)
{
    const SetFamily f = read_family_file(a.family);
    std::optional<Sunflower> s;
    if (a.method == "erdos-rado") {
        s = find_sunflower_erdos_rado(f, a.p);
    } else {
        if (!a.seed) throw UsageError("sunflower --method spread needs --seed");
        SpreadParams params;
        if (!a.alpha.empty()) params.alpha = rational_option(a.alpha, "alpha");
        params.p = a.p;
        params.validate();
        s = find_sunflower_spread(f, a.p, params, {a.max_iters, *a.seed, a.allow_repeats});
    }
    print_sunflower(out, s, a.as_json);
    return s ? kOk : kNegative;
}

// ---------------------------------------------------------------- disjoint

struct DisjointArgs {
    std::string family;
    int p = 0;
    std::size_t max_iters = 1000;
    std::optional<std::uint64_t> seed;
    bool as_json = false;
};

void add_disjoint(CLI::App& app, DisjointArgs& a)
{
    auto* c = app.add_subcommand("disjoint", "Search for p disjoint members through random partitions");
    c->add_option("--family", a.family, "Family file")->required();
    c->add_option("--p", a.p, "Number of disjoint members")->required()->check(CLI::Range(1, 64));
    c->add_option("--max-iters", a.max_iters, "Partition samples");
    c->add_option("--seed", a.seed, "RNG seed")->required();
    c->add_flag("--json", a.as_json, "Machine-readable output");
}

int run_disjoint(const DisjointArgs& a, std::ostream& out)
{
    const SetFamily f = read_family_file(a.family);
    const auto picks = find_disjoint_by_partition(f, a.p, a.max_iters, *a.seed);
    if (a.as_json)
        out << (picks ? json{{"found", true}, {"sets", indices_json(*picks)}} : json{{"found", false}}).dump() << "\n";
    else
        out << (picks ? "sets=" + join_indices(*picks) : std::string("none")) << "\n";
    return picks ? kOk : kNegative;
}

// ---------------------------------------------------------------- kraft

struct KraftArgs {
    std::string code;
    bool as_json = false;
};

void add_kraft(CLI::App& app, KraftArgs& a)
{
    auto* c = app.add_subcommand("kraft", "Kraft sum and mean-length bound of a code (one binary word per line)");
    c->add_option("--code", a.code, "Code file")->required();
    c->add_flag("--json", a.as_json, "Machine-readable output");
}

PrefixCode read_code_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open code file '" + path + "'");
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return PrefixCode::parse_lines(lines);
}

int run_kraft(const KraftArgs& a, std::ostream& out)
{
    const PrefixCode code = read_code_file(a.code);
    if (code.size() == 0) throw UsageError("code file has no words");
    if (const auto clash = check_prefix_free(code)) {
        if (a.as_json)
            out << json{{"prefix_free", false}, {"witness", {clash->first + 1, clash->second + 1}}}.dump() << "\n";
        else
            out << "prefix-free: no (words " << clash->first + 1 << " and " << clash->second + 1 << ")\n";
        return kNegative;
    }
    const Rational sum = kraft_sum(code);
    const ShannonReport rep = shannon_converse_check(code);
    if (a.as_json) {
        out << json{{"prefix_free", true}, {"kraft_sum", to_string(sum)}, {"mean_length", to_string(rep.mean_length)},
                    {"log2_t", rep.bound}, {"holds", rep.holds}}
                   .dump()
            << "\n";
    } else {
        out << "prefix-free: yes\n"
            << "kraft sum: " << to_string(sum) << "\n"
            << "mean length: " << to_string(rep.mean_length) << " (" << fmt(to_double(rep.mean_length)) << ")\n"
            << "log2 t: " << fmt(rep.bound) << "\n"
            << "mean length >= log2 t: " << (rep.holds ? "holds" : "FAILS") << "\n";
    }
    return rep.holds ? kOk : kNegative;
}

// ---------------------------------------------------------------- audit-encoding

struct AuditArgs {
    std::string family, u, rho = "2", r = "2", csv;
    int v = 0;
    bool as_json = false;
};

void add_audit(CLI::App& app, AuditArgs& a)
{
    auto* c = app.add_subcommand("audit-encoding", "Exhaustively encode all (x, V) pairs for a fixed U and audit the code");
    c->add_option("--family", a.family, "Family file")->required();
    c->add_option("--u", a.u, "Comma-separated elements of U (default empty)");
    c->add_option("--v", a.v, "|V|")->required();
    c->add_option("--rho", a.rho, "Threshold constant rho > 1");
    c->add_option("--r", a.r, "Spread parameter used in phi");
    c->add_option("--csv", a.csv, "Per-pair CSV output");
    c->add_flag("--json", a.as_json, "Machine-readable summary");
}

void write_audit_csv(std::ostream& os, const AuditReport& rep)
{
    os << "x,V,case,total_bits";
    for (auto name : kFieldNames) os << ',' << name;
    os << ",chi_u,chi_w\n";
    for (const auto& p : rep.pairs) {
        std::string v = p.v.to_string();
        v = v.substr(1, v.size() - 2);
        os << p.x + 1 << ",\"" << v << "\"," << (p.case_bit ? 1 : 0) << ',' << p.total_bits;
        for (const auto& f : p.fields) {
            os << ',';
            if (f) os << *f;
        }
        os << ',' << p.chi_u << ',' << p.chi_w << "\n";
    }
}

int run_audit(const AuditArgs& a, const Globals& g, std::ostream& out)
{
    const SetFamily f = read_family_file(a.family);
    AuditConfig cfg;
    cfg.u = parse_elements(a.u, f.n);
    cfg.v = a.v;
    cfg.rho = rational_option(a.rho, "rho");
    cfg.r = rational_option(a.r, "r");
    const AuditReport rep = audit(f, cfg, g.budget.value_or(kDefaultAuditBudget));
    if (!a.csv.empty()) {
        auto os = open_output(a.csv);
        write_audit_csv(os, rep);
    }
    const bool ok = rep.prefix_free() && rep.round_trip() && rep.lemma_holds;
    if (a.as_json) {
        out << json{{"pairs", rep.pair_count},
                    {"prefix_free", rep.prefix_free()},
                    {"decode_failures", rep.decode_failures},
                    {"mean_length", to_string(rep.mean_length)},
                    {"log2_pairs", rep.log_pairs},
                    {"lemma_holds", rep.lemma_holds},
                    {"mean_chi_u", to_string(rep.mean_chi_u)},
                    {"mean_chi_w", to_string(rep.mean_chi_w)},
                    {"case0", rep.case0_pairs},
                    {"case1", rep.case1_pairs},
                    {"analytic_exceeded", rep.analytic_exceeded},
                    {"fit", {{"intercept", rep.fit.intercept}, {"chi_u", rep.fit.per_chi_u}, {"chi_w", rep.fit.per_chi_w}}},
                    {"warnings", rep.warnings}}
                   .dump()
            << "\n";
        return ok ? kOk : kNegative;
    }
    out << "pairs: " << rep.pair_count << " (case 0: " << rep.case0_pairs << ", case 1: " << rep.case1_pairs << ")\n"
        << "prefix-free: " << (rep.prefix_free() ? "yes" : "NO") << "\n"
        << "round trip: " << (rep.round_trip() ? "ok" : std::to_string(rep.decode_failures) + " failures") << "\n"
        << "mean length: " << to_string(rep.mean_length) << " (" << fmt(to_double(rep.mean_length)) << ") vs log2 pairs "
        << fmt(rep.log_pairs) << ": " << (rep.lemma_holds ? "holds" : "FAILS") << "\n"
        << "E|chi(X,U)| = " << to_string(rep.mean_chi_u) << ", E|chi(X,W)| = " << to_string(rep.mean_chi_w);
    if (rep.mean_chi_u > 0) out << ", ratio " << fmt(to_double(rep.mean_chi_w / rep.mean_chi_u));
    out << "\n"
        << "length - log2 pairs ~ " << fmt(rep.fit.intercept) << " + " << fmt(rep.fit.per_chi_u) << "*|chi(X,U)| + "
        << fmt(rep.fit.per_chi_w) << "*|chi(X,W)|\n"
        << "pairs above the analytic length: " << rep.analytic_exceeded << "\n"
        << "note: contraction by 2/3 needs (log rho + c)/(2 log rho + c - c') <= 2/3 and log(kappa/2) >= 2 log rho + c - c'\n";
    for (const auto& w : rep.warnings) out << "warning: " << w << "\n";
    return ok ? kOk : kNegative;
}

// ---------------------------------------------------------------- experiment

struct ExperimentArgs {
    std::string kind, family, csv, r, kappa = "1", beta, gamma, epsilon;
    std::optional<int> w;
    int p = 0, m_max = 0;
    bool exact = false, exact_ci = false;
    std::optional<std::size_t> trials;
    std::optional<std::uint64_t> seed;
};

void add_experiment(CLI::App& app, ExperimentArgs& a)
{
    auto* c = app.add_subcommand("experiment", "Exact and Monte Carlo experiments (chi | coverage | contraction | partition)");
    c->add_option("kind", a.kind, "chi, coverage, contraction or partition")
        ->required()
        ->check(CLI::IsMember({"chi", "coverage", "contraction", "partition"}));
    c->add_option("--family", a.family, "Family file")->required();
    c->add_option("--w", a.w, "|W| (chi, coverage; default: sweep 0..n)");
    c->add_option("--p", a.p, "Number of parts (partition)");
    c->add_flag("--exact", a.exact, "Enumerate instead of sampling");
    c->add_flag("--exact-ci", a.exact_ci, "Clopper-Pearson interval (coverage)");
    c->add_option("--trials", a.trials, "Monte Carlo trials");
    c->add_option("--seed", a.seed, "RNG seed");
    c->add_option("--csv", a.csv, "CSV output")->required();
    c->add_option("--r", a.r, "Spread parameter for the contraction schedule");
    c->add_option("--kappa", a.kappa, "Schedule constant kappa");
    c->add_option("--m-max", a.m_max, "Last schedule level");
    c->add_option("--beta", a.beta, "beta (schedule r from the covering threshold when --r is absent)");
    c->add_option("--gamma", a.gamma, "gamma");
    c->add_option("--epsilon", a.epsilon, "epsilon");
}

std::string regime_note(int w, int n)
{
    return 2 * w >= n ? "outside gamma<1/2 regime" : "";
}

void write_records(std::ostream& os, const std::vector<ExperimentRecord>& rows)
{
    os << "statistic,m_or_w,value,ci_halfwidth,trials,seed,note\n";
    for (const auto& r : rows) {
        os << r.statistic << ',' << r.m_or_w << ',' << (r.exact ? to_string(*r.exact) : fmt(r.value)) << ','
           << (r.ci_halfwidth ? fmt(*r.ci_halfwidth) : "") << ',' << (r.trials ? std::to_string(r.trials) : "") << ','
           << (r.seed ? std::to_string(*r.seed) : "") << ',' << r.note << "\n";
    }
}

int run_experiment(const ExperimentArgs& a, const Globals& g, std::ostream& out)
{
    const SetFamily f = read_family_file(a.family);
    const Budget budget = g.experiment_budget();
    const std::uint64_t hash = family_hash(f);
    const bool sampled = a.kind == "contraction" || a.kind == "partition" || !a.exact;
    if (sampled && !a.seed) throw UsageError("experiment " + a.kind + " needs --seed unless run with --exact");
    if (sampled && a.kind != "contraction" && !a.trials) throw UsageError("experiment " + a.kind + " needs --trials");
    const std::size_t trials = a.trials.value_or(10000);

    std::vector<ExperimentRecord> rows;
    auto base = [&](const std::string& stat, int m_or_w) {
        ExperimentRecord r;
        r.statistic = stat;
        r.m_or_w = m_or_w;
        r.family_hash = hash;
        return r;
    };
    std::vector<int> ws;
    if (a.w) {
        ws.push_back(*a.w);
    } else {
        for (int w = 0; w <= f.n; ++w) ws.push_back(w);
    }

    if (a.kind == "chi" || a.kind == "coverage") {
        for (int w : ws) {
            ExperimentRecord r = base(a.kind == "chi" ? "chi_expectation" : "coverage_probability", w);
            r.note = regime_note(w, f.n);
            if (a.exact) {
                r.exact = a.kind == "chi" ? exact_chi_expectation(f, w, budget) : exact_coverage_probability(f, w, budget);
                r.value = to_double(*r.exact);
            } else if (a.kind == "chi") {
                const Estimate e = estimate_chi_expectation(f, w, trials, *a.seed);
                r.value = e.mean;
                r.ci_halfwidth = e.half_width;
            } else {
                const CoverageEstimate e = estimate_coverage_probability(f, w, trials, *a.seed);
                r.value = e.estimate.mean;
                r.ci_halfwidth = a.exact_ci ? (e.exact_upper - e.exact_lower) / 2 : e.estimate.half_width;
            }
            if (!a.exact) {
                r.trials = trials;
                r.seed = a.seed;
            }
            rows.push_back(r);
        }
    } else if (a.kind == "partition") {
        if (a.p < 1) throw UsageError("experiment partition needs --p");
        const Estimate e = partition_success_rate(f, a.p, trials, *a.seed);
        ExperimentRecord r = base("partition_success_rate", a.p);
        r.value = e.mean;
        r.ci_halfwidth = e.half_width;
        r.trials = trials;
        r.seed = a.seed;
        rows.push_back(r);
    } else {
        Rational r;
        if (!a.r.empty()) {
            r = rational_option(a.r, "r");
        } else {
            SpreadParams params;
            if (!a.beta.empty()) params.beta = rational_option(a.beta, "beta");
            if (!a.gamma.empty()) params.gamma = rational_option(a.gamma, "gamma");
            if (!a.epsilon.empty()) params.epsilon = rational_option(a.epsilon, "epsilon");
            r = r_threshold(params, f.k, ThresholdForm::covering);
        }
        ScheduleOptions opt;
        opt.trials = trials;
        opt.seed = *a.seed;
        opt.budget = budget;
        opt.prefer_exact = true;
        rows = contraction_schedule(f, r, rational_option(a.kappa, "kappa"), a.m_max, opt);
    }

    auto os = open_output(a.csv);
    write_records(os, rows);
    for (const auto& r : rows) {
        out << r.statistic << " [" << r.m_or_w << "] = " << (r.exact ? to_string(*r.exact) + " (" + fmt(r.value) + ")" : fmt(r.value));
        if (r.ci_halfwidth) out << " ± " << fmt(*r.ci_halfwidth);
        if (!r.note.empty()) out << "  " << r.note;
        out << "\n";
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"sfl: sunflowers, spread families and prefix-free encodings"};
    app.name("sfl");
    app.require_subcommand(1);
    app.fallthrough();

    Globals globals;
    app.add_option("--threads", globals.threads, "Worker threads (output is identical for any value)")->check(CLI::NonNegativeNumber);
    app.add_option("--budget", globals.budget, "Enumeration budget override");

    GenArgs gen;
    SpreadArgs spread;
    ChiArgs chi_args;
    SunflowerArgs sun;
    DisjointArgs dis;
    KraftArgs kraft;
    AuditArgs aud;
    ExperimentArgs exp;
    add_gen(app, gen);
    add_spread(app, spread);
    add_chi(app, chi_args);
    add_sunflower(app, sun);
    add_disjoint(app, dis);
    add_kraft(app, kraft);
    add_audit(app, aud);
    add_experiment(app, exp);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << " (try: sfl --help)\n";
        return kUsage;
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        if (cmd == "gen") return run_gen(gen, out);
        if (cmd == "spread") return run_spread(spread, out);
        if (cmd == "chi") return run_chi(chi_args, out);
        if (cmd == "sunflower") return run_sunflower(sun, out);
        if (cmd == "disjoint") return run_disjoint(dis, out);
        if (cmd == "kraft") return run_kraft(kraft, out);
        if (cmd == "audit-encoding") return run_audit(aud, globals, out);
        if (cmd == "experiment") return run_experiment(exp, globals, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << " (try: sfl " << cmd << " --help)\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    err << "usage error: unknown subcommand\n";
    return kUsage;
}

}  // namespace sunflower::cli
