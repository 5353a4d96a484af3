// sievelab command-line driver: runs the named experiment suite and writes
// a deterministic CSV/JSON report. Exit code 0 when every asserted row
// passed, 1 when some row failed, 2 on usage errors.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sievelab/additive.hpp"
#include "sievelab/ap_regime.hpp"
#include "sievelab/core.hpp"
#include "sievelab/experiments.hpp"
#include "sievelab/fourier.hpp"
#include "sievelab/large_sieve.hpp"
#include "sievelab/report.hpp"
#include "sievelab/rng.hpp"
#include "sievelab/sieve.hpp"

using namespace sievelab;

namespace {

struct RunConfig {
    std::string suite;
    uint64_t N = 0;  // 0 = suite default
    uint64_t Q = 0;
    uint64_t P = 0;
    int k = 0;
    double alpha = 0.5;
    double c = 0.1;
    double epsilon = 0.4;
    double eta = 0.05;
    double theta = 0.5;
    std::optional<uint64_t> seed;
    std::string out;
    std::string format = "csv";
};

std::string fmt(const char* pattern, auto... args) {
    char buffer[256];
    std::snprintf(buffer, sizeof(buffer), pattern, args...);
    return buffer;
}

ReportRow make_row(std::string suite, std::string instance, double lhs, double rhs,
                   bool pass, std::string witness = "") {
    ReportRow row;
    row.suite = std::move(suite);
    row.instance = std::move(instance);
    row.lhs = lhs;
    row.rhs = rhs;
    row.ratio = rhs != 0.0 ? lhs / rhs : 0.0;
    row.pass = pass;
    row.witness = std::move(witness);
    return row;
}

IntegerSet random_set(Rng& rng, uint64_t ambient, double density) {
    std::vector<uint64_t> elems;
    for (uint64_t n = 1; n <= ambient; ++n)
        if (rng.chance(density)) elems.push_back(n);
    if (elems.empty()) elems.push_back(1 + rng.below(ambient));
    return IntegerSet(ambient, std::move(elems));
}

ResidueSet random_residues(Rng& rng, uint64_t p, uint64_t size) {
    ResidueSet set(p);
    while (set.size() < size) set.insert(rng.below(p));
    return set;
}

// ----------------------------------------------------------------
// verify-lemmas: exhaustive and sampled inequality sweeps
// ----------------------------------------------------------------
std::vector<ReportRow> run_verify_lemmas(const RunConfig& config) {
    const std::string suite = "verify-lemmas";
    const uint64_t pcap = config.P ? config.P : 7;
    Rng root(*config.seed);
    std::vector<ReportRow> rows;

    // Sumset lower bound, exhaustive over all nonempty pairs.
    for (uint64_t p : primes_up_to(std::min<uint64_t>(pcap, 13)).primes) {
        double min_margin = 1e300;
        uint64_t cases = 0;
        for (uint64_t pa = 1; pa < (uint64_t{1} << p); ++pa) {
            ResidueSet a(p);
            for (uint64_t r = 0; r < p; ++r)
                if ((pa >> r) & 1) a.insert(r);
            for (uint64_t pb = 1; pb < (uint64_t{1} << p); ++pb) {
                ResidueSet b(p);
                for (uint64_t r = 0; r < p; ++r)
                    if ((pb >> r) & 1) b.insert(r);
                const double bound =
                    std::min<double>(p, static_cast<double>(a.size() + b.size()) - 1.0);
                min_margin = std::min(
                    min_margin, static_cast<double>(sumset(a, b).size()) - bound);
                ++cases;
            }
        }
        rows.push_back(make_row(suite, fmt("cdc_exhaustive_p%llu", (unsigned long long)p),
                                min_margin, 0.0, min_margin >= 0.0,
                                fmt("cases=%llu", (unsigned long long)cases)));
    }

    // Popular-sum lower bound on sampled instances.
    for (uint64_t p : {11ULL, 13ULL, 17ULL}) {
        Rng rng = root.split(p);
        double min_margin = 1e300;
        uint64_t cases = 0;
        for (int t = 0; t < 700; ++t) {
            const double K = 1.0 + rng.below(3);
            const uint64_t min_size =
                static_cast<uint64_t>(std::ceil(std::sqrt(K * static_cast<double>(p))));
            if (min_size > p) continue;
            const ResidueSet a = random_residues(rng, p, rng.range(min_size, p));
            const ResidueSet b = random_residues(rng, p, rng.range(min_size, p));
            const RobustCdcResult result = robust_cdc_set(a, b, K);
            min_margin = std::min(
                min_margin, static_cast<double>(result.popular.size()) - result.bound);
            ++cases;
        }
        rows.push_back(make_row(suite, fmt("robust_cdc_p%llu", (unsigned long long)p),
                                min_margin, 0.0, min_margin >= 0.0,
                                fmt("cases=%llu", (unsigned long long)cases)));
    }

    // Weighted mean inequality on random positive data.
    {
        Rng rng = root.split(101);
        double min_margin = 1e300;
        for (int t = 0; t < 200; ++t) {
            std::vector<std::pair<double, double>> pairs;
            double wsum = 0.0, wasum = 0.0;
            const int n = 1 + static_cast<int>(rng.below(8));
            for (int i = 0; i < n; ++i) {
                pairs.emplace_back(rng.uniform(0.1, 4.0), rng.uniform(0.1, 9.0));
                wsum += pairs.back().first;
                wasum += pairs.back().first * pairs.back().second;
            }
            const AmGmResult result = amgm_lower(pairs, wasum / wsum);
            min_margin = std::min(min_margin, result.lhs - result.rhs);
        }
        rows.push_back(make_row(suite, "amgm_random", min_margin, 0.0,
                                min_margin >= -1e-9, "cases=200"));
    }

    // Parseval identity on random sets and primes.
    {
        Rng rng = root.split(102);
        const PrimeTable table = primes_up_to(499);
        double max_error = 0.0;
        for (int t = 0; t < 200; ++t) {
            const uint64_t p = table.primes[rng.below(table.primes.size())];
            const IntegerSet a = random_set(rng, 2000, rng.uniform(0.05, 0.5));
            double moment = 0.0;
            for (uint64_t c : fiber_counts(a, p))
                moment += static_cast<double>(c) * static_cast<double>(c);
            const double lhs = static_cast<double>(p) * moment;
            const double size = static_cast<double>(a.size());
            const double rhs =
                size * size + spectral_energy(WeightFunction::indicator(a), p);
            max_error = std::max(max_error, std::abs(lhs - rhs) / lhs);
        }
        rows.push_back(
            make_row(suite, "parseval_random", max_error, 1e-6, max_error <= 1e-6,
                     "cases=200"));
    }

    // Convolution-moment inequality and the dual-norm floor.
    {
        Rng rng = root.split(103);
        double min_margin = 1e300;
        for (int t = 0; t < 200; ++t) {
            Rng sub = rng.split(t);
            std::vector<uint64_t> elems;
            while (elems.size() < 2 + sub.below(30)) {
                const uint64_t c = 1 + sub.below(300);
                if (std::find(elems.begin(), elems.end(), c) == elems.end())
                    elems.push_back(c);
            }
            const HolderChainReport report =
                holder_energy_chain(IntegerSet(300, elems), 1 + sub.below(3));
            min_margin = std::min(min_margin, report.rhs - report.lhs);
        }
        rows.push_back(make_row(suite, "holder_chain_random", min_margin, 0.0,
                                min_margin >= -1e-9, "cases=200"));
    }
    {
        Rng rng = root.split(104);
        bool all_hold = true;
        double min_margin = 1e300;
        for (int t = 0; t < 200; ++t) {
            Rng sub = rng.split(t);
            const int k = 2 + static_cast<int>(sub.below(2));
            const FareyFamily h = random_farey_family(7, sub);
            FareyFamily h1 = FareyFamily::zeros(7), h2 = FareyFamily::zeros(7);
            for (size_t i = 0; i < h.coeffs.size(); ++i)
                for (size_t j = 0; j < h.coeffs[i].second.size(); ++j) {
                    const double split = sub.uniform();
                    h1.coeffs[i].second[j] = h.coeffs[i].second[j] * split;
                    h2.coeffs[i].second[j] = h.coeffs[i].second[j] * (1.0 - split);
                }
            const DualNormCheckReport report = dual_norm_lower_check(h, {{h1, h2}}, k);
            all_hold = all_hold && report.all_hold;
            min_margin = std::min(min_margin, report.items[0].lhs - report.rhs);
        }
        rows.push_back(make_row(suite, "dual_norm_random", min_margin, 0.0, all_hold,
                                "cases=200"));
    }

    // Fiber Cauchy-Schwarz on random sets.
    {
        Rng rng = root.split(105);
        double min_margin = 1e300;
        for (int t = 0; t < 200; ++t) {
            const uint64_t p = std::vector<uint64_t>{5, 17, 61}[rng.below(3)];
            const IntegerSet a = random_set(rng, 600, rng.uniform(0.05, 0.7));
            const FiberProfile profile = fiber_profile(a, p);
            const double size2 =
                static_cast<double>(a.size()) * static_cast<double>(a.size());
            min_margin = std::min(
                min_margin, static_cast<double>(profile.second_moment) -
                                size2 / static_cast<double>(residue_count(a, p)));
        }
        rows.push_back(make_row(suite, "fiber_cauchy_schwarz", min_margin, 0.0,
                                min_margin >= -1e-9, "cases=200"));
    }
    return rows;
}

// ----------------------------------------------------------------
// lsv-sweep: the prime-spectrum inequality across (k, N) cells
// ----------------------------------------------------------------
std::vector<ReportRow> run_lsv_sweep(const RunConfig& config) {
    const std::string suite = "lsv-sweep";
    Rng root(*config.seed);
    std::vector<ReportRow> rows;
    const std::vector<int> ks = config.k ? std::vector<int>{config.k}
                                         : std::vector<int>{1, 2, 3};
    const std::vector<uint64_t> ns = config.N ? std::vector<uint64_t>{config.N}
                                              : std::vector<uint64_t>{256, 1024, 4096};
    double global_max = 0.0;
    for (int k : ks) {
        for (uint64_t N : ns) {
            const uint64_t P =
                std::max<uint64_t>(2, integer_root(N, 2 * static_cast<unsigned>(k)));
            Rng rng = root.split(1000 * k + N);
            double max_ratio = 0.0;
            const int trials = 300;
            for (int t = 0; t < trials; ++t) {
                Rng sub = rng.split(t);
                WeightFunction f;
                const double pick = sub.uniform();
                if (pick < 0.70) {
                    f = random_weight_function(N, sub.uniform(0.05, 1.0), sub);
                } else if (pick < 0.85) {
                    f = WeightFunction::indicator(
                        random_set(sub, N, sub.uniform(0.02, 0.5)));
                } else {
                    const PrimeTable table = primes_up_to(std::max<uint64_t>(2, 2 * P));
                    f = WeightFunction::multiples(
                        N, table.primes[sub.below(table.primes.size())]);
                }
                max_ratio = std::max(max_ratio, variant_sides(f, P, k).ratio);
            }
            global_max = std::max(global_max, max_ratio);
            rows.push_back(make_row(
                suite, fmt("cell_k%d_N%llu", k, (unsigned long long)N), max_ratio, 10.0,
                max_ratio <= 10.0,
                fmt("P=%llu;trials=%d", (unsigned long long)P, trials)));
        }
    }
    rows.push_back(make_row(suite, "all_cells_max_ratio", global_max, 10.0,
                            global_max <= 10.0, ""));

    // Sharpness witness: multiples of a prime close to P.
    {
        const VariantReport report =
            variant_sides(WeightFunction::multiples(4096, 7), 8, 2);
        rows.push_back(make_row(suite, "sharpness_multiples_p7", report.ratio, 0.01,
                                report.ratio >= 0.01, "N=4096;P=8;k=2"));
    }

    // k = 1 reduction against the classical evaluator on Farey points.
    {
        Rng rng = root.split(77);
        double max_rel = 0.0;
        for (int t = 0; t < 100; ++t) {
            Rng sub = rng.split(t);
            const uint64_t N = 128, P = 7;
            const WeightFunction f =
                random_weight_function(N, sub.uniform(0.2, 1.0), sub);
            const VariantReport variant = variant_sides(f, P, 1);
            const ClassicalReport classical = classical_large_sieve_sides(
                f, farey_points(P), 1.0 / static_cast<double>(P * P));
            max_rel = std::max(
                max_rel, std::abs(variant.lhs - classical.lhs) /
                             std::max(1e-30, std::abs(classical.lhs)));
            max_rel = std::max(
                max_rel, std::abs(variant.rhs_first + variant.rhs_second -
                                  classical.rhs) /
                             classical.rhs);
        }
        rows.push_back(make_row(suite, "k1_classical_reduction", max_rel, 1e-9,
                                max_rel <= 1e-9, "cases=100"));
    }
    return rows;
}

// ----------------------------------------------------------------
// density: value-set statistics of small-degree maps
// ----------------------------------------------------------------
std::vector<ReportRow> run_density(const RunConfig& config) {
    const std::string suite = "density";
    const uint64_t Q = config.Q ? config.Q : 100000;
    std::vector<ReportRow> rows;

    const CubeSumResult cube = cube_larger_sieve_sum(Q);
    rows.push_back(make_row(suite, "cube_log_sum_ratio", cube.ratio_to_logQ, 2.0,
                            cube.ratio_to_logQ >= 1.8 && cube.ratio_to_logQ <= 2.2,
                            fmt("sum=%.6f;Q=%llu", cube.sum, (unsigned long long)Q)));

    const double cubic = weighted_value_set_density(PolySpec::monomial(3), Q);
    rows.push_back(make_row(suite, "density_x3", cubic, 2.0 / 3.0,
                            std::abs(cubic - 2.0 / 3.0) <= 0.05,
                            fmt("Q=%llu", (unsigned long long)Q)));

    const double generic = weighted_value_set_density(make_poly({1, 1, 0, 1}), Q);
    rows.push_back(make_row(suite, "density_x3+x+1", generic, 2.0 / 3.0,
                            std::abs(generic - 2.0 / 3.0) <= 0.05,
                            fmt("Q=%llu", (unsigned long long)Q)));

    const double quadratic = weighted_value_set_density(PolySpec::monomial(2), Q);
    rows.push_back(make_row(suite, "density_x2", quadratic, 0.5,
                            std::abs(quadratic - 0.5) <= 0.06,
                            fmt("Q=%llu", (unsigned long long)Q)));

    // Degree-one analogue: the value set is everything, ratio tends to 1.
    double linear_sum = 0.0;
    const PrimeTable table = primes_up_to(Q);
    for (uint64_t p : table.primes)
        linear_sum += std::log(static_cast<double>(p)) / static_cast<double>(p);
    const double linear_ratio = linear_sum / std::log(static_cast<double>(Q));
    rows.push_back(make_row(suite, "linear_log_sum_ratio", linear_ratio, 1.0,
                            std::abs(linear_ratio - 1.0) <= 0.2,
                            fmt("Q=%llu", (unsigned long long)Q)));
    return rows;
}

// ----------------------------------------------------------------
// goldbach-scan: all-prime sumset scans
// ----------------------------------------------------------------
std::vector<ReportRow> run_goldbach_scan(const RunConfig& config) {
    const std::string suite = "goldbach-scan";
    const uint64_t N = config.N ? config.N : 1000000;
    std::vector<ReportRow> rows;

    {
        const IntegerSet one(10, {1});
        const IntegerSet third(10, {1, 7});
        const TripleScanReport report = triple_sumset_prime_scan(one, one, third);
        const bool found = report.composite_witness.has_value() &&
                           report.witness_sum == 9;
        rows.push_back(make_row(suite, "composite_witness_117", 9.0, 9.0, found,
                                "witness=(1;1;7)"));
    }

    const auto [a1, a2] = greedy_prime_pair(N, 6);
    rows.push_back(make_row(suite, "greedy_pair_sizes",
                            static_cast<double>(std::min(a1.size(), a2.size())), 4.0,
                            std::min(a1.size(), a2.size()) >= 4,
                            fmt("N=%llu", (unsigned long long)N)));

    const PairScanReport scan = pair_sumset_prime_scan(a1, a2);
    rows.push_back(make_row(suite, "greedy_pair_all_prime",
                            static_cast<double>(scan.checked),
                            static_cast<double>(a1.size() * a2.size()),
                            scan.all_prime, ""));

    uint64_t inconsistent = 0;
    for (const auto& row : scan.profile)
        if (row.p < scan.min_sum && !row.consistent) ++inconsistent;
    rows.push_back(make_row(suite, "occupancy_profile_consistent",
                            static_cast<double>(inconsistent), 0.0, inconsistent == 0,
                            fmt("primes=%zu", scan.profile.size())));
    return rows;
}

// ----------------------------------------------------------------
// extremal: constrained search with the slack sweep
// ----------------------------------------------------------------
std::vector<ReportRow> run_extremal(const RunConfig& config) {
    const std::string suite = "extremal";
    const uint64_t N = config.N ? config.N : 2000;
    Rng root(*config.seed);
    std::vector<ReportRow> rows;

    const double root_alpha = config.alpha;
    int slack_id = 0;
    for (const std::string& slack_name : {"0", "1", "sqrt"}) {
        SearchConstraint constraint;
        constraint.N = N;
        constraint.alpha = root_alpha;
        const uint64_t cutoff = static_cast<uint64_t>(
            std::llround(std::pow(static_cast<double>(N), root_alpha)));
        bool feasible = true;
        for (uint64_t p : primes_up_to(cutoff).primes) {
            int64_t slack = 0;
            if (slack_name == "1") slack = 1;
            if (slack_name == "sqrt")
                slack = static_cast<int64_t>(
                    std::ceil(std::sqrt(static_cast<double>(p))));
            const int64_t raw =
                static_cast<int64_t>(std::floor(root_alpha * static_cast<double>(p))) +
                slack;
            if (raw < 1) {
                feasible = false;
                break;
            }
            constraint.caps.emplace_back(
                p, std::min<uint64_t>(static_cast<uint64_t>(raw), p));
        }
        if (!feasible) {
            rows.push_back(make_row(suite, "slack_" + slack_name, 0.0, 0.0, false,
                                    "infeasible"));
            continue;
        }
        const SearchResult result =
            extremal_search(constraint, 2000, root.split(slack_id++).next_u64());
        const double target = std::pow(static_cast<double>(N), root_alpha);
        rows.push_back(make_row(
            suite, "slack_" + slack_name, static_cast<double>(result.best.size()),
            target, result.certified,
            fmt("method=%s;exhaustive=%d", result.method.c_str(),
                result.exhaustive ? 1 : 0)));
    }
    return rows;
}

// ----------------------------------------------------------------
// ap-regime: the shrink loop on a CRT-window instance
// ----------------------------------------------------------------
std::vector<ReportRow> run_ap_regime(const RunConfig& config) {
    const std::string suite = "ap-regime";
    const uint64_t N = config.N ? config.N : 10000;
    const int k = config.k ? config.k : 2;
    Rng root(*config.seed);
    std::vector<ReportRow> rows;

    std::vector<uint64_t> elems;
    for (uint64_t n = 1; n <= N; ++n) {
        if (n % 6 != 1) continue;
        if (n % 5 > 2) continue;
        const uint64_t r7 = n % 7;
        if (r7 < 1 || r7 > 4) continue;
        elems.push_back(n);
    }
    IntegerSet a(N, std::move(elems));
    PrimePlan plan = make_plan(10, {2, 3, 5, 7}, 1.0 / (2.0 * k), 0.01);
    std::vector<ApWindow> windows = {
        make_ap_window(2, 1, 1, 1), make_ap_window(3, 1, 1, 1),
        make_ap_window(5, 0, 1, 3), make_ap_window(7, 1, 1, 4)};
    const ApSystem system = make_ap_system(std::move(a), std::move(plan),
                                           std::move(windows), config.epsilon, k,
                                           config.eta);

    const IterationTrace trace = run_regime(system, 16, config.theta);
    bool mass_ok = true, nesting_ok = true;
    for (size_t i = 1; i < trace.levels.size(); ++i) {
        if (trace.levels[i].accepted &&
            trace.levels[i].window_mass >
                (1.0 - system.eta) * trace.levels[i - 1].window_mass + 1e-12)
            mass_ok = false;
        for (uint64_t e : trace.systems[i].set.elements())
            if (!trace.systems[i - 1].set.contains(e)) nesting_ok = false;
        for (const auto& [p, w] : trace.systems[i].windows)
            if (!trace.systems[i].set.empty() &&
                !w.contains_set(project_mod(trace.systems[i].set, p)))
                nesting_ok = false;
    }
    for (size_t i = 0; i < trace.levels.size(); ++i) {
        const auto& level = trace.levels[i];
        rows.push_back(make_row(
            suite, fmt("level_%02zu", i), level.window_mass,
            static_cast<double>(level.set_size), true,
            fmt("h=%lld;c_i=%.6g", (long long)level.shift, level.c_level)));
    }
    rows.push_back(make_row(suite, "trace_mass_factor",
                            mass_ok ? 1.0 : 0.0, 1.0, mass_ok,
                            "eta=" + format_value(system.eta)));
    rows.push_back(make_row(suite, "trace_nesting", nesting_ok ? 1.0 : 0.0, 1.0,
                            nesting_ok, ""));
    rows.push_back(make_row(suite, "trace_terminated", 1.0, 1.0,
                            !trace.termination.empty(), trace.termination));

    // Window-arithmetic gains against the explicit residue-set oracle.
    {
        Rng rng = root.split(9);
        double max_diff = 0.0;
        for (int t = 0; t < 1000; ++t) {
            const int64_t h =
                static_cast<int64_t>(rng.below(2 * N + 1)) - static_cast<int64_t>(N);
            double oracle = 0.0;
            for (const auto& [p, w] : system.windows) {
                const ResidueSet s = w.to_residue_set();
                const int64_t pm = static_cast<int64_t>(p);
                const uint64_t r = static_cast<uint64_t>(((h % pm) + pm) % pm);
                const double pd = static_cast<double>(p);
                oracle += std::log(pd) / pd *
                          (static_cast<double>(s.intersect_size(s.shifted(r))) / pd);
            }
            max_diff = std::max(max_diff, std::abs(shrink_gain(system, h) - oracle));
        }
        rows.push_back(make_row(suite, "shrink_gain_oracle", max_diff, 0.0,
                                max_diff == 0.0, "probes=1000"));
    }
    return rows;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sievelab: sieve and sumset experiment suites"};
    RunConfig config;
    app.add_option("--suite", config.suite, "suite to run")
        ->required()
        ->check(CLI::IsMember({"verify-lemmas", "lsv-sweep", "density",
                               "goldbach-scan", "extremal", "ap-regime"}));
    app.add_option("--N", config.N, "ambient interval size");
    app.add_option("--Q", config.Q, "prime cutoff");
    app.add_option("--P", config.P, "prime cap for exhaustive sweeps");
    app.add_option("--k", config.k, "moment parameter");
    app.add_option("--alpha", config.alpha, "occupancy exponent");
    app.add_option("--c", config.c, "sieve saving parameter");
    app.add_option("--epsilon", config.epsilon, "window slack");
    app.add_option("--eta", config.eta, "required shrink factor");
    app.add_option("--theta", config.theta, "popularity threshold scale");
    uint64_t seed_value = 0;
    CLI::Option* seed_option =
        app.add_option("--seed", seed_value, "root seed for randomized suites");
    app.add_option("--out", config.out, "report path");
    app.add_option("--format", config.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    if (seed_option->count() > 0) config.seed = seed_value;

    const bool randomized = config.suite == "verify-lemmas" ||
                            config.suite == "lsv-sweep" ||
                            config.suite == "extremal" ||
                            config.suite == "ap-regime";
    if (randomized && !config.seed) {
        std::fprintf(stderr, "error: --seed is required for the %s suite\n",
                     config.suite.c_str());
        return 2;
    }
    if (config.out.empty()) config.out = config.suite + "-report." + config.format;

    try {
        std::vector<ReportRow> rows;
        if (config.suite == "verify-lemmas") rows = run_verify_lemmas(config);
        else if (config.suite == "lsv-sweep") rows = run_lsv_sweep(config);
        else if (config.suite == "density") rows = run_density(config);
        else if (config.suite == "goldbach-scan") rows = run_goldbach_scan(config);
        else if (config.suite == "extremal") rows = run_extremal(config);
        else if (config.suite == "ap-regime") rows = run_ap_regime(config);

        std::sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
            if (a.suite != b.suite) return a.suite < b.suite;
            return a.instance < b.instance;
        });
        emit_file(rows, parse_report_format(config.format), config.out);

        bool all_pass = true;
        for (const ReportRow& row : rows) {
            if (!row.pass) {
                std::fprintf(stderr, "FAIL %s/%s lhs=%s rhs=%s\n", row.suite.c_str(),
                             row.instance.c_str(), format_value(row.lhs).c_str(),
                             format_value(row.rhs).c_str());
                all_pass = false;
            }
        }
        std::printf("%s: %zu rows -> %s (%s)\n", config.suite.c_str(), rows.size(),
                    config.out.c_str(), all_pass ? "all pass" : "FAILURES");
        return all_pass ? 0 : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
