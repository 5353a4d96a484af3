#include "sievelab/sieve.hpp"

#include <algorithm>
#include <cmath>

#include "sievelab/additive.hpp"

namespace sievelab {

bool PrimePlan::is_good(uint64_t p) const {
    return std::binary_search(good.begin(), good.end(), p);
}

double PrimePlan::good_mass() const {
    double sum = 0.0;
    for (uint64_t p : good)
        sum += std::log(static_cast<double>(p)) / static_cast<double>(p);
    return sum;
}

double PrimePlan::total_mass() const { return log_weight_sum(table); }

double PrimePlan::exceptional_mass() const { return total_mass() - good_mass(); }

PrimePlan make_plan(uint64_t Q, std::vector<uint64_t> good, double alpha, double c) {
    if (Q < 2) throw std::invalid_argument("PrimePlan: Q must be at least 2");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("PrimePlan: alpha must lie in (0, 1)");
    if (!(c > 0.0)) throw std::invalid_argument("PrimePlan: c must be positive");
    PrimePlan plan;
    plan.Q = Q;
    plan.table = primes_up_to(Q);
    std::sort(good.begin(), good.end());
    good.erase(std::unique(good.begin(), good.end()), good.end());
    for (uint64_t p : good)
        if (!std::binary_search(plan.table.primes.begin(), plan.table.primes.end(), p))
            throw std::invalid_argument("PrimePlan: good primes must be primes <= Q");
    plan.good = std::move(good);
    plan.alpha = alpha;
    plan.c = c;
    return plan;
}

PrimePlan full_plan(uint64_t Q, double alpha, double c) {
    PrimePlan plan = make_plan(Q, {}, alpha, c);
    plan.good = plan.table.primes;
    return plan;
}

FiberProfile fiber_profile(const IntegerSet& a, uint64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("fiber_profile: p must be prime");
    FiberProfile profile;
    profile.p = p;
    profile.fiber_counts = fiber_counts(a, p);
    for (uint64_t x : profile.fiber_counts) profile.second_moment += x * x;
    return profile;
}

GallagherBound gallagher_bound(const IntegerSet& a, uint64_t Q) {
    if (a.empty()) throw std::invalid_argument("gallagher_bound: empty set");
    if (Q < 2) throw std::invalid_argument("gallagher_bound: Q must be at least 2");
    const double logN = std::log(static_cast<double>(a.ambient()));
    const PrimeTable table = primes_up_to(Q);
    double log_sum = 0.0;
    double weighted = 0.0;
    for (uint64_t p : table.primes) {
        const double lp = std::log(static_cast<double>(p));
        log_sum += lp;
        weighted += lp / static_cast<double>(residue_count(a, p));
    }
    GallagherBound result;
    result.numerator = log_sum - logN;
    result.denominator = weighted - logN;
    if (result.denominator > 0.0)
        result.bound = result.numerator / result.denominator;
    return result;
}

double occupancy_functional(const IntegerSet& a, const PrimePlan& plan) {
    double sum = 0.0;
    for (uint64_t p : plan.table.primes) {
        const double pd = static_cast<double>(p);
        sum += std::log(pd) / pd * (static_cast<double>(residue_count(a, p)) / pd);
    }
    return sum;
}

AmGmResult amgm_lower(const std::vector<std::pair<double, double>>& weight_value_pairs,
                      double kappa) {
    if (!(kappa > 0.0)) throw std::invalid_argument("amgm_lower: kappa must be positive");
    double weight_sum = 0.0;
    double mean_check = 0.0;
    double lhs = 0.0;
    for (const auto& [w, value] : weight_value_pairs) {
        if (!(w > 0.0 && value > 0.0))
            throw std::invalid_argument("amgm_lower: weights and values must be positive");
        weight_sum += w;
        mean_check += w * value;
        lhs += w / value;
    }
    if (std::abs(mean_check - kappa * weight_sum) >
        1e-9 * std::max(std::abs(mean_check), std::abs(kappa * weight_sum)))
        throw std::invalid_argument("amgm_lower: kappa inconsistent with inputs");
    return {lhs, weight_sum / kappa};
}

NonuniformSizeReport nonuniform_size_check(const IntegerSet& a, const PrimePlan& plan,
                                           double cprime, double slack) {
    const double alpha = plan.alpha;
    const double c = plan.c;
    const double logN = std::log(static_cast<double>(a.ambient()));

    NonuniformSizeReport report;
    report.cut = std::pow(static_cast<double>(a.ambient()), alpha - cprime);

    // Per-prime weights and occupancies below Q, split by the good set.
    double total_mass = 0.0, good_mass = 0.0;
    double total_occ = 0.0, good_occ = 0.0;
    double S1 = 0.0, S2 = 0.0, occ1 = 0.0, occ2 = 0.0;
    double mid_mass = 0.0;  // primes between the cut and Q
    for (uint64_t p : plan.table.primes) {
        const double pd = static_cast<double>(p);
        const double w = std::log(pd) / pd;
        const double occ = w * (static_cast<double>(residue_count(a, p)) / pd);
        const bool good = plan.is_good(p);
        total_mass += w;
        total_occ += occ;
        if (good) {
            good_mass += w;
            good_occ += occ;
        }
        if (pd <= report.cut) {
            if (good) {
                S1 += w;
                occ1 += occ;
            } else {
                S2 += w;
                occ2 += occ;
            }
        } else {
            mid_mass += w;
        }
    }

    report.mass_hypothesis = good_mass >= c * total_mass;
    report.global_occupancy_hypothesis = total_occ <= (alpha + cprime) * total_mass;
    report.good_occupancy_hypothesis = good_occ <= (alpha - c) * good_mass;
    report.hypotheses_met = report.mass_hypothesis &&
                            report.global_occupancy_hypothesis &&
                            report.good_occupancy_hypothesis;

    report.S1 = S1;
    report.S2 = S2;
    if (S1 <= 0.0 || S2 <= 0.0) {
        report.degenerate = true;
        report.note = S1 <= 0.0 ? "no good primes below the cut"
                                : "no primes outside the good set below the cut";
        return report;
    }
    report.kappa1 = occ1 / S1;
    report.kappa2 = occ2 / S2;
    if (report.kappa1 <= 0.0 || report.kappa2 <= 0.0) {
        report.degenerate = true;
        report.note = "zero occupancy average";
        return report;
    }

    auto check = [&](const std::string& name, double lhs, double rhs) {
        report.chain.push_back({name, lhs, rhs, lhs > rhs});
    };
    // Proof-chain inequalities; additive slack absorbs the O(1) terms.
    check("split_mass_identity", slack,
          std::abs(S1 + S2 - (alpha - cprime) * logN));
    check("good_mass_below_cut", S1, 0.5 * c * alpha * logN - slack);
    check("mid_range_mass_small", 2.0 * cprime * logN + slack, mid_mass);
    check("good_mass_dominates", S1, (1.0 - c / 2.0) * good_mass - slack);
    check("occupancy_upper", alpha * (alpha + cprime) * logN + slack,
          report.kappa1 * S1 + report.kappa2 * S2);
    check("kappa1_upper", alpha - c / 2.0, report.kappa1);

    const double below_cut_occ = report.kappa1 * S1 + report.kappa2 * S2;
    report.fallback_small_occupancy =
        below_cut_occ <= alpha * (alpha - 2.0 * cprime) * logN;
    if (report.fallback_small_occupancy)
        report.note = "occupancy below the cut is already small; the plain "
                      "larger sieve concludes directly";

    check("kappa_gap_mass", (report.kappa2 - report.kappa1) * S2,
          c * alpha * logN / 3.0 - slack);
    check("kappa_gap", report.kappa2 - report.kappa1, c / 3.0 - slack / logN);

    report.final_lhs = S1 / report.kappa1 + S2 / report.kappa2;
    report.final_rhs = logN + 1.0;
    report.final_test = report.final_lhs > report.final_rhs;
    return report;
}

UniformFiberClassification classify_uniform_fibers(const IntegerSet& a,
                                                   const PrimePlan& plan) {
    UniformFiberClassification result;
    const double size2 = static_cast<double>(a.size()) * static_cast<double>(a.size());
    const double threshold_scale = 1.0 / plan.alpha + plan.c;
    for (uint64_t p : plan.good) {
        const FiberProfile profile = fiber_profile(a, p);
        if (static_cast<double>(profile.second_moment) <=
            threshold_scale * size2 / static_cast<double>(p))
            result.members.push_back(p);
    }
    for (uint64_t p : plan.table.primes) {
        if (std::binary_search(result.members.begin(), result.members.end(), p))
            continue;
        result.mass_outside +=
            std::log(static_cast<double>(p)) / static_cast<double>(p);
    }
    return result;
}

FiberCheckReport fiber_uniformity_check(const IntegerSet& a, uint64_t p,
                                        double alpha, double c) {
    const FiberProfile profile = fiber_profile(a, p);
    const double pd = static_cast<double>(p);
    const double size = static_cast<double>(a.size());

    FiberCheckReport report;
    report.occupancy = 0;
    for (uint64_t x : profile.fiber_counts)
        if (x > 0) ++report.occupancy;
    // Uniform-fiber membership presumes the sieving bound |A mod p| <= alpha p;
    // the light-fiber count genuinely needs it.
    report.precondition_ok =
        static_cast<double>(profile.second_moment) <=
            (1.0 / alpha + c) * size * size / pd &&
        static_cast<double>(report.occupancy) <= alpha * pd;
    report.occupancy_floor = alpha * (1.0 - c * alpha) * pd;
    report.occupancy_ok = static_cast<double>(report.occupancy) >= report.occupancy_floor;

    const double croot = std::cbrt(c);
    const double light_threshold = (1.0 / alpha - croot) * size / pd;
    report.light_count = 0;
    for (uint64_t x : profile.fiber_counts)
        if (x > 0 && static_cast<double>(x) < light_threshold) ++report.light_count;
    report.light_cap = croot * pd;
    report.light_ok = static_cast<double>(report.light_count) <= report.light_cap;
    return report;
}

double popular_pair_log_sum(const IntegerSet& a, const PrimePlan& plan,
                            double epsilon, uint64_t Qcap) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("popular_pair_log_sum: epsilon must lie in (0, 1)");
    if (Qcap == 0) Qcap = plan.Q;

    // nu profiles mod p for the good primes in range.
    std::vector<std::pair<uint64_t, RepCountProfile>> profiles;
    for (uint64_t p : plan.good) {
        if (p > Qcap) break;
        profiles.emplace_back(p, rep_counts_mod(project_mod(a, p)));
    }

    // Factor the pair sum through the integer difference profile: each h in
    // A - A contributes nu(h) identical inner sums.
    const auto nu = rep_counts_int(a);
    double total = 0.0;
    for (const auto& [h, weight] : nu) {
        double inner = 0.0;
        for (const auto& [p, profile] : profiles) {
            const int64_t pm = static_cast<int64_t>(p);
            const uint64_t residue = static_cast<uint64_t>(((h % pm) + pm) % pm);
            const uint64_t reps = profile.counts[residue];
            if (static_cast<double>(reps) >= epsilon * static_cast<double>(p))
                inner += std::log(static_cast<double>(p)) / static_cast<double>(reps);
        }
        total += static_cast<double>(weight) * inner;
    }
    return total;
}

SieveConstants derive_constants(double alpha, double c, int k, double epsilon) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("derive_constants: alpha must lie in (0, 1)");
    if (!(c > 0.0)) throw std::invalid_argument("derive_constants: c must be positive");
    if (k < 1) throw std::invalid_argument("derive_constants: k must be at least 1");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("derive_constants: epsilon must lie in (0, 1)");

    SieveConstants constants{alpha, c, k, epsilon, {}};
    auto& d = constants.derived;
    d["nonuniform_size_cprime"] = c * c * c * alpha / 100.0;
    d["nonuniform_fiber_cprime"] = c * c * alpha / 10.0;
    d["small_doubling_cprime"] = 1e-50 * std::pow(c * alpha, 25.0);
    const double eps_sd = std::pow(c * alpha / 100.0, 2.0);
    d["small_doubling_epsilon"] = eps_sd;
    d["small_doubling_cprime_via_epsilon"] = std::pow(eps_sd, 12.0) * alpha / 10.0;
    d["shrink_eta"] = std::pow(10.0 * static_cast<double>(k), -8.0) *
                      std::pow(epsilon, 4.0);
    d["level_factor"] = 3.0 * static_cast<double>(k);
    return constants;
}

DoublingScenarioParams small_doubling_params(uint64_t set_size, uint64_t ambient,
                                             double alpha, double c) {
    DoublingScenarioParams params;
    const double size = static_cast<double>(set_size);
    params.rep_threshold = std::pow(size, (1.0 + c) / 2.0);
    params.prime_cutoff = std::min(std::pow(size, 0.5 + c / 4.0),
                                   std::pow(static_cast<double>(ambient), alpha));
    return params;
}

}  // namespace sievelab
