#pragma once
// Gallagher's larger sieve and its refinements as evaluable functionals.
// Lemma checkers return structured reports (which hypothesis held, which
// step of the proof chain failed, with what margin) rather than booleans.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sievelab/core.hpp"

namespace sievelab {

// A prime cutoff Q with a distinguished subset of "good" primes and the
// sieve parameters alpha, c. The weights log p / p live here.
struct PrimePlan {
    uint64_t Q = 2;
    PrimeTable table;             // primes up to Q
    std::vector<uint64_t> good;   // ascending subset of table.primes
    double alpha = 0.5;
    double c = 0.1;

    bool is_good(uint64_t p) const;
    double good_mass() const;         // sum of log p / p over good primes
    double total_mass() const;        // sum over all primes <= Q
    double exceptional_mass() const;  // total - good
};

PrimePlan make_plan(uint64_t Q, std::vector<uint64_t> good, double alpha, double c);
PrimePlan full_plan(uint64_t Q, double alpha, double c);

// Fiber counts of A mod p with their exact second moment.
struct FiberProfile {
    uint64_t p = 2;
    std::vector<uint64_t> fiber_counts;
    uint64_t second_moment = 0;
};
FiberProfile fiber_profile(const IntegerSet& a, uint64_t p);

// Quantitative larger sieve: numerator = sum log p - log N, denominator =
// sum log p/|A mod p| - log N; the quotient bounds |A| when positive.
struct GallagherBound {
    double numerator = 0.0;
    double denominator = 0.0;
    std::optional<double> bound;
};
GallagherBound gallagher_bound(const IntegerSet& a, uint64_t Q);

// sum_{p <= Q} (log p / p) * (|A mod p| / p).
double occupancy_functional(const IntegerSet& a, const PrimePlan& plan);

// Weighted AM-GM style bound: given sum w_i a_i = kappa sum w_i, returns
// (sum w_i / a_i, (1/kappa) sum w_i); lhs >= rhs always.
struct AmGmResult {
    double lhs = 0.0;
    double rhs = 0.0;
};
AmGmResult amgm_lower(const std::vector<std::pair<double, double>>& weight_value_pairs,
                      double kappa);

struct InequalityCheck {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

// Report for the sieve refinement that splits primes below N^(alpha-c')
// by membership in the good set and compares the two occupancy averages.
struct NonuniformSizeReport {
    bool mass_hypothesis = false;        // good mass >= c * total mass
    bool global_occupancy_hypothesis = false;
    bool good_occupancy_hypothesis = false;
    bool hypotheses_met = false;
    double cut = 0.0;                    // N^(alpha - c')
    double S1 = 0.0, S2 = 0.0;
    double kappa1 = 0.0, kappa2 = 0.0;
    bool degenerate = false;             // empty prime class or zero occupancy
    bool fallback_small_occupancy = false;  // occupancy below alpha(alpha-2c')logN:
                                            // the plain sieve already concludes
    std::vector<InequalityCheck> chain;
    double final_lhs = 0.0;              // S1/kappa1 + S2/kappa2
    double final_rhs = 0.0;              // log N + 1
    bool final_test = false;
    std::string note;
};
NonuniformSizeReport nonuniform_size_check(const IntegerSet& a, const PrimePlan& plan,
                                           double cprime, double slack = 2.0);

// Good primes whose fiber second moment is at most (1/alpha + c)|A|^2 / p,
// plus the log-weight mass of everything below Q left outside.
struct UniformFiberClassification {
    std::vector<uint64_t> members;
    double mass_outside = 0.0;
};
UniformFiberClassification classify_uniform_fibers(const IntegerSet& a,
                                                   const PrimePlan& plan);

// Consequences of fiber uniformity at one prime: occupancy at least
// alpha(1 - c*alpha)p and few residues with a light fiber.
struct FiberCheckReport {
    bool precondition_ok = false;  // second moment within the uniform threshold
    uint64_t occupancy = 0;
    double occupancy_floor = 0.0;
    bool occupancy_ok = false;
    uint64_t light_count = 0;
    double light_cap = 0.0;
    bool light_ok = false;
};
FiberCheckReport fiber_uniformity_check(const IntegerSet& a, uint64_t p,
                                        double alpha, double c);

// Double sum over ordered pairs of A of log p / nu_p(a - b), restricted to
// good primes p <= Qcap where the difference class is epsilon-popular
// (nu_p >= epsilon * p). Computed through the integer difference profile.
double popular_pair_log_sum(const IntegerSet& a, const PrimePlan& plan,
                            double epsilon, uint64_t Qcap = 0);

// Named derived constants used by the refinement lemmas and the shrink loop.
struct SieveConstants {
    double alpha = 0.0;
    double c = 0.0;
    int k = 1;
    double epsilon = 0.0;
    std::map<std::string, double> derived;
};
SieveConstants derive_constants(double alpha, double c, int k, double epsilon);

// Internal scale parameters of the small-doubling sieve scenario.
struct DoublingScenarioParams {
    double rep_threshold = 0.0;  // |A|^((1+c)/2)
    double prime_cutoff = 0.0;   // min(|A|^(1/2 + c/4), N^alpha)
};
DoublingScenarioParams small_doubling_params(uint64_t set_size, uint64_t ambient,
                                             double alpha, double c);

}  // namespace sievelab
