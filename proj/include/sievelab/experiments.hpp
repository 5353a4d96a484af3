#pragma once
// Desk-scale experiments: polynomial value-set statistics, the cube
// larger-sieve sum, all-prime sumset scans with the occupancy profile, and
// the constrained extremal-set search.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sievelab/core.hpp"
#include "sievelab/rng.hpp"

namespace sievelab {

// Integer polynomial c0 + c1 x + ... + cd x^d with cd != 0, d >= 1.
struct PolySpec {
    std::vector<int64_t> coefficients;

    int degree() const { return static_cast<int>(coefficients.size()) - 1; }
    static PolySpec monomial(int degree);  // x^degree
    uint64_t eval_mod(uint64_t x, uint64_t p) const;
    bool is_monomial() const;
};

PolySpec make_poly(std::vector<int64_t> coefficients);

// {P(x) mod p : x in Z/pZ}.
ResidueSet value_set_mod(const PolySpec& poly, uint64_t p);
uint64_t value_set_size(const PolySpec& poly, uint64_t p);

// sum_{p <= Q} log p / |V_p| for the cube map, and its ratio to log Q.
struct CubeSumResult {
    double sum = 0.0;
    double ratio_to_logQ = 0.0;
};
CubeSumResult cube_larger_sieve_sum(uint64_t Q);

// The literal set-based sum: sum_{p <= Q} log p / |A mod p|.
double larger_sieve_log_sum(const IntegerSet& a, uint64_t Q);

// sum (log p / p)(|V_p| / p) / sum (log p / p) over p <= Q.
double weighted_value_set_density(const PolySpec& poly, uint64_t Q);

// Checks |V_p| >= (1/d + 2/d^2) p - d over random degree-d polynomials and
// primes with d not dividing p - 1 (p > d, leading coefficient nonzero mod p).
struct GomezSweepReport {
    bool vacuous = false;
    uint64_t instances = 0;
    uint64_t violations = 0;
    double min_ratio = 1.0;  // smallest observed |V_p| / p
};
GomezSweepReport gomez_bound_sweep(int degree, uint64_t Q, int trials, uint64_t seed);

// Per-prime occupancy row: an all-prime sumset avoiding 0 mod p forces
// |A1 mod p| + |A2 mod p| + ... <= p + s - 1 for s summands.
struct OccupancyProfileRow {
    uint64_t p = 2;
    uint64_t occupancy_sum = 0;
    uint64_t bound = 0;
    bool consistent = false;
};

struct TripleScanReport {
    std::optional<std::array<uint64_t, 3>> composite_witness;
    uint64_t witness_sum = 0;
    bool all_prime = false;
    uint64_t checked = 0;
    uint64_t min_sum = 0;
    uint64_t cutoff = 0;  // profile primes run up to floor(N^0.6)
    std::vector<OccupancyProfileRow> profile;
};
TripleScanReport triple_sumset_prime_scan(const IntegerSet& a1, const IntegerSet& a2,
                                          const IntegerSet& a3);

struct PairScanReport {
    std::optional<std::array<uint64_t, 2>> composite_witness;
    uint64_t witness_sum = 0;
    bool all_prime = false;
    uint64_t checked = 0;
    uint64_t min_sum = 0;
    uint64_t cutoff = 0;
    std::vector<OccupancyProfileRow> profile;
};
PairScanReport pair_sumset_prime_scan(const IntegerSet& a1, const IntegerSet& a2);

// Greedy pair with all pairwise sums prime: A1 odd, A2 even, extended
// alternately by the smallest admissible element up to N.
std::pair<IntegerSet, IntegerSet> greedy_prime_pair(uint64_t N, uint64_t max_size = 6);

// Constraint: A ⊂ [N] with |A mod p| <= cap_p for each listed prime.
struct SearchConstraint {
    uint64_t N = 1;
    double alpha = 0.5;
    std::vector<std::pair<uint64_t, uint64_t>> caps;  // ascending (p, cap)

    // Caps floor(alpha p) + slack (clamped to [1, p]) for p up to N^alpha
    // rounded; throws when a cap lands at zero.
    static SearchConstraint default_caps(uint64_t N, double alpha, int64_t slack = 0);
};

struct SearchCertificateRow {
    uint64_t p = 2;
    uint64_t count = 0;
    uint64_t cap = 0;
    bool ok = false;
};

struct SearchResult {
    IntegerSet best;
    std::vector<SearchCertificateRow> certificate;
    bool certified = false;     // every cap re-verified from scratch
    bool exhaustive = false;    // the class enumeration completed, optimum exact
    std::optional<double> sieve_cap;  // Gallagher bound from the caps, if defined
    std::string method;
};
SearchResult extremal_search(const SearchConstraint& constraint, uint64_t budget,
                             uint64_t seed);

}  // namespace sievelab
