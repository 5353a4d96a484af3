#pragma once
// Both sides of the prime-spectrum large sieve variant, the classical
// delta-spaced inequality, the dual operator and its mixed norms, the
// Hoelder step lifting additive energy, and the missing-classes scenario.

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "sievelab/core.hpp"
#include "sievelab/fourier.hpp"

namespace sievelab {

// Coefficients indexed by reduced fractions a/p with p <= P prime and
// 1 <= a <= p-1.
struct FareyFamily {
    uint64_t P = 2;
    // ascending p; vector index a-1 holds the coefficient of a/p
    std::vector<std::pair<uint64_t, std::vector<std::complex<double>>>> coeffs;

    static FareyFamily zeros(uint64_t P);
    std::vector<std::complex<double>>& at(uint64_t p);
    const std::vector<std::complex<double>>& at(uint64_t p) const;
    bool same_shape(const FareyFamily& other) const;
    bool is_zero() const;
};

// The split norm used on the coefficient side: y = y1 + l2, where
// y1^(2k) = sum_p ||g_p||_{2k/(2k-1)}^(2k) and l2 is the plain L2 norm.
struct NormBundle {
    double y1 = 0.0;
    double l2 = 0.0;
    double y = 0.0;
    int k = 1;
};

double farey_l2_norm(const FareyFamily& g);
double farey_y1_norm(const FareyFamily& g, int k);
NormBundle norm_bundle(const FareyFamily& g, int k);
// Dual of the y1 norm: ||h||^(2k/(2k-1)) = sum_p ||h_p||_{2k}^(2k/(2k-1)).
double farey_dual_y1_norm(const FareyFamily& h, int k);

// Two sides of the variant inequality at one (f, P, k).
struct VariantReport {
    int k = 1;
    uint64_t P = 2;
    uint64_t N = 1;
    double lhs = 0.0;         // sum_p I_p(f)^(k/(2k-1))
    double rhs_first = 0.0;   // P^((k-1)/(2k-1)) N^(1/(2k-1)) sum|f|^(2k/(2k-1))
    double rhs_second = 0.0;  // P^((k-1)/(2k-1)) P^(2k/(2k-1)) sum|f|^(2k/(2k-1))
    double ratio = 0.0;       // lhs / (rhs_first + rhs_second)
};
VariantReport variant_sides(const WeightFunction& f, uint64_t P, int k);

// Classical delta-spaced large sieve at explicit points.
struct ClassicalReport {
    double lhs = 0.0;  // sum_i |fhat(x_i)|^2
    double rhs = 0.0;  // (N + 1/delta) sum |f|^2
    double ratio = 0.0;
};
ClassicalReport classical_large_sieve_sides(const WeightFunction& f,
                                            const std::vector<double>& points,
                                            double delta);

// All reduced fractions a/p for primes p <= P, ascending by value.
std::vector<double> farey_points(uint64_t P);

// ||Lg||_{2k} / ||g||_Y where (Lg)(n) = sum_p sum_a g_p(a) e(an/p).
double dual_operator_ratio(const FareyFamily& g, uint64_t N, int k);

// Checks 2 max(||h1||_{Y1*}, ||h2||_2) >= P^(-(k-1)/2k) (sum_p ||h_p||_2^(2k/(2k-1)))^((2k-1)/2k)
// for each supplied decomposition h = h1 + h2.
struct DualNormCheckItem {
    double lhs = 0.0;
    bool holds = false;
};
struct DualNormCheckReport {
    double rhs = 0.0;
    std::vector<DualNormCheckItem> items;
    bool all_hold = true;
};
DualNormCheckReport dual_norm_lower_check(
    const FareyFamily& h,
    const std::vector<std::pair<FareyFamily, FareyFamily>>& decompositions, int k);

// The Hoelder step for f = 1_A * 1_A, plus the resulting energy floor.
struct HolderChainReport {
    double lhs = 0.0;      // sum_n conv(n)^(2k/(2k-1))
    double rhs = 0.0;      // |A|^(4(k-1)/(2k-1)) E(A)^(1/(2k-1))
    bool holds = false;
    uint64_t energy = 0;   // E(A) = sum conv(n)^2, exact
    double energy_floor = 0.0;  // |A|^3 (|A|/sqrt N)(|P|/N^(1/2k))^(2k-1)
    double floor_ratio = 0.0;   // energy / energy_floor
};
HolderChainReport holder_energy_chain(const IntegerSet& a, int k);

// Per-prime missing-classes hypothesis below N^(1/2k) and the spectral
// lower bound it forces.
struct MissingClassesRow {
    uint64_t p = 2;
    uint64_t occupied = 0;
    uint64_t missing = 0;
    bool hypothesis = false;   // missing >= 0.1 p
    double energy = 0.0;       // I_p(1_A)
    double energy_floor = 0.0; // |A|^2 (p/|A_p| - 1), from fiber Cauchy-Schwarz
};
struct MissingClassesReport {
    uint64_t cutoff = 0;  // floor(N^(1/2k))
    bool hypothesis_all = false;
    std::vector<uint64_t> failing_primes;
    std::vector<MissingClassesRow> rows;
    double size_over_sqrt_ambient = 0.0;
};
MissingClassesReport missing_classes_scenario(const IntegerSet& a, int k);

// Random Farey coefficients with unit-scale complex entries.
FareyFamily random_farey_family(uint64_t P, Rng& rng, double density = 1.0);

}  // namespace sievelab
