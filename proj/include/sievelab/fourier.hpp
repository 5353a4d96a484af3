#pragma once
// Exponential sums of weight functions at rationals a/p and the spectral
// energy over nonzero frequencies of one prime.

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "sievelab/core.hpp"
#include "sievelab/rng.hpp"

namespace sievelab {

// f: [1, N] -> C, sparse; unset entries are 0.
struct WeightFunction {
    uint64_t ambient = 1;
    std::vector<std::pair<uint64_t, std::complex<double>>> values;  // sorted by n

    static WeightFunction indicator(const IntegerSet& a);
    // Multiples of m inside [1, N] with unit weight.
    static WeightFunction multiples(uint64_t ambient, uint64_t m);

    std::complex<double> total() const;
    double abs_power_sum(double exponent) const;  // sum |f(n)|^exponent
    void normalize();                             // sort by n, merge duplicates
};

// Spectrum of f at one prime: amplitudes at a/p for a = 1..p-1 plus energy.
struct SpectrumAtPrime {
    uint64_t p = 2;
    std::vector<std::complex<double>> amplitudes;  // index a-1
    double energy = 0.0;                           // sum of |amplitude|^2
};

// sum_n f(n) e(-a n / p); requires 0 <= a < p.
std::complex<double> fhat(const WeightFunction& f, uint64_t a, uint64_t p);

// sum_n f(n) e(-x n) for real frequency x.
std::complex<double> fhat_at(const WeightFunction& f, double x);

SpectrumAtPrime spectrum(const WeightFunction& f, uint64_t p);

// Energy only; same value as spectrum(f, p).energy, via fiber sums.
double spectral_energy(const WeightFunction& f, uint64_t p);

// (a, |fhat(a/p)|) maximising the magnitude over a = 1..p-1; smallest a wins ties.
std::pair<uint64_t, double> max_amplitude(const IntegerSet& a, uint64_t p);

// Random f for sweeps: density in (0, 1], complex Gaussian-ish entries.
WeightFunction random_weight_function(uint64_t ambient, double density, Rng& rng);

}  // namespace sievelab
