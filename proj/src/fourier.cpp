#include "sievelab/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sievelab {

WeightFunction WeightFunction::indicator(const IntegerSet& a) {
    WeightFunction f;
    f.ambient = a.ambient();
    f.values.reserve(a.size());
    for (uint64_t n : a.elements()) f.values.emplace_back(n, 1.0);
    return f;
}

WeightFunction WeightFunction::multiples(uint64_t ambient, uint64_t m) {
    WeightFunction f;
    f.ambient = ambient;
    for (uint64_t n = m; n <= ambient; n += m) f.values.emplace_back(n, 1.0);
    return f;
}

std::complex<double> WeightFunction::total() const {
    std::complex<double> sum = 0.0;
    for (const auto& [n, v] : values) sum += v;
    return sum;
}

double WeightFunction::abs_power_sum(double exponent) const {
    double sum = 0.0;
    for (const auto& [n, v] : values) sum += std::pow(std::abs(v), exponent);
    return sum;
}

void WeightFunction::normalize() {
    std::sort(values.begin(), values.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<uint64_t, std::complex<double>>> merged;
    for (const auto& [n, v] : values) {
        if (n < 1 || n > ambient)
            throw std::invalid_argument("WeightFunction: support outside [1, N]");
        if (!merged.empty() && merged.back().first == n)
            merged.back().second += v;
        else
            merged.emplace_back(n, v);
    }
    values = std::move(merged);
}

static std::vector<std::complex<double>> unit_roots(uint64_t p) {
    std::vector<std::complex<double>> root(p);
    const double step = -2.0 * std::numbers::pi / static_cast<double>(p);
    for (uint64_t k = 0; k < p; ++k)
        root[k] = std::polar(1.0, step * static_cast<double>(k));
    return root;
}

std::complex<double> fhat(const WeightFunction& f, uint64_t a, uint64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("fhat: p must be prime");
    if (a >= p) throw std::invalid_argument("fhat: frequency a must satisfy a < p");
    const auto root = unit_roots(p);
    std::complex<double> sum = 0.0;
    for (const auto& [n, v] : f.values) sum += v * root[(a * (n % p)) % p];
    return sum;
}

std::complex<double> fhat_at(const WeightFunction& f, double x) {
    std::complex<double> sum = 0.0;
    const double tau = 2.0 * std::numbers::pi;
    for (const auto& [n, v] : f.values)
        sum += v * std::polar(1.0, -tau * x * static_cast<double>(n));
    return sum;
}

// Fiber sums first, then a length-p transform: turns |support| cost into p
// cost when the support is much larger than p.
static std::vector<std::complex<double>> fiber_sums(const WeightFunction& f,
                                                    uint64_t p) {
    std::vector<std::complex<double>> fiber(p, 0.0);
    for (const auto& [n, v] : f.values) fiber[n % p] += v;
    return fiber;
}

SpectrumAtPrime spectrum(const WeightFunction& f, uint64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("spectrum: p must be prime");
    SpectrumAtPrime s;
    s.p = p;
    s.amplitudes.assign(p - 1, 0.0);

    const auto fiber = fiber_sums(f, p);
    std::vector<uint64_t> support;
    for (uint64_t r = 0; r < p; ++r)
        if (fiber[r] != std::complex<double>(0.0)) support.push_back(r);

    const auto root = unit_roots(p);
    double energy = 0.0;
    for (uint64_t a = 1; a < p; ++a) {
        std::complex<double> amp = 0.0;
        for (uint64_t r : support) amp += fiber[r] * root[(a * r) % p];
        s.amplitudes[a - 1] = amp;
        energy += std::norm(amp);
    }
    s.energy = energy;
    return s;
}

double spectral_energy(const WeightFunction& f, uint64_t p) {
    return spectrum(f, p).energy;
}

std::pair<uint64_t, double> max_amplitude(const IntegerSet& a, uint64_t p) {
    if (a.empty()) throw std::invalid_argument("max_amplitude: empty set");
    const SpectrumAtPrime s = spectrum(WeightFunction::indicator(a), p);
    uint64_t best_a = 1;
    double best = -1.0;
    for (uint64_t freq = 1; freq < p; ++freq) {
        const double mag = std::abs(s.amplitudes[freq - 1]);
        if (mag > best) {
            best = mag;
            best_a = freq;
        }
    }
    return {best_a, best};
}

WeightFunction random_weight_function(uint64_t ambient, double density, Rng& rng) {
    WeightFunction f;
    f.ambient = ambient;
    for (uint64_t n = 1; n <= ambient; ++n) {
        if (!rng.chance(density)) continue;
        // Box-Muller from the deterministic generator.
        const double u1 = std::max(rng.uniform(), 1e-300);
        const double u2 = rng.uniform();
        const double mag = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        f.values.emplace_back(n, std::complex<double>(mag * std::cos(angle),
                                                      mag * std::sin(angle)));
    }
    if (f.values.empty()) f.values.emplace_back(1 + rng.below(ambient), 1.0);
    return f;
}

}  // namespace sievelab
