#include "sievelab/large_sieve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sievelab/additive.hpp"

namespace sievelab {

FareyFamily FareyFamily::zeros(uint64_t P) {
    FareyFamily g;
    g.P = P;
    for (uint64_t p : primes_up_to(P).primes)
        g.coeffs.emplace_back(p, std::vector<std::complex<double>>(p - 1, 0.0));
    return g;
}

std::vector<std::complex<double>>& FareyFamily::at(uint64_t p) {
    for (auto& [q, v] : coeffs)
        if (q == p) return v;
    throw std::invalid_argument("FareyFamily: prime not present");
}

const std::vector<std::complex<double>>& FareyFamily::at(uint64_t p) const {
    for (const auto& [q, v] : coeffs)
        if (q == p) return v;
    throw std::invalid_argument("FareyFamily: prime not present");
}

bool FareyFamily::same_shape(const FareyFamily& other) const {
    if (P != other.P || coeffs.size() != other.coeffs.size()) return false;
    for (size_t i = 0; i < coeffs.size(); ++i)
        if (coeffs[i].first != other.coeffs[i].first ||
            coeffs[i].second.size() != other.coeffs[i].second.size())
            return false;
    return true;
}

bool FareyFamily::is_zero() const {
    for (const auto& [p, v] : coeffs)
        for (const auto& z : v)
            if (z != std::complex<double>(0.0)) return false;
    return true;
}

static double lp_norm(const std::vector<std::complex<double>>& v, double q) {
    double sum = 0.0;
    for (const auto& z : v) sum += std::pow(std::abs(z), q);
    return std::pow(sum, 1.0 / q);
}

double farey_l2_norm(const FareyFamily& g) {
    double sum = 0.0;
    for (const auto& [p, v] : g.coeffs)
        for (const auto& z : v) sum += std::norm(z);
    return std::sqrt(sum);
}

double farey_y1_norm(const FareyFamily& g, int k) {
    const double q = 2.0 * k / (2.0 * k - 1.0);
    double sum = 0.0;
    for (const auto& [p, v] : g.coeffs) sum += std::pow(lp_norm(v, q), 2.0 * k);
    return std::pow(sum, 1.0 / (2.0 * k));
}

NormBundle norm_bundle(const FareyFamily& g, int k) {
    NormBundle bundle;
    bundle.k = k;
    bundle.y1 = farey_y1_norm(g, k);
    bundle.l2 = farey_l2_norm(g);
    bundle.y = bundle.y1 + bundle.l2;
    return bundle;
}

double farey_dual_y1_norm(const FareyFamily& h, int k) {
    const double q = 2.0 * k / (2.0 * k - 1.0);
    double sum = 0.0;
    for (const auto& [p, v] : h.coeffs) sum += std::pow(lp_norm(v, 2.0 * k), q);
    return std::pow(sum, 1.0 / q);
}

VariantReport variant_sides(const WeightFunction& f, uint64_t P, int k) {
    if (k < 1) throw std::invalid_argument("variant_sides: k must be at least 1");
    if (P < 2) throw std::invalid_argument("variant_sides: P must be at least 2");
    VariantReport report;
    report.k = k;
    report.P = P;
    report.N = f.ambient;

    const double kk = static_cast<double>(k);
    const double exponent = kk / (2.0 * kk - 1.0);
    double lhs = 0.0;
    for (uint64_t p : primes_up_to(P).primes)
        lhs += std::pow(spectral_energy(f, p), exponent);
    report.lhs = lhs;

    const double weight_sum = f.abs_power_sum(2.0 * kk / (2.0 * kk - 1.0));
    const double p_factor = std::pow(static_cast<double>(P), (kk - 1.0) / (2.0 * kk - 1.0));
    report.rhs_first = p_factor *
                       std::pow(static_cast<double>(f.ambient), 1.0 / (2.0 * kk - 1.0)) *
                       weight_sum;
    report.rhs_second = p_factor *
                        std::pow(static_cast<double>(P), 2.0 * kk / (2.0 * kk - 1.0)) *
                        weight_sum;
    const double denom = report.rhs_first + report.rhs_second;
    report.ratio = denom > 0.0 ? lhs / denom : 0.0;
    return report;
}

std::vector<double> farey_points(uint64_t P) {
    std::vector<double> points;
    for (uint64_t p : primes_up_to(P).primes)
        for (uint64_t a = 1; a < p; ++a)
            points.push_back(static_cast<double>(a) / static_cast<double>(p));
    std::sort(points.begin(), points.end());
    return points;
}

ClassicalReport classical_large_sieve_sides(const WeightFunction& f,
                                            const std::vector<double>& points,
                                            double delta) {
    if (!(delta > 0.0))
        throw std::invalid_argument("classical_large_sieve_sides: delta must be positive");
    // Pairwise circle distance must be at least delta (tiny tolerance for
    // points produced through floating division).
    const double tolerated = delta * (1.0 - 1e-12);
    for (size_t i = 0; i < points.size(); ++i)
        for (size_t j = i + 1; j < points.size(); ++j) {
            double diff = std::abs(points[i] - points[j]);
            diff = std::min(diff, 1.0 - diff);
            if (diff < tolerated)
                throw std::invalid_argument(
                    "classical_large_sieve_sides: points are not delta-spaced");
        }

    ClassicalReport report;
    for (double x : points) report.lhs += std::norm(fhat_at(f, x));
    report.rhs = (static_cast<double>(f.ambient) + 1.0 / delta) * f.abs_power_sum(2.0);
    report.ratio = report.rhs > 0.0 ? report.lhs / report.rhs : 0.0;
    return report;
}

double dual_operator_ratio(const FareyFamily& g, uint64_t N, int k) {
    if (k < 1) throw std::invalid_argument("dual_operator_ratio: k must be at least 1");
    if (g.is_zero()) throw std::invalid_argument("dual_operator_ratio: zero input");

    // Lg(n) accumulated prime by prime through a root table.
    std::vector<std::complex<double>> image(N, 0.0);
    for (const auto& [p, v] : g.coeffs) {
        std::vector<std::complex<double>> root(p);
        const double step = 2.0 * std::numbers::pi / static_cast<double>(p);
        for (uint64_t r = 0; r < p; ++r)
            root[r] = std::polar(1.0, step * static_cast<double>(r));
        for (uint64_t n = 1; n <= N; ++n) {
            std::complex<double> sum = 0.0;
            for (uint64_t a = 1; a < p; ++a) sum += v[a - 1] * root[(a * (n % p)) % p];
            image[n - 1] += sum;
        }
    }
    double power_sum = 0.0;
    for (const auto& z : image) power_sum += std::pow(std::abs(z), 2.0 * k);
    const double image_norm = std::pow(power_sum, 1.0 / (2.0 * k));
    return image_norm / norm_bundle(g, k).y;
}

DualNormCheckReport dual_norm_lower_check(
    const FareyFamily& h,
    const std::vector<std::pair<FareyFamily, FareyFamily>>& decompositions, int k) {
    const double kk = static_cast<double>(k);
    double sum = 0.0;
    for (const auto& [p, v] : h.coeffs)
        sum += std::pow(lp_norm(v, 2.0), 2.0 * kk / (2.0 * kk - 1.0));
    DualNormCheckReport report;
    report.rhs = std::pow(static_cast<double>(h.P), -(kk - 1.0) / (2.0 * kk)) *
                 std::pow(sum, (2.0 * kk - 1.0) / (2.0 * kk));

    for (const auto& [h1, h2] : decompositions) {
        if (!h1.same_shape(h) || !h2.same_shape(h))
            throw std::invalid_argument("dual_norm_lower_check: shape mismatch");
        double residual = 0.0;
        double scale = 0.0;
        for (size_t i = 0; i < h.coeffs.size(); ++i)
            for (size_t j = 0; j < h.coeffs[i].second.size(); ++j) {
                const auto expected = h.coeffs[i].second[j];
                const auto actual = h1.coeffs[i].second[j] + h2.coeffs[i].second[j];
                residual = std::max(residual, std::abs(expected - actual));
                scale = std::max(scale, std::abs(expected));
            }
        if (residual > 1e-9 * std::max(1.0, scale))
            throw std::invalid_argument(
                "dual_norm_lower_check: decomposition does not sum to h");
        DualNormCheckItem item;
        item.lhs = 2.0 * std::max(farey_dual_y1_norm(h1, k), farey_l2_norm(h2));
        item.holds = item.lhs >= report.rhs * (1.0 - 1e-12);
        report.items.push_back(item);
        report.all_hold = report.all_hold && item.holds;
    }
    return report;
}

HolderChainReport holder_energy_chain(const IntegerSet& a, int k) {
    if (a.empty()) throw std::invalid_argument("holder_energy_chain: empty set");
    if (k < 1) throw std::invalid_argument("holder_energy_chain: k must be at least 1");

    // Self-convolution by direct pair counting.
    const auto& elems = a.elements();
    const uint64_t max_sum = 2 * elems.back();
    std::vector<uint64_t> conv(max_sum + 1, 0);
    for (uint64_t x : elems)
        for (uint64_t y : elems) ++conv[x + y];

    HolderChainReport report;
    const double kk = static_cast<double>(k);
    const double exponent = 2.0 * kk / (2.0 * kk - 1.0);
    for (uint64_t s = 2; s <= max_sum; ++s) {
        if (conv[s] == 0) continue;
        report.lhs += std::pow(static_cast<double>(conv[s]), exponent);
        report.energy += conv[s] * conv[s];
    }
    const double size = static_cast<double>(a.size());
    report.rhs = std::pow(size, 4.0 * (kk - 1.0) / (2.0 * kk - 1.0)) *
                 std::pow(static_cast<double>(report.energy), 1.0 / (2.0 * kk - 1.0));
    report.holds = report.lhs <= report.rhs * (1.0 + 1e-12);

    const double ambient = static_cast<double>(a.ambient());
    const uint64_t P = integer_root(a.ambient(), 2 * static_cast<unsigned>(k));
    const double prime_count =
        static_cast<double>(primes_up_to(P).primes.size());
    report.energy_floor = size * size * size * (size / std::sqrt(ambient)) *
                          std::pow(prime_count / std::pow(ambient, 1.0 / (2.0 * kk)),
                                   2.0 * kk - 1.0);
    report.floor_ratio = report.energy_floor > 0.0
                             ? static_cast<double>(report.energy) / report.energy_floor
                             : 0.0;
    return report;
}

MissingClassesReport missing_classes_scenario(const IntegerSet& a, int k) {
    if (k < 1) throw std::invalid_argument("missing_classes_scenario: k must be >= 1");
    MissingClassesReport report;
    report.cutoff = integer_root(a.ambient(), 2 * static_cast<unsigned>(k));
    report.hypothesis_all = true;
    const WeightFunction f = WeightFunction::indicator(a);
    const double size = static_cast<double>(a.size());
    for (uint64_t p : primes_up_to(report.cutoff).primes) {
        MissingClassesRow row;
        row.p = p;
        row.occupied = residue_count(a, p);
        row.missing = p - row.occupied;
        row.hypothesis = static_cast<double>(row.missing) >= 0.1 * static_cast<double>(p);
        row.energy = spectral_energy(f, p);
        row.energy_floor =
            size * size *
            (static_cast<double>(p) / static_cast<double>(row.occupied) - 1.0);
        if (!row.hypothesis) {
            report.hypothesis_all = false;
            report.failing_primes.push_back(p);
        }
        report.rows.push_back(row);
    }
    report.size_over_sqrt_ambient =
        size / std::sqrt(static_cast<double>(a.ambient()));
    return report;
}

FareyFamily random_farey_family(uint64_t P, Rng& rng, double density) {
    FareyFamily g = FareyFamily::zeros(P);
    bool any = false;
    for (auto& [p, v] : g.coeffs)
        for (auto& z : v) {
            if (!rng.chance(density)) continue;
            const double u1 = std::max(rng.uniform(), 1e-300);
            const double angle = 2.0 * std::numbers::pi * rng.uniform();
            const double mag = std::sqrt(-2.0 * std::log(u1));
            z = std::complex<double>(mag * std::cos(angle), mag * std::sin(angle));
            any = true;
        }
    if (!any && !g.coeffs.empty() && !g.coeffs[0].second.empty())
        g.coeffs[0].second[0] = 1.0;
    return g;
}

}  // namespace sievelab
