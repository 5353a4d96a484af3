#include <cmath>

#include "doctest.h"
#include "sievelab/core.hpp"
#include "test_util.hpp"

using namespace sievelab;

namespace {

// Independent segmented sieve, used only to cross-check primes_up_to.
std::vector<uint64_t> segmented_primes(uint64_t limit) {
    std::vector<uint64_t> primes;
    if (limit < 2) return primes;
    const uint64_t root = static_cast<uint64_t>(std::sqrt(static_cast<double>(limit)));
    std::vector<uint8_t> small(root + 1, 1);
    for (uint64_t i = 2; i <= root; ++i) {
        if (!small[i]) continue;
        for (uint64_t j = i * i; j <= root; j += i) small[j] = 0;
    }
    std::vector<uint64_t> base;
    for (uint64_t i = 2; i <= root; ++i)
        if (small[i]) base.push_back(i);

    const uint64_t segment = 1 << 16;
    std::vector<uint8_t> mark(segment);
    for (uint64_t low = 2; low <= limit; low += segment) {
        const uint64_t high = std::min(limit, low + segment - 1);
        std::fill(mark.begin(), mark.end(), 1);
        for (uint64_t p : base) {
            uint64_t start = std::max(p * p, (low + p - 1) / p * p);
            for (uint64_t j = start; j <= high; j += p) mark[j - low] = 0;
        }
        for (uint64_t n = low; n <= high; ++n)
            if (mark[n - low]) primes.push_back(n);
    }
    return primes;
}

bool trial_division_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

TEST_SUITE_BEGIN("core");

TEST_CASE("primes_up_to small values") {
    CHECK(primes_up_to(10).primes == std::vector<uint64_t>{2, 3, 5, 7});
    CHECK(primes_up_to(1).primes.empty());
    CHECK(primes_up_to(0).primes.empty());
    CHECK(primes_up_to(2).primes == std::vector<uint64_t>{2});
}

TEST_CASE("primes_up_to million count matches segmented enumeration") {
    const PrimeTable table = primes_up_to(1000000);
    CHECK(table.primes.size() == 78498);
    CHECK(table.primes == segmented_primes(1000000));
}

TEST_CASE("primes_up_to agrees with trial division below 1e5") {
    const PrimeTable table = primes_up_to(100000);
    size_t idx = 0;
    for (uint64_t n = 0; n <= 100000; ++n) {
        const bool listed = idx < table.primes.size() && table.primes[idx] == n;
        if (listed) ++idx;
        CHECK(listed == trial_division_prime(n));
    }
    CHECK(idx == table.primes.size());
}

TEST_CASE("is_prime basics") {
    CHECK(is_prime(97));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(0));
    CHECK(is_prime(2));
    // Strong pseudoprime to bases 2,3,5,7; confirmed composite by trial division.
    CHECK_FALSE(is_prime(3215031751ULL));
    CHECK_FALSE(trial_division_prime(3215031751ULL));
    CHECK(is_prime(2305843009213693951ULL));  // 2^61 - 1
}

TEST_CASE("is_prime agrees with trial division on a range") {
    for (uint64_t n = 0; n <= 20000; ++n) CHECK(is_prime(n) == trial_division_prime(n));
}

TEST_CASE("project_mod examples") {
    const IntegerSet a(10, {1, 4, 6});
    const ResidueSet r = project_mod(a, 5);
    CHECK(r.members() == std::vector<uint64_t>{1, 4});

    const IntegerSet full = IntegerSet::range(12);
    CHECK(project_mod(full, 3).members() == std::vector<uint64_t>{0, 1, 2});

    std::vector<uint64_t> squares;
    for (uint64_t k = 1; k * k <= 1000; ++k) squares.push_back(k * k);
    const IntegerSet sq(1000, squares);
    // Oracle: enumerate k^2 mod 7 directly.
    ResidueSet expected(7);
    for (uint64_t k = 1; k * k <= 1000; ++k) expected.insert((k * k) % 7);
    CHECK(project_mod(sq, 7) == expected);
    CHECK(project_mod(sq, 7).members() == std::vector<uint64_t>{0, 1, 2, 4});
}

TEST_CASE("project_mod rejects non-prime modulus") {
    const IntegerSet a(10, {1, 2});
    CHECK_THROWS_AS(project_mod(a, 6), std::invalid_argument);
}

TEST_CASE("projection size never exceeds min(|A|, p)") {
    Rng rng(2024);
    for (int t = 0; t < 50; ++t) {
        const IntegerSet a = testutil::random_integer_set(rng, 500, rng.uniform(0.01, 0.9));
        for (uint64_t p : {2ULL, 3ULL, 7ULL, 31ULL, 101ULL}) {
            const uint64_t size = project_mod(a, p).size();
            CHECK(size <= std::min<uint64_t>(a.size(), p));
            CHECK(size == residue_count(a, p));
        }
    }
}

TEST_CASE("log_weight_sum examples") {
    CHECK(log_weight_sum(primes_up_to(0)) == 0.0);
    const double q10 = log_weight_sum(primes_up_to(10));
    const double expected = std::log(2.0) / 2 + std::log(3.0) / 3 +
                            std::log(5.0) / 5 + std::log(7.0) / 7;
    CHECK(q10 == doctest::Approx(expected).epsilon(1e-12));
    CHECK(q10 == doctest::Approx(1.3105).epsilon(1e-3));
}

TEST_CASE("log_weight_sum stays within the Mertens band") {
    for (double exponent = 3.0; exponent <= 7.0; exponent += 1.0) {
        const uint64_t Q = static_cast<uint64_t>(std::pow(10.0, exponent));
        const double sum = log_weight_sum(primes_up_to(Q));
        CHECK(std::abs(sum - std::log(static_cast<double>(Q))) < 2.0);
    }
}

TEST_CASE("log_weight_sum filter") {
    const PrimeTable table = primes_up_to(50);
    const double odd_only =
        log_weight_sum_if(table, [](uint64_t p) { return p % 2 == 1; });
    CHECK(odd_only == doctest::Approx(log_weight_sum(table) - std::log(2.0) / 2));
}

TEST_CASE("IntegerSet validation and shift intersection") {
    CHECK_THROWS_AS(IntegerSet(10, {0}), std::invalid_argument);
    CHECK_THROWS_AS(IntegerSet(10, {11}), std::invalid_argument);
    const IntegerSet a(10, {3, 1, 5, 3});  // normalised
    CHECK(a.elements() == std::vector<uint64_t>{1, 3, 5});

    const IntegerSet b(10, {1, 2, 3, 7});
    const IntegerSet shifted = b.intersect_shift(1);
    CHECK(shifted.elements() == std::vector<uint64_t>{2, 3});  // 2-1, 3-1 in B
    const IntegerSet neg = b.intersect_shift(-1);
    CHECK(neg.elements() == std::vector<uint64_t>{1, 2});
}

TEST_CASE("ResidueSet shift and intersection match a naive model") {
    Rng rng(7);
    for (uint64_t p : {2ULL, 3ULL, 13ULL, 67ULL, 127ULL, 1009ULL}) {
        const ResidueSet set = testutil::random_residue_set(rng, p, 0.3);
        for (int t = 0; t < 20; ++t) {
            const uint64_t h = rng.below(p);
            const ResidueSet shifted = set.shifted(h);
            ResidueSet expected(p);
            for (uint64_t r : set.members()) expected.insert((r + h) % p);
            CHECK(shifted == expected);
            CHECK(set.intersect_size(shifted) == set.intersected(shifted).size());
        }
    }
}

TEST_CASE("ResidueSet rejects composite modulus and oversized modulus") {
    CHECK_THROWS_AS(ResidueSet(9), std::invalid_argument);
    CHECK_THROWS_AS(ResidueSet((uint64_t{1} << 20) + 7), std::invalid_argument);
}

TEST_CASE("integer_root exact boundaries") {
    CHECK(integer_root(4096, 4) == 8);
    CHECK(integer_root(4095, 4) == 7);
    CHECK(integer_root(256, 8) == 2);
    CHECK(integer_root(1, 3) == 1);
    CHECK(integer_root(0, 5) == 0);
    CHECK(integer_root(1000000, 2) == 1000);
}

TEST_SUITE_END();
