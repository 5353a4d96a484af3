#pragma once
// Shared arithmetic layer: prime tables, deterministic primality, integer
// sets in [1, N], and residue sets modulo a prime backed by bit arrays.

#include <cstdint>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace sievelab {

// All primes up to an inclusive limit, ascending.
struct PrimeTable {
    uint64_t limit = 0;
    std::vector<uint64_t> primes;
};

PrimeTable primes_up_to(uint64_t limit);

// Deterministic for every 64-bit n (fixed Miller-Rabin witness set).
bool is_prime(uint64_t n);

// (base^exp) mod m, m > 0.
uint64_t mod_pow(uint64_t base, uint64_t exp, uint64_t m);

// Inverse of a modulo prime p, a not divisible by p.
uint64_t mod_inverse(uint64_t a, uint64_t p);

// Largest r with r^k <= n (exact, no floating-point edge cases).
uint64_t integer_root(uint64_t n, unsigned k);

// -------------------------------------------------------
// IntegerSet: finite subset of [1, N].
// -------------------------------------------------------
class IntegerSet {
public:
    IntegerSet(uint64_t ambient, std::vector<uint64_t> elements);

    static IntegerSet range(uint64_t ambient);  // {1, ..., N}

    uint64_t ambient() const { return ambient_; }
    const std::vector<uint64_t>& elements() const { return elements_; }
    uint64_t size() const { return elements_.size(); }
    bool empty() const { return elements_.empty(); }
    bool contains(uint64_t n) const;

    // A ∩ (A + h) = {a in A : a - h in A}.
    IntegerSet intersect_shift(int64_t h) const;

private:
    uint64_t ambient_;
    std::vector<uint64_t> elements_;  // strictly increasing
};

// -------------------------------------------------------
// ResidueSet: subset of Z/pZ for prime p, stored as a bit array.
// Shift/intersection are the hot operations; both work on whole words.
// -------------------------------------------------------
class ResidueSet {
public:
    static constexpr uint64_t modulus_cap = uint64_t{1} << 20;

    explicit ResidueSet(uint64_t modulus);  // empty set
    static ResidueSet of(uint64_t modulus, const std::vector<uint64_t>& members);
    static ResidueSet full(uint64_t modulus);

    uint64_t modulus() const { return modulus_; }
    uint64_t size() const;
    bool empty() const { return size() == 0; }
    bool contains(uint64_t r) const;
    void insert(uint64_t r);
    std::vector<uint64_t> members() const;

    ResidueSet shifted(uint64_t h) const;  // {r + h mod p : r in set}
    ResidueSet intersected(const ResidueSet& other) const;
    ResidueSet unioned(const ResidueSet& other) const;
    uint64_t intersect_size(const ResidueSet& other) const;
    bool subset_of(const ResidueSet& other) const;

    bool operator==(const ResidueSet& other) const = default;

private:
    void check_same_modulus(const ResidueSet& other) const;

    uint64_t modulus_;
    std::vector<uint64_t> words_;  // bit r set <=> r in set; tail bits zero
};

// A mod p as a residue set; p must be prime.
ResidueSet project_mod(const IntegerSet& a, uint64_t p);

// |A mod p| without materialising the set.
uint64_t residue_count(const IntegerSet& a, uint64_t p);

// Fiber counts x_r = |{a in A : a = r mod p}| for r in Z/pZ.
std::vector<uint64_t> fiber_counts(const IntegerSet& a, uint64_t p);

// Sum of (log p)/p over table primes passing the filter.
template <class Pred>
double log_weight_sum_if(const PrimeTable& table, Pred keep) {
    double sum = 0.0;
    for (uint64_t p : table.primes)
        if (keep(p)) sum += std::log(static_cast<double>(p)) / static_cast<double>(p);
    return sum;
}

inline double log_weight_sum(const PrimeTable& table) {
    return log_weight_sum_if(table, [](uint64_t) { return true; });
}

}  // namespace sievelab
