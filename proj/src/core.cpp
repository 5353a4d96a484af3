#include "sievelab/core.hpp"

#include <algorithm>

namespace sievelab {

PrimeTable primes_up_to(uint64_t limit) {
    PrimeTable table;
    table.limit = limit;
    if (limit < 2) return table;
    std::vector<uint8_t> composite(limit + 1, 0);
    for (uint64_t i = 2; i * i <= limit; ++i) {
        if (composite[i]) continue;
        for (uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
    }
    for (uint64_t i = 2; i <= limit; ++i)
        if (!composite[i]) table.primes.push_back(i);
    return table;
}

static uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

uint64_t mod_pow(uint64_t base, uint64_t exp, uint64_t m) {
    if (m == 0) throw std::invalid_argument("mod_pow: zero modulus");
    if (m == 1) return 0;
    uint64_t result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

uint64_t mod_inverse(uint64_t a, uint64_t p) {
    a %= p;
    if (a == 0) throw std::invalid_argument("mod_inverse: zero element");
    return mod_pow(a, p - 2, p);
}

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                       29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    // Deterministic witness set for the full 64-bit range.
    uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                       29ULL, 31ULL, 37ULL}) {
        uint64_t x = mod_pow(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < r; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

uint64_t integer_root(uint64_t n, unsigned k) {
    if (k == 0) throw std::invalid_argument("integer_root: zero exponent");
    if (k == 1 || n < 2) return n;
    uint64_t r = static_cast<uint64_t>(
        std::pow(static_cast<double>(n), 1.0 / static_cast<double>(k)));
    // pow can land one off either way; fix up exactly.
    auto pow_leq = [&](uint64_t base) {
        __uint128_t acc = 1;
        for (unsigned i = 0; i < k; ++i) {
            acc *= base;
            if (acc > n) return false;
        }
        return true;
    };
    while (r > 0 && !pow_leq(r)) --r;
    while (pow_leq(r + 1)) ++r;
    return r;
}

// -------------------------------------------------------
// IntegerSet
// -------------------------------------------------------

IntegerSet::IntegerSet(uint64_t ambient, std::vector<uint64_t> elements)
    : ambient_(ambient), elements_(std::move(elements)) {
    if (ambient_ < 1) throw std::invalid_argument("IntegerSet: ambient must be >= 1");
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
    if (!elements_.empty() && (elements_.front() < 1 || elements_.back() > ambient_))
        throw std::invalid_argument("IntegerSet: elements must lie in [1, N]");
}

IntegerSet IntegerSet::range(uint64_t ambient) {
    std::vector<uint64_t> all(ambient);
    for (uint64_t i = 0; i < ambient; ++i) all[i] = i + 1;
    return IntegerSet(ambient, std::move(all));
}

bool IntegerSet::contains(uint64_t n) const {
    return std::binary_search(elements_.begin(), elements_.end(), n);
}

IntegerSet IntegerSet::intersect_shift(int64_t h) const {
    std::vector<uint64_t> kept;
    for (uint64_t a : elements_) {
        const int64_t source = static_cast<int64_t>(a) - h;
        if (source >= 1 && contains(static_cast<uint64_t>(source))) kept.push_back(a);
    }
    return IntegerSet(ambient_, std::move(kept));
}

// -------------------------------------------------------
// ResidueSet
// -------------------------------------------------------

ResidueSet::ResidueSet(uint64_t modulus) : modulus_(modulus) {
    if (modulus > modulus_cap)
        throw std::invalid_argument("ResidueSet: modulus exceeds configured cap");
    if (!sievelab::is_prime(modulus))
        throw std::invalid_argument("ResidueSet: modulus must be prime");
    words_.assign((modulus + 63) / 64, 0);
}

ResidueSet ResidueSet::of(uint64_t modulus, const std::vector<uint64_t>& members) {
    ResidueSet set(modulus);
    for (uint64_t r : members) set.insert(r);
    return set;
}

ResidueSet ResidueSet::full(uint64_t modulus) {
    ResidueSet set(modulus);
    for (size_t i = 0; i < set.words_.size(); ++i) set.words_[i] = ~uint64_t{0};
    const unsigned tail = modulus % 64;
    if (tail != 0) set.words_.back() &= (uint64_t{1} << tail) - 1;
    return set;
}

uint64_t ResidueSet::size() const {
    uint64_t count = 0;
    for (uint64_t w : words_) count += static_cast<uint64_t>(__builtin_popcountll(w));
    return count;
}

bool ResidueSet::contains(uint64_t r) const {
    if (r >= modulus_) throw std::out_of_range("ResidueSet: residue out of range");
    return (words_[r / 64] >> (r % 64)) & 1;
}

void ResidueSet::insert(uint64_t r) {
    if (r >= modulus_) throw std::out_of_range("ResidueSet: residue out of range");
    words_[r / 64] |= uint64_t{1} << (r % 64);
}

std::vector<uint64_t> ResidueSet::members() const {
    std::vector<uint64_t> out;
    for (size_t w = 0; w < words_.size(); ++w) {
        uint64_t bits = words_[w];
        while (bits) {
            const int b = __builtin_ctzll(bits);
            out.push_back(w * 64 + static_cast<unsigned>(b));
            bits &= bits - 1;
        }
    }
    return out;
}

// Shift the whole p-bit ring left by s (towards higher residues).
static std::vector<uint64_t> ring_shift_up(const std::vector<uint64_t>& words,
                                           uint64_t p, uint64_t s) {
    const size_t n = words.size();
    std::vector<uint64_t> out(n, 0);
    const size_t word_shift = s / 64;
    const unsigned bit_shift = s % 64;
    for (size_t i = 0; i < n; ++i) {
        uint64_t value = 0;
        if (i >= word_shift) {
            value = words[i - word_shift] << bit_shift;
            if (bit_shift != 0 && i > word_shift)
                value |= words[i - word_shift - 1] >> (64 - bit_shift);
        }
        out[i] = value;
    }
    const unsigned tail = p % 64;
    if (tail != 0) out.back() &= (uint64_t{1} << tail) - 1;
    return out;
}

// Shift the ring right by s (towards lower residues), discarding low bits.
static std::vector<uint64_t> ring_shift_down(const std::vector<uint64_t>& words,
                                             uint64_t s) {
    const size_t n = words.size();
    std::vector<uint64_t> out(n, 0);
    const size_t word_shift = s / 64;
    const unsigned bit_shift = s % 64;
    for (size_t i = 0; i + word_shift < n; ++i) {
        uint64_t value = words[i + word_shift] >> bit_shift;
        if (bit_shift != 0 && i + word_shift + 1 < n)
            value |= words[i + word_shift + 1] << (64 - bit_shift);
        out[i] = value;
    }
    return out;
}

ResidueSet ResidueSet::shifted(uint64_t h) const {
    h %= modulus_;
    if (h == 0) return *this;
    ResidueSet out(modulus_);
    // new bit (r + h mod p) = old bit r: rotate up by h with wrap-around.
    const std::vector<uint64_t> up = ring_shift_up(words_, modulus_, h);
    const std::vector<uint64_t> wrap = ring_shift_down(words_, modulus_ - h);
    for (size_t i = 0; i < out.words_.size(); ++i) out.words_[i] = up[i] | wrap[i];
    const unsigned tail = modulus_ % 64;
    if (tail != 0) out.words_.back() &= (uint64_t{1} << tail) - 1;
    return out;
}

void ResidueSet::check_same_modulus(const ResidueSet& other) const {
    if (modulus_ != other.modulus_)
        throw std::invalid_argument("ResidueSet: modulus mismatch");
}

ResidueSet ResidueSet::intersected(const ResidueSet& other) const {
    check_same_modulus(other);
    ResidueSet out(modulus_);
    for (size_t i = 0; i < words_.size(); ++i) out.words_[i] = words_[i] & other.words_[i];
    return out;
}

ResidueSet ResidueSet::unioned(const ResidueSet& other) const {
    check_same_modulus(other);
    ResidueSet out(modulus_);
    for (size_t i = 0; i < words_.size(); ++i) out.words_[i] = words_[i] | other.words_[i];
    return out;
}

uint64_t ResidueSet::intersect_size(const ResidueSet& other) const {
    check_same_modulus(other);
    uint64_t count = 0;
    for (size_t i = 0; i < words_.size(); ++i)
        count += static_cast<uint64_t>(__builtin_popcountll(words_[i] & other.words_[i]));
    return count;
}

bool ResidueSet::subset_of(const ResidueSet& other) const {
    check_same_modulus(other);
    for (size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~other.words_[i]) return false;
    return true;
}

ResidueSet project_mod(const IntegerSet& a, uint64_t p) {
    ResidueSet set(p);  // constructor rejects non-prime p
    for (uint64_t n : a.elements()) set.insert(n % p);
    return set;
}

uint64_t residue_count(const IntegerSet& a, uint64_t p) {
    std::vector<uint8_t> seen(p, 0);
    uint64_t count = 0;
    for (uint64_t n : a.elements()) {
        uint8_t& flag = seen[n % p];
        if (!flag) {
            flag = 1;
            ++count;
        }
    }
    return count;
}

std::vector<uint64_t> fiber_counts(const IntegerSet& a, uint64_t p) {
    std::vector<uint64_t> counts(p, 0);
    for (uint64_t n : a.elements()) ++counts[n % p];
    return counts;
}

}  // namespace sievelab
