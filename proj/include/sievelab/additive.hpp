#pragma once
// Sumsets, difference representation counts, additive energy, the robust
// sumset lower bound, and minimal arithmetic-progression covers mod p.

#include <cstdint>
#include <map>
#include <vector>

#include "sievelab/core.hpp"

namespace sievelab {

// Representation counts mod p: counts[h] = |A ∩ (A + h)|.
struct RepCountProfile {
    uint64_t p = 2;
    std::vector<uint64_t> counts;
};

// Arithmetic progression {start + i*step : 0 <= i < length} in Z/pZ.
// step is nonzero and, canonically, at most (p-1)/2 (a window and its
// reflection describe the same residues).
struct ApWindow {
    uint64_t p = 2;
    uint64_t start = 0;
    uint64_t step = 1;
    uint64_t length = 1;

    ResidueSet to_residue_set() const;
    bool contains_set(const ResidueSet& subset) const;
};

ApWindow make_ap_window(uint64_t p, uint64_t start, uint64_t step, uint64_t length);

// {a + b : a in A, b in B}; moduli must match.
ResidueSet sumset(const ResidueSet& a, const ResidueSet& b);

RepCountProfile rep_counts_mod(const ResidueSet& a);

// Integer difference profile: h -> |A ∩ (A + h)| for every h in A - A
// (stored sparsely, symmetric, includes h = 0 with value |A|).
std::map<int64_t, uint64_t> rep_counts_int(const IntegerSet& a);

// Number of quadruples (a1, a2, a3, a4) with a1 + a2 = a3 + a4.
uint64_t additive_energy(const IntegerSet& a);

struct RobustCdcResult {
    ResidueSet popular;  // elements of A + B with at least K representations
    double bound;        // min(p, |A| + |B| - 1) - 3 sqrt(K p)
};
RobustCdcResult robust_cdc_set(const ResidueSet& a, const ResidueSet& b, double K);

// Minimal-length AP window containing A (ties: smallest step, then start).
ApWindow min_ap_cover(const ResidueSet& a);

// |S ∩ (S + h)| computed from window arithmetic alone.
uint64_t ap_window_intersect_shift(const ApWindow& window, uint64_t h);

}  // namespace sievelab
