#include "sievelab/additive.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace sievelab {

ApWindow make_ap_window(uint64_t p, uint64_t start, uint64_t step, uint64_t length) {
    if (!is_prime(p)) throw std::invalid_argument("ApWindow: modulus must be prime");
    if (step % p == 0) throw std::invalid_argument("ApWindow: step must be nonzero mod p");
    if (length < 1 || length > p)
        throw std::invalid_argument("ApWindow: length must lie in [1, p]");
    return ApWindow{p, start % p, step % p, length};
}

ResidueSet ApWindow::to_residue_set() const {
    ResidueSet set(p);
    uint64_t r = start % p;
    for (uint64_t i = 0; i < length; ++i) {
        set.insert(r);
        r += step;
        if (r >= p) r -= p;
    }
    return set;
}

bool ApWindow::contains_set(const ResidueSet& subset) const {
    return subset.subset_of(to_residue_set());
}

ResidueSet sumset(const ResidueSet& a, const ResidueSet& b) {
    if (a.modulus() != b.modulus())
        throw std::invalid_argument("sumset: modulus mismatch");
    ResidueSet out(a.modulus());
    for (uint64_t r : a.members()) out = out.unioned(b.shifted(r));
    return out;
}

RepCountProfile rep_counts_mod(const ResidueSet& a) {
    const uint64_t p = a.modulus();
    RepCountProfile profile;
    profile.p = p;
    profile.counts.assign(p, 0);
    for (uint64_t h = 0; h < p; ++h)
        profile.counts[h] = a.intersect_size(a.shifted(h));
    return profile;
}

std::map<int64_t, uint64_t> rep_counts_int(const IntegerSet& a) {
    std::map<int64_t, uint64_t> profile;
    const auto& elems = a.elements();
    if (elems.empty()) return profile;
    std::unordered_map<int64_t, uint64_t> raw;
    raw.reserve(elems.size() * 4);
    for (size_t i = 0; i < elems.size(); ++i)
        for (size_t j = 0; j <= i; ++j)
            ++raw[static_cast<int64_t>(elems[i]) - static_cast<int64_t>(elems[j])];
    for (const auto& [h, count] : raw) {
        profile[h] = count;
        if (h != 0) profile[-h] = count;
    }
    return profile;
}

uint64_t additive_energy(const IntegerSet& a) {
    const auto& elems = a.elements();
    if (elems.empty()) return 0;
    const uint64_t max_sum = 2 * elems.back();
    uint64_t energy = 0;
    if (max_sum <= (uint64_t{1} << 23)) {
        std::vector<uint32_t> sums(max_sum + 1, 0);
        for (uint64_t x : elems)
            for (uint64_t y : elems) ++sums[x + y];
        for (uint64_t s = 2; s <= max_sum; ++s)
            energy += static_cast<uint64_t>(sums[s]) * sums[s];
    } else {
        std::unordered_map<uint64_t, uint64_t> sums;
        sums.reserve(elems.size() * elems.size());
        for (uint64_t x : elems)
            for (uint64_t y : elems) ++sums[x + y];
        for (const auto& [s, count] : sums) energy += count * count;
    }
    return energy;
}

RobustCdcResult robust_cdc_set(const ResidueSet& a, const ResidueSet& b, double K) {
    if (a.modulus() != b.modulus())
        throw std::invalid_argument("robust_cdc_set: modulus mismatch");
    const uint64_t p = a.modulus();
    std::vector<uint64_t> reps(p, 0);
    const auto b_members = b.members();
    for (uint64_t x : a.members())
        for (uint64_t y : b_members) {
            uint64_t s = x + y;
            if (s >= p) s -= p;
            ++reps[s];
        }
    RobustCdcResult result{ResidueSet(p), 0.0};
    for (uint64_t s = 0; s < p; ++s)
        if (static_cast<double>(reps[s]) >= K) result.popular.insert(s);
    const double cdc = std::min<double>(static_cast<double>(p),
                                        static_cast<double>(a.size() + b.size()) - 1.0);
    result.bound = cdc - 3.0 * std::sqrt(K * static_cast<double>(p));
    return result;
}

ApWindow min_ap_cover(const ResidueSet& a) {
    const uint64_t p = a.modulus();
    const auto members = a.members();
    if (members.empty()) throw std::invalid_argument("min_ap_cover: empty set");
    if (members.size() == 1) return ApWindow{p, members[0], 1, 1};
    if (members.size() == p) return ApWindow{p, 0, 1, p};

    // Rescaling by 1/d turns "covered by a step-d window" into "covered by a
    // cyclic interval"; the shortest interval is the complement of the
    // largest gap between consecutive rescaled members. Steps d and p-d give
    // reflected windows, so only d <= (p-1)/2 is searched.
    ApWindow best{p, 0, 1, p + 1};
    const uint64_t max_step = std::max<uint64_t>(1, (p - 1) / 2);
    std::vector<uint64_t> rescaled(members.size());
    for (uint64_t d = 1; d <= max_step; ++d) {
        if (best.length <= members.size()) break;  // cannot cover with fewer
        const uint64_t inv = mod_inverse(d, p);
        for (size_t i = 0; i < members.size(); ++i)
            rescaled[i] = (members[i] * inv) % p;
        std::sort(rescaled.begin(), rescaled.end());

        uint64_t best_gap = rescaled.front() + p - rescaled.back();
        for (size_t i = 0; i + 1 < rescaled.size(); ++i)
            best_gap = std::max(best_gap, rescaled[i + 1] - rescaled[i]);
        const uint64_t length = p - best_gap + 1;
        if (length >= best.length) continue;

        // Among equally large gaps pick the smallest original start.
        uint64_t start = UINT64_MAX;
        if (rescaled.front() + p - rescaled.back() == best_gap)
            start = (rescaled.front() * d) % p;
        for (size_t i = 0; i + 1 < rescaled.size(); ++i)
            if (rescaled[i + 1] - rescaled[i] == best_gap)
                start = std::min(start, (rescaled[i + 1] * d) % p);
        best = ApWindow{p, start, d, length};
    }
    return best;
}

uint64_t ap_window_intersect_shift(const ApWindow& window, uint64_t h) {
    const uint64_t p = window.p;
    h %= p;
    if (h == 0) return window.length;
    // Move to index space: element start + i*step matches start + h + i'*step
    // exactly when i = i' + h/step (mod p).
    const uint64_t j = (h * mod_inverse(window.step, p)) % p;
    const uint64_t L = window.length;
    uint64_t count = 0;
    if (j < L) count += L - j;                        // i >= j, wrap-free
    const uint64_t wrap_limit = L + j >= p ? L + j - p : 0;  // i < j with wrap
    count += std::min(j, std::min(wrap_limit, L));
    return count;
}

}  // namespace sievelab
