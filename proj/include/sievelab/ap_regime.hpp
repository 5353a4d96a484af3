#pragma once
// Iterative refinement of a set whose residues sit inside per-prime AP
// windows: popular-difference extraction, the weighted window mass, and the
// shrink loop that intersects the set with a shifted copy of itself.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sievelab/additive.hpp"
#include "sievelab/core.hpp"
#include "sievelab/sieve.hpp"

namespace sievelab {

// A set together with one AP window per good prime; every window contains
// the projection of the set and has length at most (1 - epsilon) p.
struct ApSystem {
    IntegerSet set;
    PrimePlan plan;
    std::vector<std::pair<uint64_t, ApWindow>> windows;  // aligned with plan.good
    double epsilon = 0.1;
    int k = 1;
    double eta = 0.05;  // required shrink factor per accepted step

    const ApWindow& window(uint64_t p) const;
    // sum over good primes of (log p / p) * (|S_p| / p)
    double window_mass() const;
};

// Validates the containment and length invariants; eta defaults to the
// derived shrink constant when not supplied.
ApSystem make_ap_system(IntegerSet set, PrimePlan plan, std::vector<ApWindow> windows,
                        double epsilon, int k, std::optional<double> eta = {});

// {h in [-N, N] : |A ∩ (A + h)| >= theta |A|} ∪ {0}; symmetric in h.
std::vector<int64_t> popular_differences(const IntegerSet& a, double theta);

// Window mass after shifting: sum (log p / p) |S_p ∩ (S_p + h)| / p.
double shrink_gain(const ApSystem& system, int64_t h);

struct RefineResult {
    ApSystem system;
    bool accepted = false;
    int64_t shift = 0;
    bool terminal_empty = false;  // the refined set came out empty
};

// Picks the popular difference minimising the shifted window mass and
// accepts it when the refreshed windows shrink the mass by at least the
// factor (1 - eta). Candidates are tried in gain order because a refreshed
// cover can only be at least as long as the raw intersection.
RefineResult refine_step(const ApSystem& system, double theta);

struct IterationLevel {
    uint64_t set_size = 0;
    double window_mass = 0.0;
    int64_t shift = 0;      // 0 on the initial level
    double c_level = 0.0;   // (3k)^i * c
    bool accepted = false;  // whether this level came from an accepted step
};

struct IterationTrace {
    std::vector<IterationLevel> levels;
    std::vector<ApSystem> systems;  // retained for invariant audits
    std::string termination;        // mass_threshold | empty | no_improving_shift | max_iters
};

// Runs refine_step until the mass drops below log(Q)/(4k), the set empties,
// no shift clears the shrink threshold, or max_iters steps were taken.
// theta at level i is theta_scale * N^(-3k c_i), capped at 1.
IterationTrace run_regime(const ApSystem& system, int max_iters,
                          double theta_scale = 0.5);

}  // namespace sievelab
