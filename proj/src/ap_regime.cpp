#include "sievelab/ap_regime.hpp"

#include <algorithm>
#include <cmath>

namespace sievelab {

const ApWindow& ApSystem::window(uint64_t p) const {
    for (const auto& [q, w] : windows)
        if (q == p) return w;
    throw std::invalid_argument("ApSystem: no window for that prime");
}

double ApSystem::window_mass() const {
    double mass = 0.0;
    for (const auto& [p, w] : windows) {
        const double pd = static_cast<double>(p);
        mass += std::log(pd) / pd * (static_cast<double>(w.length) / pd);
    }
    return mass;
}

ApSystem make_ap_system(IntegerSet set, PrimePlan plan, std::vector<ApWindow> windows,
                        double epsilon, int k, std::optional<double> eta) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("ApSystem: epsilon must lie in (0, 1)");
    if (k < 1) throw std::invalid_argument("ApSystem: k must be at least 1");
    if (windows.size() != plan.good.size())
        throw std::invalid_argument("ApSystem: one window per good prime required");

    const double eta_value =
        eta ? *eta
            : derive_constants(plan.alpha, plan.c, k, epsilon).derived.at("shrink_eta");
    ApSystem system{std::move(set), PrimePlan{}, {}, epsilon, k, eta_value};
    for (size_t i = 0; i < windows.size(); ++i) {
        const uint64_t p = plan.good[i];
        const ApWindow& w = windows[i];
        if (w.p != p) throw std::invalid_argument("ApSystem: window modulus mismatch");
        if (static_cast<double>(w.length) > (1.0 - epsilon) * static_cast<double>(p))
            throw std::invalid_argument("ApSystem: window longer than (1 - epsilon) p");
        if (!w.contains_set(project_mod(system.set, p)))
            throw std::invalid_argument("ApSystem: window does not contain the projection");
        system.windows.emplace_back(p, w);
    }
    system.plan = std::move(plan);
    return system;
}

std::vector<int64_t> popular_differences(const IntegerSet& a, double theta) {
    if (!(theta > 0.0 && theta <= 1.0))
        throw std::invalid_argument("popular_differences: theta must lie in (0, 1]");
    std::vector<int64_t> shifts;
    const double floor = theta * static_cast<double>(a.size());
    for (const auto& [h, count] : rep_counts_int(a)) {
        if (h == 0) continue;
        if (static_cast<double>(count) >= floor) shifts.push_back(h);
    }
    shifts.push_back(0);
    std::sort(shifts.begin(), shifts.end());
    return shifts;
}

double shrink_gain(const ApSystem& system, int64_t h) {
    double mass = 0.0;
    for (const auto& [p, w] : system.windows) {
        const int64_t pm = static_cast<int64_t>(p);
        const uint64_t residue = static_cast<uint64_t>(((h % pm) + pm) % pm);
        const double pd = static_cast<double>(p);
        mass += std::log(pd) / pd *
                (static_cast<double>(ap_window_intersect_shift(w, residue)) / pd);
    }
    return mass;
}

// Refreshed windows after shifting by h: the exact intersection when it is
// still an AP of the same step, otherwise its minimal AP cover. Empty when
// some intersection vanishes.
static std::optional<std::vector<std::pair<uint64_t, ApWindow>>> refreshed_windows(
    const ApSystem& system, int64_t h) {
    std::vector<std::pair<uint64_t, ApWindow>> next;
    next.reserve(system.windows.size());
    for (const auto& [p, w] : system.windows) {
        const int64_t pm = static_cast<int64_t>(p);
        const uint64_t residue = static_cast<uint64_t>(((h % pm) + pm) % pm);
        const ResidueSet intersection =
            w.to_residue_set().intersected(w.to_residue_set().shifted(residue));
        if (intersection.empty()) return std::nullopt;
        next.emplace_back(p, min_ap_cover(intersection));
    }
    return next;
}

static double window_list_mass(const std::vector<std::pair<uint64_t, ApWindow>>& windows) {
    double mass = 0.0;
    for (const auto& [p, w] : windows) {
        const double pd = static_cast<double>(p);
        mass += std::log(pd) / pd * (static_cast<double>(w.length) / pd);
    }
    return mass;
}

RefineResult refine_step(const ApSystem& system, double theta) {
    const double base_mass = system.window_mass();
    const double threshold = (1.0 - system.eta) * base_mass;

    std::vector<int64_t> candidates = popular_differences(system.set, theta);
    std::erase(candidates, int64_t{0});

    struct Scored {
        double gain;
        int64_t shift;
    };
    std::vector<Scored> scored;
    scored.reserve(candidates.size());
    for (int64_t h : candidates) scored.push_back({shrink_gain(system, h), h});
    // Smallest gain first; ties prefer small |h|, then positive over negative.
    std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
        if (a.gain != b.gain) return a.gain < b.gain;
        const uint64_t am = std::abs(a.shift), bm = std::abs(b.shift);
        if (am != bm) return am < bm;
        return a.shift > b.shift;
    });

    RefineResult result{system, false, 0, false};
    for (const Scored& candidate : scored) {
        // The realized cover is never shorter than the raw intersection, so
        // once gains reach the threshold no later candidate can pass.
        if (candidate.gain >= threshold) break;
        auto next_windows = refreshed_windows(system, candidate.shift);
        const double realized =
            next_windows ? window_list_mass(*next_windows) : 0.0;
        if (next_windows && realized >= threshold) continue;

        result.accepted = true;
        result.shift = candidate.shift;
        result.system.set = system.set.intersect_shift(candidate.shift);
        if (!next_windows || result.system.set.empty()) {
            result.terminal_empty = true;
            if (next_windows) result.system.windows = std::move(*next_windows);
            return result;
        }
        result.system.windows = std::move(*next_windows);
        return result;
    }
    return result;
}

IterationTrace run_regime(const ApSystem& system, int max_iters, double theta_scale) {
    if (max_iters < 1)
        throw std::invalid_argument("run_regime: max_iters must be at least 1");

    IterationTrace trace;
    const double logQ = std::log(static_cast<double>(system.plan.Q));
    const double mass_floor = logQ / (4.0 * static_cast<double>(system.k));
    const double ambient = static_cast<double>(system.set.ambient());

    ApSystem current = system;
    double c_level = system.plan.c;
    trace.levels.push_back(
        {current.set.size(), current.window_mass(), 0, c_level, false});
    trace.systems.push_back(current);

    for (int i = 0; i < max_iters; ++i) {
        if (current.window_mass() < mass_floor) {
            trace.termination = "mass_threshold";
            return trace;
        }
        if (current.set.empty()) {
            trace.termination = "empty";
            return trace;
        }
        const double theta = std::min(
            1.0, theta_scale * std::pow(ambient, -3.0 * current.k * c_level));
        const RefineResult step = refine_step(current, theta);
        if (!step.accepted) {
            trace.termination = "no_improving_shift";
            return trace;
        }
        current = step.system;
        c_level *= 3.0 * static_cast<double>(system.k);
        trace.levels.push_back(
            {current.set.size(), current.window_mass(), step.shift, c_level, true});
        trace.systems.push_back(current);
        if (step.terminal_empty) {
            trace.termination = "empty";
            return trace;
        }
    }
    trace.termination = "max_iters";
    return trace;
}

}  // namespace sievelab
