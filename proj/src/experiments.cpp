#include "sievelab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sievelab/parallel.hpp"

namespace sievelab {

PolySpec make_poly(std::vector<int64_t> coefficients) {
    if (coefficients.size() < 2)
        throw std::invalid_argument("PolySpec: degree must be at least 1");
    if (coefficients.back() == 0)
        throw std::invalid_argument("PolySpec: leading coefficient must be nonzero");
    return PolySpec{std::move(coefficients)};
}

PolySpec PolySpec::monomial(int degree) {
    if (degree < 1) throw std::invalid_argument("PolySpec: degree must be at least 1");
    std::vector<int64_t> coeffs(degree + 1, 0);
    coeffs.back() = 1;
    return PolySpec{std::move(coeffs)};
}

bool PolySpec::is_monomial() const {
    for (size_t i = 0; i + 1 < coefficients.size(); ++i)
        if (coefficients[i] != 0) return false;
    return coefficients.back() == 1;
}

uint64_t PolySpec::eval_mod(uint64_t x, uint64_t p) const {
    uint64_t acc = 0;
    for (size_t i = coefficients.size(); i-- > 0;) {
        const int64_t c = coefficients[i] % static_cast<int64_t>(p);
        const uint64_t cpos = static_cast<uint64_t>(c < 0 ? c + static_cast<int64_t>(p) : c);
        acc = (acc * x + cpos) % p;
    }
    return acc;
}

static uint64_t value_set_size_raw(const PolySpec& poly, uint64_t p) {
    std::vector<uint8_t> seen(p, 0);
    uint64_t count = 0;
    for (uint64_t x = 0; x < p; ++x) {
        uint8_t& flag = seen[poly.eval_mod(x, p)];
        if (!flag) {
            flag = 1;
            ++count;
        }
    }
    return count;
}

static void assert_monomial_size(const PolySpec& poly, uint64_t p, uint64_t observed) {
    if (!poly.is_monomial()) return;
    const uint64_t d = static_cast<uint64_t>(poly.degree());
    const uint64_t expected = (p - 1) / std::gcd(p - 1, d) + 1;
    if (observed != expected)
        throw std::logic_error("value_set_mod: power-map size formula violated");
}

uint64_t value_set_size(const PolySpec& poly, uint64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("value_set_size: p must be prime");
    const uint64_t count = value_set_size_raw(poly, p);
    assert_monomial_size(poly, p, count);
    return count;
}

ResidueSet value_set_mod(const PolySpec& poly, uint64_t p) {
    ResidueSet set(p);
    for (uint64_t x = 0; x < p; ++x) set.insert(poly.eval_mod(x, p));
    assert_monomial_size(poly, p, set.size());
    return set;
}

CubeSumResult cube_larger_sieve_sum(uint64_t Q) {
    if (Q < 10) throw std::invalid_argument("cube_larger_sieve_sum: Q must be >= 10");
    const PrimeTable table = primes_up_to(Q);
    std::vector<double> terms(table.primes.size(), 0.0);
    parallel_for(table.primes.size(), [&](size_t i) {
        const uint64_t p = table.primes[i];
        std::vector<uint8_t> seen(p, 0);
        uint64_t count = 0;
        for (uint64_t x = 0; x < p; ++x) {
            const uint64_t cube = ((x * x) % p) * x % p;
            uint8_t& flag = seen[cube];
            if (!flag) {
                flag = 1;
                ++count;
            }
        }
        terms[i] = std::log(static_cast<double>(p)) / static_cast<double>(count);
    });
    CubeSumResult result;
    for (double t : terms) result.sum += t;  // prime order, deterministic
    result.ratio_to_logQ = result.sum / std::log(static_cast<double>(Q));
    return result;
}

double larger_sieve_log_sum(const IntegerSet& a, uint64_t Q) {
    if (a.empty()) throw std::invalid_argument("larger_sieve_log_sum: empty set");
    double sum = 0.0;
    for (uint64_t p : primes_up_to(Q).primes)
        sum += std::log(static_cast<double>(p)) /
               static_cast<double>(residue_count(a, p));
    return sum;
}

double weighted_value_set_density(const PolySpec& poly, uint64_t Q) {
    if (Q < 10)
        throw std::invalid_argument("weighted_value_set_density: Q must be >= 10");
    const PrimeTable table = primes_up_to(Q);
    std::vector<double> terms(table.primes.size(), 0.0);
    parallel_for(table.primes.size(), [&](size_t i) {
        const uint64_t p = table.primes[i];
        const double pd = static_cast<double>(p);
        terms[i] = std::log(pd) / pd *
                   (static_cast<double>(value_set_size_raw(poly, p)) / pd);
    });
    double numerator = 0.0;
    for (double t : terms) numerator += t;
    return numerator / log_weight_sum(table);
}

GomezSweepReport gomez_bound_sweep(int degree, uint64_t Q, int trials, uint64_t seed) {
    if (degree < 2) throw std::invalid_argument("gomez_bound_sweep: degree must be >= 2");
    GomezSweepReport report;
    const uint64_t d = static_cast<uint64_t>(degree);

    std::vector<uint64_t> qualifying;
    for (uint64_t p : primes_up_to(Q).primes)
        if (p > d && (p - 1) % d != 0) qualifying.push_back(p);
    if (qualifying.empty()) {
        report.vacuous = true;
        return report;
    }

    const double floor_scale = 1.0 / static_cast<double>(degree) +
                               2.0 / (static_cast<double>(degree) * degree);
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        std::vector<int64_t> coeffs(d + 1);
        for (auto& c : coeffs) c = static_cast<int64_t>(rng.range(0, 200)) - 100;
        coeffs.back() = static_cast<int64_t>(rng.range(1, 100));
        const PolySpec poly = make_poly(std::move(coeffs));
        for (uint64_t p : qualifying) {
            if (static_cast<uint64_t>(std::llabs(poly.coefficients.back())) % p == 0)
                continue;  // degree drops mod p
            const uint64_t size = value_set_size_raw(poly, p);
            const double pd = static_cast<double>(p);
            ++report.instances;
            report.min_ratio = std::min(report.min_ratio, static_cast<double>(size) / pd);
            if (static_cast<double>(size) <
                floor_scale * pd - static_cast<double>(degree))
                ++report.violations;
        }
    }
    return report;
}

// -------------------------------------------------------
// Prime sumset scans
// -------------------------------------------------------

namespace {

// Table-backed primality for scan sums; falls back to the deterministic
// test when the range is too large to sieve.
class PrimalityOracle {
public:
    explicit PrimalityOracle(uint64_t max_value) {
        if (max_value <= (uint64_t{1} << 26)) {
            table_.assign(max_value + 1, 1);
            table_[0] = 0;
            if (max_value >= 1) table_[1] = 0;
            for (uint64_t i = 2; i * i <= max_value; ++i)
                if (table_[i])
                    for (uint64_t j = i * i; j <= max_value; j += i) table_[j] = 0;
        }
    }
    bool operator()(uint64_t n) const {
        if (!table_.empty()) return table_[n] != 0;
        return is_prime(n);
    }

private:
    std::vector<uint8_t> table_;
};

std::vector<OccupancyProfileRow> occupancy_profile(
    const std::vector<const IntegerSet*>& sets, uint64_t cutoff) {
    std::vector<OccupancyProfileRow> rows;
    for (uint64_t p : primes_up_to(cutoff).primes) {
        OccupancyProfileRow row;
        row.p = p;
        for (const IntegerSet* a : sets) row.occupancy_sum += residue_count(*a, p);
        row.bound = p + sets.size() - 1;
        row.consistent = row.occupancy_sum <= row.bound;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

TripleScanReport triple_sumset_prime_scan(const IntegerSet& a1, const IntegerSet& a2,
                                          const IntegerSet& a3) {
    if (a1.empty() || a2.empty() || a3.empty())
        throw std::invalid_argument("triple_sumset_prime_scan: sets must be nonempty");
    TripleScanReport report;
    const uint64_t N =
        std::max({a1.ambient(), a2.ambient(), a3.ambient()});
    report.cutoff = static_cast<uint64_t>(std::pow(static_cast<double>(N), 0.6));
    report.min_sum = a1.elements().front() + a2.elements().front() +
                     a3.elements().front();

    const PrimalityOracle prime_test(3 * N);
    report.all_prime = true;
    for (uint64_t x : a1.elements()) {
        for (uint64_t y : a2.elements()) {
            for (uint64_t z : a3.elements()) {
                ++report.checked;
                const uint64_t s = x + y + z;
                if (!prime_test(s)) {
                    report.composite_witness = {{x, y, z}};
                    report.witness_sum = s;
                    report.all_prime = false;
                    goto scan_done;
                }
            }
        }
    }
scan_done:
    report.profile = occupancy_profile({&a1, &a2, &a3}, report.cutoff);
    return report;
}

PairScanReport pair_sumset_prime_scan(const IntegerSet& a1, const IntegerSet& a2) {
    if (a1.empty() || a2.empty())
        throw std::invalid_argument("pair_sumset_prime_scan: sets must be nonempty");
    PairScanReport report;
    const uint64_t N = std::max(a1.ambient(), a2.ambient());
    report.cutoff = static_cast<uint64_t>(std::pow(static_cast<double>(N), 0.6));
    report.min_sum = a1.elements().front() + a2.elements().front();

    const PrimalityOracle prime_test(2 * N);
    report.all_prime = true;
    for (uint64_t x : a1.elements()) {
        for (uint64_t y : a2.elements()) {
            ++report.checked;
            const uint64_t s = x + y;
            if (!prime_test(s)) {
                report.composite_witness = {{x, y}};
                report.witness_sum = s;
                report.all_prime = false;
                goto scan_done;
            }
        }
    }
scan_done:
    report.profile = occupancy_profile({&a1, &a2}, report.cutoff);
    return report;
}

std::pair<IntegerSet, IntegerSet> greedy_prime_pair(uint64_t N, uint64_t max_size) {
    if (N < 3) throw std::invalid_argument("greedy_prime_pair: N too small");
    const PrimalityOracle prime_test(2 * N);
    std::vector<uint64_t> odd{1};
    std::vector<uint64_t> even{2};

    auto extend = [&](std::vector<uint64_t>& side, const std::vector<uint64_t>& other) {
        for (uint64_t x = side.back() + 2; x <= N; x += 2) {
            bool ok = true;
            for (uint64_t y : other) {
                if (!prime_test(x + y)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                side.push_back(x);
                return true;
            }
        }
        return false;
    };

    bool odd_stuck = false, even_stuck = false;
    while ((odd.size() < max_size || even.size() < max_size) &&
           !(odd_stuck && even_stuck)) {
        // Extend the smaller side; ties go to the even side.
        const bool pick_even = even.size() <= odd.size();
        if (pick_even && even.size() < max_size && !even_stuck) {
            even_stuck = !extend(even, odd);
        } else if (odd.size() < max_size && !odd_stuck) {
            odd_stuck = !extend(odd, even);
        } else if (even.size() < max_size && !even_stuck) {
            even_stuck = !extend(even, odd);
        } else {
            break;
        }
    }
    return {IntegerSet(N, std::move(odd)), IntegerSet(N, std::move(even))};
}

// -------------------------------------------------------
// Extremal search under residue-class caps
// -------------------------------------------------------

SearchConstraint SearchConstraint::default_caps(uint64_t N, double alpha, int64_t slack) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("SearchConstraint: alpha must lie in (0, 1)");
    SearchConstraint constraint;
    constraint.N = N;
    constraint.alpha = alpha;
    const uint64_t cutoff = static_cast<uint64_t>(
        std::llround(std::pow(static_cast<double>(N), alpha)));
    for (uint64_t p : primes_up_to(cutoff).primes) {
        const int64_t raw =
            static_cast<int64_t>(std::floor(alpha * static_cast<double>(p))) + slack;
        if (raw < 1)
            throw std::invalid_argument("SearchConstraint: cap fell to zero");
        constraint.caps.emplace_back(p, std::min<uint64_t>(static_cast<uint64_t>(raw), p));
    }
    return constraint;
}

namespace {

// Bit n-1 represents the integer n in [1, N].
struct IntervalBits {
    uint64_t n = 0;
    std::vector<uint64_t> words;

    static IntervalBits all(uint64_t n) {
        IntervalBits b;
        b.n = n;
        b.words.assign((n + 63) / 64, ~uint64_t{0});
        const unsigned tail = n % 64;
        if (tail != 0) b.words.back() &= (uint64_t{1} << tail) - 1;
        return b;
    }
    static IntervalBits none(uint64_t n) {
        IntervalBits b;
        b.n = n;
        b.words.assign((n + 63) / 64, 0);
        return b;
    }
    void set(uint64_t value) { words[(value - 1) / 64] |= uint64_t{1} << ((value - 1) % 64); }
    void or_with(const IntervalBits& other) {
        for (size_t i = 0; i < words.size(); ++i) words[i] |= other.words[i];
    }
    void and_with(const IntervalBits& other) {
        for (size_t i = 0; i < words.size(); ++i) words[i] &= other.words[i];
    }
    uint64_t count() const {
        uint64_t total = 0;
        for (uint64_t w : words) total += static_cast<uint64_t>(__builtin_popcountll(w));
        return total;
    }
    std::vector<uint64_t> values() const {
        std::vector<uint64_t> out;
        for (size_t w = 0; w < words.size(); ++w) {
            uint64_t bits = words[w];
            while (bits) {
                out.push_back(w * 64 + static_cast<unsigned>(__builtin_ctzll(bits)) + 1);
                bits &= bits - 1;
            }
        }
        return out;
    }
};

struct ConstraintMasks {
    uint64_t p;
    uint64_t cap;
    std::vector<IntervalBits> classes;  // classes[r] = {n in [1,N] : n = r mod p}
};

std::vector<ConstraintMasks> build_masks(const SearchConstraint& constraint) {
    std::vector<ConstraintMasks> masks;
    for (const auto& [p, cap] : constraint.caps) {
        ConstraintMasks m{p, cap, {}};
        m.classes.assign(p, IntervalBits::none(constraint.N));
        for (uint64_t n = 1; n <= constraint.N; ++n) m.classes[n % p].set(n);
        masks.push_back(std::move(m));
    }
    return masks;
}

IntervalBits union_of_classes(const ConstraintMasks& mask,
                              const std::vector<uint64_t>& classes) {
    IntervalBits u = IntervalBits::none(mask.classes.front().n);
    for (uint64_t r : classes) u.or_with(mask.classes[r]);
    return u;
}

// Depth-first exact enumeration over class choices, primes in the given
// order, classes within a prime in descending fiber order. Stops expanding
// once the node budget runs out.
struct ClassSearch {
    const std::vector<ConstraintMasks>& masks;
    const std::vector<size_t>& order;  // indices into masks, most constraining first
    uint64_t budget;
    bool exhausted = false;
    uint64_t best_count = 0;
    std::vector<std::vector<uint64_t>> best_choice;
    std::vector<std::vector<uint64_t>> current;

    ClassSearch(const std::vector<ConstraintMasks>& masks_,
                const std::vector<size_t>& order_, uint64_t budget_)
        : masks(masks_), order(order_), budget(budget_) {
        current.resize(masks.size());
    }

    void run(const IntervalBits& start) { descend(0, start); }

    void descend(size_t level, const IntervalBits& candidate) {
        if (level == order.size()) {
            const uint64_t count = candidate.count();
            if (count > best_count) {
                best_count = count;
                best_choice = current;
            }
            return;
        }
        if (budget == 0) {
            exhausted = true;
            return;
        }
        --budget;

        const ConstraintMasks& mask = masks[order[level]];
        // Fiber sizes of the current candidate set mod p.
        std::vector<std::pair<uint64_t, uint64_t>> fibers;  // (count, class)
        fibers.reserve(mask.p);
        for (uint64_t r = 0; r < mask.p; ++r) {
            IntervalBits piece = mask.classes[r];
            piece.and_with(candidate);
            fibers.emplace_back(piece.count(), r);
        }
        std::sort(fibers.begin(), fibers.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second < b.second;
        });

        std::vector<uint64_t> prefix(fibers.size() + 1, 0);
        for (size_t i = 0; i < fibers.size(); ++i)
            prefix[i + 1] = prefix[i] + fibers[i].first;

        std::vector<uint64_t> chosen;
        choose(level, candidate, mask, fibers, prefix, 0, chosen, 0);
    }

    // Choose mask.cap classes from `fibers` starting at index `from`;
    // `covered` is the fiber mass already picked at this level.
    void choose(size_t level, const IntervalBits& candidate, const ConstraintMasks& mask,
                const std::vector<std::pair<uint64_t, uint64_t>>& fibers,
                const std::vector<uint64_t>& prefix, size_t from,
                std::vector<uint64_t>& chosen, uint64_t covered) {
        if (exhausted) return;
        if (chosen.size() == mask.cap || covered == candidate.count()) {
            if (covered <= best_count) return;  // later primes only shrink
            IntervalBits next = union_of_classes(mask, chosen);
            next.and_with(candidate);
            current[order[level]] = chosen;
            descend(level + 1, next);
            return;
        }
        const uint64_t remaining_slots = mask.cap - chosen.size();
        for (size_t i = from; i + remaining_slots <= fibers.size(); ++i) {
            // Optimistic mass with the best remaining classes; prune early.
            const uint64_t optimistic =
                covered + (prefix[std::min(fibers.size(), i + remaining_slots)] - prefix[i]);
            if (optimistic <= best_count) break;
            if (budget == 0) {
                exhausted = true;
                return;
            }
            --budget;
            chosen.push_back(fibers[i].second);
            choose(level, candidate, mask, fibers, prefix, i + 1, chosen,
                   covered + fibers[i].first);
            chosen.pop_back();
        }
    }
};

// One coordinate-ascent pass: for each prime, re-pick the cap classes with
// the largest fibers of the context (everything else held fixed).
bool ascent_pass(const std::vector<ConstraintMasks>& masks,
                 const std::vector<size_t>& order,
                 std::vector<std::vector<uint64_t>>& choice, const IntervalBits& base) {
    bool improved = false;
    for (size_t idx : order) {
        const ConstraintMasks& mask = masks[idx];
        IntervalBits context = base;
        for (size_t other = 0; other < masks.size(); ++other) {
            if (other == idx) continue;
            IntervalBits u = union_of_classes(masks[other], choice[other]);
            context.and_with(u);
        }
        std::vector<std::pair<uint64_t, uint64_t>> fibers;
        fibers.reserve(mask.p);
        for (uint64_t r = 0; r < mask.p; ++r) {
            IntervalBits piece = mask.classes[r];
            piece.and_with(context);
            fibers.emplace_back(piece.count(), r);
        }
        std::sort(fibers.begin(), fibers.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second < b.second;
        });
        std::vector<uint64_t> pick;
        for (uint64_t i = 0; i < mask.cap && i < fibers.size(); ++i)
            pick.push_back(fibers[i].second);
        std::sort(pick.begin(), pick.end());
        std::vector<uint64_t> old_sorted = choice[idx];
        std::sort(old_sorted.begin(), old_sorted.end());
        if (pick != old_sorted) {
            uint64_t before = 0, after = 0;
            {
                IntervalBits u = union_of_classes(mask, choice[idx]);
                u.and_with(context);
                before = u.count();
                IntervalBits v = union_of_classes(mask, pick);
                v.and_with(context);
                after = v.count();
            }
            if (after > before) {
                choice[idx] = pick;
                improved = true;
            }
        }
    }
    return improved;
}

uint64_t evaluate_choice(const std::vector<ConstraintMasks>& masks,
                         const std::vector<std::vector<uint64_t>>& choice,
                         const IntervalBits& base, IntervalBits* out = nullptr) {
    IntervalBits candidate = base;
    for (size_t i = 0; i < masks.size(); ++i) {
        IntervalBits u = union_of_classes(masks[i], choice[i]);
        candidate.and_with(u);
    }
    if (out) *out = candidate;
    return candidate.count();
}

}  // namespace

SearchResult extremal_search(const SearchConstraint& constraint, uint64_t budget,
                             uint64_t seed) {
    if (budget < 1) throw std::invalid_argument("extremal_search: budget must be >= 1");
    for (const auto& [p, cap] : constraint.caps) {
        if (!is_prime(p))
            throw std::invalid_argument("extremal_search: constraint moduli must be prime");
        if (cap < 1 || cap > p)
            throw std::invalid_argument("extremal_search: caps must lie in [1, p]");
    }

    const IntervalBits base = IntervalBits::all(constraint.N);
    SearchResult result{IntegerSet(constraint.N, {}), {}, false, false, {}, ""};

    // Gallagher cap computed from the caps themselves: any feasible A obeys it.
    {
        double log_sum = 0.0, weighted = 0.0;
        for (const auto& [p, cap] : constraint.caps) {
            const double lp = std::log(static_cast<double>(p));
            log_sum += lp;
            weighted += lp / static_cast<double>(cap);
        }
        const double logN = std::log(static_cast<double>(constraint.N));
        if (weighted - logN > 0.0)
            result.sieve_cap = (log_sum - logN) / (weighted - logN);
    }

    if (constraint.caps.empty()) {
        result.best = IntegerSet::range(constraint.N);
        result.exhaustive = true;
        result.certified = true;
        result.method = "unconstrained";
        return result;
    }

    const std::vector<ConstraintMasks> masks = build_masks(constraint);
    std::vector<size_t> order(masks.size());
    std::iota(order.begin(), order.end(), size_t{0});
    // Most constraining prime first: largest p (smallest cap fraction).
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return masks[a].p > masks[b].p;
    });

    // Subset-combination count in log space decides whether exact
    // enumeration is affordable.
    double log_nodes = 0.0;
    for (const auto& mask : masks) {
        double log_binom = 0.0;
        for (uint64_t i = 0; i < mask.cap; ++i)
            log_binom += std::log(static_cast<double>(mask.p - i)) -
                         std::log(static_cast<double>(i + 1));
        log_nodes += log_binom;
    }

    std::vector<std::vector<uint64_t>> best_choice;
    uint64_t best_count = 0;
    bool exact = false;

    if (log_nodes <= std::log(5e5)) {
        ClassSearch search(masks, order, UINT64_MAX);
        search.run(base);
        best_choice = search.best_choice;
        best_count = search.best_count;
        exact = true;
        result.method = "exhaustive";
    } else {
        ClassSearch search(masks, order, budget);
        search.run(base);
        best_choice = search.best_choice;
        best_count = search.best_count;
        exact = !search.exhausted;
        result.method = exact ? "branch_and_bound" : "branch_and_bound+local";
    }

    if (!exact) {
        // Structured seeds plus randomized restarts, refined by coordinate
        // ascent over one prime at a time.
        std::vector<std::vector<std::vector<uint64_t>>> seeds;
        {
            std::vector<std::vector<uint64_t>> interval(masks.size());
            for (size_t i = 0; i < masks.size(); ++i)
                for (uint64_t r = 0; r < masks[i].cap; ++r) interval[i].push_back(r);
            seeds.push_back(std::move(interval));
        }
        for (int d = 2; d <= 6; ++d) {
            std::vector<std::vector<uint64_t>> powers(masks.size());
            bool fits = true;
            for (size_t i = 0; i < masks.size(); ++i) {
                const auto klasses =
                    value_set_mod(PolySpec::monomial(d), masks[i].p).members();
                if (klasses.size() > masks[i].cap) {
                    fits = false;
                    break;
                }
                powers[i] = klasses;
                for (uint64_t r = 0; powers[i].size() < masks[i].cap && r < masks[i].p; ++r)
                    if (!std::binary_search(klasses.begin(), klasses.end(), r))
                        powers[i].push_back(r);
            }
            if (fits) seeds.push_back(std::move(powers));
        }
        if (!best_choice.empty()) seeds.push_back(best_choice);

        Rng rng(seed);
        uint64_t passes_left = budget;
        auto climb = [&](std::vector<std::vector<uint64_t>> choice) {
            while (passes_left > 0) {
                --passes_left;
                if (!ascent_pass(masks, order, choice, base)) break;
            }
            const uint64_t count = evaluate_choice(masks, choice, base);
            if (count > best_count) {
                best_count = count;
                best_choice = choice;
            }
        };
        for (const auto& s : seeds) climb(s);
        while (passes_left > 0) {
            // Random restart: perturb the incumbent at a few primes.
            std::vector<std::vector<uint64_t>> choice =
                best_choice.empty() ? seeds.front() : best_choice;
            for (int swaps = 0; swaps < 3; ++swaps) {
                const size_t i = rng.below(masks.size());
                if (choice[i].size() < masks[i].p) {
                    const size_t victim = rng.below(choice[i].size());
                    uint64_t replacement = rng.below(masks[i].p);
                    while (std::find(choice[i].begin(), choice[i].end(), replacement) !=
                           choice[i].end())
                        replacement = (replacement + 1) % masks[i].p;
                    choice[i][victim] = replacement;
                }
            }
            climb(choice);
        }
    }

    IntervalBits final_bits = base;
    if (!best_choice.empty()) evaluate_choice(masks, best_choice, base, &final_bits);
    result.best = IntegerSet(constraint.N, final_bits.values());
    result.exhaustive = exact;

    // Certificate: recount every cap from scratch on the returned set.
    result.certified = true;
    for (const auto& [p, cap] : constraint.caps) {
        SearchCertificateRow row;
        row.p = p;
        row.cap = cap;
        row.count = residue_count(result.best, p);
        row.ok = row.count <= cap;
        result.certified = result.certified && row.ok;
        result.certificate.push_back(row);
    }
    return result;
}

}  // namespace sievelab
