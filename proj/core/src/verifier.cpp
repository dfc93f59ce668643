#include "fpl/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace fpl::verify {

// ---------------------------------------------------------------------------
// range and report plumbing

void RangeSpec::validate() const
{
    if (x_min < 1 || y_min < 1) throw std::invalid_argument("range bounds must be positive integers");
    if (x_min > x_max || y_min > y_max) throw std::invalid_argument("empty range");
    if (case_mask == 0) throw std::invalid_argument("case filter excludes every case");
}

namespace {

struct KindCounts {
    std::uint64_t one = 0;
    std::uint64_t even = 0;
    std::uint64_t odd = 0; // odd >= 3

    [[nodiscard]] std::uint64_t of(PointKind k) const
    {
        return k == PointKind::one ? one : (k == PointKind::even ? even : odd);
    }
};

KindCounts count_kinds(std::int64_t lo, std::int64_t hi)
{
    KindCounts c;
    c.one = (lo <= 1 && 1 <= hi) ? 1 : 0;
    c.even = static_cast<std::uint64_t>(hi / 2 - (lo - 1) / 2);
    c.odd = static_cast<std::uint64_t>(hi - lo + 1) - c.even - c.one;
    return c;
}

std::string pair_str(Int x, Int y) { return "(" + to_string(x) + ", " + to_string(y) + ")"; }

bool pair_less(const std::pair<Int, Int>& a, const std::pair<Int, Int>& b) { return a < b; }

void keep_earliest(std::optional<std::pair<Int, Int>>& slot, const std::optional<std::pair<Int, Int>>& other)
{
    if (other && (!slot || pair_less(*other, *slot))) slot = other;
}

template <class T>
bool merge_distinct(std::set<T>& into, const std::set<T>& from)
{
    into.insert(from.begin(), from.end());
    bool cut = false;
    while (into.size() > kDistinctLimit) {
        into.erase(std::prev(into.end()));
        cut = true;
    }
    return cut;
}

template <class T>
bool insert_distinct(std::set<T>& into, const T& v)
{
    if (into.size() >= kDistinctLimit && !(v < *into.rbegin())) return into.count(v) == 0;
    into.insert(v);
    if (into.size() > kDistinctLimit) {
        into.erase(std::prev(into.end()));
        return true;
    }
    return false;
}

std::int64_t elapsed_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

std::uint64_t RangeSpec::cardinality() const
{
    validate();
    const KindCounts xs = count_kinds(x_min, x_max);
    const KindCounts ys = count_kinds(y_min, y_max);
    std::uint64_t total = 0;
    for (ParityCase c : kAllParityCases) {
        if (!includes(c)) continue;
        int i = static_cast<int>(c);
        total += xs.of(static_cast<PointKind>(i / 3)) * ys.of(static_cast<PointKind>(i % 3));
    }
    return total;
}

std::uint16_t case_mask_of(const std::vector<ParityCase>& cases)
{
    if (cases.empty()) return kAllCases;
    std::uint16_t mask = 0;
    for (ParityCase c : cases) mask |= static_cast<std::uint16_t>(1u << index_of(c));
    return mask;
}

std::string_view name_of(ViolationKind k)
{
    switch (k) {
    case ViolationKind::lhs_positive: return "lhs>0";
    case ViolationKind::cross_mismatch: return "cross-mismatch";
    case ViolationKind::bound_exceeded: return "bound-exceeded";
    case ViolationKind::triangle_gap: return "triangle-gap";
    case ViolationKind::blend_identity: return "blend-identity";
    case ViolationKind::blend_sign: return "blend-sign";
    case ViolationKind::decay: return "decay";
    case ViolationKind::telescoped: return "telescoped";
    case ViolationKind::weight_bound: return "weight-bound";
    case ViolationKind::cap_exceeded: break;
    }
    return "cap-exceeded";
}

bool operator<(const Violation& a, const Violation& b)
{
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    if (a.quantity != b.quantity) return a.quantity < b.quantity;
    if (a.detail != b.detail) return a.detail < b.detail;
    return a.value < b.value;
}

void CaseTally::observe(const Rational& v, Int x, Int y)
{
    std::pair<Int, Int> at{x, y};
    if (!observed) {
        observed = v;
        observed_at = at;
        return;
    }
    bool better = extreme == Extreme::max ? v > *observed : v < *observed;
    if (better || (v == *observed && pair_less(at, *observed_at))) {
        observed = v;
        observed_at = at;
    }
}

void CaseTally::merge(const CaseTally& other)
{
    if (other.label != label) throw std::logic_error("merging tallies of different cells: " + label);
    count += other.count;
    violations += other.violations;
    if (other.observed) observe(*other.observed, other.observed_at->first, other.observed_at->second);
}

const CaseTally* VerificationReport::tally(std::string_view label) const
{
    for (const auto& t : per_case) {
        if (t.label == label) return &t;
    }
    return nullptr;
}

void VerificationReport::add_violation(Violation v)
{
    ++violations_total;
    if (violation_limit == 0) return;
    if (violations.size() >= violation_limit && !(v < violations.back())) return;
    violations.insert(std::upper_bound(violations.begin(), violations.end(), v), std::move(v));
    if (violations.size() > violation_limit) violations.pop_back();
}

void VerificationReport::merge(const VerificationReport& other)
{
    if (other.per_case.size() != per_case.size()) throw std::logic_error("merging reports of different shape");
    range.x_min = std::min(range.x_min, other.range.x_min);
    range.x_max = std::max(range.x_max, other.range.x_max);
    range.y_min = std::min(range.y_min, other.range.y_min);
    range.y_max = std::max(range.y_max, other.range.y_max);
    pairs_checked += other.pairs_checked;
    for (std::size_t i = 0; i < per_case.size(); ++i) per_case[i].merge(other.per_case[i]);
    std::vector<Violation> all;
    all.reserve(violations.size() + other.violations.size());
    std::merge(violations.begin(), violations.end(), other.violations.begin(), other.violations.end(),
               std::back_inserter(all));
    violation_limit = std::min(violation_limit, other.violation_limit);
    if (all.size() > violation_limit) all.resize(violation_limit);
    violations = std::move(all);
    violations_total += other.violations_total;
    elapsed_ms = std::max(elapsed_ms, other.elapsed_ms);
}

bool equivalent(const VerificationReport& a, const VerificationReport& b)
{
    return a.check == b.check && a.range == b.range && a.pairs_checked == b.pairs_checked &&
           a.per_case == b.per_case && a.violations == b.violations && a.violations_total == b.violations_total;
}

// ---------------------------------------------------------------------------
// partition-and-merge driver

namespace {

constexpr std::uint64_t kProgressStride = 1'000'000;

class Progress {
public:
    explicit Progress(const std::function<void(std::uint64_t)>& cb) : cb_(cb) {}

    void add(std::uint64_t n)
    {
        if (!cb_) return;
        std::uint64_t before = done_.fetch_add(n);
        if ((before + n) / kProgressStride != before / kProgressStride) {
            std::lock_guard lock(mu_);
            cb_(before + n);
        }
    }

private:
    const std::function<void(std::uint64_t)>& cb_;
    std::atomic<std::uint64_t> done_{0};
    std::mutex mu_;
};

// Splits the x rows of `range` into blocks, runs `block` on each (in
// parallel when jobs > 1) and merges the results in block order.
template <class Report, class BlockFn>
Report run_blocks(const RangeSpec& range, const SweepOptions& opts, BlockFn&& block)
{
    const std::int64_t rows = range.x_max - range.x_min + 1;
    const unsigned jobs = std::max(1u, opts.jobs);
    const std::int64_t blocks = jobs == 1 ? 1 : std::min<std::int64_t>(rows, static_cast<std::int64_t>(jobs) * 4);

    std::vector<std::optional<Report>> results(static_cast<std::size_t>(blocks));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(blocks));
    std::atomic<std::int64_t> next{0};

    auto work = [&] {
        for (;;) {
            const std::int64_t i = next.fetch_add(1);
            if (i >= blocks) return;
            RangeSpec sub = range;
            sub.x_min = range.x_min + i * rows / blocks;
            sub.x_max = range.x_min + (i + 1) * rows / blocks - 1;
            try {
                results[static_cast<std::size_t>(i)] = block(sub);
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
    };

    const unsigned threads = static_cast<unsigned>(std::min<std::int64_t>(jobs, blocks));
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    Report out = std::move(*results.front());
    for (std::size_t i = 1; i < results.size(); ++i) out.merge(*results[i]);
    return out;
}

[[noreturn]] void rethrow_at(const OverflowError& e, Int x, Int y)
{
    throw OverflowError(std::string(e.what()) + " while evaluating pair " + pair_str(x, y));
}

VerificationReport empty_report(std::string check, const RangeSpec& range, const SweepOptions& opts)
{
    VerificationReport r;
    r.check = std::move(check);
    r.range = range;
    r.violation_limit = opts.violation_limit;
    return r;
}

std::vector<CaseTally> bound_cell_tallies(std::string_view statistic, bool with_bounds)
{
    std::vector<CaseTally> out;
    for (std::size_t i = 0; i < weights::kBoundCellCount; ++i) {
        CaseTally t;
        t.label = std::string(weights::name_of(static_cast<weights::BoundCell>(i)));
        t.statistic = statistic;
        if (with_bounds) t.bound = Rational(weights::bound_of(static_cast<weights::BoundCell>(i)));
        out.push_back(std::move(t));
    }
    return out;
}

// Hot-loop accumulator for integer statistics per cell, folded into the
// report's tallies once per block.
struct IntCellStats {
    std::uint64_t count = 0;
    bool seen = false;
    Int best = 0;
    Int at_x = 0;
    Int at_y = 0;

    void observe_max(Int v, Int x, Int y)
    {
        ++count;
        if (!seen || v > best) {
            seen = true;
            best = v;
            at_x = x;
            at_y = y;
        }
    }

    void fold_into(CaseTally& t) const
    {
        t.count += count;
        if (seen) t.observe(Rational(best), at_x, at_y);
    }
};

const weights::WeightTable kWeights{};

Int accel(Int x) { return collatz::accelerated_step(x); }

} // namespace

// ---------------------------------------------------------------------------
// pair sweeps

VerificationReport verify_pseudocontraction(const RangeSpec& range, const SweepOptions& opts,
                                            const PseudocontractionChecks& checks)
{
    range.validate();
    const auto start = std::chrono::steady_clock::now();
    Progress progress(opts.progress);
    const std::string check = checks.route == LhsRoute::direct ? "pseudocontraction" : "pseudocontraction-simplified";

    auto block = [&](const RangeSpec& sub) {
        VerificationReport r = empty_report(check, sub, opts);
        r.per_case = bound_cell_tallies("max lhs", true);
        std::array<IntCellStats, weights::kBoundCellCount> stats{};
        Int x = 0;
        Int y = 0;
        try {
            for (x = sub.x_min; x <= sub.x_max; ++x) {
                std::uint64_t row = 0;
                for (y = sub.y_min; y <= sub.y_max; ++y) {
                    const ParityCase pc = parity_case(x, y);
                    if (!sub.includes(pc)) continue;
                    ++row;
                    Int v;
                    weights::BoundCell cell;
                    if (checks.route == LhsRoute::direct) {
                        v = lhs(kWeights, accel, x, y);
                        cell = weights::bound_cell(weights::classify(x, y));
                    } else {
                        auto cf = weights::closed_form(x, y);
                        v = cf.value;
                        cell = cf.cell;
                    }
                    const auto ci = static_cast<std::size_t>(cell);
                    stats[ci].observe_max(v, x, y);
                    if (checks.nonpositive && v > 0) {
                        ++r.per_case[ci].violations;
                        r.add_violation({x, y, pc, ViolationKind::lhs_positive, Rational(v), ""});
                    }
                    const Int bound = weights::bound_of(cell);
                    if (checks.sharpened_bound && v > bound) {
                        ++r.per_case[ci].violations;
                        r.add_violation({x, y, pc, ViolationKind::bound_exceeded, Rational(v),
                                         "bound " + to_string(bound)});
                    }
                }
                r.pairs_checked += row;
                progress.add(row);
            }
        } catch (const OverflowError& e) {
            rethrow_at(e, x, y);
        }
        for (std::size_t i = 0; i < stats.size(); ++i) stats[i].fold_into(r.per_case[i]);
        return r;
    };

    auto report = run_blocks<VerificationReport>(range, opts, block);
    report.elapsed_ms = elapsed_since(start);
    return report;
}

VerificationReport cross_check_simplified(const RangeSpec& range, const SweepOptions& opts)
{
    range.validate();
    const auto start = std::chrono::steady_clock::now();
    Progress progress(opts.progress);

    auto block = [&](const RangeSpec& sub) {
        VerificationReport r = empty_report("cross-check", sub, opts);
        r.per_case = bound_cell_tallies("max lhs", false);
        std::array<IntCellStats, weights::kBoundCellCount> stats{};
        Int x = 0;
        Int y = 0;
        try {
            for (x = sub.x_min; x <= sub.x_max; ++x) {
                std::uint64_t row = 0;
                for (y = sub.y_min; y <= sub.y_max; ++y) {
                    const ParityCase pc = parity_case(x, y);
                    if (!sub.includes(pc)) continue;
                    ++row;
                    const Int direct = lhs(kWeights, accel, x, y);
                    const auto cf = weights::closed_form(x, y);
                    const auto ci = static_cast<std::size_t>(cf.cell);
                    stats[ci].observe_max(direct, x, y);
                    if (cf.value != direct) {
                        ++r.per_case[ci].violations;
                        r.add_violation({x, y, pc, ViolationKind::cross_mismatch,
                                         Rational(checked::sub(cf.value, direct)),
                                         "direct " + to_string(direct) + ", " + std::string(cf.formula) + " = " +
                                             to_string(cf.value)});
                    }
                }
                r.pairs_checked += row;
                progress.add(row);
            }
        } catch (const OverflowError& e) {
            rethrow_at(e, x, y);
        }
        for (std::size_t i = 0; i < stats.size(); ++i) stats[i].fold_into(r.per_case[i]);
        return r;
    };

    auto report = run_blocks<VerificationReport>(range, opts, block);
    report.elapsed_ms = elapsed_since(start);
    return report;
}

VerificationReport verify_weight_bound(const RangeSpec& range, const Rational& M, const SweepOptions& opts)
{
    range.validate();
    if (!(M > 0)) throw std::invalid_argument("M must be positive");
    const auto start = std::chrono::steady_clock::now();
    Progress progress(opts.progress);
    static constexpr std::array<const char*, 6> kNames = {"alpha", "beta", "gamma", "delta", "epsilon", "zeta"};
    const Int m_floor = M.num() / M.den(); // |w| <= M iff |w| <= floor(M) for integer w

    auto block = [&](const RangeSpec& sub) {
        VerificationReport r = empty_report("weight-bound", sub, opts);
        for (ParityCase c : kAllParityCases) {
            CaseTally t;
            t.label = std::string(name_of(c));
            t.statistic = "max |w|";
            t.bound = M;
            r.per_case.push_back(std::move(t));
        }
        std::array<IntCellStats, kParityCaseCount> stats{};
        for (Int x = sub.x_min; x <= sub.x_max; ++x) {
            std::uint64_t row = 0;
            for (Int y = sub.y_min; y <= sub.y_max; ++y) {
                const ParityCase pc = parity_case(x, y);
                if (!sub.includes(pc)) continue;
                ++row;
                const WeightVector w = weights::weight_vector(x, y);
                const std::array<Int, 6> ws = {w.alpha, w.beta, w.gamma, w.delta, w.epsilon, w.zeta};
                Int worst = 0;
                for (std::size_t i = 0; i < ws.size(); ++i) {
                    const Int a = checked::abs(ws[i]);
                    worst = std::max(worst, a);
                    if (a > m_floor) {
                        ++r.per_case[index_of(pc)].violations;
                        r.add_violation({x, y, pc, ViolationKind::weight_bound, Rational(a), kNames[i]});
                    }
                }
                stats[index_of(pc)].observe_max(worst, x, y);
            }
            r.pairs_checked += row;
            progress.add(row);
        }
        for (std::size_t i = 0; i < stats.size(); ++i) stats[i].fold_into(r.per_case[i]);
        return r;
    };

    auto report = run_blocks<VerificationReport>(range, opts, block);
    report.elapsed_ms = elapsed_since(start);
    return report;
}

VerificationReport verify_lemmas(const RangeSpec& range, const std::vector<Rational>& thetas,
                                 const std::vector<LambdaSpec>& lambdas, const SweepOptions& opts)
{
    range.validate();
    const auto start = std::chrono::steady_clock::now();
    Progress progress(opts.progress);

    auto block = [&](const RangeSpec& sub) {
        VerificationReport r = empty_report("lemmas", sub, opts);
        for (const auto& theta : thetas) {
            CaseTally t;
            t.label = "triangle theta=" + theta.str();
            t.statistic = "min gap";
            t.extreme = Extreme::min;
            t.bound = Rational(0);
            r.per_case.push_back(std::move(t));
        }
        for (const auto& lam : lambdas) {
            CaseTally t;
            t.label = "blend lambda=" + lam.str();
            t.statistic = "max blended lhs";
            t.bound = Rational(0);
            r.per_case.push_back(std::move(t));
        }

        Int x = 0;
        Int y = 0;
        try {
            // triangle gap over triples drawn from [x_min, x_max] of the full range
            std::vector<std::optional<Rational>> min_gap(thetas.size());
            std::vector<std::pair<Int, Int>> min_at(thetas.size());
            for (x = sub.x_min; x <= sub.x_max; ++x) {
                std::uint64_t row = 0;
                for (y = range.x_min; y <= range.x_max; ++y) {
                    for (Int z = range.x_min; z <= range.x_max; ++z) {
                        for (std::size_t i = 0; i < thetas.size(); ++i) {
                            ++row;
                            const Rational gap = lemma1_gap(thetas[i], x, y, z);
                            if (!min_gap[i] || gap < *min_gap[i]) {
                                min_gap[i] = gap;
                                min_at[i] = {x, y};
                            }
                            if (gap.sign() < 0) {
                                ++r.per_case[i].violations;
                                r.add_violation({x, y, parity_case(x, y), ViolationKind::triangle_gap, gap,
                                                 "z=" + to_string(z) + " theta=" + thetas[i].str()});
                            }
                        }
                    }
                }
                for (std::size_t i = 0; i < thetas.size(); ++i) r.per_case[i].count += row / thetas.size();
                r.pairs_checked += row;
                progress.add(row);
            }
            for (std::size_t i = 0; i < thetas.size(); ++i) {
                if (min_gap[i]) r.per_case[i].observe(*min_gap[i], min_at[i].first, min_at[i].second);
            }

            // blend identity and sign over the pairs of the sub-range
            const std::size_t base = thetas.size();
            for (x = sub.x_min; x <= sub.x_max; ++x) {
                std::uint64_t row = 0;
                for (y = sub.y_min; y <= sub.y_max; ++y) {
                    const ParityCase pc = parity_case(x, y);
                    if (!sub.includes(pc)) continue;
                    const auto dists = squared_distances(accel, x, y);
                    const Int lhs_xy = weighted_sum(kWeights(x, y), dists);
                    const Int lhs_yx = lhs(kWeights, accel, y, x);
                    for (std::size_t j = 0; j < lambdas.size(); ++j) {
                        ++row;
                        auto& tally = r.per_case[base + j];
                        ++tally.count;
                        const Rational lam = lambdas[j].at(x, y);
                        const Rational blended = weighted_sum(symmetrize(kWeights, lambdas[j], x, y), dists);
                        const Rational expected = (Rational(1) - lam) * lhs_xy + lam * lhs_yx;
                        tally.observe(blended, x, y);
                        if (blended != expected) {
                            ++tally.violations;
                            r.add_violation({x, y, pc, ViolationKind::blend_identity, blended - expected,
                                             "lambda=" + lambdas[j].str()});
                        }
                        if (blended.sign() > 0) {
                            ++tally.violations;
                            r.add_violation({x, y, pc, ViolationKind::blend_sign, blended,
                                             "lambda=" + lambdas[j].str()});
                        }
                    }
                }
                r.pairs_checked += row;
                progress.add(row);
            }
        } catch (const OverflowError& e) {
            rethrow_at(e, x, y);
        }
        return r;
    };

    auto report = run_blocks<VerificationReport>(range, opts, block);
    report.elapsed_ms = elapsed_since(start);
    return report;
}

VerificationReport orbit_decay_sweep(std::int64_t seed_min, std::int64_t seed_max, const ConditionParams& params,
                                     const SweepOptions& opts, std::uint64_t cap, ConditionFlags flags)
{
    params.validate();
    RangeSpec seeds{seed_min, seed_max, 1, 1, kAllCases};
    seeds.validate();
    const auto start = std::chrono::steady_clock::now();
    Progress progress(opts.progress);
    const WeightFunction weights_fn = kWeights;

    auto block = [&](const RangeSpec& sub) {
        VerificationReport r = empty_report("orbit-decay", sub, opts);
        CaseTally decay;
        decay.label = "decay steps";
        decay.statistic = "max d(n)^2/d(n-1)^2";
        decay.bound = params.A;
        CaseTally premise;
        premise.label = "premise failed";
        premise.statistic = "steps";
        CaseTally telescoped;
        telescoped.label = "telescoped steps";
        telescoped.statistic = "max d(n)^2/(A^n d(0)^2)";
        telescoped.bound = Rational(1);
        CaseTally orbits;
        orbits.label = "orbits";
        orbits.statistic = "max steps to fixed point";

        Int seed = 0;
        try {
            for (seed = sub.x_min; seed <= sub.x_max; ++seed) {
                ++r.pairs_checked;
                progress.add(1);
                const OrbitRecord orbit = iterate_orbit(accel, seed, cap);
                ++orbits.count;
                orbits.observe(Rational(static_cast<Int>(orbit.steps_taken)), seed, 1);
                if (!orbit.reached_fixed_point) {
                    ++orbits.violations;
                    r.add_violation({seed, 1, parity_case(seed, 1), ViolationKind::cap_exceeded,
                                     Rational(static_cast<Int>(cap)), "seed=" + to_string(seed)});
                }
                const DecayReport dr = check_orbit_decay(orbit, weights_fn, params, flags);
                const auto& pts = orbit.points;
                const auto& dsq = orbit.step_distances_squared;
                for (const DecayStep& step : dr.steps) {
                    const Int px = pts[step.n - 1];
                    const Int py = pts[step.n];
                    if (!step.premise_holds) {
                        ++premise.count;
                        continue;
                    }
                    ++decay.count;
                    if (step.previous_distance_sq > 0) {
                        decay.observe(Rational(step.distance_sq, step.previous_distance_sq), px, py);
                    }
                    if (!step.decays) {
                        ++decay.violations;
                        r.add_violation({px, py, parity_case(px, py), ViolationKind::decay,
                                         Rational(step.distance_sq),
                                         "seed=" + to_string(seed) + " n=" + std::to_string(step.n) +
                                             " previous=" + to_string(step.previous_distance_sq)});
                    }
                }

                // Telescoped bound along the premise-holding prefix. Once
                // A^n d(0)^2 < 1 it stays below 1, so only d(n) = 0 passes.
                if (dsq.empty()) continue;
                Rational bound(dsq.front());
                bool below_one = bound < 1;
                for (const DecayStep& step : dr.steps) {
                    if (!step.premise_holds) break;
                    if (!below_one) {
                        bound = bound * params.A;
                        below_one = bound < 1;
                    }
                    ++telescoped.count;
                    const Int d = dsq[step.n];
                    const bool ok = below_one ? d == 0 : Rational(d) <= bound;
                    if (!below_one && bound.sign() > 0) {
                        telescoped.observe(Rational(d) / bound, pts[step.n - 1], pts[step.n]);
                    }
                    if (!ok) {
                        ++telescoped.violations;
                        r.add_violation({pts[step.n - 1], pts[step.n], parity_case(pts[step.n - 1], pts[step.n]),
                                         ViolationKind::telescoped, Rational(d),
                                         "seed=" + to_string(seed) + " n=" + std::to_string(step.n)});
                    }
                }
            }
        } catch (const OverflowError& e) {
            throw OverflowError(std::string(e.what()) + " on the orbit of seed " + to_string(seed));
        }
        r.per_case = {decay, premise, telescoped, orbits};
        return r;
    };

    auto report = run_blocks<VerificationReport>(seeds, opts, block);
    report.elapsed_ms = elapsed_since(start);
    return report;
}

// ---------------------------------------------------------------------------
// condition coverage

void CoverageCell::merge(const CoverageCell& other)
{
    if (other.label != label) throw std::logic_error("merging coverage cells of different labels");
    pairs += other.pairs;
    first += other.first;
    mirrored += other.mirrored;
    fails += other.fails;
    m_bound_failures += other.m_bound_failures;
    keep_earliest(exemplar_first, other.exemplar_first);
    keep_earliest(exemplar_mirrored, other.exemplar_mirrored);
    keep_earliest(exemplar_fail, other.exemplar_fail);
    bool cut = other.truncated;
    cut = merge_distinct(ratios, other.ratios) || cut;
    cut = merge_distinct(b_sums, other.b_sums) || cut;
    cut = merge_distinct(masses, other.masses) || cut;
    cut = merge_distinct(weight_tuples, other.weight_tuples) || cut;
    truncated = truncated || cut;
}

std::uint64_t ConditionCoverageReport::holds() const
{
    std::uint64_t n = 0;
    for (const auto& c : cells) n += c.holds();
    return n;
}

const CoverageCell* ConditionCoverageReport::cell(std::string_view label) const
{
    for (const auto& c : cells) {
        if (c.label == label) return &c;
    }
    return nullptr;
}

void ConditionCoverageReport::merge(const ConditionCoverageReport& other)
{
    if (other.cells.size() != cells.size()) throw std::logic_error("merging coverage reports of different shape");
    range.x_min = std::min(range.x_min, other.range.x_min);
    range.x_max = std::max(range.x_max, other.range.x_max);
    range.y_min = std::min(range.y_min, other.range.y_min);
    range.y_max = std::max(range.y_max, other.range.y_max);
    pairs_checked += other.pairs_checked;
    for (std::size_t i = 0; i < cells.size(); ++i) cells[i].merge(other.cells[i]);
    elapsed_ms = std::max(elapsed_ms, other.elapsed_ms);
}

bool equivalent(const ConditionCoverageReport& a, const ConditionCoverageReport& b)
{
    return a.params == b.params && a.condition == b.condition && a.flags == b.flags && a.range == b.range &&
           a.pairs_checked == b.pairs_checked && a.cells == b.cells;
}

namespace {

std::vector<CoverageCell> coverage_cells()
{
    std::vector<CoverageCell> cells;
    for (ParityCase c : kAllParityCases) {
        if (c == ParityCase::odd_odd) continue;
        CoverageCell cell;
        cell.label = std::string(name_of(c));
        cell.kind = c;
        cells.push_back(std::move(cell));
    }
    for (bool ge : {true, false}) {
        CoverageCell cell;
        cell.label = ge ? "odd-odd x>=y" : "odd-odd x<y";
        cell.kind = ParityCase::odd_odd;
        cell.x_at_least_y = ge;
        cells.push_back(std::move(cell));
    }
    return cells;
}

std::size_t coverage_index(ParityCase pc, Int x, Int y)
{
    if (pc != ParityCase::odd_odd) return index_of(pc);
    return x >= y ? 8 : 9;
}

} // namespace

ConditionCoverageReport condition_coverage(const RangeSpec& range, const ConditionParams& params,
                                           ConditionId condition, ConditionFlags flags, const SweepOptions& opts)
{
    range.validate();
    params.validate();
    if (!condition.valid()) throw std::invalid_argument("unknown condition: " + condition.str());
    const auto start = std::chrono::steady_clock::now();
    Progress progress(opts.progress);

    auto block = [&](const RangeSpec& sub) {
        ConditionCoverageReport r;
        r.params = params;
        r.condition = condition;
        r.flags = flags;
        r.range = sub;
        r.cells = coverage_cells();
        Int x = 0;
        Int y = 0;
        try {
            for (x = sub.x_min; x <= sub.x_max; ++x) {
                std::uint64_t row = 0;
                for (y = sub.y_min; y <= sub.y_max; ++y) {
                    const ParityCase pc = parity_case(x, y);
                    if (!sub.includes(pc)) continue;
                    ++row;
                    CoverageCell& cell = r.cells[coverage_index(pc, x, y)];
                    ++cell.pairs;
                    const WeightVector w = weights::weight_vector(x, y);
                    cell.truncated = insert_distinct(cell.weight_tuples, std::array<Int, 6>{w.alpha, w.beta, w.gamma,
                                                                                         w.delta, w.epsilon, w.zeta}) ||
                                     cell.truncated;
                    const ConditionOutcome out = check_condition(condition, kWeights, params, x, y, flags);
                    if (out.m_bound_ok && !*out.m_bound_ok) ++cell.m_bound_failures;
                    const std::pair<Int, Int> at{x, y};
                    if (!out.holds) {
                        ++cell.fails;
                        keep_earliest(cell.exemplar_fail, at);
                        continue;
                    }
                    if (out.branch == Branch::mirrored) {
                        ++cell.mirrored;
                        keep_earliest(cell.exemplar_mirrored, at);
                    } else {
                        ++cell.first;
                        keep_earliest(cell.exemplar_first, at);
                    }
                    if (condition.number == 5) {
                        const BranchWitness& bw = out.branch == Branch::mirrored ? out.mirrored : out.first;
                        bool cut = insert_distinct(cell.ratios, *bw.ratio);
                        cut = insert_distinct(cell.b_sums, bw.b_sum) || cut;
                        cut = insert_distinct(cell.masses, std::pair{bw.positive_mass, bw.offset_mass}) || cut;
                        cell.truncated = cell.truncated || cut;
                    }
                }
                r.pairs_checked += row;
                progress.add(row);
            }
        } catch (const OverflowError& e) {
            rethrow_at(e, x, y);
        }
        return r;
    };

    auto report = run_blocks<ConditionCoverageReport>(range, opts, block);
    report.elapsed_ms = elapsed_since(start);
    return report;
}

// ---------------------------------------------------------------------------
// lambda search

namespace {

std::vector<Rational> lambda_grid(unsigned q)
{
    if (q == 0) return {Rational(0)};
    std::vector<Rational> g;
    for (unsigned i = 0; i <= q; ++i) g.emplace_back(static_cast<Int>(i), static_cast<Int>(q));
    return g;
}

void validate_search(const LambdaSearchOptions& o)
{
    if (o.a_grid.empty()) throw std::invalid_argument("the A grid is empty");
    if (!o.condition.valid()) throw std::invalid_argument("unknown condition: " + o.condition.str());
    for (const auto& a : o.a_grid) {
        ConditionParams p;
        p.A = a;
        p.B = o.B;
        p.M = o.M;
        p.validate();
    }
}

bool holds_with(const LambdaSearchOptions& o, const ConditionParams& p, Int x, Int y, const Rational& lam_xy,
                const Rational& lam_yx)
{
    ConditionInputs in{weights::weight_vector(x, y), weights::weight_vector(y, x), lam_xy, lam_yx};
    return evaluate_condition(o.condition, in, p, o.flags).holds;
}

// Pairs depend only on lambda at their own case and at the mirrored case,
// so the nine per-case values split into independent groups.
const std::vector<std::vector<ParityCase>> kGroups = {
    {ParityCase::one_one},
    {ParityCase::one_even, ParityCase::even_one},
    {ParityCase::one_odd, ParityCase::odd_one},
    {ParityCase::even_even},
    {ParityCase::even_odd, ParityCase::odd_even},
    {ParityCase::odd_odd},
};

} // namespace

std::uint64_t count_covered(const RangeSpec& range, const LambdaSpec::Table& lambda, const Rational& A,
                            const LambdaSearchOptions& options)
{
    range.validate();
    ConditionParams p;
    p.lambda = LambdaSpec::per_case(lambda);
    p.A = A;
    p.B = options.B;
    p.M = options.M;
    p.validate();
    std::uint64_t covered = 0;
    for (Int x = range.x_min; x <= range.x_max; ++x) {
        for (Int y = range.y_min; y <= range.y_max; ++y) {
            const ParityCase pc = parity_case(x, y);
            if (!range.includes(pc)) continue;
            if (holds_with(options, p, x, y, lambda[index_of(pc)], lambda[index_of(mirrored(pc))])) ++covered;
        }
    }
    return covered;
}

LambdaSearchResult search_lambda(const RangeSpec& range, const LambdaSearchOptions& options)
{
    range.validate();
    validate_search(options);

    LambdaSearchResult res;
    res.q = options.q;
    res.condition = options.condition;
    res.flags = options.flags;
    res.B = options.B;
    res.M = options.M;
    res.range = range;
    res.a_grid = options.a_grid;
    std::sort(res.a_grid.begin(), res.a_grid.end());
    res.a_grid.erase(std::unique(res.a_grid.begin(), res.a_grid.end()), res.a_grid.end());
    res.best_lambda.fill(Rational(0));
    res.best_A = res.a_grid.front();

    std::array<std::vector<std::pair<std::int64_t, std::int64_t>>, kParityCaseCount> pairs_of;
    for (std::int64_t x = range.x_min; x <= range.x_max; ++x) {
        for (std::int64_t y = range.y_min; y <= range.y_max; ++y) {
            const ParityCase pc = parity_case(x, y);
            if (range.includes(pc)) pairs_of[index_of(pc)].emplace_back(x, y);
        }
    }
    for (const auto& v : pairs_of) res.pairs += v.size();

    const std::vector<Rational> grid = lambda_grid(options.q);
    std::array<std::uint64_t, kParityCaseCount> best_in_case{};
    bool exhausted = false;

    struct Candidate {
        std::uint64_t covered = 0;
        LambdaSpec::Table lambda;
    };
    std::optional<std::pair<Candidate, Rational>> best;

    for (const Rational& A : res.a_grid) {
        if (exhausted) break;
        ConditionParams p;
        p.A = A;
        p.B = options.B;
        p.M = options.M;
        Candidate cand;
        cand.lambda.fill(Rational(0));
        bool complete = true;

        for (const auto& group : kGroups) {
            std::uint64_t group_pairs = 0;
            for (ParityCase c : group) group_pairs += pairs_of[index_of(c)].size();

            // assignments in lexicographic order, lower case index most significant
            const std::size_t dims = group.size();
            std::vector<std::size_t> digit(dims, 0);
            std::optional<std::pair<std::uint64_t, std::vector<std::size_t>>> group_best;
            for (;;) {
                if (res.evaluations + group_pairs > options.budget) {
                    exhausted = true;
                    break;
                }
                res.evaluations += group_pairs;
                LambdaSpec::Table lam;
                lam.fill(Rational(0));
                for (std::size_t d = 0; d < dims; ++d) lam[index_of(group[d])] = grid[digit[d]];
                std::uint64_t total = 0;
                for (ParityCase c : group) {
                    std::uint64_t in_case = 0;
                    const Rational& own = lam[index_of(c)];
                    const Rational& other = lam[index_of(mirrored(c))];
                    for (auto [x, y] : pairs_of[index_of(c)]) {
                        if (holds_with(options, p, x, y, own, other)) ++in_case;
                    }
                    best_in_case[index_of(c)] = std::max(best_in_case[index_of(c)], in_case);
                    total += in_case;
                }
                if (!group_best || total > group_best->first) group_best = {total, digit};

                std::size_t d = dims;
                while (d > 0) {
                    --d;
                    if (++digit[d] < grid.size()) break;
                    digit[d] = 0;
                    if (d == 0) {
                        d = dims + 1;
                        break;
                    }
                }
                if (d == dims + 1) break;
            }
            if (!group_best) {
                complete = false;
                break;
            }
            cand.covered += group_best->first;
            for (std::size_t d = 0; d < dims; ++d) cand.lambda[index_of(group[d])] = grid[group_best->second[d]];
            if (exhausted) {
                complete = false;
                break;
            }
        }

        if (!complete && best) break;
        if (!best || cand.covered > best->first.covered ||
            (cand.covered == best->first.covered && cand.lambda < best->first.lambda)) {
            best = {cand, A};
        }
    }

    res.budget_exhausted = exhausted;
    if (best) {
        res.covered = best->first.covered;
        res.best_lambda = best->first.lambda;
        res.best_A = best->second;
    }
    for (ParityCase c : kAllParityCases) {
        const auto n = pairs_of[index_of(c)].size();
        if (n > 0 && best_in_case[index_of(c)] < n) res.failing_cells.push_back(c);
    }
    return res;
}

} // namespace fpl::verify
