#pragma once

// Exhaustive verification sweeps over finite ranges of pairs.
//
// Every sweep splits its range into row blocks that are processed
// independently and merged. Merging is associative and commutative, and
// violations are kept sorted, so the final report does not depend on how
// many workers ran or in which order blocks finished.

#include "fpl/checked.hpp"
#include "fpl/collatz.hpp"
#include "fpl/collatz_weights.hpp"
#include "fpl/framework.hpp"
#include "fpl/parity.hpp"
#include "fpl/rational.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fpl::verify {

inline constexpr std::uint16_t kAllCases = (1u << kParityCaseCount) - 1;

struct RangeSpec {
    std::int64_t x_min = 1;
    std::int64_t x_max = 1;
    std::int64_t y_min = 1;
    std::int64_t y_max = 1;
    std::uint16_t case_mask = kAllCases; // bit i keeps ParityCase i

    /// [lo, hi] x [lo, hi] with no case filter.
    static RangeSpec square(std::int64_t lo, std::int64_t hi) { return {lo, hi, lo, hi, kAllCases}; }

    /// Throws std::invalid_argument on empty or non-positive bounds.
    void validate() const;

    [[nodiscard]] bool includes(ParityCase c) const { return (case_mask >> index_of(c)) & 1u; }
    [[nodiscard]] bool filtered() const { return case_mask != kAllCases; }

    /// Number of pairs in the range after case filtering.
    [[nodiscard]] std::uint64_t cardinality() const;

    friend bool operator==(const RangeSpec&, const RangeSpec&) = default;
};

[[nodiscard]] std::uint16_t case_mask_of(const std::vector<ParityCase>& cases);

enum class ViolationKind : std::uint8_t {
    lhs_positive,
    cross_mismatch,
    bound_exceeded,
    triangle_gap,
    blend_identity,
    blend_sign,
    decay,
    telescoped,
    weight_bound,
    cap_exceeded,
};

[[nodiscard]] std::string_view name_of(ViolationKind k);

struct Violation {
    Int x = 1;
    Int y = 1;
    ParityCase kind = ParityCase::one_one;
    ViolationKind quantity = ViolationKind::lhs_positive;
    Rational value;      // the offending number
    std::string detail;  // extra coordinates (third point, theta, seed, ...)

    friend bool operator==(const Violation&, const Violation&) = default;
};

/// Row-major order: x, then y, then kind of check, then detail.
[[nodiscard]] bool operator<(const Violation& a, const Violation& b);

enum class Extreme : std::uint8_t { max, min };

/// Per-cell statistics of a sweep: how many items fell in the cell and the
/// extreme value observed there (first pair in row-major order on ties).
struct CaseTally {
    std::string label;
    std::string statistic;
    Extreme extreme = Extreme::max;
    std::uint64_t count = 0;
    std::optional<Rational> observed;
    std::optional<std::pair<Int, Int>> observed_at;
    std::optional<Rational> bound;
    std::uint64_t violations = 0;

    void observe(const Rational& v, Int x, Int y);
    void merge(const CaseTally& other);

    friend bool operator==(const CaseTally&, const CaseTally&) = default;
};

inline constexpr std::size_t kDefaultViolationLimit = 1000;

struct SweepOptions {
    unsigned jobs = 1;
    /// Violations retained in the report; the total is always exact.
    std::size_t violation_limit = kDefaultViolationLimit;
    /// Called with the running number of processed items, about every 10^6.
    std::function<void(std::uint64_t)> progress;
};

struct VerificationReport {
    std::string check;
    RangeSpec range;
    std::uint64_t pairs_checked = 0;
    std::vector<CaseTally> per_case;
    std::vector<Violation> violations; // sorted, at most violation_limit
    std::uint64_t violations_total = 0;
    std::size_t violation_limit = kDefaultViolationLimit;
    std::int64_t elapsed_ms = 0;

    [[nodiscard]] bool verified() const { return violations_total == 0; }
    [[nodiscard]] const CaseTally* tally(std::string_view label) const;

    void add_violation(Violation v);
    /// Sums counts, merges tallies label by label, unions violations and
    /// widens the range to the hull of both.
    void merge(const VerificationReport& other);
};

/// Same outcome, ignoring the wall-clock field.
[[nodiscard]] bool equivalent(const VerificationReport& a, const VerificationReport& b);

enum class LhsRoute : std::uint8_t { direct, simplified };

struct PseudocontractionChecks {
    LhsRoute route = LhsRoute::direct;
    bool nonpositive = true;     // lhs <= 0
    bool sharpened_bound = true; // lhs <= case bound
};

/// lhs(weight_vector, T, x, y) <= 0 and the sharpened per-case bounds on
/// every pair. Tallies are per bound cell (odd-odd split into subcases).
[[nodiscard]] VerificationReport verify_pseudocontraction(const RangeSpec& range, const SweepOptions& opts = {},
                                                          const PseudocontractionChecks& checks = {});

/// simplified_lhs == lhs on every pair.
[[nodiscard]] VerificationReport cross_check_simplified(const RangeSpec& range, const SweepOptions& opts = {});

/// |w| <= M for all six raw weights on every pair.
[[nodiscard]] VerificationReport verify_weight_bound(const RangeSpec& range, const Rational& M,
                                                     const SweepOptions& opts = {});

/// Triangle gap >= 0 over [x_min, x_max]^3 for every theta, and the blend
/// linearity identity plus nonpositivity of the blended left-hand side over
/// the pairs of the range for every lambda.
[[nodiscard]] VerificationReport verify_lemmas(const RangeSpec& range, const std::vector<Rational>& thetas,
                                               const std::vector<LambdaSpec>& lambdas, const SweepOptions& opts = {});

/// Runs check_orbit_decay on the T-orbit of every seed and, on the prefix
/// from the seed along which the premise holds at every step, the squared
/// telescoped bound d(T^n x, T^{n+1} x)^2 <= A^n d(x, Tx)^2.
[[nodiscard]] VerificationReport orbit_decay_sweep(std::int64_t seed_min, std::int64_t seed_max,
                                                   const ConditionParams& params, const SweepOptions& opts = {},
                                                   std::uint64_t cap = collatz::kDefaultCap,
                                                   ConditionFlags flags = {});

// ---------------------------------------------------------------------------
// condition coverage

inline constexpr std::size_t kDistinctLimit = 32;

struct CoverageCell {
    std::string label;
    ParityCase kind = ParityCase::one_one;
    std::optional<bool> x_at_least_y; // set on the two odd-odd cells
    std::uint64_t pairs = 0;
    std::uint64_t first = 0;    // holds via the (x, y) branch (or simply holds, conditions 1-4)
    std::uint64_t mirrored = 0; // holds via the (y, x) branch only
    std::uint64_t fails = 0;
    std::uint64_t m_bound_failures = 0;
    std::optional<std::pair<Int, Int>> exemplar_first;
    std::optional<std::pair<Int, Int>> exemplar_mirrored;
    std::optional<std::pair<Int, Int>> exemplar_fail;
    // distinct values seen on holding pairs (smallest kDistinctLimit kept)
    std::set<Rational> ratios;
    std::set<Rational> b_sums;
    std::set<std::pair<Rational, Rational>> masses; // (positive mass, offset mass)
    // distinct raw weight tuples at (x, y) over all pairs of the cell
    std::set<std::array<Int, 6>> weight_tuples;
    bool truncated = false;

    [[nodiscard]] std::uint64_t holds() const { return first + mirrored; }
    void merge(const CoverageCell& other);

    friend bool operator==(const CoverageCell&, const CoverageCell&) = default;
};

struct ConditionCoverageReport {
    ConditionParams params;
    ConditionId condition;
    ConditionFlags flags;
    RangeSpec range;
    std::uint64_t pairs_checked = 0;
    std::vector<CoverageCell> cells; // eight cases, odd-odd split by x >= y
    std::int64_t elapsed_ms = 0;

    [[nodiscard]] std::uint64_t holds() const;
    [[nodiscard]] const CoverageCell* cell(std::string_view label) const;
    void merge(const ConditionCoverageReport& other);
};

[[nodiscard]] bool equivalent(const ConditionCoverageReport& a, const ConditionCoverageReport& b);

[[nodiscard]] ConditionCoverageReport condition_coverage(const RangeSpec& range, const ConditionParams& params,
                                                         ConditionId condition, ConditionFlags flags = {},
                                                         const SweepOptions& opts = {});

// ---------------------------------------------------------------------------
// lambda search

struct LambdaSearchOptions {
    /// Per-case lambda is drawn from {0, 1/q, ..., 1}; q = 0 forces lambda = 0.
    unsigned q = 1;
    std::vector<Rational> a_grid;
    ConditionId condition{3, 5};
    ConditionFlags flags;
    Rational B{2};
    Rational M{2};
    /// Upper bound on pair evaluations; the search stops early past it.
    std::uint64_t budget = 200'000'000;
};

struct LambdaSearchResult {
    unsigned q = 1;
    std::vector<Rational> a_grid;
    ConditionId condition;
    ConditionFlags flags;
    Rational B{2};
    Rational M{2};
    RangeSpec range;
    LambdaSpec::Table best_lambda;
    Rational best_A;
    std::uint64_t covered = 0;
    std::uint64_t pairs = 0;
    std::vector<ParityCase> failing_cells; // no grid point covers them fully
    bool budget_exhausted = false;
    std::uint64_t evaluations = 0;

    [[nodiscard]] Rational coverage() const { return pairs == 0 ? Rational(1) : Rational(covered, pairs); }

    friend bool operator==(const LambdaSearchResult&, const LambdaSearchResult&) = default;
};

/// Finds the per-case lambda and A maximizing the number of pairs on which
/// the condition holds. Ties go to the lexicographically smallest
/// (lambda table, A). Throws std::invalid_argument on an empty A grid.
[[nodiscard]] LambdaSearchResult search_lambda(const RangeSpec& range, const LambdaSearchOptions& options);

/// Number of pairs of the range on which the condition holds for the given
/// lambda table and A; used to recompute a search result.
[[nodiscard]] std::uint64_t count_covered(const RangeSpec& range, const LambdaSpec::Table& lambda, const Rational& A,
                                          const LambdaSearchOptions& options);

} // namespace fpl::verify
