#pragma once

// Weighted generalized pseudocontractions on the metric space (N, |x - y|).
//
// A map T is a pseudocontraction for a weight system (alpha, ..., zeta) when
//
//   alpha d(Tx,Ty)^2 + beta d(x,Ty)^2 + gamma d(Tx,y)^2
//     + delta d(x,y)^2 + epsilon d(x,Tx)^2 + zeta d(y,Ty)^2  <=  0
//
// for every pair. Everything here is exact: raw weights are integers, blended
// (lambda-symmetrized) weights and all ratios are rationals.

#include "fpl/checked.hpp"
#include "fpl/parity.hpp"
#include "fpl/rational.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fpl {

template <class T>
struct BasicWeightVector {
    T alpha{};
    T beta{};
    T gamma{};
    T delta{};
    T epsilon{};
    T zeta{};

    friend bool operator==(const BasicWeightVector&, const BasicWeightVector&) = default;
};

using WeightVector = BasicWeightVector<Int>;
using ExactWeightVector = BasicWeightVector<Rational>;

[[nodiscard]] ExactWeightVector to_exact(const WeightVector& w);

using WeightFunction = std::function<WeightVector(Int, Int)>;
using PointMap = std::function<Int(Int)>;

void require_point(Int v, const char* what);

[[nodiscard]] inline Int metric_d(Int x, Int y)
{
    require_point(x, "x");
    require_point(y, "y");
    return x > y ? x - y : y - x;
}

/// The six squared distances of the defining inequality, in term order.
struct SquaredDistances {
    Int images;    // d(Tx, Ty)^2
    Int x_to_ty;   // d(x, Ty)^2
    Int tx_to_y;   // d(Tx, y)^2
    Int points;    // d(x, y)^2
    Int x_step;    // d(x, Tx)^2
    Int y_step;    // d(y, Ty)^2
};

namespace detail {

[[nodiscard]] inline Int sq_dist(Int a, Int b) { return checked::square(checked::sub(a, b)); }

} // namespace detail

template <class Map>
[[nodiscard]] SquaredDistances squared_distances(const Map& t, Int x, Int y)
{
    require_point(x, "x");
    require_point(y, "y");
    const Int tx = t(x);
    const Int ty = t(y);
    return {
        detail::sq_dist(tx, ty), detail::sq_dist(x, ty), detail::sq_dist(tx, y),
        detail::sq_dist(x, y),   detail::sq_dist(x, tx), detail::sq_dist(y, ty),
    };
}

[[nodiscard]] Int weighted_sum(const WeightVector& w, const SquaredDistances& d);
[[nodiscard]] Rational weighted_sum(const ExactWeightVector& w, const SquaredDistances& d);

/// Left-hand side of the defining inequality at (x, y); T is a
/// pseudocontraction at the pair iff the result is <= 0.
template <class Weights, class Map>
[[nodiscard]] Int lhs(const Weights& weights, const Map& t, Int x, Int y)
{
    return weighted_sum(WeightVector(weights(x, y)), squared_distances(t, x, y));
}

/// Blend parameter lambda(x, y) in [0, 1]: one constant, or one value per
/// parity case.
class LambdaSpec {
public:
    using Table = std::array<Rational, kParityCaseCount>;

    LambdaSpec() = default;

    static LambdaSpec constant(Rational value);
    static LambdaSpec per_case(const Table& table);

    [[nodiscard]] Rational at(Int x, Int y) const
    {
        if (const auto* c = std::get_if<Rational>(&value_)) return *c;
        return std::get<Table>(value_)[index_of(parity_case(x, y))];
    }

    [[nodiscard]] bool is_constant() const { return std::holds_alternative<Rational>(value_); }
    [[nodiscard]] Table table() const;

    /// "1/2" for constants, "1-1=p/q,1-even=p/q,..." for tables.
    [[nodiscard]] std::string str() const;

    friend bool operator==(const LambdaSpec&, const LambdaSpec&) = default;

private:
    std::variant<Rational, Table> value_ = Rational(0);
};

/// Parses a constant ("1/2"), nine comma-separated values in case order,
/// or "case=value" pairs with an optional "*=value" fallback.
/// Returns nullopt for anything malformed or outside [0, 1].
[[nodiscard]] std::optional<LambdaSpec> parse_lambda_spec(std::string_view text);

/// Blends the weights at (x, y) with the swapped system at (y, x):
/// beta crosses to gamma(y, x) and epsilon to zeta(y, x), and symmetrically.
[[nodiscard]] ExactWeightVector symmetrize(const WeightVector& at_xy, const WeightVector& at_yx,
                                           const Rational& lambda);

template <class Weights>
[[nodiscard]] ExactWeightVector symmetrize(const Weights& weights, const LambdaSpec& lambda, Int x, Int y)
{
    require_point(x, "x");
    require_point(y, "y");
    return symmetrize(WeightVector(weights(x, y)), WeightVector(weights(y, x)), lambda.at(x, y));
}

/// theta d(x,y)^2 - 2 min{theta, 0} (d(x,z)^2 + d(z,y)^2); never negative in
/// any metric space.
[[nodiscard]] Rational lemma1_gap(const Rational& theta, Int x, Int y, Int z);

struct ConditionId {
    int theorem = 1; // 1, 2 or 3
    int number = 5;  // 1 ... 5

    [[nodiscard]] bool valid() const { return theorem >= 1 && theorem <= 3 && number >= 1 && number <= 5; }
    [[nodiscard]] std::string str() const;

    friend bool operator==(const ConditionId&, const ConditionId&) = default;
};

struct ConditionParams {
    LambdaSpec lambda;
    Rational A{1, 2};
    Rational B{2};
    Rational M{2};

    /// Throws std::invalid_argument unless 0 < A < 1, B > 0 and M > 0.
    void validate() const;

    friend bool operator==(const ConditionParams&, const ConditionParams&) = default;
};

struct ConditionFlags {
    /// Condition (4) with delta + zeta + 2 min{gamma, 0} > 0 as second clause
    /// instead of the default delta + epsilon + 2 min{beta, 0} > 0.
    bool corrected_c4 = false;
    /// Also bound the blended weights at (x, y) and (y, x) by M.
    bool m_bound_on_symmetrized = false;

    friend bool operator==(const ConditionFlags&, const ConditionFlags&) = default;
};

enum class Branch : std::uint8_t { none, first, mirrored };

[[nodiscard]] std::string_view name_of(Branch b);

struct BranchWitness {
    Rational positive_mass; // alpha + zeta + 2 min{beta, 0}   (first)  | alpha + epsilon + 2 min{gamma, 0} at (y, x)
    Rational offset_mass;   // delta + epsilon + 2 min{beta, 0} (first) | delta + zeta + 2 min{gamma, 0}    at (y, x)
    std::optional<Rational> ratio;
    Rational b_sum;         // alpha + beta + zeta (first) | alpha + gamma + epsilon at (y, x)
    bool holds = false;

    friend bool operator==(const BranchWitness&, const BranchWitness&) = default;
};

struct ConditionOutcome {
    ConditionId kind;
    ConditionFlags flags;
    bool holds = false;
    Branch branch = Branch::none;
    // conditions (1)-(4): the two clause quantities at (x, y)
    Rational clause1;
    Rational clause2;
    // condition (5)
    BranchWitness first;
    BranchWitness mirrored;
    std::optional<bool> m_bound_ok; // set only for condition id {3, 5}

    friend bool operator==(const ConditionOutcome&, const ConditionOutcome&) = default;
};

/// -(offset mass) / (positive mass) for the chosen branch, or nullopt when
/// the positive mass is not strictly positive. For Branch::mirrored the
/// vector must be the blended weights at the swapped pair (y, x).
[[nodiscard]] std::optional<Rational> contraction_ratio(const ExactWeightVector& blended, Branch branch);

/// Everything a condition needs at one pair: raw weights both ways round
/// and the blend parameters lambda(x, y), lambda(y, x).
struct ConditionInputs {
    WeightVector at_xy;
    WeightVector at_yx;
    Rational lambda_xy;
    Rational lambda_yx;
};

[[nodiscard]] ConditionOutcome evaluate_condition(ConditionId id, const ConditionInputs& in,
                                                  const ConditionParams& params, ConditionFlags flags = {});

template <class Weights>
[[nodiscard]] ConditionOutcome check_condition(ConditionId id, const Weights& weights, const ConditionParams& params,
                                               Int x, Int y, ConditionFlags flags = {})
{
    require_point(x, "x");
    require_point(y, "y");
    ConditionInputs in{WeightVector(weights(x, y)), WeightVector(weights(y, x)), params.lambda.at(x, y),
                       params.lambda.at(y, x)};
    return evaluate_condition(id, in, params, flags);
}

struct OrbitRecord {
    Int seed = 1;
    std::vector<Int> points;                 // T^0 x, T^1 x, ...
    std::vector<Int> step_distances_squared; // d(T^n x, T^{n+1} x)^2
    bool reached_fixed_point = false;
    std::size_t steps_taken = 0;             // map applications performed

    friend bool operator==(const OrbitRecord&, const OrbitRecord&) = default;
};

/// Applies t until it returns its argument (a fixed point) or max_steps
/// applications have been made.
template <class Map>
[[nodiscard]] OrbitRecord iterate_orbit(const Map& t, Int seed, std::size_t max_steps)
{
    require_point(seed, "seed");
    OrbitRecord orbit;
    orbit.seed = seed;
    orbit.points.push_back(seed);
    Int current = seed;
    while (orbit.steps_taken < max_steps) {
        Int next = t(current);
        orbit.points.push_back(next);
        orbit.step_distances_squared.push_back(detail::sq_dist(current, next));
        ++orbit.steps_taken;
        if (next == current) {
            orbit.reached_fixed_point = true;
            break;
        }
        current = next;
    }
    return orbit;
}

struct DecayStep {
    std::size_t n = 0;          // compares step n with step n - 1
    bool premise_holds = false; // condition (5) at (T^{n-1} x, T^n x)
    Branch branch = Branch::none;
    Int distance_sq = 0;        // d(T^n x, T^{n+1} x)^2
    Int previous_distance_sq = 0;
    bool decays = true;         // only meaningful when premise_holds

    friend bool operator==(const DecayStep&, const DecayStep&) = default;
};

struct DecayReport {
    std::vector<DecayStep> steps;
    std::size_t checked = 0;
    std::size_t premise_failed = 0;
    std::vector<std::size_t> violations; // values of n

    [[nodiscard]] bool ok() const { return violations.empty(); }
};

/// Checks d(T^n x, T^{n+1} x)^2 <= A d(T^{n-1} x, T^n x)^2 wherever condition
/// (5) holds at the consecutive pair; other steps are only counted.
[[nodiscard]] DecayReport check_orbit_decay(const OrbitRecord& orbit, const WeightFunction& weights,
                                            const ConditionParams& params, ConditionFlags flags = {});

} // namespace fpl
