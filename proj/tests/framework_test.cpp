#include "fpl/collatz.hpp"
#include "fpl/collatz_weights.hpp"
#include "fpl/framework.hpp"

#include <gtest/gtest.h>

#include <random>

namespace fpl {
namespace {

const weights::WeightTable kW{};
Int T(Int x) { return collatz::accelerated_step(x); }

ConditionParams params_with(Rational lambda, Rational A = Rational(1, 2))
{
    ConditionParams p;
    p.lambda = LambdaSpec::constant(lambda);
    p.A = A;
    return p;
}

TEST(Metric, Examples)
{
    EXPECT_EQ(metric_d(5, 5), 0);
    EXPECT_EQ(metric_d(3, 8), 5);
    EXPECT_EQ(metric_d(8, 3), 5);
    EXPECT_THROW((void)metric_d(0, 3), std::invalid_argument);
}

TEST(Metric, AxiomsExhaustiveUpTo200)
{
    for (Int x = 1; x <= 200; ++x) {
        for (Int y = 1; y <= 200; ++y) {
            const Int dxy = metric_d(x, y);
            ASSERT_EQ(dxy == 0, x == y);
            ASSERT_EQ(dxy, metric_d(y, x));
            for (Int z = 1; z <= 200; ++z) ASSERT_LE(metric_d(x, z), dxy + metric_d(y, z));
        }
    }
}

TEST(Lhs, Examples)
{
    EXPECT_EQ(lhs(kW, T, 1, 1), 0);
    EXPECT_EQ(lhs(kW, T, 2, 2), -1);
    EXPECT_EQ(lhs(kW, T, 1, 2), 0);
}

TEST(Lhs, SixTermsByHand)
{
    // (2, 4): T2 = 1, T4 = 2, weights (1, 0, -1, 0, -1, 1)
    // 1*1 + 0*4 - 1*9 + 0*4 - 1*1 + 1*4 = -5
    const auto d = squared_distances(T, 2, 4);
    EXPECT_EQ(d.images, 1);
    EXPECT_EQ(d.x_to_ty, 0);
    EXPECT_EQ(d.tx_to_y, 9);
    EXPECT_EQ(d.points, 4);
    EXPECT_EQ(d.x_step, 1);
    EXPECT_EQ(d.y_step, 4);
    EXPECT_EQ(lhs(kW, T, 2, 4), -5);
}

TEST(Lhs, OverflowSurfacesAsError)
{
    const Int huge = static_cast<Int>(1) << 100;
    EXPECT_THROW((void)lhs(kW, T, huge, 1), OverflowError);
}

TEST(Symmetrize, LambdaZeroIsIdentity)
{
    for (Int x = 1; x <= 30; ++x) {
        for (Int y = 1; y <= 30; ++y) {
            ASSERT_EQ(symmetrize(kW, LambdaSpec::constant(0), x, y), to_exact(weights::weight_vector(x, y)));
        }
    }
}

TEST(Symmetrize, LambdaOneAtOneTwo)
{
    const auto w = symmetrize(kW, LambdaSpec::constant(1), 1, 2);
    EXPECT_EQ(w, (ExactWeightVector{1, 1, 0, -1, 1, 0}));
}

TEST(Symmetrize, LambdaHalfAtOneOne)
{
    const auto w = symmetrize(kW, LambdaSpec::constant(Rational(1, 2)), 1, 1);
    EXPECT_EQ(w, (ExactWeightVector{1, 0, 0, 0, 0, 0}));
}

TEST(Symmetrize, FullSwapIsAnInvolution)
{
    // W1(x, y) = symmetrize(W, 1)(x, y); symmetrizing W1 again with lambda = 1
    // must give back W.
    auto w1 = [](Int x, Int y) {
        const auto e = symmetrize(kW, LambdaSpec::constant(1), x, y);
        return WeightVector{e.alpha.num(), e.beta.num(), e.gamma.num(), e.delta.num(), e.epsilon.num(), e.zeta.num()};
    };
    for (Int x = 1; x <= 40; ++x) {
        for (Int y = 1; y <= 40; ++y) {
            const WeightVector b = weights::weight_vector(y, x);
            const auto once = symmetrize(kW, LambdaSpec::constant(1), x, y);
            ASSERT_EQ(once.alpha, Rational(b.alpha));
            ASSERT_EQ(once.beta, Rational(b.gamma));
            ASSERT_EQ(once.gamma, Rational(b.beta));
            ASSERT_EQ(once.delta, Rational(b.delta));
            ASSERT_EQ(once.epsilon, Rational(b.zeta));
            ASSERT_EQ(once.zeta, Rational(b.epsilon));
            ASSERT_EQ(symmetrize(w1, LambdaSpec::constant(1), x, y), to_exact(weights::weight_vector(x, y)));
        }
    }
}

TEST(Symmetrize, BlendIdentityOnRandomPairs)
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> coord(1, 5000);
    std::uniform_int_distribution<int> q(1, 12);
    for (int i = 0; i < 5000; ++i) {
        const Int x = coord(rng);
        const Int y = coord(rng);
        const int den = q(rng);
        const Rational lam(std::uniform_int_distribution<int>(0, den)(rng), den);
        const Rational blended = weighted_sum(symmetrize(kW, LambdaSpec::constant(lam), x, y), squared_distances(T, x, y));
        const Rational expected = (Rational(1) - lam) * lhs(kW, T, x, y) + lam * lhs(kW, T, y, x);
        ASSERT_EQ(blended, expected) << "at (" << to_string(x) << ", " << to_string(y) << ")";
        ASSERT_LE(blended, Rational(0));
    }
}

TEST(LambdaSpec, ParseForms)
{
    auto c = parse_lambda_spec("1/2");
    ASSERT_TRUE(c);
    EXPECT_TRUE(c->is_constant());
    EXPECT_EQ(c->at(3, 8), Rational(1, 2));

    auto nine = parse_lambda_spec("0,1,0,1,0,1,0,1,0");
    ASSERT_TRUE(nine);
    EXPECT_EQ(nine->at(1, 2), Rational(1));
    EXPECT_EQ(nine->at(1, 1), Rational(0));

    auto pairs = parse_lambda_spec("even-odd=1/3,*=1");
    ASSERT_TRUE(pairs);
    EXPECT_EQ(pairs->at(2, 3), Rational(1, 3));
    EXPECT_EQ(pairs->at(3, 2), Rational(1));

    EXPECT_FALSE(parse_lambda_spec("3/2"));
    EXPECT_FALSE(parse_lambda_spec("-1"));
    EXPECT_FALSE(parse_lambda_spec("0,1"));
    EXPECT_FALSE(parse_lambda_spec("even-odd=1/3"));
    EXPECT_FALSE(parse_lambda_spec("bogus=1,*=0"));
    EXPECT_FALSE(parse_lambda_spec("even-odd=1,even-odd=0,*=0"));
    EXPECT_FALSE(parse_lambda_spec(""));
    EXPECT_THROW((void)LambdaSpec::constant(Rational(2)), std::invalid_argument);
}

TEST(LambdaSpec, StrRoundTrips)
{
    for (const char* text : {"1/2", "0,1,0,1,0,1,0,1,1/3", "odd-odd=1,*=1/4"}) {
        auto spec = parse_lambda_spec(text);
        ASSERT_TRUE(spec);
        EXPECT_EQ(parse_lambda_spec(spec->str()), spec) << text;
    }
}

TEST(TriangleGap, Examples)
{
    EXPECT_EQ(lemma1_gap(0, 4, 9, 2), Rational(0));
    EXPECT_EQ(lemma1_gap(1, 1, 4, 2), Rational(9));
    EXPECT_EQ(lemma1_gap(-1, 1, 4, 2), Rational(1));
}

TEST(TriangleGap, NonnegativeOnSmallTriples)
{
    const std::vector<Rational> thetas = {-3, Rational(-5, 2), -2, -1, 0, Rational(1, 2), 1, 2, 3};
    for (Int x = 1; x <= 30; ++x) {
        for (Int y = 1; y <= 30; ++y) {
            for (Int z = 1; z <= 30; ++z) {
                for (const auto& t : thetas) ASSERT_GE(lemma1_gap(t, x, y, z), Rational(0));
            }
        }
    }
}

TEST(Condition, BoundedFive_TwoTwo)
{
    const auto out = check_condition({3, 5}, kW, params_with(0), 2, 2);
    EXPECT_TRUE(out.holds);
    EXPECT_EQ(out.branch, Branch::first);
    EXPECT_EQ(out.first.positive_mass, Rational(2));
    EXPECT_EQ(out.first.offset_mass, Rational(-1));
    EXPECT_EQ(out.first.ratio, Rational(1, 2));
    EXPECT_EQ(out.first.b_sum, Rational(2));
    EXPECT_EQ(out.m_bound_ok, true);
}

TEST(Condition, BoundedFive_ThreeFiveFailsBothBranches)
{
    EXPECT_EQ(weights::weight_vector(3, 5), (WeightVector{2, -1, 1, -1, 0, 0}));
    EXPECT_EQ(weights::weight_vector(5, 3), (WeightVector{2, 1, -1, -1, 0, 0}));
    const auto out = check_condition({3, 5}, kW, params_with(0), 3, 5);
    EXPECT_FALSE(out.holds);
    EXPECT_EQ(out.branch, Branch::none);
    EXPECT_EQ(out.first.positive_mass, Rational(0));
    EXPECT_EQ(out.mirrored.positive_mass, Rational(0));
    EXPECT_FALSE(out.first.ratio);
    EXPECT_FALSE(out.mirrored.ratio);
}

TEST(Condition, PlainOneWithConstantWeights)
{
    auto w = [](Int, Int) { return WeightVector{1, 0, 0, 0, 0, 1}; };
    for (Int x = 1; x <= 10; ++x) {
        for (Int y = 1; y <= 10; ++y) {
            const auto out = check_condition({1, 1}, w, params_with(0), x, y);
            ASSERT_TRUE(out.holds);
            ASSERT_EQ(out.clause1, Rational(2));
            ASSERT_EQ(out.clause2, Rational(0));
        }
    }
}

TEST(Condition, FourDefaultVersusCorrected)
{
    // (alpha .. zeta) chosen so that the default second clause (delta + epsilon)
    // and the corrected one (delta + zeta) disagree.
    auto w = [](Int, Int) { return WeightVector{1, 0, 0, -1, 2, 0}; };
    const auto default_form = check_condition({1, 4}, w, params_with(0), 1, 2);
    const auto corrected = check_condition({1, 4}, w, params_with(0), 1, 2, {true, false});
    EXPECT_TRUE(default_form.holds);
    EXPECT_EQ(default_form.clause2, Rational(1));
    EXPECT_FALSE(corrected.holds);
    EXPECT_EQ(corrected.clause2, Rational(-1));
}

TEST(Condition, MBoundOnRawAndBlendedWeights)
{
    auto w = [](Int x, Int y) { return x < y ? WeightVector{3, 0, 0, -1, 0, 1} : WeightVector{1, 0, 0, -1, 0, 1}; };
    ConditionParams p = params_with(0);
    p.B = 1;
    const auto out = check_condition({3, 5}, w, p, 2, 1);
    EXPECT_EQ(out.m_bound_ok, false); // raw weight 3 at (1, 2)
    EXPECT_FALSE(out.holds);
    const auto t1 = check_condition({1, 5}, w, p, 2, 1);
    EXPECT_FALSE(t1.m_bound_ok);
    EXPECT_TRUE(t1.holds);
}

TEST(Condition, MirroredBranchUsesSwappedPair)
{
    // lambda = 1 at (2, 1): the first branch misses the B-sum (1 < 2), the
    // mirrored branch at (1, 2) has masses 2 and -1.
    const auto out = check_condition({3, 5}, kW, params_with(1), 2, 1);
    EXPECT_TRUE(out.holds);
    EXPECT_EQ(out.branch, Branch::mirrored);
    EXPECT_EQ(out.mirrored.ratio, Rational(1, 2));
}

TEST(Condition, PureFunctionOfInputs)
{
    for (Int x = 1; x <= 25; ++x) {
        for (Int y = 1; y <= 25; ++y) {
            for (int n = 1; n <= 5; ++n) {
                const auto a = check_condition({3, n}, kW, params_with(Rational(1, 3)), x, y);
                const auto b = check_condition({3, n}, kW, params_with(Rational(1, 3)), x, y);
                ASSERT_EQ(a, b);
            }
        }
    }
}

TEST(Condition, RejectsUnknownConditionAndBadParams)
{
    EXPECT_THROW((void)check_condition({4, 5}, kW, params_with(0), 1, 1), std::invalid_argument);
    ConditionParams p;
    p.A = 1;
    EXPECT_THROW(p.validate(), std::invalid_argument);
    p.A = Rational(1, 2);
    p.B = 0;
    EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(ContractionRatio, Examples)
{
    EXPECT_EQ(contraction_ratio({1, 0, 0, -1, 0, 1}, Branch::first), Rational(1, 2));
    EXPECT_FALSE(contraction_ratio({0, 0, 0, -1, 0, 0}, Branch::first));
    // the odd-odd (2, 2, -2, -2, 0, 2) combination: masses 4 and -2
    EXPECT_EQ(contraction_ratio({2, 2, -2, -2, 0, 2}, Branch::first), Rational(1, 2));
    EXPECT_FALSE(contraction_ratio({2, 2, -2, -2, 0, 2}, Branch::none));
    // mirrored branch reads alpha + epsilon + 2 min{gamma, 0}, delta + zeta + 2 min{gamma, 0}
    EXPECT_EQ(contraction_ratio({2, 0, 0, -1, 1, 0}, Branch::mirrored), Rational(1, 3));
}

TEST(Orbit, Examples)
{
    auto one = iterate_orbit(T, 1, 10);
    EXPECT_EQ(one.points, (std::vector<Int>{1, 1}));
    EXPECT_TRUE(one.reached_fixed_point);
    EXPECT_EQ(one.steps_taken, 1u);

    auto three = iterate_orbit(T, 3, 10);
    EXPECT_EQ(three.points, (std::vector<Int>{3, 5, 8, 4, 2, 1, 1}));
    EXPECT_TRUE(three.reached_fixed_point);
    EXPECT_EQ(three.step_distances_squared, (std::vector<Int>{4, 9, 16, 4, 1, 0}));

    auto six = iterate_orbit(T, 6, 10);
    EXPECT_EQ(six.points, (std::vector<Int>{6, 3, 5, 8, 4, 2, 1, 1}));

    auto cut = iterate_orbit(T, 27, 3);
    EXPECT_FALSE(cut.reached_fixed_point);
    EXPECT_EQ(cut.points.size(), 4u);
}

TEST(Orbit, RecordInvariants)
{
    for (Int seed = 1; seed <= 500; ++seed) {
        const auto o = iterate_orbit(T, seed, 1000);
        ASSERT_EQ(o.points.size(), o.step_distances_squared.size() + 1);
        for (std::size_t n = 0; n + 1 < o.points.size(); ++n) {
            ASSERT_EQ(o.points[n + 1], T(o.points[n]));
            ASSERT_EQ(o.step_distances_squared[n], checked::square(o.points[n + 1] - o.points[n]));
        }
    }
}

TEST(Decay, SeedFour)
{
    const auto o = iterate_orbit(T, 4, 10);
    EXPECT_EQ(o.points, (std::vector<Int>{4, 2, 1, 1}));
    const auto r = check_orbit_decay(o, kW, params_with(0));
    ASSERT_EQ(r.steps.size(), 2u);
    EXPECT_TRUE(r.steps[0].premise_holds); // even-even (4, 2)
    EXPECT_TRUE(r.steps[1].premise_holds); // even-1 (2, 1)
    EXPECT_EQ(r.steps[0].distance_sq, 1);
    EXPECT_EQ(r.steps[0].previous_distance_sq, 4);
    EXPECT_TRUE(r.ok());
    EXPECT_EQ(r.checked, 2u);
}

TEST(Decay, FixedPointIsVacuous)
{
    const auto o = iterate_orbit(T, 1, 10);
    const auto r = check_orbit_decay(o, kW, params_with(0));
    EXPECT_TRUE(r.steps.empty());
    EXPECT_TRUE(r.ok());
}

TEST(Decay, SeedThreeMarksPremiseFailures)
{
    const auto o = iterate_orbit(T, 3, 10);
    const auto r = check_orbit_decay(o, kW, params_with(0));
    EXPECT_TRUE(r.ok());
    EXPECT_GT(r.premise_failed, 0u);
    // step 1 compares d(5, 8) with d(3, 5); the pair (3, 5) fails condition (5)
    EXPECT_FALSE(r.steps[0].premise_holds);
}

TEST(Decay, ViolationIsReportedWhenPremiseHoldsButDistancesGrow)
{
    OrbitRecord fake;
    fake.seed = 4;
    fake.points = {4, 2, 6};
    fake.step_distances_squared = {4, 16};
    const auto r = check_orbit_decay(fake, kW, params_with(0));
    ASSERT_EQ(r.violations, (std::vector<std::size_t>{1}));
    EXPECT_FALSE(r.ok());
}

} // namespace
} // namespace fpl
