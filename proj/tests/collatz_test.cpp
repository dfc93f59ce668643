#include "fpl/collatz.hpp"

#include <gtest/gtest.h>

namespace fpl::collatz {
namespace {

TEST(CollatzStep, Examples)
{
    EXPECT_EQ(collatz_step(1), 4);
    EXPECT_EQ(collatz_step(4), 2);
    EXPECT_EQ(collatz_step(7), 22);
    EXPECT_THROW((void)collatz_step(0), std::invalid_argument);
    EXPECT_THROW((void)collatz_step(kIntMax), OverflowError);
}

TEST(AcceleratedStep, Examples)
{
    EXPECT_EQ(accelerated_step(1), 1);
    EXPECT_EQ(accelerated_step(3), 5);
    EXPECT_EQ(accelerated_step(6), 3);
    // (3x + 1) / 2 stays representable even where 3x would not
    const Int big = kIntMax / 2;
    EXPECT_EQ(accelerated_step(big | 1), (big | 1) + (big | 1) / 2 + 1);
}

TEST(StoppingTime, Examples)
{
    EXPECT_EQ(stopping_time(MapKind::C, 1, 10).steps, 3u);
    EXPECT_EQ(stopping_time(MapKind::T, 1, 10).steps, 1u);
    const auto t3 = stopping_time(MapKind::T, 3, 100, true);
    EXPECT_EQ(t3.steps, 5u);
    EXPECT_EQ(t3.peak, 8);
    EXPECT_EQ(*t3.path, (std::vector<Int>{3, 5, 8, 4, 2, 1}));
    EXPECT_EQ(stopping_time(MapKind::C, 27).steps, 111u);
    EXPECT_EQ(stopping_time(MapKind::C, 27).peak, 9232);
}

TEST(StoppingTime, CapIsAReportedOutcome)
{
    const auto r = stopping_time(MapKind::C, 27, 10, true);
    EXPECT_FALSE(r.reached_one());
    EXPECT_EQ(r.path->size(), 11u);
    EXPECT_EQ(r.peak, 214);
    EXPECT_THROW((void)stopping_time(MapKind::C, 27, 0), std::invalid_argument);
}

TEST(StoppingTime, MinimalAndPeakInvariants)
{
    for (Int seed = 1; seed <= 2000; ++seed) {
        for (MapKind m : {MapKind::C, MapKind::T}) {
            const auto r = stopping_time(m, seed, kDefaultCap, true);
            ASSERT_TRUE(r.steps);
            ASSERT_EQ(r.path->size(), *r.steps + 1);
            ASSERT_EQ(r.path->back(), 1);
            for (std::size_t i = 1; i + 1 < r.path->size(); ++i) ASSERT_NE((*r.path)[i], 1);
            for (Int v : *r.path) ASSERT_LE(v, r.peak);
            ASSERT_GE(r.peak, seed);
        }
    }
}

TEST(Consistency, Examples)
{
    EXPECT_TRUE(consistency_CT(3));
    EXPECT_TRUE(consistency_CT(1));
    EXPECT_TRUE(consistency_CT(4));
    EXPECT_THROW((void)consistency_CT(27, 10), CapExceeded);
}

TEST(Consistency, SquareOfCIsTOnOddsAndCIsTOnEvens)
{
    for (Int x = 2; x <= 100'000; ++x) {
        if (x & 1) {
            ASSERT_EQ(collatz_step(collatz_step(x)), accelerated_step(x));
        } else {
            ASSERT_EQ(collatz_step(x), accelerated_step(x));
        }
    }
}

TEST(Consistency, AcceleratedNeverSlower)
{
    for (Int seed = 1; seed <= 20'000; ++seed) {
        ASSERT_LE(*stopping_time(MapKind::T, seed).steps, *stopping_time(MapKind::C, seed).steps);
    }
}

} // namespace
} // namespace fpl::collatz
