#include "fpl/checked.hpp"

#include <gtest/gtest.h>

namespace fpl {
namespace {

TEST(Checked, AddSubMulInRange)
{
    EXPECT_EQ(checked::add(2, 3), 5);
    EXPECT_EQ(checked::sub(2, 3), -1);
    EXPECT_EQ(checked::mul(-4, 6), -24);
    EXPECT_EQ(checked::square(-7), 49);
    EXPECT_EQ(checked::abs(-9), 9);
    EXPECT_EQ(checked::neg(5), -5);
}

TEST(Checked, OverflowThrowsInsteadOfWrapping)
{
    EXPECT_THROW((void)checked::add(kIntMax, 1), OverflowError);
    EXPECT_THROW((void)checked::sub(kIntMin, 1), OverflowError);
    EXPECT_THROW((void)checked::mul(kIntMax / 2 + 1, 2), OverflowError);
    EXPECT_THROW((void)checked::neg(kIntMin), OverflowError);
    EXPECT_THROW((void)checked::abs(kIntMin), OverflowError);
    const Int big = static_cast<Int>(1) << 64;
    EXPECT_THROW((void)checked::square(big), OverflowError);
    EXPECT_EQ(checked::square(big >> 1), static_cast<Int>(1) << 126);
}

TEST(Checked, Gcd)
{
    EXPECT_EQ(gcd(12, 18), 6);
    EXPECT_EQ(gcd(-12, 18), 6);
    EXPECT_EQ(gcd(0, 5), 5);
    EXPECT_EQ(gcd(0, 0), 0);
}

TEST(Checked, ToStringCoversFullWidth)
{
    EXPECT_EQ(to_string(0), "0");
    EXPECT_EQ(to_string(-42), "-42");
    EXPECT_EQ(to_string(kIntMax), "170141183460469231731687303715884105727");
    EXPECT_EQ(to_string(kIntMin), "-170141183460469231731687303715884105728");
}

TEST(Checked, ParseIntRoundTripsAndRejectsJunk)
{
    EXPECT_EQ(parse_int("123"), Int{123});
    EXPECT_EQ(parse_int("-7"), Int{-7});
    EXPECT_EQ(parse_int(to_string(kIntMax)), kIntMax);
    EXPECT_EQ(parse_int(to_string(kIntMin)), kIntMin);
    EXPECT_FALSE(parse_int("170141183460469231731687303715884105728"));
    EXPECT_FALSE(parse_int(""));
    EXPECT_FALSE(parse_int("-"));
    EXPECT_FALSE(parse_int("12a"));
    EXPECT_FALSE(parse_int(" 1"));
}

TEST(Checked, FitsDoubleExactly)
{
    const Int limit = static_cast<Int>(1) << 53;
    EXPECT_TRUE(fits_double_exactly(limit));
    EXPECT_TRUE(fits_double_exactly(-limit));
    EXPECT_FALSE(fits_double_exactly(limit + 1));
}

} // namespace
} // namespace fpl
