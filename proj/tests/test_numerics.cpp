#include <gtest/gtest.h>

#include <random>

#include "treeperm/numerics.hpp"

using namespace treeperm;

TEST(RatPow, SmallCases) {
    EXPECT_EQ(rat_pow(three_halves(), 0), Rational(1));
    EXPECT_EQ(rat_pow(three_halves(), 2), Rational(9, 4));
    EXPECT_EQ(rat_pow(three_halves(), 9), Rational(19683, 512));
    EXPECT_EQ(rat_pow(three_halves(), 9), Rational(int_pow(BigInt(3), 9), int_pow(BigInt(2), 9)));
}

TEST(RatPow, NegativeExponentHelper) {
    EXPECT_EQ(three_halves_pow(-1), Rational(2, 3));
    EXPECT_EQ(three_halves_pow(-3) * three_halves_pow(3), Rational(1));
    EXPECT_EQ(three_halves_pow(0), Rational(1));
}

TEST(Rational, NormalizedOnConstruction) {
    std::mt19937_64 rng(20240601);
    for (int i = 0; i < 500; ++i) {
        long long a = static_cast<long long>(rng() % 4001) - 2000;
        long long b = static_cast<long long>(rng() % 4000) - 2000;
        if (b == 0) b = 7;
        Rational q(a, b);
        EXPECT_GT(denominator(q), 0);
        EXPECT_EQ(boost::multiprecision::gcd(abs(numerator(q)), denominator(q)), 1);
        // structural equality with the independently reduced fraction
        BigInt g = boost::multiprecision::gcd(BigInt(std::abs(a)), BigInt(std::abs(b)));
        if (g == 0) g = 1;
        BigInt num = BigInt(a) / g, den = BigInt(b) / g;
        if (den < 0) {
            num = -num;
            den = -den;
        }
        EXPECT_EQ(numerator(q), num);
        EXPECT_EQ(denominator(q), den);
    }
}

TEST(Rational, StringRoundTrip) {
    EXPECT_EQ(rat_str(Rational(19683, 512)), "19683/512");
    EXPECT_EQ(rat_str(Rational(5)), "5");
    EXPECT_EQ(rat_str(Rational(-3, 7)), "-3/7");
    EXPECT_EQ(parse_rational("19683/512"), Rational(19683, 512));
    EXPECT_EQ(parse_rational("-15/35"), Rational(-3, 7));
    EXPECT_EQ(parse_rational("42"), Rational(42));
    EXPECT_THROW(parse_rational("1/0"), ParseError);
    EXPECT_THROW(parse_rational("5/"), ParseError);
    EXPECT_THROW(parse_rational("a/2"), ParseError);
    EXPECT_THROW(parse_rational("1/2x"), ParseError);
}

TEST(Factored, Examples) {
    FactoredValue f = to_factored(Rational(19683, 256), 9);
    EXPECT_EQ(f.coeff, Rational(2));
    EXPECT_EQ(f.exp, 9u);
    EXPECT_EQ(f.str(), "2 * (3/2)^9");

    EXPECT_EQ(to_factored(Rational(1), 0).coeff, Rational(1));
    EXPECT_EQ(to_factored(Rational(9, 4), 2).coeff, Rational(1));
}

TEST(Factored, RoundTripProperty) {
    std::mt19937_64 rng(77);
    for (int i = 0; i < 300; ++i) {
        Rational v(static_cast<long long>(rng() % 1999) - 999, 1 + static_cast<long long>(rng() % 998));
        unsigned e = static_cast<unsigned>(rng() % 13);
        EXPECT_EQ(to_factored(v, e).value(), v);
    }
}

TEST(Factored, AutoWindow) {
    FactoredValue f = auto_factored(Rational(19683, 256));
    EXPECT_EQ(f.exp, 9u);
    EXPECT_EQ(f.coeff, Rational(2));
    EXPECT_EQ(auto_factored(Rational(2)).exp, 0u);
    // coefficient always lands in [2,3) once the value is >= 2
    std::mt19937_64 rng(5150);
    for (int i = 0; i < 200; ++i) {
        Rational v(2 + static_cast<long long>(rng() % 100000), 1 + static_cast<long long>(rng() % 50));
        FactoredValue g = auto_factored(v);
        EXPECT_EQ(g.value(), v);
        if (v >= 2) {
            EXPECT_GE(g.coeff, 2);
            EXPECT_LT(g.coeff, 3);
        }
    }
}

TEST(PolyShift, PaperCubic) {
    std::vector<BigInt> p{BigInt(-873), BigInt(-1197), BigInt(-280), BigInt(160)};
    std::vector<BigInt> expect{BigInt(99), BigInt(4243), BigInt(1640), BigInt(160)};
    EXPECT_EQ(poly_shift(p, 4), expect);
    for (const BigInt& c : poly_shift(p, 4)) EXPECT_GT(c, 0);
}

TEST(PolyShift, PaperQuartic) {
    std::vector<BigInt> p{BigInt(-162), BigInt(-891), BigInt(-1239), BigInt(-200), BigInt(160)};
    std::vector<BigInt> expect{BigInt(4610), BigInt(20557), BigInt(11721), BigInt(2360),
                               BigInt(160)};
    EXPECT_EQ(poly_shift(p, 4), expect);
    for (const BigInt& c : poly_shift(p, 4)) EXPECT_GT(c, 0);
}

TEST(PolyShift, IdentityAndInverse) {
    std::vector<BigInt> p{BigInt(0), BigInt(1)};  // p(t) = t
    EXPECT_EQ(poly_shift(p, 0), p);

    std::mt19937_64 rng(1234);
    for (int i = 0; i < 100; ++i) {
        std::vector<BigInt> q(1 + rng() % 6);
        for (auto& c : q) c = static_cast<long long>(rng() % 2001) - 1000;
        long long k = static_cast<long long>(rng() % 21) - 10;
        EXPECT_EQ(poly_shift(poly_shift(q, k), -k), q);
        // shifting agrees with evaluation
        BigInt x = static_cast<long long>(rng() % 19) - 9;
        EXPECT_EQ(poly_eval(poly_shift(q, k), x), poly_eval(q, x + k));
    }
}
