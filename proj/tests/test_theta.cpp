#include <gtest/gtest.h>

#include <random>

#include "ospvoa/theta.hpp"

using namespace ospvoa;

namespace {

// sum over m in [-M, M] of w^{a s (m + r/2s)} q^{b s (m + r/2s)^2}, independent of theta_big
WQSeries brute_theta(int r, int s, Rational a, Rational b, Rational order, int M = 60)
{
    std::vector<WQTerm> t;
    for (int m = -M; m <= M; ++m) {
        Rational x = m + make_rational(r, 2 * s);
        Rational qe = b * s * x * x;
        if (qe < order)
            t.push_back({a * s * x, qe, 1});
    }
    return WQSeries::from_terms(t, order);
}

WQSeries random_wq(std::mt19937& rng, Order tq)
{
    std::uniform_int_distribution<int> c(-3, 3), qe(0, 8), we(-4, 4);
    std::vector<WQTerm> t;
    for (int i = 0; i < 8; ++i)
        t.push_back({make_rational(we(rng), 2), make_rational(qe(rng), 2), make_rational(c(rng))});
    return WQSeries::from_terms(t, tq);
}

} // namespace

TEST(Theta, MatchesBruteForceSum)
{
    for (int r : {-3, -1, 0, 1, 2, 5})
        for (int s : {1, 2, 3, 6}) {
            auto a = theta_big(r, s, Rational(1, 4), Rational(1, 2), 15);
            auto b = brute_theta(r, s, Rational(1, 4), Rational(1, 2), 15);
            EXPECT_FALSE(first_discrepancy(a, b)) << r << "," << s;
        }
}

TEST(Theta, IndexPeriodicity)
{
    for (int r : {-2, 1, 3})
        EXPECT_FALSE(first_discrepancy(theta_big(r, 3, 1, 1, 20), theta_big(r + 6, 3, 1, 1, 20)));
}

TEST(Theta, ParityOfZeroSlice)
{
    for (int r : {1, 2, 3})
        EXPECT_EQ(theta_big_at_zero(r, 5, 1, 20), theta_big_at_zero(-r, 5, 1, 20));
}

TEST(Theta, Theta01AtZero)
{
    auto t = theta_big_at_zero(0, 1, 1, 30);
    for (int n = 0; n < 30; ++n) {
        int expected = 0;
        for (int m = -10; m <= 10; ++m)
            expected += (m * m == n);
        EXPECT_EQ(t.coefficient(n), expected) << n;
    }
}

TEST(Theta, NonPositiveIndexThrows)
{
    EXPECT_THROW(theta_big(1, 0, 1, 1, 5), invalid_index);
    EXPECT_THROW(theta_big(1, -2, 1, 1, 5), invalid_index);
}

TEST(Theta, Vartheta2LowestTerms)
{
    auto t = vartheta2(5);
    EXPECT_EQ(t.coefficient(Rational(1, 2), Rational(1, 8)), 1);
    EXPECT_EQ(t.coefficient(Rational(-1, 2), Rational(1, 8)), 1);
    auto at1 = wq_specialize_w1(t);
    for (int n = 0; n < 5; ++n) {
        // 2 * #{m >= 0 : m(m+1)/2 = n}
        int expected = 0;
        for (int m = 0; m < 10; ++m)
            expected += 2 * (m * (m + 1) / 2 == n);
        EXPECT_EQ(at1.coefficient(n + Rational(1, 8)), expected);
    }
}

TEST(Theta, Vartheta1LowestTermsAndOddness)
{
    auto t = vartheta1_times_i(6);
    EXPECT_EQ(t.coefficient(Rational(1, 2), Rational(1, 8)), 1);
    EXPECT_EQ(t.coefficient(Rational(-1, 2), Rational(1, 8)), -1);
    EXPECT_TRUE(wq_specialize_w1(t).empty());
}

TEST(Theta, HalfPeriodShiftFlipsSigns)
{
    auto t = wq_half_period_shift(wq_half_period_shift(vartheta2(8)));
    EXPECT_FALSE(first_discrepancy(t, vartheta2(8)));
}

TEST(WeylDenominator, LeadingTerms)
{
    auto pi_theta = weyl_denominator(5);
    EXPECT_EQ(pi_theta.coefficient(Rational(1, 4), Rational(1, 24)), 1);
    EXPECT_EQ(pi_theta.coefficient(Rational(-1, 4), Rational(1, 24)), -1);
    EXPECT_EQ(pi_theta.coefficient(Rational(-3, 4), Rational(1, 24)), 0);
}

TEST(WeylDenominator, ThetaFormEqualsProductForm)
{
    for (int order : {3, 10, 16}) {
        auto a = weyl_denominator(order, DenominatorForm::theta);
        auto b = weyl_denominator(order, DenominatorForm::product);
        EXPECT_EQ(b.q_truncation(), Order(order));
        EXPECT_FALSE(first_discrepancy(a, b)) << order;
        EXPECT_EQ(a.size(), b.size());
    }
}

TEST(WeylDenominator, TimesHalfVartheta2IsVartheta1TimesEta)
{
    // Pi(z, tau) vartheta_2(z/2, tau) = i vartheta_1(z, tau) eta(tau)
    const Rational n = 14;
    auto lhs = weyl_denominator(n) * wq_scale_w(vartheta2(n), Rational(1, 2));
    auto rhs = vartheta1_times_i(n) * WQSeries::from_qseries(qs_eta(n));
    Order t = min(lhs.q_truncation(), rhs.q_truncation());
    EXPECT_FALSE(t.is_infinite());
    EXPECT_GE(t.value(), 14);
    EXPECT_FALSE(first_discrepancy(lhs.truncated(t), rhs.truncated(t)));
}

TEST(WeylDenominator, GradedInverse)
{
    auto p = weyl_denominator(12);
    auto inv = wq_invert(p, 20);
    auto prod = p * inv;
    auto one = WQSeries::from_terms({{0, 0, 1}}, prod.q_truncation(), prod.graded_truncation());
    EXPECT_FALSE(first_discrepancy(prod, one));
    EXPECT_GT(prod.size(), 0u);
    EXPECT_EQ(prod.size(), 1u);
}

TEST(WQSeries, ScaleW)
{
    auto t = vartheta2(6);
    EXPECT_FALSE(first_discrepancy(wq_scale_w(t, 1), t));
    EXPECT_FALSE(first_discrepancy(wq_scale_w(wq_scale_w(t, 2), Rational(1, 2)), t));
    auto h = wq_scale_w(t, Rational(1, 2));
    EXPECT_EQ(h.coefficient(Rational(1, 4), Rational(1, 8)), 1);
    EXPECT_EQ(h.coefficient(Rational(-1, 4), Rational(1, 8)), 1);
}

TEST(WQSeries, SpecializeMonomial)
{
    auto m = WQSeries::from_terms({{Rational(1, 4), Rational(1, 24), 1}});
    EXPECT_EQ(wq_specialize_w1(m), QSeries::monomial(1, Rational(1, 24)));
}

TEST(WQSeries, OutsideKnownRegionThrows)
{
    auto inv = wq_invert(weyl_denominator(6), 8);
    EXPECT_THROW(inv.coefficient(-20, 0), out_of_range);
    EXPECT_THROW(wq_specialize_w1(inv), error);
}

TEST(WQSeriesProperty, RingAxioms)
{
    std::mt19937 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        auto a = random_wq(rng, 6), b = random_wq(rng, 5), c = random_wq(rng, 7);
        EXPECT_FALSE(first_discrepancy(a * b, b * a));
        EXPECT_FALSE(first_discrepancy((a * b) * c, a * (b * c)));
        EXPECT_FALSE(first_discrepancy(a * (b + c), a * b + a * c));
    }
}

TEST(WQSeriesProperty, InverseRandomUnits)
{
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> c(-3, 3), qe(1, 6), we(-3, 3);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<WQTerm> t{{0, 0, 2}};
        for (int i = 0; i < 4; ++i) {
            Rational a = make_rational(we(rng), 2), b = make_rational(qe(rng), 2);
            if (2 * b - a > 0) // keep the constant term as the unique leading monomial
                t.push_back({a, b, make_rational(c(rng))});
        }
        auto a = WQSeries::from_terms(t, 8);
        if (a.coefficient(0, 0) == 0)
            continue;
        auto prod = a * wq_invert(a, 12);
        auto one = WQSeries::from_terms({{0, 0, 1}}, prod.q_truncation(), prod.graded_truncation());
        EXPECT_FALSE(first_discrepancy(prod, one));
    }
}
