#include <gtest/gtest.h>

#include <random>

#include "ospvoa/qseries.hpp"

using namespace ospvoa;

namespace {

QSeries poly(std::initializer_list<std::pair<int, int>> terms, Order order = Order::infinite())
{
    std::vector<std::pair<Rational, Rational>> t;
    for (auto [e, c] : terms)
        t.emplace_back(make_rational(e), make_rational(c));
    return QSeries::from_terms(t, order);
}

// prod_{n=1}^{m} (1 - q^n) multiplied out as integer polynomial arrays
std::vector<long> euler_product_oracle(int m, int len)
{
    std::vector<long> c(len, 0);
    c[0] = 1;
    for (int n = 1; n <= m; ++n)
        for (int i = len - 1; i >= n; --i)
            c[i] -= c[i - n];
    return c;
}

// number of partitions of n, by the coin-change recursion
std::vector<long> partition_oracle(int len)
{
    std::vector<long> p(len, 0);
    p[0] = 1;
    for (int part = 1; part < len; ++part)
        for (int i = part; i < len; ++i)
            p[i] += p[i - part];
    return p;
}

QSeries random_series(std::mt19937& rng, int den, int span, Order order)
{
    std::uniform_int_distribution<int> coeff(-5, 5), expo(0, span);
    std::vector<std::pair<Rational, Rational>> t;
    for (int i = 0; i < 6; ++i)
        t.emplace_back(make_rational(expo(rng), den), make_rational(coeff(rng)));
    return QSeries::from_terms(t, order);
}

} // namespace

TEST(QSeries, AddCancelsConstants)
{
    auto s = poly({{0, 1}, {1, 1}}, 5) + poly({{0, -1}, {2, 1}}, 4);
    EXPECT_EQ(s, poly({{1, 1}, {2, 1}}, 4));
    EXPECT_EQ(s.truncation(), Order(4));
}

TEST(QSeries, AddLcmOfLattices)
{
    auto s = QSeries::monomial(1, Rational(1, 2)) + QSeries::monomial(1, Rational(1, 3));
    EXPECT_EQ(s.lattice_denominator(), 6);
    EXPECT_EQ(s.size(), 2u);
    EXPECT_EQ(s + QSeries::zero(), s);
}

TEST(QSeries, MulBasic)
{
    EXPECT_EQ(poly({{0, 1}, {1, 1}}) * poly({{0, 1}, {1, -1}}), poly({{0, 1}, {2, -1}}));
    auto m = QSeries::monomial(1, Rational(1, 24)) * QSeries::monomial(1, Rational(-1, 24));
    EXPECT_EQ(m, QSeries::one());
}

TEST(QSeries, MulTruncationRule)
{
    // T = min(Ta + v(b), Tb + v(a))
    auto a = poly({{1, 1}, {2, 3}}, 6);
    auto b = poly({{2, 1}}, 5);
    EXPECT_EQ((a * b).truncation(), Order(6));
}

TEST(QSeries, EulerPrefixMatchesPolynomialOracle)
{
    auto s = (poly({{0, 1}, {1, -1}}) * poly({{0, 1}, {2, -1}}) * poly({{0, 1}, {3, -1}})).truncated(7);
    auto oracle = euler_product_oracle(3, 7);
    for (int n = 0; n < 7; ++n)
        EXPECT_EQ(s.coefficient(n), oracle[n]) << n;
    EXPECT_EQ(s, poly({{0, 1}, {1, -1}, {2, -1}, {4, 1}, {5, 1}, {6, -1}}, 7));
}

TEST(QSeries, InvertGeometric)
{
    auto inv = qs_invert(poly({{0, 1}, {1, -1}}), 10);
    for (int n = 0; n < 10; ++n)
        EXPECT_EQ(inv.coefficient(n), 1);
}

TEST(QSeries, InvertMonomial)
{
    auto inv = qs_invert(QSeries::monomial(1, Rational(1, 4)));
    EXPECT_EQ(inv, QSeries::monomial(1, Rational(-1, 4)));
}

TEST(QSeries, InvertEmptyThrows) { EXPECT_THROW(qs_invert(QSeries::zero(5)), empty_series); }

TEST(QSeries, InverseEtaIsPartitionFunction)
{
    auto eta = qs_eta(40);
    auto inv = qs_invert(eta).shifted(Rational(1, 24));
    auto p = partition_oracle(39);
    for (int n = 0; n < 39; ++n)
        EXPECT_EQ(inv.coefficient(n), p[n]) << n;
}

TEST(QSeries, EtaMatchesDirectProduct)
{
    auto eta = qs_eta(30);
    EXPECT_EQ(eta.coefficient(Rational(1, 24)), 1);
    EXPECT_EQ(eta.coefficient(Rational(25, 24)), -1);
    auto oracle = euler_product_oracle(30, 29);
    for (int n = 0; n < 29; ++n)
        EXPECT_EQ(eta.coefficient(n + Rational(1, 24)), oracle[n]) << n;
}

TEST(QSeries, CoefficientBeyondTruncationThrows)
{
    EXPECT_THROW(poly({{0, 1}}, 3).coefficient(3), out_of_range);
}

TEST(QSeries, EvalValues)
{
    PrecisionScope ps(256);
    Complex i{0, 1};
    auto one = qs_eval(QSeries::one(), i);
    EXPECT_LT(abs_value(one.value - Complex(1)), 1e-60);
    auto q = qs_eval(poly({{1, 1}}), i);
    EXPECT_LT(abs_value(q.value - Complex(boost::multiprecision::exp(-2 * pi()))), 1e-60);
    // eta(i) = Gamma(1/4) / (2 pi^{3/4})
    auto eta = qs_eval(qs_eta(60), i);
    Real expected = boost::multiprecision::tgamma(Real(1) / 4) / (2 * boost::multiprecision::pow(pi(), Real(3) / 4));
    EXPECT_LT(abs_value(eta.value - Complex(expected)), 1e-60);
    EXPECT_NEAR(static_cast<double>(eta.value.re), 0.768225, 1e-6);
    EXPECT_LT(eta.tail_bound, 1e-100);
}

TEST(QSeries, EvalOutsideDomainThrows)
{
    EXPECT_THROW(qs_eval(QSeries::one(), Complex(Real(0), Real(0))), nonconvergent_domain);
    EXPECT_THROW(qs_eval(QSeries::one(), Complex(Real(1), Real(-1))), nonconvergent_domain);
}

TEST(QSeriesProperty, RingAxioms)
{
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        auto a = random_series(rng, 2, 12, 8), b = random_series(rng, 3, 12, 9), c = random_series(rng, 6, 12, 7);
        auto lhs = (a * b) * c, rhs = a * (b * c);
        Order t = min(lhs.truncation(), rhs.truncation());
        EXPECT_EQ(lhs.truncated(t), rhs.truncated(t));
        EXPECT_EQ(a * b, b * a);
        auto d1 = a * (b + c), d2 = a * b + a * c;
        t = min(d1.truncation(), d2.truncation());
        EXPECT_EQ(d1.truncated(t), d2.truncated(t));
    }
}

TEST(QSeriesProperty, InverseToGuaranteedOrder)
{
    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        auto a = random_series(rng, 4, 16, 6);
        if (a.empty())
            continue;
        auto prod = a * qs_invert(a);
        EXPECT_FALSE(prod.truncation().is_infinite());
        EXPECT_EQ(prod, QSeries::one(prod.truncation()));
    }
}

TEST(QSeriesProperty, TruncationMonotonicity)
{
    auto lo = qs_invert(qs_eta(10)), hi = qs_invert(qs_eta(25));
    EXPECT_EQ(hi.truncated(lo.truncation()), lo);
}
