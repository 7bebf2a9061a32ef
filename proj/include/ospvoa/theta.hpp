#pragma once

// Jacobi theta functions and the Weyl super denominator as truncated
// (w, q) expansions. Arguments Theta(alpha z, beta tau) are realized as
// exponent scalings.

#include <cstdint>
#include <string>
#include <vector>

#include "ospvoa/qseries.hpp"
#include "ospvoa/wqseries.hpp"

namespace ospvoa {

/// Theta_{r,s}(w_scale z, q_scale tau) = sum_m w^{w_scale s (m + r/2s)} q^{q_scale s (m + r/2s)^2},
/// keeping q-exponents below `order`.
inline WQSeries theta_big(std::int64_t r, std::int64_t s, const Rational& w_scale, const Rational& q_scale,
                          const Rational& order)
{
    if (s <= 0)
        throw invalid_index("theta index s must be positive, got " + std::to_string(s));
    if (order <= 0)
        throw error("theta truncation order must be positive");
    if (q_scale <= 0)
        throw error("theta q-scale must be positive");
    // with v = 2 s m + r:  w-exponent w_scale v / 2,  q-exponent q_scale v^2 / (4 s)
    std::vector<WQTerm> terms;
    auto add = [&](std::int64_t m) {
        const std::int64_t v = 2 * s * m + r;
        Rational qe = q_scale * make_rational(v * v, 4 * s);
        if (qe >= order)
            return false;
        terms.push_back({w_scale * make_rational(v, 2), qe, 1});
        return true;
    };
    // centre of the parabola at m = -r / 2s
    const std::int64_t centre = floor_div(-r, 2 * s);
    for (std::int64_t m = centre;; --m)
        if (!add(m))
            break;
    for (std::int64_t m = centre + 1;; ++m)
        if (!add(m))
            break;
    return WQSeries::from_terms(terms, Order(order));
}

/// Theta_{r,s}(0, q_scale tau) as a q-series.
inline QSeries theta_big_at_zero(std::int64_t r, std::int64_t s, const Rational& q_scale, const Rational& order)
{
    return wq_specialize_w1(theta_big(r, s, 0, q_scale, order));
}

/// vartheta_2(z, tau) = sum_n w^{n+1/2} q^{(n+1/2)^2/2} = Theta_{1,1}(z, tau/2).
inline WQSeries vartheta2(const Rational& order) { return theta_big(1, 1, 1, Rational(1, 2), order); }

/// i vartheta_1(z, tau) = sum_n (-1)^n w^{n+1/2} q^{(n+1/2)^2/2}, obtained from
/// vartheta_1(z) = -vartheta_2(z + 1/2). The sign makes the leading term +w^{1/2} q^{1/8},
/// which gives the sl2 vacuum character leading coefficient +1.
inline WQSeries vartheta1_times_i(const Rational& order) { return wq_half_period_shift(vartheta2(order)); }

enum class DenominatorForm { theta, product };

namespace detail {

// (1 + sign * w^a q^n)^{-1} expanded as a geometric series below q-order `order`.
inline WQSeries geometric_inverse(const Rational& sign, const Rational& a, std::int64_t n, const Rational& order)
{
    std::vector<WQTerm> terms;
    Rational c = 1;
    for (std::int64_t j = 0; j * n < order; ++j) {
        terms.push_back({a * j, make_rational(j * n), c});
        c *= -sign;
    }
    return WQSeries::from_terms(terms, Order(order));
}

inline WQSeries binomial(const Rational& c, const Rational& a, std::int64_t n, const Rational& order)
{
    return WQSeries::from_terms({{0, 0, 1}, {a, make_rational(n), c}}, Order(order));
}

} // namespace detail

/// Weyl super denominator Pi(z, tau), exact for q-exponents below `order`.
///
/// theta form:   Theta_{1,3}(z/2, tau/2) - Theta_{-1,3}(z/2, tau/2)
/// product form: w^{1/4} q^{1/24} prod_n (1-q^n)(1-w q^n)(1-w^{-1}q^{n-1}) / ((1+w^{1/2}q^n)(1+w^{-1/2}q^{n-1}))
///
/// In the product the n = 1 quotient (1 - w^{-1})/(1 + w^{-1/2}) is the
/// polynomial 1 - w^{-1/2}; every other factor has positive q-degree.
inline WQSeries weyl_denominator(const Rational& order, DenominatorForm form = DenominatorForm::theta)
{
    const Rational half(1, 2);
    if (form == DenominatorForm::theta)
        return theta_big(1, 3, half, half, order) - theta_big(-1, 3, half, half, order);

    WQSeries acc = WQSeries::from_terms({{Rational(1, 4), Rational(1, 24), 1}, {Rational(-1, 4), Rational(1, 24), -1}},
                                        Order::infinite());
    const Rational inner = order - Rational(1, 24);
    WQSeries prod = WQSeries::from_terms({{0, 0, 1}}, Order(inner));
    for (std::int64_t n = 1; n < inner; ++n) {
        prod = prod * detail::binomial(-1, 0, n, inner);
        prod = prod * detail::binomial(-1, 1, n, inner);
        prod = prod * detail::geometric_inverse(1, half, n, inner);
        // the n+1 factors carrying q^{(n+1)-1}
        prod = prod * detail::binomial(-1, -1, n, inner);
        prod = prod * detail::geometric_inverse(1, -half, n, inner);
    }
    return (acc * prod).truncated(Order(order));
}

} // namespace ospvoa
