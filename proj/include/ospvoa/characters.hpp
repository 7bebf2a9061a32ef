#pragma once

// Characters of osp(1|2), sl2 and Virasoro modules, and exact checks of the
// branching of osp(1|2) characters into sl2 x Virasoro.
//
// Quotients by Pi and i*vartheta_1 live in the graded completion described in
// wqseries.hpp. At integer level every character has finite w-support per
// q-order, so a large enough graded order recovers it completely; the result
// is certified by its w <-> 1/w symmetry and the graded truncation is dropped.
// At fractional level the sl2 modules with s >= 1 have infinite w-support and
// results stay graded-truncated.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ospvoa/levels.hpp"
#include "ospvoa/theta.hpp"

namespace ospvoa {

namespace detail {

inline Rational default_graded_order(const AdmissibleLevel& level, const Rational& order)
{
    // |a| <= a_top + (b - b0) for integrable modules; this leaves ample room
    return 3 * order + level.p() + 4;
}

inline void require_w_symmetry(const WQSeries& s, const std::string& what)
{
    for (const auto& t : s.terms())
        if (s.coefficient(-t.w_exponent, t.q_exponent) != t.coefficient)
            throw error(what + ": graded order too small, w <-> 1/w symmetry broken at w^" +
                        t.w_exponent.get_str() + " q^" + t.q_exponent.get_str());
}

/// num / den to q-order `order` with graded order `graded`.
inline WQSeries graded_quotient(const WQSeries& num, const WQSeries& den, const Rational& order,
                                const Rational& graded)
{
    const Order gnum = num.graded_valuation(den.w_weight());
    const Order cap = gnum.is_infinite() ? Order(graded) : Order(graded - gnum.value());
    WQSeries out = wq_divide(num, den, cap).truncated(Order(order), Order(graded));
    return out;
}

inline WQSeries finish_character(WQSeries ch, bool integrable, const std::string& what)
{
    if (!integrable)
        return ch;
    require_w_symmetry(ch, what);
    return ch.with_graded_truncation_removed();
}

// Theta_{x,m}(z/2p', tau/2) - Theta_{y,m}(z/2p', tau/2)
inline WQSeries theta_difference(std::int64_t x, std::int64_t y, std::int64_t m, std::int64_t p_prime,
                                 const Rational& order)
{
    const Rational ws = make_rational(1, 2 * p_prime), qs(1, 2);
    return theta_big(x, m, ws, qs, order) - theta_big(y, m, ws, qs, order);
}

// Theta_{x,m}(0, tau/2) - Theta_{y,m}(0, tau/2)
inline QSeries theta_difference_at_zero(std::int64_t x, std::int64_t y, std::int64_t m, const Rational& order)
{
    return theta_big_at_zero(x, m, Rational(1, 2), order) - theta_big_at_zero(y, m, Rational(1, 2), order);
}

} // namespace detail

/// Numerator of the osp(1|2) character: (Theta_{b+,a} - Theta_{b-,a})(z/2p', tau/2),
/// b+- = +-p' r - p s, a = p p'.
inline WQSeries osp_numerator(const AdmissibleLevel& level, const OspLabel& label, const Rational& order)
{
    validate(level, label);
    const std::int64_t p = level.p(), pp = level.p_prime();
    return detail::theta_difference(pp * label.r - p * label.s, -pp * label.r - p * label.s, p * pp, pp, order);
}

/// ch[M_{j_{r,s}}](w, q) = osp_numerator / Pi.
inline WQSeries osp_char(const AdmissibleLevel& level, const OspLabel& label, const Rational& order,
                         std::optional<Rational> graded_order = std::nullopt)
{
    const Rational g = graded_order.value_or(detail::default_graded_order(level, order));
    WQSeries num = osp_numerator(level, label, order + 1);
    WQSeries ch = detail::graded_quotient(num, weyl_denominator(order + 1), order, g);
    return detail::finish_character(std::move(ch), level.is_integral(), "osp character");
}

/// ch[D+_{r,s}](w, q) = (Theta_{2p'r - Delta s, Delta p'} - Theta_{-2p'r - Delta s, Delta p'})(z/2p', tau/2) / (i vartheta_1).
inline WQSeries sl2_char(const AdmissibleLevel& level, const Sl2Label& label, const Rational& order,
                         std::optional<Rational> graded_order = std::nullopt)
{
    validate(level, label);
    const std::int64_t pp = level.p_prime(), d = level.delta();
    const Rational g = graded_order.value_or(detail::default_graded_order(level, order));
    WQSeries num = detail::theta_difference(2 * pp * label.r - d * label.s, -2 * pp * label.r - d * label.s, d * pp,
                                            pp, order + 1);
    WQSeries ch = detail::graded_quotient(num, vartheta1_times_i(order + 1), order, g);
    return detail::finish_character(std::move(ch), level.is_integral() && label.s == 0, "sl2 character");
}

/// Virasoro character for central charge 1 - 6(u-p)^2/(up):
/// (Theta_{2pr - 2us, 2up} - Theta_{-2pr - 2us, 2up})(0, tau/2) / eta.
inline QSeries vir_char(std::int64_t u, std::int64_t p, const VirLabel& label, const Rational& order)
{
    validate_vir_params(u, p);
    validate_vir(u, p, label);
    QSeries num = detail::theta_difference_at_zero(2 * p * label.r - 2 * u * label.s,
                                                   -2 * p * label.r - 2 * u * label.s, 2 * u * p, order + 1);
    return (num * qs_invert(qs_eta(order + 1))).truncated(Order(order));
}

/// The Virasoro factor at an admissible level: Vir with (u, p) = ((p + p')/2, p).
inline QSeries vir_char(const AdmissibleLevel& level, const VirLabel& label, const Rational& order)
{
    return vir_char(level.u(), level.p(), label, order);
}

/// Outcome of an exact series identity check.
struct IdentityReport {
    bool holds = false;
    Rational order;                        // q-order of the comparison
    Order graded_order;                    // inf when the full region was compared
    std::size_t terms_compared = 0;        // nonzero terms on the left-hand side
    std::optional<Discrepancy> discrepancy; // lowest (q, w) mismatch
};

namespace detail {

inline IdentityReport compare(const WQSeries& lhs, const WQSeries& rhs, const Rational& order)
{
    const Order tq = min(Order(order), min(lhs.q_truncation(), rhs.q_truncation()));
    const Order tg = min(lhs.graded_truncation(), rhs.graded_truncation());
    WQSeries l = lhs.truncated(tq, tg), r = rhs.truncated(tq, tg);
    IdentityReport rep;
    rep.order = tq.is_infinite() ? order : tq.value();
    rep.graded_order = tg;
    rep.terms_compared = l.size();
    rep.discrepancy = first_discrepancy(l, r);
    rep.holds = !rep.discrepancy && rep.order >= order;
    return rep;
}

} // namespace detail

/// First factor of the i-th summand on the right of the theta identity:
/// (Theta_{2p'i - Delta s, Delta p'} - Theta_{-2p'i - Delta s, Delta p'})(z/2p', tau/2).
inline WQSeries theta_identity_first_factor(const AdmissibleLevel& level, std::int64_t s, std::int64_t i,
                                            const Rational& order)
{
    const std::int64_t pp = level.p_prime(), d = level.delta();
    return detail::theta_difference(2 * pp * i - d * s, -2 * pp * i - d * s, d * pp, pp, order);
}

/// (Theta_{2pi - Delta r, Delta p} - Theta_{-2pi - Delta r, Delta p})(0, tau/2).
inline QSeries theta_identity_second_factor(const AdmissibleLevel& level, std::int64_t r, std::int64_t i,
                                            const Rational& order)
{
    const std::int64_t p = level.p(), d = level.delta();
    return detail::theta_difference_at_zero(2 * p * i - d * r, -2 * p * i - d * r, d * p, order);
}

/// osp_numerator * vartheta_2(z/2, tau) = sum_{i=1}^{Delta/2 - 1} first_factor(i) * second_factor(i).
inline IdentityReport verify_theta_identity(const AdmissibleLevel& level, const OspLabel& label,
                                            const Rational& order)
{
    validate(level, label);
    WQSeries lhs = osp_numerator(level, label, order) * wq_scale_w(vartheta2(order), Rational(1, 2));
    WQSeries rhs = WQSeries::zero(Order(order));
    for (std::int64_t i = 1; i <= level.u() - 1; ++i)
        rhs = rhs + theta_identity_first_factor(level, label.s, i, order) *
                        WQSeries::from_qseries(theta_identity_second_factor(level, label.r, i, order));
    return detail::compare(lhs, rhs, order);
}

struct DecompositionOptions {
    Rational sl2_w_scale = 1;                                      // ch[D+](w^scale, q)
    std::optional<std::pair<std::int64_t, VirLabel>> vir_override; // replace the Vir label of summand i
    std::optional<Rational> graded_order;
};

/// ch[M_{j_{r,s}}](w, q) = sum_{i=1}^{u-1} ch[D+_{i,s}](w, q) ch[V_{i,r}](q).
inline IdentityReport verify_decomposition(const AdmissibleLevel& level, const OspLabel& label,
                                           const Rational& order, const DecompositionOptions& opts = {})
{
    validate(level, label);
    WQSeries lhs = osp_char(level, label, order, opts.graded_order);
    WQSeries rhs = WQSeries::zero(Order(order));
    for (std::int64_t i = 1; i <= level.u() - 1; ++i) {
        VirLabel v{i, label.r};
        if (opts.vir_override && opts.vir_override->first == i)
            v = opts.vir_override->second;
        // one extra q-order absorbs the negative valuations of the factors
        WQSeries sl2 = sl2_char(level, {i, label.s}, order + 1, opts.graded_order);
        if (opts.sl2_w_scale != 1)
            sl2 = wq_scale_w(sl2, opts.sl2_w_scale);
        rhs = rhs + sl2 * WQSeries::from_qseries(vir_char(level, v, order + 1));
    }
    return detail::compare(lhs, rhs, order);
}

/// Lowest q-exponent of a nonempty series.
inline Rational lowest_q_exponent(const WQSeries& s)
{
    if (s.empty())
        throw empty_series();
    return s.terms().front().q_exponent;
}

/// -24 times the lowest exponent of the vacuum character ch[M_{j_{1,0}}].
inline Rational osp_vacuum_central_charge(const AdmissibleLevel& level)
{
    return -24 * lowest_q_exponent(osp_char(level, {1, 0}, 2));
}

/// Even and odd parts of the induced module M_r = sum_{i=1}^{k+1} L_{i,0} (x) V_{i,r},
/// r = 1..2k+2; the even part collects odd i.
struct InducedCharacters {
    WQSeries even;
    WQSeries odd;
};

inline InducedCharacters induced_module_characters(std::int64_t k, std::int64_t r, const Rational& order)
{
    const AdmissibleLevel level = AdmissibleLevel::from_k(k);
    if (r < 1 || r > 2 * k + 2)
        throw invalid_label("induced module index r = " + std::to_string(r));
    InducedCharacters out{WQSeries::zero(Order(order)), WQSeries::zero(Order(order))};
    for (std::int64_t i = 1; i <= k + 1; ++i) {
        WQSeries term =
            sl2_char(level, {i, 0}, order + 1) * WQSeries::from_qseries(vir_char(level, {i, r}, order + 1));
        (i % 2 == 1 ? out.even : out.odd) = (i % 2 == 1 ? out.even : out.odd) + term;
    }
    out.even = out.even.truncated(Order(order));
    out.odd = out.odd.truncated(Order(order));
    return out;
}

/// Conformal dimension of L_{i,0} (x) V_{i,r} at integer level k, mod 1:
/// (2i^2 - 2ir + (k+2)(r^2-1)/(2k+3)) / 4.
inline Rational induced_conformal_dimension(std::int64_t k, std::int64_t i, std::int64_t r)
{
    return (make_rational(2 * i * i - 2 * i * r) + make_rational((k + 2) * (r * r - 1), 2 * k + 3)) / 4;
}

inline Rational frac_part(const Rational& x)
{
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return x - Rational(fl);
}

/// True iff all q-exponents of the series lie in a single coset of Z.
inline bool is_integer_graded(const WQSeries& s)
{
    std::optional<Rational> first;
    for (const auto& t : s.terms()) {
        if (!first)
            first = t.q_exponent;
        else if (!is_integer(t.q_exponent - *first))
            return false;
    }
    return true;
}

/// Locality of M_r read off the q-exponents of its character.
inline bool induced_module_is_local(std::int64_t k, std::int64_t r, const Rational& order)
{
    const auto m = induced_module_characters(k, r, order);
    return is_integer_graded(m.even + m.odd);
}

} // namespace ospvoa
