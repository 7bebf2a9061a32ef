#pragma once

// Two-variable truncated expansions  sum c_{a,b} w^a q^b  with rational
// exponents on lattices (1/Dw) Z and (1/Dq) Z.
//
// Characters are expanded in the domain 1 <= |w| <= |q|^{-1}, where both
// w^{-1} and wq are small. That expansion is a completion with respect to the
// grading  deg(w^a q^b) = 2b - lambda*a  (lambda = 1 unless w was rescaled),
// so a series is known on the region
//
//     b < Tq   and   deg < Tg,
//
// Tq being the q-truncation order and Tg the graded truncation order. Theta
// functions are finite in w at every q-order and carry Tg = inf; quotients by
// the Weyl denominators carry a finite Tg. Every w-slice of a series is an
// ordinary QSeries whose own order is min(Tq, (Tg + lambda*a)/2).

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ospvoa/qseries.hpp"
#include "ospvoa/rational.hpp"

namespace ospvoa {

struct WQTerm {
    Rational w_exponent;
    Rational q_exponent;
    Rational coefficient;
};

class WQSeries {
public:
    using Key = std::pair<std::int64_t, std::int64_t>; // (q index, w index)

    WQSeries() = default;

    static WQSeries zero(Order q_order = Order::infinite(), Order graded_order = Order::infinite())
    {
        WQSeries s;
        s.tq_ = std::move(q_order);
        s.tg_ = std::move(graded_order);
        return s;
    }

    static WQSeries from_terms(const std::vector<WQTerm>& terms, Order q_order = Order::infinite(),
                               Order graded_order = Order::infinite(), const Rational& w_weight = 1)
    {
        WQSeries s = zero(std::move(q_order), std::move(graded_order));
        s.weight_ = w_weight;
        for (const auto& t : terms) {
            s.dw_ = checked_lcm(s.dw_, to_int64(t.w_exponent.get_den()));
            s.dq_ = checked_lcm(s.dq_, to_int64(t.q_exponent.get_den()));
        }
        for (const auto& t : terms)
            s.add_term({lattice_index(t.q_exponent, s.dq_), lattice_index(t.w_exponent, s.dw_)},
                       t.coefficient);
        s.normalize();
        return s;
    }

    /// q-series placed on the w^0 slice.
    static WQSeries from_qseries(const QSeries& q)
    {
        WQSeries s = zero(q.truncation());
        s.dq_ = q.lattice_denominator();
        for (const auto& [n, c] : q.lattice_terms())
            s.terms_.emplace(Key{n, 0}, c);
        return s;
    }

    static WQSeries from_lattice(std::int64_t dw, std::int64_t dq, std::map<Key, Rational> terms,
                                 Order q_order, Order graded_order, const Rational& w_weight)
    {
        WQSeries s = zero(std::move(q_order), std::move(graded_order));
        s.dw_ = dw;
        s.dq_ = dq;
        s.weight_ = w_weight;
        for (auto& [k, c] : terms)
            s.add_term(k, c);
        s.normalize();
        return s;
    }

    std::int64_t w_lattice_denominator() const { return dw_; }
    std::int64_t q_lattice_denominator() const { return dq_; }
    const Order& q_truncation() const { return tq_; }
    const Order& graded_truncation() const { return tg_; }
    const Rational& w_weight() const { return weight_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const std::map<Key, Rational>& lattice_terms() const { return terms_; }

    Rational w_exp(std::int64_t idx) const { return make_rational(idx, dw_); }
    Rational q_exp(std::int64_t idx) const { return make_rational(idx, dq_); }

    Rational degree(const Rational& w_exponent, const Rational& q_exponent) const
    {
        return 2 * q_exponent - weight_ * w_exponent;
    }

    /// True iff the coefficient of w^a q^b is exactly known.
    bool known(const Rational& a, const Rational& b) const
    {
        return tq_.covers(b) && tg_.covers(degree(a, b));
    }

    std::vector<WQTerm> terms() const
    {
        std::vector<WQTerm> out;
        out.reserve(terms_.size());
        for (const auto& [k, c] : terms_)
            out.push_back({w_exp(k.second), q_exp(k.first), c});
        return out;
    }

    Rational coefficient(const Rational& a, const Rational& b) const
    {
        if (!known(a, b))
            throw out_of_range("(w^" + a.get_str() + ", q^" + b.get_str() + ") lies outside the known region");
        Rational sa = a * dw_, sb = b * dq_;
        if (!is_integer(sa) || !is_integer(sb))
            return 0;
        auto it = terms_.find({to_int64(sb.get_num()), to_int64(sa.get_num())});
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Truncation order of the w^a slice.
    Order slice_order(const Rational& a) const
    {
        if (tg_.is_infinite())
            return tq_;
        return min(tq_, Order((tg_.value() + weight_ * a) / 2));
    }

    /// Coefficient of w^a as a q-series.
    QSeries slice(const Rational& a) const
    {
        std::map<std::int64_t, Rational> out;
        Rational sa = a * dw_;
        if (is_integer(sa)) {
            std::int64_t ai = to_int64(sa.get_num());
            for (const auto& [k, c] : terms_)
                if (k.second == ai)
                    out.emplace(k.first, c);
        }
        return QSeries::from_lattice(dq_, std::move(out), slice_order(a));
    }

    /// All nonzero w-slices, keyed by w-exponent.
    std::map<Rational, QSeries> w_slices() const
    {
        std::map<std::int64_t, std::map<std::int64_t, Rational>> grouped;
        for (const auto& [k, c] : terms_)
            grouped[k.second].emplace(k.first, c);
        std::map<Rational, QSeries> out;
        for (auto& [ai, m] : grouped) {
            Rational a = w_exp(ai);
            out.emplace(a, QSeries::from_lattice(dq_, std::move(m), slice_order(a)));
        }
        return out;
    }

    /// Smallest stored q-exponent, or the q-order if nothing is stored.
    Order q_valuation() const
    {
        if (terms_.empty())
            return tq_;
        return Order(q_exp(terms_.begin()->first.first));
    }

    /// Smallest stored degree under `weight`, or the graded order if nothing is stored.
    Order graded_valuation(const Rational& weight) const
    {
        if (terms_.empty())
            return tg_;
        std::optional<Rational> best;
        for (const auto& [k, c] : terms_) {
            Rational d = 2 * q_exp(k.first) - weight * w_exp(k.second);
            if (!best || d < *best)
                best = d;
        }
        return Order(*best);
    }

    WQSeries operator-() const
    {
        WQSeries s = *this;
        for (auto& [k, c] : s.terms_)
            c = -c;
        return s;
    }

    friend WQSeries operator*(const Rational& k, const WQSeries& a)
    {
        WQSeries s = a;
        if (k == 0) {
            s.terms_.clear();
            return s;
        }
        for (auto& [key, c] : s.terms_)
            c *= k;
        return s;
    }

    /// Lower the truncation orders, dropping terms outside the new region.
    WQSeries truncated(const Order& q_order, const Order& graded_order = Order::infinite()) const
    {
        WQSeries s = *this;
        s.tq_ = min(tq_, q_order);
        s.tg_ = min(tg_, graded_order);
        s.prune();
        return s;
    }

    /// Forget the graded truncation. Only valid when the caller knows that
    /// every term with q-exponent below Tq already lies in the known region
    /// (finite w-support per q-order, e.g. integrable characters).
    WQSeries with_graded_truncation_removed() const
    {
        WQSeries s = *this;
        s.tg_ = Order::infinite();
        return s;
    }

    std::string str() const
    {
        std::ostringstream os;
        bool first = true;
        for (const auto& [k, c] : terms_) {
            if (!first)
                os << " + ";
            first = false;
            os << c.get_str() << "*w^(" << w_exp(k.second).get_str() << ")*q^(" << q_exp(k.first).get_str()
               << ")";
        }
        if (first)
            os << "0";
        os << " [q<" << tq_.str() << ", deg<" << tg_.str() << "]";
        return os.str();
    }

    // low-level mutation used by the free functions below
    void add_term(const Key& k, const Rational& c)
    {
        if (c == 0 || !known(w_exp(k.second), q_exp(k.first)))
            return;
        auto [it, inserted] = terms_.emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    WQSeries on_lattices(std::int64_t dw, std::int64_t dq) const
    {
        if (dw % dw_ != 0 || dq % dq_ != 0)
            throw lattice_mismatch("lattice refinement must be a multiple");
        WQSeries s = *this;
        s.dw_ = dw;
        s.dq_ = dq;
        s.terms_.clear();
        const std::int64_t fw = dw / dw_, fq = dq / dq_;
        for (const auto& [k, c] : terms_)
            s.terms_.emplace(Key{k.first * fq, k.second * fw}, c);
        return s;
    }

    void set_w_weight(const Rational& w) { weight_ = w; }

    void normalize()
    {
        std::int64_t gq = dq_, gw = dw_;
        for (const auto& [k, c] : terms_) {
            gq = std::gcd(gq, k.first);
            gw = std::gcd(gw, k.second);
        }
        if (gq <= 1 && gw <= 1)
            return;
        gq = std::max<std::int64_t>(gq, 1);
        gw = std::max<std::int64_t>(gw, 1);
        std::map<Key, Rational> out;
        for (auto& [k, c] : terms_)
            out.emplace_hint(out.end(), Key{k.first / gq, k.second / gw}, std::move(c));
        terms_ = std::move(out);
        dq_ /= gq;
        dw_ /= gw;
    }

private:
    void prune()
    {
        std::erase_if(terms_, [this](const auto& kv) {
            return !known(w_exp(kv.first.second), q_exp(kv.first.first));
        });
    }

    std::int64_t dw_ = 1;
    std::int64_t dq_ = 1;
    std::map<Key, Rational> terms_;
    Order tq_;
    Order tg_;
    Rational weight_ = 1;
};

namespace detail {

inline Rational common_weight(const WQSeries& a, const WQSeries& b)
{
    const bool fa = !a.graded_truncation().is_infinite();
    const bool fb = !b.graded_truncation().is_infinite();
    if (fa && fb && a.w_weight() != b.w_weight())
        throw error("graded truncations with different w-weights cannot be combined");
    if (fa)
        return a.w_weight();
    if (fb)
        return b.w_weight();
    return a.w_weight();
}

} // namespace detail

inline WQSeries wq_add(const WQSeries& a, const WQSeries& b)
{
    const Rational weight = detail::common_weight(a, b);
    const std::int64_t dw = checked_lcm(a.w_lattice_denominator(), b.w_lattice_denominator());
    const std::int64_t dq = checked_lcm(a.q_lattice_denominator(), b.q_lattice_denominator());
    WQSeries x = a.on_lattices(dw, dq), y = b.on_lattices(dw, dq);
    auto terms = x.lattice_terms();
    for (const auto& [k, c] : y.lattice_terms()) {
        auto [it, inserted] = terms.emplace(k, c);
        if (!inserted)
            it->second += c;
    }
    std::erase_if(terms, [](const auto& kv) { return kv.second == 0; });
    return WQSeries::from_lattice(dw, dq, std::move(terms), min(a.q_truncation(), b.q_truncation()),
                                  min(a.graded_truncation(), b.graded_truncation()), weight);
}

inline WQSeries wq_sub(const WQSeries& a, const WQSeries& b) { return wq_add(a, -b); }

inline WQSeries wq_mul(const WQSeries& a, const WQSeries& b)
{
    const Rational weight = detail::common_weight(a, b);
    const Order tq = min(detail::add_orders(a.q_truncation(), b.q_valuation()),
                         detail::add_orders(b.q_truncation(), a.q_valuation()));
    const Order tg = min(detail::add_orders(a.graded_truncation(), b.graded_valuation(weight)),
                         detail::add_orders(b.graded_truncation(), a.graded_valuation(weight)));
    const std::int64_t dw = checked_lcm(a.w_lattice_denominator(), b.w_lattice_denominator());
    const std::int64_t dq = checked_lcm(a.q_lattice_denominator(), b.q_lattice_denominator());
    const WQSeries x = a.on_lattices(dw, dq), y = b.on_lattices(dw, dq);

    // region tests in integer arithmetic on the lattice of degrees
    const std::int64_t wn = to_int64(weight.get_num()), wd = to_int64(weight.get_den());
    const std::int64_t dg = checked_lcm(dq, dw * wd);
    auto deg_index = [&](const WQSeries::Key& k) { return 2 * k.first * (dg / dq) - wn * k.second * (dg / (dw * wd)); };
    auto ceil_index = [](const Order& o, std::int64_t den) -> std::optional<std::int64_t> {
        if (o.is_infinite())
            return std::nullopt;
        Rational s = o.value() * den;
        mpz_class c;
        mpz_cdiv_q(c.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
        return to_int64(c);
    };
    const auto q_limit = ceil_index(tq, dq);
    const auto g_limit = ceil_index(tg, dg);

    std::map<WQSeries::Key, Rational> out;
    Rational prod;
    for (const auto& [ka, ca] : x.lattice_terms()) {
        for (const auto& [kb, cb] : y.lattice_terms()) {
            WQSeries::Key k{ka.first + kb.first, ka.second + kb.second};
            if (q_limit && k.first >= *q_limit)
                break;
            if (g_limit && deg_index(k) >= *g_limit)
                continue;
            mpq_mul(prod.get_mpq_t(), ca.get_mpq_t(), cb.get_mpq_t());
            auto [it, inserted] = out.emplace(k, prod);
            if (!inserted)
                it->second += prod;
        }
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return WQSeries::from_lattice(dw, dq, std::move(out), tq, tg, weight);
}

inline WQSeries operator+(const WQSeries& a, const WQSeries& b) { return wq_add(a, b); }
inline WQSeries operator-(const WQSeries& a, const WQSeries& b) { return wq_sub(a, b); }
inline WQSeries operator*(const WQSeries& a, const WQSeries& b) { return wq_mul(a, b); }

/// Inverse in the graded completion. The input must have a unique term of
/// minimal degree that is also of minimal q-exponent; the result is correct
/// on  b < Tq - 2 b0,  deg < min(Tg - 2 g0, graded_cap).
inline WQSeries wq_invert(const WQSeries& a, const Order& graded_cap)
{
    if (a.empty())
        throw empty_series();
    const Rational weight = a.w_weight();
    const std::int64_t dw = a.w_lattice_denominator(), dq = a.q_lattice_denominator();
    const std::int64_t wn = to_int64(weight.get_num()), wd = to_int64(weight.get_den());
    const std::int64_t dg = checked_lcm(dq, dw * wd);
    auto deg_index = [&](std::int64_t qi, std::int64_t wi) {
        return 2 * qi * (dg / dq) - wn * wi * (dg / (dw * wd));
    };

    // leading monomial
    const auto& raw = a.lattice_terms();
    std::optional<WQSeries::Key> lead;
    std::int64_t lead_deg = 0;
    bool unique = true;
    for (const auto& [k, c] : raw) {
        std::int64_t d = deg_index(k.first, k.second);
        if (!lead || d < lead_deg) {
            lead = k;
            lead_deg = d;
            unique = true;
        } else if (d == lead_deg) {
            unique = false;
        }
    }
    if (!unique)
        throw error("series has no unique leading monomial in the graded order");
    const std::int64_t q_min = raw.begin()->first.first;
    if (lead->first != q_min)
        throw error("leading monomial is not of minimal q-exponent");

    const Rational c0 = raw.at(*lead);
    const Rational b0 = a.q_exp(lead->first);
    const Rational g0 = make_rational(lead_deg, dg);

    const Order tq = a.q_truncation() - Rational(2 * b0);
    const Order tg = min(a.graded_truncation() - Rational(2 * g0), graded_cap);
    if (raw.size() == 1) {
        std::map<WQSeries::Key, Rational> out{{{-lead->first, -lead->second}, 1 / c0}};
        return WQSeries::from_lattice(dw, dq, std::move(out), tq, tg, weight);
    }
    if (tg.is_infinite())
        throw error("graded inverse needs a finite graded order");

    // relative coefficients of 1 + R
    std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t, Rational>> rel; // (deg, q, w, c)
    for (const auto& [k, c] : raw) {
        if (k == *lead)
            continue;
        const std::int64_t qi = k.first - lead->first, wi = k.second - lead->second;
        rel.emplace_back(deg_index(qi, wi), qi, wi, c / c0);
    }

    // relative region: q < Tq(a) - b0, deg < tg + g0
    auto ceil_index = [](const Rational& v, std::int64_t den) {
        Rational s = v * den;
        mpz_class c;
        mpz_cdiv_q(c.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
        return to_int64(c);
    };
    std::optional<std::int64_t> q_limit;
    if (!a.q_truncation().is_infinite())
        q_limit = ceil_index(a.q_truncation().value() - b0, dq);
    const std::int64_t g_limit = ceil_index(tg.value() + g0, dg);

    std::map<std::pair<std::int64_t, std::int64_t>, Rational> v; // (q, w) relative
    std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t>> frontier{{0, 0, 0}};
    Rational prod;
    while (!frontier.empty()) {
        auto [g, qi, wi] = *frontier.begin();
        frontier.erase(frontier.begin());
        Rational acc = (g == 0 && qi == 0 && wi == 0) ? Rational(1) : Rational(0);
        for (const auto& [rg, rq, rw, rc] : rel) {
            if (rg > g)
                continue;
            auto it = v.find({qi - rq, wi - rw});
            if (it == v.end())
                continue;
            mpq_mul(prod.get_mpq_t(), rc.get_mpq_t(), it->second.get_mpq_t());
            acc -= prod;
        }
        if (acc == 0)
            continue;
        v.emplace(std::pair{qi, wi}, acc);
        for (const auto& [rg, rq, rw, rc] : rel) {
            const std::int64_t ng = g + rg, nq = qi + rq;
            if (ng >= g_limit || (q_limit && nq >= *q_limit))
                continue;
            frontier.emplace(ng, nq, wi + rw);
        }
    }

    std::map<WQSeries::Key, Rational> out;
    for (const auto& [k, c] : v)
        out.emplace(WQSeries::Key{k.first - lead->first, k.second - lead->second}, c / c0);
    return WQSeries::from_lattice(dw, dq, std::move(out), tq, tg, weight);
}

/// num / den in the graded completion, with the inverse capped at `graded_cap`.
inline WQSeries wq_divide(const WQSeries& num, const WQSeries& den, const Order& graded_cap)
{
    return wq_mul(num, wq_invert(den, graded_cap));
}

/// Substitute w -> w^factor (z -> factor z). factor = 0 collapses onto the
/// z = 0 slice and requires an infinite graded order.
inline WQSeries wq_scale_w(const WQSeries& a, const Rational& factor)
{
    if (factor == 0) {
        if (!a.graded_truncation().is_infinite())
            throw error("z = 0 specialization needs an infinite graded order");
        std::map<WQSeries::Key, Rational> out;
        for (const auto& [k, c] : a.lattice_terms()) {
            auto [it, inserted] = out.emplace(WQSeries::Key{k.first, 0}, c);
            if (!inserted)
                it->second += c;
        }
        std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
        return WQSeries::from_lattice(1, a.q_lattice_denominator(), std::move(out), a.q_truncation(),
                                      Order::infinite(), 1);
    }
    const std::int64_t dw = a.w_lattice_denominator() * to_int64(factor.get_den());
    std::map<WQSeries::Key, Rational> out;
    for (const auto& [k, c] : a.lattice_terms())
        out.emplace(WQSeries::Key{k.first, lattice_index(a.w_exp(k.second) * factor, dw)}, c);
    return WQSeries::from_lattice(dw, a.q_lattice_denominator(), std::move(out), a.q_truncation(),
                                  a.graded_truncation(), a.w_weight() / factor);
}

/// Substitute q -> q^factor (tau -> factor tau).
inline WQSeries wq_scale_q(const WQSeries& a, const Rational& factor)
{
    if (factor <= 0)
        throw error("q-scaling factor must be positive");
    if (!a.graded_truncation().is_infinite())
        throw error("q-scaling of a graded-truncated series is not supported");
    const std::int64_t dq = a.q_lattice_denominator() * to_int64(factor.get_den());
    std::map<WQSeries::Key, Rational> out;
    for (const auto& [k, c] : a.lattice_terms())
        out.emplace(WQSeries::Key{lattice_index(a.q_exp(k.first) * factor, dq), k.second}, c);
    Order t = a.q_truncation().is_infinite() ? a.q_truncation() : Order(a.q_truncation().value() * factor);
    return WQSeries::from_lattice(a.w_lattice_denominator(), dq, std::move(out), t, Order::infinite(),
                                  a.w_weight());
}

/// w -> 1: sum of all w-slices. Requires an infinite graded order.
inline QSeries wq_specialize_w1(const WQSeries& a)
{
    if (!a.graded_truncation().is_infinite())
        throw error("w = 1 specialization needs an infinite graded order");
    std::map<std::int64_t, Rational> out;
    for (const auto& [k, c] : a.lattice_terms()) {
        auto [it, inserted] = out.emplace(k.first, c);
        if (!inserted)
            it->second += c;
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return QSeries::from_lattice(a.q_lattice_denominator(), std::move(out), a.q_truncation());
}

/// Real form of the shift z -> z + 1/2 on a series whose w-exponents are all
/// in 1/2 + Z: the shifted series equals i * S with S returned here,
/// S = sum (-1)^{a - 1/2} c_{a,b} w^a q^b.
inline WQSeries wq_half_period_shift(const WQSeries& a)
{
    WQSeries s = a.on_lattices(checked_lcm(a.w_lattice_denominator(), 2), a.q_lattice_denominator());
    const std::int64_t dw = s.w_lattice_denominator();
    std::map<WQSeries::Key, Rational> out;
    for (const auto& [k, c] : s.lattice_terms()) {
        // a = k.second/dw must be n + 1/2
        Rational n = s.w_exp(k.second) - Rational(1, 2);
        if (!is_integer(n))
            throw error("half-period shift needs w-exponents in 1/2 + Z");
        const bool odd = to_int64(n.get_num()) % 2 != 0;
        out.emplace(k, odd ? Rational(-c) : c);
    }
    return WQSeries::from_lattice(dw, s.q_lattice_denominator(), std::move(out), s.q_truncation(),
                                  s.graded_truncation(), s.w_weight());
}

/// Lowest (q, w) position where two series differ on their common known region.
struct Discrepancy {
    Rational w_exponent;
    Rational q_exponent;
    Rational lhs;
    Rational rhs;
};

inline std::optional<Discrepancy> first_discrepancy(const WQSeries& lhs, const WQSeries& rhs)
{
    WQSeries diff = wq_sub(lhs, rhs);
    if (diff.empty())
        return std::nullopt;
    const auto& [k, c] = *diff.lattice_terms().begin();
    Rational a = diff.w_exp(k.second), b = diff.q_exp(k.first);
    return Discrepancy{a, b, lhs.known(a, b) ? lhs.coefficient(a, b) : Rational(0),
                       rhs.known(a, b) ? rhs.coefficient(a, b) : Rational(0)};
}

} // namespace ospvoa
