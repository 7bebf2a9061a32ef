#pragma once

// Truncated formal power series in q with rational exponents and exact
// rational coefficients.
//
// A QSeries stands for  sum_e c_e q^e + O(q^T):  every stored exponent is a
// multiple of 1/D and lies strictly below the truncation order T, every
// stored coefficient is nonzero, and the coefficient of every exponent below
// T is exact. T may be infinite (a finite, exactly known series).

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ospvoa/numeric.hpp"
#include "ospvoa/rational.hpp"

namespace ospvoa {

class QSeries {
public:
    /// Exact zero.
    QSeries() = default;

    static QSeries zero(Order order = Order::infinite())
    {
        QSeries s;
        s.trunc_ = std::move(order);
        return s;
    }

    static QSeries monomial(const Rational& coeff, const Rational& exponent,
                            Order order = Order::infinite())
    {
        QSeries s;
        s.den_ = to_int64(exponent.get_den());
        s.trunc_ = std::move(order);
        s.add_term(lattice_index(exponent, s.den_), coeff);
        return s;
    }

    static QSeries one(Order order = Order::infinite()) { return monomial(1, 0, std::move(order)); }

    /// Build from (exponent, coefficient) pairs; repeated exponents are summed.
    static QSeries from_terms(const std::vector<std::pair<Rational, Rational>>& terms,
                              Order order = Order::infinite())
    {
        QSeries s;
        s.trunc_ = std::move(order);
        for (const auto& [e, c] : terms)
            s.den_ = checked_lcm(s.den_, to_int64(e.get_den()));
        for (const auto& [e, c] : terms)
            s.add_term(lattice_index(e, s.den_), c);
        return s;
    }

    /// Build directly from lattice indices (exponent = index / den).
    static QSeries from_lattice(std::int64_t den, std::map<std::int64_t, Rational> terms, Order order)
    {
        QSeries s;
        s.den_ = den;
        s.trunc_ = std::move(order);
        for (auto& [n, c] : terms)
            s.add_term(n, c);
        s.normalize_lattice();
        return s;
    }

    std::int64_t lattice_denominator() const { return den_; }
    const Order& truncation() const { return trunc_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Rational exponent_of(std::int64_t index) const { return make_rational(index, den_); }

    /// Raw storage: lattice index -> coefficient.
    const std::map<std::int64_t, Rational>& lattice_terms() const { return terms_; }

    std::vector<std::pair<Rational, Rational>> terms() const
    {
        std::vector<std::pair<Rational, Rational>> out;
        out.reserve(terms_.size());
        for (const auto& [n, c] : terms_)
            out.emplace_back(exponent_of(n), c);
        return out;
    }

    /// Coefficient of q^e. Throws if e is not below the truncation order.
    Rational coefficient(const Rational& e) const
    {
        if (!trunc_.covers(e))
            throw out_of_range("exponent " + e.get_str() + " is beyond truncation " + trunc_.str());
        Rational scaled = e * den_;
        if (!is_integer(scaled))
            return 0;
        auto it = terms_.find(to_int64(scaled.get_num()));
        return it == terms_.end() ? Rational(0) : it->second;
    }

    std::optional<Rational> min_exponent() const
    {
        if (terms_.empty())
            return std::nullopt;
        return exponent_of(terms_.begin()->first);
    }

    std::optional<Rational> max_exponent() const
    {
        if (terms_.empty())
            return std::nullopt;
        return exponent_of(terms_.rbegin()->first);
    }

    /// A lower bound on every exponent of the true (untruncated) series:
    /// the lowest stored exponent, or the truncation order if nothing is stored.
    Order valuation_bound() const
    {
        if (!terms_.empty())
            return Order(*min_exponent());
        return trunc_;
    }

    /// Same series on the finer lattice 1/new_den.
    QSeries on_lattice(std::int64_t new_den) const
    {
        if (new_den % den_ != 0)
            throw lattice_mismatch("cannot refine 1/" + std::to_string(den_) + " to 1/" +
                                   std::to_string(new_den));
        if (new_den == den_)
            return *this;
        QSeries s;
        s.den_ = new_den;
        s.trunc_ = trunc_;
        const std::int64_t f = new_den / den_;
        for (const auto& [n, c] : terms_)
            s.terms_.emplace_hint(s.terms_.end(), n * f, c);
        return s;
    }

    /// Lower the truncation order to min(T, order), dropping terms that no longer fit.
    QSeries truncated(const Order& order) const
    {
        QSeries s = *this;
        s.trunc_ = min(trunc_, order);
        s.drop_beyond_truncation();
        return s;
    }

    /// Multiply by c q^shift.
    QSeries shifted(const Rational& shift, const Rational& coeff = 1) const
    {
        QSeries s;
        s.den_ = checked_lcm(den_, to_int64(shift.get_den()));
        s.trunc_ = trunc_ + shift;
        if (coeff == 0)
            return zero(s.trunc_);
        const std::int64_t f = s.den_ / den_;
        const std::int64_t off = lattice_index(shift, s.den_);
        for (const auto& [n, c] : terms_)
            s.terms_.emplace_hint(s.terms_.end(), n * f + off, c * coeff);
        s.normalize_lattice();
        return s;
    }

    /// Substitute q -> q^factor (factor > 0), i.e. tau -> factor * tau.
    QSeries scaled(const Rational& factor) const
    {
        if (factor <= 0)
            throw error("q-scaling factor must be positive");
        std::map<std::int64_t, Rational> out;
        std::int64_t new_den = den_ * to_int64(factor.get_den());
        for (const auto& [n, c] : terms_)
            out.emplace(lattice_index(make_rational(n, den_) * factor, new_den), c);
        Order t = trunc_.is_infinite() ? trunc_ : Order(trunc_.value() * factor);
        return from_lattice(new_den, std::move(out), t);
    }

    QSeries operator-() const
    {
        QSeries s = *this;
        for (auto& [n, c] : s.terms_)
            c = -c;
        return s;
    }

    friend QSeries operator*(const Rational& k, const QSeries& a)
    {
        if (k == 0)
            return zero(a.trunc_);
        QSeries s = a;
        for (auto& [n, c] : s.terms_)
            c *= k;
        return s;
    }

    std::string str() const
    {
        std::ostringstream os;
        bool first = true;
        for (const auto& [n, c] : terms_) {
            if (!first)
                os << " + ";
            first = false;
            os << c.get_str() << "*q^(" << exponent_of(n).get_str() << ")";
        }
        if (first)
            os << "0";
        if (!trunc_.is_infinite())
            os << " + O(q^(" << trunc_.str() << "))";
        return os.str();
    }

    /// Exact equality including truncation order and support.
    friend bool operator==(const QSeries& a, const QSeries& b)
    {
        if (!(a.trunc_ == b.trunc_))
            return false;
        if (a.terms_.size() != b.terms_.size())
            return false;
        std::int64_t l = checked_lcm(a.den_, b.den_);
        QSeries x = a.on_lattice(l), y = b.on_lattice(l);
        return x.terms_ == y.terms_;
    }

    // building blocks for the arithmetic below
    void add_term(std::int64_t index, const Rational& c)
    {
        if (c == 0)
            return;
        if (!trunc_.covers(make_rational(index, den_)))
            return;
        auto [it, inserted] = terms_.emplace(index, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    /// Reduce D to the smallest lattice that still holds every stored exponent.
    void normalize_lattice()
    {
        std::int64_t g = den_;
        for (const auto& [n, c] : terms_) {
            g = std::gcd(g, n);
            if (g == 1)
                break;
        }
        if (g <= 1)
            return;
        std::map<std::int64_t, Rational> out;
        for (auto& [n, c] : terms_)
            out.emplace_hint(out.end(), n / g, std::move(c));
        terms_ = std::move(out);
        den_ /= g;
    }

private:
    void drop_beyond_truncation()
    {
        if (trunc_.is_infinite())
            return;
        // first index with exponent >= T
        Rational bound = trunc_.value() * den_;
        mpz_class ceil_idx;
        mpz_cdiv_q(ceil_idx.get_mpz_t(), bound.get_num_mpz_t(), bound.get_den_mpz_t());
        terms_.erase(terms_.lower_bound(to_int64(ceil_idx)), terms_.end());
    }

    std::int64_t den_ = 1;
    std::map<std::int64_t, Rational> terms_;
    Order trunc_;
};

/// a + b; truncation min(T_a, T_b) on lattice lcm(D_a, D_b).
inline QSeries qs_add(const QSeries& a, const QSeries& b)
{
    const std::int64_t l = checked_lcm(a.lattice_denominator(), b.lattice_denominator());
    const Order t = min(a.truncation(), b.truncation());
    std::map<std::int64_t, Rational> out;
    const std::int64_t fa = l / a.lattice_denominator();
    const std::int64_t fb = l / b.lattice_denominator();
    for (const auto& [n, c] : a.lattice_terms())
        out.emplace_hint(out.end(), n * fa, c);
    for (const auto& [n, c] : b.lattice_terms()) {
        auto [it, inserted] = out.emplace(n * fb, c);
        if (!inserted)
            it->second += c;
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return QSeries::from_lattice(l, std::move(out), t);
}

inline QSeries qs_sub(const QSeries& a, const QSeries& b) { return qs_add(a, -b); }

namespace detail {
inline Order add_orders(const Order& a, const Order& b)
{
    if (a.is_infinite() || b.is_infinite())
        return Order::infinite();
    return Order(a.value() + b.value());
}
} // namespace detail

/// Cauchy product; truncation min(T_a + v(b), T_b + v(a)) with v the valuation bound.
inline QSeries qs_mul(const QSeries& a, const QSeries& b)
{
    const Order t = min(detail::add_orders(a.truncation(), b.valuation_bound()),
                        detail::add_orders(b.truncation(), a.valuation_bound()));
    const std::int64_t l = checked_lcm(a.lattice_denominator(), b.lattice_denominator());
    const std::int64_t fa = l / a.lattice_denominator();
    const std::int64_t fb = l / b.lattice_denominator();
    std::optional<std::int64_t> limit;
    if (!t.is_infinite()) {
        Rational bound = t.value() * l;
        mpz_class c;
        mpz_cdiv_q(c.get_mpz_t(), bound.get_num_mpz_t(), bound.get_den_mpz_t());
        limit = to_int64(c);
    }
    std::map<std::int64_t, Rational> out;
    Rational prod;
    for (const auto& [na, ca] : a.lattice_terms()) {
        for (const auto& [nb, cb] : b.lattice_terms()) {
            const std::int64_t n = na * fa + nb * fb;
            if (limit && n >= *limit)
                break;
            mpq_mul(prod.get_mpq_t(), ca.get_mpq_t(), cb.get_mpq_t());
            auto [it, inserted] = out.emplace(n, prod);
            if (!inserted)
                it->second += prod;
        }
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return QSeries::from_lattice(l, std::move(out), t);
}

inline QSeries operator+(const QSeries& a, const QSeries& b) { return qs_add(a, b); }
inline QSeries operator-(const QSeries& a, const QSeries& b) { return qs_sub(a, b); }
inline QSeries operator*(const QSeries& a, const QSeries& b) { return qs_mul(a, b); }

/// Multiplicative inverse. With leading term c0 q^e0 the result is
/// (1/c0) q^{-e0} (1 + R)^{-1}, correct below T - 2 e0. A finite `cap`
/// bounds the order when the input is exact (T infinite) but not a monomial.
inline QSeries qs_invert(const QSeries& a, const Order& cap = Order::infinite())
{
    if (a.empty())
        throw empty_series();
    const auto& raw = a.lattice_terms();
    const std::int64_t den = a.lattice_denominator();
    const std::int64_t e0 = raw.begin()->first;
    const Rational c0 = raw.begin()->second;
    const Rational e0q = make_rational(e0, den);

    Order result_order = min(a.truncation() - Rational(2 * e0q), cap);
    if (raw.size() == 1)
        return QSeries::monomial(1 / c0, -e0q, result_order);
    if (result_order.is_infinite())
        throw error("inverse of a non-monomial exact series needs a finite order cap");

    // relative terms r_j (j > 0) of (1 + R) = a / (c0 q^e0)
    std::vector<std::pair<std::int64_t, Rational>> rel;
    for (auto it = std::next(raw.begin()); it != raw.end(); ++it)
        rel.emplace_back(it->first - e0, it->second / c0);

    // relative exponents n/den with n/den - e0 < result_order
    Rational bound = (result_order.value() + e0q) * den;
    mpz_class nmax_z;
    mpz_cdiv_q(nmax_z.get_mpz_t(), bound.get_num_mpz_t(), bound.get_den_mpz_t());
    const std::int64_t nmax = to_int64(nmax_z);
    std::vector<Rational> v(static_cast<std::size_t>(std::max<std::int64_t>(nmax, 0)));
    Rational prod;
    for (std::int64_t n = 0; n < nmax; ++n) {
        Rational acc = (n == 0) ? Rational(1) : Rational(0);
        for (const auto& [j, r] : rel) {
            if (j > n)
                break;
            const Rational& prev = v[static_cast<std::size_t>(n - j)];
            if (prev == 0)
                continue;
            mpq_mul(prod.get_mpq_t(), r.get_mpq_t(), prev.get_mpq_t());
            acc -= prod;
        }
        v[static_cast<std::size_t>(n)] = std::move(acc);
    }
    std::map<std::int64_t, Rational> out;
    for (std::int64_t n = 0; n < nmax; ++n)
        if (v[static_cast<std::size_t>(n)] != 0)
            out.emplace_hint(out.end(), n - e0, v[static_cast<std::size_t>(n)] / c0);
    return QSeries::from_lattice(den, std::move(out), result_order);
}

/// eta(q) = q^{1/24} prod_{n>=1} (1 - q^n), correct below `order`.
/// Expanded through Euler's pentagonal number theorem.
inline QSeries qs_eta(const Rational& order)
{
    if (order <= 0)
        throw error("eta truncation order must be positive");
    std::map<std::int64_t, Rational> out;
    // exponents 1/24 + m(3m-1)/2, stored on the lattice 1/24
    for (std::int64_t m = 0;; ++m) {
        bool any = false;
        for (std::int64_t sm : {m, -m}) {
            if (m == 0 && sm != 0)
                continue;
            std::int64_t idx = 1 + 12 * sm * (3 * sm - 1);
            if (make_rational(idx, 24) < order) {
                any = true;
                out.emplace(idx, (m % 2 == 0) ? Rational(1) : Rational(-1));
            }
            if (m == 0)
                break;
        }
        if (!any)
            break;
    }
    return QSeries::from_lattice(24, std::move(out), Order(order));
}

struct SeriesValue {
    Complex value;
    Real tail_bound; // crude bound on the omitted tail
};

/// Evaluate at q = e^{2 pi i tau}. The tail bound assumes the omitted
/// coefficients do not exceed the largest retained one in absolute value.
inline SeriesValue qs_eval(const QSeries& a, const Complex& tau, unsigned precision_bits = default_precision_bits)
{
    PrecisionScope scope(precision_bits);
    if (tau.im <= 0)
        throw nonconvergent_domain("Im(tau) must be positive");
    const Real two_pi = 2 * pi();
    Complex sum;
    Real max_coeff = 0;
    for (const auto& [e, c] : a.terms()) {
        Real er = to_real(e);
        Complex z(-two_pi * tau.im * er, two_pi * tau.re * er);
        sum += Complex(to_real(c)) * complex_exp(z);
        Real ac = abs_value(to_real(c));
        if (ac > max_coeff)
            max_coeff = ac;
    }
    Real tail = 0;
    if (!a.truncation().is_infinite()) {
        Real absq = boost::multiprecision::exp(-two_pi * tau.im);
        Real step = boost::multiprecision::exp(-two_pi * tau.im / a.lattice_denominator());
        if (max_coeff == 0)
            max_coeff = 1;
        tail = max_coeff * boost::multiprecision::pow(absq, to_real(a.truncation().value())) / (1 - step);
    }
    return {sum, tail};
}

} // namespace ospvoa
