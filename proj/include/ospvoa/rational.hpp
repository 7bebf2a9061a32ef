#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>

#include <gmpxx.h>

#include "ospvoa/errors.hpp"

namespace ospvoa {

/// Exact rational of unbounded size.
using Rational = mpq_class;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1)
{
    Rational r(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
    r.canonicalize();
    return r;
}

inline std::int64_t to_int64(const mpz_class& z)
{
    if (!z.fits_slong_p())
        throw error("integer does not fit in 64 bits: " + z.get_str());
    return z.get_si();
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline std::string to_string(const Rational& r) { return r.get_str(); }

/// Express `r` as an integer multiple of 1/den. Throws if `r` is off the lattice.
inline std::int64_t lattice_index(const Rational& r, std::int64_t den)
{
    Rational scaled = r * den;
    if (!is_integer(scaled))
        throw lattice_mismatch(r.get_str() + " is not a multiple of 1/" + std::to_string(den));
    return to_int64(scaled.get_num());
}

inline std::int64_t checked_lcm(std::int64_t a, std::int64_t b)
{
    std::int64_t l = std::lcm(a, b);
    if (l <= 0)
        throw error("lattice denominator overflow");
    return l;
}

/// floor(a / b) for b > 0.
inline std::int64_t floor_div(std::int64_t a, std::int64_t b)
{
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

inline std::int64_t mod_floor(std::int64_t a, std::int64_t m)
{
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

/// A truncation order: either a rational bound or +infinity (exact).
class Order {
public:
    Order() = default; // infinite
    Order(const Rational& v) : value_(v) {} // NOLINT(google-explicit-constructor)
    Order(std::int64_t v) : value_(make_rational(v)) {} // NOLINT(google-explicit-constructor)

    static Order infinite() { return {}; }

    bool is_infinite() const { return !value_.has_value(); }
    const Rational& value() const
    {
        if (!value_)
            throw error("infinite order has no value");
        return *value_;
    }

    /// True iff the exponent `e` lies strictly below this order.
    bool covers(const Rational& e) const { return !value_ || e < *value_; }

    friend Order min(const Order& a, const Order& b)
    {
        if (a.is_infinite())
            return b;
        if (b.is_infinite())
            return a;
        return a.value() < b.value() ? a : b;
    }

    friend Order operator+(const Order& a, const Rational& shift)
    {
        if (a.is_infinite())
            return a;
        return Order(a.value() + shift);
    }
    friend Order operator-(const Order& a, const Rational& shift) { return a + Rational(-shift); }

    friend bool operator==(const Order& a, const Order& b)
    {
        if (a.is_infinite() || b.is_infinite())
            return a.is_infinite() == b.is_infinite();
        return a.value() == b.value();
    }

    std::string str() const { return value_ ? value_->get_str() : std::string("inf"); }

private:
    std::optional<Rational> value_;
};

} // namespace ospvoa
