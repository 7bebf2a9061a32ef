#pragma once

// High-precision real/complex scalars and the small dense-matrix toolkit used
// by the modular-data code. Precision is a runtime quantity in bits.

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>

#include "ospvoa/errors.hpp"
#include "ospvoa/rational.hpp"

namespace ospvoa {

using Real = boost::multiprecision::mpfr_float;

inline constexpr unsigned default_precision_bits = 256;

inline unsigned bits_to_digits10(unsigned bits)
{
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

/// Sets the thread-default working precision for its lifetime.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned bits) : saved_(Real::default_precision())
    {
        Real::default_precision(bits_to_digits10(bits));
    }
    ~PrecisionScope() { Real::default_precision(saved_); }
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_;
};

/// 10^(1 - bits/4), the default comparison tolerance at a given precision.
inline Real precision_tolerance(unsigned bits)
{
    return boost::multiprecision::pow(Real(10), Real(1) - Real(bits) / 4);
}

inline Real to_real(const Rational& r)
{
    return Real(r.get_num().get_str()) / Real(r.get_den().get_str());
}

inline Real pi()
{
    Real p;
    mpfr_const_pi(p.backend().data(), MPFR_RNDN);
    return p;
}

inline std::string to_decimal(const Real& x, unsigned bits)
{
    return x.str(static_cast<std::streamsize>(bits_to_digits10(bits)), std::ios_base::scientific);
}

struct Complex {
    Real re{0};
    Real im{0};

    Complex() = default;
    Complex(Real r) : re(std::move(r)) {} // NOLINT(google-explicit-constructor)
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
    friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
    friend Complex operator*(const Complex& a, const Complex& b)
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator/(const Complex& a, const Complex& b)
    {
        Real d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    Complex& operator+=(const Complex& b) { return *this = *this + b; }
    Complex& operator-=(const Complex& b) { return *this = *this - b; }
    Complex& operator*=(const Complex& b) { return *this = *this * b; }
};

inline Complex conj(const Complex& z) { return {z.re, -z.im}; }
inline Real conj(const Real& x) { return x; }
inline Real abs_value(const Real& x) { return boost::multiprecision::abs(x); }
inline Real abs_value(const Complex& z) { return boost::multiprecision::sqrt(z.re * z.re + z.im * z.im); }
inline Real real_part(const Real& x) { return x; }
inline Real real_part(const Complex& z) { return z.re; }

/// e^{2 pi i x}
inline Complex unit_phase(const Real& x)
{
    Real angle = 2 * pi() * x;
    return {boost::multiprecision::cos(angle), boost::multiprecision::sin(angle)};
}
inline Complex unit_phase(const Rational& x)
{
    // reduce mod 1 before going to floating point
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    Rational frac = x - Rational(fl);
    return unit_phase(to_real(frac));
}

inline Complex complex_exp(const Complex& z)
{
    Real m = boost::multiprecision::exp(z.re);
    return {m * boost::multiprecision::cos(z.im), m * boost::multiprecision::sin(z.im)};
}

/// Row-major dense matrix.
template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T(Real(0)))
        : rows_(rows), cols_(cols), data_(rows * cols, fill)
    {
    }

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = T(Real(1));
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        if (a.cols_ != b.rows_)
            throw error("matrix shape mismatch");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                for (std::size_t j = 0; j < b.cols_; ++j)
                    c(i, j) = c(i, j) + aik * b(k, j);
            }
        return c;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b)
    {
        Matrix c = a;
        for (std::size_t i = 0; i < c.data_.size(); ++i)
            c.data_[i] = c.data_[i] - b.data_[i];
        return c;
    }

    Matrix adjoint() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = conj((*this)(i, j));
        return t;
    }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    /// max_{i,j} |a_ij|
    Real max_abs() const
    {
        Real m = 0;
        for (const auto& x : data_) {
            Real v = abs_value(x);
            if (v > m)
                m = v;
        }
        return m;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using RealMatrix = Matrix<Real>;
using ComplexMatrix = Matrix<Complex>;

inline ComplexMatrix to_complex(const RealMatrix& m)
{
    ComplexMatrix c(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            c(i, j) = Complex(m(i, j));
    return c;
}

/// Gauss-Jordan inverse with partial pivoting.
template <typename T>
Matrix<T> inverse(const Matrix<T>& m)
{
    const std::size_t n = m.rows();
    if (m.cols() != n)
        throw error("inverse of non-square matrix");
    Matrix<T> a = m;
    Matrix<T> inv = Matrix<T>::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        Real best = abs_value(a(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            Real v = abs_value(a(r, col));
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best == 0)
            throw error("singular matrix");
        if (piv != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        T d = a(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) = a(col, j) / d;
            inv(col, j) = inv(col, j) / d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col)
                continue;
            T f = a(r, col);
            if (abs_value(f) == 0)
                continue;
            for (std::size_t j = 0; j < n; ++j) {
                a(r, j) = a(r, j) - f * a(col, j);
                inv(r, j) = inv(r, j) - f * inv(col, j);
            }
        }
    }
    return inv;
}

/// Nearest integer to x.
inline mpz_class round_to_integer(const Real& x)
{
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), x.backend().data(), MPFR_RNDN);
    return z;
}

/// Continued-fraction reconstruction of a rational within `tol` whose
/// denominator does not exceed `max_den`.
inline std::optional<Rational> reconstruct_rational(const Real& x, const Real& tol,
                                                    const mpz_class& max_den = 1000000)
{
    // convergents h/k
    mpz_class h_prev = 1, h = 0, k_prev = 0, k = 1;
    Real rest = x;
    for (int iter = 0; iter < 200; ++iter) {
        Real fl = boost::multiprecision::floor(rest);
        mpz_class a = round_to_integer(fl);
        mpz_class h_next = a * h_prev + h;
        mpz_class k_next = a * k_prev + k;
        h = h_prev;
        k = k_prev;
        h_prev = h_next;
        k_prev = k_next;
        if (k_prev > max_den)
            return std::nullopt;
        Rational cand(h_prev, k_prev);
        cand.canonicalize();
        if (abs_value(to_real(cand) - x) <= tol)
            return cand;
        Real frac = rest - fl;
        if (frac == 0)
            return std::nullopt;
        rest = 1 / frac;
    }
    return std::nullopt;
}

} // namespace ospvoa
