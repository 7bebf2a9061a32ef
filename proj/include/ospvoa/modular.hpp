#pragma once

// Modular S and T data for the Virasoro, sl2 and extended (even subalgebra)
// families, Verlinde formulas, Frobenius-Perron dimensions and a numeric check
// of the S-transformation of induced-module characters.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ospvoa/characters.hpp"
#include "ospvoa/fusion.hpp"
#include "ospvoa/levels.hpp"
#include "ospvoa/numeric.hpp"

namespace ospvoa {

struct SMatrix {
    std::vector<std::string> labels;
    ComplexMatrix entries;
    std::size_t vacuum = 0;
    unsigned precision_bits = default_precision_bits;

    std::size_t size() const { return labels.size(); }
};

/// Diagonal T with phases e^{2 pi i (h - c/24)}; exponents are kept exactly.
struct TMatrix {
    std::vector<std::string> labels;
    std::vector<Rational> exponents;
    Rational central_charge;
    unsigned precision_bits = default_precision_bits;

    ComplexMatrix matrix() const
    {
        PrecisionScope ps(precision_bits);
        ComplexMatrix m(labels.size(), labels.size());
        for (std::size_t i = 0; i < labels.size(); ++i)
            m(i, i) = unit_phase(exponents[i]);
        return m;
    }
};

inline Real sin_pi(const Rational& x) { return boost::multiprecision::sin(pi() * to_real(x)); }

inline int sign_power(std::int64_t e) { return e % 2 == 0 ? 1 : -1; }

/// -2 sqrt(2/(up)) (-1)^{r s' + s r'} sin(pi p r r'/u) sin(pi u s s'/p), at the current precision.
inline Real vir_s_entry(std::int64_t u, std::int64_t p, const VirLabel& a, const VirLabel& b)
{
    Real pre = -2 * boost::multiprecision::sqrt(Real(2) / Real(u * p));
    return pre * sign_power(a.r * b.s + a.s * b.r) * sin_pi(make_rational(p * a.r * b.r, u)) *
           sin_pi(make_rational(u * a.s * b.s, p));
}

inline SMatrix vir_smatrix(std::int64_t u, std::int64_t p, unsigned bits = default_precision_bits)
{
    PrecisionScope ps(bits);
    const auto labels = vir_labels(u, p);
    SMatrix s{{}, ComplexMatrix(labels.size(), labels.size()), 0, bits};
    for (const auto& l : labels)
        s.labels.push_back(to_string(l));
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t j = 0; j < labels.size(); ++j)
            s.entries(i, j) = Complex(vir_s_entry(u, p, labels[i], labels[j]));
    return s;
}

/// sqrt(2/(k+2)) sin(pi r r'/(k+2)), r, r' = 1..k+1.
inline SMatrix sl2_smatrix(std::int64_t k, unsigned bits = default_precision_bits)
{
    detail::require_positive_level(k);
    PrecisionScope ps(bits);
    const std::size_t n = static_cast<std::size_t>(k + 1);
    SMatrix s{{}, ComplexMatrix(n, n), 0, bits};
    const Real pre = boost::multiprecision::sqrt(Real(2) / Real(k + 2));
    for (std::int64_t r = 1; r <= k + 1; ++r) {
        s.labels.push_back(sl2_label_name(r));
        for (std::int64_t r1 = 1; r1 <= k + 1; ++r1)
            s.entries(r - 1, r1 - 1) = Complex(pre * sin_pi(make_rational(r * r1, k + 2)));
    }
    return s;
}

/// s_{r,r'} = (-1)^{r+r'} sqrt(1/(2k+3)) sin(pi r r' (k+2)/(2k+3)), 1 <= r, r' <= 2k+2.
inline Real s_small(std::int64_t k, std::int64_t r, std::int64_t r1, unsigned bits = default_precision_bits)
{
    detail::require_positive_level(k);
    if (r < 1 || r > 2 * k + 2 || r1 < 1 || r1 > 2 * k + 2)
        throw out_of_range("s_small index outside [1, 2k+2]");
    PrecisionScope ps(bits);
    return sign_power(r + r1) * boost::multiprecision::sqrt(Real(1) / Real(2 * k + 3)) *
           sin_pi(make_rational(r * r1 * (k + 2), 2 * k + 3));
}

/// Extended S over M_r^even (first 2k+2 labels) and M_r^odd (last 2k+2):
/// ee = s, eo = s (r even) / -s (r odd), oo = s (r + r' even) / -s (r + r' odd).
inline SMatrix extended_smatrix(std::int64_t k, unsigned bits = default_precision_bits)
{
    detail::require_positive_level(k);
    PrecisionScope ps(bits);
    const std::int64_t n = 2 * k + 2;
    SMatrix s{extended_fusion(k).labels(), ComplexMatrix(2 * n, 2 * n), 0, bits};
    for (std::int64_t r = 1; r <= n; ++r)
        for (std::int64_t r1 = 1; r1 <= n; ++r1) {
            const Real v = s_small(k, r, r1, bits);
            const std::size_t e = r - 1, e1 = r1 - 1, o = n + r - 1, o1 = n + r1 - 1;
            s.entries(e, e1) = Complex(v);
            s.entries(e, o1) = Complex(Real(sign_power(r) * v)); // parity of the even label
            s.entries(o1, e) = s.entries(e, o1);
            s.entries(o, o1) = Complex(Real(sign_power(r + r1) * v));
        }
    return s;
}

inline TMatrix vir_tmatrix(std::int64_t u, std::int64_t p, unsigned bits = default_precision_bits)
{
    const Rational c = vir_central_charge(u, p);
    TMatrix t{{}, {}, c, bits};
    for (const auto& l : vir_labels(u, p)) {
        t.labels.push_back(to_string(l));
        t.exponents.push_back(vir_weight(u, p, l) - c / 24);
    }
    return t;
}

inline TMatrix sl2_tmatrix(std::int64_t k, unsigned bits = default_precision_bits)
{
    detail::require_positive_level(k);
    const Rational c = sl2_central_charge(k);
    TMatrix t{{}, {}, c, bits};
    for (std::int64_t r = 1; r <= k + 1; ++r) {
        t.labels.push_back(sl2_label_name(r));
        t.exponents.push_back(sl2_weight(k, r) - c / 24);
    }
    return t;
}

/// T for the extended family: M_r^even carries L_{1,0} (x) V_{1,r}, M_r^odd carries L_{2,0} (x) V_{2,r}.
inline TMatrix extended_tmatrix(std::int64_t k, unsigned bits = default_precision_bits)
{
    const auto level = AdmissibleLevel::from_k(k);
    const Rational c = osp_central_charge(level);
    TMatrix t{extended_fusion(k).labels(), {}, c, bits};
    for (std::int64_t i : {1, 2})
        for (std::int64_t r = 1; r <= 2 * k + 2; ++r)
            t.exponents.push_back(sl2_weight(k, i) + vir_weight(level.u(), level.p(), {i, r}) - c / 24);
    return t;
}

/// M_r is local iff the twists of its even and odd parts agree, i.e. the
/// conformal dimensions for i = 1 and i = 2 differ by an integer.
inline std::vector<bool> locality_from_weights(std::int64_t k)
{
    std::vector<bool> out;
    for (std::int64_t r = 1; r <= 2 * k + 2; ++r)
        out.push_back(is_integer(induced_conformal_dimension(k, 1, r) - induced_conformal_dimension(k, 2, r)));
    return out;
}

/// ||S S^dagger - I||_inf
inline Real unitarity_defect(const SMatrix& s)
{
    PrecisionScope ps(s.precision_bits);
    return (s.entries * s.entries.adjoint() - ComplexMatrix::identity(s.size())).max_abs();
}

inline Real symmetry_defect(const SMatrix& s)
{
    PrecisionScope ps(s.precision_bits);
    return (s.entries - s.entries.transpose()).max_abs();
}

/// ||(ST)^3 - S^2||_inf
inline Real modular_relation_defect(const SMatrix& s, const TMatrix& t)
{
    PrecisionScope ps(s.precision_bits);
    const ComplexMatrix st = s.entries * t.matrix();
    return (st * st * st - s.entries * s.entries).max_abs();
}

/// N_ab^c = sum_x S_ax S_bx (S^-1)_xc / S_{vac,x}, rounded; throws if any value is
/// more than `gate` away from a non-negative integer.
inline FusionTensor verlinde_standard(const SMatrix& s, double gate = 1e-6)
{
    PrecisionScope ps(s.precision_bits);
    const std::size_t n = s.size();
    const ComplexMatrix inv = inverse(s.entries);
    for (std::size_t x = 0; x < n; ++x)
        if (abs_value(s.entries(s.vacuum, x)) < precision_tolerance(s.precision_bits))
            throw non_integral_fusion("vacuum row has a vanishing entry");
    FusionTensor out(s.labels, s.vacuum);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                Complex acc;
                for (std::size_t x = 0; x < n; ++x)
                    acc += s.entries(a, x) * s.entries(b, x) * inv(x, c) / s.entries(s.vacuum, x);
                const mpz_class rounded = round_to_integer(acc.re);
                const Real dev = abs_value(acc - Complex(Real(rounded.get_str())));
                if (dev > gate || rounded < 0)
                    throw non_integral_fusion("N(" + s.labels[a] + ", " + s.labels[b] + "; " + s.labels[c] +
                                              ") = " + to_decimal(acc.re, 64) + " + i " + to_decimal(acc.im, 64));
                out.set(a, b, c, static_cast<int>(rounded.get_si()));
            }
    return out;
}

/// Super Verlinde in the basis M^even +- M^odd. In that basis the character rows
/// (r,+) and supercharacter rows (r,-) of S~ each have one nonzero entry per t,
/// in the column sector fixed by the parities of r and t.
struct SuperVerlinde {
    std::int64_t k = 0;
    std::vector<int> n_plus;  // (r, r', r'') 1-based, flattened
    std::vector<int> n_minus;
    Real max_deviation;       // from the nearest integer, before rounding

    std::size_t dim() const { return static_cast<std::size_t>(2 * k + 2); }

    int plus(std::int64_t r, std::int64_t r1, std::int64_t r2) const { return n_plus[index(r, r1, r2)]; }
    int minus(std::int64_t r, std::int64_t r1, std::int64_t r2) const { return n_minus[index(r, r1, r2)]; }

    /// Parity-signed superdimension: the supercharacter of M_r^- is minus that of M_r^+.
    int sdim(std::int64_t r, int eps, std::int64_t r1, int eps1, std::int64_t r2, int eps2) const
    {
        return eps * eps1 * eps2 * minus(r, r1, r2);
    }

private:
    std::size_t index(std::int64_t r, std::int64_t r1, std::int64_t r2) const
    {
        const auto n = static_cast<std::int64_t>(dim());
        for (std::int64_t x : {r, r1, r2})
            if (x < 1 || x > n)
                throw out_of_range("super Verlinde label");
        return static_cast<std::size_t>(((r - 1) * n + (r1 - 1)) * n + (r2 - 1));
    }
};

inline SuperVerlinde verlinde_super(std::int64_t k, unsigned bits = default_precision_bits, double gate = 1e-6)
{
    PrecisionScope ps(bits);
    const SMatrix ext = extended_smatrix(k, bits);
    const std::size_t n = static_cast<std::size_t>(2 * k + 2);

    // P = [[I, I], [I, -I]], S~ = P S P^{-1}
    ComplexMatrix p(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        p(i, i) = Complex(Real(1));
        p(i, n + i) = Complex(Real(1));
        p(n + i, i) = Complex(Real(1));
        p(n + i, n + i) = Complex(Real(-1));
    }
    const ComplexMatrix st = p * ext.entries * inverse(p);
    const ComplexMatrix st_inv = inverse(st);

    // row (r, sigma) of S~ restricted to the t-th pair of columns
    auto row = [&](const ComplexMatrix& m, std::size_t r, std::size_t sector, std::size_t t) {
        return m(sector * n + r, t) + m(sector * n + r, n + t);
    };
    auto col = [&](const ComplexMatrix& m, std::size_t t, std::size_t r2, std::size_t sector) {
        return m(t, sector * n + r2) + m(n + t, sector * n + r2);
    };

    SuperVerlinde out;
    out.k = k;
    out.n_plus.assign(n * n * n, 0);
    out.n_minus.assign(n * n * n, 0);
    out.max_deviation = 0;
    for (std::size_t sector = 0; sector < 2; ++sector) {
        auto& target = sector == 0 ? out.n_plus : out.n_minus;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t r1 = 0; r1 < n; ++r1)
                for (std::size_t r2 = 0; r2 < n; ++r2) {
                    // labels are 1-based: r + r' + r'' odd <=> index sum even
                    if ((r + r1 + r2) % 2 != 0)
                        continue;
                    Complex acc;
                    for (std::size_t t = 0; t < n; ++t) {
                        const bool t_even = (t + 1) % 2 == 0;
                        if (t_even != (sector == 0))
                            continue;
                        acc += row(st, r, sector, t) * row(st, r1, sector, t) * col(st_inv, t, r2, sector) /
                               row(st, 0, sector, t);
                    }
                    const mpz_class rounded = round_to_integer(acc.re);
                    const Real dev = abs_value(acc - Complex(Real(rounded.get_str())));
                    if (dev > out.max_deviation)
                        out.max_deviation = dev;
                    if (dev > gate || rounded < 0)
                        throw non_integral_fusion("super Verlinde entry (" + std::to_string(r + 1) + "," +
                                                  std::to_string(r1 + 1) + "," + std::to_string(r2 + 1) + ")");
                    target[(r * n + r1) * n + r2] = static_cast<int>(rounded.get_si());
                }
    }
    return out;
}

/// d_X = S_{X,Z} / S_{vac,Z}: positivity and the representation property
/// d_a d_b = sum_c N_ab^c d_c on the given fusion tensor.
struct FpRepresentationCheck {
    std::vector<Real> dims;
    bool positive = false;
    Real defect; // max |d_a d_b - sum_c N_ab^c d_c|
};

inline FpRepresentationCheck fp_representation(const SMatrix& s, std::size_t z, const FusionTensor& fusion)
{
    PrecisionScope ps(s.precision_bits);
    FpRepresentationCheck out;
    out.positive = true;
    for (std::size_t x = 0; x < s.size(); ++x) {
        out.dims.push_back(real_part(s.entries(x, z) / s.entries(s.vacuum, z)));
        if (out.dims.back() <= 0)
            out.positive = false;
    }
    out.defect = 0;
    for (std::size_t a = 0; a < s.size(); ++a)
        for (std::size_t b = 0; b < s.size(); ++b) {
            Real rhs = 0;
            for (std::size_t c = 0; c < s.size(); ++c)
                rhs += fusion.at(a, b, c) * out.dims[c];
            Real d = abs_value(out.dims[a] * out.dims[b] - rhs);
            if (d > out.defect)
                out.defect = d;
        }
    return out;
}

struct MinWeightReport {
    VirLabel minimizer{};
    Rational weight;
    bool unique = false;
    std::size_t labels_searched = 0;
    bool case_analysis_holds = false; // the four cases on X_{r,s} = |(k+2)s - (2k+3)r|
};

/// Exhaustive minimization of h_{r,s} over canonical labels of Vir(u, p), (u, p) = (k+2, 2k+3).
inline MinWeightReport min_conformal_weight(std::int64_t u, std::int64_t p)
{
    if (u < 3 || p != 2 * u - 1)
        throw invalid_level("minimal-weight search expects (u, p) = (k+2, 2k+3)");
    MinWeightReport rep;
    std::optional<Rational> best;
    std::size_t ties = 0;
    for (const auto& l : vir_labels(u, p)) {
        ++rep.labels_searched;
        Rational h = vir_weight(u, p, l);
        if (!best || h < *best) {
            best = h;
            rep.minimizer = l;
            ties = 1;
        } else if (h == *best) {
            ++ties;
        }
    }
    rep.weight = *best;
    rep.unique = ties == 1;

    const std::int64_t t = u - 1;
    bool ok = true;
    for (std::int64_t r = 1; r <= t; ++r)
        for (std::int64_t s = 1; s <= 2 * t; ++s) {
            const std::int64_t x = std::llabs(u * s - p * r), n = 2 * r - s;
            if (n == 0)
                ok = ok && x == r;
            else if (n == 1)
                ok = ok && x == std::llabs(r - 1 - t);
            else if (n >= 2)
                ok = ok && x == std::llabs(n * (t + 1) - r) && x >= (n - 1) * t + n && x >= t + 2;
            else // s = 2r + m: X = m(t+1) + r
                ok = ok && x == -n * (t + 1) + r && x > 1;
        }
    rep.case_analysis_holds = ok;
    return rep;
}

struct FpReport {
    std::int64_t k = 0;
    unsigned precision_bits = default_precision_bits;
    Real sin2_odd_sum, sin2_odd_expected; // sum_{l odd} sin^2(pi l/(k+2)) vs (k+2)/4
    Real sin2_all_sum, sin2_all_expected; // sum_l sin^2(pi l/(k+2)) vs (k+2)/2
    Real dim_lkeven_sum;                  // sum_{l odd} sin^2 / sin^2(pi/(k+2))
    Real dim_lkeven_smatrix;              // sum_{l odd} S_{1,L_l (x) V_{l,1}} / S_{1,1}
    Real fp_lkeven;                       // (k+2) / (4 sin^2(pi/(k+2)))
    std::optional<Rational> fp_lkeven_exact;
    Real fp_ck, fp_ck_smatrix;            // closed form, and 1/S_{vac,Z}^2 with Z = L_1 (x) V_{1,2}
    Real fp_sk, fp_sk_smatrix;            // closed form, and sum of squared S-ratios against M_2^even
    Real corollary_rhs;                   // FP(C_k) / FP(L^even)^2
    Real max_deviation;
    Real tolerance;
    bool holds = false;
};

inline FpReport fp_dimension_report(std::int64_t k, unsigned bits = default_precision_bits)
{
    detail::require_positive_level(k);
    PrecisionScope ps(bits);
    FpReport rep;
    rep.k = k;
    rep.precision_bits = bits;
    auto sin2 = [](const Rational& x) {
        Real v = sin_pi(x);
        return Real(v * v);
    };

    rep.sin2_odd_sum = 0;
    rep.sin2_all_sum = 0;
    for (std::int64_t l = 1; l <= k + 1; ++l) {
        Real v = sin2(make_rational(l, k + 2));
        rep.sin2_all_sum += v;
        if (l % 2 == 1)
            rep.sin2_odd_sum += v;
    }
    rep.sin2_odd_expected = Real(k + 2) / 4;
    rep.sin2_all_expected = Real(k + 2) / 2;

    const Real s1 = sin2(make_rational(1, k + 2));
    rep.dim_lkeven_sum = rep.sin2_odd_sum / s1;
    rep.fp_lkeven = Real(k + 2) / (4 * s1);
    // sin^2(pi/n) is rational for n = 3, 4, 6
    if (k + 2 == 3 || k + 2 == 4 || k + 2 == 6) {
        const Rational s1_exact = k + 2 == 3 ? Rational(3, 4) : k + 2 == 4 ? Rational(1, 2) : Rational(1, 4);
        rep.fp_lkeven_exact = make_rational(k + 2) / (4 * s1_exact);
    }

    const auto level = AdmissibleLevel::from_k(k);
    const std::int64_t u = level.u(), p = level.p();
    const SMatrix sl2 = sl2_smatrix(k, bits);
    const auto vlabels = vir_labels(u, p);
    auto vir_entry = [&](const VirLabel& a, const VirLabel& b) { return vir_s_entry(u, p, a, b); };
    rep.dim_lkeven_smatrix = 0;
    for (std::int64_t l = 1; l <= k + 1; l += 2)
        rep.dim_lkeven_smatrix += real_part(sl2.entries(0, l - 1) / sl2.entries(0, 0)) *
                                  (vir_entry({1, 1}, canonical(u, p, {l, 1})) / vir_entry({1, 1}, {1, 1}));

    const Real sp = sin2(make_rational(1, 2 * k + 3));
    rep.fp_ck = Real((k + 2) * (k + 2) * (2 * k + 3)) / (16 * s1 * s1 * sp);
    const Real s_vac_z = real_part(sl2.entries(0, 0)) * vir_entry({1, 1}, {1, 2});
    rep.fp_ck_smatrix = 1 / (s_vac_z * s_vac_z);

    rep.fp_sk = Real(2 * k + 3) / sp;
    const SMatrix ext = extended_smatrix(k, bits);
    rep.fp_sk_smatrix = 0;
    for (std::size_t x = 0; x < ext.size(); ++x) {
        Real d = real_part(ext.entries(x, 1) / ext.entries(0, 1));
        rep.fp_sk_smatrix += d * d;
    }
    rep.corollary_rhs = rep.fp_ck / (rep.fp_lkeven * rep.fp_lkeven);

    rep.max_deviation = 0;
    auto track = [&](const Real& a, const Real& b) {
        Real d = abs_value(a - b) / (1 + abs_value(b));
        if (d > rep.max_deviation)
            rep.max_deviation = d;
    };
    track(rep.sin2_odd_sum, rep.sin2_odd_expected);
    track(rep.sin2_all_sum, rep.sin2_all_expected);
    track(rep.dim_lkeven_sum, rep.fp_lkeven);
    track(rep.dim_lkeven_smatrix, rep.fp_lkeven);
    track(rep.fp_ck_smatrix, rep.fp_ck);
    track(rep.fp_sk_smatrix, rep.fp_sk);
    track(rep.corollary_rhs, rep.fp_sk);
    if (rep.fp_lkeven_exact)
        track(rep.fp_lkeven, to_real(*rep.fp_lkeven_exact));
    rep.tolerance = precision_tolerance(bits);
    rep.holds = rep.max_deviation < rep.tolerance;
    return rep;
}

/// Numeric S-transformation of ch+-[M_r^+] = ch[M_r^even] +- ch[M_r^odd] at z = 0:
///   r odd:  ch+(-1/tau) = sum_{r' even} 2 s ch-(tau),  ch-(-1/tau) = sum_{r' odd} 2 s ch-(tau)
///   r even: ch+(-1/tau) = sum_{r' even} 2 s ch+(tau),  ch-(-1/tau) = sum_{r' odd} 2 s ch+(tau)
struct STransformReport {
    std::int64_t k = 0;
    Complex tau;
    Rational order;
    Real max_residual;
    Real tail_bound;      // sum of the tail bounds of every evaluated series, weighted by |2 s|
    Real tolerance;
    std::vector<Real> residuals; // per (r, +) then (r, -), r = 1..2k+2
    bool holds = false;
};

inline STransformReport check_s_transform_numeric(std::int64_t k, const Complex& tau0, const Rational& order,
                                                  unsigned bits = default_precision_bits, double tolerance = 1e-6)
{
    PrecisionScope ps(bits);
    if (tau0.im <= 0)
        throw nonconvergent_domain("tau0 must lie in the upper half plane");
    const Complex tau_s = Complex(Real(-1)) / tau0;
    const std::int64_t n = 2 * k + 2;

    // ch+-(tau) at both points, with tail bounds
    std::vector<Complex> plus_t, minus_t, plus_s, minus_s;
    std::vector<Real> tail_t, tail_s;
    for (std::int64_t r = 1; r <= n; ++r) {
        const auto m = induced_module_characters(k, r, order);
        const QSeries e = wq_specialize_w1(m.even), o = wq_specialize_w1(m.odd);
        const QSeries cp = e + o, cm = e - o;
        auto vp = qs_eval(cp, tau0, bits), vm = qs_eval(cm, tau0, bits);
        auto wp = qs_eval(cp, tau_s, bits), wm = qs_eval(cm, tau_s, bits);
        plus_t.push_back(vp.value);
        minus_t.push_back(vm.value);
        plus_s.push_back(wp.value);
        minus_s.push_back(wm.value);
        tail_t.push_back(vp.tail_bound > vm.tail_bound ? vp.tail_bound : vm.tail_bound);
        tail_s.push_back(wp.tail_bound > wm.tail_bound ? wp.tail_bound : wm.tail_bound);
    }

    STransformReport rep;
    rep.k = k;
    rep.tau = tau0;
    rep.order = order;
    rep.max_residual = 0;
    rep.tail_bound = 0;
    rep.tolerance = Real(tolerance);
    for (int sign : {1, -1})
        for (std::int64_t r = 1; r <= n; ++r) {
            const bool r_odd = r % 2 == 1;
            const std::int64_t t_parity = sign == 1 ? 0 : 1; // r' even for ch+, odd for ch-
            const auto& source = r_odd ? minus_t : plus_t;
            Complex rhs;
            Real tail = tail_s[r - 1];
            for (std::int64_t r1 = 1; r1 <= n; ++r1) {
                if (r1 % 2 != t_parity)
                    continue;
                const Real c = 2 * s_small(k, r, r1, bits);
                rhs += Complex(c) * source[r1 - 1];
                tail += abs_value(c) * tail_t[r1 - 1];
            }
            const Complex lhs = sign == 1 ? plus_s[r - 1] : minus_s[r - 1];
            const Real res = abs_value(lhs - rhs);
            rep.residuals.push_back(res);
            if (res > rep.max_residual)
                rep.max_residual = res;
            rep.tail_bound += tail;
        }
    rep.holds = rep.max_residual < rep.tolerance && rep.tail_bound < rep.tolerance;
    return rep;
}

} // namespace ospvoa
