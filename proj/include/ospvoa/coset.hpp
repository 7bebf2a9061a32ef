#pragma once

// Branching of the local induced modules M_r (r odd) over the lattice
// subalgebra V_L, L = sqrt(2k) Z: parafermion characters by two independent
// extraction methods, their T phases and S-matrix.
//
// Charge identification: w^x in ch[M_r] sits in the class nu = 2x mod 2k with
// Heisenberg weight x^2/k.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ospvoa/characters.hpp"
#include "ospvoa/fusion.hpp"
#include "ospvoa/modular.hpp"
#include "ospvoa/numeric.hpp"
#include "ospvoa/qseries.hpp"

namespace ospvoa {

/// theta_{L+nu}(0, tau) = sum_m q^{(nu + 2km)^2 / 4k}
inline QSeries lattice_theta(std::int64_t k, std::int64_t nu, const Rational& order)
{
    detail::require_positive_level(k);
    if (order <= 0)
        throw error("theta truncation order must be positive");
    const std::int64_t a = mod_floor(nu, 2 * k);
    std::map<std::int64_t, Rational> terms; // lattice 1/4k
    auto add = [&](std::int64_t m) {
        const std::int64_t v = a + 2 * k * m;
        if (make_rational(v * v, 4 * k) >= order)
            return false;
        terms[v * v] += 1;
        return true;
    };
    for (std::int64_t m = 0; add(m); ++m) {
    }
    for (std::int64_t m = -1; add(m); --m) {
    }
    return QSeries::from_lattice(4 * k, std::move(terms), Order(order));
}

inline std::int64_t charge_class(const Rational& x, std::int64_t k) { return mod_floor(lattice_index(x, 2), 2 * k); }

inline Rational lattice_pairing(std::int64_t k, std::int64_t a, std::int64_t b) { return make_rational(a * b, 2 * k); }

namespace detail {

inline void require_local(std::int64_t k, const CosetLabel& l) { validate(k, l); }

// working order for the module characters so that every class representative
// with |x| <= k, and the division by theta, stay exact below N
inline Rational coset_working_order(std::int64_t k, const Rational& order) { return order + k + 1; }

} // namespace detail

/// Direct extraction for every class nu of one module M_r.
struct CosetBranching {
    std::int64_t k = 0;
    std::int64_t r = 0;
    Rational order;
    std::vector<QSeries> characters;      // indexed by nu
    std::vector<int> representatives;     // number of w-exponents compared per class
};

/// f_x(q) q^{-x^2/k} eta(q) for every x with |x| <= k; classes must agree exactly.
inline CosetBranching coset_branching_direct(std::int64_t k, std::int64_t r, const Rational& order)
{
    detail::require_local(k, {0, r});
    const Rational work = detail::coset_working_order(k, order);
    const auto m = induced_module_characters(k, r, work);
    const QSeries eta = qs_eta(order + 2);

    CosetBranching out{k, r, order, std::vector<QSeries>(static_cast<std::size_t>(2 * k), QSeries::zero(Order(order))),
                       std::vector<int>(static_cast<std::size_t>(2 * k), 0)};
    const auto slices = (m.even + m.odd).w_slices();
    for (std::int64_t twice_x = -2 * k; twice_x <= 2 * k; ++twice_x) {
        const Rational x = make_rational(twice_x, 2);
        const std::int64_t nu = charge_class(x, k);
        auto it = slices.find(x);
        QSeries f = it == slices.end() ? QSeries::zero(Order(work)) : it->second;
        QSeries c = (f.shifted(-x * x / k) * eta).truncated(Order(order));
        if (c.truncation() != Order(order))
            throw error("coset extraction lost precision below the requested order");
        auto& slot = out.characters[static_cast<std::size_t>(nu)];
        if (out.representatives[static_cast<std::size_t>(nu)] == 0)
            slot = c;
        else if (!(slot == c))
            throw inconsistent_branching("class " + std::to_string(nu) + " of M(" + std::to_string(r) +
                                         ") differs between representatives at w^" + x.get_str());
        ++out.representatives[static_cast<std::size_t>(nu)];
    }
    return out;
}

inline QSeries coset_char_direct(std::int64_t k, const CosetLabel& label, const Rational& order)
{
    detail::require_local(k, label);
    return coset_branching_direct(k, label.r, order).characters[static_cast<std::size_t>(label.nu)];
}

enum class SuperSector { plus, minus };

struct PhaseSumResult {
    QSeries character;
    Real max_deviation; // distance of the phase-summed coefficients from the reconstructed rationals
};

/// eta / (2k theta_{L+nu}) sum_gamma e^{-2 pi i <nu,gamma>} ch+-[M_r](tau, gamma), where
/// ch(tau, gamma) puts the phase e^{2 pi i <2x, gamma>} on w^x. For ch- the parity of
/// each term enters and the result is multiplied by (-1)^{nu odd}.
inline PhaseSumResult coset_char_phase_sum_report(std::int64_t k, const CosetLabel& label, const Rational& order,
                                                  SuperSector sector = SuperSector::plus,
                                                  unsigned bits = default_precision_bits)
{
    detail::require_local(k, label);
    PrecisionScope ps(bits);
    const Rational work = detail::coset_working_order(k, order);
    const auto m = induced_module_characters(k, label.r, work);
    const WQSeries ch = sector == SuperSector::plus ? m.even + m.odd : m.even - m.odd;

    // numeric phase sum, coefficient by coefficient
    std::map<Rational, Complex> summed;
    const std::int64_t n = 2 * k;
    for (const auto& t : ch.terms()) {
        const std::int64_t twice_x = lattice_index(t.w_exponent, 2);
        Complex acc;
        for (std::int64_t g = 0; g < n; ++g)
            acc += unit_phase(lattice_pairing(k, twice_x - label.nu, g));
        summed[t.q_exponent] += Complex(to_real(t.coefficient)) * acc / Complex(Real(n));
    }
    PhaseSumResult out{QSeries::zero(), Real(0)};
    const Real tol("1e-20");
    std::map<Rational, Rational> exact;
    for (const auto& [e, z] : summed) {
        auto rec = reconstruct_rational(z.re, tol);
        if (!rec || abs_value(z.im) > tol)
            throw inconsistent_branching("phase sum coefficient at q^" + e.get_str() + " is not rational");
        const Real dev = abs_value(z - Complex(to_real(*rec)));
        if (dev > out.max_deviation)
            out.max_deviation = dev;
        if (*rec != 0)
            exact[e] = *rec;
    }
    std::int64_t den = 1;
    for (const auto& [e, c] : exact)
        den = checked_lcm(den, to_int64(e.get_den()));
    std::map<std::int64_t, Rational> lattice;
    for (const auto& [e, c] : exact)
        lattice.emplace(lattice_index(e, den), c);
    QSeries class_sum = QSeries::from_lattice(den, std::move(lattice), Order(work));

    const QSeries theta = lattice_theta(k, label.nu, work + k);
    QSeries result = (class_sum * qs_invert(theta, Order(work)) * qs_eta(order + 2)).truncated(Order(order));
    if (sector == SuperSector::minus && label.nu % 2 != 0)
        result = -result;
    if (result.truncation() != Order(order))
        throw error("phase-sum extraction lost precision below the requested order");
    out.character = std::move(result);
    return out;
}

inline QSeries coset_char_phase_sum(std::int64_t k, const CosetLabel& label, const Rational& order,
                                    SuperSector sector = SuperSector::plus)
{
    return coset_char_phase_sum_report(k, label, order, sector).character;
}

/// Exponent t with T_C = e^{2 pi i t}: T_C = e^{-pi i (<l,l> - 1/12)} T_{M_r}, <l,l> = nu^2/2k.
inline Rational coset_t_exponent(std::int64_t k, const CosetLabel& label)
{
    detail::require_local(k, label);
    const auto level = AdmissibleLevel::from_k(k);
    const Rational t_m = induced_conformal_dimension(k, 1, label.r) - osp_central_charge(level) / 24;
    return frac_part(t_m - lattice_pairing(k, label.nu, label.nu) / 2 + Rational(1, 24));
}

inline Complex coset_t_phase(std::int64_t k, const CosetLabel& label, unsigned bits = default_precision_bits)
{
    PrecisionScope ps(bits);
    return unit_phase(coset_t_exponent(k, label));
}

inline Rational coset_central_charge(std::int64_t k) { return osp_central_charge(AdmissibleLevel::from_k(k)) - 1; }

inline std::vector<std::string> coset_label_names(std::int64_t k)
{
    std::vector<std::string> out;
    for (const auto& l : coset_labels(k))
        out.push_back(coset_label_name(l.nu, l.r));
    return out;
}

inline TMatrix coset_tmatrix(std::int64_t k, unsigned bits = default_precision_bits)
{
    TMatrix t{coset_label_names(k), {}, coset_central_charge(k), bits};
    for (const auto& l : coset_labels(k))
        t.exponents.push_back(coset_t_exponent(k, l));
    return t;
}

/// S_{(l,r),(m,r')} = e^{2 pi i <l,m>} sign s_{r,r'} / sqrt(k/2), with sign -1 when
/// exactly one of l, m lies outside 2L'/L (both r, r' are odd). The phase sign is the
/// one compatible with T = e^{2 pi i (h - c/24)}; its conjugate pairs with conj(T).
inline SMatrix coset_smatrix(std::int64_t k, unsigned bits = default_precision_bits)
{
    detail::require_positive_level(k);
    PrecisionScope ps(bits);
    const auto labels = coset_labels(k);
    SMatrix s{coset_label_names(k), ComplexMatrix(labels.size(), labels.size()), 0, bits};
    const Real norm = boost::multiprecision::sqrt(Real(k) / 2);
    for (std::size_t a = 0; a < labels.size(); ++a)
        for (std::size_t b = 0; b < labels.size(); ++b) {
            const auto& l = labels[a];
            const auto& m = labels[b];
            const bool l_in = l.nu % 2 == 0, m_in = m.nu % 2 == 0;
            int sign = 1;
            if (l_in != m_in)
                sign = sign_power(l.r);
            else if (!l_in)
                sign = sign_power(l.r + m.r);
            const Real v = sign * s_small(k, l.r, m.r, bits) / norm;
            s.entries(a, b) = unit_phase(lattice_pairing(k, l.nu, m.nu)) * Complex(v);
        }
    return s;
}

struct ReassemblyReport {
    bool plus_holds = false;
    bool minus_holds = false;
    std::optional<Discrepancy> plus_discrepancy;
    std::optional<Discrepancy> minus_discrepancy;
};

namespace detail {

inline std::optional<Discrepancy> first_q_discrepancy(const QSeries& a, const QSeries& b)
{
    const QSeries d = a - b;
    if (d.empty())
        return std::nullopt;
    const auto [e, c] = d.terms().front();
    return Discrepancy{0, e, a.coefficient(e), b.coefficient(e)};
}

} // namespace detail

/// sum_nu (+-1)^nu theta_{L+nu}/eta ch[C_{nu,r}] against ch+-[M_r](tau, 0), exact below `order`.
inline ReassemblyReport verify_reassembly(std::int64_t k, std::int64_t r, const Rational& order)
{
    const auto branching = coset_branching_direct(k, r, order + 1);
    const auto m = induced_module_characters(k, r, order);
    const QSeries inv_eta = qs_invert(qs_eta(order + 2), Order(order + 2));
    QSeries plus = QSeries::zero(Order(order)), minus = QSeries::zero(Order(order));
    for (std::int64_t nu = 0; nu < 2 * k; ++nu) {
        const QSeries piece =
            (lattice_theta(k, nu, order + 2) * inv_eta * branching.characters[static_cast<std::size_t>(nu)])
                .truncated(Order(order));
        plus = plus + piece;
        minus = nu % 2 == 0 ? minus + piece : minus - piece;
    }
    ReassemblyReport rep;
    rep.plus_discrepancy = detail::first_q_discrepancy(plus, wq_specialize_w1(m.even + m.odd).truncated(Order(order)));
    rep.minus_discrepancy =
        detail::first_q_discrepancy(minus, wq_specialize_w1(m.even - m.odd).truncated(Order(order)));
    rep.plus_holds = !rep.plus_discrepancy;
    rep.minus_holds = !rep.minus_discrepancy;
    return rep;
}

struct CosetRoundTripReport {
    std::int64_t k = 0;
    Rational order;
    bool class_independent = false;
    int representatives_compared = 0;
    bool direct_matches_phase_sum = false;
    bool minus_variant_matches = false;
    Real max_phase_deviation;
    bool reassembly_holds = false;
    bool t_phase_matches_series = false;
    bool verlinde_matches = false;
    std::vector<std::string> failures;

    bool holds() const
    {
        return class_independent && direct_matches_phase_sum && minus_variant_matches && reassembly_holds &&
               t_phase_matches_series && verlinde_matches;
    }
};

inline CosetRoundTripReport coset_round_trip(std::int64_t k, const Rational& order,
                                             unsigned bits = default_precision_bits)
{
    CosetRoundTripReport rep;
    rep.k = k;
    rep.order = order;
    rep.class_independent = rep.direct_matches_phase_sum = rep.minus_variant_matches = true;
    rep.reassembly_holds = rep.t_phase_matches_series = true;
    rep.max_phase_deviation = 0;
    for (std::int64_t r = 1; r <= 2 * k + 2; r += 2) {
        std::optional<CosetBranching> direct;
        try {
            direct = coset_branching_direct(k, r, order);
        } catch (const inconsistent_branching& e) {
            rep.class_independent = false;
            rep.failures.push_back(e.what());
            continue;
        }
        for (int n : direct->representatives)
            rep.representatives_compared += n;
        for (std::int64_t nu = 0; nu < 2 * k; ++nu) {
            const CosetLabel l{nu, r};
            const QSeries& c = direct->characters[static_cast<std::size_t>(nu)];
            const auto plus = coset_char_phase_sum_report(k, l, order, SuperSector::plus, bits);
            const auto minus = coset_char_phase_sum_report(k, l, order, SuperSector::minus, bits);
            for (const Real& d : {plus.max_deviation, minus.max_deviation})
                if (d > rep.max_phase_deviation)
                    rep.max_phase_deviation = d;
            if (!(plus.character == c)) {
                rep.direct_matches_phase_sum = false;
                rep.failures.push_back("phase sum differs from direct extraction for " +
                                       coset_label_name(nu, r));
            }
            if (!(minus.character == c)) {
                rep.minus_variant_matches = false;
                rep.failures.push_back("ch- phase sum differs for " + coset_label_name(nu, r));
            }
            const auto lowest = c.min_exponent();
            if (!lowest || frac_part(*lowest) != coset_t_exponent(k, l)) {
                rep.t_phase_matches_series = false;
                rep.failures.push_back("T phase disagrees with the series for " + coset_label_name(nu, r));
            }
        }
        const auto re = verify_reassembly(k, r, order);
        if (!re.plus_holds || !re.minus_holds) {
            rep.reassembly_holds = false;
            rep.failures.push_back("reassembly fails for M(" + std::to_string(r) + ")");
        }
    }
    try {
        rep.verlinde_matches = verlinde_standard(coset_smatrix(k, bits)) == parafermion_fusion(k);
    } catch (const non_integral_fusion& e) {
        rep.failures.push_back(e.what());
    }
    if (!rep.verlinde_matches && rep.failures.empty())
        rep.failures.push_back("Verlinde on the coset S-matrix differs from the parafermion fusion rules");
    return rep;
}

} // namespace ospvoa
