#pragma once

// The ten acceptance checks, shared by the CLI `selftest` command and the
// acceptance binary.

#include <chrono>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "ospvoa/characters.hpp"
#include "ospvoa/coset.hpp"
#include "ospvoa/fusion.hpp"
#include "ospvoa/modular.hpp"

namespace ospvoa {

struct SelftestConfig {
    Rational theta_order = 20;
    Rational decomposition_order = 12;
    Rational stransform_order = 40;
    Rational coset_order = 12;
    Rational locality_order = 6;
    int fp_max_k = 12;
    int minweight_max_k = 10;
    int modular_max_k = 3;
    int central_charge_max_k = 4;
    unsigned precision_bits = 256;

    double unitarity_tol = 1e-10;
    double modular_relation_tol = 1e-8;
    double fp_tol = 1e-9;
    double stransform_tol = 1e-6;
    double theta_runtime_s = 60;
    double stransform_runtime_s = 120;

    static SelftestConfig quick()
    {
        SelftestConfig c;
        c.theta_order = 8;
        c.decomposition_order = 5;
        c.stransform_order = 20;
        c.coset_order = 5;
        c.locality_order = 4;
        c.fp_max_k = 6;
        c.minweight_max_k = 6;
        c.modular_max_k = 2;
        return c;
    }
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0;
};

namespace detail {

inline const std::vector<AdmissibleLevel>& acceptance_levels()
{
    static const std::vector<AdmissibleLevel> levels{{5, 1}, {7, 1}, {9, 1}, {3, 5}};
    return levels;
}

inline std::string fmt(const Real& x) { return x.str(4, std::ios_base::scientific); }

inline CriterionResult theta_identity_check(const SelftestConfig& cfg)
{
    CriterionResult r{1, "theta identity", true, {}, 0};
    int count = 0;
    for (const auto& level : acceptance_levels())
        for (const auto& l : osp_labels(level)) {
            ++count;
            auto rep = verify_theta_identity(level, l, cfg.theta_order);
            if (!rep.holds) {
                r.passed = false;
                r.detail = level.str() + " label (" + std::to_string(l.r) + "," + std::to_string(l.s) + ") fails";
                return r;
            }
        }
    r.detail = std::to_string(count) + " labels exact at N = " + cfg.theta_order.get_str();
    return r;
}

inline CriterionResult decomposition_check(const SelftestConfig& cfg)
{
    CriterionResult r{2, "character decomposition", true, {}, 0};
    int count = 0;
    for (const auto& level : acceptance_levels())
        for (const auto& l : osp_labels(level)) {
            ++count;
            auto rep = verify_decomposition(level, l, cfg.decomposition_order);
            if (!rep.holds) {
                r.passed = false;
                r.detail = level.str() + " label (" + std::to_string(l.r) + "," + std::to_string(l.s) + ") fails";
                return r;
            }
        }
    // k = 1 vacuum: ch[L_{1,0}] ch[V_{1,1}] + ch[L_{2,0}] ch[V_{2,1}]; odd currents at q^1 above the vacuum
    const auto level = AdmissibleLevel::from_k(1);
    const Rational n = 3;
    const auto m = induced_module_characters(1, 1, n);
    const WQSeries vac = osp_char(level, {1, 0}, n);
    const Rational shift = osp_central_charge(level) / 24;
    const bool sum_ok = !first_discrepancy(vac.truncated(Order(n)), (m.even + m.odd).truncated(Order(n)));
    const bool odd_weight = lowest_q_exponent(m.odd) + shift == 1;
    const bool odd_currents = m.odd.coefficient(Rational(1, 2), 1 - shift) == 1 &&
                              m.odd.coefficient(Rational(-1, 2), 1 - shift) == 1;
    if (!sum_ok || !odd_weight || !odd_currents) {
        r.passed = false;
        r.detail = "k = 1 vacuum branching: sum " + std::string(sum_ok ? "ok" : "wrong") + ", odd weight " +
                   (odd_weight ? "1" : "wrong") + ", odd currents " + (odd_currents ? "ok" : "missing");
        return r;
    }
    r.detail = std::to_string(count) + " labels exact at N = " + cfg.decomposition_order.get_str() +
               "; k = 1 odd currents at h = 1/4 + 3/4";
    return r;
}

inline CriterionResult oracle_equivalence_check(const SelftestConfig& cfg)
{
    CriterionResult r{3, "Verlinde oracle equivalence", true, {}, 0};
    try {
        for (auto [u, p] : std::vector<std::pair<int, int>>{{3, 5}, {4, 7}, {5, 9}})
            if (!(verlinde_standard(vir_smatrix(u, p, cfg.precision_bits)) == vir_fusion(u, p))) {
                r.passed = false;
                r.detail = "Vir(" + std::to_string(u) + "," + std::to_string(p) + ") differs";
                return r;
            }
        for (int k = 1; k <= 3; ++k) {
            if (!(verlinde_standard(sl2_smatrix(k, cfg.precision_bits)) == sl2_fusion(k))) {
                r.passed = false;
                r.detail = "sl2 level " + std::to_string(k) + " differs";
                return r;
            }
            const auto sv = verlinde_super(k, cfg.precision_bits);
            const auto osp = osp_fusion(k).tensor;
            const int n = 2 * k + 2;
            for (int a = 1; a <= n; ++a)
                for (int b = 1; b <= n; ++b)
                    for (int c = 1; c <= n; ++c) {
                        bool ok = sv.plus(a, b, c) == osp.at(a - 1, b - 1, c - 1) &&
                                  sv.minus(a, b, c) == osp.at(a - 1, b - 1, c - 1);
                        for (int e : {1, -1})
                            for (int e1 : {1, -1})
                                for (int e2 : {1, -1})
                                    ok = ok && sv.sdim(a, e, b, e1, c, e2) == super_fusion(k, a, e, b, e1, c, e2).sdim;
                        if (!ok) {
                            r.passed = false;
                            r.detail = "super Verlinde differs at k = " + std::to_string(k);
                            return r;
                        }
                    }
        }
    } catch (const non_integral_fusion& e) {
        r.passed = false;
        r.detail = e.what();
        return r;
    }
    r.detail = "Vir (3,5),(4,7),(5,9); sl2 k = 1..3; super k = 1..3";
    return r;
}

inline CriterionResult modular_axioms_check(const SelftestConfig& cfg)
{
    CriterionResult r{4, "modular axioms", true, {}, 0};
    Real worst_u = 0, worst_m = 0;
    std::string where;
    auto check = [&](const SMatrix& s, const TMatrix& t, const std::string& name) {
        Real u = unitarity_defect(s), m = modular_relation_defect(s, t);
        if (u > worst_u)
            worst_u = u;
        if (m > worst_m)
            worst_m = m;
        if (u >= cfg.unitarity_tol || m >= cfg.modular_relation_tol) {
            r.passed = false;
            if (where.empty())
                where = name;
        }
    };
    for (int k = 1; k <= cfg.modular_max_k; ++k) {
        const auto level = AdmissibleLevel::from_k(k);
        const unsigned b = cfg.precision_bits;
        check(vir_smatrix(level.u(), level.p(), b), vir_tmatrix(level.u(), level.p(), b),
              "Vir(" + std::to_string(level.u()) + "," + std::to_string(level.p()) + ")");
        check(sl2_smatrix(k, b), sl2_tmatrix(k, b), "sl2 k = " + std::to_string(k));
        check(extended_smatrix(k, b), extended_tmatrix(k, b), "extended k = " + std::to_string(k));
        check(coset_smatrix(k, b), coset_tmatrix(k, b), "coset k = " + std::to_string(k));
    }
    r.detail = "max ||SS^+ - I|| = " + fmt(worst_u) + ", max ||(ST)^3 - S^2|| = " + fmt(worst_m);
    if (!where.empty())
        r.detail += "; first failure " + where;
    return r;
}

inline CriterionResult fp_check(const SelftestConfig& cfg)
{
    CriterionResult r{5, "FP dimension identities", true, {}, 0};
    Real worst = 0;
    for (int k = 1; k <= cfg.fp_max_k; ++k) {
        auto rep = fp_dimension_report(k, cfg.precision_bits);
        if (rep.max_deviation > worst)
            worst = rep.max_deviation;
        if (!(rep.max_deviation < cfg.fp_tol))
            r.passed = false;
    }
    const auto k1 = fp_dimension_report(1, cfg.precision_bits);
    const bool exact = k1.fp_lkeven_exact && *k1.fp_lkeven_exact == 1;
    r.passed = r.passed && exact;
    r.detail = "k = 1.." + std::to_string(cfg.fp_max_k) + ", max relative deviation " + fmt(worst) +
               (exact ? "; FP(L_1^even) = 1 exactly" : "; FP(L_1^even) exact value wrong");
    return r;
}

inline CriterionResult min_weight_check(const SelftestConfig& cfg)
{
    CriterionResult r{6, "minimal conformal weight", true, {}, 0};
    for (int k = 1; k <= cfg.minweight_max_k; ++k) {
        auto rep = min_conformal_weight(k + 2, 2 * k + 3);
        if (!(rep.minimizer == VirLabel{1, 2}) || !rep.unique || !rep.case_analysis_holds) {
            r.passed = false;
            r.detail = "k = " + std::to_string(k) + ": minimizer " + to_string(rep.minimizer) +
                       (rep.unique ? "" : " (not unique)") + (rep.case_analysis_holds ? "" : " (case analysis fails)");
            return r;
        }
    }
    r.detail = "V(1,2) unique for k = 1.." + std::to_string(cfg.minweight_max_k);
    return r;
}

inline CriterionResult central_charge_check(const SelftestConfig& cfg)
{
    CriterionResult r{7, "central-charge additivity", true, {}, 0};
    std::ostringstream os;
    for (int k = 1; k <= cfg.central_charge_max_k; ++k) {
        const auto level = AdmissibleLevel::from_k(k);
        const Rational c = make_rational(3 * k, k + 2) + vir_central_charge(level.u(), level.p());
        const Rational measured = osp_vacuum_central_charge(level);
        os << (k > 1 ? ", " : "") << "c(" << k << ") = " << measured.get_str();
        if (measured != c)
            r.passed = false;
    }
    r.passed = r.passed && osp_vacuum_central_charge(AdmissibleLevel::from_k(1)) == Rational(2, 5) &&
               osp_vacuum_central_charge(AdmissibleLevel::from_k(2)) == Rational(4, 7);
    r.detail = os.str();
    return r;
}

inline CriterionResult locality_check(const SelftestConfig& cfg)
{
    CriterionResult r{8, "locality classification", true, {}, 0};
    for (int k = 1; k <= 3; ++k) {
        const auto from_weights = locality_from_weights(k);
        for (int m = 1; m <= 2 * k + 2; ++m) {
            const bool series = induced_module_is_local(k, m, cfg.locality_order);
            const bool expected = m % 2 == 1;
            if (series != expected || from_weights[m - 1] != expected) {
                r.passed = false;
                r.detail = "k = " + std::to_string(k) + ", r = " + std::to_string(m);
                return r;
            }
        }
    }
    r.detail = "M_r integer-graded iff r odd, k = 1..3 (series and weight formula)";
    return r;
}

inline CriterionResult stransform_check(const SelftestConfig& cfg)
{
    CriterionResult r{9, "numeric S-transformation", true, {}, 0};
    const auto start = std::chrono::steady_clock::now();
    std::ostringstream os;
    for (int im : {1, 2}) {
        auto rep = check_s_transform_numeric(1, Complex(Real(0), Real(im)), cfg.stransform_order, cfg.precision_bits,
                                             cfg.stransform_tol);
        os << (im > 1 ? "; " : "") << "tau = " << im << "i: residual " << fmt(rep.max_residual) << ", tail "
           << fmt(rep.tail_bound);
        if (!(rep.max_residual < cfg.stransform_tol) || !rep.holds)
            r.passed = false;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > cfg.stransform_runtime_s) {
        r.passed = false;
        os << "; runtime " << secs << " s over target";
    }
    r.detail = os.str();
    return r;
}

inline CriterionResult coset_check(const SelftestConfig& cfg)
{
    CriterionResult r{10, "coset round trip", true, {}, 0};
    std::ostringstream os;
    for (int k = 1; k <= 2; ++k) {
        auto rep = coset_round_trip(k, cfg.coset_order, cfg.precision_bits);
        os << (k > 1 ? "; " : "") << "k = " << k << ": " << rep.representatives_compared << " representatives";
        if (!rep.holds()) {
            r.passed = false;
            os << ", " << (rep.failures.empty() ? "failed" : rep.failures.front());
        }
    }
    r.detail = os.str();
    return r;
}

} // namespace detail

inline std::vector<std::function<CriterionResult(const SelftestConfig&)>> acceptance_criteria()
{
    return {detail::theta_identity_check, detail::decomposition_check, detail::oracle_equivalence_check,
            detail::modular_axioms_check, detail::fp_check,          detail::min_weight_check,
            detail::central_charge_check, detail::locality_check,     detail::stransform_check,
            detail::coset_check};
}

/// Runs every criterion; exceptions are reported as failures of that criterion.
inline std::vector<CriterionResult> run_acceptance(const SelftestConfig& cfg = {})
{
    std::vector<CriterionResult> out;
    int id = 0;
    for (const auto& criterion : acceptance_criteria()) {
        ++id;
        const auto start = std::chrono::steady_clock::now();
        CriterionResult res;
        try {
            res = criterion(cfg);
        } catch (const std::exception& e) {
            res = {id, "criterion " + std::to_string(id), false, std::string("exception: ") + e.what(), 0};
        }
        res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (id == 1 && res.seconds > cfg.theta_runtime_s) {
            res.passed = false;
            res.detail += "; runtime over target";
        }
        out.push_back(std::move(res));
    }
    return out;
}

} // namespace ospvoa
