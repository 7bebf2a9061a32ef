#pragma once

// JSON export of series, tensors, matrices and reports, and re-validation of
// exported documents. Rationals are {"num","den"} objects with decimal-string
// integers; reals are decimal strings next to a "precision_bits" field.

#include <string>
#include <vector>

#include "json.hpp"

#include "ospvoa/characters.hpp"
#include "ospvoa/coset.hpp"
#include "ospvoa/fusion.hpp"
#include "ospvoa/modular.hpp"
#include "ospvoa/selftest.hpp"

namespace ospvoa::json_io {

using nlohmann::json;

struct invalid_document : error {
    explicit invalid_document(const std::string& what) : error("InvalidDocument: " + what) {}
};

inline json rational(const Rational& r) { return {{"num", r.get_num().get_str()}, {"den", r.get_den().get_str()}}; }

inline Rational parse_rational(const json& j)
{
    if (!j.is_object() || !j.contains("num") || !j.contains("den"))
        throw invalid_document("rational must be an object with num and den");
    const auto text = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    try {
        Rational r(mpz_class(text(j.at("num"))), mpz_class(text(j.at("den"))));
        if (r.get_den() == 0)
            throw invalid_document("zero denominator");
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw invalid_document("rational components must be integers");
    }
}

inline json order(const Order& o) { return o.is_infinite() ? json(nullptr) : rational(o.value()); }

inline Order parse_order(const json& j) { return j.is_null() ? Order::infinite() : Order(parse_rational(j)); }

inline json real(const Real& x, unsigned bits) { return to_decimal(x, bits); }

inline Real parse_real(const json& j, unsigned bits)
{
    if (!j.is_string())
        throw invalid_document("real must be a decimal string");
    PrecisionScope ps(bits);
    try {
        return Real(j.get<std::string>());
    } catch (const std::exception&) {
        throw invalid_document("not a decimal real: " + j.get<std::string>());
    }
}

inline json complex(const Complex& z, unsigned bits) { return {{"re", real(z.re, bits)}, {"im", real(z.im, bits)}}; }

inline Complex parse_complex(const json& j, unsigned bits)
{
    return {parse_real(j.at("re"), bits), parse_real(j.at("im"), bits)};
}

inline json qseries(const QSeries& s)
{
    json terms = json::array();
    for (const auto& [e, c] : s.terms())
        terms.push_back({{"q", rational(e)}, {"c", rational(c)}});
    return {{"kind", "qseries"}, {"order", order(s.truncation())}, {"terms", terms}};
}

inline QSeries parse_qseries(const json& j)
{
    std::vector<std::pair<Rational, Rational>> terms;
    std::int64_t den = 1;
    for (const auto& t : j.at("terms")) {
        terms.emplace_back(parse_rational(t.at("q")), parse_rational(t.at("c")));
        den = checked_lcm(den, to_int64(terms.back().first.get_den()));
    }
    std::map<std::int64_t, Rational> lattice;
    for (const auto& [e, c] : terms)
        lattice[lattice_index(e, den)] += c;
    return QSeries::from_lattice(den, std::move(lattice), parse_order(j.at("order")));
}

inline json wqseries(const WQSeries& s)
{
    json terms = json::array();
    for (const auto& t : s.terms())
        terms.push_back({{"w", rational(t.w_exponent)}, {"q", rational(t.q_exponent)}, {"c", rational(t.coefficient)}});
    return {{"kind", "wqseries"},
            {"q_order", order(s.q_truncation())},
            {"graded_order", order(s.graded_truncation())},
            {"w_weight", rational(s.w_weight())},
            {"terms", terms}};
}

inline WQSeries parse_wqseries(const json& j)
{
    std::vector<WQTerm> terms;
    for (const auto& t : j.at("terms"))
        terms.push_back({parse_rational(t.at("w")), parse_rational(t.at("q")), parse_rational(t.at("c"))});
    return WQSeries::from_terms(terms, parse_order(j.at("q_order")), parse_order(j.at("graded_order")),
                                parse_rational(j.at("w_weight")));
}

inline json discrepancy(const std::optional<Discrepancy>& d)
{
    if (!d)
        return nullptr;
    return {{"w", rational(d->w_exponent)}, {"q", rational(d->q_exponent)}, {"lhs", rational(d->lhs)},
            {"rhs", rational(d->rhs)}};
}

inline json identity(const IdentityReport& r, const std::string& kind)
{
    return {{"kind", kind},
            {"holds", r.holds},
            {"order", rational(r.order)},
            {"graded_order", order(r.graded_order)},
            {"terms_compared", r.terms_compared},
            {"discrepancy", discrepancy(r.discrepancy)}};
}

inline json fusion(const FusionTensor& t, const std::string& family)
{
    json entries = json::array();
    for (std::size_t a = 0; a < t.size(); ++a)
        for (std::size_t b = 0; b < t.size(); ++b)
            for (std::size_t c = 0; c < t.size(); ++c)
                if (t.at(a, b, c) != 0)
                    entries.push_back({a, b, c, t.at(a, b, c)});
    json products = json::object();
    for (std::size_t a = 0; a < t.size(); ++a)
        for (std::size_t b = a; b < t.size(); ++b)
            products[t.labels()[a] + " x " + t.labels()[b]] = t.product(a, b);
    return {{"kind", "fusion"},
            {"family", family},
            {"labels", t.labels()},
            {"unit", t.unit()},
            {"entries", entries},
            {"products", products},
            {"axioms",
             {{"unit", t.unit_ok()},
              {"commutative", t.commutative()},
              {"associative", t.associative()},
              {"duality", t.duality_ok()},
              {"non_negative", t.non_negative()}}}};
}

inline FusionTensor parse_fusion(const json& j)
{
    FusionTensor t(j.at("labels").get<std::vector<std::string>>(), j.at("unit").get<std::size_t>());
    for (const auto& e : j.at("entries")) {
        const auto a = e.at(0).get<std::size_t>(), b = e.at(1).get<std::size_t>(), c = e.at(2).get<std::size_t>();
        if (a >= t.size() || b >= t.size() || c >= t.size())
            throw invalid_document("fusion entry index out of range");
        t.set(a, b, c, e.at(3).get<int>());
    }
    return t;
}

inline json smatrix(const SMatrix& s, const std::string& family)
{
    json rows = json::array();
    for (std::size_t i = 0; i < s.size(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < s.size(); ++j)
            row.push_back(complex(s.entries(i, j), s.precision_bits));
        rows.push_back(row);
    }
    return {{"kind", "smatrix"},
            {"family", family},
            {"labels", s.labels},
            {"vacuum", s.vacuum},
            {"precision_bits", s.precision_bits},
            {"entries", rows},
            {"unitarity_defect", real(unitarity_defect(s), s.precision_bits)},
            {"symmetry_defect", real(symmetry_defect(s), s.precision_bits)}};
}

inline SMatrix parse_smatrix(const json& j)
{
    SMatrix s;
    s.labels = j.at("labels").get<std::vector<std::string>>();
    s.vacuum = j.at("vacuum").get<std::size_t>();
    s.precision_bits = j.at("precision_bits").get<unsigned>();
    PrecisionScope ps(s.precision_bits);
    s.entries = ComplexMatrix(s.size(), s.size());
    const auto& rows = j.at("entries");
    if (rows.size() != s.size())
        throw invalid_document("S-matrix row count does not match labels");
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (rows[i].size() != s.size())
            throw invalid_document("S-matrix row length does not match labels");
        for (std::size_t k = 0; k < s.size(); ++k)
            s.entries(i, k) = parse_complex(rows[i][k], s.precision_bits);
    }
    return s;
}

inline json tmatrix(const TMatrix& t, const std::string& family, const std::optional<SMatrix>& s = std::nullopt)
{
    PrecisionScope ps(t.precision_bits);
    json ex = json::array(), phases = json::array();
    const ComplexMatrix m = t.matrix();
    for (std::size_t i = 0; i < t.labels.size(); ++i) {
        ex.push_back(rational(t.exponents[i]));
        phases.push_back(complex(m(i, i), t.precision_bits));
    }
    json out{{"kind", "tmatrix"},
             {"family", family},
             {"labels", t.labels},
             {"central_charge", rational(t.central_charge)},
             {"exponents", ex},
             {"phases", phases},
             {"precision_bits", t.precision_bits}};
    if (s)
        out["modular_relation_defect"] = real(modular_relation_defect(*s, t), t.precision_bits);
    return out;
}

inline TMatrix parse_tmatrix(const json& j)
{
    TMatrix t;
    t.labels = j.at("labels").get<std::vector<std::string>>();
    t.central_charge = parse_rational(j.at("central_charge"));
    t.precision_bits = j.at("precision_bits").get<unsigned>();
    for (const auto& e : j.at("exponents"))
        t.exponents.push_back(parse_rational(e));
    if (t.exponents.size() != t.labels.size())
        throw invalid_document("T-matrix exponent count does not match labels");
    return t;
}

inline json super_verlinde(const SuperVerlinde& sv, unsigned bits)
{
    const auto n = static_cast<std::int64_t>(sv.dim());
    json entries = json::array();
    for (std::int64_t a = 1; a <= n; ++a)
        for (std::int64_t b = 1; b <= n; ++b)
            for (std::int64_t c = 1; c <= n; ++c)
                if (sv.plus(a, b, c) != 0 || sv.minus(a, b, c) != 0)
                    entries.push_back({{"r", a}, {"r1", b}, {"r2", c}, {"plus", sv.plus(a, b, c)},
                                       {"minus", sv.minus(a, b, c)}});
    bool matches = true;
    const auto osp = osp_fusion(sv.k).tensor;
    for (std::int64_t a = 1; a <= n; ++a)
        for (std::int64_t b = 1; b <= n; ++b)
            for (std::int64_t c = 1; c <= n; ++c) {
                matches = matches && sv.plus(a, b, c) == osp.at(a - 1, b - 1, c - 1) &&
                          sv.minus(a, b, c) == osp.at(a - 1, b - 1, c - 1);
                for (int e : {1, -1})
                    for (int e1 : {1, -1})
                        for (int e2 : {1, -1})
                            matches = matches && sv.sdim(a, e, b, e1, c, e2) == super_fusion(sv.k, a, e, b, e1, c, e2).sdim;
            }
    return {{"kind", "verlinde_super"},
            {"k", sv.k},
            {"precision_bits", bits},
            {"max_deviation", real(sv.max_deviation, bits)},
            {"entries", entries},
            {"matches_osp_fusion", matches}};
}

inline json fp_report(const FpReport& r)
{
    const unsigned b = r.precision_bits;
    json out{{"kind", "fpdim"},
             {"k", r.k},
             {"precision_bits", b},
             {"sin2_odd_sum", real(r.sin2_odd_sum, b)},
             {"sin2_odd_expected", real(r.sin2_odd_expected, b)},
             {"sin2_all_sum", real(r.sin2_all_sum, b)},
             {"sin2_all_expected", real(r.sin2_all_expected, b)},
             {"dim_Lkeven_sum", real(r.dim_lkeven_sum, b)},
             {"dim_Lkeven_smatrix", real(r.dim_lkeven_smatrix, b)},
             {"fp_Lkeven", real(r.fp_lkeven, b)},
             {"fp_Lkeven_exact", r.fp_lkeven_exact ? rational(*r.fp_lkeven_exact) : json(nullptr)},
             {"fp_Ck", real(r.fp_ck, b)},
             {"fp_Ck_smatrix", real(r.fp_ck_smatrix, b)},
             {"fp_Sk", real(r.fp_sk, b)},
             {"fp_Sk_smatrix", real(r.fp_sk_smatrix, b)},
             {"corollary_rhs", real(r.corollary_rhs, b)},
             {"max_deviation", real(r.max_deviation, b)},
             {"tolerance", real(r.tolerance, b)},
             {"corollary_holds", r.holds}};
    return out;
}

inline json min_weight(const MinWeightReport& r, std::int64_t u, std::int64_t p)
{
    return {{"kind", "minweight"},
            {"u", u},
            {"p", p},
            {"minimizer", {{"r", r.minimizer.r}, {"s", r.minimizer.s}}},
            {"weight", rational(r.weight)},
            {"unique", r.unique},
            {"labels_searched", r.labels_searched},
            {"case_analysis_holds", r.case_analysis_holds}};
}

inline json stransform(const STransformReport& r, unsigned bits)
{
    json res = json::array();
    for (const auto& x : r.residuals)
        res.push_back(real(x, bits));
    return {{"kind", "stransform"},
            {"k", r.k},
            {"tau", complex(r.tau, bits)},
            {"order", rational(r.order)},
            {"precision_bits", bits},
            {"residuals", res},
            {"max_residual", real(r.max_residual, bits)},
            {"tail_bound", real(r.tail_bound, bits)},
            {"tolerance", real(r.tolerance, bits)},
            {"holds", r.holds}};
}

inline json coset_round_trip(const CosetRoundTripReport& r, unsigned bits)
{
    return {{"kind", "coset_round_trip"},
            {"k", r.k},
            {"order", rational(r.order)},
            {"precision_bits", bits},
            {"class_independent", r.class_independent},
            {"representatives_compared", r.representatives_compared},
            {"direct_matches_phase_sum", r.direct_matches_phase_sum},
            {"minus_variant_matches", r.minus_variant_matches},
            {"max_phase_deviation", real(r.max_phase_deviation, bits)},
            {"reassembly_holds", r.reassembly_holds},
            {"t_phase_matches_series", r.t_phase_matches_series},
            {"verlinde_matches", r.verlinde_matches},
            {"holds", r.holds()},
            {"failures", r.failures}};
}

inline json selftest(const std::vector<CriterionResult>& results)
{
    json items = json::array();
    bool all = true;
    for (const auto& r : results) {
        items.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail},
                         {"seconds", r.seconds}});
        all = all && r.passed;
    }
    return {{"kind", "selftest"}, {"criteria", items}, {"all_passed", all}};
}

/// Re-parses a document produced by this module and re-checks what it can
/// recompute from its own contents. Returns a list of problems (empty = valid).
inline std::vector<std::string> revalidate(const json& doc)
{
    std::vector<std::string> problems;
    const std::string kind = doc.value("kind", "");
    try {
        if (kind == "qseries") {
            const QSeries s = parse_qseries(doc);
            if (!(qseries(s) == doc))
                problems.push_back("q-series does not round-trip");
        } else if (kind == "wqseries") {
            const WQSeries s = parse_wqseries(doc);
            if (!(wqseries(s) == doc))
                problems.push_back("(w,q)-series does not round-trip");
        } else if (kind == "fusion" || kind == "verlinde") {
            const FusionTensor t = parse_fusion(doc);
            const auto& ax = doc.at("axioms");
            if (ax.at("unit").get<bool>() != t.unit_ok() || ax.at("commutative").get<bool>() != t.commutative() ||
                ax.at("associative").get<bool>() != t.associative() || ax.at("duality").get<bool>() != t.duality_ok() ||
                ax.at("non_negative").get<bool>() != t.non_negative())
                problems.push_back("recorded axiom flags disagree with the tensor");
        } else if (kind == "smatrix") {
            const SMatrix s = parse_smatrix(doc);
            PrecisionScope ps(s.precision_bits);
            const Real recorded = parse_real(doc.at("unitarity_defect"), s.precision_bits);
            const Real actual = unitarity_defect(s);
            if (abs_value(actual - recorded) > Real("1e-30") + recorded)
                problems.push_back("recorded unitarity defect does not match the entries");
        } else if (kind == "tmatrix") {
            const TMatrix t = parse_tmatrix(doc);
            PrecisionScope ps(t.precision_bits);
            const ComplexMatrix m = t.matrix();
            for (std::size_t i = 0; i < t.labels.size(); ++i)
                if (abs_value(m(i, i) - parse_complex(doc.at("phases").at(i), t.precision_bits)) > Real("1e-30"))
                    problems.push_back("phase " + std::to_string(i) + " does not match its exponent");
        } else if (kind == "fpdim") {
            const unsigned b = doc.at("precision_bits").get<unsigned>();
            PrecisionScope ps(b);
            const Real dev = parse_real(doc.at("max_deviation"), b), tol = parse_real(doc.at("tolerance"), b);
            const Real ck = parse_real(doc.at("fp_Ck"), b), sk = parse_real(doc.at("fp_Sk"), b),
                       le = parse_real(doc.at("fp_Lkeven"), b);
            if ((dev < tol) != doc.at("corollary_holds").get<bool>())
                problems.push_back("corollary flag inconsistent with deviation");
            if (abs_value(ck / (le * le) - sk) / sk > tol * 10)
                problems.push_back("FP(S) != FP(C)/FP(L^even)^2 from recorded values");
        } else if (kind == "minweight") {
            const auto u = doc.at("u").get<std::int64_t>(), p = doc.at("p").get<std::int64_t>();
            const VirLabel l{doc.at("minimizer").at("r").get<std::int64_t>(), doc.at("minimizer").at("s").get<std::int64_t>()};
            if (vir_weight(u, p, l) != parse_rational(doc.at("weight")))
                problems.push_back("recorded weight is not h of the minimizer");
        } else if (kind == "stransform") {
            const unsigned b = doc.at("precision_bits").get<unsigned>();
            PrecisionScope ps(b);
            Real worst = 0;
            for (const auto& x : doc.at("residuals"))
                worst = std::max(worst, parse_real(x, b));
            if (abs_value(worst - parse_real(doc.at("max_residual"), b)) > Real("1e-30") * (1 + worst))
                problems.push_back("max residual does not match the residual list");
        } else if (kind == "coset_char") {
            for (const auto& key : {"direct", "phase_sum"})
                if (doc.contains(key))
                    (void)parse_qseries(doc.at(key));
            if (doc.contains("direct") && doc.contains("phase_sum") &&
                !(parse_qseries(doc.at("direct")) == parse_qseries(doc.at("phase_sum"))) &&
                doc.at("agree").get<bool>())
                problems.push_back("agree flag set but the series differ");
        } else if (kind == "theta_identity" || kind == "decomposition") {
            (void)parse_rational(doc.at("order"));
            if (doc.at("holds").get<bool>() != doc.at("discrepancy").is_null())
                problems.push_back("holds flag inconsistent with discrepancy");
            if (doc.contains("level") && doc.contains("label")) {
                const AdmissibleLevel level(doc.at("level").at("p").get<std::int64_t>(),
                                            doc.at("level").at("pprime").get<std::int64_t>());
                const OspLabel l{doc.at("label").at("r").get<std::int64_t>(), doc.at("label").at("s").get<std::int64_t>()};
                const Rational n = parse_rational(doc.at("order"));
                const auto rep = kind == "theta_identity" ? verify_theta_identity(level, l, n) : verify_decomposition(level, l, n);
                if (identity(rep, kind).at("discrepancy") != doc.at("discrepancy") || rep.holds != doc.at("holds").get<bool>())
                    problems.push_back("recomputed report differs from the recorded one");
            }
        } else if (kind == "selftest") {
            bool all = true;
            for (const auto& c : doc.at("criteria"))
                all = all && c.at("passed").get<bool>();
            if (all != doc.at("all_passed").get<bool>())
                problems.push_back("all_passed inconsistent with criteria");
        } else if (kind == "char") {
            const json& s = doc.at("series");
            const json again = doc.value("family", "") == "vir" ? qseries(parse_qseries(s)) : wqseries(parse_wqseries(s));
            if (again != s)
                problems.push_back("series does not round-trip");
        } else if (kind == "verlinde_super" || kind == "coset_round_trip") {
            // structural parse only
        } else {
            problems.push_back("unknown document kind '" + kind + "'");
        }
    } catch (const json::exception& e) {
        problems.push_back(std::string("malformed document: ") + e.what());
    } catch (const error& e) {
        problems.push_back(e.what());
    }
    return problems;
}

} // namespace ospvoa::json_io
