#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "ospvoa/ospvoa.hpp"

using namespace ospvoa;
namespace jio = ospvoa::json_io;
using nlohmann::json;

namespace {

enum ExitCode { ok = 0, verification_failed = 1, usage_error = 2 };

struct usage_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::optional<std::int64_t> k;
    std::optional<std::int64_t> p;
    std::optional<std::int64_t> pprime;
    std::optional<std::int64_t> u;
    std::optional<std::int64_t> r;
    std::optional<std::int64_t> s;
    std::optional<std::int64_t> nu;
    std::int64_t order = 20;
    unsigned precision = default_precision_bits;
    std::string family = "osp";
    std::string format = "json";
    std::string out;
    double tau_re = 0;
    double tau_im = 1;
    bool quick = false;
    std::string input;
};

struct Result {
    json doc;
    std::string table;
    bool verified = true;
};

AdmissibleLevel level_of(const Options& o)
{
    if (o.k && (o.p || o.pprime))
        throw usage_failure("give either -k or -p/--pprime, not both");
    if (o.k)
        return AdmissibleLevel::from_k(*o.k);
    if (o.p && o.pprime)
        return {*o.p, *o.pprime};
    if (o.p || o.pprime)
        throw usage_failure(o.p ? "--pprime is required with -p" : "-p is required with --pprime");
    throw usage_failure("a level is required: -k or -p/--pprime");
}

std::int64_t integer_level(const Options& o)
{
    const auto level = level_of(o);
    if (!level.is_integral())
        throw usage_failure("this command needs a positive integer level (-k)");
    return level.integer_k();
}

std::pair<std::int64_t, std::int64_t> vir_params(const Options& o)
{
    if (o.u) {
        if (!o.p)
            throw usage_failure("-p is required with --u");
        return {*o.u, *o.p};
    }
    const auto level = level_of(o);
    return {level.u(), level.p()};
}

std::int64_t required(const std::optional<std::int64_t>& v, const char* flag)
{
    if (!v)
        throw usage_failure(std::string(flag) + " is required");
    return *v;
}

std::string short_real(const Real& x) { return x.str(12, std::ios_base::fixed); }

std::string kv_table(const json& doc)
{
    std::ostringstream os;
    std::size_t w = 0;
    for (const auto& [key, v] : doc.items())
        w = std::max(w, key.size());
    for (const auto& [key, v] : doc.items()) {
        std::string text;
        if (v.is_object() && v.contains("num") && v.contains("den"))
            text = jio::parse_rational(v).get_str();
        else if (v.is_string())
            text = v.get<std::string>();
        else if (v.is_array() && v.size() > 8)
            text = "[" + std::to_string(v.size()) + " items]";
        else
            text = v.dump();
        os << std::left << std::setw(static_cast<int>(w)) << key << "  " << text << '\n';
    }
    return os.str();
}

std::string series_table(const std::vector<std::tuple<std::string, std::string, std::string>>& rows,
                         const std::string& first)
{
    std::ostringstream os;
    std::size_t a = first.size(), b = 1;
    for (const auto& [x, y, z] : rows) {
        a = std::max(a, x.size());
        b = std::max(b, y.size());
    }
    os << std::left << std::setw(static_cast<int>(a)) << first << "  " << std::setw(static_cast<int>(b)) << "q"
       << "  coefficient\n";
    for (const auto& [x, y, z] : rows)
        os << std::left << std::setw(static_cast<int>(a)) << x << "  " << std::setw(static_cast<int>(b)) << y << "  "
           << z << '\n';
    return os.str();
}

std::string matrix_table(const std::vector<std::string>& labels, const ComplexMatrix& m, bool real_only)
{
    std::ostringstream os;
    std::size_t w = 0;
    for (const auto& l : labels)
        w = std::max(w, l.size());
    os << std::setw(static_cast<int>(w)) << "";
    for (const auto& l : labels)
        os << "  " << std::setw(real_only ? 12 : 25) << l;
    os << '\n';
    for (std::size_t i = 0; i < labels.size(); ++i) {
        os << std::left << std::setw(static_cast<int>(w)) << labels[i] << std::right;
        for (std::size_t j = 0; j < labels.size(); ++j) {
            std::ostringstream cell;
            cell << std::fixed << std::setprecision(8) << m(i, j).re.convert_to<double>();
            if (!real_only)
                cell << (m(i, j).im < 0 ? "-" : "+") << std::abs(m(i, j).im.convert_to<double>()) << "i";
            os << "  " << std::setw(real_only ? 12 : 25) << cell.str();
        }
        os << '\n';
    }
    return os.str();
}

bool is_real(const ComplexMatrix& m)
{
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (abs_value(m(i, j).im) > Real("1e-40"))
                return false;
    return true;
}

std::string fusion_table(const FusionTensor& t)
{
    std::ostringstream os;
    for (std::size_t a = 0; a < t.size(); ++a)
        for (std::size_t b = a; b < t.size(); ++b) {
            const auto prod = t.product(a, b);
            os << t.labels()[a] << " x " << t.labels()[b] << " = ";
            if (prod.empty())
                os << "0";
            for (std::size_t i = 0; i < prod.size(); ++i)
                os << (i ? " + " : "") << prod[i];
            os << '\n';
        }
    return os.str();
}

// ---- commands ----

Result cmd_char(const Options& o)
{
    const Rational n = o.order;
    const std::int64_t r = required(o.r, "-r");
    if (o.family == "vir") {
        const auto [u, p] = vir_params(o);
        const VirLabel label{r, required(o.s, "-s")};
        const QSeries ch = vir_char(u, p, label, n);
        json doc = {{"kind", "char"}, {"family", "vir"}, {"u", u}, {"p", p}, {"label", to_string(label)},
                    {"series", jio::qseries(ch)}};
        std::vector<std::tuple<std::string, std::string, std::string>> rows;
        for (const auto& [e, c] : ch.terms())
            rows.emplace_back("", e.get_str(), c.get_str());
        return {doc, series_table(rows, ""), true};
    }
    const auto level = level_of(o);
    WQSeries ch;
    std::string label;
    if (o.family == "osp") {
        const OspLabel l{r, o.s.value_or(0)};
        ch = osp_char(level, l, n);
        label = "(" + std::to_string(l.r) + "," + std::to_string(l.s) + ")";
    } else if (o.family == "sl2") {
        const Sl2Label l{r, o.s.value_or(0)};
        ch = sl2_char(level, l, n);
        label = "(" + std::to_string(l.r) + "," + std::to_string(l.s) + ")";
    } else if (o.family == "induced") {
        const auto m = induced_module_characters(integer_level(o), r, n);
        ch = m.even + m.odd;
        label = osp_label_name(r);
    } else {
        throw usage_failure("--family must be one of osp, sl2, vir, induced for char");
    }
    json doc = {{"kind", "char"},
                {"family", o.family},
                {"level", {{"p", level.p()}, {"pprime", level.p_prime()}, {"k", jio::rational(level.k())}}},
                {"label", label},
                {"series", jio::wqseries(ch)}};
    std::vector<std::tuple<std::string, std::string, std::string>> rows;
    for (const auto& t : ch.terms())
        rows.emplace_back(t.w_exponent.get_str(), t.q_exponent.get_str(), t.coefficient.get_str());
    return {doc, series_table(rows, "w"), true};
}

Result identity_result(const IdentityReport& rep, const std::string& kind, const AdmissibleLevel& level,
                       const OspLabel& l)
{
    json doc = jio::identity(rep, kind);
    doc["level"] = {{"p", level.p()}, {"pprime", level.p_prime()}};
    doc["label"] = {{"r", l.r}, {"s", l.s}};
    return {doc, kv_table(doc), rep.holds};
}

Result cmd_theta_identity(const Options& o)
{
    const auto level = level_of(o);
    const OspLabel l{required(o.r, "-r"), o.s.value_or(0)};
    return identity_result(verify_theta_identity(level, l, o.order), "theta_identity", level, l);
}

Result cmd_decompose(const Options& o)
{
    const auto level = level_of(o);
    const OspLabel l{required(o.r, "-r"), o.s.value_or(0)};
    return identity_result(verify_decomposition(level, l, o.order), "decomposition", level, l);
}

FusionTensor combinatorial_fusion(const Options& o)
{
    if (o.family == "vir") {
        const auto [u, p] = vir_params(o);
        return vir_fusion(u, p);
    }
    if (o.family == "sl2")
        return sl2_fusion(integer_level(o));
    if (o.family == "osp")
        return osp_fusion(integer_level(o)).tensor;
    if (o.family == "extended")
        return extended_fusion(integer_level(o));
    if (o.family == "parafermion" || o.family == "coset")
        return parafermion_fusion(integer_level(o));
    throw usage_failure("--family must be one of vir, sl2, osp, extended, parafermion");
}

Result cmd_fusion(const Options& o)
{
    const auto t = combinatorial_fusion(o);
    json doc = jio::fusion(t, o.family);
    if (o.family == "osp") {
        const auto f = osp_fusion(integer_level(o));
        doc["local"] = f.local;
    }
    const auto& ax = doc["axioms"];
    bool axioms = true;
    for (const auto& [k, v] : ax.items())
        axioms = axioms && v.get<bool>();
    return {doc, fusion_table(t), axioms};
}

std::pair<SMatrix, TMatrix> modular_data(const Options& o)
{
    const unsigned b = o.precision;
    if (o.family == "vir") {
        const auto [u, p] = vir_params(o);
        return {vir_smatrix(u, p, b), vir_tmatrix(u, p, b)};
    }
    if (o.family == "sl2") {
        const auto k = integer_level(o);
        return {sl2_smatrix(k, b), sl2_tmatrix(k, b)};
    }
    if (o.family == "extended" || o.family == "osp") {
        const auto k = integer_level(o);
        return {extended_smatrix(k, b), extended_tmatrix(k, b)};
    }
    if (o.family == "coset" || o.family == "parafermion") {
        const auto k = integer_level(o);
        return {coset_smatrix(k, b), coset_tmatrix(k, b)};
    }
    throw usage_failure("--family must be one of vir, sl2, extended, coset");
}

Result cmd_smatrix(const Options& o)
{
    const auto [s, t] = modular_data(o);
    PrecisionScope ps(o.precision);
    json doc = jio::smatrix(s, o.family);
    const Real u = unitarity_defect(s), m = modular_relation_defect(s, t);
    doc["modular_relation_defect"] = jio::real(m, o.precision);
    const bool good = u < 1e-10 && m < 1e-8;
    std::string table = matrix_table(s.labels, s.entries, is_real(s.entries));
    table += "unitarity defect " + u.str(6, std::ios_base::scientific) + ", (ST)^3 - S^2 " +
             m.str(6, std::ios_base::scientific) + "\n";
    return {doc, table, good};
}

Result cmd_tmatrix(const Options& o)
{
    const auto [s, t] = modular_data(o);
    json doc = jio::tmatrix(t, o.family, s);
    std::ostringstream os;
    for (std::size_t i = 0; i < t.labels.size(); ++i)
        os << std::left << std::setw(12) << t.labels[i] << "  h - c/24 = " << t.exponents[i].get_str() << '\n';
    os << "c = " << t.central_charge.get_str() << '\n';
    if (o.family == "extended" || o.family == "osp") {
        const auto loc = locality_from_weights(integer_level(o));
        json l = json::array();
        for (std::size_t r = 0; r < loc.size(); ++r) {
            l.push_back(loc[r]);
            os << osp_label_name(static_cast<std::int64_t>(r + 1)) << (loc[r] ? " local\n" : " twisted\n");
        }
        doc["local"] = l;
    }
    PrecisionScope ps(o.precision);
    return {doc, os.str(), modular_relation_defect(s, t) < 1e-8};
}

Result cmd_verlinde(const Options& o)
{
    const auto [s, t] = modular_data(o);
    const FusionTensor expected = combinatorial_fusion(o);
    try {
        const FusionTensor computed = verlinde_standard(s);
        const bool match = computed == expected;
        json doc = jio::fusion(computed, o.family);
        doc["kind"] = "verlinde";
        doc["matches_combinatorial"] = match;
        return {doc, fusion_table(computed) + (match ? "matches combinatorial rules\n" : "DIFFERS from combinatorial rules\n"),
                match};
    } catch (const non_integral_fusion& e) {
        json doc = {{"kind", "verlinde"}, {"family", o.family}, {"matches_combinatorial", false}, {"error", e.what()}};
        return {doc, std::string(e.what()) + "\n", false};
    }
}

Result cmd_verlinde_super(const Options& o)
{
    const auto k = integer_level(o);
    const auto sv = verlinde_super(k, o.precision);
    json doc = jio::super_verlinde(sv, o.precision);
    std::ostringstream os;
    const auto n = static_cast<std::int64_t>(sv.dim());
    for (std::int64_t a = 1; a <= n; ++a)
        for (std::int64_t b = a; b <= n; ++b)
            for (std::int64_t c = 1; c <= n; ++c)
                if (sv.plus(a, b, c) || sv.minus(a, b, c))
                    os << "N+(" << a << "," << b << ";" << c << ") = " << sv.plus(a, b, c) << "   N-(" << a << ","
                       << b << ";" << c << ") = " << sv.minus(a, b, c) << '\n';
    const bool match = doc["matches_osp_fusion"].get<bool>();
    os << (match ? "matches osp and super fusion\n" : "DIFFERS from osp/super fusion\n");
    return {doc, os.str(), match};
}

Result cmd_fpdim(const Options& o)
{
    const auto rep = fp_dimension_report(integer_level(o), o.precision);
    json doc = jio::fp_report(rep);
    std::ostringstream os;
    os << "FP(L^even) = " << short_real(rep.fp_lkeven) << '\n'
       << "FP(C_k)    = " << short_real(rep.fp_ck) << '\n'
       << "FP(S_k)    = " << short_real(rep.fp_sk) << '\n'
       << "FP(C_k)/FP(L^even)^2 = " << short_real(rep.corollary_rhs) << '\n'
       << "max deviation " << rep.max_deviation.str(6, std::ios_base::scientific) << '\n';
    return {doc, os.str(), rep.holds};
}

Result cmd_minweight(const Options& o)
{
    const auto [u, p] = vir_params(o);
    const auto rep = min_conformal_weight(u, p);
    json doc = jio::min_weight(rep, u, p);
    const bool good = rep.minimizer == VirLabel{1, 2} && rep.unique && rep.case_analysis_holds;
    return {doc, kv_table(doc), good};
}

Result cmd_stransform(const Options& o)
{
    const auto k = integer_level(o);
    PrecisionScope ps(o.precision);
    const Complex tau(Real(o.tau_re), Real(o.tau_im));
    const auto rep = check_s_transform_numeric(k, tau, o.order, o.precision);
    json doc = jio::stransform(rep, o.precision);
    std::ostringstream os;
    const std::size_t n = rep.residuals.size() / 2;
    for (std::size_t i = 0; i < rep.residuals.size(); ++i)
        os << (i < n ? "ch+ " : "ch- ") << osp_label_name(static_cast<std::int64_t>(i % n + 1)) << "  residual "
           << rep.residuals[i].str(6, std::ios_base::scientific) << '\n';
    os << "tail bound " << rep.tail_bound.str(6, std::ios_base::scientific) << '\n';
    return {doc, os.str(), rep.holds};
}

Result cmd_coset_char(const Options& o)
{
    const auto k = integer_level(o);
    const CosetLabel l{required(o.nu, "--nu"), required(o.r, "-r")};
    const QSeries direct = coset_char_direct(k, l, o.order);
    const auto phase = coset_char_phase_sum_report(k, l, o.order, SuperSector::plus, o.precision);
    const bool agree = phase.character == direct;
    json doc = {{"kind", "coset_char"},
                {"k", k},
                {"label", coset_label_name(l.nu, l.r)},
                {"central_charge", jio::rational(coset_central_charge(k))},
                {"t_exponent", jio::rational(coset_t_exponent(k, l))},
                {"direct", jio::qseries(direct)},
                {"phase_sum", jio::qseries(phase.character)},
                {"phase_sum_max_deviation", jio::real(phase.max_deviation, o.precision)},
                {"agree", agree}};
    std::vector<std::tuple<std::string, std::string, std::string>> rows;
    for (const auto& [e, c] : direct.terms())
        rows.emplace_back("", e.get_str(), c.get_str());
    return {doc, series_table(rows, "") + (agree ? "direct and phase-sum extractions agree\n" : "extractions DIFFER\n"),
            agree};
}

Result cmd_coset_smatrix(const Options& o)
{
    const auto k = integer_level(o);
    const SMatrix s = coset_smatrix(k, o.precision);
    const TMatrix t = coset_tmatrix(k, o.precision);
    PrecisionScope ps(o.precision);
    json doc = jio::smatrix(s, "coset");
    const Real m = modular_relation_defect(s, t);
    doc["modular_relation_defect"] = jio::real(m, o.precision);
    bool verl = false;
    try {
        verl = verlinde_standard(s) == parafermion_fusion(k);
    } catch (const non_integral_fusion&) {
    }
    doc["verlinde_matches_parafermion_fusion"] = verl;
    std::string table = matrix_table(s.labels, s.entries, is_real(s.entries));
    table += std::string("Verlinde ") + (verl ? "reproduces" : "does NOT reproduce") + " the parafermion fusion rules\n";
    return {doc, table, verl && unitarity_defect(s) < 1e-10 && m < 1e-8};
}

Result cmd_selftest(const Options& o)
{
    SelftestConfig cfg = o.quick ? SelftestConfig::quick() : SelftestConfig{};
    cfg.precision_bits = o.precision;
    const auto results = run_acceptance(cfg);
    json doc = jio::selftest(results);
    std::ostringstream os;
    for (const auto& r : results)
        os << (r.passed ? "PASS" : "FAIL") << "  [" << std::setw(2) << r.id << "] " << std::left << std::setw(30)
           << r.name << std::right << " " << std::fixed << std::setprecision(2) << r.seconds << "s  " << r.detail
           << '\n';
    return {doc, os.str(), doc["all_passed"].get<bool>()};
}

Result cmd_validate(const Options& o)
{
    std::ifstream in(o.input);
    if (!in)
        throw usage_failure("cannot read " + o.input);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw usage_failure(std::string("not JSON: ") + e.what());
    }
    const auto problems = jio::revalidate(doc);
    json out = {{"kind", "validation"}, {"document_kind", doc.value("kind", "")}, {"valid", problems.empty()},
                {"problems", problems}};
    std::string table = problems.empty() ? "valid\n" : "";
    for (const auto& p : problems)
        table += p + "\n";
    return {out, table, problems.empty()};
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Characters, fusion rings and modular data of admissible-level osp(1|2) vertex superalgebras"};
    app.require_subcommand(1);
    Options o;

    auto add_level = [&](CLI::App* c) {
        c->add_option("-k", o.k, "positive integer level k; implies (p, p') = (2k+3, 1)")->envname("OSPVOA_K");
        c->add_option("-p", o.p, "level numerator p");
        c->add_option("--pprime", o.pprime, "level denominator p'");
    };
    auto add_common = [&](CLI::App* c) {
        c->add_option("-N", o.order, "truncation order in q")->envname("OSPVOA_N")->check(CLI::PositiveNumber);
        c->add_option("--precision", o.precision, "working precision in bits")
            ->envname("OSPVOA_PRECISION")
            ->check(CLI::Range(32u, 1u << 16));
        c->add_option("--format", o.format, "output format")->envname("OSPVOA_FORMAT")->check(CLI::IsMember({"json", "table"}));
        c->add_option("--out", o.out, "write output to FILE");
    };

    struct Command {
        const char* name;
        const char* help;
        Result (*run)(const Options&);
    };
    const std::vector<Command> commands = {
        {"char", "character expansion", cmd_char},
        {"theta-identity", "verify the theta-function identity", cmd_theta_identity},
        {"decompose", "verify the sl2 x Virasoro character decomposition", cmd_decompose},
        {"fusion", "combinatorial fusion rules", cmd_fusion},
        {"smatrix", "modular S-matrix", cmd_smatrix},
        {"tmatrix", "modular T-matrix", cmd_tmatrix},
        {"verlinde", "Verlinde formula against the combinatorial fusion rules", cmd_verlinde},
        {"verlinde-super", "super Verlinde formula for the induced modules", cmd_verlinde_super},
        {"fpdim", "Frobenius-Perron dimension identities", cmd_fpdim},
        {"minweight", "minimal conformal weight search", cmd_minweight},
        {"stransform-check", "numeric S-transformation of super characters", cmd_stransform},
        {"coset-char", "parafermion coset character", cmd_coset_char},
        {"coset-smatrix", "parafermion coset S-matrix", cmd_coset_smatrix},
        {"selftest", "run the acceptance checks", cmd_selftest},
        {"validate", "re-parse and re-validate a JSON document", cmd_validate},
    };
    std::map<CLI::App*, Result (*)(const Options&)> dispatch;
    for (const auto& c : commands) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        add_common(sub);
        dispatch[sub] = c.run;
        const std::string name = c.name;
        if (name == "selftest") {
            sub->add_flag("--quick", o.quick, "smaller orders and ranges");
            continue;
        }
        if (name == "validate") {
            sub->add_option("file", o.input, "JSON document")->required();
            continue;
        }
        add_level(sub);
        sub->add_option("-r", o.r, "label r");
        sub->add_option("-s", o.s, "label s");
        sub->add_option("--u", o.u, "Virasoro parameter u (with -p)");
        sub->add_option("--family", o.family, "osp, sl2, vir, induced, extended, coset, parafermion")
            ->envname("OSPVOA_FAMILY");
        if (name == "coset-char")
            sub->add_option("--nu", o.nu, "lattice class in Z/2k");
        if (name == "stransform-check") {
            sub->add_option("--tau-re", o.tau_re, "Re(tau0)");
            sub->add_option("--tau-im", o.tau_im, "Im(tau0)");
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ExitCode::ok : ExitCode::usage_error;
    }

    Result res;
    try {
        CLI::App* sub = app.get_subcommands().front();
        res = dispatch.at(sub)(o);
    } catch (const usage_failure& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return ExitCode::usage_error;
    } catch (const invalid_level& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return ExitCode::usage_error;
    } catch (const invalid_label& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return ExitCode::usage_error;
    } catch (const out_of_range& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return ExitCode::usage_error;
    } catch (const nonconvergent_domain& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return ExitCode::usage_error;
    } catch (const std::exception& e) {
        json doc = {{"kind", "error"}, {"error", e.what()}};
        std::cout << doc.dump(2) << '\n';
        return ExitCode::verification_failed;
    }

    res.doc["exit_code"] = res.verified ? ExitCode::ok : ExitCode::verification_failed;
    const std::string text = o.format == "table" ? res.table : res.doc.dump(2) + "\n";
    if (o.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(o.out);
        if (!f) {
            std::cerr << "usage error: cannot write --out " << o.out << '\n';
            return ExitCode::usage_error;
        }
        f << text;
    }
    return res.verified ? ExitCode::ok : ExitCode::verification_failed;
}
