#include <gtest/gtest.h>

#include <set>

#include "ospvoa/coset.hpp"

using namespace ospvoa;

namespace {

// brute-force theta: count m in a wide window
std::map<Rational, int> theta_oracle(int k, int nu, int bound)
{
    std::map<Rational, int> out;
    for (int m = -50; m <= 50; ++m) {
        const int v = nu + 2 * k * m;
        Rational e = make_rational(v * v, 4 * k);
        if (e < bound)
            out[e] += 1;
    }
    return out;
}

std::map<Rational, int> as_map(const QSeries& s)
{
    std::map<Rational, int> out;
    for (const auto& [e, c] : s.terms())
        out[e] = static_cast<int>(c.get_num().get_si());
    return out;
}

} // namespace

TEST(LatticeTheta, SmallCases)
{
    EXPECT_EQ(as_map(lattice_theta(1, 0, 10)), (std::map<Rational, int>{{0, 1}, {1, 2}, {4, 2}, {9, 2}}));
    EXPECT_EQ(as_map(lattice_theta(1, 1, 7)),
              (std::map<Rational, int>{{Rational(1, 4), 2}, {Rational(9, 4), 2}, {Rational(25, 4), 2}}));
    for (int k = 1; k <= 4; ++k)
        for (int nu = 0; nu < 2 * k; ++nu) {
            EXPECT_EQ(as_map(lattice_theta(k, nu, 30)), theta_oracle(k, nu, 30)) << k << " " << nu;
            EXPECT_EQ(lattice_theta(k, nu, 30), lattice_theta(k, -nu, 30));
            EXPECT_EQ(lattice_theta(k, nu, 30), lattice_theta(k, nu + 2 * k, 30));
        }
}

TEST(CosetDirect, LevelOneVacuum)
{
    EXPECT_EQ(coset_central_charge(1), Rational(-3, 5));
    auto c = coset_char_direct(1, {0, 1}, 12);
    EXPECT_EQ(*c.min_exponent(), Rational(1, 40));
    EXPECT_EQ(c.coefficient(Rational(1, 40)), 1);
}

TEST(CosetDirect, LevelOneIsVirasoroThreeFive)
{
    // C_1 has c = -3/5: its four characters are those of Vir(3,5)
    const Rational n = 12;
    std::vector<QSeries> vir;
    for (const auto& l : vir_labels(3, 5))
        vir.push_back(vir_char(3, 5, l, n));
    std::set<std::size_t> hit;
    for (const auto& l : coset_labels(1)) {
        auto c = coset_char_direct(1, l, n);
        std::size_t found = vir.size();
        for (std::size_t i = 0; i < vir.size(); ++i)
            if (c == vir[i])
                found = i;
        ASSERT_LT(found, vir.size()) << coset_label_name(l.nu, l.r) << " = " << c.str();
        hit.insert(found);
    }
    EXPECT_EQ(hit.size(), 4u);
}

TEST(CosetDirect, RepresentativesAgree)
{
    for (int k = 1; k <= 3; ++k)
        for (int r = 1; r <= 2 * k + 2; r += 2) {
            auto b = coset_branching_direct(k, r, 8);
            for (int n : b.representatives)
                EXPECT_GE(n, 2) << k << " " << r;
        }
}

TEST(CosetDirect, WrongHeisenbergWeightBreaksIndependence)
{
    // with weight x^2/(2k) in place of x^2/k the representatives x = 0 and x = k disagree
    const int k = 2;
    auto m = induced_module_characters(k, 1, 12);
    auto slices = (m.even + m.odd).w_slices();
    auto eta = qs_eta(10);
    auto extract = [&](const Rational& x, const Rational& weight) {
        return (slices.at(x).shifted(-weight) * eta).truncated(Order(Rational(8)));
    };
    EXPECT_EQ(extract(0, 0), extract(k, Rational(k * k, k)));
    EXPECT_FALSE(extract(0, 0) == extract(k, Rational(k * k, 2 * k)));
}

TEST(CosetDirect, RejectsTwistedSector)
{
    EXPECT_THROW(coset_char_direct(1, {0, 2}, 5), invalid_label);
    EXPECT_THROW(coset_char_direct(1, {2, 1}, 5), invalid_label);
}

TEST(CosetPhaseSum, AgreesWithDirect)
{
    for (const auto& l : coset_labels(1)) {
        auto direct = coset_char_direct(1, l, 10);
        auto plus = coset_char_phase_sum_report(1, l, 10);
        EXPECT_EQ(plus.character, direct) << coset_label_name(l.nu, l.r);
        EXPECT_LT(plus.max_deviation, 1e-20);
        EXPECT_EQ(coset_char_phase_sum(1, l, 10, SuperSector::minus), direct);
    }
}

TEST(CosetPhaseSum, MinusSectorNeedsSign)
{
    // without the (-1)^{nu odd} factor the odd classes come out negated
    auto direct = coset_char_direct(2, {1, 1}, 6);
    auto minus = coset_char_phase_sum(2, {1, 1}, 6, SuperSector::minus);
    EXPECT_EQ(minus, direct);
    EXPECT_FALSE(-minus == direct);
}

TEST(CosetT, PhasesAndSeries)
{
    const auto level = AdmissibleLevel::from_k(1);
    const Rational c = osp_central_charge(level);
    // nu = 0: T_C = e^{pi i/12} T_M
    EXPECT_EQ(coset_t_exponent(1, {0, 1}), frac_part(induced_conformal_dimension(1, 1, 1) - c / 24 + Rational(1, 24)));
    EXPECT_EQ(lattice_pairing(1, 1, 1), Rational(1, 2));
    for (int k = 1; k <= 2; ++k)
        for (const auto& l : coset_labels(k)) {
            auto ch = coset_char_direct(k, l, 6);
            EXPECT_EQ(frac_part(*ch.min_exponent()), coset_t_exponent(k, l)) << k << coset_label_name(l.nu, l.r);
        }
}

TEST(CosetS, ModularAndVerlinde)
{
    auto s1 = coset_smatrix(1);
    EXPECT_EQ(s1.size(), 4u);
    for (int k = 1; k <= 3; ++k) {
        auto s = coset_smatrix(k);
        EXPECT_LT(unitarity_defect(s), 1e-10) << k;
        EXPECT_LT(symmetry_defect(s), 1e-30);
        EXPECT_LT(modular_relation_defect(s, coset_tmatrix(k)), 1e-8) << k;
        EXPECT_EQ(verlinde_standard(s), parafermion_fusion(k)) << k;
    }
}

TEST(CosetS, CaseTable)
{
    const int k = 2;
    PrecisionScope ps(default_precision_bits);
    auto s = coset_smatrix(k);
    const auto labels = coset_labels(k);
    const Real norm = boost::multiprecision::sqrt(Real(k) / 2);
    for (std::size_t a = 0; a < labels.size(); ++a)
        for (std::size_t b = 0; b < labels.size(); ++b) {
            const auto& l = labels[a];
            const auto& m = labels[b];
            // undo the pairing phase; what is left is the real case value
            Complex v = s.entries(a, b) * unit_phase(-lattice_pairing(k, l.nu, m.nu)) * Complex(norm);
            const bool l_in = l.nu % 2 == 0, m_in = m.nu % 2 == 0;
            const int sign = l_in && m_in ? 1 : (l_in != m_in ? -1 : 1);
            EXPECT_LT(abs_value(v - Complex(sign * s_small(k, l.r, m.r))), 1e-60);
        }
}

TEST(CosetRoundTrip, LevelsOneAndTwo)
{
    for (int k = 1; k <= 2; ++k) {
        auto rep = coset_round_trip(k, 12);
        EXPECT_TRUE(rep.holds()) << k << (rep.failures.empty() ? "" : rep.failures.front());
        EXPECT_TRUE(rep.class_independent);
        EXPECT_TRUE(rep.reassembly_holds);
        EXPECT_TRUE(rep.verlinde_matches);
    }
}
