#include <gtest/gtest.h>

#include <cmath>

#include "ospvoa/modular.hpp"

using namespace ospvoa;

namespace {

// double-precision oracle for s_{r,r'} straight from the sine formula
double s_oracle(int k, int r, int r1)
{
    const double sign = (r + r1) % 2 == 0 ? 1.0 : -1.0;
    return sign * std::sqrt(1.0 / (2 * k + 3)) * std::sin(M_PI * r * r1 * (k + 2) / (2 * k + 3));
}

double d(const Real& x) { return x.convert_to<double>(); }

const std::vector<std::pair<int, int>> kMinimalModels = {{3, 5}, {4, 7}, {5, 9}, {2, 5}, {3, 4}, {5, 6}};

} // namespace

TEST(SMatrix, Sl2LevelOne)
{
    auto s = sl2_smatrix(1);
    const double h = 1 / std::sqrt(2.0);
    EXPECT_NEAR(d(s.entries(0, 0).re), h, 1e-15);
    EXPECT_NEAR(d(s.entries(0, 1).re), h, 1e-15);
    EXPECT_NEAR(d(s.entries(1, 1).re), -h, 1e-15);
}

TEST(SMatrix, VirasoroUnitarySymmetricAndSelfDual)
{
    for (auto [u, p] : kMinimalModels) {
        auto s = vir_smatrix(u, p);
        EXPECT_LT(unitarity_defect(s), 1e-12) << u << "," << p;
        EXPECT_LT(symmetry_defect(s), 1e-12);
        // S^2 = C = I for Virasoro minimal models
        EXPECT_LT((s.entries * s.entries - ComplexMatrix::identity(s.size())).max_abs(), 1e-12);
        for (std::size_t x = 0; x < s.size(); ++x)
            EXPECT_GT(abs_value(s.entries(0, x)), 1e-6);
    }
}

TEST(SMatrix, VirasoroLeeYangClosedForm)
{
    // Vir(2,5): S = (2/sqrt5) [[-sin(2pi/5), sin(4pi/5)], [sin(4pi/5), sin(2pi/5)]] up to overall sign
    auto s = vir_smatrix(2, 5);
    const double a = 2 / std::sqrt(5.0) * std::sin(2 * M_PI / 5), b = 2 / std::sqrt(5.0) * std::sin(4 * M_PI / 5);
    EXPECT_NEAR(std::abs(d(s.entries(0, 0).re)), a, 1e-14);
    EXPECT_NEAR(std::abs(d(s.entries(1, 1).re)), a, 1e-14);
    EXPECT_NEAR(std::abs(d(s.entries(0, 1).re)), b, 1e-14);
    EXPECT_LT(d(s.entries(0, 0).re * s.entries(1, 1).re), 0);
}

TEST(SMatrix, SmallMatchesOracleAndIsSymmetric)
{
    for (int k = 1; k <= 4; ++k)
        for (int r = 1; r <= 2 * k + 2; ++r)
            for (int r1 = 1; r1 <= 2 * k + 2; ++r1) {
                EXPECT_NEAR(d(s_small(k, r, r1)), s_oracle(k, r, r1), 1e-13);
                EXPECT_EQ(s_small(k, r, r1), s_small(k, r1, r));
            }
    EXPECT_NEAR(d(s_small(1, 1, 1)), std::sqrt(0.2) * std::sin(72 * M_PI / 180), 1e-15);
    EXPECT_THROW(s_small(1, 0, 1), out_of_range);
    EXPECT_THROW(s_small(1, 1, 5), out_of_range);
}

TEST(SMatrix, ExtendedBlocks)
{
    for (int k = 1; k <= 3; ++k) {
        auto s = extended_smatrix(k);
        const int n = 2 * k + 2;
        ASSERT_EQ(s.size(), static_cast<std::size_t>(2 * n));
        EXPECT_LT(symmetry_defect(s), 1e-30);
        for (int r = 1; r <= n; ++r)
            for (int r1 = 1; r1 <= n; ++r1) {
                const double v = s_oracle(k, r, r1);
                EXPECT_NEAR(d(s.entries(r - 1, r1 - 1).re), v, 1e-13);
                EXPECT_NEAR(d(s.entries(r - 1, n + r1 - 1).re), r % 2 == 0 ? v : -v, 1e-13);
                EXPECT_NEAR(d(s.entries(n + r - 1, n + r1 - 1).re), (r + r1) % 2 == 0 ? v : -v, 1e-13);
            }
    }
}

TEST(ModularAxioms, AllFamilies)
{
    for (auto [u, p] : kMinimalModels) {
        auto s = vir_smatrix(u, p);
        EXPECT_LT(modular_relation_defect(s, vir_tmatrix(u, p)), 1e-8) << u << "," << p;
    }
    for (int k = 1; k <= 4; ++k) {
        auto s = sl2_smatrix(k);
        EXPECT_LT(unitarity_defect(s), 1e-12);
        EXPECT_LT(modular_relation_defect(s, sl2_tmatrix(k)), 1e-8);
    }
    for (int k = 1; k <= 3; ++k) {
        auto s = extended_smatrix(k);
        EXPECT_LT(unitarity_defect(s), 1e-10);
        EXPECT_LT(modular_relation_defect(s, extended_tmatrix(k)), 1e-8) << k;
    }
}

TEST(ModularAxioms, WrongTIsDetected)
{
    auto t = extended_tmatrix(1);
    t.exponents[1] += Rational(1, 2);
    EXPECT_GT(modular_relation_defect(extended_smatrix(1), t), 1e-3);
}

TEST(TMatrix, VacuumPhaseAndLocality)
{
    auto t = vir_tmatrix(3, 5);
    EXPECT_EQ(t.exponents[0], -vir_central_charge(3, 5) / 24);
    // k = 1: L_{2,0} (x) V_{2,1} has weight 1/4 + 3/4
    EXPECT_EQ(sl2_weight(1, 2) + vir_weight(3, 5, {2, 1}), 1);
    for (int k = 1; k <= 6; ++k) {
        auto loc = locality_from_weights(k);
        for (int r = 1; r <= 2 * k + 2; ++r)
            EXPECT_EQ(loc[r - 1], r % 2 == 1) << k << " " << r;
    }
}

TEST(TMatrix, ConformalDimensionFormula)
{
    for (int k = 1; k <= 8; ++k) {
        const auto level = AdmissibleLevel::from_k(k);
        for (int i = 1; i <= 2; ++i)
            for (int r = 1; r <= 2 * k + 2; ++r) {
                Rational direct = sl2_weight(k, i) + vir_weight(level.u(), level.p(), {i, r});
                EXPECT_TRUE(is_integer(direct - induced_conformal_dimension(k, i, r))) << k << i << r;
            }
    }
}

TEST(Verlinde, MatchesCombinatorialTensors)
{
    for (auto [u, p] : kMinimalModels)
        EXPECT_EQ(verlinde_standard(vir_smatrix(u, p)), vir_fusion(u, p)) << u << "," << p;
    for (int k = 1; k <= 4; ++k)
        EXPECT_EQ(verlinde_standard(sl2_smatrix(k)), sl2_fusion(k)) << k;
    for (int k = 1; k <= 3; ++k)
        EXPECT_EQ(verlinde_standard(extended_smatrix(k)), extended_fusion(k)) << k;
}

TEST(Verlinde, RejectsBrokenSMatrix)
{
    auto s = sl2_smatrix(2);
    s.entries(1, 2) = s.entries(1, 2) * Complex(Real("1.01"));
    EXPECT_THROW(verlinde_standard(s), non_integral_fusion);
}

TEST(Verlinde, LowPrecisionStillIntegral)
{
    EXPECT_EQ(verlinde_standard(vir_smatrix(4, 7, 64)), vir_fusion(4, 7));
}

TEST(SuperVerlinde, MatchesOspAndSuperFusion)
{
    for (int k = 1; k <= 3; ++k) {
        auto sv = verlinde_super(k);
        auto osp = osp_fusion(k).tensor;
        EXPECT_LT(sv.max_deviation, 1e-30);
        const int n = 2 * k + 2;
        for (int r = 1; r <= n; ++r)
            for (int r1 = 1; r1 <= n; ++r1)
                for (int r2 = 1; r2 <= n; ++r2) {
                    const int expected = osp.at(r - 1, r1 - 1, r2 - 1);
                    EXPECT_EQ(sv.plus(r, r1, r2), expected);
                    EXPECT_EQ(sv.minus(r, r1, r2), expected);
                    if ((r + r1 + r2) % 2 == 0)
                        EXPECT_EQ(sv.plus(r, r1, r2), 0);
                    for (int e : {1, -1})
                        for (int e1 : {1, -1})
                            for (int e2 : {1, -1})
                                EXPECT_EQ(sv.sdim(r, e, r1, e1, r2, e2), super_fusion(k, r, e, r1, e1, r2, e2).sdim);
                }
    }
    EXPECT_EQ(verlinde_super(1).plus(2, 2, 3), 1);
}

TEST(FpDimensions, ClosedFormsAgree)
{
    for (int k = 1; k <= 12; ++k) {
        auto rep = fp_dimension_report(k);
        EXPECT_TRUE(rep.holds) << k << " deviation " << rep.max_deviation;
        EXPECT_LT(rep.max_deviation, 1e-9);
        // independent double oracle for FP(S_k)
        const double sp = std::sin(M_PI / (2 * k + 3));
        EXPECT_NEAR(d(rep.fp_sk) / ((2 * k + 3) / (sp * sp)), 1.0, 1e-12);
    }
    auto k1 = fp_dimension_report(1);
    ASSERT_TRUE(k1.fp_lkeven_exact.has_value());
    EXPECT_EQ(*k1.fp_lkeven_exact, 1);
    EXPECT_EQ(*fp_dimension_report(2).fp_lkeven_exact, 2);
    EXPECT_EQ(*fp_dimension_report(4).fp_lkeven_exact, 6);
    EXPECT_FALSE(fp_dimension_report(3).fp_lkeven_exact.has_value());
    EXPECT_NEAR(d(k1.sin2_odd_sum), 0.75, 1e-15);
}

TEST(FpDimensions, RepresentationProperty)
{
    for (int k = 1; k <= 4; ++k) {
        auto sl2 = sl2_smatrix(k);
        auto rep = fp_representation(sl2, 0, sl2_fusion(k));
        EXPECT_TRUE(rep.positive);
        EXPECT_LT(rep.defect, 1e-40);

        const auto level = AdmissibleLevel::from_k(k);
        auto vir = vir_smatrix(level.u(), level.p());
        const auto labels = vir_labels(level.u(), level.p());
        std::size_t z = std::find(labels.begin(), labels.end(), VirLabel{1, 2}) - labels.begin();
        auto vrep = fp_representation(vir, z, vir_fusion(level.u(), level.p()));
        EXPECT_TRUE(vrep.positive) << k;
        EXPECT_LT(vrep.defect, 1e-40);

        auto ext = extended_smatrix(k);
        auto erep = fp_representation(ext, 1, extended_fusion(k));
        EXPECT_TRUE(erep.positive) << k;
        EXPECT_LT(erep.defect, 1e-40);
    }
}

TEST(MinWeight, UniqueMinimizerIsV12)
{
    for (int k = 1; k <= 10; ++k) {
        auto rep = min_conformal_weight(k + 2, 2 * k + 3);
        EXPECT_EQ(rep.minimizer, (VirLabel{1, 2})) << k;
        EXPECT_TRUE(rep.unique);
        EXPECT_TRUE(rep.case_analysis_holds);
        EXPECT_EQ(rep.labels_searched, static_cast<std::size_t>((k + 1) * (2 * k + 2) / 2));
    }
    auto k1 = min_conformal_weight(3, 5);
    EXPECT_EQ(k1.weight, Rational(-1, 20));
    EXPECT_EQ(k1.labels_searched, 4u);
    EXPECT_EQ(canonical(4, 7, {3, 5}), (VirLabel{1, 2}));
    EXPECT_THROW(min_conformal_weight(3, 7), invalid_level);
}

TEST(STransform, LevelOneAtI)
{
    auto rep = check_s_transform_numeric(1, Complex(Real(0), Real(1)), 40);
    EXPECT_TRUE(rep.holds) << rep.max_residual << " tail " << rep.tail_bound;
    EXPECT_LT(rep.max_residual, 1e-6);
    EXPECT_EQ(rep.residuals.size(), 8u);
}

TEST(STransform, LevelOneAtTwoI)
{
    auto rep = check_s_transform_numeric(1, Complex(Real(0), Real(2)), 40);
    EXPECT_TRUE(rep.holds) << rep.max_residual << " tail " << rep.tail_bound;
}

TEST(STransform, GenericPointLevelTwo)
{
    const Complex tau(Real("0.1"), Real("1.3"));
    auto rep = check_s_transform_numeric(2, tau, 30);
    EXPECT_TRUE(rep.holds) << rep.max_residual;
    EXPECT_THROW(check_s_transform_numeric(1, Complex(Real(0), Real(0)), 10), nonconvergent_domain);
}
