#include <gtest/gtest.h>

#include <numeric>

#include "ospvoa/fusion.hpp"

using namespace ospvoa;

namespace {

std::vector<std::pair<int, int>> small_minimal_models()
{
    std::vector<std::pair<int, int>> out;
    for (int u = 2; u <= 31; ++u)
        for (int p = u + 1; u * p <= 63; ++p)
            if (std::gcd(u, p) == 1)
                out.emplace_back(u, p);
    return out;
}

void expect_fusion_axioms(const FusionTensor& t, const std::string& what)
{
    EXPECT_TRUE(t.unit_ok()) << what;
    EXPECT_TRUE(t.commutative()) << what;
    EXPECT_TRUE(t.associative()) << what;
    EXPECT_TRUE(t.duality_ok()) << what;
    EXPECT_TRUE(t.non_negative()) << what;
}

} // namespace

TEST(NCoeff, Examples)
{
    for (int w = 2; w < 10; ++w)
        EXPECT_EQ(n_coeff(w, 1, 1, 1), 1);
    EXPECT_EQ(n_coeff(3, 2, 2, 3), 0);
    EXPECT_EQ(n_coeff(4, 2, 2, 1), 1);
    EXPECT_EQ(n_coeff(4, 2, 2, 3), 1);
    EXPECT_EQ(n_coeff(4, 2, 2, 2), 0);
}

TEST(NCoeff, OutOfRange)
{
    EXPECT_THROW(n_coeff(1, 1, 1, 1), out_of_range);
    EXPECT_THROW(n_coeff(4, 0, 1, 1), out_of_range);
    EXPECT_THROW(n_coeff(4, 1, 4, 1), out_of_range);
    EXPECT_THROW(n_coeff(4, 1, 1, 0), out_of_range);
    for (int w = 2; w < 12; ++w)
        for (int t = 1; t < w; ++t)
            for (int t1 = 1; t1 < w; ++t1)
                for (int t2 = w; t2 < 2 * w; ++t2)
                    EXPECT_EQ(n_coeff(w, t, t1, t2), 0);
}

TEST(VirFusion, ThreeFive)
{
    auto t = vir_fusion(3, 5);
    auto v12 = t.find("V(1,2)");
    EXPECT_EQ(t.product(v12, v12), (std::vector<std::string>{"V(1,1)", "V(1,3)"}));
    EXPECT_EQ(t.labels().front(), "V(1,1)");
}

TEST(VirFusion, FoldingIsRepresentativeIndependent)
{
    // full-range rule evaluated on every representative pair and summed over both images of c
    for (auto [u, p] : small_minimal_models()) {
        auto t = vir_fusion(u, p);
        auto labels = vir_labels(u, p);
        for (std::size_t a = 0; a < labels.size(); ++a)
            for (std::size_t b = 0; b < labels.size(); ++b)
                for (std::size_t c = 0; c < labels.size(); ++c)
                    for (int fa = 0; fa < 2; ++fa)
                        for (int fb = 0; fb < 2; ++fb) {
                            VirLabel x = fa ? VirLabel{u - labels[a].r, p - labels[a].s} : labels[a];
                            VirLabel y = fb ? VirLabel{u - labels[b].r, p - labels[b].s} : labels[b];
                            int n = 0;
                            for (int r = 1; r < u; ++r)
                                for (int s = 1; s < p; ++s)
                                    if (canonical(u, p, {r, s}) == labels[c])
                                        n += n_coeff(u, x.r, y.r, r) * n_coeff(p, x.s, y.s, s);
                            ASSERT_EQ(n, t.at(a, b, c)) << u << "," << p;
                        }
    }
}

TEST(VirFusion, Axioms)
{
    for (auto [u, p] : small_minimal_models())
        expect_fusion_axioms(vir_fusion(u, p), "Vir(" + std::to_string(u) + "," + std::to_string(p) + ")");
}

TEST(Sl2Fusion, SmallLevels)
{
    auto t1 = sl2_fusion(1);
    EXPECT_EQ(t1.product(1, 1), (std::vector<std::string>{"L(1)"}));
    auto t2 = sl2_fusion(2);
    EXPECT_EQ(t2.product(1, 1), (std::vector<std::string>{"L(1)", "L(3)"}));
    EXPECT_EQ(t2.product(1, 2), (std::vector<std::string>{"L(2)"}));
    EXPECT_EQ(t2.product(2, 2), (std::vector<std::string>{"L(1)"}));
    for (int k = 1; k <= 4; ++k)
        expect_fusion_axioms(sl2_fusion(k), "sl2 k=" + std::to_string(k));
}

TEST(OspFusion, LevelOne)
{
    auto [t, local] = osp_fusion(1);
    EXPECT_EQ(t.size(), 4u);
    EXPECT_EQ(t.product(1, 1), (std::vector<std::string>{"M(1)", "M(3)"}));
    EXPECT_EQ(t.product(3, 3), (std::vector<std::string>{"M(1)"}));
    EXPECT_EQ(t.product(2, 2), (std::vector<std::string>{"M(1)", "M(3)"}));
    EXPECT_EQ(local, (std::vector<bool>{true, false, true, false}));
}

TEST(OspFusion, SectorRule)
{
    for (int k = 1; k <= 4; ++k) {
        auto [t, local] = osp_fusion(k);
        expect_fusion_axioms(t, "osp k=" + std::to_string(k));
        for (std::size_t a = 0; a < t.size(); ++a)
            for (std::size_t b = 0; b < t.size(); ++b)
                for (std::size_t c = 0; c < t.size(); ++c)
                    if (t.at(a, b, c) != 0) {
                        // r'' = r + r' - 1 mod 2 (1-based labels are index + 1)
                        EXPECT_EQ((c + 1) % 2, (a + b + 1) % 2);
                        if (local[a] && local[b])
                            EXPECT_TRUE(local[c]);
                    }
    }
}

TEST(SuperFusion, Signs)
{
    EXPECT_EQ(super_fusion(1, 2, 1, 2, 1, 3, 1), (SuperFusionEntry{1, 0, 1}));
    EXPECT_EQ(super_fusion(1, 2, -1, 2, 1, 3, 1), (SuperFusionEntry{0, 1, -1}));
    EXPECT_EQ(super_fusion(1, 2, -1, 2, -1, 3, 1), (SuperFusionEntry{1, 0, 1}));
    for (int e : {1, -1})
        for (int e1 : {1, -1})
            for (int e2 : {1, -1}) {
                auto x = super_fusion(2, 3, e, 4, e1, 2, e2);
                EXPECT_EQ(std::abs(x.sdim), n_coeff(7, 3, 4, 2));
                EXPECT_LE(std::abs(x.sdim), x.even_dim + x.odd_dim);
            }
    EXPECT_THROW(super_fusion(1, 6, 1, 1, 1, 1, 1), out_of_range);
    EXPECT_THROW(super_fusion(1, 1, 0, 1, 1, 1, 1), out_of_range);
}

TEST(ParafermionFusion, LevelOne)
{
    auto t = parafermion_fusion(1);
    EXPECT_EQ(t.labels(), (std::vector<std::string>{"C(0,1)", "C(0,3)", "C(1,1)", "C(1,3)"}));
    auto c13 = t.find("C(1,3)");
    EXPECT_EQ(t.product(c13, c13), (std::vector<std::string>{"C(0,1)", "C(0,3)"}));
}

TEST(ParafermionFusion, GroupRingOfCharges)
{
    for (int k = 1; k <= 3; ++k) {
        auto t = parafermion_fusion(k);
        expect_fusion_axioms(t, "parafermion k=" + std::to_string(k));
        for (int a = 0; a < 2 * k; ++a)
            for (int b = 0; b < 2 * k; ++b) {
                auto prod = t.product(t.find(coset_label_name(a, 1)), t.find(coset_label_name(b, 1)));
                EXPECT_EQ(prod, (std::vector<std::string>{coset_label_name((a + b) % (2 * k), 1)}));
            }
    }
}
