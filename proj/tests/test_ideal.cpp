#include <gtest/gtest.h>

#include <random>

#include "hyperhodge/elimination.hpp"
#include "hyperhodge/gkz.hpp"
#include "hyperhodge/ideal.hpp"
#include "hyperhodge/transforms.hpp"
#include "support.hpp"

using namespace hyperhodge;
using namespace hyperhodge::testing;

namespace {

OrePoly recombine(const Presentation& p, const std::vector<OrePoly>& cof)
{
    OrePoly sum(p.signature);
    for (std::size_t i = 0; i < cof.size(); ++i) sum += cof[i] * p.generators[i];
    return sum;
}

OrePoly random_cofactor(std::mt19937& rng, const SigPtr& s, int deg)
{
    OrePoly r(s);
    for (int k = uniform(rng, 0, 2); k >= 0; --k) {
        auto e = random_exponents(rng, *s, deg);
        if (OrePoly::degree_of(e) <= deg) r.add_term(e, small_rational(rng));
    }
    return r;
}

} // namespace

TEST(Membership, Examples)
{
    auto s = make_signature({"t"}, {}, true);
    auto t = OrePoly::var(s, "t"), th = OrePoly::theta(s, "t"), z = OrePoly::z(s);
    Presentation p(s, {th - t});
    auto r = ideal_membership_bounded(p, z * (th - t), 1);
    EXPECT_TRUE(r.member);
    EXPECT_EQ(recombine(p, r.cofactors), z * (th - t));
    EXPECT_FALSE(ideal_membership_bounded(p, z * (th - t), 0).member);

    Presentation q(s, {t});
    for (int b = 0; b <= 4; ++b) EXPECT_FALSE(ideal_membership_bounded(q, OrePoly(s, 1), b).member);
    EXPECT_TRUE(certify_non_member(q, OrePoly(s, 1)));

    auto search = ideal_membership_search(p, th * th * (th - t), 4);
    EXPECT_TRUE(search.member);
    EXPECT_EQ(search.bound, 2);
}

TEST(Membership, EulerGeneratorInFourierImage)
{
    // -E^z_1 lies in the transformed w-side ideal of family (2,1).
    auto A = family_matrix(2, 1);
    std::vector<Rational> beta{Rational(1, 4), Rational(1, 2)};
    auto img = fourier_laplace(build_check_N(A, beta, true));
    auto N = build_N(A, beta);
    auto e1 = embed(N.generators[1], img.signature);
    auto r = ideal_membership_search(img, -e1, 3);
    ASSERT_TRUE(r.member);
    EXPECT_EQ(r.bound, 0);
    EXPECT_EQ(recombine(img, r.cofactors), -e1);
}

TEST(Membership, CertificatesRemultiply)
{
    std::mt19937 rng(51);
    for (int it = 0; it < 60; ++it) {
        auto s = random_signature(rng);
        Presentation p(s);
        for (int g = uniform(rng, 1, 2); g > 0; --g) p.add(random_poly(rng, s, 2, 2));
        OrePoly q(s);
        for (const auto& g : p.generators) q += random_cofactor(rng, s, 2) * g;
        auto r = ideal_membership_bounded(p, q, 2);
        ASSERT_TRUE(r.member) << q;
        EXPECT_EQ(recombine(p, r.cofactors), q);
    }
}

TEST(Equivalence, Examples)
{
    auto s = make_signature({"t"}, {}, true);
    auto t = OrePoly::var(s, "t"), th = OrePoly::theta(s, "t"), z = OrePoly::z(s);
    auto eq = presentation_equiv_bounded(Presentation(s, {th}), Presentation(s, {th, z * th}), 1);
    EXPECT_EQ(eq.verdict, Verdict::equal);
    ASSERT_EQ(eq.certificates.size(), 3u);
    const Presentation* pres[2] = {nullptr, nullptr};
    Presentation a(s, {th}), b(s, {th, z * th});
    pres[0] = &a;
    pres[1] = &b;
    for (const auto& c : eq.certificates)
        EXPECT_EQ(recombine(*pres[1 - c.side], c.cofactors), pres[c.side]->generators[c.index]);

    auto ne = presentation_equiv_bounded(Presentation(s, {t}), Presentation(s, {t * t}), 3);
    EXPECT_EQ(ne.verdict, Verdict::unequal);
    EXPECT_EQ(ne.witness, "t");

    EXPECT_EQ(to_string(Verdict::inconclusive), "Inconclusive");
    auto other = make_signature({"u"}, {}, true);
    EXPECT_THROW(presentation_equiv_bounded(a, Presentation(other), 1), SignatureError);
}

TEST(Equivalence, GeneratorMultiplesAreEqual)
{
    std::mt19937 rng(53);
    for (int it = 0; it < 40; ++it) {
        auto s = random_signature(rng);
        Presentation p(s);
        for (int g = uniform(rng, 1, 2); g > 0; --g) p.add(random_poly(rng, s, 2, 2));
        Presentation q = p;
        OrePoly extra(s);
        for (const auto& g : p.generators) extra += random_cofactor(rng, s, 1) * g;
        q.add(extra);
        std::reverse(q.generators.begin(), q.generators.end());
        EXPECT_EQ(presentation_equiv_bounded(p, q, 1).verdict, Verdict::equal);
    }
}

TEST(Elimination, NoFibreVariablesKeepsTheIdeal)
{
    auto s = make_signature({"t"}, {"t"}, true);
    auto t = OrePoly::var(s, "t"), th = OrePoly::theta(s, "t"), E = OrePoly::z2dz(s), z = OrePoly::z(s);
    Presentation p(s, {E + t * th + z, th * th - t});
    auto r = derham_eliminate(p, {}, 2);
    EXPECT_TRUE(r.conclusive);
    // The Euler and order-two relations together force z into the ideal.
    EXPECT_NE(std::find(r.presentation.generators.begin(), r.presentation.generators.end(), z),
              r.presentation.generators.end());
    EXPECT_EQ(presentation_equiv_search(r.presentation, p, 4).verdict, Verdict::equal);
    EXPECT_EQ(r.presentation.metadata.at("elimination_bound"), "2");
}

TEST(Elimination, PointModule)
{
    // Integrating exp(-wt/z) over w leaves the point module at t = 0.
    auto s = make_signature({"t", "w"}, {}, true);
    auto t = OrePoly::var(s, "t"), w = OrePoly::var(s, "w");
    auto tht = OrePoly::theta(s, "t"), thw = OrePoly::theta(s, "w"), E = OrePoly::z2dz(s);
    Presentation p(s, {thw - t, tht - w, E + w * t});
    auto r = derham_eliminate(p, {"w"}, 2);
    ASSERT_TRUE(r.conclusive) << r.reason;
    const auto& b = r.presentation;
    EXPECT_EQ(b.signature->base_vars, std::vector<std::string>{"t"});
    auto bt = OrePoly::var(b.signature, "t"), bth = OrePoly::theta(b.signature, "t");
    auto bE = OrePoly::z2dz(b.signature), bz = OrePoly::z(b.signature);
    for (const auto& q : {bt, bE + bt * bth, bE - bz}) {
        auto m = ideal_membership_search(b, q, 2);
        ASSERT_TRUE(m.member) << q;
        EXPECT_EQ(recombine(b, m.cofactors), q);
    }
    // Mod z this lies in (t, z2dz), so only a bounded check is available.
    EXPECT_FALSE(ideal_membership_bounded(b, bE + bt * bth + bz, 3).member);
    EXPECT_TRUE(certify_non_member(b, OrePoly(b.signature, 1)));
}

TEST(Elimination, UnknownFibreVariable)
{
    auto s = make_signature({"t"}, {}, true);
    EXPECT_THROW(derham_eliminate(Presentation(s), {"w"}, 2), SignatureError);
}

TEST(Simplify, NormalizeUnits)
{
    auto s = make_signature({"t"}, {"t"}, true);
    auto t = OrePoly::var(s, "t"), th = OrePoly::theta(s, "t");
    auto p = Rational(3) * pow(t, 2) * th + Rational(6) * pow(t, 3);
    auto n = normalize_units(p);
    EXPECT_EQ(n.leading().second, 1);
    for (const auto& [e, c] : n.terms()) EXPECT_GE(e[s->x_slot(0)], 0);
    // n is a unit multiple of p.
    EXPECT_EQ(n, Rational(1, 3) * OrePoly::var(s, "t", -2) * p);
}

TEST(Simplify, KeepsTheIdeal)
{
    auto s = make_signature({"t"}, {"t"}, true);
    auto t = OrePoly::var(s, "t"), th = OrePoly::theta(s, "t"), E = OrePoly::z2dz(s), z = OrePoly::z(s);
    auto a = E + t * th + Rational(1, 2) * z;
    auto b = t * th * th - z * t;
    std::mt19937 rng(57);
    for (int it = 0; it < 20; ++it) {
        std::vector<OrePoly> gens{random_cofactor(rng, s, 1) * a + random_cofactor(rng, s, 1) * b,
                                  Rational(uniform(rng, 1, 5)) * OrePoly::var(s, "t", uniform(rng, -2, 2)) * a, b};
        std::shuffle(gens.begin(), gens.end(), rng);
        auto out = simplify_generators(gens);
        EXPECT_LE(out.size(), gens.size());
        EXPECT_EQ(out.front().degree_in(s->e_slot()), 1);
        EXPECT_EQ(out.front().leading().second, 1);
        EXPECT_EQ(presentation_equiv_search(Presentation(s, out), Presentation(s, {a, b}), 2).verdict,
                  Verdict::equal);
    }
    EXPECT_TRUE(simplify_generators({}).empty());
}
