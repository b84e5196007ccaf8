#include <gtest/gtest.h>

#include <random>

#include "hyperhodge/ideal.hpp"
#include "hyperhodge/presentation.hpp"
#include "hyperhodge/transforms.hpp"
#include "support.hpp"

using namespace hyperhodge;
using namespace hyperhodge::testing;

namespace {

SigPtr tz() { return make_signature({"t"}, {"t"}, true); }

} // namespace

TEST(OreProduct, DefiningRelations)
{
    auto s = tz();
    auto t = OrePoly::var(s, "t"), th = OrePoly::theta(s, "t"), z = OrePoly::z(s), E = OrePoly::z2dz(s);
    EXPECT_EQ(th * t, t * th + z);
    EXPECT_EQ(E * z, z * E + z * z);
    EXPECT_EQ(E * th, th * E + z * th);
    EXPECT_EQ(E * t, t * E);
    EXPECT_EQ((t * th) * (t * th), pow(t, 2) * pow(th, 2) + z * t * th);
}

TEST(OreProduct, ClassicalProfileDropsZ)
{
    auto s = make_signature({"x"}, {}, false, true);
    auto x = OrePoly::var(s, "x"), d = OrePoly::theta(s, "x");
    EXPECT_EQ(d * x, x * d + OrePoly(s, 1));
    EXPECT_THROW(OrePoly::z(s), SignatureError);
}

TEST(OreProduct, RejectsNegativePowerOfPolynomialVariable)
{
    auto s = make_signature({"w"}, {}, true);
    EXPECT_THROW(OrePoly::var(s, "w", -1), SignatureError);
    auto u = make_signature({"t"}, {"t"}, true);
    EXPECT_NO_THROW(OrePoly::var(u, "t", -2));
}

TEST(OreProduct, MismatchedSignaturesThrow)
{
    auto a = OrePoly::var(tz(), "t");
    auto b = OrePoly::var(make_signature({"u"}, {}, true), "u");
    EXPECT_THROW(a * b, SignatureError);
}

TEST(OreProperties, LeibnizOnInvertibleVariable)
{
    auto s = make_signature({"t", "u"}, {"t", "u"}, true);
    auto th = OrePoly::theta(s, "t");
    for (int b = -3; b <= 3; ++b) {
        auto xb = OrePoly::var(s, "t", b);
        auto lhs = th * xb - xb * th;
        auto rhs = Rational(b) * OrePoly::z(s) * OrePoly::var(s, "t", b - 1);
        if (b == 0) rhs = OrePoly(s);
        EXPECT_EQ(lhs, rhs) << "b = " << b;
        EXPECT_EQ(OrePoly::theta(s, "u") * xb, xb * OrePoly::theta(s, "u"));
    }
}

TEST(OreProperties, ProductAgreesWithActionOnFunctions)
{
    std::mt19937 rng(7);
    for (int it = 0; it < 300; ++it) {
        auto s = random_signature(rng);
        auto a = random_poly(rng, s, 3, 3);
        auto b = random_poly(rng, s, 3, 3);
        auto ab = a * b;
        for (int k = 0; k < 3; ++k) {
            auto f = random_test_function(rng, *s);
            EXPECT_EQ(act(ab, f), act(a, act(b, f))) << a << " | " << b;
        }
    }
}

TEST(OreProperties, Associativity)
{
    std::mt19937 rng(11);
    for (int it = 0; it < 500; ++it) {
        auto s = random_signature(rng);
        auto a = random_poly(rng, s, 3, 3), b = random_poly(rng, s, 3, 3), c = random_poly(rng, s, 3, 3);
        ASSERT_EQ((a * b) * c, a * (b * c));
    }
}

TEST(OreProperties, CanonicalForm)
{
    std::mt19937 rng(13);
    for (int it = 0; it < 300; ++it) {
        auto s = random_signature(rng);
        auto a = random_poly(rng, s, 3, 3), b = random_poly(rng, s, 3, 3);
        auto p = a * b;
        // Rebuilding from the term list in reverse order gives the same sequence.
        OrePoly q(s);
        for (auto i = p.terms().rbegin(); i != p.terms().rend(); ++i) q.add_term(i->first, i->second);
        EXPECT_EQ(p, q);
        EXPECT_EQ(p * OrePoly(s, 1), p);
        EXPECT_EQ(OrePoly(s, 1) * p, p);
        for (const auto& [e, c] : p.terms()) EXPECT_NE(c, 0);
    }
}

TEST(OreProperties, ZIsCentralWithoutZ2dz)
{
    std::mt19937 rng(17);
    auto s = make_signature({"x", "y"}, {"y"}, false);
    for (int it = 0; it < 200; ++it) {
        auto p = random_poly(rng, s, 3, 4);
        EXPECT_EQ(OrePoly::z(s) * p, p * OrePoly::z(s));
    }
}

TEST(Substitute, Examples)
{
    auto w = make_signature({"w"}, {}, true);
    auto l = make_signature({"lam"}, {}, true);
    SymbolMap m;
    m[Symbol::Theta("w")] = -OrePoly::var(l, "lam");
    EXPECT_EQ(substitute(OrePoly::theta(w, "w"), m, l), -OrePoly::var(l, "lam"));

    m[Symbol::Var("w")] = OrePoly::theta(l, "lam");
    auto p = OrePoly::theta(w, "w") * OrePoly::var(w, "w");
    EXPECT_EQ(substitute(p, m, l), -(OrePoly::var(l, "lam") * OrePoly::theta(l, "lam")));

    std::mt19937 rng(3);
    auto s = random_signature(rng);
    auto q = random_poly(rng, s, 3, 3);
    EXPECT_EQ(substitute(q, {}, s), q);
}

TEST(Substitute, UnknownSymbolInTarget)
{
    auto w = make_signature({"w"}, {}, true);
    auto l = make_signature({"lam"}, {}, true);
    EXPECT_THROW(substitute(OrePoly::var(w, "w"), {}, l), SignatureError);
}

TEST(Substitute, InverseOfUnitImage)
{
    auto s = tz();
    SymbolMap m;
    m[Symbol::Var("t")] = Rational(-1) * OrePoly::var(s, "t");
    EXPECT_EQ(substitute(OrePoly::var(s, "t", -3), m, s), Rational(-1) * OrePoly::var(s, "t", -3));
    m[Symbol::Var("t")] = OrePoly::var(s, "t") + OrePoly(s, 1);
    EXPECT_THROW(substitute(OrePoly::var(s, "t", -1), m, s), SignatureError);
}

TEST(PresentationJson, RoundTripIsBitExact)
{
    std::mt19937 rng(5);
    for (int it = 0; it < 100; ++it) {
        auto s = random_signature(rng);
        Presentation p(s);
        int k = static_cast<int>(rng() % 4);
        for (int i = 0; i < k; ++i) p.add(random_poly(rng, s, 3, 3));
        p.metadata["note"] = "x";
        std::string a = to_json(p).dump(2);
        Presentation q = presentation_from_json(nlohmann::json::parse(a));
        EXPECT_EQ(a, to_json(q).dump(2));
        ASSERT_EQ(p.generators.size(), q.generators.size());
        for (std::size_t i = 0; i < p.generators.size(); ++i) EXPECT_EQ(p.generators[i], q.generators[i]);
    }
}

TEST(PresentationJson, RejectsMalformedInput)
{
    EXPECT_THROW(presentation_from_json(nlohmann::json::object()), ValidationError);
    auto j = nlohmann::json::parse(R"({"signature":{"base_vars":["t"],"invertible":[],"has_z2dz":true},
        "generators":[[{"coeff":"1/0","z":0,"x":{},"theta":{},"z2dz":0}]]})");
    EXPECT_THROW(presentation_from_json(j), ValidationError);
}

TEST(Rational, Parsing)
{
    EXPECT_EQ(parse_rational("3/4"), Rational(3, 4));
    EXPECT_EQ(parse_rational("-6/8"), Rational(-3, 4));
    EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
    EXPECT_EQ(parse_rational("7"), Rational(7));
    EXPECT_THROW(parse_rational("abc"), ValidationError);
    EXPECT_EQ(to_string(Rational(-7, 4)), "-7/4");
    EXPECT_EQ(ceil_of(Rational(-7, 4)), -1);
    EXPECT_EQ(floor_of(Rational(-7, 4)), -2);
}
