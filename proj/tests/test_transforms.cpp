#include <gtest/gtest.h>

#include <random>

#include "hyperhodge/transforms.hpp"
#include "support.hpp"

using namespace hyperhodge;
using namespace hyperhodge::testing;

namespace {

Presentation single(const OrePoly& g) { return Presentation(g.signature(), {g}); }

OrePoly random_function(std::mt19937& rng, const SigPtr& s)
{
    OrePoly f(s);
    int k = uniform(rng, 0, 3);
    for (int i = 0; i < k; ++i) {
        Exponents e(s->width(), 0);
        for (std::size_t j = 0; j < s->nvars(); ++j)
            e[s->x_slot(j)] = s->invertible[j] ? uniform(rng, -2, 2) : uniform(rng, 0, 2);
        f.add_term(e, small_rational(rng));
    }
    return f;
}

SigPtr affine(int k)
{
    const char* names[] = {"w1", "w2", "w3"};
    return make_signature(std::vector<std::string>(names, names + k), {}, true);
}

} // namespace

TEST(FourierLaplace, Examples)
{
    auto s = affine(1);
    auto lam = make_signature({"lam1"}, {}, true);
    auto w = OrePoly::var(s, "w1"), th = OrePoly::theta(s, "w1");
    EXPECT_EQ(fourier_laplace(single(w)).generators[0], OrePoly::theta(lam, "lam1"));
    EXPECT_EQ(fourier_laplace(single(th)).generators[0], -OrePoly::var(lam, "lam1"));
    // th_w w -> -lam th_lam after normal ordering.
    EXPECT_EQ(fourier_laplace(single(th * w)).generators[0],
              -(OrePoly::var(lam, "lam1") * OrePoly::theta(lam, "lam1")));
    auto E = fourier_laplace(single(OrePoly::z2dz(s))).generators[0];
    EXPECT_EQ(E, OrePoly::z2dz(lam) + OrePoly::var(lam, "lam1") * OrePoly::theta(lam, "lam1"));
    EXPECT_EQ(fourier_laplace(single(w), std::vector<std::string>{"mu"}).signature->base_vars,
              std::vector<std::string>{"mu"});
}

TEST(FourierLaplace, Errors)
{
    EXPECT_THROW(fourier_laplace(single(OrePoly::var(make_signature({"t"}, {"t"}, true), "t"))), SignatureError);
    EXPECT_THROW(fourier_laplace(single(OrePoly::var(make_signature({"w"}, {}, false), "w"))), SignatureError);
    EXPECT_THROW(fourier_laplace(single(OrePoly::var(affine(1), "w1")), std::vector<std::string>{"a", "b"}),
                 ValidationError);
}

TEST(FourierLaplace, IsAnAlgebraMorphism)
{
    std::mt19937 rng(41);
    for (int it = 0; it < 150; ++it) {
        auto s = affine(uniform(rng, 1, 3));
        auto a = random_poly(rng, s, 3, 3), b = random_poly(rng, s, 3, 3);
        auto fa = fourier_laplace(single(a)).generators[0];
        auto fb = fourier_laplace(single(b)).generators[0];
        EXPECT_EQ(fourier_laplace(single(a * b)).generators[0], fa * fb);
    }
}

TEST(FourierLaplace, TwiceIsTheAntipodeWithShiftedEuler)
{
    // w -> th -> -w, th_w -> -w -> -th, z2dz -> z2dz - N z.
    std::mt19937 rng(43);
    for (int it = 0; it < 100; ++it) {
        int k = uniform(rng, 1, 3);
        auto s = affine(k);
        auto p = random_poly(rng, s, 3, 3);
        std::vector<std::string> names(s->base_vars);
        auto twice = fourier_laplace(fourier_laplace(single(p)), names);
        SymbolMap m;
        for (const auto& v : names) {
            m[Symbol::Var(v)] = -OrePoly::var(s, v);
            m[Symbol::Theta(v)] = -OrePoly::theta(s, v);
        }
        m[Symbol::Z2Dz()] = OrePoly::z2dz(s) - Rational(k) * OrePoly::z(s);
        EXPECT_EQ(twice.generators[0], substitute(p, m, s));
    }
}

TEST(ExpTwist, Examples)
{
    auto s = make_signature({"t", "w"}, {}, true);
    auto t = OrePoly::var(s, "t"), w = OrePoly::var(s, "w");
    auto thw = OrePoly::theta(s, "w");
    EXPECT_EQ(exp_twist(single(thw), w * t).generators[0], thw - t);
    EXPECT_EQ(exp_twist(single(thw), OrePoly(s)).generators[0], thw);

    auto s3 = make_signature({"t", "w1", "w2", "w3"}, {}, true);
    auto psi = OrePoly::var(s3, "w1") * OrePoly::var(s3, "t") + OrePoly::var(s3, "w2") + OrePoly::var(s3, "w3");
    auto g = OrePoly::z2dz(s3) - OrePoly::z(s3);
    EXPECT_EQ(exp_twist(single(g), psi).generators[0], g + psi);
}

TEST(ExpTwist, Errors)
{
    auto s = make_signature({"t"}, {}, true);
    EXPECT_THROW(exp_twist(single(OrePoly::var(s, "t")), OrePoly::theta(s, "t")), ValidationError);
    auto other = make_signature({"u"}, {}, true);
    EXPECT_THROW(exp_twist(single(OrePoly::var(s, "t")), OrePoly::var(other, "u")), SignatureError);
}

TEST(ExpTwist, InverseAndMorphism)
{
    std::mt19937 rng(47);
    for (int it = 0; it < 150; ++it) {
        auto s = random_signature(rng);
        auto phi = random_function(rng, s);
        Presentation p(s);
        for (int g = uniform(rng, 0, 3); g > 0; --g) p.add(random_poly(rng, s, 3, 3));
        auto back = exp_twist(exp_twist(p, phi), -phi);
        EXPECT_EQ(back.generators, p.generators);

        auto a = random_poly(rng, s, 2, 3), b = random_poly(rng, s, 2, 3);
        EXPECT_EQ(exp_twist(single(a * b), phi).generators[0],
                  exp_twist(single(a), phi).generators[0] * exp_twist(single(b), phi).generators[0]);
    }
}

TEST(ZScale, ShiftsEulerAndRecordsPower)
{
    auto s = make_signature({"t"}, {"t"}, true);
    auto E = OrePoly::z2dz(s), z = OrePoly::z(s);
    auto p = z_scale(single(E + OrePoly::var(s, "t")), Rational(1, 2));
    EXPECT_EQ(p.generators[0], E - Rational(1, 2) * z + OrePoly::var(s, "t"));
    EXPECT_EQ(p.metadata.at("z_power"), "1/2");
    auto q = z_scale(p, Rational(-1, 2));
    EXPECT_EQ(q.generators[0], E + OrePoly::var(s, "t"));
    EXPECT_EQ(q.metadata.at("z_power"), "0");
    EXPECT_THROW(z_scale(single(OrePoly::var(make_signature({"t"}, {}, false), "t")), 1), SignatureError);
}

TEST(Transforms, EmptyPresentationIsFixed)
{
    auto s = affine(2);
    Presentation p(s);
    EXPECT_TRUE(fourier_laplace(p).generators.empty());
    EXPECT_TRUE(exp_twist(p, OrePoly::var(s, "w1")).generators.empty());
    EXPECT_TRUE(z_scale(p, 3).generators.empty());
}

TEST(AdjoinVariables, KeepsGenerators)
{
    auto s = make_signature({"t"}, {"t"}, true);
    auto p = adjoin_variables(single(OrePoly::theta(s, "t")), {"w"}, {});
    EXPECT_EQ(p.signature->base_vars, (std::vector<std::string>{"t", "w"}));
    EXPECT_TRUE(p.signature->invertible[0]);
    EXPECT_FALSE(p.signature->invertible[1]);
    EXPECT_EQ(p.generators[0], OrePoly::theta(p.signature, "t"));
}
