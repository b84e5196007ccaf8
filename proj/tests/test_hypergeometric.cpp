#include <gtest/gtest.h>

#include <random>

#include "hyperhodge/hypergeometric.hpp"
#include "hyperhodge/ideal.hpp"
#include "support.hpp"

using namespace hyperhodge;
using namespace hyperhodge::testing;

namespace {

Rational q(long a, long b)
{
    Rational r(a, b);
    r.canonicalize();
    return r;
}

std::vector<Rational> random_fracs(std::mt19937& rng, std::size_t k, int den)
{
    std::vector<Rational> v;
    for (std::size_t i = 0; i < k; ++i) v.push_back(q(uniform(rng, 0, den - 1), den));
    return v;
}

HypParams random_irreducible(std::mt19937& rng, std::size_t n, std::size_t m, int den = 12)
{
    while (true) {
        auto p = make_params(random_fracs(rng, n, den), random_fracs(rng, m, den));
        if (irreducible(p)) return p;
    }
}

// Cut the circle somewhere so that one family lies entirely before the other.
bool arc_oracle(const HypParams& p)
{
    std::vector<Rational> cuts = p.alpha;
    cuts.insert(cuts.end(), p.beta.begin(), p.beta.end());
    for (const auto& c : cuts) {
        auto rel = [&](const Rational& x) { return frac_of(x - c); };
        Rational amax = -1, amin = 2, bmax = -1, bmin = 2;
        for (const auto& a : p.alpha) {
            amax = std::max(amax, rel(a));
            amin = std::min(amin, rel(a));
        }
        for (const auto& b : p.beta) {
            bmax = std::max(bmax, rel(b));
            bmin = std::min(bmin, rel(b));
        }
        if (amax < bmin || bmax < amin) return true;
    }
    return false;
}

} // namespace

TEST(HypOperator, Examples)
{
    auto s = torus_signature(true);
    auto t = OrePoly::var(s, "t"), d = OrePoly::theta(s, "t");
    auto td = t * d;
    EXPECT_EQ(hyp_operator(make_params({0}, {})), td - t);
    EXPECT_EQ(hyp_operator(make_params({0}, {q(1, 2)})), td - t * (td - OrePoly(s, q(1, 2))));
    auto h = hyp_operator(make_params({0, q(1, 2)}, {q(1, 4)}));
    EXPECT_EQ(h, td * (td - OrePoly(s, q(1, 2))) - t * (td - OrePoly(s, q(1, 4))));
    EXPECT_EQ(h, pow(t, 2) * pow(d, 2) + q(1, 2) * td - t * td + q(1, 4) * t);
}

TEST(HypOperator, ActsOnPowersOfT)
{
    // H t^s = prod(s - a_i) t^s - prod(s - b_j) t^(s+1).
    std::mt19937 rng(71);
    for (int it = 0; it < 100; ++it) {
        auto p = make_params(random_fracs(rng, uniform(rng, 1, 3), 6), random_fracs(rng, uniform(rng, 0, 3), 6));
        auto h = hyp_operator(p);
        for (int s = -3; s <= 3; ++s) {
            Rational a = 1, b = 1;
            for (const auto& x : p.alpha) a *= Rational(s) - x;
            for (const auto& x : p.beta) b *= Rational(s) - x;
            Function expect;
            hyperhodge::testing::accumulate(expect, {0, s}, a);
            hyperhodge::testing::accumulate(expect, {0, s + 1}, -b);
            EXPECT_EQ(act(h, Function{{{0, s}, Rational(1)}}), expect);
        }
    }
}

TEST(Params, NormalizationAndEpsilon)
{
    auto p = make_params({q(3, 2), q(-1, 4)}, {q(5, 4)});
    EXPECT_EQ(p.alpha, (std::vector<Rational>{q(1, 2), q(3, 4)}));
    EXPECT_EQ(p.beta, (std::vector<Rational>{q(1, 4)}));
    EXPECT_EQ(epsilon(make_params({0, q(1, 2)}, {q(1, 4)})), q(7, 4));
    EXPECT_THROW(make_params({}, {}), ValidationError);
}

TEST(Irreducible, Examples)
{
    EXPECT_FALSE(irreducible(make_params({0}, {0})));
    EXPECT_TRUE(irreducible(make_params({0, q(1, 2)}, {q(1, 4)})));
    EXPECT_FALSE(irreducible(make_params({q(1, 3)}, {q(1, 3)})));
}

TEST(Kummer, Examples)
{
    auto p = make_params({0}, {});
    auto k = kummer_twist(p, q(1, 2));
    EXPECT_EQ(k.params.alpha, std::vector<Rational>{q(1, 2)});
    EXPECT_TRUE(k.witness_holds);
    auto s = torus_signature(true);
    EXPECT_EQ(hyp_operator(k.params), OrePoly::var(s, "t") * OrePoly::theta(s, "t") - OrePoly(s, q(1, 2)) -
                                          OrePoly::var(s, "t"));

    auto r = make_params({0, q(1, 3)}, {q(1, 2)});
    EXPECT_EQ(kummer_twist(r, 0).params.alpha, r.alpha);
    EXPECT_EQ(kummer_twist(r, 1).params.alpha, r.alpha);
    EXPECT_EQ(kummer_twist(r, 1).params.beta, r.beta);
}

TEST(Kummer, Properties)
{
    std::mt19937 rng(73);
    for (int it = 0; it < 200; ++it) {
        std::size_t n = uniform(rng, 1, 3), m = uniform(rng, 0, 3);
        auto p = random_irreducible(rng, n, m);
        Rational eta = q(uniform(rng, -12, 12), uniform(rng, 1, 6));
        auto k = kummer_twist(p, eta);
        EXPECT_TRUE(k.witness_holds);
        auto back = kummer_twist(k.params, -eta).params;
        EXPECT_EQ(back.alpha, p.alpha);
        EXPECT_EQ(back.beta, p.beta);

        HypParams raw{n, m, k.alpha, k.beta};
        EXPECT_EQ(epsilon(raw), epsilon(p) - Rational(static_cast<long>(n) - static_cast<long>(m)) * eta);
        EXPECT_EQ(irreducible(k.params), irreducible(p));
        EXPECT_EQ(arc_separated(k.params), arc_separated(p));
    }
}

TEST(ArcSeparation, Examples)
{
    EXPECT_TRUE(arc_separated(make_params({q(1, 5), q(2, 5)}, {q(3, 5), q(4, 5)})));
    EXPECT_FALSE(arc_separated(make_params({q(1, 5), q(3, 5)}, {q(2, 5), q(4, 5)})));
    EXPECT_TRUE(arc_separated(make_params({0, q(1, 3), q(2, 3)}, {q(1, 2)})));
    // Separated on the circle though not on the flat interval.
    EXPECT_TRUE(arc_separated(make_params({q(1, 10), q(4, 5)}, {q(1, 2), q(3, 5)})));
    EXPECT_THROW(arc_separated(make_params({q(1, 3)}, {q(1, 3)})), ValidationError);
}

TEST(ArcSeparation, AgreesWithCutOracle)
{
    std::mt19937 rng(79);
    for (int it = 0; it < 500; ++it) {
        auto p = random_irreducible(rng, uniform(rng, 1, 4), uniform(rng, 1, 4), 10);
        EXPECT_EQ(arc_separated(p), arc_oracle(p));
    }
}

TEST(ThmPresentation, Examples)
{
    auto p = thm_presentation(make_params({0, q(1, 2)}, {q(1, 4)}));
    auto s = p.signature;
    auto t = OrePoly::var(s, "t"), th = OrePoly::theta(s, "t"), z = OrePoly::z(s), E = OrePoly::z2dz(s);
    EXPECT_EQ(p.generators[0], E + t * th + q(7, 4) * z);
    EXPECT_EQ(p.generators[1], (t * th) * (t * th - q(1, 2) * z) - t * (t * th - q(1, 4) * z));

    auto r = make_params({0, q(1, 3)}, {q(1, 2), q(5, 6)});
    auto pr = thm_presentation(r);
    EXPECT_EQ(pr.generators[0], OrePoly::z2dz(pr.signature) + epsilon(r) * OrePoly::z(pr.signature));
}

TEST(ThmPresentation, RestrictsToTheOperator)
{
    std::mt19937 rng(83);
    for (int it = 0; it < 200; ++it) {
        std::size_t N = uniform(rng, 1, 6);
        std::size_t n = uniform(rng, 1, static_cast<int>(N)), m = N - n;
        auto p = make_params(random_fracs(rng, n, 8), random_fracs(rng, m, 8));
        auto thm = thm_presentation(p);
        auto H = restrict_z_to_one(Presentation(thm.signature, {thm.generators[1]}));
        EXPECT_EQ(H.generators[0], hyp_operator(p));
    }
}

TEST(Pipeline, TwoOne)
{
    auto p = make_params({0, q(1, 2)}, {q(1, 4)});
    auto r = gkz_reduction_pipeline(p);
    EXPECT_EQ(r.presentation.metadata.at("pipeline_bound"), "4");
    EXPECT_EQ(r.presentation.metadata.at("z_power"), "-3");
    EXPECT_EQ(r.gamma, (std::vector<Rational>{q(1, 4), q(1, 2)}));
    EXPECT_EQ(r.shift, (std::vector<Integer>{1, 1}));
    auto eq = presentation_equiv_search(r.presentation, thm_presentation(p), 2);
    EXPECT_EQ(eq.verdict, Verdict::equal) << r.presentation.str();
}

TEST(Pipeline, ThreeOne)
{
    auto p = make_params({0, q(1, 3), q(1, 2)}, {q(1, 5)});
    auto r = gkz_reduction_pipeline(p, 4);
    EXPECT_EQ(presentation_equiv_search(r.presentation, thm_presentation(p), 2).verdict, Verdict::equal)
        << r.presentation.str();
}

TEST(Pipeline, TwoTwo)
{
    auto p = make_params({0, q(1, 5)}, {q(1, 2), q(3, 4)});
    auto r = gkz_reduction_pipeline(p);
    EXPECT_EQ(presentation_equiv_search(r.presentation, thm_presentation(p), 2).verdict, Verdict::equal)
        << r.presentation.str();
}

TEST(Pipeline, Errors)
{
    // gamma = (1/5, 3/5, 2/5) lies in no shift of the admissible region.
    auto bad = make_params({0, q(2, 5)}, {q(1, 5), q(3, 5)});
    EXPECT_FALSE(lemma_raute_membership(2, 2, bad.beta, {q(2, 5)}));
    try {
        gkz_reduction_pipeline(bad);
        ADD_FAILURE() << "expected an admissibility error";
    } catch (const AdmissibilityError& e) {
        EXPECT_NE(std::string(e.what()).find("facet"), std::string::npos);
    }
    EXPECT_THROW(gkz_reduction_pipeline(make_params({q(1, 3)}, {q(1, 2)})), ValidationError);
    EXPECT_THROW(gkz_reduction_pipeline(make_params({0, q(1, 2)}, {q(1, 2)})), ValidationError);
}
