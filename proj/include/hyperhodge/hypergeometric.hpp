#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "cone.hpp"
#include "elimination.hpp"
#include "gkz.hpp"
#include "ideal.hpp"
#include "transforms.hpp"

namespace hyperhodge {

// Parameters of type (n, m), normalized into [0,1) and sorted.
struct HypParams {
    std::size_t n = 0, m = 0;
    std::vector<Rational> alpha, beta;

    std::size_t N() const { return n + m; }
};

inline std::vector<Rational> reduce_mod_one(std::vector<Rational> v)
{
    for (auto& x : v) x = frac_of(x);
    std::sort(v.begin(), v.end());
    return v;
}

inline HypParams make_params(std::vector<Rational> alpha, std::vector<Rational> beta)
{
    if (alpha.empty() && beta.empty()) throw ValidationError("type (0,0) is not allowed");
    HypParams p;
    p.n = alpha.size();
    p.m = beta.size();
    p.alpha = reduce_mod_one(std::move(alpha));
    p.beta = reduce_mod_one(std::move(beta));
    return p;
}

// eps = sum beta - sum alpha + N - 1
inline Rational epsilon(const HypParams& p)
{
    Rational e = Rational(static_cast<long>(p.N())) - 1;
    for (const auto& b : p.beta) e += b;
    for (const auto& a : p.alpha) e -= a;
    return e;
}

inline bool irreducible(const HypParams& p)
{
    for (const auto& a : p.alpha)
        for (const auto& b : p.beta)
            if (is_integer(a - b)) return false;
    return true;
}

inline SigPtr torus_signature(bool classical)
{
    return classical ? make_signature({"t"}, {"t"}, false, true) : make_signature({"t"}, {"t"}, true);
}

// prod (t d - a_i) - t prod (t d - b_j) with d = d/dt, for arbitrary rational parameters.
inline OrePoly hyp_operator(const std::vector<Rational>& alpha, const std::vector<Rational>& beta)
{
    SigPtr s = torus_signature(true);
    OrePoly td = OrePoly::var(s, "t") * OrePoly::theta(s, "t");
    OrePoly a(s, 1), b(s, 1);
    for (const auto& x : alpha) a = a * (td - OrePoly(s, x));
    for (const auto& x : beta) b = b * (td - OrePoly(s, x));
    return a - OrePoly::var(s, "t") * b;
}

inline OrePoly hyp_operator(const HypParams& p) { return hyp_operator(p.alpha, p.beta); }

struct KummerTwist {
    HypParams params;              // shifted and reduced
    std::vector<Rational> alpha, beta; // shifted, unreduced
    OrePoly substituted;           // hyp_operator(params) with t d -> t d - eta
    bool witness_holds = false;    // substituted == hyp_operator(alpha, beta)
};

// Tensoring with t^eta: every parameter moves by eta.
inline KummerTwist kummer_twist(const HypParams& p, const Rational& eta)
{
    KummerTwist k;
    for (const auto& a : p.alpha) k.alpha.push_back(a + eta);
    for (const auto& b : p.beta) k.beta.push_back(b + eta);
    k.params = make_params(k.alpha, k.beta);
    SigPtr s = torus_signature(true);
    SymbolMap m;
    m[Symbol::Theta("t")] = OrePoly::theta(s, "t") - eta * OrePoly::var(s, "t", -1);
    k.substituted = substitute(hyp_operator(p), m, s);
    k.witness_holds = k.substituted == hyp_operator(k.alpha, k.beta);
    return k;
}

// The alphas form one contiguous block in the circular order of all parameters.
inline bool arc_separated(const HypParams& p)
{
    if (!irreducible(p)) throw ValidationError("arc separation needs alpha_i != beta_j");
    if (p.n == 0 || p.m == 0) return true;
    std::vector<std::pair<Rational, int>> all;
    for (const auto& a : p.alpha) all.emplace_back(frac_of(a), 0);
    for (const auto& b : p.beta) all.emplace_back(frac_of(b), 1);
    std::sort(all.begin(), all.end());
    int changes = 0;
    for (std::size_t i = 0; i < all.size(); ++i)
        if (all[i].second != all[(i + 1) % all.size()].second) ++changes;
    return changes <= 2;
}

// P = z2dz + (n - m) t th_t + eps z,  H = prod (t th_t - a_i z) - t prod (t th_t - b_j z).
inline Presentation thm_presentation(const HypParams& p)
{
    SigPtr s = torus_signature(false);
    OrePoly z = OrePoly::z(s), t = OrePoly::var(s, "t");
    OrePoly tth = t * OrePoly::theta(s, "t");
    Rational nm = Rational(static_cast<long>(p.n)) - Rational(static_cast<long>(p.m));
    OrePoly P = OrePoly::z2dz(s) + nm * tth + epsilon(p) * z;
    OrePoly a(s, 1), b(s, 1);
    for (const auto& x : p.alpha) a = a * (tth - x * z);
    for (const auto& x : p.beta) b = b * (tth - x * z);
    return Presentation(s, {P, a - t * b});
}

// gamma = (beta_1..beta_m, alpha_2..alpha_n), the GKZ parameter of the family matrix.
inline std::vector<Rational> family_gamma(const HypParams& p)
{
    std::vector<Rational> g = p.beta;
    g.insert(g.end(), p.alpha.begin() + 1, p.alpha.end());
    return g;
}

struct PipelineResult {
    Presentation presentation;
    EliminationResult elimination;
    std::vector<Rational> gamma;
    std::vector<Integer> shift; // witness k with gamma - k admissible
};

inline int default_pipeline_bound(const HypParams& p) { return static_cast<int>(2 * std::max(p.n, p.m)); }

// GKZ route to the (P, H) presentation: w-side system, Rees module with
// z2dz - z, pull back along the projection to t, twist by
// psi = w_1 t + w_2 + ... + w_N, integrate out the w's, substitute
// t -> (-1)^m t and multiply the module by z^(-N).
inline PipelineResult gkz_reduction_pipeline(const HypParams& p, int degree_bound = -1)
{
    if (p.n < 1 || p.alpha.front() != 0) throw ValidationError("pipeline needs alpha_1 = 0");
    if (!irreducible(p)) throw ValidationError("pipeline needs irreducible parameters");
    if (p.N() < 2) throw ValidationError("pipeline needs n + m >= 2");
    if (degree_bound < 0) degree_bound = default_pipeline_bound(p);
    const std::size_t N = p.N();
    IntMatrix A = family_matrix(p.n, p.m);

    PipelineResult res;
    res.gamma = family_gamma(p);
    ShiftSearch search(A);
    auto k = search.find(res.gamma);
    if (!k) {
        // Name a facet violated by the nearest candidate shift.
        std::vector<Rational> x = res.gamma;
        for (std::size_t i = 0; i < x.size(); ++i) x[i] -= Rational(std::max(Integer(0), Integer(ceil_of(x[i]) - 1)));
        auto f = search.region.violated_facet(x);
        std::string which = f ? vec_str(search.region.facets[*f].normal) : std::string("?");
        throw AdmissibilityError("gamma is not in the shifted admissible region (violated facet normal " + which + ")");
    }
    res.shift = *k;

    Presentation pres = build_check_N(A, res.gamma, true);
    pres = adjoin_variables(pres, {"t"}, {"t"});
    pres.add(OrePoly::theta(pres.signature, "t"));

    const auto& sig = pres.signature;
    OrePoly psi = OrePoly::var(sig, "w1") * OrePoly::var(sig, "t");
    for (std::size_t i = 2; i <= N; ++i) psi += OrePoly::var(sig, "w" + std::to_string(i));
    pres = exp_twist(pres, psi);

    res.elimination = derham_eliminate(pres, numbered("w", N), degree_bound);
    if (!res.elimination.conclusive)
        throw InconclusiveError("elimination inconclusive at bound " + std::to_string(degree_bound) + ": " +
                                res.elimination.reason);
    Presentation out = res.elimination.presentation;

    if (p.m % 2 == 1) {
        SymbolMap flip;
        flip[Symbol::Var("t")] = -OrePoly::var(out.signature, "t");
        flip[Symbol::Theta("t")] = -OrePoly::theta(out.signature, "t");
        out = substitute(out, flip, out.signature);
    }
    out = z_scale(out, -Rational(static_cast<long>(N)));
    out.metadata["pipeline_bound"] = std::to_string(degree_bound);
    res.presentation = std::move(out);
    return res;
}

} // namespace hyperhodge
