#pragma once

// Hand-rolled generators and oracles shared by the test suites.

#include <map>
#include <random>
#include <vector>

#include "hyperhodge/ore.hpp"

namespace hyperhodge::testing {

inline int uniform(std::mt19937& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Rational small_rational(std::mt19937& rng)
{
    int num = uniform(rng, -5, 5);
    if (num == 0) num = 1;
    Rational r(num, uniform(rng, 1, 4));
    r.canonicalize();
    return r;
}

inline SigPtr random_signature(std::mt19937& rng)
{
    const char* names[] = {"t", "u", "v"};
    int k = uniform(rng, 1, 3);
    std::vector<std::string> vars, inv;
    for (int i = 0; i < k; ++i) {
        vars.push_back(names[i]);
        if (uniform(rng, 0, 1)) inv.push_back(names[i]);
    }
    bool classical = uniform(rng, 0, 4) == 0;
    bool e = !classical && uniform(rng, 0, 1);
    return make_signature(vars, inv, e, classical);
}

inline Exponents random_exponents(std::mt19937& rng, const OreSignature& s, int max_deg)
{
    Exponents e(s.width(), 0);
    int left = uniform(rng, 0, max_deg);
    for (int step = 0; step < 8 && left > 0; ++step) {
        std::size_t slot = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(s.width()) - 1));
        if (slot == OreSignature::z_slot && s.classical) continue;
        if (slot == s.e_slot() && !s.has_z2dz) continue;
        int sign = 1;
        if (slot >= 1 && slot <= s.nvars() && s.invertible[slot - 1] && uniform(rng, 0, 1)) sign = -1;
        if (e[slot] * sign < 0) continue;
        e[slot] += sign;
        --left;
    }
    return e;
}

inline OrePoly random_poly(std::mt19937& rng, const SigPtr& s, int max_deg, int max_terms)
{
    OrePoly p(s);
    int k = uniform(rng, 1, max_terms);
    for (int i = 0; i < k; ++i) p.add_term(random_exponents(rng, *s, max_deg), small_rational(rng));
    return p;
}

// Functions sum c z^p x^q with Laurent exponents, the faithful test module.
using Function = std::map<std::vector<int>, Rational>;

inline void accumulate(Function& f, const std::vector<int>& e, const Rational& c)
{
    if (c == 0) return;
    auto [it, fresh] = f.try_emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) f.erase(it);
    }
}

inline Function random_test_function(std::mt19937& rng, const OreSignature& s)
{
    Function f;
    int k = uniform(rng, 1, 3);
    for (int i = 0; i < k; ++i) {
        std::vector<int> e(1 + s.nvars(), 0);
        if (!s.classical) e[0] = uniform(rng, -2, 3);
        for (std::size_t j = 0; j < s.nvars(); ++j) e[1 + j] = s.invertible[j] ? uniform(rng, -3, 3) : uniform(rng, 0, 4);
        accumulate(f, e, small_rational(rng));
    }
    return f;
}

// Action of an operator through theta_i = z d/dx_i and z2dz = z^2 d/dz, applied
// right to left within each normal-ordered monomial.
inline Function act(const OrePoly& p, const Function& f)
{
    const auto& s = *p.signature();
    const int zs = s.classical ? 0 : 1;
    Function out;
    for (const auto& [e, c] : p.terms()) {
        Function g = f;
        for (int k = 0; k < e[s.e_slot()]; ++k) {
            Function h;
            for (const auto& [m, x] : g) {
                auto n = m;
                n[0] += 1;
                accumulate(h, n, x * m[0]);
            }
            g = std::move(h);
        }
        for (std::size_t i = 0; i < s.nvars(); ++i)
            for (int k = 0; k < e[s.theta_slot(i)]; ++k) {
                Function h;
                for (const auto& [m, x] : g) {
                    auto n = m;
                    n[0] += zs;
                    n[1 + i] -= 1;
                    accumulate(h, n, x * m[1 + i]);
                }
                g = std::move(h);
            }
        for (const auto& [m, x] : g) {
            auto n = m;
            n[0] += e[OreSignature::z_slot];
            for (std::size_t i = 0; i < s.nvars(); ++i) n[1 + i] += e[s.x_slot(i)];
            accumulate(out, n, x * c);
        }
    }
    return out;
}

} // namespace hyperhodge::testing
