#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "rational.hpp"

namespace hyperhodge::comm {

// Commutative polynomials over Q in graded reverse lexicographic order.
struct Grevlex {
    bool operator()(const std::vector<int>& a, const std::vector<int>& b) const
    {
        int da = 0, db = 0;
        for (int v : a) da += v;
        for (int v : b) db += v;
        if (da != db) return da < db;
        for (std::size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] > b[i];
        return false;
    }
};

using Mono = std::vector<int>;
using Poly = std::map<Mono, Rational, Grevlex>;

inline const Mono& lead(const Poly& p) { return p.rbegin()->first; }
inline const Rational& lead_coeff(const Poly& p) { return p.rbegin()->second; }

inline bool divides(const Mono& a, const Mono& b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline void add_scaled(Poly& p, const Poly& q, const Rational& c, const Mono& shift)
{
    for (const auto& [m, x] : q) {
        Mono s = m;
        for (std::size_t i = 0; i < s.size(); ++i) s[i] += shift[i];
        auto [it, fresh] = p.try_emplace(s, c * x);
        if (!fresh) {
            it->second += c * x;
            if (it->second == 0) p.erase(it);
        }
    }
}

inline void make_monic(Poly& p)
{
    if (p.empty()) return;
    Rational l = lead_coeff(p);
    for (auto& kv : p) kv.second /= l;
}

// Full reduction of f by the list g.
inline Poly reduce(Poly f, const std::vector<Poly>& g)
{
    Poly r;
    while (!f.empty()) {
        const Mono lm = lead(f);
        const Rational lc = lead_coeff(f);
        bool done = false;
        for (const auto& h : g) {
            if (h.empty() || !divides(lead(h), lm)) continue;
            Mono shift = lm;
            for (std::size_t i = 0; i < shift.size(); ++i) shift[i] -= lead(h)[i];
            add_scaled(f, h, -lc / lead_coeff(h), shift);
            done = true;
            break;
        }
        if (!done) {
            r.emplace(lm, lc);
            f.erase(std::prev(f.end()));
        }
    }
    return r;
}

// Buchberger with the coprime criterion.  Returns nothing when more than
// max_pairs S-polynomials would be needed.
inline std::optional<std::vector<Poly>> groebner(std::vector<Poly> input, std::size_t max_pairs)
{
    std::vector<Poly> g;
    for (auto& p : input)
        if (!p.empty()) {
            make_monic(p);
            g.push_back(std::move(p));
        }
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t j = 0; j < g.size(); ++j)
        for (std::size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);
    std::size_t done = 0;
    while (!pairs.empty()) {
        if (++done > max_pairs) return std::nullopt;
        auto lcm_of = [&](const std::pair<std::size_t, std::size_t>& pr) {
            Mono l = lead(g[pr.first]);
            const Mono& b = lead(g[pr.second]);
            for (std::size_t i = 0; i < l.size(); ++i) l[i] = std::max(l[i], b[i]);
            return l;
        };
        auto best = std::min_element(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
            return Grevlex{}(lcm_of(a), lcm_of(b));
        });
        auto [i, j] = *best;
        pairs.erase(best);
        const Mono& a = lead(g[i]);
        const Mono& b = lead(g[j]);
        bool coprime = true;
        for (std::size_t k = 0; k < a.size(); ++k)
            if (a[k] && b[k]) coprime = false;
        if (coprime) continue;
        Mono l = lcm_of({i, j});
        Mono sa = l, sb = l;
        for (std::size_t k = 0; k < l.size(); ++k) {
            sa[k] -= a[k];
            sb[k] -= b[k];
        }
        Poly s;
        add_scaled(s, g[i], 1, sa);
        add_scaled(s, g[j], -1, sb);
        Poly r = reduce(std::move(s), g);
        if (r.empty()) continue;
        make_monic(r);
        g.push_back(std::move(r));
        for (std::size_t k = 0; k + 1 < g.size(); ++k) pairs.emplace_back(k, g.size() - 1);
    }
    return g;
}

} // namespace hyperhodge::comm
