#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ideal.hpp"
#include "linalg.hpp"
#include "presentation.hpp"

namespace hyperhodge {

struct EliminationResult {
    bool conclusive = false;
    Presentation presentation; // over the base signature
    int bound = 0;
    int rank_estimate = 0;
    std::size_t rows = 0;       // cofactor rows generated
    std::size_t components = 0; // homogeneous pieces solved separately
    std::size_t span_dim = 0;   // dimension of the base part found
    std::string reason;
};

namespace detail {

// Integer-valued gradings for which every generator is homogeneous and the
// commutation relations are respected.  Each grading is a weight per slot.
inline std::vector<std::vector<Rational>> homogeneous_gradings(const Presentation& p)
{
    const auto& s = *p.signature;
    const std::size_t w = s.width();
    std::vector<std::vector<Rational>> rows;
    auto unit = [&](std::initializer_list<std::pair<std::size_t, int>> entries) {
        std::vector<Rational> r(w, 0);
        for (auto [i, v] : entries) r[i] += v;
        rows.push_back(std::move(r));
    };
    if (s.classical) unit({{OreSignature::z_slot, 1}});
    for (std::size_t i = 0; i < s.nvars(); ++i) unit({{s.theta_slot(i), 1}, {s.x_slot(i), 1}, {OreSignature::z_slot, -1}});
    if (s.has_z2dz) unit({{s.e_slot(), 1}, {OreSignature::z_slot, -1}});
    else unit({{s.e_slot(), 1}});
    for (const auto& g : p.generators) {
        if (g.size() < 2) continue;
        const Exponents& e0 = g.terms().begin()->first;
        for (const auto& [e, c] : g.terms()) {
            std::vector<Rational> r(w, 0);
            bool nz = false;
            for (std::size_t i = 0; i < w; ++i) {
                r[i] = e[i] - e0[i];
                nz = nz || e[i] != e0[i];
            }
            if (nz) rows.push_back(std::move(r));
        }
    }
    return nullspace(rows, w);
}

inline std::vector<Rational> grade(const std::vector<std::vector<Rational>>& gr, const Exponents& e)
{
    std::vector<Rational> d(gr.size(), 0);
    for (std::size_t k = 0; k < gr.size(); ++k)
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i]) d[k] += gr[k][i] * e[i];
    return d;
}

struct GradeLess {
    bool operator()(const std::vector<Rational>& a, const std::vector<Rational>& b) const
    {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

} // namespace detail

// Projection R -> R / sum_k th_{w_k} R onto theta_w-free monomials:
//   w^b th_w^g  ->  (-1)^g falling(b, g) z^g w^(b-g).
inline OrePoly project_fibre_thetas(const OrePoly& p, const std::vector<std::size_t>& fibre)
{
    const auto& s = *p.signature();
    OrePoly out(p.signature());
    for (const auto& [e, c] : p.terms()) {
        Exponents f = e;
        Rational k = c;
        for (std::size_t i : fibre) {
            int g = e[s.theta_slot(i)];
            if (g == 0) continue;
            Integer fl = falling(e[s.x_slot(i)], g);
            if (fl == 0) {
                k = 0;
                break;
            }
            k *= Rational(g % 2 ? -fl : fl);
            if (!s.classical) f[OreSignature::z_slot] += g;
            f[s.x_slot(i)] -= g;
            f[s.theta_slot(i)] = 0;
        }
        if (k != 0) out.add_term(f, k);
    }
    return out;
}

// Left-multiplies by a monomial in the invertible variables so that every such
// exponent is >= 0 with at least one term at 0, and scales the leading term to 1.
inline OrePoly normalize_units(const OrePoly& p)
{
    if (p.is_zero()) return p;
    const auto& s = *p.signature();
    Exponents shift(s.width(), 0);
    for (std::size_t i = 0; i < s.nvars(); ++i) {
        if (!s.invertible[i]) continue;
        int lo = 0;
        bool first = true;
        for (const auto& [e, c] : p.terms()) {
            lo = first ? e[s.x_slot(i)] : std::min(lo, e[s.x_slot(i)]);
            first = false;
        }
        shift[s.x_slot(i)] = -lo;
    }
    Rational lead = p.leading().second;
    OrePoly out(p.signature());
    // Base variables sit left of all thetas, so the shift only moves exponents.
    for (const auto& [e, c] : p.terms()) {
        Exponents f = e;
        for (std::size_t i = 0; i < s.width(); ++i) f[i] += shift[i];
        out.add_term(f, c / lead);
    }
    return out;
}

namespace detail {

// Unit monomial u (constant times invertible variables) if q is one.
inline std::optional<OrePoly> unit_inverse(const OrePoly& q)
{
    if (q.size() != 1) return std::nullopt;
    const auto& s = *q.signature();
    const auto& [e, c] = *q.terms().begin();
    Exponents inv(s.width(), 0);
    for (std::size_t i = 0; i < s.width(); ++i) {
        if (e[i] == 0) continue;
        bool xs = i >= 1 && i <= s.nvars();
        if (!xs || !s.invertible[i - 1]) return std::nullopt;
        inv[i] = -e[i];
    }
    return OrePoly::monomial(q.signature(), inv, 1 / c);
}

inline int theta_order(const OreSignature& s, const Exponents& e)
{
    int o = 0;
    for (std::size_t i = 0; i < s.nvars(); ++i) o += e[s.theta_slot(i)];
    return o;
}

// Monic form g = E + R of an Euler-type element (z2dz-degree 1 with unit coefficient).
inline std::optional<OrePoly> monic_euler(const OrePoly& g)
{
    const auto& s = *g.signature();
    if (!s.has_z2dz || g.degree_in(s.e_slot()) != 1) return std::nullopt;
    OrePoly coeff(g.signature());
    for (const auto& [e, c] : g.terms())
        if (e[s.e_slot()] == 1) {
            Exponents f = e;
            f[s.e_slot()] = 0;
            coeff.add_term(f, c);
        }
    auto u = unit_inverse(coeff);
    if (!u) return std::nullopt;
    return *u * g;
}

// Removes every z2dz from q using a monic Euler element E + R.
inline OrePoly eliminate_euler(OrePoly q, const OrePoly& euler)
{
    const auto& s = *q.signature();
    while (true) {
        const Exponents* top = nullptr;
        Rational c;
        for (const auto& [e, x] : q.terms())
            if (e[s.e_slot()] > 0 && (!top || e[s.e_slot()] > (*top)[s.e_slot()])) {
                top = &e;
                c = x;
            }
        if (!top) return q;
        Exponents m = *top;
        m[s.e_slot()] -= 1;
        q -= OrePoly::monomial(q.signature(), m, c) * euler;
    }
}

// Monic divisor u^{-1} h whose top theta part is the single monomial theta^c.
inline std::optional<OrePoly> monic_divisor(const OrePoly& h)
{
    const auto& s = *h.signature();
    if (h.is_zero() || h.degree_in(s.e_slot()) != 0) return std::nullopt;
    int ord = 0;
    for (const auto& [e, c] : h.terms()) ord = std::max(ord, theta_order(s, e));
    if (ord == 0) return std::nullopt;
    OrePoly top(h.signature());
    for (const auto& [e, c] : h.terms())
        if (theta_order(s, e) == ord) top.add_term(e, c);
    if (top.size() != 1) return std::nullopt;
    Exponents coeff = top.terms().begin()->first;
    for (std::size_t i = 0; i < s.nvars(); ++i) coeff[s.theta_slot(i)] = 0;
    auto u = unit_inverse(OrePoly::monomial(h.signature(), coeff, top.terms().begin()->second));
    if (!u) return std::nullopt;
    return *u * h;
}

// Remainder of a z2dz-free q after division by a monic divisor.
inline OrePoly divide_out(OrePoly q, const OrePoly& d)
{
    const auto& s = *q.signature();
    Exponents lead;
    int ord = 0;
    for (const auto& [e, c] : d.terms()) ord = std::max(ord, theta_order(s, e));
    for (const auto& [e, c] : d.terms())
        if (theta_order(s, e) == ord) lead = e;
    OrePoly rem(q.signature());
    while (!q.is_zero()) {
        // Highest theta order first.
        const Exponents* top = nullptr;
        Rational c;
        for (const auto& [e, x] : q.terms())
            if (!top || theta_order(s, e) > theta_order(s, *top)) {
                top = &e;
                c = x;
            }
        Exponents e = *top;
        bool divisible = true;
        for (std::size_t i = 0; i < s.nvars(); ++i)
            if (e[s.theta_slot(i)] < lead[s.theta_slot(i)]) divisible = false;
        if (!divisible) {
            rem.add_term(e, c);
            q.add_term(e, -c);
            continue;
        }
        Exponents m = e;
        for (std::size_t i = 0; i < s.nvars(); ++i) m[s.theta_slot(i)] -= lead[s.theta_slot(i)];
        m[OreSignature::z_slot] = e[OreSignature::z_slot];
        q -= OrePoly::monomial(q.signature(), m, c) * d;
    }
    return rem;
}

} // namespace detail

// Rewrites a generating set into a small equivalent one: an Euler element is
// used to clear z2dz from the others, and the lowest-order element with a unit
// leading coefficient divides the rest.  The generated left ideal is unchanged.
inline std::vector<OrePoly> simplify_generators(std::vector<OrePoly> gens)
{
    if (gens.empty()) return gens;
    std::vector<OrePoly> out;
    auto by_size = [](const OrePoly& a, const OrePoly& b) {
        if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
        return a.size() < b.size();
    };
    std::sort(gens.begin(), gens.end(), by_size);

    std::optional<OrePoly> euler;
    for (const auto& g : gens)
        if ((euler = detail::monic_euler(g))) break;
    if (euler) {
        out.push_back(normalize_units(*euler));
        for (auto& g : gens) g = detail::eliminate_euler(g, *euler);
    }

    std::optional<OrePoly> divisor;
    {
        const auto& s = *gens.front().signature();
        int best = -1;
        for (const auto& g : gens) {
            auto d = detail::monic_divisor(g);
            if (!d) continue;
            int ord = 0;
            for (const auto& [e, c] : d->terms()) ord = std::max(ord, detail::theta_order(s, e));
            if (best < 0 || ord < best || (ord == best && d->size() < divisor->size())) {
                best = ord;
                divisor = d;
            }
        }
    }
    if (divisor) {
        out.push_back(normalize_units(*divisor));
        for (auto& g : gens) g = detail::divide_out(g, *divisor);
    }
    for (auto& g : gens) {
        if (g.is_zero()) continue;
        OrePoly h = normalize_units(g);
        if (std::find(out.begin(), out.end(), h) == out.end()) out.push_back(std::move(h));
    }
    return out;
}

// Annihilator of the class of 1 in the cokernel M / sum_k th_{w_k} M, computed
// from cofactors up to total degree `bound`.  The result is a lower
// approximation of the true annihilator; `conclusive` reports whether it has
// the expected shape (an Euler-type generator and a low-order operator).
inline EliminationResult derham_eliminate(const Presentation& p, const std::vector<std::string>& fibre_vars, int bound,
                                          int minimize_bound = -1)
{
    const auto& s = *p.signature;
    if (minimize_bound < 0) minimize_bound = bound;

    std::vector<std::size_t> fibre;
    std::vector<bool> is_fibre(s.nvars(), false);
    for (const auto& v : fibre_vars) {
        std::size_t i = s.index(v);
        fibre.push_back(i);
        is_fibre[i] = true;
    }
    std::vector<std::string> base_vars, base_inv;
    for (std::size_t i = 0; i < s.nvars(); ++i) {
        if (is_fibre[i]) continue;
        base_vars.push_back(s.base_vars[i]);
        if (s.invertible[i]) base_inv.push_back(s.base_vars[i]);
    }
    SigPtr base = make_signature(base_vars, base_inv, s.has_z2dz, s.classical);

    EliminationResult res;
    res.bound = bound;
    res.presentation = Presentation(base);

    auto gradings = detail::homogeneous_gradings(p);

    // Cofactors never need a fibre theta: it is killed on the left by the projection.
    auto ranges = default_ranges(s, bound);
    for (std::size_t i : fibre) ranges[s.theta_slot(i)] = {0, 0};
    auto monos = enumerate_monomials(ranges, bound);

    std::map<std::vector<Rational>, std::vector<OrePoly>, detail::GradeLess> pieces;
    for (const auto& g : p.generators) {
        for (const auto& mu : monos) {
            OrePoly row = project_fibre_thetas(OrePoly::monomial(p.signature, mu) * g, fibre);
            if (row.is_zero()) continue;
            auto key = detail::grade(gradings, row.terms().begin()->first);
            pieces[key].push_back(std::move(row));
            ++res.rows;
        }
    }
    res.components = pieces.size();

    auto has_fibre = [&](const Exponents& e) {
        for (std::size_t i : fibre)
            if (e[s.x_slot(i)] != 0) return true;
        return false;
    };
    auto to_base = [&](const OrePoly& q) {
        OrePoly out(base);
        for (const auto& [e, c] : q.terms()) {
            Exponents f(base->width(), 0);
            f[OreSignature::z_slot] = e[OreSignature::z_slot];
            for (std::size_t i = 0; i < s.nvars(); ++i) {
                if (is_fibre[i]) continue;
                std::size_t j = base->index(s.base_vars[i]);
                f[base->x_slot(j)] = e[s.x_slot(i)];
                f[base->theta_slot(j)] = e[s.theta_slot(i)];
            }
            f[base->e_slot()] = e[s.e_slot()];
            out.add_term(f, c);
        }
        return out;
    };

    std::vector<OrePoly> found;
    for (auto& [key, rows] : pieces) {
        // Columns: monomials involving fibre variables come first so that the
        // rows whose leading column is fibre-free span the intersection with R_base.
        std::vector<Exponents> cols;
        {
            std::set<Exponents, TermOrder> seen;
            for (const auto& r : rows)
                for (const auto& kv : r.terms()) seen.insert(kv.first);
            cols.assign(seen.begin(), seen.end());
        }
        std::stable_sort(cols.begin(), cols.end(), [&](const Exponents& a, const Exponents& b) {
            bool fa = has_fibre(a), fb = has_fibre(b);
            if (fa != fb) return fa;
            int da = OrePoly::degree_of(a), db = OrePoly::degree_of(b);
            if (da != db) return da > db;
            return TermOrder{}(b, a);
        });
        std::map<Exponents, std::size_t, TermOrder> colid;
        for (std::size_t i = 0; i < cols.size(); ++i) colid.emplace(cols[i], i);
        std::size_t first_free = cols.size();
        for (std::size_t i = 0; i < cols.size(); ++i)
            if (!has_fibre(cols[i])) {
                first_free = i;
                break;
            }
        if (first_free == cols.size()) continue;

        std::sort(rows.begin(), rows.end(), [](const OrePoly& a, const OrePoly& b) { return a.size() < b.size(); });
        Echelon ech;
        for (const auto& r : rows) {
            std::map<std::size_t, Rational> m;
            for (const auto& [e, c] : r.terms()) m.emplace(colid.at(e), c);
            ech.insert(to_sparse(m));
        }
        for (const auto& row : ech.rows()) {
            if (row.front().first < first_free) continue;
            OrePoly q(p.signature);
            for (const auto& [c, x] : row) q.add_term(cols[c], x);
            found.push_back(to_base(q));
        }
    }
    res.span_dim = found.size();

    found = simplify_generators(std::move(found));

    // Greedy choice of generators: keep an element only when the ideal of the
    // kept ones (cofactors up to minimize_bound) does not already contain it.
    auto base_monos = enumerate_monomials(default_ranges(*base, minimize_bound), minimize_bound);
    ColumnIndex cols;
    Echelon kept_span;
    for (const auto& q : found) {
        if (kept_span.contains(cols.vec(q))) continue;
        res.presentation.add(q);
        for (const auto& mu : base_monos) kept_span.insert(cols.vec(OrePoly::monomial(base, mu) * q));
    }

    // Rank estimate: largest degree of a generator purely in the fibre variables.
    int rank = 0;
    for (const auto& g : p.generators) {
        bool pure = !g.is_zero();
        for (const auto& [e, c] : g.terms()) {
            for (std::size_t i = 0; i < s.width(); ++i) {
                bool fibre_x = false;
                for (std::size_t f : fibre) fibre_x = fibre_x || i == s.x_slot(f);
                if (e[i] != 0 && !fibre_x) pure = false;
            }
        }
        if (pure) rank = std::max(rank, g.total_degree());
    }
    if (rank == 0) rank = bound;
    res.rank_estimate = std::min(rank, bound);

    bool euler_ok = !s.has_z2dz;
    bool order_ok = base->nvars() == 0;
    for (const auto& g : res.presentation.generators) {
        if (s.has_z2dz && g.degree_in(base->e_slot()) == 1) euler_ok = true;
        if (g.degree_in(base->e_slot()) == 0) {
            int ord = 0;
            bool moves = false; // involves a base variable or theta, so it is not a power of z
            for (const auto& [e, c] : g.terms()) {
                int o = 0;
                for (std::size_t i = 0; i < base->nvars(); ++i) {
                    o += e[base->theta_slot(i)];
                    moves = moves || e[base->x_slot(i)] != 0 || e[base->theta_slot(i)] != 0;
                }
                ord = std::max(ord, o);
            }
            // Order 0 is a function annihilator, as for modules supported on a subvariety.
            if (moves && ord <= res.rank_estimate) order_ok = true;
        }
    }
    res.conclusive = euler_ok && order_ok;
    if (!euler_ok) res.reason = "no Euler-type generator found at this bound";
    else if (!order_ok) res.reason = "no operator of order at most the rank estimate found at this bound";
    res.presentation.metadata = p.metadata;
    res.presentation.metadata["elimination_bound"] = std::to_string(bound);
    return res;
}

} // namespace hyperhodge
