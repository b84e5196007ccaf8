#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lattice.hpp"
#include "linalg.hpp"

namespace hyperhodge {

struct Facet {
    IntVec normal;                // primitive, nonnegative on every column
    Integer weight;               // <normal, column sum>
    std::vector<std::size_t> columns; // columns lying on the facet

    bool operator==(const Facet&) const = default;
};

namespace detail {

inline IntVec primitive(const std::vector<Rational>& v)
{
    Integer l = 1;
    for (const auto& x : v) l = lcm(l, Integer(x.get_den()));
    IntVec out(v.size());
    Integer g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = Integer(v[i] * Rational(l));
        g = gcd(g, out[i]);
    }
    if (g > 1)
        for (auto& x : out) x /= g;
    return out;
}

// Solves B x = rhs for square B over Q; nothing when singular.
inline std::optional<std::vector<Rational>> solve(std::vector<std::vector<Rational>> B, std::vector<Rational> rhs)
{
    const std::size_t n = B.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && B[p][c] == 0) ++p;
        if (p == n) return std::nullopt;
        std::swap(B[p], B[c]);
        std::swap(rhs[p], rhs[c]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || B[i][c] == 0) continue;
            Rational f = B[i][c] / B[c][c];
            for (std::size_t j = c; j < n; ++j) B[i][j] -= f * B[c][j];
            rhs[i] -= f * rhs[c];
        }
    }
    for (std::size_t i = 0; i < n; ++i) rhs[i] /= B[i][i];
    return rhs;
}

} // namespace detail

// Facets of the cone spanned by the columns of A, as the extreme rays of the
// dual cone {y : A^T y >= 0} (double description, exact rationals).
inline std::vector<Facet> cone_facets(const IntMatrix& A)
{
    const std::size_t d = A.rows(), N = A.cols();
    if (matrix_rank(A) != d) throw ValidationError("cone is not full-dimensional");
    std::vector<IntVec> cons; // constraint rows a_j^T
    for (std::size_t j = 0; j < N; ++j) cons.push_back(A.column(j));

    // Initial simplicial cone from d independent constraints.
    std::vector<std::size_t> basis;
    {
        Echelon e;
        for (std::size_t j = 0; j < N && basis.size() < d; ++j) {
            SparseVec v;
            for (std::size_t i = 0; i < d; ++i)
                if (cons[j][i] != 0) v.emplace_back(i, Rational(cons[j][i]));
            if (e.insert(v)) basis.push_back(j);
        }
    }
    struct Ray {
        std::vector<Rational> v;
        std::set<std::size_t> zeros; // processed constraints tight at v
    };
    std::vector<Ray> rays;
    std::vector<std::vector<Rational>> B(d, std::vector<Rational>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) B[i][j] = cons[basis[i]][j];
    for (std::size_t k = 0; k < d; ++k) {
        std::vector<Rational> rhs(d, 0);
        rhs[k] = 1;
        auto x = detail::solve(B, rhs);
        Ray r{*x, {}};
        for (std::size_t i = 0; i < d; ++i)
            if (i != k) r.zeros.insert(basis[i]);
        rays.push_back(std::move(r));
    }
    std::set<std::size_t> processed(basis.begin(), basis.end());

    for (std::size_t j = 0; j < N; ++j) {
        if (processed.count(j)) continue;
        std::vector<Ray> pos, neg, zero;
        for (auto& r : rays) {
            Rational s = dot(cons[j], r.v);
            if (s > 0) pos.push_back(r);
            else if (s < 0) neg.push_back(r);
            else {
                r.zeros.insert(j);
                zero.push_back(r);
            }
        }
        std::vector<Ray> next = pos;
        next.insert(next.end(), zero.begin(), zero.end());
        const std::vector<Ray> old = [&] {
            std::vector<Ray> o = pos;
            o.insert(o.end(), neg.begin(), neg.end());
            o.insert(o.end(), zero.begin(), zero.end());
            return o;
        }();
        for (const auto& p : pos) {
            for (const auto& q : neg) {
                std::vector<std::size_t> common;
                std::set_intersection(p.zeros.begin(), p.zeros.end(), q.zeros.begin(), q.zeros.end(),
                                      std::back_inserter(common));
                if (common.size() + 2 < d) continue;
                // Adjacent iff no other ray is tight on all common constraints.
                bool adjacent = true;
                for (const auto& r : old) {
                    if (&r == &p || r.v == p.v || r.v == q.v) continue;
                    if (std::includes(r.zeros.begin(), r.zeros.end(), common.begin(), common.end())) {
                        adjacent = false;
                        break;
                    }
                }
                if (!adjacent) continue;
                Rational sp = dot(cons[j], p.v), sq = dot(cons[j], q.v);
                Ray r;
                r.v.resize(d);
                for (std::size_t i = 0; i < d; ++i) r.v[i] = sp * q.v[i] - sq * p.v[i];
                r.zeros.insert(common.begin(), common.end());
                r.zeros.insert(j);
                next.push_back(std::move(r));
            }
        }
        rays = std::move(next);
        processed.insert(j);
    }

    IntVec csum(d, 0);
    for (std::size_t j = 0; j < N; ++j)
        for (std::size_t i = 0; i < d; ++i) csum[i] += A.at(i, j);

    std::map<IntVec, Facet> uniq;
    for (const auto& r : rays) {
        IntVec n = detail::primitive(r.v);
        if (std::all_of(n.begin(), n.end(), [](const Integer& x) { return x == 0; })) continue;
        Facet f{n, dot(n, csum), {}};
        for (std::size_t j = 0; j < N; ++j)
            if (dot(n, cons[j]) == 0) f.columns.push_back(j);
        uniq.emplace(n, std::move(f));
    }
    std::vector<Facet> out;
    for (auto& [k, f] : uniq) out.push_back(std::move(f));
    std::sort(out.begin(), out.end(), [](const Facet& a, const Facet& b) { return a.normal > b.normal; });
    return out;
}

// Admissible parameters: -1 < <n_F, x> <= 0 for every facet F.
struct AdmissibleRegion {
    std::size_t dim = 0;
    std::vector<Facet> facets;

    bool contains(const std::vector<Rational>& x) const { return !violated_facet(x).has_value(); }

    std::optional<std::size_t> violated_facet(const std::vector<Rational>& x) const
    {
        if (x.size() != dim) throw ValidationError("parameter vector has wrong length");
        for (std::size_t f = 0; f < facets.size(); ++f) {
            Rational s = dot(facets[f].normal, x);
            if (!(s > -1 && s <= 0)) return f;
        }
        return std::nullopt;
    }
};

inline AdmissibleRegion admissible_region(const IntMatrix& A) { return {A.rows(), cone_facets(A)}; }

// Box [lo, hi] containing the closure of the region, when the normals span.
struct RegionBox {
    bool bounded = false;
    std::vector<Rational> lo, hi;
};

inline RegionBox region_box(const AdmissibleRegion& R)
{
    const std::size_t d = R.dim;
    RegionBox box;
    box.lo.assign(d, 0);
    box.hi.assign(d, 0);
    if (d == 0) {
        box.bounded = true;
        return box;
    }
    {
        Echelon e;
        std::size_t rk = 0;
        for (const auto& f : R.facets) {
            SparseVec v;
            for (std::size_t i = 0; i < d; ++i)
                if (f.normal[i] != 0) v.emplace_back(i, Rational(f.normal[i]));
            rk += e.insert(v);
        }
        if (rk < d) return box;
    }
    // Vertices of {-1 <= <n_F, x> <= 0}: choose d facets and a side for each.
    const std::size_t F = R.facets.size();
    std::vector<std::size_t> pick(d);
    bool any = false;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
        if (depth == d) {
            std::vector<std::vector<Rational>> B(d, std::vector<Rational>(d));
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) B[i][j] = R.facets[pick[i]].normal[j];
            for (std::size_t mask = 0; mask < (std::size_t(1) << d); ++mask) {
                std::vector<Rational> rhs(d);
                for (std::size_t i = 0; i < d; ++i) rhs[i] = (mask >> i) & 1 ? -1 : 0;
                auto x = detail::solve(B, rhs);
                if (!x) return;
                bool inside = true;
                for (const auto& f : R.facets) {
                    Rational s = dot(f.normal, *x);
                    if (s < -1 || s > 0) inside = false;
                }
                if (!inside) continue;
                for (std::size_t i = 0; i < d; ++i) {
                    if (!any || (*x)[i] < box.lo[i]) box.lo[i] = (*x)[i];
                    if (!any || (*x)[i] > box.hi[i]) box.hi[i] = (*x)[i];
                }
                if (!any) {
                    any = true;
                    for (std::size_t i = 0; i < d; ++i) box.lo[i] = box.hi[i] = (*x)[i];
                }
            }
            return;
        }
        for (std::size_t f = start; f < F; ++f) {
            pick[depth] = f;
            rec(f + 1, depth + 1);
        }
    };
    rec(0, 0);
    box.bounded = any;
    return box;
}

// Precomputed region plus search window, for repeated shifted-membership queries.
struct ShiftSearch {
    AdmissibleRegion region;
    RegionBox box;

    explicit ShiftSearch(const IntMatrix& A) : region(admissible_region(A)), box(region_box(region)) {}
    explicit ShiftSearch(AdmissibleRegion r) : region(std::move(r)), box(region_box(region)) {}

    // Smallest k in N^d (lexicographic) with beta - k admissible.
    std::optional<std::vector<Integer>> find(const std::vector<Rational>& beta) const
    {
        const std::size_t d = region.dim;
        if (beta.size() != d) throw ValidationError("parameter vector has wrong length");
        if (region.facets.empty()) return std::vector<Integer>(d, 0);
        if (!box.bounded) throw ValidationError("admissible region is unbounded; shift search is not finite");
        // beta - k in [lo, hi]  =>  k in [beta - hi, beta - lo].
        std::vector<Integer> klo(d), khi(d);
        for (std::size_t i = 0; i < d; ++i) {
            klo[i] = ceil_of(beta[i] - box.hi[i]);
            if (klo[i] < 0) klo[i] = 0;
            khi[i] = floor_of(beta[i] - box.lo[i]);
            if (khi[i] < klo[i]) return std::nullopt;
        }
        std::vector<Integer> k = klo;
        std::vector<Rational> x(d);
        while (true) {
            for (std::size_t i = 0; i < d; ++i) x[i] = beta[i] - Rational(k[i]);
            if (region.contains(x)) return k;
            // Odometer with the last coordinate fastest, giving lexicographic order.
            std::size_t i = d;
            while (i > 0) {
                --i;
                if (k[i] < khi[i]) {
                    ++k[i];
                    for (std::size_t j = i + 1; j < d; ++j) k[j] = klo[j];
                    break;
                }
                if (i == 0) return std::nullopt;
            }
            if (d == 0) return std::nullopt;
        }
    }
};

inline std::optional<std::vector<Integer>> in_shifted_admissible(const IntMatrix& A, const std::vector<Rational>& beta)
{
    return ShiftSearch(A).find(beta);
}

// Closed-form test for the family matrix, with p in [0,1)^m and q in [0,1)^(n-1).
inline bool lemma_raute_membership(std::size_t m, std::size_t n, const std::vector<Rational>& p,
                                   const std::vector<Rational>& q)
{
    if (p.size() != m || q.size() + 1 != n) throw ValidationError("closed-form membership: wrong parameter lengths");
    for (const auto* v : {&p, &q})
        for (const auto& x : *v)
            if (x < 0 || x >= 1) throw ValidationError("closed-form membership: parameters must lie in [0,1)");
    bool has_zero = false;
    Rational pminus = 1, pplus = 0;
    for (const auto& x : p) {
        if (x == 0) has_zero = true;
        else if (x < pminus) pminus = x;
        if (x > pplus) pplus = x;
    }
    for (const auto& x : q) {
        bool low = x < pminus;
        if (has_zero ? !low : !(low || x >= pplus)) return false;
    }
    return true;
}

struct SaturationResult {
    enum class Status { saturated_to_radius, counterexample, inconclusive } status = Status::inconclusive;
    std::vector<Integer> point; // counterexample
    long radius = 0;
    std::string note;
};

// Looks for lattice points of the cone with |x_i| <= radius outside NA.
inline SaturationResult check_saturation_bounded(const IntMatrix& A, long radius)
{
    if (radius < 1) throw ValidationError("radius must be at least 1");
    const std::size_t d = A.rows(), N = A.cols();
    auto facets = cone_facets(A);
    SaturationResult res;
    res.radius = radius;

    // Positive functional: sum of facet normals, if it is positive on all columns.
    IntVec f(d, 0);
    for (const auto& F : facets)
        for (std::size_t i = 0; i < d; ++i) f[i] += F.normal[i];
    bool pointed = !facets.empty();
    for (std::size_t j = 0; j < N && pointed; ++j)
        if (dot(f, A.column(j)) <= 0) pointed = false;

    // Cone points in the box.
    std::vector<IntVec> targets;
    IntVec x(d, -radius);
    while (true) {
        bool in = true;
        for (const auto& F : facets)
            if (dot(F.normal, x) < 0) in = false;
        if (in) targets.push_back(x);
        std::size_t i = 0;
        while (i < d && x[i] == radius) x[i++] = -radius;
        if (i == d) break;
        ++x[i];
    }

    // Points of NA reachable without leaving the search region.
    Integer fmax = 0;
    long cap = radius;
    if (pointed) {
        for (const auto& t : targets) fmax = std::max(fmax, dot(f, t));
    } else {
        cap = 2 * radius;
        res.note = "cone is not pointed; NA was explored inside a box of radius " + std::to_string(cap);
    }
    std::set<IntVec> seen{IntVec(d, 0)};
    std::vector<IntVec> stack{IntVec(d, 0)};
    while (!stack.empty()) {
        IntVec p = stack.back();
        stack.pop_back();
        for (std::size_t j = 0; j < N; ++j) {
            IntVec q = p;
            for (std::size_t i = 0; i < d; ++i) q[i] += A.at(i, j);
            if (pointed) {
                if (dot(f, q) > fmax) continue;
            } else {
                bool ok = true;
                for (const auto& v : q)
                    if (abs(v) > cap) ok = false;
                if (!ok) continue;
            }
            if (seen.insert(q).second) stack.push_back(q);
        }
    }
    for (const auto& t : targets) {
        if (seen.count(t)) continue;
        if (pointed) {
            res.status = SaturationResult::Status::counterexample;
            res.point = t;
            return res;
        }
        res.status = SaturationResult::Status::inconclusive;
        res.point = t;
        return res;
    }
    res.status = SaturationResult::Status::saturated_to_radius;
    if (res.note.empty()) res.note = "checked up to radius " + std::to_string(radius) + " only";
    return res;
}

} // namespace hyperhodge
