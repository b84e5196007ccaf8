#pragma once

#include <algorithm>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "cone.hpp"
#include "lattice.hpp"
#include "presentation.hpp"
#include "transforms.hpp"

namespace hyperhodge {

// [1_m | 0 | Id_m ; 1_{n-1} | -Id_{n-1} | 0], of size (N-1) x N with N = n + m.
inline IntMatrix family_matrix(std::size_t n, std::size_t m)
{
    if (n < 1 || n + m < 2) throw ValidationError("family_matrix needs n >= 1 and n + m >= 2");
    const std::size_t N = n + m;
    IntMatrix A(N - 1, N);
    for (std::size_t j = 0; j < m; ++j) {
        A.at(j, 0) = 1;
        A.at(j, n + j) = 1;
    }
    for (std::size_t i = 1; i < n; ++i) {
        A.at(m + i - 1, 0) = 1;
        A.at(m + i - 1, i) = -1;
    }
    return A;
}

struct BoxGeneratorSet {
    std::vector<IntVec> ells;
    long bound = 0;
};

// Kernel vectors with |l|_1 <= bound (up to sign), plus a kernel basis.
inline BoxGeneratorSet build_box_generators(const IntMatrix& A, long bound)
{
    BoxGeneratorSet out;
    out.bound = bound;
    const std::size_t N = A.cols();
    auto basis = kernel_basis(A);
    if (basis.empty()) return out;
    auto norm1 = [](const IntVec& v) {
        Integer s = 0;
        for (const auto& x : v) s += abs(x);
        return s;
    };
    std::set<IntVec> uniq(basis.begin(), basis.end());
    IntVec l(N, 0);
    std::function<void(std::size_t, long)> rec = [&](std::size_t i, long left) {
        if (i == N) {
            bool zero = std::all_of(l.begin(), l.end(), [](const Integer& x) { return x == 0; });
            if (zero) return;
            for (std::size_t r = 0; r < A.rows(); ++r)
                if (dot(A.entries[r], l) != 0) return;
            uniq.insert(canonical_sign(l));
            return;
        }
        for (long v = -left; v <= left; ++v) {
            l[i] = v;
            rec(i + 1, left - (v < 0 ? -v : v));
        }
        l[i] = 0;
    };
    rec(0, bound);
    out.ells.assign(uniq.begin(), uniq.end());
    std::sort(out.ells.begin(), out.ells.end(), [&](const IntVec& a, const IntVec& b) {
        Integer na = norm1(a), nb = norm1(b);
        if (na != nb) return na < nb;
        return a > b;
    });
    return out;
}

inline std::vector<std::string> numbered(const std::string& stem, std::size_t n)
{
    std::vector<std::string> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(stem + std::to_string(i + 1));
    return v;
}

namespace detail {

inline void check_gkz(const IntMatrix& A, const std::vector<Rational>& beta)
{
    if (beta.size() != A.rows()) throw ValidationError("beta must have one entry per row of A");
    if (!check_full_lattice(A)) throw ValidationError("the columns of A must generate Z^d");
}

// prod_i s_i^{l_i^+} - prod_i s_i^{l_i^-} with s_i = var(i) or theta(i).
inline OrePoly binomial_op(const SigPtr& sig, const IntVec& l, bool thetas)
{
    Exponents plus(sig->width(), 0), minus(sig->width(), 0);
    for (std::size_t i = 0; i < l.size(); ++i) {
        int v = static_cast<int>(to_long(l[i]));
        std::size_t slot = thetas ? sig->theta_slot(i) : sig->x_slot(i);
        if (v > 0) plus[slot] = v;
        else minus[slot] = -v;
    }
    return OrePoly::monomial(sig, plus) - OrePoly::monomial(sig, minus);
}

inline long default_box_bound(const IntMatrix& A)
{
    long b = 0;
    for (const auto& l : kernel_basis(A)) {
        long s = 0;
        for (const auto& x : l) s += to_long(abs(x));
        b = std::max(b, s);
    }
    return b;
}

} // namespace detail

// Classical lambda-side system: E_k = sum_i a_ki lam_i d_i - beta_k and the boxes.
inline Presentation build_M(const IntMatrix& A, const std::vector<Rational>& beta, long box_bound = -1)
{
    detail::check_gkz(A, beta);
    if (box_bound < 0) box_bound = detail::default_box_bound(A);
    auto vars = numbered("lam", A.cols());
    SigPtr sig = make_signature(vars, {}, false, true);
    Presentation p(sig);
    for (std::size_t k = 0; k < A.rows(); ++k) {
        OrePoly e(sig, -beta[k]);
        for (std::size_t i = 0; i < A.cols(); ++i)
            if (A.at(k, i) != 0)
                e += Rational(A.at(k, i)) * (OrePoly::var(sig, vars[i]) * OrePoly::theta(sig, vars[i]));
        p.add(e);
    }
    for (const auto& l : build_box_generators(A, box_bound).ells) p.add(detail::binomial_op(sig, l, true));
    p.metadata["box_bound"] = std::to_string(box_bound);
    return p;
}

// Classical w-side system: E_k = sum_i a_ki d_{w_i} w_i + beta_k and w-binomials.
inline Presentation build_check_M(const IntMatrix& A, const std::vector<Rational>& beta, long box_bound = -1)
{
    detail::check_gkz(A, beta);
    if (box_bound < 0) box_bound = detail::default_box_bound(A);
    auto vars = numbered("w", A.cols());
    SigPtr sig = make_signature(vars, {}, false, true);
    Presentation p(sig);
    for (std::size_t k = 0; k < A.rows(); ++k) {
        OrePoly e(sig, beta[k]);
        for (std::size_t i = 0; i < A.cols(); ++i)
            if (A.at(k, i) != 0)
                e += Rational(A.at(k, i)) * (OrePoly::theta(sig, vars[i]) * OrePoly::var(sig, vars[i]));
        p.add(e);
    }
    for (const auto& l : build_box_generators(A, box_bound).ells) p.add(detail::binomial_op(sig, l, false));
    p.metadata["box_bound"] = std::to_string(box_bound);
    return p;
}

// Order-filtration homogenization of a classical presentation: in the normal
// form, a term with derivative order c of a generator of order r gets z^(r-c)
// and d becomes theta = z d.  Optionally attaches z^2 d/dz - z.
inline Presentation rees_homogenize(const Presentation& p, bool attach_z2dz_minus_z = false)
{
    const auto& s = *p.signature;
    if (!s.classical) throw SignatureError("rees_homogenize expects a classical presentation");
    std::vector<std::string> inv;
    for (std::size_t i = 0; i < s.nvars(); ++i)
        if (s.invertible[i]) inv.push_back(s.base_vars[i]);
    SigPtr t = make_signature(s.base_vars, inv, true);
    Presentation out(t);
    auto order = [&](const Exponents& e) {
        int o = 0;
        for (std::size_t i = 0; i < s.nvars(); ++i) o += e[s.theta_slot(i)];
        return o;
    };
    for (const auto& g : p.generators) {
        int r = 0;
        for (const auto& [e, c] : g.terms()) r = std::max(r, order(e));
        OrePoly h(t);
        for (const auto& [e, c] : g.terms()) {
            Exponents f(t->width(), 0);
            for (std::size_t i = 0; i < s.width(); ++i) f[i] = e[i];
            f[OreSignature::z_slot] = r - order(e);
            h.add_term(f, c);
        }
        out.add(h);
    }
    if (attach_z2dz_minus_z) out.add(OrePoly::z2dz(t) - OrePoly::z(t));
    out.metadata = p.metadata;
    return out;
}

// Sets z = 1; fails on generators that involve z^2 d/dz.
inline Presentation restrict_z_to_one(const Presentation& p)
{
    const auto& s = *p.signature;
    if (s.classical) return p;
    std::vector<std::string> inv;
    for (std::size_t i = 0; i < s.nvars(); ++i)
        if (s.invertible[i]) inv.push_back(s.base_vars[i]);
    SigPtr t = make_signature(s.base_vars, inv, false, true);
    Presentation out(t);
    for (const auto& g : p.generators) {
        OrePoly h(t);
        for (const auto& [e, c] : g.terms()) {
            if (e[s.e_slot()] != 0) throw ValidationError("cannot set z = 1 in an operator with z^2 d/dz");
            Exponents f = e;
            f[OreSignature::z_slot] = 0;
            h.add_term(f, c);
        }
        out.add(h);
    }
    out.metadata = p.metadata;
    return out;
}

// The z-homogenized w-side system, with the Hodge shift N - d recorded.
inline Presentation build_check_N(const IntMatrix& A, const std::vector<Rational>& beta, bool attach_z2dz_minus_z,
                                  long box_bound = -1)
{
    Presentation p = rees_homogenize(build_check_M(A, beta, box_bound), attach_z2dz_minus_z);
    p.metadata["hodge_shift"] = std::to_string(A.cols() - A.rows());
    return p;
}

// Integrable lambda-side system: E_0 = z2dz + sum lam_i th_i, E_k = sum a_ki lam_i th_i - z beta_k,
// boxes prod th^{l+} - prod th^{l-}.
inline Presentation build_N(const IntMatrix& A, const std::vector<Rational>& beta, long box_bound = -1)
{
    detail::check_gkz(A, beta);
    if (box_bound < 0) box_bound = detail::default_box_bound(A);
    auto vars = numbered("lam", A.cols());
    SigPtr sig = make_signature(vars, {}, true);
    Presentation p(sig);
    OrePoly e0 = OrePoly::z2dz(sig);
    for (const auto& v : vars) e0 += OrePoly::var(sig, v) * OrePoly::theta(sig, v);
    p.add(e0);
    for (std::size_t k = 0; k < A.rows(); ++k) {
        OrePoly e = -beta[k] * OrePoly::z(sig);
        for (std::size_t i = 0; i < A.cols(); ++i)
            if (A.at(k, i) != 0)
                e += Rational(A.at(k, i)) * (OrePoly::var(sig, vars[i]) * OrePoly::theta(sig, vars[i]));
        p.add(e);
    }
    for (const auto& l : build_box_generators(A, box_bound).ells) p.add(detail::binomial_op(sig, l, true));
    p.metadata["box_bound"] = std::to_string(box_bound);
    return p;
}

} // namespace hyperhodge
