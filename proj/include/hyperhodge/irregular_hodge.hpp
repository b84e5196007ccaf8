#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hypergeometric.hpp"

namespace hyperhodge {

// Signature of the rescaled module: t and tau invertible, z^2 d/dz present.
// With with_c a central base variable "c" is adjoined for the shape solve.
inline SigPtr rescaled_signature(bool with_c = false)
{
    if (with_c) return make_signature({"t", "tau", "c"}, {"t", "tau"}, true);
    return make_signature({"t", "tau"}, {"t", "tau"}, true);
}

struct RescaledPresentation {
    HypParams params;
    SigPtr signature;
    OrePoly P, R, H; // P, z2dz + tau th_tau, prod (z/tau)(t d - a_i) - t (z/tau)(t d - b)

    Presentation presentation() const
    {
        Presentation p(signature, {P, R, H});
        p.metadata["kind"] = "rescaled";
        return p;
    }
};

inline void require_type_n1(const HypParams& p)
{
    if (p.m != 1) throw ValidationError("needs type (n,1), got m = " + std::to_string(p.m));
    if (p.n < 1) throw ValidationError("needs n >= 1");
}

namespace detail {

inline OrePoly rescaled_H(const HypParams& p, const SigPtr& s)
{
    OrePoly z = OrePoly::z(s), t = OrePoly::var(s, "t");
    OrePoly tinv = OrePoly::var(s, "tau", -1);
    OrePoly tth = t * OrePoly::theta(s, "t");
    OrePoly a(s, 1);
    for (const auto& x : p.alpha) a = a * (tinv * (tth - x * z));
    return a - t * tinv * (tth - p.beta.front() * z);
}

inline OrePoly rescaled_P(const HypParams& p, const SigPtr& s)
{
    Rational nm = Rational(static_cast<long>(p.n)) - Rational(static_cast<long>(p.m));
    return OrePoly::z2dz(s) + nm * OrePoly::var(s, "t") * OrePoly::theta(s, "t") + epsilon(p) * OrePoly::z(s);
}

} // namespace detail

inline RescaledPresentation rescale(const HypParams& p)
{
    require_type_n1(p);
    if (!irreducible(p)) throw ValidationError("rescaling needs irreducible parameters");
    RescaledPresentation r;
    r.params = p;
    r.signature = rescaled_signature();
    const auto& s = r.signature;
    r.P = detail::rescaled_P(p, s);
    r.R = OrePoly::z2dz(s) + OrePoly::var(s, "tau") * OrePoly::theta(s, "tau");
    r.H = detail::rescaled_H(p, s);
    return r;
}

// tau = 1 slice without the R generator, over the (t, z2dz) signature.
inline Presentation tau_one_slice(const RescaledPresentation& r)
{
    SigPtr target = torus_signature(false);
    SymbolMap m;
    m[Symbol::Var("tau")] = OrePoly(target, 1);
    m[Symbol::Theta("tau")] = OrePoly(target);
    return Presentation(target, {substitute(r.P, m, target), substitute(r.H, m, target)});
}

struct QBasis {
    HypParams params;
    std::vector<OrePoly> Q;    // over the rescaled signature
    std::vector<OrePoly> Qbar; // classical slice tau = z, over (t, d_t)
    Rational c;                // value used in Q_{n-1}
    Rational c_statement;      // (beta - alpha_1) / (1 + alpha_1 - alpha_n)
    std::optional<Rational> c_proof; // (beta - alpha_1) / (1 + alpha_1 + alpha_n)
    std::optional<Rational> c_solved; // from the shape constraints
    std::string c_verdict;
};

// Blocks of a connection matrix entry: a Laurent polynomial in t.
struct TPoly {
    std::map<int, Rational> coeffs;

    bool is_zero() const { return coeffs.empty(); }
    void add(int k, const Rational& c)
    {
        if (c == 0) return;
        auto& x = coeffs[k];
        x += c;
        if (x == 0) coeffs.erase(k);
    }
    bool operator==(const TPoly&) const = default;

    std::string str() const
    {
        if (coeffs.empty()) return "0";
        std::string out;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
            const auto& [k, c] = *it;
            Rational a = abs(c);
            std::string mono = k == 0 ? "" : (k == 1 ? "t" : "t^" + std::to_string(k));
            std::string body = mono.empty() ? to_string(a) : (a == 1 ? mono : to_string(a) + "*" + mono);
            if (out.empty()) out = c < 0 ? "-" + body : body;
            else out += (c < 0 ? " - " : " + ") + body;
        }
        return out;
    }
};

using TMatrix = std::vector<std::vector<TPoly>>;
using QMatrix = std::vector<std::vector<Rational>>;

struct ConnectionMatrices {
    std::size_t n = 0;
    TMatrix A0;
    QMatrix Ainf_prime, Ainf;
    Rational c, epsilon;
    std::vector<std::string> shape_violations; // empty when the displayed shape holds
};

namespace detail {

// Clears every term of q whose degree in slot is >= k using an element d that
// is monic of degree k in slot.  Cofactors accumulate in *cof.
inline OrePoly reduce_slot(OrePoly q, const OrePoly& d, std::size_t slot, int k, OrePoly* cof)
{
    while (true) {
        const Exponents* top = nullptr;
        Rational c;
        for (const auto& [e, x] : q.terms())
            if (e[slot] >= k && (!top || e[slot] > (*top)[slot])) {
                top = &e;
                c = x;
            }
        if (!top) return q;
        Exponents m = *top;
        m[slot] -= k;
        OrePoly mono = OrePoly::monomial(q.signature(), m, c);
        q -= mono * d;
        if (cof) *cof += mono;
    }
}

// Rewriting machinery for the rescaled module with c adjoined.
class RescaledModule {
public:
    explicit RescaledModule(const HypParams& p) : p_(p), sig_(rescaled_signature(true))
    {
        const auto& s = sig_;
        const long n = static_cast<long>(p.n);
        P_ = rescaled_P(p, s);
        R_ = OrePoly::z2dz(s) + OrePoly::var(s, "tau") * OrePoly::theta(s, "tau");
        H_ = rescaled_H(p, s);
        d_tau_ = OrePoly::var(s, "tau", -1) * (R_ - P_);
        d_t_ = OrePoly::var(s, "tau", static_cast<int>(n)) * OrePoly::var(s, "t", -static_cast<int>(n)) * H_;

        OrePoly z = OrePoly::z(s), t = OrePoly::var(s, "t");
        OrePoly step(s, 1);
        const Rational lead = -Rational(n - 1);
        for (long k = 0; k < n; ++k) {
            if (k > 0)
                step = step * (OrePoly::var(s, "tau", -1) * (t * OrePoly::theta(s, "t") - p.alpha[k - 1] * z));
            Rational scale = 1;
            for (long i = 0; i < k; ++i) scale *= lead;
            Q_.push_back(scale * step);
        }
        Rational top = 1;
        for (long i = 0; i + 1 < n; ++i) top *= lead;
        Q_.back() += top * OrePoly::var(s, "c") * t * Q_.front();
    }

    const SigPtr& signature() const { return sig_; }
    const std::vector<OrePoly>& Q() const { return Q_; }
    const OrePoly& P() const { return P_; }
    const OrePoly& R() const { return R_; }
    const OrePoly& H() const { return H_; }

    struct Reduction {
        OrePoly remainder;
        OrePoly cP, cR, cH; // q = cP P + cR R + cH H + remainder
    };

    Reduction reduce(const OrePoly& q) const
    {
        const auto& s = *sig_;
        OrePoly a(sig_), b(sig_), c(sig_);
        OrePoly r = reduce_slot(q, P_, s.e_slot(), 1, &a);
        r = reduce_slot(r, d_tau_, s.theta_slot(1), 1, &b);
        r = reduce_slot(r, d_t_, s.theta_slot(0), static_cast<int>(p_.n), &c);
        OrePoly tinv = OrePoly::var(sig_, "tau", -1);
        OrePoly unit = OrePoly::var(sig_, "tau", static_cast<int>(p_.n)) * OrePoly::var(sig_, "t", -static_cast<int>(p_.n));
        return {r, a - b * tinv, b * tinv, c * unit};
    }

    // Coordinates of a reduced class in the Q basis; entries are functions.
    std::vector<OrePoly> coordinates(OrePoly r) const
    {
        const auto& s = *sig_;
        const std::size_t th = s.theta_slot(0);
        std::vector<OrePoly> g(p_.n, OrePoly(sig_));
        for (std::size_t k = p_.n; k-- > 0;) {
            const auto& [le, lc] = Q_[k].leading();
            Exponents inv(s.width(), 0);
            for (std::size_t i = 0; i < s.width(); ++i) inv[i] = i == th ? 0 : -le[i];
            OrePoly f(sig_);
            for (const auto& [e, c] : r.terms())
                if (e[th] == static_cast<int>(k)) {
                    Exponents x = e;
                    x[th] = 0;
                    f.add_term(x, c);
                }
            if (f.is_zero()) continue;
            g[k] = f * OrePoly::monomial(sig_, inv, 1 / lc);
            r -= g[k] * Q_[k];
        }
        if (!r.is_zero()) throw ShapeError("class not in the span of the Q basis: " + r.str());
        return g;
    }

    // Matrix M with X Q_j = sum_i M[i][j] Q_i in the module.
    std::vector<std::vector<OrePoly>> action(const OrePoly& X) const
    {
        std::vector<std::vector<OrePoly>> M(p_.n, std::vector<OrePoly>(p_.n, OrePoly(sig_)));
        for (std::size_t j = 0; j < p_.n; ++j) {
            auto g = coordinates(reduce(X * Q_[j]).remainder);
            for (std::size_t i = 0; i < p_.n; ++i) M[i][j] = g[i];
        }
        return M;
    }

private:
    HypParams p_;
    SigPtr sig_;
    OrePoly P_, R_, H_, d_tau_, d_t_;
    std::vector<OrePoly> Q_;
};

// Univariate polynomial in c, keyed by power.
using CPoly = std::map<int, Rational>;

// Splits a function over the c-signature by its (z, t, tau) monomial.
inline std::map<Exponents, CPoly> split_by_c(const OrePoly& f)
{
    const auto& s = *f.signature();
    const std::size_t cs = s.x_slot(s.index("c"));
    std::map<Exponents, CPoly> out;
    for (const auto& [e, x] : f.terms()) {
        Exponents k = e;
        k[cs] = 0;
        out[k][e[cs]] += x;
    }
    return out;
}

inline Rational eval(const CPoly& p, const Rational& c)
{
    Rational v = 0, pw = 1;
    int k = 0;
    for (const auto& [d, x] : p) {
        for (; k < d; ++k) pw *= c;
        v += x * pw;
    }
    return v;
}

inline OrePoly set_c(const OrePoly& f, const Rational& c)
{
    SymbolMap m;
    m[Symbol::Var("c")] = OrePoly(f.signature(), c);
    return substitute(f, m, f.signature());
}

struct EntryParts {
    TPoly tau;           // coefficient of tau^1 z^0
    Rational zconst = 0; // coefficient of z^1 tau^0 t^0
    std::vector<std::string> stray; // any other monomial
};

inline EntryParts split_entry(const OrePoly& f)
{
    const auto& s = *f.signature();
    const std::size_t ts = s.x_slot(s.index("t")), us = s.x_slot(s.index("tau"));
    EntryParts out;
    for (const auto& [e, x] : f.terms()) {
        int zp = e[OreSignature::z_slot], up = e[us], tp = e[ts];
        if (zp == 0 && up == 1) out.tau.add(tp, x);
        else if (zp == 1 && up == 0 && tp == 0) out.zconst += x;
        else out.stray.push_back(to_string(x) + "*" + monomial_str(s, e));
    }
    return out;
}

// Entries allowed to be nonzero in A_0: the subdiagonal plus the two t-columns.
inline bool a0_slot_allowed(std::size_t n, std::size_t i, std::size_t j)
{
    if (i == j + 1) return true;
    if (n == 2) return true;
    return (i == 0 && j == n - 2) || (i == 1 && j == n - 1);
}

// Constraints, as polynomials in c, that the displayed block shape imposes.
inline std::vector<CPoly> shape_constraints(const RescaledModule& mod)
{
    const auto& s = mod.signature();
    const std::size_t n = mod.Q().size();
    auto ME = mod.action(OrePoly::z2dz(s));
    auto MT = mod.action(OrePoly::var(s, "t") * OrePoly::theta(s, "t"));
    const std::size_t ts = s->x_slot(s->index("t")), us = s->x_slot(s->index("tau"));
    std::vector<CPoly> out;
    auto push = [&](const OrePoly& f, bool keep_tau, bool keep_z) {
        for (auto& [e, p] : split_by_c(f)) {
            int zp = e[OreSignature::z_slot], up = e[us], tp = e[ts];
            bool ok = (keep_tau && zp == 0 && up == 1) || (keep_z && zp == 1 && up == 0 && tp == 0);
            if (!ok) out.push_back(p);
        }
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            bool diag = i == j;
            push(ME[i][j], a0_slot_allowed(n, i, j), diag);
            push(MT[i][j], a0_slot_allowed(n, i, j), diag);
        }
    return out;
}

// Common rational root of the constraints, from the first linear one.
inline std::optional<Rational> solve_constraints(const std::vector<CPoly>& cs, bool& consistent)
{
    std::vector<CPoly> nz;
    for (auto p : cs) {
        for (auto it = p.begin(); it != p.end();) it = it->second == 0 ? p.erase(it) : std::next(it);
        if (!p.empty()) nz.push_back(p);
    }
    consistent = true;
    std::optional<Rational> root;
    for (const auto& p : nz) {
        if (p.size() == 1 && p.begin()->first == 0) {
            consistent = false;
            return std::nullopt;
        }
        if (!root && p.rbegin()->first == 1) {
            Rational a = p.rbegin()->second, b = p.count(0) ? p.at(0) : Rational(0);
            root = -b / a;
        }
    }
    if (nz.empty()) return std::nullopt;
    if (!root) {
        // Only pure powers c^k: the root is 0.
        bool monomial_only = std::all_of(nz.begin(), nz.end(), [](const CPoly& p) { return p.size() == 1; });
        if (monomial_only) root = Rational(0);
    }
    if (!root) {
        consistent = false;
        return std::nullopt;
    }
    for (const auto& p : nz)
        if (eval(p, *root) != 0) consistent = false;
    return root;
}

} // namespace detail

inline Rational c_statement(const HypParams& p)
{
    require_type_n1(p);
    Rational den = 1 + p.alpha.front() - p.alpha.back();
    if (den == 0) throw ValidationError("1 + alpha_1 - alpha_n vanishes");
    return (p.beta.front() - p.alpha.front()) / den;
}

inline QBasis q_basis(const HypParams& p)
{
    require_type_n1(p);
    QBasis q;
    q.params = p;
    q.c_statement = c_statement(p);
    Rational dp = 1 + p.alpha.front() + p.alpha.back();
    if (dp != 0) q.c_proof = (p.beta.front() - p.alpha.front()) / dp;

    if (p.n >= 2) {
        detail::RescaledModule mod(p);
        bool consistent = true;
        q.c_solved = detail::solve_constraints(detail::shape_constraints(mod), consistent);
        if (!consistent) throw ShapeError("no value of c gives the block shape");
    }
    q.c = q.c_solved.value_or(q.c_statement);
    if (!q.c_solved) q.c_verdict = "shape does not constrain c";
    else if (*q.c_solved == q.c_statement && q.c_proof && *q.c_solved == *q.c_proof) q.c_verdict = "both agree";
    else if (*q.c_solved == q.c_statement) q.c_verdict = "statement";
    else if (q.c_proof && *q.c_solved == *q.c_proof) q.c_verdict = "proof";
    else q.c_verdict = "neither";

    SigPtr s = rescaled_signature();
    SigPtr cl = torus_signature(true);
    OrePoly z = OrePoly::z(s), t = OrePoly::var(s, "t"), tinv = OrePoly::var(s, "tau", -1);
    OrePoly ct = OrePoly::var(cl, "t");
    OrePoly step(s, 1), bar(cl, 1);
    const Rational lead = -Rational(static_cast<long>(p.n) - 1);
    Rational scale = 1;
    for (std::size_t k = 0; k < p.n; ++k) {
        if (k > 0) {
            step = step * (tinv * (t * OrePoly::theta(s, "t") - p.alpha[k - 1] * z));
            bar = bar * (ct * OrePoly::theta(cl, "t") - OrePoly(cl, p.alpha[k - 1]));
            scale *= lead;
        }
        q.Q.push_back(scale * step);
        q.Qbar.push_back(scale * bar);
    }
    q.Q.back() += scale * q.c * t * q.Q.front();
    q.Qbar.back() += scale * q.c * ct * q.Qbar.front();
    return q;
}

// Connection on the Q basis: z2dz Q = Q (tau A0 + z Ainf) and
// t th_t Q = Q (-tau A0 + z Ainf') / (n - 1), checked entry by entry.
inline ConnectionMatrices connection_matrices(const HypParams& p)
{
    require_type_n1(p);
    if (p.n < 2) throw ValidationError("connection matrices need n >= 2");
    QBasis qb = q_basis(p);
    detail::RescaledModule mod(p);
    const auto& s = mod.signature();
    const std::size_t n = p.n;
    const Rational nm1 = Rational(static_cast<long>(n) - 1);

    ConnectionMatrices cm;
    cm.n = n;
    cm.c = qb.c;
    cm.epsilon = epsilon(p);
    cm.A0.assign(n, std::vector<TPoly>(n));
    cm.Ainf.assign(n, std::vector<Rational>(n, 0));
    cm.Ainf_prime.assign(n, std::vector<Rational>(n, 0));

    auto ME = mod.action(OrePoly::z2dz(s));
    auto MT = mod.action(OrePoly::var(s, "t") * OrePoly::theta(s, "t"));
    auto MU = mod.action(OrePoly::var(s, "tau") * OrePoly::theta(s, "tau"));
    auto where = [](const char* m, std::size_t i, std::size_t j) {
        return std::string(m) + "[" + std::to_string(i) + "][" + std::to_string(j) + "]";
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto e = detail::split_entry(detail::set_c(ME[i][j], cm.c));
            auto t = detail::split_entry(detail::set_c(nm1 * MT[i][j], cm.c));
            auto u = detail::split_entry(detail::set_c(MU[i][j] + ME[i][j], cm.c));
            cm.A0[i][j] = e.tau;
            cm.Ainf[i][j] = e.zconst;
            cm.Ainf_prime[i][j] = t.zconst;
            for (const auto& x : e.stray) cm.shape_violations.push_back(where("z2dz", i, j) + " has " + x);
            for (const auto& x : t.stray) cm.shape_violations.push_back(where("t th_t", i, j) + " has " + x);
            TPoly neg;
            for (const auto& [k, c] : e.tau.coeffs) neg.add(k, -c);
            if (!(t.tau == neg)) cm.shape_violations.push_back(where("t th_t", i, j) + " tau part is not -A0");
            if (!u.tau.is_zero() || u.zconst != 0 || !u.stray.empty())
                cm.shape_violations.push_back(where("tau th_tau", i, j) + " differs from -(tau A0 + z Ainf)");
            if (i != j && cm.Ainf[i][j] != 0) cm.shape_violations.push_back(where("Ainf", i, j) + " off the diagonal");
            if (i != j && cm.Ainf_prime[i][j] != 0)
                cm.shape_violations.push_back(where("Ainf'", i, j) + " off the diagonal");
            if (!detail::a0_slot_allowed(n, i, j) && !cm.A0[i][j].is_zero())
                cm.shape_violations.push_back(where("A0", i, j) + " = " + cm.A0[i][j].str());
            if (i == j + 1 && !(cm.A0[i][j] == TPoly{{{0, Rational(1)}}}))
                cm.shape_violations.push_back(where("A0", i, j) + " is not 1");
        }
    for (std::size_t i = 0; i < n; ++i) {
        if (cm.Ainf_prime[i][i] != nm1 * p.alpha[i])
            cm.shape_violations.push_back(where("Ainf'", i, i) + " is not (n-1) alpha");
        if (cm.Ainf[i][i] != Rational(static_cast<long>(i)) - cm.epsilon - cm.Ainf_prime[i][i])
            cm.shape_violations.push_back(where("Ainf", i, i) + " breaks Ainf + Ainf' + eps = diag(0..n-1)");
    }
    return cm;
}

// Throws ShapeError naming the first offending entry.
inline const ConnectionMatrices& assert_shape(const ConnectionMatrices& cm)
{
    if (!cm.shape_violations.empty()) throw ShapeError("connection shape: " + cm.shape_violations.front());
    return cm;
}

// A0 read off the displayed general form: subdiagonal ones, -(-(n-1))^(n-1) c t at
// (0, n-2) and (-(n-1))^(n-1) (c+1) t at (1, n-1); for n = 2 the two entries share
// a column and the product c (c+1) t^2 appears at (0, 1) with the sign of the
// general form.
inline TMatrix displayed_A0(std::size_t n, const Rational& c)
{
    TMatrix A(n, std::vector<TPoly>(n));
    Rational s = 1;
    for (std::size_t i = 0; i + 1 < n; ++i) s *= -Rational(static_cast<long>(n) - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) A[i + 1][i].add(0, 1);
    A[0][n - 2].add(1, -s * c);
    A[1][n - 1].add(1, s * (c + 1));
    if (n == 2) A[0][1].add(2, s * c * (c + 1));
    return A;
}

inline std::size_t nilpotency_index(const QMatrix& M)
{
    const std::size_t d = M.size();
    if (d == 0) return 0;
    QMatrix P = M;
    for (std::size_t r = 1; r <= d + 1; ++r) {
        bool zero = true;
        for (const auto& row : P)
            for (const auto& x : row) zero = zero && x == 0;
        if (zero) return r;
        QMatrix next(d, std::vector<Rational>(d, 0));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t k = 0; k < d; ++k)
                if (P[i][k] != 0)
                    for (std::size_t j = 0; j < d; ++j) next[i][j] += P[i][k] * M[k][j];
        P = std::move(next);
    }
    throw ShapeError("matrix is not nilpotent");
}

// Argument of the ceiling in nu: -a + k - eps - (n-1) alpha_{k+1}.
inline Rational nu_argument(const HypParams& p, const Rational& a, std::size_t k)
{
    require_type_n1(p);
    if (k >= p.n) throw ValidationError("k must lie in 0..n-1");
    return -a + Rational(static_cast<long>(k)) - epsilon(p) - Rational(static_cast<long>(p.n) - 1) * p.alpha[k];
}

inline Integer nu(const HypParams& p, const Rational& a, std::size_t k) { return ceil_of(nu_argument(p, a, k)); }

// Exponents of the step U_a = sum_k O tau^nu_a(k) Q_k.
inline std::vector<std::pair<std::size_t, Integer>> u_filtration_step(const HypParams& p, const Rational& a)
{
    std::vector<std::pair<std::size_t, Integer>> out;
    for (std::size_t k = 0; k < p.n; ++k) out.emplace_back(k, nu(p, a, k));
    return out;
}

// Classes tau^nu Q_k that are nonzero in Gr_a: the ceiling is attained exactly.
inline std::vector<std::size_t> surviving_classes(const HypParams& p, const Rational& a)
{
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < p.n; ++k)
        if (is_integer(nu_argument(p, a, k))) out.push_back(k);
    return out;
}

// Values of a where Gr_a is nonzero, one representative per class k
// (the others differ by integers).
inline std::vector<Rational> jump_values(const HypParams& p)
{
    std::vector<Rational> out;
    for (std::size_t k = 0; k < p.n; ++k) out.push_back(nu_argument(p, 0, k));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Shift-by-one action on Gr_a restricted to surviving classes: class k goes to
// -(class k+1) when both survive and alpha_{k+1} = alpha_{k+2}.
inline QMatrix graded_nilpotent(const HypParams& p, const Rational& a)
{
    auto keep = surviving_classes(p, a);
    const std::size_t d = keep.size();
    QMatrix M(d, std::vector<Rational>(d, 0));
    for (std::size_t x = 0; x + 1 < d; ++x) {
        std::size_t k = keep[x];
        if (keep[x + 1] == k + 1 && p.alpha[k] == p.alpha[k + 1]) M[x + 1][x] = -1;
    }
    return M;
}

struct IrrHodgeReport {
    HypParams params;
    Rational epsilon;
    std::vector<Rational> rho;                 // k - (n-1) alpha_k, k = 1..n
    std::map<Rational, std::size_t> numbers;   // jump -> multiplicity
    std::vector<Rational> unnormalized;        // -eps + j - 1 - (n-1) alpha_j
    std::vector<std::pair<Rational, std::vector<Integer>>> table; // a -> nu_a(0..n-1)
};

inline std::vector<Rational> rho(const HypParams& p)
{
    std::vector<Rational> out;
    for (std::size_t k = 1; k <= p.n; ++k)
        out.push_back(Rational(static_cast<long>(k)) - Rational(static_cast<long>(p.n) - 1) * p.alpha[k - 1]);
    return out;
}

inline IrrHodgeReport irr_hodge(const HypParams& p)
{
    require_type_n1(p);
    if (!irreducible(p)) throw ValidationError("irregular Hodge data needs irreducible parameters");
    IrrHodgeReport r;
    r.params = p;
    r.epsilon = epsilon(p);
    r.rho = rho(p);
    for (const auto& x : r.rho) ++r.numbers[x];
    for (std::size_t j = 1; j <= p.n; ++j)
        r.unnormalized.push_back(-r.epsilon + Rational(static_cast<long>(j)) - 1 -
                                 Rational(static_cast<long>(p.n) - 1) * p.alpha[j - 1]);
    for (const auto& a : jump_values(p)) {
        std::vector<Integer> row;
        for (std::size_t k = 0; k < p.n; ++k) row.push_back(nu(p, a, k));
        r.table.emplace_back(a, std::move(row));
    }
    return r;
}

// Indices k with Qbar_k in F^irr_{a+j}.
inline std::vector<std::size_t> irr_filtration_step(const HypParams& p, const Rational& a, long j)
{
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < p.n; ++k)
        if (nu(p, a, k) <= j) out.push_back(k);
    return out;
}

struct RegularHodgeReport {
    HypParams params;
    std::vector<std::size_t> hodge_numbers;       // h^p, p = 0..n-1
    std::vector<OrePoly> R;                       // prod_{i<=k} (t d - alpha_i), classical
    std::vector<std::size_t> fedorov;             // #{j : beta_j < alpha_k}
    bool homogeneous = false;
};

inline bool homogeneity_check(const OrePoly& g)
{
    const auto& s = *g.signature();
    std::optional<int> deg;
    for (const auto& [e, c] : g.terms()) {
        int d = e[OreSignature::z_slot] + e[s.e_slot()];
        for (std::size_t i = 0; i < s.nvars(); ++i) d += e[s.theta_slot(i)];
        if (deg && *deg != d) return false;
        deg = d;
    }
    return true;
}

// Every generator homogeneous for z, theta and z2dz of degree 1, base variables 0.
inline bool homogeneity_check(const Presentation& p)
{
    return std::all_of(p.generators.begin(), p.generators.end(),
                       [](const OrePoly& g) { return homogeneity_check(g); });
}

inline RegularHodgeReport regular_hodge(const HypParams& p)
{
    if (p.n != p.m) throw ValidationError("regular case needs n = m");
    if (!irreducible(p)) throw ValidationError("regular case needs irreducible parameters");
    if (!arc_separated(p)) throw AdmissibilityError("parameters are not arc separated");
    RegularHodgeReport r;
    r.params = p;
    r.homogeneous = homogeneity_check(thm_presentation(p));
    SigPtr s = torus_signature(true);
    OrePoly td = OrePoly::var(s, "t") * OrePoly::theta(s, "t");
    OrePoly step(s, 1);
    for (std::size_t k = 0; k < p.n; ++k) {
        if (k > 0) step = step * (td - OrePoly(s, p.alpha[k - 1]));
        r.R.push_back(step);
    }
    // Order filtration: R_k has order k, so each graded piece is spanned by one R_k.
    r.hodge_numbers.assign(p.n, 0);
    for (const auto& x : r.R) {
        int ord = x.degree_in(s->theta_slot(0));
        if (ord >= static_cast<int>(p.n)) throw ShapeError("R_k of order >= n");
        ++r.hodge_numbers[static_cast<std::size_t>(ord)];
    }
    for (const auto& a : p.alpha)
        r.fedorov.push_back(static_cast<std::size_t>(
            std::count_if(p.beta.begin(), p.beta.end(), [&](const Rational& b) { return b < a; })));
    return r;
}

} // namespace hyperhodge
