#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace hyperhodge {

// Generators: z, base variables x_i (some invertible), theta_i = z d/dx_i and,
// optionally, z2dz = z^2 d/dz.  A classical signature sets z = 1, giving the
// ordinary Weyl algebra with theta_i = d/dx_i and no z2dz.
struct OreSignature {
    std::vector<std::string> base_vars;
    std::vector<bool> invertible;
    bool has_z2dz = false;
    bool classical = false;

    std::size_t nvars() const { return base_vars.size(); }
    std::size_t width() const { return 2 * nvars() + 2; }
    static constexpr std::size_t z_slot = 0;
    std::size_t x_slot(std::size_t i) const { return 1 + i; }
    std::size_t theta_slot(std::size_t i) const { return 1 + nvars() + i; }
    std::size_t e_slot() const { return 1 + 2 * nvars(); }

    std::optional<std::size_t> find(std::string_view name) const
    {
        for (std::size_t i = 0; i < base_vars.size(); ++i)
            if (base_vars[i] == name) return i;
        return std::nullopt;
    }

    std::size_t index(std::string_view name) const
    {
        auto i = find(name);
        if (!i) throw SignatureError("unknown base variable '" + std::string(name) + "'");
        return *i;
    }

    bool operator==(const OreSignature&) const = default;
};

using SigPtr = std::shared_ptr<const OreSignature>;

inline SigPtr make_signature(std::vector<std::string> vars, const std::vector<std::string>& invertible,
                             bool has_z2dz, bool classical = false)
{
    OreSignature s;
    s.base_vars = std::move(vars);
    s.invertible.assign(s.base_vars.size(), false);
    s.has_z2dz = has_z2dz;
    s.classical = classical;
    if (classical && has_z2dz) throw SignatureError("a classical signature has no z^2 d/dz");
    for (std::size_t i = 0; i < s.base_vars.size(); ++i) {
        if (s.base_vars[i].empty()) throw SignatureError("empty variable name");
        for (std::size_t j = 0; j < i; ++j)
            if (s.base_vars[i] == s.base_vars[j])
                throw SignatureError("duplicate variable '" + s.base_vars[i] + "'");
    }
    for (const auto& v : invertible) s.invertible[s.index(v)] = true;
    return std::make_shared<const OreSignature>(std::move(s));
}

inline bool same_signature(const SigPtr& a, const SigPtr& b)
{
    return a == b || (a && b && *a == *b);
}

using Exponents = std::vector<int>;

// z is the least significant slot, z2dz the most significant.
struct TermOrder {
    bool operator()(const Exponents& a, const Exponents& b) const
    {
        for (std::size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }
};

struct Symbol {
    enum class Kind { z, var, theta, z2dz };
    Kind kind = Kind::z;
    std::string name;

    static Symbol Z() { return {Kind::z, {}}; }
    static Symbol Var(std::string n) { return {Kind::var, std::move(n)}; }
    static Symbol Theta(std::string n) { return {Kind::theta, std::move(n)}; }
    static Symbol Z2Dz() { return {Kind::z2dz, {}}; }

    auto operator<=>(const Symbol&) const = default;
};

class OrePoly {
public:
    using TermMap = std::map<Exponents, Rational, TermOrder>;

    OrePoly() = default;
    explicit OrePoly(SigPtr sig) : sig_(std::move(sig)) {}
    OrePoly(SigPtr sig, const Rational& c) : sig_(std::move(sig))
    {
        if (c != 0) terms_.emplace(Exponents(sig_->width(), 0), c);
    }

    static OrePoly monomial(SigPtr sig, Exponents e, const Rational& c = 1)
    {
        OrePoly p(std::move(sig));
        p.add_term(e, c);
        return p;
    }
    static OrePoly z(const SigPtr& sig, int k = 1)
    {
        Exponents e(sig->width(), 0);
        e[OreSignature::z_slot] = k;
        return monomial(sig, e);
    }
    static OrePoly var(const SigPtr& sig, std::string_view name, int k = 1)
    {
        Exponents e(sig->width(), 0);
        e[sig->x_slot(sig->index(name))] = k;
        return monomial(sig, e);
    }
    static OrePoly theta(const SigPtr& sig, std::string_view name, int k = 1)
    {
        Exponents e(sig->width(), 0);
        e[sig->theta_slot(sig->index(name))] = k;
        return monomial(sig, e);
    }
    static OrePoly z2dz(const SigPtr& sig, int k = 1)
    {
        if (!sig->has_z2dz) throw SignatureError("signature has no z^2 d/dz");
        Exponents e(sig->width(), 0);
        e[sig->e_slot()] = k;
        return monomial(sig, e);
    }

    const SigPtr& signature() const { return sig_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add_term(const Exponents& e, const Rational& c)
    {
        if (c == 0) return;
        check_exponents(e);
        auto [it, fresh] = terms_.try_emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    OrePoly& operator+=(const OrePoly& o)
    {
        adopt(o);
        for (const auto& [e, c] : o.terms_) add_raw(e, c);
        return *this;
    }
    OrePoly& operator-=(const OrePoly& o)
    {
        adopt(o);
        for (const auto& [e, c] : o.terms_) add_raw(e, -c);
        return *this;
    }
    OrePoly& operator*=(const Rational& c)
    {
        if (c == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& kv : terms_) kv.second *= c;
        return *this;
    }

    friend OrePoly operator+(OrePoly a, const OrePoly& b) { return a += b; }
    friend OrePoly operator-(OrePoly a, const OrePoly& b) { return a -= b; }
    friend OrePoly operator-(OrePoly a) { return a *= Rational(-1); }
    friend OrePoly operator*(OrePoly a, const Rational& c) { return a *= c; }
    friend OrePoly operator*(const Rational& c, OrePoly a) { return a *= c; }
    friend OrePoly operator*(const OrePoly& a, const OrePoly& b);

    friend bool operator==(const OrePoly& a, const OrePoly& b)
    {
        return same_signature(a.sig_, b.sig_) && a.terms_ == b.terms_;
    }

    // Total degree of a monomial counts |x| for negative powers.
    static int degree_of(const Exponents& e)
    {
        int d = 0;
        for (int v : e) d += v < 0 ? -v : v;
        return d;
    }
    int total_degree() const
    {
        int d = -1;
        for (const auto& kv : terms_) d = std::max(d, degree_of(kv.first));
        return d;
    }
    int degree_in(std::size_t slot) const
    {
        int d = 0;
        for (const auto& kv : terms_) d = std::max(d, kv.first[slot]);
        return d;
    }

    // Leading term in the canonical order (the last one).
    const std::pair<const Exponents, Rational>& leading() const
    {
        if (terms_.empty()) throw ValidationError("leading term of zero operator");
        return *terms_.rbegin();
    }

    std::string str() const;

private:
    SigPtr sig_;
    TermMap terms_;

    void adopt(const OrePoly& o)
    {
        if (!sig_) sig_ = o.sig_;
        else if (o.sig_ && !same_signature(sig_, o.sig_))
            throw SignatureError("operators live over different signatures");
    }

    void add_raw(const Exponents& e, const Rational& c)
    {
        auto [it, fresh] = terms_.try_emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    void check_exponents(const Exponents& e) const
    {
        if (!sig_) throw SignatureError("operator has no signature");
        const auto& s = *sig_;
        if (e.size() != s.width()) throw SignatureError("exponent vector has wrong width");
        if (e[OreSignature::z_slot] < 0) throw SignatureError("negative power of z");
        if (s.classical && e[OreSignature::z_slot] != 0) throw SignatureError("z is 1 in a classical signature");
        for (std::size_t i = 0; i < s.nvars(); ++i) {
            if (e[s.x_slot(i)] < 0 && !s.invertible[i])
                throw SignatureError("negative power of non-invertible variable '" + s.base_vars[i] + "'");
            if (e[s.theta_slot(i)] < 0) throw SignatureError("negative power of theta");
        }
        if (e[s.e_slot()] < 0) throw SignatureError("negative power of z^2 d/dz");
        if (e[s.e_slot()] > 0 && !s.has_z2dz) throw SignatureError("signature has no z^2 d/dz");
    }

    friend void mul_terms(const OreSignature&, const Exponents&, const Exponents&, const Rational&, TermMap&);
};

// (z^a x^b th^c E^e) (z^a' x^b' th^c' E^e') in normal order.
//   E^e Y = sum_j C(e,j) ad_E^j(Y) E^(e-j), ad_E^j(z^a' th^c') = rising(a'+|c'|, j) z^j z^a' th^c'
//   th_i^c x_i^b = sum_k C(c,k) falling(b,k) z^k x_i^(b-k) th_i^(c-k)
inline void mul_terms(const OreSignature& s, const Exponents& l, const Exponents& r, const Rational& coeff,
                      OrePoly::TermMap& out)
{
    const std::size_t k = s.nvars();
    const int e = l[s.e_slot()];
    int weight = r[OreSignature::z_slot];
    for (std::size_t i = 0; i < k; ++i) weight += r[s.theta_slot(i)];

    // Variables where theta on the left meets a power of x on the right.
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < k; ++i)
        if (l[s.theta_slot(i)] > 0 && r[s.x_slot(i)] != 0) active.push_back(i);

    Exponents base(s.width());
    for (std::size_t i = 0; i < s.width(); ++i) base[i] = l[i] + r[i];

    for (int j = 0; j <= e; ++j) {
        Integer cj = binomial(e, j) * rising(weight, j);
        if (cj == 0) continue;
        Exponents ex = base;
        ex[OreSignature::z_slot] += j;
        ex[s.e_slot()] -= j;

        // Enumerate k-vectors over the active variables.
        std::vector<int> kv(active.size(), 0);
        std::vector<int> kmax(active.size());
        for (std::size_t a = 0; a < active.size(); ++a) {
            int c = l[s.theta_slot(active[a])];
            int b = r[s.x_slot(active[a])];
            kmax[a] = b > 0 ? std::min(c, b) : c;
        }
        while (true) {
            Rational c = coeff * Rational(cj);
            Exponents ek = ex;
            for (std::size_t a = 0; a < active.size(); ++a) {
                std::size_t i = active[a];
                int kk = kv[a];
                if (kk == 0) continue;
                c *= Rational(binomial(l[s.theta_slot(i)], kk) * falling(r[s.x_slot(i)], kk));
                ek[OreSignature::z_slot] += kk;
                ek[s.x_slot(i)] -= kk;
                ek[s.theta_slot(i)] -= kk;
            }
            if (s.classical) ek[OreSignature::z_slot] = 0;
            if (c != 0) {
                auto [it, fresh] = out.try_emplace(ek, c);
                if (!fresh) {
                    it->second += c;
                    if (it->second == 0) out.erase(it);
                }
            }
            std::size_t a = 0;
            while (a < kv.size() && kv[a] == kmax[a]) kv[a++] = 0;
            if (a == kv.size()) break;
            ++kv[a];
        }
    }
}

inline OrePoly operator*(const OrePoly& a, const OrePoly& b)
{
    if (!a.sig_ || !b.sig_) throw SignatureError("operator has no signature");
    if (!same_signature(a.sig_, b.sig_)) throw SignatureError("operators live over different signatures");
    OrePoly out(a.sig_);
    for (const auto& [la, ca] : a.terms_)
        for (const auto& [lb, cb] : b.terms_) mul_terms(*a.sig_, la, lb, ca * cb, out.terms_);
    return out;
}

inline OrePoly pow(const OrePoly& p, int k)
{
    if (k < 0) throw ValidationError("negative operator power");
    OrePoly r(p.signature(), 1);
    for (int i = 0; i < k; ++i) r = r * p;
    return r;
}

inline std::string monomial_str(const OreSignature& s, const Exponents& e)
{
    std::vector<std::string> f;
    auto put = [&](const std::string& name, int k) {
        if (k == 0) return;
        f.push_back(k == 1 ? name : name + "^" + std::to_string(k));
    };
    put("z", e[OreSignature::z_slot]);
    for (std::size_t i = 0; i < s.nvars(); ++i) put(s.base_vars[i], e[s.x_slot(i)]);
    for (std::size_t i = 0; i < s.nvars(); ++i)
        put((s.classical ? "d_" : "th_") + s.base_vars[i], e[s.theta_slot(i)]);
    put("z2dz", e[s.e_slot()]);
    std::string out;
    for (std::size_t i = 0; i < f.size(); ++i) out += (i ? "*" : "") + f[i];
    return out;
}

inline std::string OrePoly::str() const
{
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        std::string m = monomial_str(*sig_, e);
        Rational a = abs(c);
        if (first) os << (c < 0 ? "-" : "");
        else os << (c < 0 ? " - " : " + ");
        first = false;
        if (m.empty()) os << a.get_str();
        else if (a == 1) os << m;
        else os << a.get_str() << "*" << m;
    }
    return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const OrePoly& p) { return os << p.str(); }

using SymbolMap = std::map<Symbol, OrePoly>;

// Applies an algebra map symbol-by-symbol to each normal-ordered monomial,
// multiplying the images left to right.  Symbols without an entry map to the
// symbol of the same name in the target signature.
inline OrePoly substitute(const OrePoly& p, const SymbolMap& images, const SigPtr& target)
{
    const auto& s = *p.signature();
    const auto& t = *target;

    auto image = [&](const Symbol& sym) -> OrePoly {
        if (auto it = images.find(sym); it != images.end()) {
            if (!same_signature(it->second.signature(), target))
                throw SignatureError("substitution image over the wrong signature");
            return it->second;
        }
        switch (sym.kind) {
        case Symbol::Kind::z:
            return t.classical ? OrePoly(target, 1) : OrePoly::z(target);
        case Symbol::Kind::var:
            return OrePoly::var(target, sym.name);
        case Symbol::Kind::theta:
            return OrePoly::theta(target, sym.name);
        case Symbol::Kind::z2dz:
            return OrePoly::z2dz(target);
        }
        return OrePoly(target);
    };

    // Inverse of a unit monomial image (nonzero constant times invertible variables).
    auto inverse = [&](const OrePoly& q) -> OrePoly {
        if (q.size() != 1) throw SignatureError("negative power of a non-monomial image");
        const auto& [e, c] = *q.terms().begin();
        Exponents inv(t.width(), 0);
        for (std::size_t i = 0; i < t.width(); ++i) {
            if (e[i] == 0) continue;
            bool xs = i >= 1 && i <= t.nvars();
            if (!xs || !t.invertible[i - 1]) throw SignatureError("negative power of a non-unit image");
            inv[i] = -e[i];
        }
        return OrePoly::monomial(target, inv, 1 / c);
    };

    std::map<std::pair<Symbol, int>, OrePoly> cache;
    auto power = [&](const Symbol& sym, int k) -> OrePoly {
        auto key = std::make_pair(sym, k);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
        OrePoly base = image(sym);
        OrePoly r = k >= 0 ? pow(base, k) : pow(inverse(base), -k);
        cache.emplace(key, r);
        return r;
    };

    OrePoly out(target);
    for (const auto& [e, c] : p.terms()) {
        OrePoly term(target, c);
        if (e[OreSignature::z_slot]) term = term * power(Symbol::Z(), e[OreSignature::z_slot]);
        for (std::size_t i = 0; i < s.nvars(); ++i)
            if (e[s.x_slot(i)]) term = term * power(Symbol::Var(s.base_vars[i]), e[s.x_slot(i)]);
        for (std::size_t i = 0; i < s.nvars(); ++i)
            if (e[s.theta_slot(i)]) term = term * power(Symbol::Theta(s.base_vars[i]), e[s.theta_slot(i)]);
        if (e[s.e_slot()]) term = term * power(Symbol::Z2Dz(), e[s.e_slot()]);
        out += term;
    }
    return out;
}

// Re-expresses p over a signature that contains all of its variables.
inline OrePoly embed(const OrePoly& p, const SigPtr& target)
{
    if (same_signature(p.signature(), target)) return p;
    const auto& s = *p.signature();
    const auto& t = *target;
    if (s.classical != t.classical) throw SignatureError("cannot embed across z profiles");
    OrePoly out(target);
    for (const auto& [e, c] : p.terms()) {
        Exponents f(t.width(), 0);
        f[OreSignature::z_slot] = e[OreSignature::z_slot];
        for (std::size_t i = 0; i < s.nvars(); ++i) {
            std::size_t j = t.index(s.base_vars[i]);
            f[t.x_slot(j)] = e[s.x_slot(i)];
            f[t.theta_slot(j)] = e[s.theta_slot(i)];
        }
        if (e[s.e_slot()]) {
            if (!t.has_z2dz) throw SignatureError("target signature has no z^2 d/dz");
            f[t.e_slot()] = e[s.e_slot()];
        }
        out.add_term(f, c);
    }
    return out;
}

// True when p involves only base variables (a function, not a differential operator).
inline bool is_function(const OrePoly& p)
{
    const auto& s = *p.signature();
    for (const auto& [e, c] : p.terms()) {
        if (e[OreSignature::z_slot] || e[s.e_slot()]) return false;
        for (std::size_t i = 0; i < s.nvars(); ++i)
            if (e[s.theta_slot(i)]) return false;
    }
    return true;
}

// d f / d x for a function f.
inline OrePoly partial(const OrePoly& f, std::string_view var)
{
    if (!is_function(f)) throw ValidationError("partial derivative of a non-function");
    const auto& s = *f.signature();
    std::size_t slot = s.x_slot(s.index(var));
    OrePoly out(f.signature());
    for (const auto& [e, c] : f.terms()) {
        if (e[slot] == 0) continue;
        Exponents g = e;
        g[slot] -= 1;
        out.add_term(g, c * e[slot]);
    }
    return out;
}

} // namespace hyperhodge
