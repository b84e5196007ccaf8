#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "groebner.hpp"
#include "linalg.hpp"
#include "presentation.hpp"

namespace hyperhodge {

// Allowed exponent range of one slot when enumerating cofactor monomials.
struct SlotRange {
    int lo = 0;
    int hi = 0;
};

// Default ranges: z, theta and z2dz nonnegative, invertible variables both ways.
inline std::vector<SlotRange> default_ranges(const OreSignature& s, int bound)
{
    std::vector<SlotRange> r(s.width(), SlotRange{0, bound});
    if (s.classical) r[OreSignature::z_slot] = {0, 0};
    if (!s.has_z2dz) r[s.e_slot()] = {0, 0};
    for (std::size_t i = 0; i < s.nvars(); ++i)
        if (s.invertible[i]) r[s.x_slot(i)] = {-bound, bound};
    return r;
}

// All exponent vectors within the ranges whose total degree is at most bound.
inline std::vector<Exponents> enumerate_monomials(const std::vector<SlotRange>& ranges, int bound)
{
    std::vector<Exponents> out;
    Exponents e(ranges.size(), 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t slot, int left) {
        if (slot == ranges.size()) {
            out.push_back(e);
            return;
        }
        for (int v = ranges[slot].lo; v <= ranges[slot].hi; ++v) {
            int cost = v < 0 ? -v : v;
            if (cost > left) continue;
            e[slot] = v;
            rec(slot + 1, left - cost);
        }
        e[slot] = 0;
    };
    rec(0, bound);
    return out;
}

// Interns monomials as column indices.
class ColumnIndex {
public:
    std::size_t id(const Exponents& e)
    {
        auto [it, fresh] = ids_.try_emplace(e, mons_.size());
        if (fresh) mons_.push_back(e);
        return it->second;
    }
    const Exponents& monomial(std::size_t c) const { return mons_[c]; }
    std::size_t size() const { return mons_.size(); }

    SparseVec vec(const OrePoly& p)
    {
        std::map<std::size_t, Rational> m;
        for (const auto& [e, c] : p.terms()) m.emplace(id(e), c);
        return to_sparse(m);
    }

private:
    std::map<Exponents, std::size_t, TermOrder> ids_;
    std::vector<Exponents> mons_;
};

// The span of mu * g over generators g and cofactor monomials mu of total degree
// at most the bound.  Membership in this span certifies ideal membership.
class IdealSpan {
public:
    IdealSpan(const Presentation& p, int bound) : pres_(p), bound_(bound), ech_(true)
    {
        const auto& s = *p.signature;
        monos_ = enumerate_monomials(default_ranges(s, bound), bound);
        for (std::size_t g = 0; g < p.generators.size(); ++g) {
            for (std::size_t m = 0; m < monos_.size(); ++m) {
                OrePoly row = OrePoly::monomial(p.signature, monos_[m]) * p.generators[g];
                std::size_t tag = g * monos_.size() + m;
                ech_.insert(cols_.vec(row), SparseVec{{tag, Rational(1)}});
            }
        }
    }

    int bound() const { return bound_; }

    struct Membership {
        bool member = false;
        std::vector<OrePoly> cofactors; // one per generator
    };

    Membership test(const OrePoly& q)
    {
        if (!same_signature(q.signature(), pres_.signature)) throw SignatureError("operator over the wrong signature");
        auto red = ech_.reduce(cols_.vec(q));
        Membership out;
        if (!red.remainder.empty()) return out;
        out.member = true;
        out.cofactors.assign(pres_.generators.size(), OrePoly(pres_.signature));
        for (const auto& [tag, c] : red.combination) {
            std::size_t g = tag / monos_.size(), m = tag % monos_.size();
            out.cofactors[g].add_term(monos_[m], c);
        }
        OrePoly check(pres_.signature);
        for (std::size_t g = 0; g < out.cofactors.size(); ++g) check += out.cofactors[g] * pres_.generators[g];
        if (!(check == q)) throw std::logic_error("membership certificate failed to verify");
        return out;
    }

private:
    Presentation pres_;
    int bound_;
    std::vector<Exponents> monos_;
    ColumnIndex cols_;
    Echelon ech_;
};

struct MembershipResult {
    bool member = false;
    int bound = 0;
    std::vector<OrePoly> cofactors;
};

// Searches cofactors up to the bound; "not a member" means only "not at this bound".
inline MembershipResult ideal_membership_bounded(const Presentation& p, const OrePoly& q, int bound)
{
    IdealSpan span(p, bound);
    auto m = span.test(q);
    return {m.member, bound, std::move(m.cofactors)};
}

// Smallest bound in [0, max_bound] at which q is found, if any.
inline MembershipResult ideal_membership_search(const Presentation& p, const OrePoly& q, int max_bound)
{
    for (int b = 0; b <= max_bound; ++b) {
        auto r = ideal_membership_bounded(p, q, b);
        if (r.member) return r;
    }
    return {false, max_bound, {}};
}

namespace detail {

// Image in R / zR, a commutative Laurent ring written with auxiliary inverse variables.
struct CommImage {
    const OreSignature& s;
    std::vector<int> inv_slot; // commutative index of 1/x_i or -1
    std::size_t nc = 0;

    explicit CommImage(const OreSignature& sig) : s(sig), inv_slot(sig.nvars(), -1)
    {
        nc = 2 * s.nvars() + 1;
        for (std::size_t i = 0; i < s.nvars(); ++i)
            if (s.invertible[i]) inv_slot[i] = static_cast<int>(nc++);
    }

    comm::Poly map(const OrePoly& p) const
    {
        comm::Poly out;
        for (const auto& [e, c] : p.terms()) {
            if (e[OreSignature::z_slot] > 0) continue;
            comm::Mono m(nc, 0);
            for (std::size_t i = 0; i < s.nvars(); ++i) {
                int x = e[s.x_slot(i)];
                if (x >= 0) m[i] = x;
                else m[inv_slot[i]] = -x;
                m[s.nvars() + i] = e[s.theta_slot(i)];
            }
            m[2 * s.nvars()] = e[s.e_slot()];
            auto [it, fresh] = out.try_emplace(m, c);
            if (!fresh) {
                it->second += c;
                if (it->second == 0) out.erase(it);
            }
        }
        return out;
    }

    std::vector<comm::Poly> unit_relations() const
    {
        std::vector<comm::Poly> out;
        for (std::size_t i = 0; i < s.nvars(); ++i) {
            if (inv_slot[i] < 0) continue;
            comm::Mono m(nc, 0), one(nc, 0);
            m[i] = 1;
            m[inv_slot[i]] = 1;
            out.push_back(comm::Poly{{m, Rational(1)}, {one, Rational(-1)}});
        }
        return out;
    }
};

} // namespace detail

// Certifies q not in the left ideal of p by showing q mod z is outside the
// commutative ideal generated by the generators mod z.  Returns true when certified.
inline bool certify_non_member(const Presentation& p, const OrePoly& q, std::size_t max_pairs = 2000)
{
    if (p.signature->classical) return false;
    detail::CommImage img(*p.signature);
    comm::Poly target = img.map(q);
    if (target.empty()) return false;
    std::vector<comm::Poly> gens = img.unit_relations();
    for (const auto& g : p.generators) gens.push_back(img.map(g));
    auto gb = comm::groebner(gens, max_pairs);
    if (!gb) return false;
    return !comm::reduce(target, *gb).empty();
}

enum class Verdict { equal, unequal, inconclusive };

inline std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::equal: return "Equal";
    case Verdict::unequal: return "Unequal";
    case Verdict::inconclusive: return "Inconclusive";
    }
    return "?";
}

struct Certificate {
    int side = 0;          // generator of presentation `side` expressed in the other one
    std::size_t index = 0; // generator index
    std::vector<OrePoly> cofactors;
};

struct EquivalenceResult {
    Verdict verdict = Verdict::inconclusive;
    int bound = 0;
    std::vector<Certificate> certificates;
    std::string witness; // generator outside the other ideal, for Unequal / Inconclusive
};

inline EquivalenceResult presentation_equiv_bounded(const Presentation& a, const Presentation& b, int bound)
{
    if (!same_signature(a.signature, b.signature)) throw SignatureError("presentations over different signatures");
    EquivalenceResult out;
    out.bound = bound;
    IdealSpan sa(a, bound), sb(b, bound);
    std::vector<std::pair<int, std::size_t>> missing;
    const Presentation* pres[2] = {&a, &b};
    IdealSpan* other[2] = {&sb, &sa};
    for (int side = 0; side < 2; ++side) {
        for (std::size_t i = 0; i < pres[side]->generators.size(); ++i) {
            auto m = other[side]->test(pres[side]->generators[i]);
            if (m.member) out.certificates.push_back({side, i, std::move(m.cofactors)});
            else missing.emplace_back(side, i);
        }
    }
    if (missing.empty()) {
        out.verdict = Verdict::equal;
        return out;
    }
    for (auto [side, i] : missing) {
        const auto& g = pres[side]->generators[i];
        if (certify_non_member(*pres[1 - side], g)) {
            out.verdict = Verdict::unequal;
            out.witness = g.str();
            return out;
        }
    }
    out.verdict = Verdict::inconclusive;
    out.witness = pres[missing[0].first]->generators[missing[0].second].str();
    return out;
}

// Tries bounds 0..max_bound and stops at the first conclusive verdict.
inline EquivalenceResult presentation_equiv_search(const Presentation& a, const Presentation& b, int max_bound)
{
    EquivalenceResult r;
    for (int d = 0; d <= max_bound; ++d) {
        r = presentation_equiv_bounded(a, b, d);
        if (r.verdict != Verdict::inconclusive) return r;
    }
    return r;
}

} // namespace hyperhodge
