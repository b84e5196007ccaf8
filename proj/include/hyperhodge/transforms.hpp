#pragma once

#include <optional>
#include <string>
#include <vector>

#include "presentation.hpp"

namespace hyperhodge {

inline Presentation substitute(const Presentation& p, const SymbolMap& images, const SigPtr& target)
{
    Presentation out(target);
    for (const auto& g : p.generators) out.add(substitute(g, images, target));
    out.metadata = p.metadata;
    return out;
}

// Appends base variables to the signature; generators are carried over unchanged.
inline Presentation adjoin_variables(const Presentation& p, const std::vector<std::string>& vars,
                                     const std::vector<std::string>& invertible)
{
    const auto& s = *p.signature;
    std::vector<std::string> all = s.base_vars;
    std::vector<std::string> inv;
    for (std::size_t i = 0; i < s.nvars(); ++i)
        if (s.invertible[i]) inv.push_back(s.base_vars[i]);
    all.insert(all.end(), vars.begin(), vars.end());
    inv.insert(inv.end(), invertible.begin(), invertible.end());
    SigPtr sig = make_signature(all, inv, s.has_z2dz, s.classical);
    Presentation out(sig);
    for (const auto& g : p.generators) out.add(embed(g, sig));
    out.metadata = p.metadata;
    return out;
}

// Fourier-Laplace transform in the fibre variables:
//   w_i -> th_{lambda_i},  th_{w_i} -> -lambda_i,  z2dz -> z2dz + sum_i lambda_i th_{lambda_i}.
inline Presentation fourier_laplace(const Presentation& p, std::optional<std::vector<std::string>> names = {})
{
    const auto& s = *p.signature;
    if (s.classical || !s.has_z2dz) throw SignatureError("Fourier-Laplace needs z and z^2 d/dz");
    for (std::size_t i = 0; i < s.nvars(); ++i)
        if (s.invertible[i]) throw SignatureError("Fourier-Laplace needs polynomial variables");
    std::vector<std::string> dual;
    if (names) {
        if (names->size() != s.nvars()) throw ValidationError("wrong number of dual variable names");
        dual = *names;
    } else {
        for (std::size_t i = 0; i < s.nvars(); ++i) dual.push_back("lam" + std::to_string(i + 1));
    }
    SigPtr t = make_signature(dual, {}, true);
    SymbolMap m;
    OrePoly euler = OrePoly::z2dz(t);
    for (std::size_t i = 0; i < s.nvars(); ++i) {
        m[Symbol::Var(s.base_vars[i])] = OrePoly::theta(t, dual[i]);
        m[Symbol::Theta(s.base_vars[i])] = -OrePoly::var(t, dual[i]);
        euler += OrePoly::var(t, dual[i]) * OrePoly::theta(t, dual[i]);
    }
    m[Symbol::Z2Dz()] = euler;
    return substitute(p, m, t);
}

// Conjugation by exp(phi / z): th_i -> th_i - d phi / d x_i and z2dz -> z2dz + phi.
inline Presentation exp_twist(const Presentation& p, const OrePoly& phi)
{
    if (!same_signature(phi.signature(), p.signature)) throw SignatureError("twist over the wrong signature");
    if (!is_function(phi)) throw ValidationError("exponential twist needs a function of the base variables");
    const auto& s = *p.signature;
    SymbolMap m;
    for (std::size_t i = 0; i < s.nvars(); ++i)
        m[Symbol::Theta(s.base_vars[i])] = OrePoly::theta(p.signature, s.base_vars[i]) - partial(phi, s.base_vars[i]);
    if (s.has_z2dz) m[Symbol::Z2Dz()] = OrePoly::z2dz(p.signature) + phi;
    return substitute(p, m, p.signature);
}

// Presentation of z^s M from one of M: z2dz -> z2dz - s z.
inline Presentation z_scale(const Presentation& p, const Rational& s)
{
    const auto& sig = *p.signature;
    if (!sig.has_z2dz) throw SignatureError("z scaling needs z^2 d/dz");
    SymbolMap m;
    m[Symbol::Z2Dz()] = OrePoly::z2dz(p.signature) - s * OrePoly::z(p.signature);
    Presentation out = substitute(p, m, p.signature);
    Rational prev = 0;
    if (auto it = p.metadata.find("z_power"); it != p.metadata.end()) prev = parse_rational(it->second);
    out.metadata["z_power"] = to_string(prev + s);
    return out;
}

} // namespace hyperhodge
