#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "ore.hpp"

namespace hyperhodge {

using json = nlohmann::json;

// A cyclic module R / (sum of R g): a signature plus left ideal generators.
struct Presentation {
    SigPtr signature;
    std::vector<OrePoly> generators;
    std::map<std::string, std::string> metadata;

    Presentation() = default;
    Presentation(SigPtr sig, std::vector<OrePoly> gens = {}) : signature(std::move(sig)), generators(std::move(gens))
    {
        for (const auto& g : generators)
            if (!same_signature(g.signature(), signature))
                throw SignatureError("generator over the wrong signature");
    }

    void add(OrePoly g)
    {
        if (!same_signature(g.signature(), signature)) throw SignatureError("generator over the wrong signature");
        generators.push_back(std::move(g));
    }

    std::string str() const
    {
        std::string out;
        for (const auto& g : generators) out += g.str() + "\n";
        return out;
    }
};

inline json signature_to_json(const OreSignature& s)
{
    json inv = json::array();
    for (std::size_t i = 0; i < s.nvars(); ++i)
        if (s.invertible[i]) inv.push_back(s.base_vars[i]);
    return json{{"base_vars", s.base_vars}, {"invertible", inv}, {"has_z2dz", s.has_z2dz}, {"classical", s.classical}};
}

inline SigPtr signature_from_json(const json& j)
{
    try {
        auto vars = j.at("base_vars").get<std::vector<std::string>>();
        auto inv = j.value("invertible", std::vector<std::string>{});
        return make_signature(vars, inv, j.value("has_z2dz", false), j.value("classical", false));
    } catch (const json::exception& e) {
        throw ValidationError(std::string("bad signature: ") + e.what());
    }
}

inline json poly_to_json(const OrePoly& p)
{
    const auto& s = *p.signature();
    json terms = json::array();
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [e, c] = *it;
        json x = json::object(), th = json::object();
        for (std::size_t i = 0; i < s.nvars(); ++i) {
            if (e[s.x_slot(i)]) x[s.base_vars[i]] = e[s.x_slot(i)];
            if (e[s.theta_slot(i)]) th[s.base_vars[i]] = e[s.theta_slot(i)];
        }
        terms.push_back(json{{"coeff", to_string(c)}, {"z", e[OreSignature::z_slot]}, {"x", x}, {"theta", th},
                             {"z2dz", e[s.e_slot()]}});
    }
    return terms;
}

inline OrePoly poly_from_json(const json& j, const SigPtr& sig)
{
    if (!j.is_array()) throw ValidationError("operator must be a list of monomials");
    OrePoly p(sig);
    try {
        for (const auto& t : j) {
            Exponents e(sig->width(), 0);
            e[OreSignature::z_slot] = t.value("z", 0);
            const json xs = t.value("x", json::object());
            const json ths = t.value("theta", json::object());
            for (const auto& [name, k] : xs.items()) e[sig->x_slot(sig->index(name))] = k.get<int>();
            for (const auto& [name, k] : ths.items()) e[sig->theta_slot(sig->index(name))] = k.get<int>();
            e[sig->e_slot()] = t.value("z2dz", 0);
            const auto& c = t.at("coeff");
            p.add_term(e, c.is_string() ? parse_rational(c.get<std::string>()) : Rational(c.get<long>()));
        }
    } catch (const json::exception& ex) {
        throw ValidationError(std::string("bad operator: ") + ex.what());
    }
    return p;
}

inline json to_json(const Presentation& p)
{
    json gens = json::array();
    for (const auto& g : p.generators) gens.push_back(poly_to_json(g));
    json out{{"signature", signature_to_json(*p.signature)}, {"generators", gens}};
    if (!p.metadata.empty()) out["metadata"] = p.metadata;
    return out;
}

inline Presentation presentation_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("signature") || !j.contains("generators"))
        throw ValidationError("presentation needs 'signature' and 'generators'");
    Presentation p(signature_from_json(j.at("signature")));
    for (const auto& g : j.at("generators")) p.add(poly_from_json(g, p.signature));
    if (j.contains("metadata")) p.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
    return p;
}

} // namespace hyperhodge
