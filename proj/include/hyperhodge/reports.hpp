#pragma once

// JSON views of library results.  Rationals are written as "p/q" strings.

#include <string>
#include <vector>

#include <json.hpp>

#include "cone.hpp"
#include "elimination.hpp"
#include "hypergeometric.hpp"
#include "irregular_hodge.hpp"
#include "presentation.hpp"

#ifndef HYPERHODGE_VERSION
#define HYPERHODGE_VERSION "0.1.0"
#endif

namespace hyperhodge {

inline constexpr const char* version() { return HYPERHODGE_VERSION; }

inline json int_json(const Integer& x) { return x.fits_slong_p() ? json(x.get_si()) : json(x.get_str()); }

inline json int_vec_json(const std::vector<Integer>& v)
{
    json a = json::array();
    for (const auto& x : v) a.push_back(int_json(x));
    return a;
}

inline json rational_vec_json(const std::vector<Rational>& v) { return to_strings(v); }

// Accepts "p/q" strings, decimal strings and JSON integers.
inline Rational rational_from_json(const json& j)
{
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw ValidationError("rationals must be strings like \"1/4\" or integers, got " + j.dump());
}

inline std::vector<Rational> rationals_from_json(const json& j)
{
    if (!j.is_array()) throw ValidationError("expected a list of rationals, got " + j.dump());
    std::vector<Rational> out;
    for (const auto& x : j) out.push_back(rational_from_json(x));
    return out;
}

inline json to_json(const Facet& f)
{
    json cols = json::array();
    for (auto c : f.columns) cols.push_back(c);
    return json{{"normal", int_vec_json(f.normal)}, {"weight", int_json(f.weight)}, {"columns", cols}};
}

inline json facets_json(const std::vector<Facet>& fs)
{
    json a = json::array();
    for (const auto& f : fs) a.push_back(to_json(f));
    return a;
}

inline json params_json(const HypParams& p)
{
    return json{{"n", p.n}, {"m", p.m}, {"alpha", rational_vec_json(p.alpha)}, {"beta", rational_vec_json(p.beta)}};
}

inline json to_json(const EliminationResult& r)
{
    return json{{"conclusive", r.conclusive},
                {"bound", r.bound},
                {"rank_estimate", r.rank_estimate},
                {"rows", r.rows},
                {"components", r.components},
                {"span_dim", r.span_dim},
                {"reason", r.reason},
                {"presentation", to_json(r.presentation)}};
}

inline json to_json(const EquivalenceResult& r)
{
    json certs = json::array();
    for (const auto& c : r.certificates) {
        json cof = json::array();
        for (const auto& x : c.cofactors) cof.push_back(poly_to_json(x));
        certs.push_back(json{{"side", c.side}, {"index", c.index}, {"cofactors", cof}});
    }
    return json{{"verdict", to_string(r.verdict)}, {"bound", r.bound}, {"witness", r.witness}, {"certificates", certs}};
}

inline json operator_strings(const Presentation& p)
{
    json a = json::array();
    for (const auto& g : p.generators) a.push_back(g.str());
    return a;
}

inline json to_json(const TPoly& p) { return p.str(); }

inline json to_json(const TMatrix& m)
{
    json rows = json::array();
    for (const auto& r : m) {
        json row = json::array();
        for (const auto& x : r) row.push_back(x.str());
        rows.push_back(row);
    }
    return rows;
}

inline json to_json(const QMatrix& m)
{
    json rows = json::array();
    for (const auto& r : m) rows.push_back(rational_vec_json(r));
    return rows;
}

inline json to_json(const QBasis& q)
{
    json Q = json::array(), Qbar = json::array();
    for (const auto& x : q.Q) Q.push_back(x.str());
    for (const auto& x : q.Qbar) Qbar.push_back(x.str());
    return json{{"Q", Q},
                {"Qbar", Qbar},
                {"c", to_string(q.c)},
                {"c_statement", to_string(q.c_statement)},
                {"c_proof", q.c_proof ? json(to_string(*q.c_proof)) : json(nullptr)},
                {"c_solved", q.c_solved ? json(to_string(*q.c_solved)) : json(nullptr)},
                {"c_verdict", q.c_verdict}};
}

inline json to_json(const ConnectionMatrices& c)
{
    json v = json::array();
    for (const auto& x : c.shape_violations) v.push_back(x);
    return json{{"n", c.n},
                {"A0", to_json(c.A0)},
                {"Ainf_prime", to_json(c.Ainf_prime)},
                {"Ainf", to_json(c.Ainf)},
                {"c", to_string(c.c)},
                {"epsilon", to_string(c.epsilon)},
                {"shape_ok", c.shape_violations.empty()},
                {"shape_violations", v}};
}

inline json to_json(const IrrHodgeReport& r)
{
    json numbers = json::array();
    for (const auto& [x, k] : r.numbers) numbers.push_back(json{{"jump", to_string(x)}, {"multiplicity", k}});
    json table = json::array();
    for (const auto& [a, row] : r.table) table.push_back(json{{"alpha", to_string(a)}, {"nu", int_vec_json(row)}});
    return json{{"params", params_json(r.params)},
                {"epsilon", to_string(r.epsilon)},
                {"rho", rational_vec_json(r.rho)},
                {"numbers", numbers},
                {"unnormalized_jumps", rational_vec_json(r.unnormalized)},
                {"filtration_table", table}};
}

inline json to_json(const RegularHodgeReport& r)
{
    json R = json::array();
    for (const auto& x : r.R) R.push_back(x.str());
    return json{{"params", params_json(r.params)},
                {"hodge_numbers", r.hodge_numbers},
                {"R", R},
                {"fedorov_counts", r.fedorov},
                {"homogeneous", r.homogeneous}};
}

} // namespace hyperhodge
