#pragma once

// Job dispatch behind the command line tool.  A job names a command, carries a
// JSON payload and returns an exit code plus a deterministic report.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "reports.hpp"
#include "transforms.hpp"

namespace hyperhodge::cli {

struct JobSpec {
    std::string command;
    json params = json::object();
    std::optional<int> bound;
    std::string output; // empty: stdout
    std::string format = "json";
};

struct JobResult {
    int exit_code = 0;
    json report;
    std::vector<std::string> text;              // human readable lines
    std::vector<std::vector<std::string>> csv;  // first row is the header
};

inline const std::vector<std::string>& commands()
{
    static const std::vector<std::string> c = {"facets",     "admissible",    "gkz-emit",     "fl",
                                               "reduce",     "irr-hodge",     "regular-hodge", "connection",
                                               "verify",     "hyp-operator",  "hyp-reduce",   "hyp-check"};
    return c;
}

// "gkz emit" and "hyp operator" style names map to the dashed form.
inline std::string canonical_command(std::string c)
{
    std::replace(c.begin(), c.end(), ' ', '-');
    std::replace(c.begin(), c.end(), '_', '-');
    return c;
}

namespace detail {

struct Outcome {
    json result = json::object();
    json bounds = json::object();
    std::vector<std::string> text;
    std::vector<std::vector<std::string>> csv;
    int exit_code = 0;
    std::string status = "ok";
};

inline const json& need(const json& p, const char* key)
{
    if (!p.is_object() || !p.contains(key)) throw ValidationError(std::string("missing parameter '") + key + "'");
    return p.at(key);
}

inline IntMatrix matrix_param(const json& p)
{
    if (p.contains("A")) return int_matrix_from_json(p.at("A"));
    if (p.contains("family")) {
        const auto& f = p.at("family");
        if (!f.is_array() || f.size() != 2) throw ValidationError("'family' must be [n, m]");
        long n = f[0].get<long>(), m = f[1].get<long>();
        if (n < 0 || m < 0) throw ValidationError("'family' entries must be nonnegative");
        return family_matrix(static_cast<std::size_t>(n), static_cast<std::size_t>(m));
    }
    throw ValidationError("missing parameter 'A' or 'family'");
}

inline HypParams hyp_params(const json& p)
{
    auto alpha = rationals_from_json(need(p, "alpha"));
    auto beta = p.contains("beta") ? rationals_from_json(p.at("beta")) : std::vector<Rational>{};
    if (p.contains("n") && p.at("n").get<long>() != static_cast<long>(alpha.size()))
        throw ValidationError("'n' does not match the number of alphas");
    if (p.contains("m") && p.at("m").get<long>() != static_cast<long>(beta.size()))
        throw ValidationError("'m' does not match the number of betas");
    return make_params(std::move(alpha), std::move(beta));
}

inline std::string join(const std::vector<std::string>& v, const std::string& sep = ", ")
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
    return s;
}

inline std::string ints_str(const std::vector<Integer>& v)
{
    std::vector<std::string> s;
    for (const auto& x : v) s.push_back(x.get_str());
    return "(" + join(s, ",") + ")";
}

inline void add_operators(Outcome& o, const Presentation& p)
{
    for (const auto& g : p.generators) o.text.push_back(g.str());
}

// Parameters used when a verify case names only the type (n, m): alphas in
// [0, 1/2), betas in [1/2, 1), which is arc separated and irreducible.
inline HypParams default_case_params(std::size_t n, std::size_t m)
{
    std::vector<Rational> a, b;
    for (std::size_t i = 0; i < n; ++i) a.push_back(Rational(static_cast<long>(i), static_cast<long>(2 * n)));
    for (std::size_t j = 0; j < m; ++j) {
        Rational x(static_cast<long>(2 * m + 2 * j + 1), static_cast<long>(4 * m));
        x.canonicalize();
        b.push_back(x);
    }
    for (auto& x : a) x.canonicalize();
    return make_params(a, b);
}

inline std::pair<std::size_t, std::size_t> case_type(const std::string& c, const std::string& stem)
{
    // stem-N-M
    auto rest = c.substr(stem.size());
    std::size_t dash = rest.find('-');
    try {
        if (rest.empty() || dash == std::string::npos) throw std::invalid_argument(c);
        return {std::stoul(rest.substr(0, dash)), std::stoul(rest.substr(dash + 1))};
    } catch (const std::exception&) {
        throw ValidationError("case must look like " + stem + "N-M, got '" + c + "'");
    }
}

inline Outcome cmd_facets(const JobSpec& job)
{
    IntMatrix A = matrix_param(job.params);
    auto fs = cone_facets(A);
    IntVec csum(A.rows(), 0);
    for (std::size_t j = 0; j < A.cols(); ++j)
        for (std::size_t i = 0; i < A.rows(); ++i) csum[i] += A.entries[i][j];
    Outcome o;
    o.result = {{"matrix", to_json(A)}, {"column_sum", int_vec_json(csum)}, {"facets", facets_json(fs)}};
    o.csv.push_back({"normal", "weight"});
    for (const auto& f : fs) {
        o.text.push_back("normal " + ints_str(f.normal) + " weight " + f.weight.get_str());
        o.csv.push_back({ints_str(f.normal), f.weight.get_str()});
    }
    return o;
}

inline Outcome cmd_admissible(const JobSpec& job)
{
    IntMatrix A = matrix_param(job.params);
    auto beta = rationals_from_json(need(job.params, "beta"));
    ShiftSearch search(A);
    auto bad = search.region.violated_facet(beta);
    auto shift = search.find(beta);
    Outcome o;
    // member: beta lies in the region shifted by N^d; in_region: the region itself.
    o.result = {{"member", shift.has_value()},
                {"shift", shift ? int_vec_json(*shift) : json(nullptr)},
                {"in_region", !bad.has_value()},
                {"violated_facet", bad ? to_json(search.region.facets[*bad]) : json(nullptr)}};
    o.text.push_back("member: " + std::string(shift ? "true, shift " + ints_str(*shift) : "false"));
    o.text.push_back(std::string("in region: ") + (bad ? "false" : "true"));
    if (bad) o.text.push_back("violated facet normal " + ints_str(search.region.facets[*bad].normal));
    return o;
}

inline Outcome cmd_gkz_emit(const JobSpec& job)
{
    IntMatrix A = matrix_param(job.params);
    auto beta = rationals_from_json(need(job.params, "beta"));
    std::string system = job.params.value("system", std::string("N"));
    long box = job.bound ? *job.bound : job.params.value("box_bound", -1L);
    if (box < 0) box = ::hyperhodge::detail::default_box_bound(A);
    Presentation p;
    if (system == "M") p = build_M(A, beta, box);
    else if (system == "check_M") p = build_check_M(A, beta, box);
    else if (system == "N") p = build_N(A, beta, box);
    else if (system == "check_N") p = build_check_N(A, beta, job.params.value("attach_z2dz_minus_z", true), box);
    else throw ValidationError("system must be one of M, check_M, N, check_N");
    Outcome o;
    o.bounds["box_bound"] = box;
    o.result = {{"system", system}, {"presentation", to_json(p)}, {"operators", operator_strings(p)}};
    add_operators(o, p);
    return o;
}

inline Outcome cmd_fl(const JobSpec& job)
{
    Presentation p = presentation_from_json(need(job.params, "presentation"));
    std::optional<std::vector<std::string>> names;
    if (job.params.contains("names")) names = job.params.at("names").get<std::vector<std::string>>();
    Presentation q = fourier_laplace(p, names);
    Outcome o;
    o.result = {{"presentation", to_json(q)}, {"operators", operator_strings(q)}};
    add_operators(o, q);
    return o;
}

inline Outcome cmd_reduce(const JobSpec& job)
{
    Presentation p = presentation_from_json(need(job.params, "presentation"));
    auto fibre = need(job.params, "fibre").get<std::vector<std::string>>();
    int bound = job.bound ? *job.bound : job.params.value("bound", 4);
    int mb = job.params.value("minimize_bound", -1);
    auto r = derham_eliminate(p, fibre, bound, mb);
    Outcome o;
    o.bounds["degree_bound"] = bound;
    o.bounds["minimize_bound"] = mb < 0 ? bound : mb;
    o.result = to_json(r);
    o.result["operators"] = operator_strings(r.presentation);
    if (!r.conclusive) {
        o.exit_code = static_cast<int>(ExitCode::inconclusive);
        o.status = "inconclusive";
        o.text.push_back("inconclusive at bound " + std::to_string(bound) + ": " + r.reason);
    }
    add_operators(o, r.presentation);
    return o;
}

inline Outcome cmd_irr_hodge(const JobSpec& job)
{
    auto r = irr_hodge(hyp_params(job.params));
    Outcome o;
    o.result = to_json(r);
    o.csv.push_back({"jump", "multiplicity"});
    for (const auto& [x, k] : r.numbers) {
        o.csv.push_back({to_string(x), std::to_string(k)});
        o.text.push_back("jump " + to_string(x) + " multiplicity " + std::to_string(k));
    }
    o.text.push_back("epsilon " + to_string(r.epsilon));
    return o;
}

inline Outcome cmd_regular_hodge(const JobSpec& job)
{
    auto r = regular_hodge(hyp_params(job.params));
    Outcome o;
    o.result = to_json(r);
    o.csv.push_back({"p", "h"});
    for (std::size_t i = 0; i < r.hodge_numbers.size(); ++i) {
        o.csv.push_back({std::to_string(i), std::to_string(r.hodge_numbers[i])});
        o.text.push_back("h^" + std::to_string(i) + " = " + std::to_string(r.hodge_numbers[i]));
    }
    return o;
}

inline Outcome cmd_connection(const JobSpec& job)
{
    HypParams p = hyp_params(job.params);
    auto q = q_basis(p);
    auto c = connection_matrices(p);
    Outcome o;
    o.result = {{"q_basis", to_json(q)}, {"connection", to_json(c)}};
    o.text.push_back("c = " + to_string(c.c) + " (" + q.c_verdict + ")");
    for (const auto& row : c.A0) {
        std::vector<std::string> s;
        for (const auto& x : row) s.push_back(x.str());
        o.text.push_back("A0 | " + join(s, " | "));
    }
    std::vector<std::string> d1, d2;
    for (std::size_t i = 0; i < c.n; ++i) {
        d1.push_back(to_string(c.Ainf_prime[i][i]));
        d2.push_back(to_string(c.Ainf[i][i]));
    }
    o.text.push_back("Ainf' = diag(" + join(d1) + ")");
    o.text.push_back("Ainf = diag(" + join(d2) + ")");
    if (!c.shape_violations.empty()) {
        o.exit_code = static_cast<int>(ExitCode::shape);
        o.status = "shape-mismatch";
        for (const auto& v : c.shape_violations) o.text.push_back("shape: " + v);
    }
    return o;
}

inline Outcome cmd_verify(const JobSpec& job)
{
    const auto& p = job.params;
    int eq_bound = p.value("equivalence_bound", 2);
    Outcome o;
    Presentation a, b;
    if (p.contains("left") || p.contains("right")) {
        a = presentation_from_json(need(p, "left"));
        b = presentation_from_json(need(p, "right"));
        if (job.bound) eq_bound = *job.bound;
    } else {
        std::string c = need(p, "case").get<std::string>();
        if (c.rfind("pipeline-", 0) == 0) {
            auto [n, m] = case_type(c, "pipeline-");
            HypParams hp = p.contains("alpha") ? hyp_params(p) : default_case_params(n, m);
            if (hp.n != n || hp.m != m) throw ValidationError("parameters do not match the case type");
            int bound = job.bound ? *job.bound : default_pipeline_bound(hp);
            auto r = gkz_reduction_pipeline(hp, bound);
            o.bounds["elimination"] = bound;
            o.result["params"] = params_json(hp);
            a = r.presentation;
            b = thm_presentation(hp);
        } else if (c.rfind("fl-gkz-", 0) == 0) {
            auto [n, m] = case_type(c, "fl-gkz-");
            IntMatrix A = family_matrix(n, m);
            std::vector<Rational> beta = p.contains("beta") ? rationals_from_json(p.at("beta"))
                                                            : std::vector<Rational>(A.rows(), Rational(1, 3));
            long box = ::hyperhodge::detail::default_box_bound(A);
            o.bounds["box_bound"] = box;
            o.result["beta"] = rational_vec_json(beta);
            a = fourier_laplace(build_check_N(A, beta, true, box));
            b = z_scale(build_N(A, beta, box), 1);
            a.metadata.clear();
            b.metadata.clear();
        } else {
            throw ValidationError("unknown verify case '" + c + "' (pipeline-N-M or fl-gkz-N-M)");
        }
    }
    auto e = presentation_equiv_search(a, b, eq_bound);
    o.bounds["equivalence"] = eq_bound;
    o.result["verdict"] = to_string(e.verdict);
    o.result["equivalence"] = to_json(e);
    o.result["left"] = operator_strings(a);
    o.result["right"] = operator_strings(b);
    o.text.push_back(to_string(e.verdict) + " (bound " + std::to_string(e.bound) + ")");
    if (e.verdict == Verdict::inconclusive) {
        o.exit_code = static_cast<int>(ExitCode::inconclusive);
        o.status = "inconclusive";
    }
    return o;
}

inline Outcome cmd_hyp_operator(const JobSpec& job)
{
    HypParams p = hyp_params(job.params);
    OrePoly h = hyp_operator(p);
    Presentation t = thm_presentation(p);
    Outcome o;
    o.result = {{"params", params_json(p)},
                {"operator", h.str()},
                {"operator_terms", poly_to_json(h)},
                {"epsilon", to_string(epsilon(p))},
                {"presentation", to_json(t)},
                {"operators", operator_strings(t)}};
    o.text.push_back("H = " + h.str());
    add_operators(o, t);
    return o;
}

inline Outcome cmd_hyp_reduce(const JobSpec& job)
{
    HypParams p = hyp_params(job.params);
    int bound = job.bound ? *job.bound : default_pipeline_bound(p);
    Outcome o;
    o.bounds["elimination"] = bound;
    auto r = gkz_reduction_pipeline(p, bound);
    o.result = {{"params", params_json(p)},
                {"gamma", rational_vec_json(r.gamma)},
                {"shift", int_vec_json(r.shift)},
                {"elimination", to_json(r.elimination)},
                {"presentation", to_json(r.presentation)},
                {"operators", operator_strings(r.presentation)}};
    add_operators(o, r.presentation);
    return o;
}

inline Outcome cmd_hyp_check(const JobSpec& job)
{
    HypParams p = hyp_params(job.params);
    Outcome o;
    bool irr = irreducible(p);
    o.result = {{"params", params_json(p)}, {"irreducible", irr}, {"epsilon", to_string(epsilon(p))}};
    o.text.push_back(std::string("irreducible: ") + (irr ? "true" : "false"));
    if (!irr) return o;
    bool arc = arc_separated(p);
    o.result["arc_separated"] = arc;
    o.text.push_back(std::string("arc separated: ") + (arc ? "true" : "false"));
    if (p.N() < 2 || p.n < 1) return o;
    // Normalize alpha_1 = 0 by a Kummer twist, then look for an admissible shift.
    Rational eta = -p.alpha.front();
    HypParams q = kummer_twist(p, eta).params;
    auto gamma = family_gamma(q);
    ShiftSearch search(family_matrix(q.n, q.m));
    auto k = search.find(gamma);
    o.result["kummer_shift"] = to_string(eta);
    o.result["gamma"] = rational_vec_json(gamma);
    o.result["admissible"] = k.has_value();
    o.result["shift"] = k ? int_vec_json(*k) : json(nullptr);
    o.text.push_back(std::string("admissible: ") + (k ? "true, shift " + ints_str(*k) : "false"));
    if (!k) {
        o.exit_code = static_cast<int>(ExitCode::admissibility);
        o.status = "not-admissible";
    }
    return o;
}

inline const std::map<std::string, std::function<Outcome(const JobSpec&)>>& handlers()
{
    static const std::map<std::string, std::function<Outcome(const JobSpec&)>> h = {
        {"facets", cmd_facets},         {"admissible", cmd_admissible},       {"gkz-emit", cmd_gkz_emit},
        {"fl", cmd_fl},                 {"reduce", cmd_reduce},               {"irr-hodge", cmd_irr_hodge},
        {"regular-hodge", cmd_regular_hodge}, {"connection", cmd_connection}, {"verify", cmd_verify},
        {"hyp-operator", cmd_hyp_operator},   {"hyp-reduce", cmd_hyp_reduce}, {"hyp-check", cmd_hyp_check}};
    return h;
}

} // namespace detail

inline JobResult run(const JobSpec& spec)
{
    JobSpec job = spec;
    job.command = canonical_command(job.command);
    JobResult out;
    json bounds = json::object();
    if (job.bound) bounds["requested"] = *job.bound;
    json report = {{"command", job.command}, {"version", version()}};
    try {
        if (job.format != "json" && job.format != "csv" && job.format != "text")
            throw ValidationError("format must be json, csv or text");
        if (job.bound && *job.bound < 0) throw ValidationError("bound must be nonnegative");
        auto it = detail::handlers().find(job.command);
        if (it == detail::handlers().end()) throw ValidationError("unknown command '" + job.command + "'");
        if (!job.params.is_object()) throw ValidationError("parameters must be a JSON object");
        auto o = it->second(job);
        for (auto& [k, v] : o.bounds.items()) bounds[k] = v;
        report["result"] = std::move(o.result);
        report["status"] = o.status;
        out.exit_code = o.exit_code;
        out.text = std::move(o.text);
        out.csv = std::move(o.csv);
    } catch (const Error& e) {
        out.exit_code = static_cast<int>(e.code());
        report["status"] = "error";
        report["error"] = e.what();
        out.text = {std::string("error: ") + e.what()};
    } catch (const json::exception& e) {
        out.exit_code = static_cast<int>(ExitCode::validation);
        report["status"] = "error";
        report["error"] = std::string("bad parameters: ") + e.what();
        out.text = {report["error"].get<std::string>()};
    } catch (const std::exception& e) {
        out.exit_code = static_cast<int>(ExitCode::shape);
        report["status"] = "error";
        report["error"] = std::string("internal: ") + e.what();
        out.text = {report["error"].get<std::string>()};
    }
    report["bounds"] = bounds;
    report["exit_code"] = out.exit_code;
    out.report = std::move(report);
    return out;
}

inline std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

inline std::string render(const JobResult& r, const std::string& format)
{
    std::ostringstream os;
    if (format == "json") {
        os << r.report.dump(2) << "\n";
    } else if (format == "text") {
        os << r.report.value("command", "") << " (" << r.report.value("status", "") << ")\n";
        for (const auto& l : r.text) os << l << "\n";
    } else {
        auto rows = r.csv;
        if (rows.empty()) {
            // Scalars of the result as key,value pairs.
            rows.push_back({"key", "value"});
            if (r.report.contains("result"))
                for (const auto& [k, v] : r.report.at("result").items())
                    if (!v.is_structured()) rows.push_back({k, v.is_string() ? v.get<std::string>() : v.dump()});
            if (r.report.contains("error")) rows.push_back({"error", r.report.at("error").get<std::string>()});
        }
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_escape(row[i]);
            os << "\n";
        }
    }
    return os.str();
}

// Relative paths and the default name land in HYPERHODGE_OUT_DIR when it is set.
inline std::string resolve_output(const JobSpec& job)
{
    const char* dir = std::getenv("HYPERHODGE_OUT_DIR");
    std::string out = job.output;
    if (!dir || !*dir) return out;
    if (out.empty()) out = canonical_command(job.command) + "." + job.format;
    std::filesystem::path p(out);
    if (p.is_relative()) p = std::filesystem::path(dir) / p;
    return p.string();
}

inline void write_output(const std::string& path, const std::string& body, std::ostream& fallback)
{
    if (path.empty() || path == "-") {
        fallback << body;
        return;
    }
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary);
    if (!f) throw ValidationError("cannot write " + path);
    f << body;
}

inline json read_json_file(const std::string& path)
{
    std::ifstream f(path);
    if (!f) throw ValidationError("cannot read " + path);
    try {
        return json::parse(f);
    } catch (const json::parse_error& e) {
        throw ValidationError("invalid JSON in " + path + ": " + e.what());
    }
}

inline JobSpec job_from_json(const json& j)
{
    if (!j.is_object()) throw ValidationError("each job must be an object");
    JobSpec job;
    job.command = j.at("command").get<std::string>();
    job.params = j.value("params", json::object());
    if (j.contains("bound")) job.bound = j.at("bound").get<int>();
    job.output = j.value("output", std::string());
    job.format = j.value("format", std::string("json"));
    return job;
}

struct BatchResult {
    int exit_code = 0;
    json summary;
};

// Runs every job, at most `threads` at a time; results keep the file order.
// A single job object is accepted as a one-element list.
// Jobs with an output path write their own report, the rest are embedded.
inline BatchResult run_batch(const json& doc, std::size_t threads = 1)
{
    if (doc.is_object() && doc.contains("command")) return run_batch(json::array({doc}), threads);
    const json& list = doc.is_object() && doc.contains("jobs") ? doc.at("jobs") : doc;
    if (!list.is_array()) throw ValidationError("batch file must be a list of jobs or {\"jobs\": [...]}");
    std::vector<JobSpec> jobs;
    std::vector<std::optional<JobResult>> results(list.size());
    std::vector<std::string> parse_errors(list.size());
    for (std::size_t i = 0; i < list.size(); ++i) {
        try {
            jobs.push_back(job_from_json(list[i]));
        } catch (const std::exception& e) {
            jobs.emplace_back();
            parse_errors[i] = e.what();
        }
    }
    threads = std::max<std::size_t>(1, threads);
    for (std::size_t start = 0; start < jobs.size(); start += threads) {
        std::vector<std::future<JobResult>> fut;
        for (std::size_t i = start; i < std::min(jobs.size(), start + threads); ++i)
            if (parse_errors[i].empty())
                fut.push_back(std::async(threads > 1 ? std::launch::async : std::launch::deferred,
                                         [&jobs, i] { return run(jobs[i]); }));
        std::size_t k = 0;
        for (std::size_t i = start; i < std::min(jobs.size(), start + threads); ++i)
            if (parse_errors[i].empty()) results[i] = fut[k++].get();
    }
    BatchResult b;
    json entries = json::array();
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        json e = {{"index", i}};
        if (!parse_errors[i].empty()) {
            e["exit_code"] = static_cast<int>(ExitCode::validation);
            e["error"] = parse_errors[i];
            b.exit_code = std::max(b.exit_code, static_cast<int>(ExitCode::validation));
            entries.push_back(e);
            continue;
        }
        const auto& r = *results[i];
        e["command"] = canonical_command(jobs[i].command);
        e["exit_code"] = r.exit_code;
        b.exit_code = std::max(b.exit_code, r.exit_code);
        std::string path = resolve_output(jobs[i]);
        if (path.empty()) {
            e["report"] = r.report;
        } else {
            write_output(path, render(r, jobs[i].format), std::cout);
            e["output"] = path;
        }
        entries.push_back(e);
    }
    b.summary = {{"version", version()}, {"jobs", entries}, {"exit_code", b.exit_code}};
    return b;
}

} // namespace hyperhodge::cli
