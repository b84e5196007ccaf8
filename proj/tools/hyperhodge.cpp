#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "hyperhodge/cli.hpp"

using namespace hyperhodge;

namespace {

struct JobOptions {
    std::string in, params, out, format = "json";
    int bound = -1;
};

void add_job_options(CLI::App* app, JobOptions& o)
{
    app->add_option("--in", o.in, "JSON parameter file ('-' for stdin)");
    app->add_option("--params", o.params, "inline JSON parameters");
    app->add_option("--out", o.out, "output file (default stdout)");
    app->add_option("--format", o.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    app->add_option("--bound", o.bound, "degree or radius bound")->check(CLI::NonNegativeNumber);
}

int run_job(const std::string& command, const JobOptions& o)
{
    cli::JobSpec job;
    job.command = command;
    job.format = o.format;
    job.output = o.out;
    if (o.bound >= 0) job.bound = o.bound;
    try {
        if (!o.in.empty() && !o.params.empty()) throw ValidationError("use either --in or --params");
        if (o.in == "-") job.params = json::parse(std::cin);
        else if (!o.in.empty()) job.params = cli::read_json_file(o.in);
        else if (!o.params.empty()) job.params = json::parse(o.params);
        // A file may also hold a whole job: {"command": ..., "params": {...}}.
        if (job.params.is_object() && job.params.contains("params") && job.params.contains("command"))
            job.params = json(job.params.at("params"));
    } catch (const json::parse_error& e) {
        std::cerr << "error: invalid JSON: " << e.what() << "\n";
        return static_cast<int>(ExitCode::validation);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.code());
    }
    auto r = cli::run(job);
    try {
        cli::write_output(cli::resolve_output(job), cli::render(r, job.format), std::cout);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.code());
    }
    if (r.exit_code != 0 && r.report.contains("error"))
        std::cerr << "error: " << r.report.at("error").get<std::string>() << "\n";
    return r.exit_code;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact computations for GKZ and hypergeometric D-modules"};
    app.set_version_flag("--version", std::string(version()));
    app.require_subcommand(1);

    const std::vector<std::pair<std::string, std::string>> plain = {
        {"facets", "facets of the cone spanned by the columns of A"},
        {"admissible", "admissible-region and shifted membership of beta"},
        {"gkz-emit", "emit a GKZ presentation (M, check_M, N, check_N)"},
        {"fl", "Fourier-Laplace transform of a presentation"},
        {"reduce", "integrate out fibre variables (de Rham elimination)"},
        {"irr-hodge", "irregular Hodge numbers for type (n,1)"},
        {"regular-hodge", "Hodge numbers in the regular case n = m"},
        {"connection", "connection matrices on the Q basis for type (n,1)"},
        {"verify", "check two presentations, or a named case, for equality"},
    };
    std::map<std::string, JobOptions> opts;
    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, help] : plain) {
        subs[name] = app.add_subcommand(name, help);
        add_job_options(subs[name], opts[name]);
    }

    CLI::App* gkz = app.add_subcommand("gkz", "GKZ systems");
    gkz->require_subcommand(1);
    subs["gkz-emit-alias"] = gkz->add_subcommand("emit", "emit a GKZ presentation");
    add_job_options(subs["gkz-emit-alias"], opts["gkz-emit-alias"]);

    CLI::App* hyp = app.add_subcommand("hyp", "hypergeometric modules");
    hyp->require_subcommand(1);
    for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
             {"operator", "the hypergeometric operator and its (P, H) presentation"},
             {"reduce", "GKZ reduction pipeline to the (P, H) presentation"},
             {"check", "irreducibility, arc separation and admissibility"}}) {
        std::string key = "hyp-" + name;
        subs[key] = hyp->add_subcommand(name, help);
        add_job_options(subs[key], opts[key]);
    }

    std::string batch_file;
    std::size_t threads = 1;
    CLI::App* batch = app.add_subcommand("batch", "run a JSON list of jobs");
    batch->add_option("file", batch_file, "jobs file")->required();
    batch->add_option("--jobs", threads, "jobs to run at the same time")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : static_cast<int>(ExitCode::validation);
    }

    if (*batch) {
        try {
            auto b = cli::run_batch(cli::read_json_file(batch_file), threads);
            std::cout << b.summary.dump(2) << "\n";
            return b.exit_code;
        } catch (const Error& e) {
            std::cerr << "error: " << e.what() << "\n";
            return static_cast<int>(e.code());
        }
    }
    for (auto& [key, sub] : subs) {
        if (!sub->parsed()) continue;
        std::string command = key == "gkz-emit-alias" ? "gkz-emit" : key;
        return run_job(command, opts[key]);
    }
    return static_cast<int>(ExitCode::validation);
}
