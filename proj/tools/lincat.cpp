#include <iostream>

#include <CLI11.hpp>

#include "lincat/errors.hpp"
#include "lincat/report.hpp"
#include "lincat/workspace.hpp"

int main(int argc, char** argv) {
    CLI::App app{"lincat: Chern characters of projective modules over linear categories"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string output = "text";
    app.add_option("--output", output, "Report format")->check(CLI::IsMember({"text", "machine"}));

    lincat::Request req;
    std::size_t max_degree = 0;
    std::size_t q = 0;

    auto file_arg = [&](CLI::App* sub) { sub->add_option("file", req.file, "Description file")->required(); };

    CLI::App* validate = app.add_subcommand("validate", "Check every axiom and reference in a description");
    file_arg(validate);

    CLI::App* coh = app.add_subcommand("cohomology", "Dimensions of Omega^n_ab and H^n");
    file_arg(coh);
    CLI::Option* max_opt = coh->add_option("--max-degree", max_degree, "Highest degree reported");

    CLI::App* trace = app.add_subcommand("trace", "Hattori-Stallings trace of an endomorphism");
    file_arg(trace);
    trace->add_option("--module", req.module)->required();
    trace->add_option("--endo", req.endo)->required();

    CLI::App* chern = app.add_subcommand("chern", "Chern cochain and class of a connection");
    file_arg(chern);
    chern->add_option("--module", req.module)->required();
    chern->add_option("--connection", req.connections, "Defaults to the Levi-Civita connection")->expected(1);
    chern->add_option("--q", q)->required();

    CLI::App* inv = app.add_subcommand("invariance", "Coboundary between the cochains of two connections");
    file_arg(inv);
    inv->add_option("--module", req.module)->required();
    inv->add_option("--connection", req.connections)->required()->expected(2)->allow_extra_args(false);
    inv->add_option("--q", q)->required();

    CLI::App* k0 = app.add_subcommand("k0", "Chern class of a formal combination of modules");
    file_arg(k0);
    k0->add_option("--element", req.element, "e.g. \"M1 + M2 - S\"")->required();
    k0->add_option("--q", q)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : lincat::exit_invalid;
    }

    for (CLI::App* sub : app.get_subcommands()) req.command = sub->get_name();
    if (*max_opt) req.max_degree = max_degree;
    if (req.command == "chern" || req.command == "invariance" || req.command == "k0") req.q = q;

    lincat::Report report;
    try {
        report = lincat::run(req, lincat::read_file(req.file));
    } catch (const lincat::input_error& e) {
        report.command = lincat::echo(req);
        report.exit_code = lincat::exit_invalid;
        report.findings.push_back(e.what());
    }
    std::cout << (output == "machine" ? lincat::to_machine(report) : lincat::to_text(report));
    return report.exit_code;
}
