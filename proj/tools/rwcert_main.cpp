// rwcert: prove or refute termination of string/cycle rewriting systems and
// check the resulting certificates.
//
// Exit codes: 0 = definitive verdict (or VALID), 2 = MAYBE, 1 = error (or
// INVALID). `prove` prints the verdict word alone on the first stdout line.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rwcert/parser.hpp"
#include "rwcert/prover.hpp"

namespace {

std::optional<rwcert::RewriteMode> parse_mode(const std::string& mode_arg) {
    if (mode_arg.empty())
        return std::nullopt;
    auto mode = rwcert::mode_from_string(mode_arg);
    if (!mode)
        throw CLI::ValidationError("--mode", "expected 'string' or 'cycle'");
    return mode;
}

std::vector<std::string> resolve_engines(const std::vector<std::string>& requested) {
    std::vector<std::string> engines;
    for (const std::string& name : requested) {
        if (name == "auto") {
            engines = {"loop", "matrix", "automata"};
            return engines;
        }
        if (name != "loop" && name != "matrix" && name != "automata")
            throw CLI::ValidationError("--engine", "unknown engine '" + name + "'");
        if (std::find(engines.begin(), engines.end(), name) == engines.end())
            engines.push_back(name);
    }
    return engines;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << text;
    if (!out)
        throw std::runtime_error("cannot write " + path);
}

int cmd_prove(const std::string& file, const std::string& mode_arg,
              const std::vector<std::string>& engine_args, double timeout_seconds,
              const std::string& cert_path) {
    rwcert::ProveConfig config;
    config.engines = resolve_engines(engine_args);
    config.timeout = std::chrono::milliseconds(
        static_cast<long long>(std::llround(timeout_seconds * 1000.0)));

    const rwcert::RewriteSystem system =
        rwcert::parse_system_file(file, parse_mode(mode_arg));
    const rwcert::ProveOutcome outcome = rwcert::run_prove(system, config);

    std::cout << rwcert::to_string(outcome.kind) << "\n";
    if (outcome.kind == rwcert::VerdictKind::Maybe) {
        std::cout << "reason: " << outcome.reason << "\n";
        return 2;
    }
    std::cout << "engine: " << outcome.engine << "\n";
    if (!cert_path.empty()) {
        if (!outcome.certificate)
            throw std::runtime_error("no certificate to write");
        write_text_file(cert_path,
                        rwcert::certificate_to_json(*outcome.certificate, system));
        std::cout << "certificate: " << cert_path << "\n";
    }
    return 0;
}

int cmd_check(const std::string& cert_path, const std::string& system_path) {
    const rwcert::CheckOutcome outcome = rwcert::run_check(cert_path, system_path);
    if (outcome.valid) {
        std::cout << "VALID\n";
        return 0;
    }
    std::cout << "INVALID(" << outcome.reason << ")\n";
    return 1;
}

int cmd_bench(const std::string& directory, const std::string& report_path,
              const std::string& mode_arg, const std::vector<std::string>& engine_args,
              double timeout_seconds) {
    rwcert::BenchConfig config;
    config.prove.engines = resolve_engines(engine_args);
    config.prove.timeout = std::chrono::milliseconds(
        static_cast<long long>(std::llround(timeout_seconds * 1000.0)));
    config.mode_override = parse_mode(mode_arg);

    const std::string csv = rwcert::run_bench(directory, config);
    write_text_file(report_path, csv);
    const std::size_t rows =
        static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) - 1;
    std::cout << "report: " << report_path << " (" << rows << " systems)\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"termination and non-termination prover for string and cycle "
                 "rewriting, with independent certificate checking"};
    app.require_subcommand(1);

    std::string file, mode_arg, cert_path, report_path, directory, system_path;
    std::vector<std::string> engine_args{"auto"};
    double timeout_seconds = 60.0;

    CLI::App* prove = app.add_subcommand("prove", "decide termination of a system");
    prove->add_option("--mode", mode_arg, "rewriting mode: string or cycle");
    prove->add_option("--engine", engine_args,
                      "engines to race: auto or any of loop,matrix,automata")
        ->delimiter(',');
    prove->add_option("--timeout", timeout_seconds, "global timeout in seconds");
    prove->add_option("--cert", cert_path, "write the certificate to this file");
    prove->add_option("FILE", file, "system file")->required();

    CLI::App* check = app.add_subcommand("check", "verify a certificate against a system");
    check->add_option("--cert", cert_path, "certificate file")->required();
    check->add_option("SYSTEM", system_path, "system file")->required();

    CLI::App* bench = app.add_subcommand("bench", "prove every system in a directory");
    bench->add_option("DIR", directory, "directory of system files")->required();
    bench->add_option("--report", report_path, "CSV output path")->required();
    bench->add_option("--mode", mode_arg, "rewriting mode override");
    bench->add_option("--engine", engine_args,
                      "engines to race: auto or any of loop,matrix,automata")
        ->delimiter(',');
    bench->add_option("--timeout", timeout_seconds, "per-system timeout in seconds");

    CLI11_PARSE(app, argc, argv);

    try {
        if (prove->parsed())
            return cmd_prove(file, mode_arg, engine_args, timeout_seconds, cert_path);
        if (check->parsed())
            return cmd_check(cert_path, system_path);
        if (bench->parsed())
            return cmd_bench(directory, report_path, mode_arg, engine_args,
                             timeout_seconds);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
