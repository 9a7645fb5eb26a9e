#include "rwcert/prover.hpp"

#include <algorithm>
#include <condition_variable>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "rwcert/parser.hpp"

namespace rwcert {

const char* to_string(VerdictKind kind) {
    switch (kind) {
    case VerdictKind::Terminating: return "TERMINATING";
    case VerdictKind::Nonterminating: return "NONTERMINATING";
    case VerdictKind::Maybe: return "MAYBE";
    }
    return "MAYBE";
}

namespace {

constexpr const char* kEnginePriority[] = {"loop", "matrix", "automata"};

struct EngineResult {
    bool definitive = false;
    VerdictKind kind = VerdictKind::Maybe;
    std::optional<Certificate> certificate;
};

EngineResult run_engine(const std::string& name, const RewriteSystem& system,
                        const ProveConfig& config, const Budget& budget) {
    if (name == "loop") {
        if (auto loop = find_loop(system, config.loop, budget))
            if (check_loop(system, *loop).valid)
                return {true, VerdictKind::Nonterminating,
                        make_certificate(system, std::move(*loop))};
    } else if (name == "matrix") {
        if (auto proof = prove_termination(system, config.matrix, budget))
            if (check_removal_proof(system, *proof).valid)
                return {true, VerdictKind::Terminating,
                        make_certificate(system, std::move(*proof))};
    } else if (name == "automata") {
        if (auto cert = find_certificate(system, config.automata, budget))
            if (check_certificate(system, *cert).valid)
                return {true, VerdictKind::Nonterminating,
                        make_certificate(system, std::move(*cert))};
    }
    return {};
}

} // namespace

ProveOutcome run_prove(const RewriteSystem& system, const ProveConfig& config) {
    // normalize to priority order, validating names
    std::vector<std::string> engines;
    for (const char* known : kEnginePriority)
        if (std::find(config.engines.begin(), config.engines.end(), known) !=
            config.engines.end())
            engines.push_back(known);
    for (const std::string& name : config.engines)
        if (std::find(engines.begin(), engines.end(), name) == engines.end())
            throw std::invalid_argument("unknown engine '" + name + "'");
    if (engines.empty())
        throw std::invalid_argument("no engines selected");

    const Budget::Clock::time_point deadline = Budget::Clock::now() + config.timeout;
    std::atomic<bool> cancel{false};
    std::mutex mu;
    std::condition_variable cv;
    std::size_t done = 0;
    std::vector<std::optional<EngineResult>> results(engines.size());

    std::vector<std::thread> workers;
    workers.reserve(engines.size());
    for (std::size_t idx = 0; idx < engines.size(); ++idx) {
        workers.emplace_back([&, idx] {
            EngineResult r = run_engine(engines[idx], system, config,
                                        Budget::until(deadline, &cancel));
            std::lock_guard<std::mutex> lock(mu);
            if (r.definitive)
                cancel.store(true);
            results[idx] = std::move(r);
            ++done;
            cv.notify_all();
        });
    }
    {
        std::unique_lock<std::mutex> lock(mu);
        cv.wait(lock, [&] {
            if (done == engines.size())
                return true;
            return std::any_of(results.begin(), results.end(),
                               [](const auto& r) { return r && r->definitive; });
        });
        cancel.store(true);
        cv.wait(lock, [&] { return done == engines.size(); });
    }
    for (std::thread& w : workers)
        w.join();

    for (std::size_t idx = 0; idx < engines.size(); ++idx) {
        if (results[idx] && results[idx]->definitive) {
            ProveOutcome outcome;
            outcome.kind = results[idx]->kind;
            outcome.engine = engines[idx];
            outcome.certificate = std::move(results[idx]->certificate);
            // defense in depth: never emit a certificate that fails its checker
            if (outcome.certificate &&
                !check_certificate_payload(system, *outcome.certificate).valid)
                continue;
            return outcome;
        }
    }
    ProveOutcome outcome;
    outcome.kind = VerdictKind::Maybe;
    outcome.reason = Budget::Clock::now() >= deadline ? "timeout" : "exhausted";
    return outcome;
}

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

} // namespace

CheckOutcome run_check(const std::string& cert_path, const std::string& system_path) {
    const std::string text = read_file(cert_path);
    const RewriteMode mode = certificate_mode(text);
    const RewriteSystem system = parse_system_file(system_path, mode);

    Certificate cert;
    try {
        cert = certificate_from_json(text, system);
    } catch (const std::exception& e) {
        return {false, e.what()};
    }
    if (cert.digest != sha256_hex(canonical_text(system)))
        return {false, "wrong system"};
    try {
        CertCheckResult r = check_certificate_payload(system, cert);
        return {r.valid, r.reason};
    } catch (const std::exception& e) {
        return {false, e.what()};
    }
}

std::string run_bench(const std::string& directory, const BenchConfig& config) {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(directory))
        if (entry.is_regular_file())
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    std::ostringstream csv;
    csv << "name,mode,verdict,engine,seconds\n";
    for (const fs::path& path : files) {
        const auto started = Budget::Clock::now();
        auto seconds = [&] {
            auto elapsed = Budget::Clock::now() - started;
            double s = std::chrono::duration_cast<std::chrono::duration<double>>(elapsed).count();
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.3f", s);
            return std::string(buf);
        };
        RewriteSystem system;
        try {
            system = parse_system_file(path.string(), config.mode_override);
        } catch (const std::exception&) {
            csv << path.filename().string() << ",,ERROR,," << seconds() << "\n";
            continue;
        }
        ProveOutcome outcome = run_prove(system, config.prove);
        csv << path.filename().string() << ',' << to_string(system.mode) << ','
            << to_string(outcome.kind) << ',' << outcome.engine << ',' << seconds() << "\n";
    }
    return csv.str();
}

RewriteSystem generate_random_system(std::uint64_t seed, const RandomSystemParams& params) {
    std::mt19937_64 gen(seed);
    auto pick = [&](std::size_t bound) {
        return bound == 0 ? std::size_t{0} : static_cast<std::size_t>(gen() % bound);
    };
    const std::size_t letters = 1 + pick(params.max_alphabet);
    const std::size_t rules = pick(params.max_rules + 1);

    std::string text = "@mode ";
    text += to_string(params.mode);
    text += '\n';
    for (std::size_t r = 0; r < rules; ++r) {
        const std::size_t lhs_len = 1 + pick(params.max_side);
        const std::size_t rhs_len = pick(params.max_side + 1);
        for (std::size_t k = 0; k < lhs_len; ++k) {
            text += static_cast<char>('a' + pick(letters));
            text += ' ';
        }
        text += "->";
        for (std::size_t k = 0; k < rhs_len; ++k) {
            text += ' ';
            text += static_cast<char>('a' + pick(letters));
        }
        text += '\n';
    }
    return parse_system(text);
}

} // namespace rwcert
