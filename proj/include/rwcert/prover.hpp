#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rwcert/automata_search.hpp"
#include "rwcert/certificate.hpp"
#include "rwcert/interpretation.hpp"
#include "rwcert/loop.hpp"
#include "rwcert/rewriting.hpp"

namespace rwcert {

enum class VerdictKind { Terminating, Nonterminating, Maybe };

// The verdict words printed on the first output line.
const char* to_string(VerdictKind kind);

struct ProveConfig {
    // Engines to race, any subset of {"loop", "matrix", "automata"}.
    std::vector<std::string> engines{"loop", "matrix", "automata"};
    std::chrono::milliseconds timeout{60000};
    SearchParams matrix;
    LoopParams loop;
    AutomataParams automata;
};

struct ProveOutcome {
    VerdictKind kind = VerdictKind::Maybe;
    std::string engine; // winning engine for definitive verdicts
    std::string reason; // "timeout" or "exhausted" for MAYBE
    std::optional<Certificate> certificate;
};

// Races the configured engines under a shared deadline with cooperative
// cancellation. The first definitive verdict wins and cancels the rest; when
// several engines finish definitively, the fixed priority loop > matrix >
// automata breaks the tie. Certificates are re-checked before being
// returned; MAYBE only when every engine exhausts or times out.
ProveOutcome run_prove(const RewriteSystem& system, const ProveConfig& config);

struct CheckOutcome {
    bool valid = false;
    std::string reason;
};

// Independent verification entry point: loads the certificate, re-parses the
// system in the certificate's mode, compares digests ("wrong system" on
// mismatch), and dispatches to the payload's checker. I/O failures and
// unparseable JSON throw; a loadable but wrong certificate returns INVALID.
CheckOutcome run_check(const std::string& cert_path, const std::string& system_path);

struct BenchConfig {
    ProveConfig prove;
    std::optional<RewriteMode> mode_override;
};

// Runs prove over every regular file in the directory (sorted by name) and
// returns the CSV report: header name,mode,verdict,engine,seconds, one row
// per file. Unreadable or unparseable entries become ERROR rows.
std::string run_bench(const std::string& directory, const BenchConfig& config);

struct RandomSystemParams {
    std::size_t max_alphabet = 3;
    std::size_t max_rules = 3;
    std::size_t max_side = 4;
    RewriteMode mode = RewriteMode::String;
};

// Deterministic test-corpus generator: fixed seed, fixed system. Output is
// rendered to the native format and re-parsed, so every generated system
// satisfies the parser's invariants by construction.
RewriteSystem generate_random_system(std::uint64_t seed, const RandomSystemParams& params);

} // namespace rwcert
