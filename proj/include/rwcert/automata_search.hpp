#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rwcert/automata.hpp"
#include "rwcert/budget.hpp"
#include "rwcert/rewriting.hpp"
#include "rwcert/sat.hpp"

namespace rwcert {

// Variable layout of an automaton-search CNF. Transition variables come
// first: t(p,a,q) = 1 + (p*|alphabet| + a)*n + q. String mode then has
// initial/final variables i(p), f(p); all auxiliaries follow.
struct EncodeVars {
    RewriteMode mode = RewriteMode::String;
    std::size_t n = 0;
    std::size_t alphabet = 0;
    int i_base = 0; // 0 when absent (cycle mode)
    int f_base = 0;

    int t(std::size_t p, SymbolId a, std::size_t q) const {
        return 1 + static_cast<int>((p * alphabet + a) * n + q);
    }
    int t_count() const { return static_cast<int>(n * n * alphabet); }
    int i(std::size_t p) const { return i_base + static_cast<int>(p); }
    int f(std::size_t p) const { return f_base + static_cast<int>(p); }
};

struct EncodedSearch {
    sat::Cnf cnf;
    EncodeVars vars;
};

// Encodes "some n-state certificate for R passes the checker conditions,
// witnessed by an accepted word/closed run of length witness_len" as CNF.
EncodedSearch encode_search(const RewriteSystem& system, std::size_t n,
                            std::size_t witness_len);

// Reads the t/i/f assignment of a satisfying model back into a certificate.
// Throws if the model is inconsistent with the variable map.
NfaCert decode_model(const std::vector<bool>& model, const EncodeVars& vars);

struct AutomataParams {
    std::size_t n_max = 4;
    // Explicit witness lengths; empty means the default range
    // max(1, max lhs length) .. 2n for each n.
    std::vector<std::size_t> witness_lengths;
};

// Iterates n = 1..n_max, witness lengths ascending, solving each CNF and
// re-validating any decoded certificate with check_certificate before
// returning it. Unknown solver results skip to the next iteration.
std::optional<NfaCert> find_certificate(const RewriteSystem& system,
                                        const AutomataParams& params, const Budget& budget);

} // namespace rwcert
