#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rwcert/rewriting.hpp"

namespace rwcert {

struct Transition {
    std::size_t from = 0;
    SymbolId symbol = 0;
    std::size_t to = 0;

    auto operator<=>(const Transition&) const = default;
};

// A nondeterministic finite automaton serving as a non-termination
// certificate. String mode uses standard acceptance; cycle mode ignores
// initial/final and accepts the nonempty words with a closed run p -w-> p.
struct NfaCert {
    std::size_t n = 0; // states 0..n-1
    RewriteMode mode = RewriteMode::String;
    std::vector<Transition> transitions;
    std::vector<std::size_t> initial; // string mode only
    std::vector<std::size_t> final;   // string mode only

    bool operator==(const NfaCert&) const = default;
};

// Boolean relation on automaton states (n <= 64), one bitmask row per state.
class BoolRel {
public:
    BoolRel() = default;
    explicit BoolRel(std::size_t n);

    static BoolRel identity(std::size_t n);

    std::size_t dim() const { return rows_.size(); }
    bool get(std::size_t p, std::size_t q) const { return (rows_[p] >> q) & 1u; }
    void set(std::size_t p, std::size_t q) { rows_[p] |= std::uint64_t{1} << q; }

    BoolRel compose(const BoolRel& other) const;
    bool subset_of(const BoolRel& other) const;
    bool has_diagonal() const;
    BoolRel union_with(const BoolRel& other) const;

    bool operator==(const BoolRel&) const = default;

private:
    std::vector<std::uint64_t> rows_;
};

// {(p,q) | A has a path p -w-> q}; the empty word yields the identity.
BoolRel word_relation(const NfaCert& a, const Word& w);

// Deterministic complete automaton tracking multi-pattern match progress
// (Aho-Corasick). Live states 0..live_states-1 (start = 0) are the
// non-matching pattern-prefix states; state `live_states` is the absorbing
// match sink. A run hits the sink iff the consumed word contains some
// pattern as a factor.
struct AvoidDfa {
    std::size_t live_states = 1;
    std::size_t alphabet = 0;
    std::vector<std::size_t> delta; // live_states x alphabet, row-major

    std::size_t start() const { return 0; }
    std::size_t sink() const { return live_states; }
    bool live(std::size_t s) const { return s < live_states; }
    std::size_t next(std::size_t s, SymbolId a) const {
        return live(s) ? delta[s * alphabet + a] : sink();
    }
};

// Builds the avoid automaton for the given nonempty patterns.
AvoidDfa build_avoid_dfa(const std::vector<Word>& patterns, std::size_t alphabet_size);

struct CheckReport {
    bool valid = false;
    std::string failed;  // one of: nonempty, splice, coverage, min-cycle-length
    std::string witness; // word or state pair, when invalid

    static CheckReport ok() { return {true, "", ""}; }
    static CheckReport bad(std::string condition, std::string witness) {
        return {false, std::move(condition), std::move(witness)};
    }
};

// String mode: some final state reachable from some initial state.
// Cycle mode: the transition graph contains a cycle.
bool check_nonempty(const NfaCert& a);

// True iff word_relation(a, lhs) is a subset of word_relation(a, rhs) for
// every rule.
bool check_splice(const NfaCert& a, const RewriteSystem& system);

// True iff no accepted word avoids every lhs: the product with the avoid
// automaton, restricted to live avoid-states, reaches no final NFA state.
bool check_redex_coverage_string(const NfaCert& a, const AvoidDfa& avoid);

// True iff (i) the live product graph of a x avoid has no directed cycle and
// (ii) a's transition graph has no closed walk of length < m.
bool check_redex_coverage_cycle(const NfaCert& a, const AvoidDfa& avoid, std::size_t m);

// Minimum length of an accepted cycle that soundness requires: the maximum
// lhs length, plus one when a rule with empty rhs reaches that maximum. The
// bump closes a gap: without it, an accepted cycle equal to such an lhs
// would rewrite only to the empty cycle, which is never accepted, so the
// certificate would not guarantee an infinite derivation.
std::size_t min_cycle_length(const RewriteSystem& system);

// Full certificate check: nonempty, splice, and the mode-appropriate redex
// coverage. VALID implies the system is non-terminating. Throws on mode
// mismatch or a structurally malformed certificate (out-of-range state or
// symbol, n > 64).
CheckReport check_certificate(const RewriteSystem& system, const NfaCert& a);

// Words (string mode) / cycles (cycle mode, canonical reps) accepted by the
// certificate, up to the given length, in length-then-lex order. Test
// support for the soundness bridge; exponential, keep max_len small.
std::vector<Word> accepted_words(const NfaCert& a, std::size_t alphabet_size,
                                 std::size_t max_len);

} // namespace rwcert
