#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rwcert/budget.hpp"
#include "rwcert/rewriting.hpp"
#include "rwcert/semiring.hpp"

namespace rwcert {

enum class Decrease { None, Weak, Strict };

// One square matrix per letter; words map to left-to-right products and
// cycles to the trace of that product. Letter matrices are always
// finite-valued; infinite entries appear only in derived identity matrices
// (empty word products).
struct Interpretation {
    SemiringTag tag = SemiringTag::Tropical;
    std::size_t dim = 1;
    std::vector<WeightMatrix> letters; // indexed by SymbolId, one per alphabet letter
};

// Dense natural-number matrix/vector arithmetic for the affine (string-mode)
// criterion.
struct NatMatrix {
    std::size_t dim = 0;
    std::vector<std::uint64_t> entries; // row-major

    NatMatrix() = default;
    NatMatrix(std::size_t d, std::uint64_t fill) : dim(d), entries(d * d, fill) {}
    static NatMatrix identity(std::size_t d);

    std::uint64_t& at(std::size_t i, std::size_t j) { return entries[i * dim + j]; }
    std::uint64_t at(std::size_t i, std::size_t j) const { return entries[i * dim + j]; }

    bool operator==(const NatMatrix&) const = default;
};

using NatVector = std::vector<std::uint64_t>;

NatMatrix nat_mul(const NatMatrix& a, const NatMatrix& b);
NatVector nat_apply(const NatMatrix& a, const NatVector& v);
NatVector nat_add(const NatVector& a, const NatVector& b);

// Per-letter affine map x -> A x + b over the naturals, with (A)_00 >= 1 for
// every letter (monotonicity in the first component).
struct AffineLetter {
    NatMatrix matrix;
    NatVector offset;

    bool operator==(const AffineLetter&) const = default;
};

struct AffineInterpretation {
    std::size_t dim = 1;
    std::vector<AffineLetter> letters; // indexed by SymbolId
};

// Composite affine map of a whole word.
struct AffineMap {
    NatMatrix matrix;
    NatVector offset;
};

WeightMatrix word_matrix(const Interpretation& interp, const Word& w);
Weight cycle_weight(const Interpretation& interp, const CycleWord& c);
Decrease rule_decrease(const Interpretation& interp, const Rule& rule);

AffineMap word_affine(const AffineInterpretation& interp, const Word& w);
Decrease affine_rule_decrease(const AffineInterpretation& interp, const Rule& rule);

struct SearchParams {
    std::vector<SemiringTag> tags{SemiringTag::Tropical, SemiringTag::Arctic,
                                  SemiringTag::Arithmetic};
    std::vector<std::size_t> dims{1, 2};
    std::uint64_t max_entry = 2;
    bool try_affine = true; // string mode only; ignored for cycle systems
};

using AnyInterpretation = std::variant<Interpretation, AffineInterpretation>;

struct FoundInterpretation {
    AnyInterpretation interp;
    std::vector<std::size_t> strict; // strictly decreasing alive rules, ascending
};

// Bounded deterministic enumeration over (form, tag, dim, letter matrices):
// the affine form first for string systems, then the trace form per tag, dims
// ascending within each, candidates per letter in ascending entry order with
// depth-first assignment over the letters of the alive rules. Returns the
// first interpretation that weakly orients every alive rule and strictly
// orients at least one.
std::optional<FoundInterpretation> search_interpretation(const RewriteSystem& system,
                                                         const std::vector<std::size_t>& alive,
                                                         const SearchParams& params,
                                                         const Budget& budget = Budget::unlimited());

struct RemovalRound {
    AnyInterpretation interp;
    std::vector<std::size_t> removed; // ascending rule indices
};

// Rule-removal termination proof: each round's interpretation weakly orients
// every rule still alive and strictly orients the removed set; the rounds
// together remove every rule.
struct RemovalProof {
    std::vector<RemovalRound> rounds;
};

std::optional<RemovalProof> prove_termination(const RewriteSystem& system,
                                              const SearchParams& params,
                                              const Budget& budget = Budget::unlimited());

struct ProofCheckResult {
    bool valid = false;
    std::string reason; // first failing condition when invalid

    static ProofCheckResult ok() { return ProofCheckResult{true, {}}; }
    static ProofCheckResult fail(std::string r) { return ProofCheckResult{false, std::move(r)}; }
};

// Exact re-verification of a removal proof by pure recomputation; performs no
// search. Rejects inadmissible interpretations (infinite letter entries,
// arithmetic zero rows/columns, non-monotone affine maps, affine rounds for
// cycle systems), non-strict removals, non-weak survivors, and leftover rules.
ProofCheckResult check_removal_proof(const RewriteSystem& system, const RemovalProof& proof);

} // namespace rwcert
