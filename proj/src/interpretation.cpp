#include "rwcert/interpretation.hpp"

#include <algorithm>
#include <set>

namespace rwcert {

NatMatrix NatMatrix::identity(std::size_t d) {
    NatMatrix m(d, 0);
    for (std::size_t i = 0; i < d; ++i)
        m.at(i, i) = 1;
    return m;
}

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("affine value overflow");
    return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("affine value overflow");
    return r;
}

} // namespace

NatMatrix nat_mul(const NatMatrix& a, const NatMatrix& b) {
    if (a.dim != b.dim)
        throw std::invalid_argument("nat_mul: dimension mismatch");
    NatMatrix out(a.dim, 0);
    for (std::size_t i = 0; i < a.dim; ++i)
        for (std::size_t j = 0; j < a.dim; ++j) {
            std::uint64_t acc = 0;
            for (std::size_t k = 0; k < a.dim; ++k)
                acc = checked_add(acc, checked_mul(a.at(i, k), b.at(k, j)));
            out.at(i, j) = acc;
        }
    return out;
}

NatVector nat_apply(const NatMatrix& a, const NatVector& v) {
    if (a.dim != v.size())
        throw std::invalid_argument("nat_apply: dimension mismatch");
    NatVector out(a.dim, 0);
    for (std::size_t i = 0; i < a.dim; ++i) {
        std::uint64_t acc = 0;
        for (std::size_t k = 0; k < a.dim; ++k)
            acc = checked_add(acc, checked_mul(a.at(i, k), v[k]));
        out[i] = acc;
    }
    return out;
}

NatVector nat_add(const NatVector& a, const NatVector& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("nat_add: dimension mismatch");
    NatVector out(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = checked_add(a[i], b[i]);
    return out;
}

WeightMatrix word_matrix(const Interpretation& interp, const Word& w) {
    WeightMatrix acc = WeightMatrix::identity(interp.tag, interp.dim);
    for (SymbolId s : w) {
        if (s >= interp.letters.size())
            throw std::invalid_argument("word_matrix: letter missing from interpretation");
        acc = mat_mul(interp.tag, acc, interp.letters[s]);
    }
    return acc;
}

Weight cycle_weight(const Interpretation& interp, const CycleWord& c) {
    if (c.empty())
        throw std::invalid_argument("cycle_weight: empty cycle");
    return trace(interp.tag, word_matrix(interp, c.rep()));
}

Decrease rule_decrease(const Interpretation& interp, const Rule& rule) {
    Semiring s(interp.tag);
    WeightMatrix lhs = word_matrix(interp, rule.lhs);
    WeightMatrix rhs = word_matrix(interp, rule.rhs);
    bool weak = true, strict = true;
    for (std::size_t i = 0; i < interp.dim && (weak || strict); ++i) {
        for (std::size_t j = 0; j < interp.dim; ++j) {
            if (!s.leq(rhs.at(i, j), lhs.at(i, j))) {
                weak = false;
                strict = false;
                break;
            }
            if (!s.lt(rhs.at(i, j), lhs.at(i, j)))
                strict = false;
        }
    }
    if (strict)
        return Decrease::Strict;
    return weak ? Decrease::Weak : Decrease::None;
}

AffineMap word_affine(const AffineInterpretation& interp, const Word& w) {
    // left-to-right composition: map(uv) = (A_u A_v, A_u b_v + b_u),
    // folded from the right so each letter is applied once
    AffineMap acc{NatMatrix::identity(interp.dim), NatVector(interp.dim, 0)};
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        if (*it >= interp.letters.size())
            throw std::invalid_argument("word_affine: letter missing from interpretation");
        const AffineLetter& letter = interp.letters[*it];
        acc.matrix = nat_mul(letter.matrix, acc.matrix);
        acc.offset = nat_add(nat_apply(letter.matrix, acc.offset), letter.offset);
    }
    return acc;
}

Decrease affine_rule_decrease(const AffineInterpretation& interp, const Rule& rule) {
    AffineMap lhs = word_affine(interp, rule.lhs);
    AffineMap rhs = word_affine(interp, rule.rhs);
    for (std::size_t i = 0; i < interp.dim; ++i)
        for (std::size_t j = 0; j < interp.dim; ++j)
            if (lhs.matrix.at(i, j) < rhs.matrix.at(i, j))
                return Decrease::None;
    for (std::size_t i = 0; i < interp.dim; ++i)
        if (lhs.offset[i] < rhs.offset[i])
            return Decrease::None;
    return lhs.offset[0] >= rhs.offset[0] + 1 ? Decrease::Strict : Decrease::Weak;
}

namespace {

// Letters that occur in the given rules, ascending id order.
std::vector<SymbolId> occurring_letters(const RewriteSystem& system,
                                        const std::vector<std::size_t>& alive) {
    std::set<SymbolId> seen;
    for (std::size_t idx : alive) {
        const Rule& r = system.rules[idx];
        seen.insert(r.lhs.begin(), r.lhs.end());
        seen.insert(r.rhs.begin(), r.rhs.end());
    }
    return {seen.begin(), seen.end()};
}

// Depth at which each alive rule becomes fully assigned when letters are
// assigned in `letters` order; rules over no letters (impossible: lhs
// nonempty) would be depth 0.
std::vector<std::vector<std::size_t>> checkable_schedule(const RewriteSystem& system,
                                                         const std::vector<std::size_t>& alive,
                                                         const std::vector<SymbolId>& letters) {
    std::vector<std::vector<std::size_t>> at_depth(letters.size() + 1);
    for (std::size_t idx : alive) {
        const Rule& r = system.rules[idx];
        std::size_t depth = 0;
        for (std::size_t li = 0; li < letters.size(); ++li) {
            SymbolId s = letters[li];
            bool used = std::find(r.lhs.begin(), r.lhs.end(), s) != r.lhs.end() ||
                        std::find(r.rhs.begin(), r.rhs.end(), s) != r.rhs.end();
            if (used)
                depth = li + 1;
        }
        at_depth[depth].push_back(idx);
    }
    return at_depth;
}

// All d x d matrices with entries in 0..bound, ascending with entry (0,0)
// most significant. Arithmetic candidates additionally need a positive entry
// in every row and column.
std::vector<WeightMatrix> trace_candidates(SemiringTag tag, std::size_t dim,
                                           std::uint64_t bound) {
    std::vector<WeightMatrix> out;
    std::vector<std::uint64_t> digits(dim * dim, 0);
    for (;;) {
        WeightMatrix m(dim, Weight::finite(0));
        for (std::size_t i = 0; i < digits.size(); ++i)
            m.at(i / dim, i % dim) = Weight::finite(digits[i]);
        if (tag != SemiringTag::Arithmetic || m.has_positive_rows_and_columns())
            out.push_back(std::move(m));
        std::size_t pos = digits.size();
        while (pos > 0) {
            --pos;
            if (digits[pos] < bound) {
                ++digits[pos];
                std::fill(digits.begin() + static_cast<std::ptrdiff_t>(pos) + 1, digits.end(), 0);
                break;
            }
            if (pos == 0)
                return out;
        }
    }
}

struct AffineCandidate {
    NatMatrix matrix;
    NatVector offset;
};

// Matrix digits (entry (0,0) constrained to 1..bound) followed by the offset
// vector digits, same ordering convention as trace_candidates.
std::vector<AffineCandidate> affine_candidates(std::size_t dim, std::uint64_t bound) {
    std::vector<AffineCandidate> out;
    const std::size_t ndigits = dim * dim + dim;
    std::vector<std::uint64_t> digits(ndigits, 0);
    digits[0] = 1; // monotonicity: (A)_00 >= 1
    for (;;) {
        AffineCandidate c;
        c.matrix = NatMatrix(dim, 0);
        for (std::size_t i = 0; i < dim * dim; ++i)
            c.matrix.at(i / dim, i % dim) = digits[i];
        c.offset.assign(digits.begin() + static_cast<std::ptrdiff_t>(dim * dim), digits.end());
        out.push_back(std::move(c));
        std::size_t pos = ndigits;
        bool done = false;
        while (pos > 0) {
            --pos;
            if (digits[pos] < bound) {
                ++digits[pos];
                std::fill(digits.begin() + static_cast<std::ptrdiff_t>(pos) + 1, digits.end(), 0);
                break;
            }
            if (pos == 0) {
                done = true;
                break;
            }
            // digit 0 resets to 1, others to 0, handled by fill above
        }
        if (done)
            return out;
    }
}

class BudgetPoll {
public:
    explicit BudgetPoll(const Budget& budget) : budget_(budget) {}
    bool expired() {
        if (++count_ % 512 == 0)
            cached_ = budget_.expired();
        return cached_;
    }

private:
    const Budget& budget_;
    std::uint64_t count_ = 0;
    bool cached_ = false;
};

// Depth-first assignment of candidate matrices to letters with pruning: a
// rule is re-examined as soon as all of its letters are assigned, and the
// branch dies if it is not at least weakly oriented. A full assignment is
// accepted only if `leaf` holds (some rule is strictly oriented).
template <typename Candidate, typename Assign, typename Check, typename Leaf>
bool dfs_assign(std::size_t depth, const std::vector<SymbolId>& letters,
                const std::vector<std::vector<std::size_t>>& schedule,
                const std::vector<Candidate>& candidates, Assign&& assign, Check&& check,
                Leaf&& leaf, BudgetPoll& poll) {
    if (depth == letters.size())
        return leaf();
    for (const Candidate& c : candidates) {
        if (poll.expired())
            return false;
        assign(letters[depth], c);
        bool ok = true;
        for (std::size_t rule_idx : schedule[depth + 1]) {
            if (check(rule_idx) == Decrease::None) {
                ok = false;
                break;
            }
        }
        if (ok && dfs_assign(depth + 1, letters, schedule, candidates, assign, check, leaf, poll))
            return true;
    }
    return false;
}

} // namespace

std::optional<FoundInterpretation> search_interpretation(const RewriteSystem& system,
                                                         const std::vector<std::size_t>& alive,
                                                         const SearchParams& params,
                                                         const Budget& budget) {
    if (alive.empty())
        return std::nullopt;
    const std::vector<SymbolId> letters = occurring_letters(system, alive);
    const auto schedule = checkable_schedule(system, alive, letters);
    BudgetPoll poll(budget);

    const bool affine_applicable = system.mode == RewriteMode::String && params.try_affine;
    if (affine_applicable) {
        for (std::size_t dim : params.dims) {
            AffineInterpretation interp;
            interp.dim = dim;
            interp.letters.assign(system.alphabet.size(),
                                  AffineLetter{NatMatrix::identity(dim), NatVector(dim, 0)});
            const auto candidates = affine_candidates(dim, params.max_entry);
            auto assign = [&](SymbolId s, const AffineCandidate& c) {
                interp.letters[s] = AffineLetter{c.matrix, c.offset};
            };
            auto check = [&](std::size_t rule_idx) {
                return affine_rule_decrease(interp, system.rules[rule_idx]);
            };
            std::vector<std::size_t> strict;
            auto leaf = [&] {
                strict.clear();
                for (std::size_t idx : alive)
                    if (check(idx) == Decrease::Strict)
                        strict.push_back(idx);
                return !strict.empty();
            };
            if (dfs_assign(0, letters, schedule, candidates, assign, check, leaf, poll))
                return FoundInterpretation{interp, strict};
            if (budget.expired())
                return std::nullopt;
        }
    }

    for (SemiringTag tag : params.tags) {
        for (std::size_t dim : params.dims) {
            Interpretation interp;
            interp.tag = tag;
            interp.dim = dim;
            WeightMatrix unused = tag == SemiringTag::Arithmetic
                                      ? WeightMatrix::identity(tag, dim)
                                      : WeightMatrix(dim, Weight::finite(0));
            interp.letters.assign(system.alphabet.size(), unused);
            const auto candidates = trace_candidates(tag, dim, params.max_entry);
            auto assign = [&](SymbolId s, const WeightMatrix& m) { interp.letters[s] = m; };
            auto check = [&](std::size_t rule_idx) {
                return rule_decrease(interp, system.rules[rule_idx]);
            };
            std::vector<std::size_t> strict;
            auto leaf = [&] {
                strict.clear();
                for (std::size_t idx : alive)
                    if (check(idx) == Decrease::Strict)
                        strict.push_back(idx);
                return !strict.empty();
            };
            if (dfs_assign(0, letters, schedule, candidates, assign, check, leaf, poll))
                return FoundInterpretation{interp, strict};
            if (budget.expired())
                return std::nullopt;
        }
    }
    return std::nullopt;
}

std::optional<RemovalProof> prove_termination(const RewriteSystem& system,
                                              const SearchParams& params, const Budget& budget) {
    std::vector<std::size_t> alive(system.rules.size());
    for (std::size_t i = 0; i < alive.size(); ++i)
        alive[i] = i;
    RemovalProof proof;
    while (!alive.empty()) {
        if (budget.expired())
            return std::nullopt;
        auto found = search_interpretation(system, alive, params, budget);
        if (!found)
            return std::nullopt;
        proof.rounds.push_back(RemovalRound{found->interp, found->strict});
        std::vector<std::size_t> next;
        for (std::size_t idx : alive)
            if (!std::binary_search(found->strict.begin(), found->strict.end(), idx))
                next.push_back(idx);
        alive = std::move(next);
    }
    return proof;
}

namespace {

ProofCheckResult check_trace_round(const RewriteSystem& system, const Interpretation& interp) {
    if (interp.dim == 0)
        return ProofCheckResult::fail("inadmissible interpretation: dimension 0");
    if (interp.letters.size() != system.alphabet.size())
        return ProofCheckResult::fail("interpretation does not cover the alphabet");
    for (std::size_t s = 0; s < interp.letters.size(); ++s) {
        const WeightMatrix& m = interp.letters[s];
        if (m.dim() != interp.dim)
            return ProofCheckResult::fail("inadmissible letter matrix: wrong dimension");
        if (!m.all_finite())
            return ProofCheckResult::fail("inadmissible letter matrix: infinite entry");
        if (interp.tag == SemiringTag::Arithmetic && !m.has_positive_rows_and_columns())
            return ProofCheckResult::fail("inadmissible letter matrix");
    }
    return ProofCheckResult::ok();
}

ProofCheckResult check_affine_round(const RewriteSystem& system,
                                    const AffineInterpretation& interp) {
    if (system.mode != RewriteMode::String)
        return ProofCheckResult::fail("affine interpretation invalid for cycle mode");
    if (interp.dim == 0)
        return ProofCheckResult::fail("inadmissible interpretation: dimension 0");
    if (interp.letters.size() != system.alphabet.size())
        return ProofCheckResult::fail("interpretation does not cover the alphabet");
    for (const AffineLetter& l : interp.letters) {
        if (l.matrix.dim != interp.dim || l.offset.size() != interp.dim)
            return ProofCheckResult::fail("inadmissible letter map: wrong dimension");
        if (l.matrix.at(0, 0) < 1)
            return ProofCheckResult::fail("inadmissible letter map: not monotone");
    }
    return ProofCheckResult::ok();
}

} // namespace

ProofCheckResult check_removal_proof(const RewriteSystem& system, const RemovalProof& proof) {
    std::set<std::size_t> alive;
    for (std::size_t i = 0; i < system.rules.size(); ++i)
        alive.insert(i);
    for (std::size_t round_idx = 0; round_idx < proof.rounds.size(); ++round_idx) {
        const RemovalRound& round = proof.rounds[round_idx];
        const std::string where = "round " + std::to_string(round_idx) + ": ";

        ProofCheckResult admissible =
            std::holds_alternative<Interpretation>(round.interp)
                ? check_trace_round(system, std::get<Interpretation>(round.interp))
                : check_affine_round(system, std::get<AffineInterpretation>(round.interp));
        if (!admissible.valid)
            return ProofCheckResult::fail(where + admissible.reason);

        if (round.removed.empty())
            return ProofCheckResult::fail(where + "removes no rule");
        for (std::size_t idx : round.removed)
            if (!alive.count(idx))
                return ProofCheckResult::fail(where + "removes rule " + std::to_string(idx) +
                                              " which is not alive");

        auto decrease_of = [&](const Rule& rule) {
            if (std::holds_alternative<Interpretation>(round.interp))
                return rule_decrease(std::get<Interpretation>(round.interp), rule);
            return affine_rule_decrease(std::get<AffineInterpretation>(round.interp), rule);
        };
        for (std::size_t idx : alive) {
            Decrease d = decrease_of(system.rules[idx]);
            if (d == Decrease::None)
                return ProofCheckResult::fail(where + "not weak: rule " + std::to_string(idx));
            bool removed = std::find(round.removed.begin(), round.removed.end(), idx) !=
                           round.removed.end();
            if (removed && d != Decrease::Strict)
                return ProofCheckResult::fail(where + "not strict: rule " + std::to_string(idx));
        }
        for (std::size_t idx : round.removed)
            alive.erase(idx);
    }
    if (!alive.empty())
        return ProofCheckResult::fail("rules remain after the last round");
    return ProofCheckResult::ok();
}

} // namespace rwcert
