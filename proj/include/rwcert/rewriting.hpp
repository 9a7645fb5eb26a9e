#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace rwcert {

// Symbols are interned: dense ids 0..|alphabet|-1 in order of first
// appearance. All word operations work on ids; names live in the Alphabet.
using SymbolId = std::uint32_t;

using Word = std::vector<SymbolId>;

enum class RewriteMode { String, Cycle };

const char* to_string(RewriteMode mode);
std::optional<RewriteMode> mode_from_string(std::string_view s);

class Alphabet {
public:
    SymbolId intern(std::string_view name);
    std::optional<SymbolId> find(std::string_view name) const;
    const std::string& name(SymbolId id) const;
    std::size_t size() const { return names_.size(); }

    bool operator==(const Alphabet& other) const { return names_ == other.names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, SymbolId> ids_;
};

struct Rule {
    Word lhs; // nonempty
    Word rhs; // may be empty
    std::size_t index = 0;
};

struct RewriteSystem {
    Alphabet alphabet;
    std::vector<Rule> rules;
    RewriteMode mode = RewriteMode::String;

    std::size_t max_lhs_length() const;
};

// Renders a word as space-separated tokens ("a b a"); empty word renders
// as the empty string.
std::string render_word(const Alphabet& alphabet, const Word& w);

Word rotate(const Word& w, std::size_t k);

// Lexicographically least rotation under symbol-id order. Idempotent.
Word canonical_rotation(const Word& w);

// A word modulo rotation, stored as its canonical rotation.
class CycleWord {
public:
    CycleWord() = default;
    explicit CycleWord(const Word& w) : rep_(canonical_rotation(w)) {}

    const Word& rep() const { return rep_; }
    std::size_t size() const { return rep_.size(); }
    bool empty() const { return rep_.empty(); }

    bool operator==(const CycleWord& other) const { return rep_ == other.rep_; }
    bool operator<(const CycleWord& other) const { return rep_ < other.rep_; }

private:
    Word rep_;
};

struct StringStep {
    std::size_t rule = 0;
    std::size_t position = 0;
    Word result;

    bool operator==(const StringStep&) const = default;
};

struct CycleStep {
    std::size_t rule = 0;
    std::size_t rotation = 0; // rotation offset at which the lhs matched
    CycleWord result;

    bool operator==(const CycleStep&) const = default;
};

// All single rewrite steps from w: one entry per occurrence of a lhs as a
// factor of w, ordered by (rule, position).
std::vector<StringStep> string_successors(const Word& w, const RewriteSystem& system);

// All single cycle-rewrite steps from c: for each rule l -> r and each
// rotation of c with l as a prefix (requires |l| <= |c|), the canonicalized
// cycle of r followed by the remainder. Duplicate (rule, result) pairs are
// collapsed; the rotation kept is the smallest one producing that result.
std::vector<CycleStep> cycle_successors(const CycleWord& c, const RewriteSystem& system);

// True iff |f| <= |w| and f occurs as a factor of some rotation of w.
// f must be nonempty.
bool cyclic_contains_factor(const Word& w, const Word& f);

// True iff f occurs as a (plain) factor of w.
bool contains_factor(const Word& w, const Word& f);

struct WordHash {
    std::size_t operator()(const Word& w) const {
        std::size_t h = 1469598103934665603ull;
        for (SymbolId s : w) {
            h ^= s;
            h *= 1099511628211ull;
        }
        return h;
    }
};

} // namespace rwcert
