#include "rwcert/rewriting.hpp"

#include <algorithm>
#include <stdexcept>

namespace rwcert {

const char* to_string(RewriteMode mode) {
    return mode == RewriteMode::String ? "string" : "cycle";
}

std::optional<RewriteMode> mode_from_string(std::string_view s) {
    if (s == "string")
        return RewriteMode::String;
    if (s == "cycle")
        return RewriteMode::Cycle;
    return std::nullopt;
}

SymbolId Alphabet::intern(std::string_view name) {
    auto it = ids_.find(std::string(name));
    if (it != ids_.end())
        return it->second;
    SymbolId id = static_cast<SymbolId>(names_.size());
    names_.emplace_back(name);
    ids_.emplace(names_.back(), id);
    return id;
}

std::optional<SymbolId> Alphabet::find(std::string_view name) const {
    auto it = ids_.find(std::string(name));
    if (it == ids_.end())
        return std::nullopt;
    return it->second;
}

const std::string& Alphabet::name(SymbolId id) const {
    if (id >= names_.size())
        throw std::out_of_range("symbol id out of range");
    return names_[id];
}

std::size_t RewriteSystem::max_lhs_length() const {
    std::size_t m = 0;
    for (const Rule& r : rules)
        m = std::max(m, r.lhs.size());
    return m;
}

std::string render_word(const Alphabet& alphabet, const Word& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i)
            out += ' ';
        out += alphabet.name(w[i]);
    }
    return out;
}

Word rotate(const Word& w, std::size_t k) {
    if (w.empty())
        return w;
    k %= w.size();
    Word out;
    out.reserve(w.size());
    out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(k), w.end());
    out.insert(out.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
    return out;
}

Word canonical_rotation(const Word& w) {
    const std::size_t n = w.size();
    if (n <= 1)
        return w;
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            SymbolId a = w[(i + k) % n];
            SymbolId b = w[(best + k) % n];
            if (a != b) {
                if (a < b)
                    best = i;
                break;
            }
        }
    }
    return rotate(w, best);
}

namespace {

bool matches_at(const Word& w, std::size_t pos, const Word& pattern) {
    if (pos + pattern.size() > w.size())
        return false;
    return std::equal(pattern.begin(), pattern.end(), w.begin() + static_cast<std::ptrdiff_t>(pos));
}

} // namespace

std::vector<StringStep> string_successors(const Word& w, const RewriteSystem& system) {
    std::vector<StringStep> out;
    for (const Rule& rule : system.rules) {
        if (rule.lhs.size() > w.size())
            continue;
        for (std::size_t pos = 0; pos + rule.lhs.size() <= w.size(); ++pos) {
            if (!matches_at(w, pos, rule.lhs))
                continue;
            Word result;
            result.reserve(w.size() - rule.lhs.size() + rule.rhs.size());
            result.insert(result.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(pos));
            result.insert(result.end(), rule.rhs.begin(), rule.rhs.end());
            result.insert(result.end(), w.begin() + static_cast<std::ptrdiff_t>(pos + rule.lhs.size()), w.end());
            out.push_back(StringStep{rule.index, pos, std::move(result)});
        }
    }
    std::sort(out.begin(), out.end(), [](const StringStep& a, const StringStep& b) {
        return std::tie(a.rule, a.position) < std::tie(b.rule, b.position);
    });
    return out;
}

std::vector<CycleStep> cycle_successors(const CycleWord& c, const RewriteSystem& system) {
    std::vector<CycleStep> out;
    const Word& rep = c.rep();
    const std::size_t n = rep.size();
    for (const Rule& rule : system.rules) {
        if (rule.lhs.empty() || rule.lhs.size() > n)
            continue;
        for (std::size_t k = 0; k < n; ++k) {
            // does rotation k of rep start with lhs?
            bool match = true;
            for (std::size_t j = 0; j < rule.lhs.size(); ++j) {
                if (rep[(k + j) % n] != rule.lhs[j]) {
                    match = false;
                    break;
                }
            }
            if (!match)
                continue;
            Word replaced;
            replaced.reserve(n - rule.lhs.size() + rule.rhs.size());
            replaced.insert(replaced.end(), rule.rhs.begin(), rule.rhs.end());
            for (std::size_t j = rule.lhs.size(); j < n; ++j)
                replaced.push_back(rep[(k + j) % n]);
            CycleWord result(replaced);
            bool seen = false;
            for (const CycleStep& s : out) {
                if (s.rule == rule.index && s.result == result) {
                    seen = true;
                    break;
                }
            }
            if (!seen)
                out.push_back(CycleStep{rule.index, k, std::move(result)});
        }
    }
    std::sort(out.begin(), out.end(), [](const CycleStep& a, const CycleStep& b) {
        return std::tie(a.rule, a.rotation) < std::tie(b.rule, b.rotation);
    });
    return out;
}

bool contains_factor(const Word& w, const Word& f) {
    if (f.empty())
        return true;
    if (f.size() > w.size())
        return false;
    return std::search(w.begin(), w.end(), f.begin(), f.end()) != w.end();
}

bool cyclic_contains_factor(const Word& w, const Word& f) {
    if (f.empty())
        throw std::invalid_argument("cyclic_contains_factor: factor must be nonempty");
    if (f.size() > w.size())
        return false;
    // f fits inside one turn, so any cyclic occurrence lies within w·w
    // starting before position |w|.
    Word doubled = w;
    doubled.insert(doubled.end(), w.begin(), w.end());
    for (std::size_t pos = 0; pos < w.size(); ++pos) {
        if (std::equal(f.begin(), f.end(), doubled.begin() + static_cast<std::ptrdiff_t>(pos)))
            return true;
    }
    return false;
}

} // namespace rwcert
