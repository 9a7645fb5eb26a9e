#include "rwcert/automata.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <queue>
#include <stdexcept>

namespace rwcert {

BoolRel::BoolRel(std::size_t n) : rows_(n, 0) {
    if (n > 64)
        throw std::invalid_argument("BoolRel supports at most 64 states");
}

BoolRel BoolRel::identity(std::size_t n) {
    BoolRel r(n);
    for (std::size_t p = 0; p < n; ++p)
        r.set(p, p);
    return r;
}

BoolRel BoolRel::compose(const BoolRel& other) const {
    BoolRel out(dim());
    for (std::size_t p = 0; p < dim(); ++p) {
        std::uint64_t row = rows_[p];
        std::uint64_t acc = 0;
        while (row != 0) {
            std::size_t q = static_cast<std::size_t>(__builtin_ctzll(row));
            row &= row - 1;
            acc |= other.rows_[q];
        }
        out.rows_[p] = acc;
    }
    return out;
}

bool BoolRel::subset_of(const BoolRel& other) const {
    for (std::size_t p = 0; p < dim(); ++p)
        if ((rows_[p] & ~other.rows_[p]) != 0)
            return false;
    return true;
}

bool BoolRel::has_diagonal() const {
    for (std::size_t p = 0; p < dim(); ++p)
        if (get(p, p))
            return true;
    return false;
}

BoolRel BoolRel::union_with(const BoolRel& other) const {
    BoolRel out(dim());
    for (std::size_t p = 0; p < dim(); ++p)
        out.rows_[p] = rows_[p] | other.rows_[p];
    return out;
}

namespace {

BoolRel letter_relation(const NfaCert& a, SymbolId s) {
    BoolRel r(a.n);
    for (const Transition& t : a.transitions)
        if (t.symbol == s)
            r.set(t.from, t.to);
    return r;
}

} // namespace

BoolRel word_relation(const NfaCert& a, const Word& w) {
    BoolRel acc = BoolRel::identity(a.n);
    for (SymbolId s : w)
        acc = acc.compose(letter_relation(a, s));
    return acc;
}

AvoidDfa build_avoid_dfa(const std::vector<Word>& patterns, std::size_t alphabet_size) {
    for (const Word& p : patterns)
        if (p.empty())
            throw std::invalid_argument("build_avoid_dfa: empty pattern");

    // Trie over pattern prefixes, root 0.
    struct Node {
        std::vector<long> child; // -1 = absent
        std::size_t fail = 0;
        bool match = false;
    };
    std::vector<Node> trie(1, Node{std::vector<long>(alphabet_size, -1), 0, false});
    for (const Word& p : patterns) {
        std::size_t cur = 0;
        for (SymbolId s : p) {
            if (trie[cur].child[s] < 0) {
                trie[cur].child[s] = static_cast<long>(trie.size());
                trie.push_back(Node{std::vector<long>(alphabet_size, -1), 0, false});
            }
            cur = static_cast<std::size_t>(trie[cur].child[s]);
        }
        trie[cur].match = true;
    }

    // Failure links by BFS; goto made total along the way.
    std::vector<std::vector<std::size_t>> go(trie.size(),
                                             std::vector<std::size_t>(alphabet_size, 0));
    std::queue<std::size_t> bfs;
    for (std::size_t a = 0; a < alphabet_size; ++a) {
        long c = trie[0].child[a];
        if (c >= 0) {
            trie[static_cast<std::size_t>(c)].fail = 0;
            go[0][a] = static_cast<std::size_t>(c);
            bfs.push(static_cast<std::size_t>(c));
        } else {
            go[0][a] = 0;
        }
    }
    while (!bfs.empty()) {
        std::size_t u = bfs.front();
        bfs.pop();
        trie[u].match = trie[u].match || trie[trie[u].fail].match;
        for (std::size_t a = 0; a < alphabet_size; ++a) {
            long c = trie[u].child[a];
            if (c >= 0) {
                trie[static_cast<std::size_t>(c)].fail = go[trie[u].fail][a];
                go[u][a] = static_cast<std::size_t>(c);
                bfs.push(static_cast<std::size_t>(c));
            } else {
                go[u][a] = go[trie[u].fail][a];
            }
        }
    }

    // Collapse matching nodes into the absorbing sink; live nodes keep their
    // BFS-respecting trie order (root first).
    std::vector<long> live_index(trie.size(), -1);
    std::size_t live = 0;
    for (std::size_t u = 0; u < trie.size(); ++u)
        if (!trie[u].match)
            live_index[u] = static_cast<long>(live++);
    if (trie[0].match)
        throw std::invalid_argument("build_avoid_dfa: empty pattern");

    AvoidDfa dfa;
    dfa.live_states = live;
    dfa.alphabet = alphabet_size;
    dfa.delta.assign(live * alphabet_size, dfa.sink());
    for (std::size_t u = 0; u < trie.size(); ++u) {
        if (trie[u].match)
            continue;
        for (std::size_t a = 0; a < alphabet_size; ++a) {
            std::size_t v = go[u][a];
            dfa.delta[static_cast<std::size_t>(live_index[u]) * alphabet_size + a] =
                trie[v].match ? dfa.sink() : static_cast<std::size_t>(live_index[v]);
        }
    }
    return dfa;
}

namespace {

std::vector<std::vector<const Transition*>> by_source(const NfaCert& a) {
    std::vector<std::vector<const Transition*>> out(a.n);
    for (const Transition& t : a.transitions)
        out[t.from].push_back(&t);
    return out;
}

} // namespace

bool check_nonempty(const NfaCert& a) {
    if (a.mode == RewriteMode::String) {
        std::vector<bool> seen(a.n, false);
        std::deque<std::size_t> queue;
        for (std::size_t p : a.initial)
            if (!seen[p]) {
                seen[p] = true;
                queue.push_back(p);
            }
        auto out = by_source(a);
        while (!queue.empty()) {
            std::size_t p = queue.front();
            queue.pop_front();
            for (const Transition* t : out[p])
                if (!seen[t->to]) {
                    seen[t->to] = true;
                    queue.push_back(t->to);
                }
        }
        return std::any_of(a.final.begin(), a.final.end(),
                           [&](std::size_t p) { return seen[p]; });
    }
    // cycle mode: any directed cycle in the transition graph
    if (a.n == 0)
        return false;
    auto out = by_source(a);
    std::vector<int> color(a.n, 0);
    for (std::size_t root = 0; root < a.n; ++root) {
        if (color[root] != 0)
            continue;
        std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
        color[root] = 1;
        while (!stack.empty()) {
            auto& [p, next] = stack.back();
            if (next < out[p].size()) {
                std::size_t q = out[p][next++]->to;
                if (color[q] == 1)
                    return true;
                if (color[q] == 0) {
                    color[q] = 1;
                    stack.push_back({q, 0});
                }
            } else {
                color[p] = 2;
                stack.pop_back();
            }
        }
    }
    return false;
}

bool check_splice(const NfaCert& a, const RewriteSystem& system) {
    for (const Rule& rule : system.rules)
        if (!word_relation(a, rule.lhs).subset_of(word_relation(a, rule.rhs)))
            return false;
    return true;
}

namespace {

struct CoverageWitness {
    bool covered = true;
    Word witness; // redex-free accepted word when not covered
};

CoverageWitness coverage_string_detail(const NfaCert& a, const AvoidDfa& avoid) {
    const std::size_t width = avoid.live_states;
    auto pair_id = [&](std::size_t p, std::size_t d) { return p * width + d; };
    std::vector<bool> seen(a.n * width, false);
    std::vector<bool> is_final(a.n, false);
    for (std::size_t p : a.final)
        is_final[p] = true;
    struct Parent {
        std::size_t from = 0;
        SymbolId symbol = 0;
        bool has = false;
    };
    std::vector<Parent> parent(a.n * width);
    std::deque<std::pair<std::size_t, std::size_t>> queue;

    auto report = [&](std::size_t p, std::size_t d) {
        Word w;
        std::size_t cur = pair_id(p, d);
        while (parent[cur].has) {
            w.push_back(parent[cur].symbol);
            cur = parent[cur].from;
        }
        std::reverse(w.begin(), w.end());
        return CoverageWitness{false, std::move(w)};
    };

    for (std::size_t p : a.initial) {
        std::size_t id = pair_id(p, avoid.start());
        if (!seen[id]) {
            seen[id] = true;
            queue.push_back({p, avoid.start()});
        }
    }
    auto out = by_source(a);
    // seed pairs first: the empty word is accepted iff initial meets final
    for (auto& [p, d] : queue)
        if (is_final[p])
            return report(p, d);
    while (!queue.empty()) {
        auto [p, d] = queue.front();
        queue.pop_front();
        for (const Transition* t : out[p]) {
            std::size_t d2 = avoid.next(d, t->symbol);
            if (!avoid.live(d2))
                continue;
            std::size_t id = pair_id(t->to, d2);
            if (seen[id])
                continue;
            seen[id] = true;
            parent[id] = {pair_id(p, d), t->symbol, true};
            if (is_final[t->to])
                return report(t->to, d2);
            queue.push_back({t->to, d2});
        }
    }
    return {};
}

struct CycleCoverageWitness {
    bool covered = true;
    std::string failed;  // "min-cycle-length" or "coverage"
    std::string witness;
};

CycleCoverageWitness coverage_cycle_detail(const NfaCert& a, const AvoidDfa& avoid,
                                           std::size_t m) {
    // (ii) no closed walk of length < m in a's transition graph
    if (m >= 2 && a.n > 0) {
        BoolRel adj(a.n);
        for (const Transition& t : a.transitions)
            adj.set(t.from, t.to);
        BoolRel power = adj;
        for (std::size_t k = 1; k < m; ++k) {
            for (std::size_t p = 0; p < a.n; ++p)
                if (power.get(p, p))
                    return {false, "min-cycle-length",
                            "closed walk of length " + std::to_string(k) + " at state " +
                                std::to_string(p)};
            power = power.compose(adj);
        }
    }
    // (i) live product graph acyclic
    const std::size_t width = avoid.live_states;
    const std::size_t total = a.n * width;
    auto out = by_source(a);
    std::vector<int> color(total, 0);
    for (std::size_t root = 0; root < total; ++root) {
        if (color[root] != 0)
            continue;
        std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
        color[root] = 1;
        while (!stack.empty()) {
            auto& [v, next] = stack.back();
            std::size_t p = v / width, d = v % width;
            if (next < out[p].size()) {
                const Transition* t = out[p][next++];
                std::size_t d2 = avoid.next(d, t->symbol);
                if (!avoid.live(d2))
                    continue;
                std::size_t u = t->to * width + d2;
                if (color[u] == 1)
                    return {false, "coverage",
                            "live product cycle through (" + std::to_string(t->to) + "," +
                                std::to_string(d2) + ")"};
                if (color[u] == 0) {
                    color[u] = 1;
                    stack.push_back({u, 0});
                }
            } else {
                color[v] = 2;
                stack.pop_back();
            }
        }
    }
    return {};
}

} // namespace

bool check_redex_coverage_string(const NfaCert& a, const AvoidDfa& avoid) {
    return coverage_string_detail(a, avoid).covered;
}

bool check_redex_coverage_cycle(const NfaCert& a, const AvoidDfa& avoid, std::size_t m) {
    return coverage_cycle_detail(a, avoid, m).covered;
}

std::size_t min_cycle_length(const RewriteSystem& system) {
    std::size_t m = system.max_lhs_length();
    for (const Rule& rule : system.rules)
        if (rule.rhs.empty() && rule.lhs.size() == m)
            return m + 1;
    return m;
}

CheckReport check_certificate(const RewriteSystem& system, const NfaCert& a) {
    if (a.mode != system.mode)
        throw std::invalid_argument("certificate mode does not match system mode");
    if (a.n > 64)
        throw std::invalid_argument("certificate has more than 64 states");
    for (const Transition& t : a.transitions)
        if (t.from >= a.n || t.to >= a.n || t.symbol >= system.alphabet.size())
            throw std::invalid_argument("certificate transition out of range");
    if (a.mode == RewriteMode::String)
        for (std::size_t p : a.initial)
            if (p >= a.n)
                throw std::invalid_argument("certificate initial state out of range");
    if (a.mode == RewriteMode::String)
        for (std::size_t p : a.final)
            if (p >= a.n)
                throw std::invalid_argument("certificate final state out of range");

    if (!check_nonempty(a))
        return CheckReport::bad("nonempty", "");

    for (const Rule& rule : system.rules) {
        BoolRel rel_l = word_relation(a, rule.lhs);
        BoolRel rel_r = word_relation(a, rule.rhs);
        if (!rel_l.subset_of(rel_r)) {
            for (std::size_t p = 0; p < a.n; ++p)
                for (std::size_t q = 0; q < a.n; ++q)
                    if (rel_l.get(p, q) && !rel_r.get(p, q))
                        return CheckReport::bad("splice",
                                                "rule " + std::to_string(rule.index) + " at (" +
                                                    std::to_string(p) + "," + std::to_string(q) +
                                                    ")");
        }
    }

    std::vector<Word> patterns;
    for (const Rule& rule : system.rules)
        patterns.push_back(rule.lhs);
    AvoidDfa avoid = build_avoid_dfa(patterns, system.alphabet.size());

    if (a.mode == RewriteMode::String) {
        CoverageWitness cw = coverage_string_detail(a, avoid);
        if (!cw.covered)
            return CheckReport::bad("coverage", render_word(system.alphabet, cw.witness));
    } else {
        CycleCoverageWitness cw = coverage_cycle_detail(a, avoid, min_cycle_length(system));
        if (!cw.covered)
            return CheckReport::bad(cw.failed, cw.witness);
    }
    return CheckReport::ok();
}

std::vector<Word> accepted_words(const NfaCert& a, std::size_t alphabet_size,
                                 std::size_t max_len) {
    std::vector<Word> out;
    std::vector<bool> is_initial(a.n, false), is_final(a.n, false);
    for (std::size_t p : a.initial)
        is_initial[p] = true;
    for (std::size_t p : a.final)
        is_final[p] = true;

    auto accepted = [&](const Word& w) {
        BoolRel rel = word_relation(a, w);
        if (a.mode == RewriteMode::Cycle)
            return !w.empty() && rel.has_diagonal();
        for (std::size_t p = 0; p < a.n; ++p)
            for (std::size_t q = 0; q < a.n; ++q)
                if (is_initial[p] && is_final[q] && rel.get(p, q))
                    return true;
        return false;
    };

    Word w;
    for (std::size_t len = 0; len <= max_len; ++len) {
        w.assign(len, 0);
        if (len == 0) {
            if (a.mode == RewriteMode::String && accepted(w))
                out.push_back(w);
            continue;
        }
        if (alphabet_size == 0)
            break;
        for (;;) {
            bool consider = a.mode == RewriteMode::String || canonical_rotation(w) == w;
            if (consider && accepted(w))
                out.push_back(w);
            std::size_t pos = len;
            while (pos > 0) {
                --pos;
                if (w[pos] + 1 < alphabet_size) {
                    ++w[pos];
                    std::fill(w.begin() + static_cast<std::ptrdiff_t>(pos) + 1, w.end(), 0);
                    break;
                }
                if (pos == 0) {
                    pos = len + 1; // odometer exhausted
                    break;
                }
            }
            if (pos == len + 1)
                break;
        }
    }
    return out;
}

} // namespace rwcert
