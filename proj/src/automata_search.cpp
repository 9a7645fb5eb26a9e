#include "rwcert/automata_search.hpp"

#include <algorithm>
#include <stdexcept>

namespace rwcert {

namespace {

void exactly_one(sat::Cnf& cnf, const std::vector<int>& xs) {
    std::vector<sat::Lit> alo(xs.begin(), xs.end());
    cnf.add_clause(std::move(alo));
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = i + 1; j < xs.size(); ++j)
            cnf.add_clause({-xs[i], -xs[j]});
}

// Literal matrix of the path relation of a word; the empty word is the
// identity relation, kept symbolic.
struct RelLits {
    bool is_identity = false;
    std::size_t n = 0;
    std::vector<int> lits; // n*n, row-major

    int at(std::size_t p, std::size_t q) const { return lits[p * n + q]; }
};

// Tseitin-defines layer-by-layer path variables: layer j holds, for each
// start state p and end state q, a literal equivalent to "some path p -u[0..j)-> q".
// Layer 1 reuses the transition literals directly.
RelLits build_word_rel(sat::Cnf& cnf, const EncodeVars& v, const Word& u) {
    const std::size_t n = v.n;
    if (u.empty())
        return {true, n, {}};
    std::vector<int> prev(n * n);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
            prev[p * n + q] = v.t(p, u[0], q);
    for (std::size_t j = 2; j <= u.size(); ++j) {
        std::vector<int> cur(n * n);
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = 0; q < n; ++q) {
                std::vector<int> steps;
                for (std::size_t mid = 0; mid < n; ++mid) {
                    int c = cnf.new_var();
                    cnf.define_and(c, {prev[p * n + mid], v.t(mid, u[j - 1], q)});
                    steps.push_back(c);
                }
                int y = cnf.new_var();
                cnf.define_or(y, steps);
                cur[p * n + q] = y;
            }
        }
        prev = std::move(cur);
    }
    return {false, n, std::move(prev)};
}

} // namespace

EncodedSearch encode_search(const RewriteSystem& system, std::size_t n,
                            std::size_t witness_len) {
    if (n < 1)
        throw std::invalid_argument("encode_search: n must be at least 1");
    if (witness_len < 1)
        throw std::invalid_argument("encode_search: witness length must be at least 1");

    EncodedSearch enc;
    EncodeVars& v = enc.vars;
    sat::Cnf& cnf = enc.cnf;
    v.mode = system.mode;
    v.n = n;
    v.alphabet = system.alphabet.size();

    for (int k = 0; k < v.t_count(); ++k)
        cnf.new_var();
    if (system.mode == RewriteMode::String) {
        v.i_base = cnf.var_count() + 1;
        for (std::size_t p = 0; p < n; ++p)
            cnf.new_var();
        v.f_base = cnf.var_count() + 1;
        for (std::size_t p = 0; p < n; ++p)
            cnf.new_var();
    }

    // (1) nonemptiness: explicit witness run, one-hot letters and states
    const std::size_t L = witness_len;
    std::vector<std::vector<int>> wvar(L), svar(L + 1);
    for (std::size_t j = 0; j < L; ++j)
        for (std::size_t a = 0; a < v.alphabet; ++a)
            wvar[j].push_back(cnf.new_var());
    for (std::size_t j = 0; j <= L; ++j)
        for (std::size_t p = 0; p < n; ++p)
            svar[j].push_back(cnf.new_var());
    for (std::size_t j = 0; j < L; ++j)
        exactly_one(cnf, wvar[j]);
    for (std::size_t j = 0; j <= L; ++j)
        exactly_one(cnf, svar[j]);
    for (std::size_t j = 0; j < L; ++j)
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t a = 0; a < v.alphabet; ++a)
                for (std::size_t q = 0; q < n; ++q)
                    cnf.add_clause({-svar[j][p], -wvar[j][a], -svar[j + 1][q],
                                    v.t(p, static_cast<SymbolId>(a), q)});
    if (system.mode == RewriteMode::String) {
        for (std::size_t p = 0; p < n; ++p) {
            cnf.add_clause({-svar[0][p], v.i(p)});
            cnf.add_clause({-svar[L][p], v.f(p)});
        }
    } else {
        cnf.add_unit(svar[0][0]);
        cnf.add_unit(svar[L][0]);
    }

    // (2) splice: rel_lhs(p,q) -> rel_rhs(p,q)
    for (const Rule& rule : system.rules) {
        RelLits rel_l = build_word_rel(cnf, v, rule.lhs);
        RelLits rel_r = build_word_rel(cnf, v, rule.rhs);
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = 0; q < n; ++q) {
                if (rel_r.is_identity) {
                    if (p != q)
                        cnf.add_clause({-rel_l.at(p, q)});
                } else {
                    cnf.add_clause({-rel_l.at(p, q), rel_r.at(p, q)});
                }
            }
        }
    }

    // (3) redex coverage over the product with the avoid automaton
    std::vector<Word> patterns;
    for (const Rule& rule : system.rules)
        patterns.push_back(rule.lhs);
    const AvoidDfa avoid = build_avoid_dfa(patterns, v.alphabet);
    const std::size_t live = avoid.live_states;

    if (system.mode == RewriteMode::String) {
        // inductive set S over live product states; final states excluded
        std::vector<int> setvar(n * live);
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t d = 0; d < live; ++d)
                setvar[p * live + d] = cnf.new_var();
        for (std::size_t p = 0; p < n; ++p)
            cnf.add_clause({-v.i(p), setvar[p * live + avoid.start()]});
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t d = 0; d < live; ++d)
                for (std::size_t a = 0; a < v.alphabet; ++a) {
                    std::size_t d2 = avoid.next(d, static_cast<SymbolId>(a));
                    if (!avoid.live(d2))
                        continue;
                    for (std::size_t q = 0; q < n; ++q)
                        cnf.add_clause({-setvar[p * live + d],
                                        -v.t(p, static_cast<SymbolId>(a), q),
                                        setvar[q * live + d2]});
                }
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t d = 0; d < live; ++d)
                cnf.add_clause({-setvar[p * live + d], -v.f(p)});
    } else {
        const std::size_t m = min_cycle_length(system);
        // (ii) forbid closed walks shorter than m, via layered walk variables
        if (m >= 2) {
            std::vector<int> edge(n * n);
            for (std::size_t p = 0; p < n; ++p)
                for (std::size_t q = 0; q < n; ++q) {
                    edge[p * n + q] = cnf.new_var();
                    for (std::size_t a = 0; a < v.alphabet; ++a)
                        cnf.add_clause({-v.t(p, static_cast<SymbolId>(a), q), edge[p * n + q]});
                }
            std::vector<int> walk = edge;
            for (std::size_t k = 1; k < m; ++k) {
                for (std::size_t p = 0; p < n; ++p)
                    cnf.add_clause({-walk[p * n + p]});
                if (k + 1 >= m)
                    break;
                std::vector<int> next(n * n);
                for (std::size_t p = 0; p < n; ++p)
                    for (std::size_t q = 0; q < n; ++q) {
                        int y = cnf.new_var();
                        next[p * n + q] = y;
                        for (std::size_t mid = 0; mid < n; ++mid)
                            cnf.add_clause({-walk[p * n + mid], -edge[mid * n + q], y});
                    }
                walk = std::move(next);
            }
        }
        // (i) acyclicity of the live product graph via unary level variables
        const std::size_t V = n * live;
        std::vector<std::vector<int>> level(V);
        if (V >= 2)
            for (std::size_t node = 0; node < V; ++node)
                for (std::size_t k = 0; k + 1 < V; ++k)
                    level[node].push_back(cnf.new_var());
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t d = 0; d < live; ++d)
                for (std::size_t a = 0; a < v.alphabet; ++a) {
                    std::size_t d2 = avoid.next(d, static_cast<SymbolId>(a));
                    if (!avoid.live(d2))
                        continue;
                    for (std::size_t q = 0; q < n; ++q) {
                        int tlit = v.t(p, static_cast<SymbolId>(a), q);
                        std::size_t src = p * live + d, dst = q * live + d2;
                        if (V == 1) {
                            cnf.add_clause({-tlit});
                            continue;
                        }
                        cnf.add_clause({-tlit, level[src][0]});
                        for (std::size_t k = 0; k + 2 < V; ++k)
                            cnf.add_clause({-tlit, -level[dst][k], level[src][k + 1]});
                        cnf.add_clause({-tlit, -level[dst][V - 2]});
                    }
                }
    }
    return enc;
}

NfaCert decode_model(const std::vector<bool>& model, const EncodeVars& vars) {
    std::size_t needed = static_cast<std::size_t>(vars.t_count());
    if (vars.mode == RewriteMode::String)
        needed = static_cast<std::size_t>(vars.f_base) - 1 + vars.n;
    if (model.size() < needed)
        throw std::invalid_argument("model inconsistent with variable map");

    auto truth = [&](int var) { return model[static_cast<std::size_t>(var) - 1]; };

    NfaCert cert;
    cert.n = vars.n;
    cert.mode = vars.mode;
    for (std::size_t p = 0; p < vars.n; ++p)
        for (std::size_t a = 0; a < vars.alphabet; ++a)
            for (std::size_t q = 0; q < vars.n; ++q)
                if (truth(vars.t(p, static_cast<SymbolId>(a), q)))
                    cert.transitions.push_back({p, static_cast<SymbolId>(a), q});
    if (vars.mode == RewriteMode::String) {
        for (std::size_t p = 0; p < vars.n; ++p) {
            if (truth(vars.i(p)))
                cert.initial.push_back(p);
            if (truth(vars.f(p)))
                cert.final.push_back(p);
        }
    }
    return cert;
}

std::optional<NfaCert> find_certificate(const RewriteSystem& system,
                                        const AutomataParams& params, const Budget& budget) {
    const std::size_t floor = system.mode == RewriteMode::Cycle ? min_cycle_length(system)
                                                                : system.max_lhs_length();
    const std::size_t m = std::max<std::size_t>(floor, 1);
    for (std::size_t n = 1; n <= params.n_max; ++n) {
        std::vector<std::size_t> lengths = params.witness_lengths;
        if (lengths.empty())
            for (std::size_t len = m; len <= 2 * n; ++len)
                lengths.push_back(len);
        for (std::size_t len : lengths) {
            if (budget.expired())
                return std::nullopt;
            EncodedSearch enc = encode_search(system, n, len);
            sat::SolveResult res = sat::solve(enc.cnf, budget);
            if (res.status != sat::SolveStatus::Sat)
                continue;
            NfaCert cert = decode_model(res.model, enc.vars);
            if (check_certificate(system, cert).valid)
                return cert;
        }
    }
    return std::nullopt;
}

} // namespace rwcert
