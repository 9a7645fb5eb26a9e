#include "rwcert/loop.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace rwcert {

namespace {

struct SearchNode {
    long parent = -1; // index into the node pool, -1 for the seed
    LoopStep step;    // step that produced this node (unused for the seed)
    std::size_t depth = 0;
};

std::vector<LoopStep> path_to(const std::vector<SearchNode>& nodes, long id,
                              LoopStep closing) {
    std::vector<LoopStep> steps{std::move(closing)};
    while (id >= 0) {
        const SearchNode& node = nodes[static_cast<std::size_t>(id)];
        if (node.parent < 0)
            break;
        steps.push_back(node.step);
        id = node.parent;
    }
    std::reverse(steps.begin(), steps.end());
    return steps;
}

std::optional<LoopCert> string_loop_from(const Word& seed, const RewriteSystem& system,
                                         const LoopParams& params, const Budget& budget) {
    std::vector<Word> words{seed};
    std::vector<SearchNode> nodes{SearchNode{}};
    std::unordered_map<Word, std::size_t, WordHash> visited{{seed, 0}};
    std::deque<std::size_t> queue{0};
    std::size_t polls = 0;

    while (!queue.empty()) {
        if (++polls % 64 == 0 && budget.expired())
            return std::nullopt;
        std::size_t id = queue.front();
        queue.pop_front();
        if (nodes[id].depth >= params.max_depth)
            continue;
        for (const StringStep& step : string_successors(words[id], system)) {
            if (step.result.size() > params.max_length)
                continue;
            LoopStep ls{step.rule, step.position, step.result};
            if (contains_factor(step.result, seed))
                return LoopCert{LoopShape::StringFactor, seed,
                                path_to(nodes, static_cast<long>(id), std::move(ls))};
            if (visited.count(step.result))
                continue;
            if (nodes.size() >= params.max_nodes)
                return std::nullopt;
            visited.emplace(step.result, nodes.size());
            words.push_back(step.result);
            nodes.push_back(SearchNode{static_cast<long>(id), std::move(ls),
                                       nodes[id].depth + 1});
            queue.push_back(nodes.size() - 1);
        }
    }
    return std::nullopt;
}

std::optional<LoopCert> cycle_loop_from(const CycleWord& seed, const RewriteSystem& system,
                                        const LoopParams& params, const Budget& budget) {
    std::vector<CycleWord> cycles{seed};
    std::vector<SearchNode> nodes{SearchNode{}};
    std::unordered_map<Word, std::size_t, WordHash> visited{{seed.rep(), 0}};
    std::deque<std::size_t> queue{0};
    std::size_t polls = 0;

    while (!queue.empty()) {
        if (++polls % 64 == 0 && budget.expired())
            return std::nullopt;
        std::size_t id = queue.front();
        queue.pop_front();
        if (nodes[id].depth >= params.max_depth)
            continue;
        for (const CycleStep& step : cycle_successors(cycles[id], system)) {
            if (step.result.size() > params.max_length)
                continue;
            LoopStep ls{step.rule, step.rotation, step.result.rep()};
            if (step.result == seed)
                return LoopCert{LoopShape::CycleRevisit, seed.rep(),
                                path_to(nodes, static_cast<long>(id), std::move(ls))};
            if (visited.count(step.result.rep()))
                continue;
            if (nodes.size() >= params.max_nodes)
                return std::nullopt;
            visited.emplace(step.result.rep(), nodes.size());
            cycles.push_back(step.result);
            nodes.push_back(SearchNode{static_cast<long>(id), std::move(ls),
                                       nodes[id].depth + 1});
            queue.push_back(nodes.size() - 1);
        }
    }
    return std::nullopt;
}

} // namespace

std::optional<LoopCert> find_loop(const RewriteSystem& system, const LoopParams& params,
                                  const Budget& budget) {
    for (const Rule& rule : system.rules) {
        if (budget.expired())
            return std::nullopt;
        if (auto found = string_loop_from(rule.lhs, system, params, budget))
            return found;
    }
    if (system.mode == RewriteMode::Cycle) {
        for (const Rule& rule : system.rules) {
            if (budget.expired())
                return std::nullopt;
            if (auto found = cycle_loop_from(CycleWord(rule.lhs), system, params, budget))
                return found;
        }
    }
    return std::nullopt;
}

LoopCheckResult check_loop(const RewriteSystem& system, const LoopCert& cert) {
    if (cert.steps.empty())
        return LoopCheckResult::fail("empty trace");
    if (cert.seed.empty())
        return LoopCheckResult::fail("empty seed");
    if (cert.shape == LoopShape::CycleRevisit && system.mode != RewriteMode::Cycle)
        return LoopCheckResult::fail("cycle certificate for string system");

    if (cert.shape == LoopShape::StringFactor) {
        Word current = cert.seed;
        for (std::size_t k = 0; k < cert.steps.size(); ++k) {
            const LoopStep& step = cert.steps[k];
            StringStep want{step.rule, step.position, step.result};
            auto successors = string_successors(current, system);
            if (std::find(successors.begin(), successors.end(), want) == successors.end())
                return LoopCheckResult::fail("step " + std::to_string(k + 1) +
                                             " not a rewrite");
            current = step.result;
        }
        if (!contains_factor(current, cert.seed))
            return LoopCheckResult::fail("not closing");
        return LoopCheckResult::ok();
    }

    CycleWord current(cert.seed);
    for (std::size_t k = 0; k < cert.steps.size(); ++k) {
        const LoopStep& step = cert.steps[k];
        CycleWord want(step.result);
        auto successors = cycle_successors(current, system);
        bool found = false;
        for (const CycleStep& s : successors)
            if (s.rule == step.rule && s.result == want) {
                found = true;
                break;
            }
        if (!found)
            return LoopCheckResult::fail("step " + std::to_string(k + 1) + " not a rewrite");
        current = want;
    }
    if (!(current == CycleWord(cert.seed)))
        return LoopCheckResult::fail("not closing");
    return LoopCheckResult::ok();
}

} // namespace rwcert
