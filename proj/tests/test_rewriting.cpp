#include <doctest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "rwcert/rewriting.hpp"

using namespace rwcert;
using rwcert::testing::sys;
using rwcert::testing::word;

namespace {

// Quadratic sliding-window reference for string_successors.
std::vector<StringStep> naive_string_successors(const Word& w, const RewriteSystem& system) {
    std::vector<StringStep> out;
    for (const Rule& rule : system.rules) {
        if (rule.lhs.size() > w.size())
            continue;
        for (std::size_t p = 0; p + rule.lhs.size() <= w.size(); ++p) {
            if (!std::equal(rule.lhs.begin(), rule.lhs.end(), w.begin() + p))
                continue;
            Word result(w.begin(), w.begin() + p);
            result.insert(result.end(), rule.rhs.begin(), rule.rhs.end());
            result.insert(result.end(), w.begin() + p + rule.lhs.size(), w.end());
            out.push_back(StringStep{rule.index, p, std::move(result)});
        }
    }
    return out;
}

Word random_word(std::mt19937& rng, std::size_t max_len, SymbolId alphabet_size,
                 std::size_t min_len = 0) {
    std::uniform_int_distribution<std::size_t> len(min_len, max_len);
    std::uniform_int_distribution<SymbolId> sym(0, alphabet_size - 1);
    Word w(len(rng));
    for (SymbolId& s : w)
        s = sym(rng);
    return w;
}

} // namespace

TEST_CASE("rotate and canonical_rotation") {
    auto s = sys("a -> b");
    const Word aaa = word(s.alphabet, "aaa");
    const Word bab = word(s.alphabet, "bab");

    CHECK(canonical_rotation(aaa) == aaa);
    CHECK(canonical_rotation(bab) == word(s.alphabet, "abb"));
    CHECK(canonical_rotation(Word{}) == Word{});

    CHECK(rotate(bab, 0) == bab);
    CHECK(rotate(bab, 1) == word(s.alphabet, "abb"));
    CHECK(rotate(bab, 2) == word(s.alphabet, "bba"));
    CHECK(rotate(bab, 3) == bab);
}

TEST_CASE("canonical_rotation is rotation-invariant and idempotent") {
    std::mt19937 rng(20260816);
    for (int it = 0; it < 400; ++it) {
        Word w = random_word(rng, 10, 3);
        const Word canon = canonical_rotation(w);
        CHECK(canonical_rotation(canon) == canon);
        for (std::size_t k = 0; k < std::max<std::size_t>(w.size(), 1); ++k)
            CHECK(canonical_rotation(rotate(w, k)) == canon);
    }
}

TEST_CASE("string_successors on the worked examples") {
    auto r1 = sys("a -> b");
    const Word aba = word(r1.alphabet, "aba");
    auto steps = string_successors(aba, r1);
    REQUIRE(steps.size() == 2);
    CHECK(steps[0] == StringStep{0, 0, word(r1.alphabet, "bba")});
    CHECK(steps[1] == StringStep{0, 2, word(r1.alphabet, "abb")});

    CHECK(string_successors(word(r1.alphabet, "bb"), r1).empty());

    auto r2 = sys("a a ->");
    auto erase = string_successors(word(r2.alphabet, "aa"), r2);
    REQUIRE(erase.size() == 1);
    CHECK(erase[0] == StringStep{0, 0, Word{}});
}

TEST_CASE("string_successors agrees with the naive scan") {
    auto system = sys("a -> b\na b -> b a\nb b -> a\na a ->");
    std::mt19937 rng(7);
    for (int it = 0; it < 500; ++it) {
        Word w = random_word(rng, 9, 2);
        CHECK(string_successors(w, system) == naive_string_successors(w, system));
    }
}

TEST_CASE("cycle_successors on the worked examples") {
    auto r1 = sys("a b -> a", RewriteMode::Cycle);
    auto s1 = cycle_successors(CycleWord(word(r1.alphabet, "ab")), r1);
    REQUIRE(s1.size() == 1);
    CHECK(s1[0].rule == 0);
    CHECK(s1[0].result == CycleWord(word(r1.alphabet, "a")));

    auto r2 = sys("a b -> b a", RewriteMode::Cycle);
    auto s2 = cycle_successors(CycleWord(word(r2.alphabet, "ab")), r2);
    REQUIRE(s2.size() == 1);
    CHECK(s2[0].rule == 0);
    CHECK(s2[0].result == CycleWord(word(r2.alphabet, "ab")));

    auto r3 = sys("a a -> b", RewriteMode::Cycle);
    CHECK(cycle_successors(CycleWord(word(r3.alphabet, "b")), r3).empty());
}

TEST_CASE("cycle_successors results are canonical and deduplicated") {
    auto system = sys("a a -> b\na b -> b b a", RewriteMode::Cycle);
    std::mt19937 rng(11);
    for (int it = 0; it < 300; ++it) {
        Word w = random_word(rng, 8, 2, 1);
        auto steps = cycle_successors(CycleWord(w), system);
        for (std::size_t i = 0; i < steps.size(); ++i) {
            CHECK(steps[i].result.rep() == canonical_rotation(steps[i].result.rep()));
            for (std::size_t j = i + 1; j < steps.size(); ++j) {
                bool same =
                    steps[i].rule == steps[j].rule && steps[i].result == steps[j].result;
                CHECK_FALSE(same);
            }
        }
    }
}

TEST_CASE("every string step is a cycle step") {
    auto system = sys("a -> b\na b -> b a\nb b -> a\na a ->", RewriteMode::Cycle);
    std::mt19937 rng(13);
    for (int it = 0; it < 400; ++it) {
        Word w = random_word(rng, 8, 2, 1);
        auto cycle_steps = cycle_successors(CycleWord(w), system);
        for (const StringStep& step : string_successors(w, system)) {
            CycleWord expected(step.result);
            bool found = std::any_of(cycle_steps.begin(), cycle_steps.end(),
                                     [&](const CycleStep& cs) {
                                         return cs.rule == step.rule && cs.result == expected;
                                     });
            CHECK(found);
        }
    }
}

TEST_CASE("cyclic_contains_factor") {
    auto s = sys("a -> b");
    CHECK(cyclic_contains_factor(word(s.alphabet, "ba"), word(s.alphabet, "ab")));
    CHECK_FALSE(cyclic_contains_factor(word(s.alphabet, "a"), word(s.alphabet, "aa")));
    CHECK_FALSE(cyclic_contains_factor(word(s.alphabet, "bb"), word(s.alphabet, "a")));
    // wrap-around occurrence
    CHECK(cyclic_contains_factor(word(s.alphabet, "bba"), word(s.alphabet, "abb")));
}

TEST_CASE("contains_factor") {
    auto s = sys("a -> b");
    CHECK(contains_factor(word(s.alphabet, "bab"), word(s.alphabet, "ab")));
    CHECK_FALSE(contains_factor(word(s.alphabet, "ba"), word(s.alphabet, "ab")));
    CHECK(contains_factor(word(s.alphabet, "ab"), word(s.alphabet, "ab")));
}

TEST_CASE("CycleWord canonicalizes on construction") {
    auto s = sys("a -> b");
    CHECK(CycleWord(word(s.alphabet, "bab")) == CycleWord(word(s.alphabet, "abb")));
    CHECK(CycleWord(word(s.alphabet, "bab")).rep() == word(s.alphabet, "abb"));
    CHECK(CycleWord(Word{}).empty());
}

TEST_CASE("alphabet interning and max_lhs_length") {
    auto s = sys("a b -> b a\nc c c -> a");
    CHECK(s.alphabet.size() == 3);
    CHECK(s.alphabet.name(0) == "a");
    CHECK(s.alphabet.name(1) == "b");
    CHECK(s.alphabet.name(2) == "c");
    CHECK(s.alphabet.find("c") == SymbolId{2});
    CHECK_FALSE(s.alphabet.find("d").has_value());
    CHECK(s.max_lhs_length() == 3);
    CHECK(render_word(s.alphabet, word(s.alphabet, "abc")) == "a b c");
    CHECK(render_word(s.alphabet, Word{}) == "");
}
