#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "rwcert/interpretation.hpp"
#include "rwcert/prover.hpp"

using namespace rwcert;
using rwcert::testing::sys;
using rwcert::testing::word;

namespace {

const SemiringTag kTags[] = {SemiringTag::Arithmetic, SemiringTag::Tropical,
                             SemiringTag::Arctic};

WeightMatrix scalar(std::uint64_t v) {
    WeightMatrix m(1, Weight::finite(v));
    return m;
}

Interpretation make_interp(SemiringTag tag, std::size_t dim,
                           std::vector<WeightMatrix> letters) {
    return Interpretation{tag, dim, std::move(letters)};
}

Word random_word(std::mt19937& rng, std::size_t min_len, std::size_t max_len,
                 SymbolId alphabet_size) {
    std::uniform_int_distribution<std::size_t> len(min_len, max_len);
    std::uniform_int_distribution<SymbolId> sym(0, alphabet_size - 1);
    Word w(len(rng));
    for (SymbolId& s : w)
        s = sym(rng);
    return w;
}

// Random finite letter matrices over a 2-letter alphabet; arithmetic
// matrices are patched to satisfy the no-zero-row/column invariant.
Interpretation random_interp(std::mt19937& rng, SemiringTag tag, std::size_t dim) {
    std::uniform_int_distribution<std::uint64_t> entry(0, 2);
    std::vector<WeightMatrix> letters;
    for (int a = 0; a < 2; ++a) {
        WeightMatrix m(dim, Weight::finite(0));
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                m.at(i, j) = Weight::finite(entry(rng));
        if (tag == SemiringTag::Arithmetic && !m.has_positive_rows_and_columns())
            for (std::size_t i = 0; i < dim; ++i)
                m.at(i, i) = Weight::finite(1 + m.at(i, i).value);
        letters.push_back(std::move(m));
    }
    return make_interp(tag, dim, std::move(letters));
}

Word concat(const Word& a, const Word& b, const Word& c) {
    Word w = a;
    w.insert(w.end(), b.begin(), b.end());
    w.insert(w.end(), c.begin(), c.end());
    return w;
}

} // namespace

TEST_CASE("word_matrix worked examples") {
    auto s = sys("a -> b");
    Interpretation trop = make_interp(SemiringTag::Tropical, 1, {scalar(1), scalar(0)});
    CHECK(word_matrix(trop, word(s.alphabet, "aab")) == scalar(2));
    CHECK(word_matrix(trop, Word{}) == WeightMatrix::identity(SemiringTag::Tropical, 1));

    Interpretation arith = make_interp(SemiringTag::Arithmetic, 1, {scalar(2), scalar(3)});
    CHECK(word_matrix(arith, word(s.alphabet, "ab")) == scalar(6));

    Interpretation missing = make_interp(SemiringTag::Tropical, 1, {scalar(1)});
    CHECK_THROWS_AS(word_matrix(missing, word(s.alphabet, "ab")), std::invalid_argument);
}

TEST_CASE("cycle_weight worked examples") {
    auto s = sys("a -> b");
    Interpretation trop = make_interp(SemiringTag::Tropical, 1, {scalar(1), scalar(0)});
    CHECK(cycle_weight(trop, CycleWord(word(s.alphabet, "aa"))) == Weight::finite(2));

    Interpretation arith = make_interp(SemiringTag::Arithmetic, 1, {scalar(2), scalar(3)});
    CHECK(cycle_weight(arith, CycleWord(word(s.alphabet, "ab"))) == Weight::finite(6));

    for (SemiringTag tag : kTags) {
        WeightMatrix diag(2, Weight::finite(0));
        diag.at(0, 0) = Weight::finite(5);
        diag.at(1, 1) = Weight::finite(5);
        Interpretation i2 = make_interp(tag, 2, {diag, WeightMatrix::identity(tag, 2)});
        Weight expected =
            tag == SemiringTag::Arithmetic ? Weight::finite(10) : Weight::finite(5);
        CHECK(cycle_weight(i2, CycleWord(word(s.alphabet, "a"))) == expected);
    }

    CHECK_THROWS_AS(cycle_weight(trop, CycleWord(Word{})), std::invalid_argument);
}

TEST_CASE("rule_decrease worked examples") {
    auto s = sys("a a -> a b");
    Interpretation trop = make_interp(SemiringTag::Tropical, 1, {scalar(1), scalar(0)});
    CHECK(rule_decrease(trop, s.rules[0]) == Decrease::Strict);

    auto refl = sys("a b -> a b");
    Interpretation any = make_interp(SemiringTag::Tropical, 1, {scalar(1), scalar(2)});
    CHECK(rule_decrease(any, refl.rules[0]) == Decrease::Weak);

    // tropical, rule a -> empty, d=2: rhs matrix is the identity whose
    // off-diagonal entries are inf, so weak decrease is impossible
    auto erase = sys("a ->");
    Interpretation trop2 =
        make_interp(SemiringTag::Tropical, 2, {WeightMatrix(2, Weight::finite(1))});
    CHECK(rule_decrease(trop2, erase.rules[0]) == Decrease::None);
    // but d=1 can orient it strictly: L = [[1]] > [[0]] = identity
    Interpretation trop1 = make_interp(SemiringTag::Tropical, 1, {scalar(1)});
    CHECK(rule_decrease(trop1, erase.rules[0]) == Decrease::Strict);
    // and arctic d=2 can weakly orient it: -inf off-diagonal is least
    Interpretation arc2 =
        make_interp(SemiringTag::Arctic, 2, {WeightMatrix(2, Weight::finite(0))});
    CHECK(rule_decrease(arc2, erase.rules[0]) == Decrease::Weak);
}

TEST_CASE("affine composition and decrease") {
    auto s = sys("a a -> a b");
    AffineLetter a1{NatMatrix::identity(1), {1}};
    AffineLetter b0{NatMatrix::identity(1), {0}};
    AffineInterpretation ai{1, {a1, b0}};

    AffineMap lhs = word_affine(ai, word(s.alphabet, "aa"));
    CHECK(lhs.offset == NatVector{2});
    AffineMap rhs = word_affine(ai, word(s.alphabet, "ab"));
    CHECK(rhs.offset == NatVector{1});
    CHECK(affine_rule_decrease(ai, s.rules[0]) == Decrease::Strict);

    auto refl = sys("a b -> a b");
    CHECK(affine_rule_decrease(ai, refl.rules[0]) == Decrease::Weak);

    auto shrink = sys("a a -> a");
    AffineInterpretation identity_only{1, {AffineLetter{NatMatrix::identity(1), {0}}}};
    CHECK(affine_rule_decrease(identity_only, shrink.rules[0]) == Decrease::Weak);

    // leftmost letter is the outermost map: value of "ab" at x is F_a(F_b(x))
    AffineLetter a2{NatMatrix(1, 2), {1}};
    AffineLetter b3{NatMatrix(1, 3), {5}};
    AffineInterpretation comp{1, {a2, b3}};
    AffineMap m = word_affine(comp, word(s.alphabet, "ab"));
    CHECK(m.matrix.at(0, 0) == 6);
    CHECK(m.offset == NatVector{2 * 5 + 1});
}

TEST_CASE("search_interpretation on the worked examples") {
    auto s1 = sys("a a -> a b", RewriteMode::Cycle);
    auto found1 = search_interpretation(s1, {0}, SearchParams{});
    REQUIRE(found1.has_value());
    CHECK(found1->strict == std::vector<std::size_t>{0});
    // enumeration finds the spec's tropical d=1 interpretation a->[[1]], b->[[0]]
    const auto* trace1 = std::get_if<Interpretation>(&found1->interp);
    REQUIRE(trace1 != nullptr);
    CHECK(trace1->tag == SemiringTag::Tropical);
    CHECK(trace1->dim == 1);
    CHECK(trace1->letters[0] == scalar(1));
    CHECK(trace1->letters[1] == scalar(0));
    CHECK(rule_decrease(*trace1, s1.rules[0]) == Decrease::Strict);

    auto s2 = sys("a -> a", RewriteMode::Cycle);
    CHECK_FALSE(search_interpretation(s2, {0}, SearchParams{}).has_value());

    auto s3 = sys("a b -> a", RewriteMode::Cycle);
    auto found3 = search_interpretation(s3, {0}, SearchParams{});
    REQUIRE(found3.has_value());
    const auto* trace3 = std::get_if<Interpretation>(&found3->interp);
    REQUIRE(trace3 != nullptr);
    CHECK(rule_decrease(*trace3, s3.rules[0]) == Decrease::Strict);
}

TEST_CASE("prove_termination and check_removal_proof round-trip") {
    auto empty = sys("");
    auto proof0 = prove_termination(empty, SearchParams{});
    REQUIRE(proof0.has_value());
    CHECK(proof0->rounds.empty());
    CHECK(check_removal_proof(empty, *proof0).valid);

    for (RewriteMode mode : {RewriteMode::String, RewriteMode::Cycle}) {
        auto s = sys("a a -> a b", mode);
        auto proof = prove_termination(s, SearchParams{});
        REQUIRE(proof.has_value());
        CHECK(proof->rounds.size() == 1);
        CHECK(proof->rounds[0].removed == std::vector<std::size_t>{0});
        CHECK(check_removal_proof(s, *proof).valid);
    }

    auto loop = sys("a -> a");
    CHECK_FALSE(prove_termination(loop, SearchParams{}).has_value());

    // two-rule system needing removal rounds
    auto two = sys("a a -> a b\na b -> b b", RewriteMode::Cycle);
    auto proof2 = prove_termination(two, SearchParams{});
    REQUIRE(proof2.has_value());
    auto check2 = check_removal_proof(two, *proof2);
    CHECK(check2.valid);
}

TEST_CASE("check_removal_proof rejects bad proofs") {
    auto s = sys("a -> a");

    // removing a rule that only decreases weakly
    RemovalProof weak_only;
    weak_only.rounds.push_back(
        RemovalRound{make_interp(SemiringTag::Tropical, 1, {scalar(0)}), {0}});
    auto r1 = check_removal_proof(s, weak_only);
    CHECK_FALSE(r1.valid);
    CHECK(r1.reason.find("not strict") != std::string::npos);

    // arithmetic all-zero column is inadmissible
    auto s2 = sys("a a -> a");
    WeightMatrix zero_col(2, Weight::finite(0));
    zero_col.at(0, 0) = Weight::finite(1);
    zero_col.at(1, 0) = Weight::finite(1);
    RemovalProof bad_col;
    bad_col.rounds.push_back(
        RemovalRound{make_interp(SemiringTag::Arithmetic, 2, {zero_col}), {0}});
    auto r2 = check_removal_proof(s2, bad_col);
    CHECK_FALSE(r2.valid);
    CHECK(r2.reason.find("inadmissible letter matrix") != std::string::npos);

    // affine rounds are invalid for cycle systems
    auto s3 = sys("a a -> a", RewriteMode::Cycle);
    AffineInterpretation ai{1, {AffineLetter{NatMatrix::identity(1), {1}}}};
    RemovalProof affine_cycle;
    affine_cycle.rounds.push_back(RemovalRound{ai, {0}});
    auto r3 = check_removal_proof(s3, affine_cycle);
    CHECK_FALSE(r3.valid);
    CHECK(r3.reason.find("affine interpretation invalid for cycle mode") !=
          std::string::npos);

    // leftover rules after the last round
    auto s4 = sys("a a -> a b\nb -> b");
    RemovalProof partial;
    partial.rounds.push_back(
        RemovalRound{make_interp(SemiringTag::Tropical, 1, {scalar(1), scalar(0)}), {0}});
    auto r4 = check_removal_proof(s4, partial);
    CHECK_FALSE(r4.valid);
    CHECK(r4.reason.find("rules remain") != std::string::npos);

    // removing an index that is not alive
    RemovalProof out_of_range;
    out_of_range.rounds.push_back(
        RemovalRound{make_interp(SemiringTag::Tropical, 1, {scalar(1)}), {5}});
    auto r5 = check_removal_proof(s, out_of_range);
    CHECK_FALSE(r5.valid);
    CHECK(r5.reason.find("not alive") != std::string::npos);

    // infinite entry in a letter matrix
    WeightMatrix with_inf(1, Weight::inf());
    RemovalProof inf_proof;
    inf_proof.rounds.push_back(
        RemovalRound{make_interp(SemiringTag::Tropical, 1, {with_inf}), {0}});
    auto r6 = check_removal_proof(s, inf_proof);
    CHECK_FALSE(r6.valid);
    CHECK(r6.reason.find("infinite entry") != std::string::npos);
}

TEST_CASE("rotation invariance of the trace weight") {
    std::mt19937 rng(20260816);
    for (SemiringTag tag : kTags) {
        int cases = 0;
        while (cases < 1000) {
            std::size_t dim = 1 + (rng() % 2);
            Interpretation interp = random_interp(rng, tag, dim);
            Word w = random_word(rng, 1, 8, 2);
            std::size_t k = rng() % w.size();
            Weight lhs = trace(tag, word_matrix(interp, rotate(w, k)));
            Weight rhs = trace(tag, word_matrix(interp, w));
            REQUIRE(lhs == rhs);
            ++cases;
        }
    }
}

TEST_CASE("context soundness of weak and strict trace decrease (cycle mode)") {
    std::mt19937 rng(424242);
    for (SemiringTag tag : kTags) {
        Semiring ops(tag);
        int cases = 0;
        while (cases < 1000) {
            std::size_t dim = 1 + (rng() % 2);
            Interpretation interp = random_interp(rng, tag, dim);
            Word lhs = random_word(rng, 1, 3, 2);
            Word rhs = random_word(rng, 0, 3, 2);
            Rule rule{lhs, rhs, 0};
            Decrease dec = rule_decrease(interp, rule);
            if (dec == Decrease::None)
                continue;
            Word u = random_word(rng, 0, 4, 2);
            Word v = random_word(rng, 0, 4, 2);
            if (rhs.empty() && u.empty() && v.empty())
                u = random_word(rng, 1, 4, 2);
            Weight before = cycle_weight(interp, CycleWord(concat(u, lhs, v)));
            Weight after = cycle_weight(interp, CycleWord(concat(u, rhs, v)));
            REQUIRE(ops.leq(after, before));
            if (dec == Decrease::Strict)
                REQUIRE(ops.lt(after, before));
            ++cases;
        }
    }
}

TEST_CASE("context soundness of strict affine decrease (string mode)") {
    std::mt19937 rng(777);
    std::uniform_int_distribution<std::uint64_t> entry(0, 2);
    int cases = 0;
    while (cases < 300) {
        std::size_t dim = 1 + (rng() % 2);
        AffineInterpretation interp;
        interp.dim = dim;
        for (int a = 0; a < 2; ++a) {
            AffineLetter letter;
            letter.matrix = NatMatrix(dim, 0);
            for (std::size_t i = 0; i < dim; ++i)
                for (std::size_t j = 0; j < dim; ++j)
                    letter.matrix.at(i, j) = entry(rng);
            if (letter.matrix.at(0, 0) == 0)
                letter.matrix.at(0, 0) = 1;
            letter.offset = NatVector(dim, 0);
            for (std::size_t i = 0; i < dim; ++i)
                letter.offset[i] = entry(rng);
            interp.letters.push_back(std::move(letter));
        }
        Word lhs = random_word(rng, 1, 3, 2);
        Word rhs = random_word(rng, 0, 3, 2);
        Rule rule{lhs, rhs, 0};
        if (affine_rule_decrease(interp, rule) != Decrease::Strict)
            continue;
        Word u = random_word(rng, 0, 4, 2);
        Word v = random_word(rng, 0, 4, 2);
        // value at the zero vector: the composed map's offset
        NatVector before = word_affine(interp, concat(u, lhs, v)).offset;
        NatVector after = word_affine(interp, concat(u, rhs, v)).offset;
        REQUIRE(before[0] >= after[0] + 1);
        ++cases;
    }
}

TEST_CASE("prover round-trip over a random corpus") {
    int proofs = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        for (RewriteMode mode : {RewriteMode::String, RewriteMode::Cycle}) {
            RandomSystemParams params;
            params.mode = mode;
            RewriteSystem system = generate_random_system(seed, params);
            auto proof = prove_termination(system, SearchParams{},
                                           Budget::within(std::chrono::milliseconds(150)));
            if (!proof)
                continue;
            ++proofs;
            auto check = check_removal_proof(system, *proof);
            CHECK_MESSAGE(check.valid, "seed ", seed, ": ", check.reason);
        }
    }
    CHECK(proofs > 20); // the corpus must actually exercise the prover
}
