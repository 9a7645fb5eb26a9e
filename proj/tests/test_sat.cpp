#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <string>
#include <sys/stat.h>
#include <unistd.h>

#include "rwcert/sat.hpp"

using namespace rwcert;
using namespace rwcert::sat;

namespace {

// Exhaustive truth-table satisfiability for small CNFs.
bool brute_force_sat(const Cnf& cnf) {
    const int n = cnf.var_count();
    for (unsigned m = 0; m < (1u << n); ++m) {
        std::vector<bool> assignment(n);
        for (int v = 0; v < n; ++v)
            assignment[v] = (m >> v) & 1u;
        if (model_satisfies(cnf, assignment))
            return true;
    }
    return false;
}

Cnf random_cnf(std::mt19937& rng) {
    Cnf cnf;
    std::uniform_int_distribution<int> nvars(1, 4);
    const int vars = nvars(rng);
    for (int v = 0; v < vars; ++v)
        cnf.new_var();
    std::uniform_int_distribution<int> nclauses(0, 8);
    std::uniform_int_distribution<int> clause_len(1, 3);
    std::uniform_int_distribution<int> var_pick(1, vars);
    const int clauses = nclauses(rng);
    for (int c = 0; c < clauses; ++c) {
        if (rng() % 50 == 0) {
            cnf.add_clause({}); // explicit empty clause: trivially unsat
            continue;
        }
        Clause clause;
        const int len = clause_len(rng);
        for (int k = 0; k < len; ++k) {
            int v = var_pick(rng);
            clause.push_back(rng() % 2 ? v : -v);
        }
        cnf.add_clause(std::move(clause));
    }
    return cnf;
}

// Writes an executable shell script and returns its path.
std::string write_script(const std::string& name, const std::string& body) {
    std::string path = "./" + name;
    {
        std::ofstream out(path, std::ios::binary);
        REQUIRE(out.good());
        out << "#!/bin/sh\n" << body;
    }
    REQUIRE(::chmod(path.c_str(), 0755) == 0);
    return path;
}

} // namespace

TEST_CASE("Tseitin helpers") {
    {
        Cnf cnf;
        int x = cnf.new_var();
        int y = cnf.new_var();
        cnf.define_or(y, {x});
        cnf.add_unit(x);
        auto r = solve_internal(cnf, Budget::unlimited());
        REQUIRE(r.status == SolveStatus::Sat);
        CHECK(r.model[static_cast<std::size_t>(y - 1)]);
    }
    {
        Cnf cnf;
        int y = cnf.new_var();
        cnf.define_and(y, {});
        auto r = solve_internal(cnf, Budget::unlimited());
        REQUIRE(r.status == SolveStatus::Sat);
        CHECK(r.model[static_cast<std::size_t>(y - 1)]);
        // y false must be unsatisfiable
        cnf.add_unit(-y);
        CHECK(solve_internal(cnf, Budget::unlimited()).status == SolveStatus::Unsat);
    }
    {
        Cnf cnf;
        int x1 = cnf.new_var();
        int x2 = cnf.new_var();
        int y = cnf.new_var();
        cnf.define_or(y, {x1, x2});
        cnf.add_unit(-x1);
        cnf.add_unit(-x2);
        auto r = solve_internal(cnf, Budget::unlimited());
        REQUIRE(r.status == SolveStatus::Sat);
        CHECK_FALSE(r.model[static_cast<std::size_t>(y - 1)]);
    }
    {
        Cnf cnf;
        int x1 = cnf.new_var();
        int x2 = cnf.new_var();
        int y = cnf.new_var();
        cnf.define_and(y, {x1, -x2});
        cnf.add_unit(y);
        auto r = solve_internal(cnf, Budget::unlimited());
        REQUIRE(r.status == SolveStatus::Sat);
        CHECK(r.model[static_cast<std::size_t>(x1 - 1)]);
        CHECK_FALSE(r.model[static_cast<std::size_t>(x2 - 1)]);
    }
}

TEST_CASE("add_clause validates literals") {
    Cnf cnf;
    cnf.new_var();
    CHECK_THROWS_AS(cnf.add_clause({2}), std::invalid_argument);
    CHECK_THROWS_AS(cnf.add_clause({0}), std::invalid_argument);
    CHECK_THROWS_AS(cnf.add_clause({-2}), std::invalid_argument);
    cnf.add_clause({1, -1}); // fine
}

TEST_CASE("solve_internal worked examples") {
    {
        Cnf cnf;
        int x1 = cnf.new_var();
        cnf.add_unit(x1);
        auto r = solve_internal(cnf, Budget::unlimited());
        REQUIRE(r.status == SolveStatus::Sat);
        CHECK(r.model == std::vector<bool>{true});
    }
    {
        Cnf cnf;
        int x1 = cnf.new_var();
        cnf.add_unit(x1);
        cnf.add_unit(-x1);
        CHECK(solve_internal(cnf, Budget::unlimited()).status == SolveStatus::Unsat);
    }
    {
        Cnf cnf;
        int x1 = cnf.new_var();
        int x2 = cnf.new_var();
        cnf.add_clause({x1, x2});
        cnf.add_clause({-x1, x2});
        cnf.add_clause({-x2});
        CHECK(solve_internal(cnf, Budget::unlimited()).status == SolveStatus::Unsat);
    }
    {
        Cnf cnf; // no variables, no clauses
        auto r = solve_internal(cnf, Budget::unlimited());
        CHECK(r.status == SolveStatus::Sat);
        CHECK(r.model.empty());
    }
    {
        Cnf cnf;
        cnf.add_clause({});
        CHECK(solve_internal(cnf, Budget::unlimited()).status == SolveStatus::Unsat);
    }
}

TEST_CASE("solve_internal matches truth-table evaluation on small CNFs") {
    std::mt19937 rng(6021023);
    for (int it = 0; it < 2500; ++it) {
        Cnf cnf = random_cnf(rng);
        bool expected = brute_force_sat(cnf);
        auto r = solve_internal(cnf, Budget::unlimited());
        if (expected) {
            REQUIRE(r.status == SolveStatus::Sat);
            REQUIRE(model_satisfies(cnf, r.model));
        } else {
            REQUIRE(r.status == SolveStatus::Unsat);
        }
    }
}

TEST_CASE("DIMACS format and round-trip") {
    {
        Cnf cnf;
        int x1 = cnf.new_var();
        cnf.add_unit(x1);
        CHECK(write_dimacs(cnf) == "p cnf 1 1\n1 0\n");
    }
    {
        Cnf parsed = parse_dimacs("c a comment\np cnf 2 2\n1 -2 0\n  2 0\nc trailing");
        CHECK(parsed.var_count() == 2);
        REQUIRE(parsed.clauses().size() == 2);
        CHECK(parsed.clauses()[0] == Clause{1, -2});
        CHECK(parsed.clauses()[1] == Clause{2});
    }
    CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\n2 0\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_dimacs("1 0\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_dimacs("p cnf 1 2\n1 0\n"), std::runtime_error);

    std::mt19937 rng(40490);
    for (int it = 0; it < 300; ++it) {
        Cnf cnf = random_cnf(rng);
        std::string text = write_dimacs(cnf);
        Cnf back = parse_dimacs(text);
        CHECK(back == cnf);
        CHECK(write_dimacs(back) == text); // byte-stable
    }
}

TEST_CASE("parse_model") {
    auto model = parse_model("v 1 -2 0", 2);
    REQUIRE(model.size() == 2);
    CHECK(model[0] == true);
    CHECK(model[1] == false);

    auto partial = parse_model("s SATISFIABLE\nv 2 0\n", 3);
    CHECK_FALSE(partial[0].has_value());
    CHECK(partial[1] == true);
    CHECK_FALSE(partial[2].has_value());

    auto multiline = parse_model("v 1\nv -2\nv 0\n", 2);
    CHECK(multiline[0] == true);
    CHECK(multiline[1] == false);

    CHECK_THROWS_AS(parse_model("v 5 0", 2), std::runtime_error);
}

TEST_CASE("solve_external with conformant fake solvers") {
    Cnf cnf;
    int x1 = cnf.new_var();
    cnf.add_unit(x1);

    {
        std::string script =
            write_script("fake_sat.sh", "echo \"s SATISFIABLE\"\necho \"v 1 0\"\n");
        auto r = solve_external(cnf, script, Budget::unlimited());
        REQUIRE(r.status == SolveStatus::Sat);
        CHECK(model_satisfies(cnf, r.model));
        ::unlink(script.c_str());
    }
    {
        std::string script = write_script("fake_unsat.sh", "echo \"s UNSATISFIABLE\"\n");
        auto r = solve_external(cnf, script, Budget::unlimited());
        CHECK(r.status == SolveStatus::Unsat);
        ::unlink(script.c_str());
    }
    {
        // claims SAT with a model that does not satisfy the formula
        std::string script =
            write_script("fake_liar.sh", "echo \"s SATISFIABLE\"\necho \"v -1 0\"\n");
        auto r = solve_external(cnf, script, Budget::unlimited());
        CHECK(r.status == SolveStatus::Unknown);
        CHECK(r.reason == "solver-error");
        ::unlink(script.c_str());
    }
    {
        // garbage output
        auto r = solve_external(cnf, "echo garbage", Budget::unlimited());
        CHECK(r.status == SolveStatus::Unknown);
        CHECK(r.reason == "solver-error");
    }
    {
        // nonexistent binary
        auto r = solve_external(cnf, "./no-such-solver-anywhere", Budget::unlimited());
        CHECK(r.status == SolveStatus::Unknown);
        CHECK(r.reason == "solver-error");
    }
    {
        // hangs; must be killed by the budget
        std::string script = write_script("fake_slow.sh", "sleep 5\n");
        auto r = solve_external(cnf, script,
                                Budget::within(std::chrono::milliseconds(100)));
        CHECK(r.status == SolveStatus::Unknown);
        CHECK(r.reason == "timeout");
        ::unlink(script.c_str());
    }
}

TEST_CASE("solve dispatches on RWCERT_SAT_SOLVER") {
    Cnf cnf;
    int x1 = cnf.new_var();
    cnf.add_unit(x1);

    ::unsetenv("RWCERT_SAT_SOLVER");
    auto internal = solve(cnf, Budget::unlimited());
    CHECK(internal.status == SolveStatus::Sat);

    // an external "solver" that always reports UNSAT proves it was consulted
    std::string script = write_script("fake_always_unsat.sh", "echo \"s UNSATISFIABLE\"\n");
    ::setenv("RWCERT_SAT_SOLVER", script.c_str(), 1);
    auto external = solve(cnf, Budget::unlimited());
    CHECK(external.status == SolveStatus::Unsat);
    ::unsetenv("RWCERT_SAT_SOLVER");
    ::unlink(script.c_str());

    auto back_to_internal = solve(cnf, Budget::unlimited());
    CHECK(back_to_internal.status == SolveStatus::Sat);
}

TEST_CASE("cancellation flag stops the internal solver") {
    // pigeonhole PHP(7,6): unsatisfiable and far beyond a few hundred DPLL
    // steps, so the solver is guaranteed to reach a budget poll
    const int pigeons = 7, holes = 6;
    Cnf cnf;
    std::vector<std::vector<int>> p(pigeons, std::vector<int>(holes));
    for (int i = 0; i < pigeons; ++i)
        for (int j = 0; j < holes; ++j)
            p[i][j] = cnf.new_var();
    for (int i = 0; i < pigeons; ++i)
        cnf.add_clause(Clause(p[i].begin(), p[i].end()));
    for (int j = 0; j < holes; ++j)
        for (int i = 0; i < pigeons; ++i)
            for (int k = i + 1; k < pigeons; ++k)
                cnf.add_clause({-p[i][j], -p[k][j]});

    std::atomic<bool> cancel{true};
    auto r = solve_internal(cnf, Budget::within(std::chrono::hours(1), &cancel));
    CHECK(r.status == SolveStatus::Unknown);
    CHECK(r.reason == "timeout");

    // and without cancellation it really is refuted
    auto full = solve_internal(cnf, Budget::unlimited());
    CHECK(full.status == SolveStatus::Unsat);
}
