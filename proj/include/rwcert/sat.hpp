#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rwcert/budget.hpp"

namespace rwcert::sat {

// Literals are nonzero signed integers; variable indices start at 1.
using Lit = int;
using Clause = std::vector<Lit>;

class Cnf {
public:
    int new_var() { return ++vars_; }
    int var_count() const { return vars_; }

    // Clause literals must reference existing variables. An explicitly added
    // empty clause is allowed and makes the formula trivially unsatisfiable.
    void add_clause(Clause lits);
    void add_unit(Lit l) { add_clause({l}); }

    // Tseitin definitions: y <-> AND(xs) / y <-> OR(xs). y is a variable
    // (positive index); xs are literals.
    void define_and(int y, const std::vector<Lit>& xs);
    void define_or(int y, const std::vector<Lit>& xs);

    const std::vector<Clause>& clauses() const { return clauses_; }

    bool operator==(const Cnf&) const = default;

private:
    void check_lit(Lit l) const;

    int vars_ = 0;
    std::vector<Clause> clauses_;
};

enum class SolveStatus { Sat, Unsat, Unknown };

struct SolveResult {
    SolveStatus status;
    std::vector<bool> model; // size var_count() when status == Sat
    std::string reason;      // "timeout" or "solver-error" when Unknown

    static SolveResult sat(std::vector<bool> m) { return {SolveStatus::Sat, std::move(m), {}}; }
    static SolveResult unsat() { return {SolveStatus::Unsat, {}, {}}; }
    static SolveResult unknown(std::string why) {
        return {SolveStatus::Unknown, {}, std::move(why)};
    }
};

// True iff every clause contains a literal made true by the assignment.
bool model_satisfies(const Cnf& cnf, const std::vector<bool>& model);

// Complete DPLL with unit propagation. Branching is deterministic: lowest
// unassigned variable first, tried true before false. Budget exhaustion or
// cancellation yields Unknown("timeout"). Any Sat model is verified.
SolveResult solve_internal(const Cnf& cnf, const Budget& budget);

// Runs `command <dimacs-file>` (command split on whitespace) under the
// budget's wall clock, parsing "s SATISFIABLE"/"s UNSATISFIABLE" and "v"
// value lines from its stdout. Sat models are verified before being
// returned; anything unparseable is Unknown("solver-error"), a timeout or
// cancellation kills the process and yields Unknown("timeout").
SolveResult solve_external(const Cnf& cnf, const std::string& command, const Budget& budget);

// Uses the external solver named by RWCERT_SAT_SOLVER when that variable is
// set and nonempty, the internal solver otherwise.
SolveResult solve(const Cnf& cnf, const Budget& budget);

// DIMACS interchange. write_dimacs emits the canonical form
//   p cnf <vars> <clauses>\n  then per clause: literals space-separated, "0\n".
// parse_dimacs accepts comment lines and arbitrary whitespace; the
// write/parse pair round-trips byte-stably on canonical output.
std::string write_dimacs(const Cnf& cnf);
Cnf parse_dimacs(const std::string& text);

// Parses solver "v" lines ("v 1 -2 0") into per-variable values; variables
// not mentioned stay unset. Throws on literals out of range.
std::vector<std::optional<bool>> parse_model(const std::string& text, int var_count);

} // namespace rwcert::sat
