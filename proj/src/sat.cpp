#include "rwcert/sat.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fcntl.h>
#include <signal.h>
#include <sys/stat.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

namespace rwcert::sat {

void Cnf::check_lit(Lit l) const {
    if (l == 0 || std::abs(l) > vars_)
        throw std::invalid_argument("unknown variable in literal " + std::to_string(l));
}

void Cnf::add_clause(Clause lits) {
    for (Lit l : lits)
        check_lit(l);
    clauses_.push_back(std::move(lits));
}

void Cnf::define_and(int y, const std::vector<Lit>& xs) {
    check_lit(y);
    Clause big{y};
    for (Lit x : xs) {
        check_lit(x);
        clauses_.push_back({-y, x});
        big.push_back(-x);
    }
    clauses_.push_back(std::move(big));
}

void Cnf::define_or(int y, const std::vector<Lit>& xs) {
    check_lit(y);
    Clause big{-y};
    for (Lit x : xs) {
        check_lit(x);
        clauses_.push_back({y, -x});
        big.push_back(x);
    }
    clauses_.push_back(std::move(big));
}

bool model_satisfies(const Cnf& cnf, const std::vector<bool>& model) {
    if (model.size() != static_cast<std::size_t>(cnf.var_count()))
        return false;
    for (const Clause& c : cnf.clauses()) {
        bool satisfied = false;
        for (Lit l : c) {
            bool v = model[static_cast<std::size_t>(std::abs(l)) - 1];
            if ((l > 0) == v) {
                satisfied = true;
                break;
            }
        }
        if (!satisfied)
            return false;
    }
    return true;
}

namespace {

// Trail-based DPLL. Assignment values: 0 unassigned, 1 true, -1 false.
class Dpll {
public:
    Dpll(const Cnf& cnf, const Budget& budget) : cnf_(cnf), budget_(budget) {
        const int n = cnf.var_count();
        value_.assign(static_cast<std::size_t>(n) + 1, 0);
        pos_occ_.resize(static_cast<std::size_t>(n) + 1);
        neg_occ_.resize(static_cast<std::size_t>(n) + 1);
        for (std::size_t ci = 0; ci < cnf.clauses().size(); ++ci)
            for (Lit l : cnf.clauses()[ci])
                (l > 0 ? pos_occ_ : neg_occ_)[static_cast<std::size_t>(std::abs(l))].push_back(ci);
    }

    SolveResult run() {
        for (const Clause& c : cnf_.clauses())
            if (c.empty())
                return SolveResult::unsat();
        if (!propagate_initial_units())
            return SolveResult::unsat();
        for (;;) {
            if (poll_expired())
                return SolveResult::unknown("timeout");
            int v = lowest_unassigned();
            if (v == 0) {
                std::vector<bool> model(value_.size() - 1);
                for (std::size_t i = 1; i < value_.size(); ++i)
                    model[i - 1] = value_[i] > 0;
                if (!model_satisfies(cnf_, model))
                    return SolveResult::unknown("solver-error");
                return SolveResult::sat(std::move(model));
            }
            frames_.push_back(Frame{v, trail_.size(), false});
            if (!assign_and_propagate(v) && !backtrack())
                return SolveResult::unsat();
        }
    }

private:
    struct Frame {
        int var;
        std::size_t trail_mark;
        bool tried_false;
    };

    bool poll_expired() {
        if (++polls_ % 256 == 0)
            expired_ = budget_.expired();
        return expired_;
    }

    bool propagate_initial_units() {
        std::size_t mark = trail_.size();
        for (const Clause& c : cnf_.clauses()) {
            if (c.size() != 1)
                continue;
            Lit l = c[0];
            int cur = value_[static_cast<std::size_t>(std::abs(l))];
            if (cur == 0)
                set(l);
            else if ((cur > 0) != (l > 0))
                return false;
        }
        return propagate(mark);
    }

    int lowest_unassigned() const {
        for (std::size_t v = 1; v < value_.size(); ++v)
            if (value_[v] == 0)
                return static_cast<int>(v);
        return 0;
    }

    void set(Lit l) {
        value_[static_cast<std::size_t>(std::abs(l))] = l > 0 ? 1 : -1;
        trail_.push_back(std::abs(l));
    }

    // Propagates every literal appended to the trail from `from` onward.
    // Returns false on conflict (trail is left as is; caller backtracks).
    bool propagate(std::size_t from) {
        while (from < trail_.size()) {
            int var = trail_[from++];
            // clauses weakened by this assignment contain the false literal
            const auto& occ = value_[static_cast<std::size_t>(var)] > 0
                                  ? neg_occ_[static_cast<std::size_t>(var)]
                                  : pos_occ_[static_cast<std::size_t>(var)];
            for (std::size_t ci : occ) {
                const Clause& c = cnf_.clauses()[ci];
                Lit unit = 0;
                bool satisfied = false;
                for (Lit l : c) {
                    int val = value_[static_cast<std::size_t>(std::abs(l))];
                    if (val == 0) {
                        if (unit != 0) {
                            unit = 0;
                            satisfied = true; // two unassigned: not unit yet
                            break;
                        }
                        unit = l;
                    } else if ((val > 0) == (l > 0)) {
                        satisfied = true;
                        break;
                    }
                }
                if (satisfied)
                    continue;
                if (unit == 0)
                    return false;
                set(unit);
            }
        }
        return true;
    }

    bool assign_and_propagate(Lit l) {
        std::size_t mark = trail_.size();
        set(l);
        return propagate(mark);
    }

    bool backtrack() {
        while (!frames_.empty()) {
            Frame& f = frames_.back();
            while (trail_.size() > f.trail_mark)
                value_[static_cast<std::size_t>(trail_.back())] = 0, trail_.pop_back();
            if (!f.tried_false) {
                f.tried_false = true;
                if (assign_and_propagate(-f.var))
                    return true;
            } else {
                frames_.pop_back();
            }
        }
        return false;
    }

    const Cnf& cnf_;
    const Budget& budget_;
    std::vector<signed char> value_;
    std::vector<int> trail_;
    std::vector<Frame> frames_;
    std::vector<std::vector<std::size_t>> pos_occ_, neg_occ_;
    std::uint64_t polls_ = 0;
    bool expired_ = false;
};

} // namespace

SolveResult solve_internal(const Cnf& cnf, const Budget& budget) {
    return Dpll(cnf, budget).run();
}

std::string write_dimacs(const Cnf& cnf) {
    std::string out = "p cnf " + std::to_string(cnf.var_count()) + ' ' +
                      std::to_string(cnf.clauses().size()) + '\n';
    for (const Clause& c : cnf.clauses()) {
        for (Lit l : c) {
            out += std::to_string(l);
            out += ' ';
        }
        out += "0\n";
    }
    return out;
}

Cnf parse_dimacs(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    long vars = -1, nclauses = -1;
    Cnf cnf;
    Clause current;
    std::size_t done = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c')
            continue;
        if (line[0] == 'p') {
            std::istringstream h(line);
            std::string p, fmt;
            if (!(h >> p >> fmt >> vars >> nclauses) || fmt != "cnf" || vars < 0 || nclauses < 0)
                throw std::runtime_error("malformed DIMACS header: " + line);
            for (long i = 0; i < vars; ++i)
                cnf.new_var();
            continue;
        }
        if (vars < 0)
            throw std::runtime_error("DIMACS clause before header");
        std::istringstream body(line);
        long lit;
        while (body >> lit) {
            if (lit == 0) {
                cnf.add_clause(current);
                current.clear();
                ++done;
            } else {
                if (std::abs(lit) > vars)
                    throw std::runtime_error("DIMACS literal out of range: " +
                                             std::to_string(lit));
                current.push_back(static_cast<Lit>(lit));
            }
        }
        if (!body.eof())
            throw std::runtime_error("malformed DIMACS clause line: " + line);
    }
    if (!current.empty())
        throw std::runtime_error("DIMACS clause missing terminating 0");
    if (nclauses >= 0 && done != static_cast<std::size_t>(nclauses))
        throw std::runtime_error("DIMACS clause count mismatch");
    return cnf;
}

std::vector<std::optional<bool>> parse_model(const std::string& text, int var_count) {
    std::vector<std::optional<bool>> values(static_cast<std::size_t>(var_count));
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] != 'v')
            continue;
        std::istringstream body(line.substr(1));
        long lit;
        while (body >> lit) {
            if (lit == 0)
                return values;
            if (std::abs(lit) > var_count)
                throw std::runtime_error("model literal out of range: " + std::to_string(lit));
            values[static_cast<std::size_t>(std::abs(lit)) - 1] = lit > 0;
        }
    }
    return values;
}

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const char* tag) {
        std::string tmpl = "/tmp/rwcert-" + std::string(tag) + "-XXXXXX";
        std::vector<char> buf(tmpl.begin(), tmpl.end());
        buf.push_back('\0');
        int fd = mkstemp(buf.data());
        if (fd < 0)
            throw std::runtime_error("cannot create temporary file");
        close(fd);
        path.assign(buf.data());
    }
    ~TempFile() { unlink(path.c_str()); }
    TempFile(const TempFile&) = delete;
    TempFile& operator=(const TempFile&) = delete;
};

std::vector<std::string> split_command(const std::string& command) {
    std::vector<std::string> parts;
    std::istringstream in(command);
    std::string word;
    while (in >> word)
        parts.push_back(word);
    return parts;
}

} // namespace

SolveResult solve_external(const Cnf& cnf, const std::string& command, const Budget& budget) {
    std::vector<std::string> argv_s = split_command(command);
    if (argv_s.empty())
        return SolveResult::unknown("solver-error");
    if (budget.expired())
        return SolveResult::unknown("timeout");

    try {
        TempFile in_file("cnf");
        TempFile out_file("out");
        {
            std::ofstream out(in_file.path, std::ios::binary);
            out << write_dimacs(cnf);
            if (!out)
                return SolveResult::unknown("solver-error");
        }

        argv_s.push_back(in_file.path);
        std::vector<char*> argv;
        for (std::string& s : argv_s)
            argv.push_back(s.data());
        argv.push_back(nullptr);

        pid_t pid = fork();
        if (pid < 0)
            return SolveResult::unknown("solver-error");
        if (pid == 0) {
            int out_fd = open(out_file.path.c_str(), O_WRONLY | O_TRUNC);
            int null_fd = open("/dev/null", O_RDWR);
            if (out_fd < 0 || null_fd < 0)
                _exit(127);
            dup2(null_fd, STDIN_FILENO);
            dup2(out_fd, STDOUT_FILENO);
            dup2(null_fd, STDERR_FILENO);
            execvp(argv[0], argv.data());
            _exit(127);
        }

        bool killed = false;
        int status = 0;
        for (;;) {
            pid_t r = waitpid(pid, &status, WNOHANG);
            if (r == pid)
                break;
            if (r < 0 && errno != EINTR)
                return SolveResult::unknown("solver-error");
            if (budget.expired()) {
                kill(pid, SIGKILL);
                waitpid(pid, &status, 0);
                killed = true;
                break;
            }
            struct timespec ts{0, 2'000'000}; // 2 ms
            nanosleep(&ts, nullptr);
        }
        if (killed)
            return SolveResult::unknown("timeout");

        std::ifstream out(out_file.path, std::ios::binary);
        std::ostringstream text;
        text << out.rdbuf();
        const std::string output = text.str();

        bool says_sat = false, says_unsat = false;
        std::istringstream lines(output);
        std::string line;
        while (std::getline(lines, line)) {
            if (line.rfind("s SATISFIABLE", 0) == 0)
                says_sat = true;
            else if (line.rfind("s UNSATISFIABLE", 0) == 0)
                says_unsat = true;
        }
        if (says_sat == says_unsat)
            return SolveResult::unknown("solver-error");
        if (says_unsat)
            return SolveResult::unsat();

        std::vector<std::optional<bool>> parsed;
        try {
            parsed = parse_model(output, cnf.var_count());
        } catch (const std::exception&) {
            return SolveResult::unknown("solver-error");
        }
        std::vector<bool> model(parsed.size(), false);
        for (std::size_t i = 0; i < parsed.size(); ++i)
            model[i] = parsed[i].value_or(false);
        if (!model_satisfies(cnf, model))
            return SolveResult::unknown("solver-error");
        return SolveResult::sat(std::move(model));
    } catch (const std::exception&) {
        return SolveResult::unknown("solver-error");
    }
}

SolveResult solve(const Cnf& cnf, const Budget& budget) {
    const char* cmd = std::getenv("RWCERT_SAT_SOLVER");
    if (cmd != nullptr && *cmd != '\0')
        return solve_external(cnf, cmd, budget);
    return solve_internal(cnf, budget);
}

} // namespace rwcert::sat
