#include "rwcert/parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

namespace rwcert {

namespace {

struct Token {
    std::string text;
    std::size_t line;
    std::size_t column;
};

bool is_punct(char c) {
    return c == '(' || c == ')' || c == ',';
}

// Splits into whitespace-separated tokens; '(' ')' ',' are single-character
// tokens and '#' discards the rest of the line. Newlines are kept as ""
// tokens so the TPDB rule splitter can treat them as separators.
std::vector<Token> tokenize(std::string_view text, bool keep_newlines) {
    std::vector<Token> tokens;
    std::size_t line = 1, col = 1;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        char c = text[i];
        if (c == '\n') {
            if (keep_newlines)
                tokens.push_back(Token{"", line, col});
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (c == '#') {
            while (i < n && text[i] != '\n')
                ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            ++col;
            continue;
        }
        if (is_punct(c)) {
            tokens.push_back(Token{std::string(1, c), line, col});
            ++i;
            ++col;
            continue;
        }
        std::size_t start = i, start_col = col;
        while (i < n && !std::isspace(static_cast<unsigned char>(text[i])) &&
               !is_punct(text[i]) && text[i] != '#') {
            ++i;
            ++col;
        }
        tokens.push_back(Token{std::string(text.substr(start, i - start)), line, start_col});
    }
    return tokens;
}

// One rule from a flat token segment containing exactly one "->".
Rule parse_rule_tokens(const std::vector<Token>& tokens, std::size_t begin, std::size_t end,
                       Alphabet& alphabet, std::size_t index) {
    std::size_t arrow = end;
    for (std::size_t i = begin; i < end; ++i) {
        if (tokens[i].text == "->") {
            if (arrow != end)
                throw ParseError("multiple '->' in rule", tokens[i].line, tokens[i].column);
            arrow = i;
        } else if (tokens[i].text.size() > 2 && tokens[i].text.rfind("->", 0) == 0) {
            throw ParseError("unsupported arrow '" + tokens[i].text + "'", tokens[i].line,
                             tokens[i].column);
        }
    }
    if (arrow == end)
        throw ParseError("expected '->' in rule", tokens[begin].line, tokens[begin].column);
    if (arrow == begin)
        throw ParseError("empty left-hand side", tokens[arrow].line, tokens[arrow].column);
    Rule rule;
    rule.index = index;
    for (std::size_t i = begin; i < arrow; ++i)
        rule.lhs.push_back(alphabet.intern(tokens[i].text));
    for (std::size_t i = arrow + 1; i < end; ++i)
        rule.rhs.push_back(alphabet.intern(tokens[i].text));
    return rule;
}

RewriteSystem parse_native(std::string_view text) {
    RewriteSystem system;
    std::vector<Token> tokens = tokenize(text, /*keep_newlines=*/true);
    std::size_t i = 0;
    bool mode_set = false;
    while (i < tokens.size()) {
        if (tokens[i].text.empty()) { // newline
            ++i;
            continue;
        }
        // collect one line
        std::size_t begin = i;
        while (i < tokens.size() && !tokens[i].text.empty())
            ++i;
        std::size_t end = i;
        if (tokens[begin].text[0] == '@') {
            if (tokens[begin].text != "@mode")
                throw ParseError("unknown directive '" + tokens[begin].text + "'",
                                 tokens[begin].line, tokens[begin].column);
            if (end - begin != 2)
                throw ParseError("@mode expects exactly one argument", tokens[begin].line,
                                 tokens[begin].column);
            auto mode = mode_from_string(tokens[begin + 1].text);
            if (!mode)
                throw ParseError("unknown mode '" + tokens[begin + 1].text + "'",
                                 tokens[begin + 1].line, tokens[begin + 1].column);
            if (mode_set)
                throw ParseError("duplicate @mode directive", tokens[begin].line,
                                 tokens[begin].column);
            system.mode = *mode;
            mode_set = true;
            continue;
        }
        for (std::size_t j = begin; j < end; ++j) {
            if (is_punct(tokens[j].text[0]))
                throw ParseError("unexpected '" + tokens[j].text + "'", tokens[j].line,
                                 tokens[j].column);
        }
        system.rules.push_back(
            parse_rule_tokens(tokens, begin, end, system.alphabet, system.rules.size()));
    }
    return system;
}

RewriteSystem parse_tpdb(std::string_view text) {
    RewriteSystem system;
    std::vector<Token> tokens = tokenize(text, /*keep_newlines=*/true);
    std::size_t i = 0;
    auto skip_newlines = [&] {
        while (i < tokens.size() && tokens[i].text.empty())
            ++i;
    };
    skip_newlines();
    while (i < tokens.size()) {
        if (tokens[i].text != "(")
            throw ParseError("expected '('", tokens[i].line, tokens[i].column);
        std::size_t open_line = tokens[i].line, open_col = tokens[i].column;
        ++i;
        skip_newlines();
        if (i >= tokens.size())
            throw ParseError("unterminated section", open_line, open_col);
        std::string section = tokens[i].text;
        ++i;
        if (section == "RULES") {
            std::size_t seg_begin = i;
            std::vector<std::pair<std::size_t, std::size_t>> segments;
            auto flush = [&](std::size_t seg_end) {
                if (seg_begin < seg_end)
                    segments.emplace_back(seg_begin, seg_end);
            };
            bool closed = false;
            while (i < tokens.size()) {
                const std::string& t = tokens[i].text;
                if (t == ")") {
                    flush(i);
                    ++i;
                    closed = true;
                    break;
                }
                if (t == "," || t.empty()) { // comma or newline separates rules
                    flush(i);
                    ++i;
                    seg_begin = i;
                    continue;
                }
                if (t == "(")
                    throw ParseError("unexpected '(' inside RULES", tokens[i].line,
                                     tokens[i].column);
                ++i;
            }
            if (!closed)
                throw ParseError("unterminated RULES section", open_line, open_col);
            for (auto [b, e] : segments)
                system.rules.push_back(
                    parse_rule_tokens(tokens, b, e, system.alphabet, system.rules.size()));
        } else {
            // ignore any other section, skipping balanced parentheses
            std::size_t depth = 1;
            while (i < tokens.size() && depth > 0) {
                if (tokens[i].text == "(")
                    ++depth;
                else if (tokens[i].text == ")")
                    --depth;
                ++i;
            }
            if (depth != 0)
                throw ParseError("unterminated section '" + section + "'", open_line, open_col);
        }
        skip_newlines();
    }
    return system;
}

} // namespace

RewriteSystem parse_system(std::string_view text, std::optional<RewriteMode> mode_override) {
    // TPDB files start with a parenthesized section; the native format has no
    // bare parentheses.
    bool tpdb = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == '#') {
            while (i < text.size() && text[i] != '\n')
                ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c)))
            continue;
        tpdb = (c == '(');
        break;
    }
    RewriteSystem system = tpdb ? parse_tpdb(text) : parse_native(text);
    if (mode_override)
        system.mode = *mode_override;
    return system;
}

RewriteSystem parse_system_file(const std::string& path, std::optional<RewriteMode> mode_override) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_system(buf.str(), mode_override);
}

std::string canonical_text(const RewriteSystem& system) {
    std::string out = "@mode ";
    out += to_string(system.mode);
    out += '\n';
    for (const Rule& rule : system.rules) {
        out += render_word(system.alphabet, rule.lhs);
        out += " ->";
        if (!rule.rhs.empty()) {
            out += ' ';
            out += render_word(system.alphabet, rule.rhs);
        }
        out += '\n';
    }
    return out;
}

} // namespace rwcert
