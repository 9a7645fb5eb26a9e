#pragma once

// Shared test helpers: compact constructors for systems and words.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "rwcert/parser.hpp"
#include "rwcert/rewriting.hpp"

namespace rwcert::testing {

inline RewriteSystem sys(std::string_view text,
                         std::optional<RewriteMode> mode = std::nullopt) {
    return parse_system(text, mode);
}

// Word from single-character tokens already interned in the alphabet.
inline Word word(const Alphabet& alphabet, std::string_view letters) {
    Word w;
    for (char c : letters) {
        auto id = alphabet.find(std::string_view(&c, 1));
        if (!id)
            throw std::runtime_error(std::string("letter not in alphabet: ") + c);
        w.push_back(*id);
    }
    return w;
}

} // namespace rwcert::testing
