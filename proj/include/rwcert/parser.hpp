#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "rwcert/rewriting.hpp"

namespace rwcert {

class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, std::size_t line, std::size_t column)
        : std::runtime_error(message + " (line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ")"),
          line_(line),
          column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

// Parses either the native line format or the TPDB-SRS subset (detected by a
// leading '('). Symbols are interned in order of first appearance; rules keep
// file order. The @mode directive (native format) selects the mode; an
// explicit override wins over both the directive and the default.
RewriteSystem parse_system(std::string_view text,
                           std::optional<RewriteMode> mode_override = std::nullopt);

RewriteSystem parse_system_file(const std::string& path,
                                std::optional<RewriteMode> mode_override = std::nullopt);

// Canonical serialization: a native-format document that reparses to an
// identical system. Used as the digest input for certificates.
std::string canonical_text(const RewriteSystem& system);

} // namespace rwcert
