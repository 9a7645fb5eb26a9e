#pragma once

#include <string>
#include <variant>

#include "rwcert/automata.hpp"
#include "rwcert/interpretation.hpp"
#include "rwcert/loop.hpp"
#include "rwcert/rewriting.hpp"

namespace rwcert {

inline constexpr const char* kToolVersion = "rwcert 0.1.0";

// Serialized proof object: which system it is about (by digest of the
// canonical serialization), what it claims, and the checkable payload.
struct Certificate {
    std::string tool = kToolVersion;
    std::string digest; // SHA-256 hex of canonical_text(system)
    RewriteMode mode = RewriteMode::String;
    std::string claim; // "terminating" | "nonterminating"
    std::variant<RemovalProof, NfaCert, LoopCert> payload;
};

// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

// Builds a certificate for the given system, computing the digest.
Certificate make_certificate(const RewriteSystem& system, RemovalProof proof);
Certificate make_certificate(const RewriteSystem& system, NfaCert cert);
Certificate make_certificate(const RewriteSystem& system, LoopCert cert);

// JSON (de)serialization. Letters, transition labels, and loop words are
// serialized as alphabet tokens, so both directions need the system the
// certificate refers to. Deserialization validates shape and token names and
// throws std::runtime_error on malformed input.
std::string certificate_to_json(const Certificate& cert, const RewriteSystem& system);
Certificate certificate_from_json(const std::string& text, const RewriteSystem& system);

// Reads just the "mode" field of a serialized certificate, so the caller can
// parse the system with the right mode before full deserialization.
RewriteMode certificate_mode(const std::string& text);

// Dispatches to the payload's checker (check_removal_proof /
// check_certificate / check_loop). Returns VALID/INVALID plus a reason; the
// digest is NOT checked here (the CLI checks it against the input file).
struct CertCheckResult {
    bool valid = false;
    std::string reason;
};
CertCheckResult check_certificate_payload(const RewriteSystem& system,
                                          const Certificate& cert);

} // namespace rwcert
