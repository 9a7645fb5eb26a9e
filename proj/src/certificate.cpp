#include "rwcert/certificate.hpp"

#include <stdexcept>

#include <openssl/evp.h>

#include <json.hpp>

#include "rwcert/parser.hpp"

namespace rwcert {

using nlohmann::json;

std::string sha256_hex(std::string_view data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (ctx == nullptr)
        throw std::runtime_error("sha256: cannot allocate digest context");
    bool ok = EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) == 1 &&
              EVP_DigestUpdate(ctx, data.data(), data.size()) == 1 &&
              EVP_DigestFinal_ex(ctx, md, &len) == 1;
    EVP_MD_CTX_free(ctx);
    if (!ok)
        throw std::runtime_error("sha256: digest computation failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int k = 0; k < len; ++k) {
        out.push_back(hex[md[k] >> 4]);
        out.push_back(hex[md[k] & 0x0f]);
    }
    return out;
}

namespace {

Certificate base_certificate(const RewriteSystem& system, std::string claim) {
    Certificate cert;
    cert.digest = sha256_hex(canonical_text(system));
    cert.mode = system.mode;
    cert.claim = std::move(claim);
    return cert;
}

} // namespace

Certificate make_certificate(const RewriteSystem& system, RemovalProof proof) {
    Certificate cert = base_certificate(system, "terminating");
    cert.payload = std::move(proof);
    return cert;
}

Certificate make_certificate(const RewriteSystem& system, NfaCert nfa) {
    Certificate cert = base_certificate(system, "nonterminating");
    cert.payload = std::move(nfa);
    return cert;
}

Certificate make_certificate(const RewriteSystem& system, LoopCert loop) {
    Certificate cert = base_certificate(system, "nonterminating");
    cert.payload = std::move(loop);
    return cert;
}

namespace {

json word_to_json(const Alphabet& alphabet, const Word& w) {
    json arr = json::array();
    for (SymbolId s : w)
        arr.push_back(alphabet.name(s));
    return arr;
}

Word word_from_json(const Alphabet& alphabet, const json& arr) {
    if (!arr.is_array())
        throw std::runtime_error("certificate: expected a token array");
    Word w;
    for (const json& tok : arr) {
        if (!tok.is_string())
            throw std::runtime_error("certificate: token is not a string");
        auto id = alphabet.find(tok.get<std::string>());
        if (!id)
            throw std::runtime_error("certificate: unknown token '" + tok.get<std::string>() +
                                     "'");
        w.push_back(*id);
    }
    return w;
}

json removal_to_json(const RemovalProof& proof, const RewriteSystem& system) {
    json rounds = json::array();
    for (const RemovalRound& round : proof.rounds) {
        json r;
        if (const auto* trace = std::get_if<Interpretation>(&round.interp)) {
            r["form"] = "trace";
            r["tag"] = to_string(trace->tag);
            r["dim"] = trace->dim;
            json letters = json::object();
            for (std::size_t s = 0; s < trace->letters.size(); ++s) {
                const WeightMatrix& m = trace->letters[s];
                json flat = json::array();
                for (std::size_t i = 0; i < m.dim(); ++i)
                    for (std::size_t j = 0; j < m.dim(); ++j)
                        flat.push_back(m.at(i, j).value);
                letters[system.alphabet.name(static_cast<SymbolId>(s))] = std::move(flat);
            }
            r["letters"] = std::move(letters);
        } else {
            const auto& affine = std::get<AffineInterpretation>(round.interp);
            r["form"] = "affine";
            r["dim"] = affine.dim;
            json letters = json::object();
            for (std::size_t s = 0; s < affine.letters.size(); ++s) {
                const AffineLetter& l = affine.letters[s];
                json entry;
                entry["matrix"] = l.matrix.entries;
                entry["offset"] = l.offset;
                letters[system.alphabet.name(static_cast<SymbolId>(s))] = std::move(entry);
            }
            r["letters"] = std::move(letters);
        }
        r["removed"] = round.removed;
        rounds.push_back(std::move(r));
    }
    return json{{"type", "removal"}, {"rounds", std::move(rounds)}};
}

RemovalProof removal_from_json(const json& proof, const RewriteSystem& system) {
    RemovalProof out;
    if (!proof.contains("rounds") || !proof["rounds"].is_array())
        throw std::runtime_error("certificate: removal proof needs a rounds array");
    for (const json& r : proof["rounds"]) {
        RemovalRound round;
        const std::string form = r.at("form").get<std::string>();
        const std::size_t dim = r.at("dim").get<std::size_t>();
        if (dim == 0)
            throw std::runtime_error("certificate: round dimension must be positive");
        const json& letters = r.at("letters");
        if (!letters.is_object())
            throw std::runtime_error("certificate: letters must be an object");
        auto letter_value = [&](SymbolId s) -> const json& {
            const std::string& name = system.alphabet.name(s);
            auto it = letters.find(name);
            if (it == letters.end())
                throw std::runtime_error("certificate: letter '" + name +
                                         "' missing from interpretation");
            return *it;
        };
        for (const auto& item : letters.items())
            if (!system.alphabet.find(item.key()))
                throw std::runtime_error("certificate: unknown letter '" + item.key() + "'");

        if (form == "trace") {
            Interpretation interp;
            const std::string tag = r.at("tag").get<std::string>();
            if (tag == "arithmetic")
                interp.tag = SemiringTag::Arithmetic;
            else if (tag == "tropical")
                interp.tag = SemiringTag::Tropical;
            else if (tag == "arctic")
                interp.tag = SemiringTag::Arctic;
            else
                throw std::runtime_error("certificate: unknown semiring tag '" + tag + "'");
            interp.dim = dim;
            for (SymbolId s = 0; s < system.alphabet.size(); ++s) {
                const json& flat = letter_value(s);
                if (!flat.is_array() || flat.size() != dim * dim)
                    throw std::runtime_error("certificate: letter matrix has wrong size");
                WeightMatrix m(dim, Weight::finite(0));
                for (std::size_t k = 0; k < dim * dim; ++k)
                    m.at(k / dim, k % dim) = Weight::finite(flat[k].get<std::uint64_t>());
                interp.letters.push_back(std::move(m));
            }
            round.interp = std::move(interp);
        } else if (form == "affine") {
            AffineInterpretation interp;
            interp.dim = dim;
            for (SymbolId s = 0; s < system.alphabet.size(); ++s) {
                const json& entry = letter_value(s);
                AffineLetter l;
                l.matrix = NatMatrix(dim, 0);
                const json& mat = entry.at("matrix");
                const json& off = entry.at("offset");
                if (!mat.is_array() || mat.size() != dim * dim || !off.is_array() ||
                    off.size() != dim)
                    throw std::runtime_error("certificate: affine letter has wrong size");
                for (std::size_t k = 0; k < dim * dim; ++k)
                    l.matrix.entries[k] = mat[k].get<std::uint64_t>();
                for (std::size_t k = 0; k < dim; ++k)
                    l.offset.push_back(off[k].get<std::uint64_t>());
                interp.letters.push_back(std::move(l));
            }
            round.interp = std::move(interp);
        } else {
            throw std::runtime_error("certificate: unknown round form '" + form + "'");
        }
        round.removed = r.at("removed").get<std::vector<std::size_t>>();
        out.rounds.push_back(std::move(round));
    }
    return out;
}

json automaton_to_json(const NfaCert& a, const RewriteSystem& system) {
    json transitions = json::array();
    for (const Transition& t : a.transitions)
        transitions.push_back(json::array({t.from, system.alphabet.name(t.symbol), t.to}));
    json proof{{"type", "automaton"}, {"states", a.n}, {"transitions", std::move(transitions)}};
    if (a.mode == RewriteMode::String) {
        proof["initial"] = a.initial;
        proof["final"] = a.final;
    }
    return proof;
}

NfaCert automaton_from_json(const json& proof, const RewriteSystem& system,
                            RewriteMode mode) {
    NfaCert a;
    a.mode = mode;
    a.n = proof.at("states").get<std::size_t>();
    const json& transitions = proof.at("transitions");
    if (!transitions.is_array())
        throw std::runtime_error("certificate: transitions must be an array");
    for (const json& t : transitions) {
        if (!t.is_array() || t.size() != 3 || !t[1].is_string())
            throw std::runtime_error("certificate: transition must be [state, token, state]");
        auto id = system.alphabet.find(t[1].get<std::string>());
        if (!id)
            throw std::runtime_error("certificate: unknown token '" + t[1].get<std::string>() +
                                     "'");
        a.transitions.push_back(
            {t[0].get<std::size_t>(), *id, t[2].get<std::size_t>()});
    }
    if (mode == RewriteMode::String) {
        if (proof.contains("initial"))
            a.initial = proof["initial"].get<std::vector<std::size_t>>();
        if (proof.contains("final"))
            a.final = proof["final"].get<std::vector<std::size_t>>();
    }
    return a;
}

json loop_to_json(const LoopCert& loop, const RewriteSystem& system) {
    json steps = json::array();
    for (const LoopStep& s : loop.steps)
        steps.push_back(json{{"rule", s.rule},
                             {"position", s.position},
                             {"result", word_to_json(system.alphabet, s.result)}});
    return json{{"type", "loop"},
                {"shape", loop.shape == LoopShape::StringFactor ? "string-factor"
                                                                : "cycle-revisit"},
                {"seed", word_to_json(system.alphabet, loop.seed)},
                {"steps", std::move(steps)}};
}

LoopCert loop_from_json(const json& proof, const RewriteSystem& system) {
    LoopCert loop;
    const std::string shape = proof.at("shape").get<std::string>();
    if (shape == "string-factor")
        loop.shape = LoopShape::StringFactor;
    else if (shape == "cycle-revisit")
        loop.shape = LoopShape::CycleRevisit;
    else
        throw std::runtime_error("certificate: unknown loop shape '" + shape + "'");
    loop.seed = word_from_json(system.alphabet, proof.at("seed"));
    const json& steps = proof.at("steps");
    if (!steps.is_array())
        throw std::runtime_error("certificate: loop steps must be an array");
    for (const json& s : steps) {
        LoopStep step;
        step.rule = s.at("rule").get<std::size_t>();
        step.position = s.at("position").get<std::size_t>();
        step.result = word_from_json(system.alphabet, s.at("result"));
        loop.steps.push_back(std::move(step));
    }
    return loop;
}

} // namespace

std::string certificate_to_json(const Certificate& cert, const RewriteSystem& system) {
    json doc;
    doc["tool"] = cert.tool;
    doc["digest"] = cert.digest;
    doc["mode"] = to_string(cert.mode);
    doc["claim"] = cert.claim;
    if (const auto* removal = std::get_if<RemovalProof>(&cert.payload))
        doc["proof"] = removal_to_json(*removal, system);
    else if (const auto* nfa = std::get_if<NfaCert>(&cert.payload))
        doc["proof"] = automaton_to_json(*nfa, system);
    else
        doc["proof"] = loop_to_json(std::get<LoopCert>(cert.payload), system);
    return doc.dump(2) + "\n";
}

RewriteMode certificate_mode(const std::string& text) {
    json doc = json::parse(text);
    auto mode = mode_from_string(doc.at("mode").get<std::string>());
    if (!mode)
        throw std::runtime_error("certificate: unknown mode");
    return *mode;
}

Certificate certificate_from_json(const std::string& text, const RewriteSystem& system) {
    json doc = json::parse(text);
    Certificate cert;
    cert.tool = doc.value("tool", "");
    cert.digest = doc.at("digest").get<std::string>();
    auto mode = mode_from_string(doc.at("mode").get<std::string>());
    if (!mode)
        throw std::runtime_error("certificate: unknown mode");
    cert.mode = *mode;
    cert.claim = doc.at("claim").get<std::string>();
    const json& proof = doc.at("proof");
    const std::string type = proof.at("type").get<std::string>();
    if (type == "removal") {
        if (cert.claim != "terminating")
            throw std::runtime_error("certificate: claim does not match proof type");
        cert.payload = removal_from_json(proof, system);
    } else if (type == "automaton") {
        if (cert.claim != "nonterminating")
            throw std::runtime_error("certificate: claim does not match proof type");
        cert.payload = automaton_from_json(proof, system, cert.mode);
    } else if (type == "loop") {
        if (cert.claim != "nonterminating")
            throw std::runtime_error("certificate: claim does not match proof type");
        cert.payload = loop_from_json(proof, system);
    } else {
        throw std::runtime_error("certificate: unknown proof type '" + type + "'");
    }
    return cert;
}

CertCheckResult check_certificate_payload(const RewriteSystem& system,
                                          const Certificate& cert) {
    if (cert.mode != system.mode)
        return {false, "mode mismatch"};
    if (const auto* removal = std::get_if<RemovalProof>(&cert.payload)) {
        ProofCheckResult r = check_removal_proof(system, *removal);
        return {r.valid, r.reason};
    }
    if (const auto* nfa = std::get_if<NfaCert>(&cert.payload)) {
        CheckReport r = check_certificate(system, *nfa);
        if (r.valid)
            return {true, ""};
        std::string reason = r.failed;
        if (!r.witness.empty())
            reason += ": " + r.witness;
        return {false, reason};
    }
    LoopCheckResult r = check_loop(system, std::get<LoopCert>(cert.payload));
    return {r.valid, r.reason};
}

} // namespace rwcert
