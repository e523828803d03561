#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pbb::ciphers {

enum class CipherKind { Caesar, Atbash, Vigenere, Alice, Bob, Kevin };

const char* kind_name(CipherKind kind);
CipherKind kind_from_name(const std::string& name);

// One of the six ciphers plus its parameters. Atbash and Vigenère ignore
// the shift (it stays 0 there); only Vigenère and Kevin carry a key.
struct CipherSpec {
    CipherKind kind = CipherKind::Caesar;
    int shift = 0;   // [0, 25]
    std::string key; // lowercase a-z, non-empty for Vigenère/Kevin

    static CipherSpec caesar(int shift);
    static CipherSpec atbash();
    static CipherSpec vigenere(std::string key);
    static CipherSpec alice(int shift);
    static CipherSpec bob(int shift);
    static CipherSpec kevin(std::string key);
};

// Throws InvalidCipherSpec when parameters are inconsistent with the kind.
void validate(const CipherSpec& spec);

struct CipherStep {
    int index = 0;          // counts transformed letters only, from 0
    char plaintext = 'a';
    int effective_shift = 0; // the amount applied at this position
    char direction = '+';    // '+', '-', or 'r' (reflect)
    char ciphertext = 'a';
};

struct CipherTrace {
    std::vector<CipherStep> steps;
    std::string ciphertext;
};

// Letters are transformed within their own case register; every other
// character passes through unchanged and does not advance the letter index.
std::string encrypt(const CipherSpec& spec, const std::string& plaintext);

CipherTrace trace_encrypt(const CipherSpec& spec, const std::string& plaintext);

// round(Normal(13, 2)) clamped to [1, 25]; mirrors the skew of shift
// frequencies in naturally occurring cipher text (ROT13 dominates).
std::vector<int> sample_shift(std::uint64_t rng_seed, int n);

// Canonical source listing of each cipher in the surface language, used for
// code-representation dataset records and executor cross-checks.
const std::string& reference_listing(CipherKind kind);

// Entry-point name of the reference listing ("caesar", "atbash", ...).
std::string reference_entry_point(CipherKind kind);

} // namespace pbb::ciphers
