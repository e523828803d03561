#include "pbb/ciphers/cipher.hpp"

#include <cctype>
#include <cmath>

#include "pbb/common/errors.hpp"
#include "pbb/common/rng.hpp"

namespace pbb::ciphers {

const char* kind_name(CipherKind kind) {
    switch (kind) {
        case CipherKind::Caesar: return "caesar";
        case CipherKind::Atbash: return "atbash";
        case CipherKind::Vigenere: return "vigenere";
        case CipherKind::Alice: return "alice";
        case CipherKind::Bob: return "bob";
        case CipherKind::Kevin: return "kevin";
    }
    return "caesar";
}

CipherKind kind_from_name(const std::string& name) {
    if (name == "caesar") return CipherKind::Caesar;
    if (name == "atbash") return CipherKind::Atbash;
    if (name == "vigenere") return CipherKind::Vigenere;
    if (name == "alice") return CipherKind::Alice;
    if (name == "bob") return CipherKind::Bob;
    if (name == "kevin") return CipherKind::Kevin;
    throw InvalidCipherSpec("unknown cipher '" + name + "'");
}

CipherSpec CipherSpec::caesar(int s) { return {CipherKind::Caesar, s, ""}; }
CipherSpec CipherSpec::atbash() { return {CipherKind::Atbash, 0, ""}; }
CipherSpec CipherSpec::vigenere(std::string key) { return {CipherKind::Vigenere, 0, std::move(key)}; }
CipherSpec CipherSpec::alice(int s) { return {CipherKind::Alice, s, ""}; }
CipherSpec CipherSpec::bob(int s) { return {CipherKind::Bob, s, ""}; }
CipherSpec CipherSpec::kevin(std::string key) { return {CipherKind::Kevin, 0, std::move(key)}; }

void validate(const CipherSpec& spec) {
    const bool needs_key = spec.kind == CipherKind::Vigenere || spec.kind == CipherKind::Kevin;
    if (needs_key) {
        if (spec.key.empty()) throw InvalidCipherSpec(std::string(kind_name(spec.kind)) + " requires a key");
        for (const char c : spec.key)
            if (c < 'a' || c > 'z') throw InvalidCipherSpec("key must be lowercase a-z");
    } else if (!spec.key.empty()) {
        throw InvalidCipherSpec(std::string(kind_name(spec.kind)) + " takes no key");
    }
    if (spec.shift < 0 || spec.shift > 25) throw InvalidCipherSpec("shift must be in [0,25]");
    const bool shiftless = spec.kind == CipherKind::Atbash || spec.kind == CipherKind::Vigenere ||
                           spec.kind == CipherKind::Kevin;
    if (shiftless && spec.shift != 0)
        throw InvalidCipherSpec(std::string(kind_name(spec.kind)) + " ignores shift; it must be 0");
}

namespace {

inline int mod26(int v) { return ((v % 26) + 26) % 26; }

} // namespace

CipherTrace trace_encrypt(const CipherSpec& spec, const std::string& plaintext) {
    validate(spec);
    CipherTrace out;
    out.ciphertext.reserve(plaintext.size());
    int index = 0;
    for (const char ch : plaintext) {
        const bool upper = ch >= 'A' && ch <= 'Z';
        const bool lower = ch >= 'a' && ch <= 'z';
        if (!upper && !lower) {
            out.ciphertext.push_back(ch);
            continue;
        }
        const char base = upper ? 'A' : 'a';
        const int c = ch - base;
        int value = 0;
        CipherStep step;
        step.index = index;
        step.plaintext = ch;
        switch (spec.kind) {
            case CipherKind::Caesar:
                step.effective_shift = spec.shift;
                step.direction = '+';
                value = mod26(c + spec.shift);
                break;
            case CipherKind::Atbash:
                step.effective_shift = 0;
                step.direction = 'r';
                value = 25 - c;
                break;
            case CipherKind::Vigenere: {
                const int k = spec.key[static_cast<std::size_t>(index) % spec.key.size()] - 'a';
                step.effective_shift = k;
                step.direction = '+';
                value = mod26(c + k);
                break;
            }
            case CipherKind::Alice:
                step.effective_shift = spec.shift + index;
                step.direction = '+';
                value = mod26(c + spec.shift + index);
                break;
            case CipherKind::Bob:
                // Reflection within the alphabet rotated forward by the
                // shift; shift 0 reduces to Atbash.
                step.effective_shift = spec.shift;
                step.direction = 'r';
                value = mod26((25 - mod26(c - spec.shift)) + spec.shift);
                break;
            case CipherKind::Kevin: {
                const int k = spec.key[static_cast<std::size_t>(index) % spec.key.size()] - 'a';
                step.effective_shift = k;
                step.direction = (k % 2 == 0) ? '+' : '-';
                value = mod26(k % 2 == 0 ? c + k : c - k);
                break;
            }
        }
        step.ciphertext = static_cast<char>(base + value);
        out.ciphertext.push_back(step.ciphertext);
        out.steps.push_back(step);
        ++index;
    }
    return out;
}

std::string encrypt(const CipherSpec& spec, const std::string& plaintext) {
    return trace_encrypt(spec, plaintext).ciphertext;
}

std::vector<int> sample_shift(std::uint64_t rng_seed, int n) {
    Rng rng(rng_seed);
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double draw = rng.normal(13.0, 2.0);
        int shift = static_cast<int>(std::llround(draw));
        if (shift < 1) shift = 1;
        if (shift > 25) shift = 25;
        out.push_back(shift);
    }
    return out;
}

namespace {

const std::string kCaesarListing = R"(def caesar(text, shift):
    result = ""
    for ch in text:
        if ch.isalpha():
            base = ord('A') if ch.isupper() else ord('a')
            result += chr(base + (ord(ch) - base + shift) % 26)
        else:
            result += ch
    return result
)";

const std::string kAtbashListing = R"(def atbash(text):
    result = ""
    for ch in text:
        if ch.isalpha():
            base = ord('A') if ch.isupper() else ord('a')
            result += chr(base + 25 - (ord(ch) - base))
        else:
            result += ch
    return result
)";

const std::string kVigenereListing = R"(def vigenere(text, key):
    result = ""
    i = 0
    for ch in text:
        if ch.isalpha():
            base = ord('A') if ch.isupper() else ord('a')
            k = ord(key[i % len(key)]) - ord('a')
            result += chr(base + (ord(ch) - base + k) % 26)
            i += 1
        else:
            result += ch
    return result
)";

const std::string kAliceListing = R"(def alice(text, shift):
    result = ""
    i = 0
    for ch in text:
        if ch.isalpha():
            base = ord('A') if ch.isupper() else ord('a')
            result += chr(base + (ord(ch) - base + shift + i) % 26)
            i += 1
        else:
            result += ch
    return result
)";

const std::string kBobListing = R"(def bob(text, shift):
    result = ""
    for ch in text:
        if ch.isalpha():
            base = ord('A') if ch.isupper() else ord('a')
            c = ord(ch) - base
            result += chr(base + ((25 - ((c - shift) % 26)) + shift) % 26)
        else:
            result += ch
    return result
)";

const std::string kKevinListing = R"(def kevin(text, key):
    result = ""
    i = 0
    for ch in text:
        if ch.isalpha():
            base = ord('A') if ch.isupper() else ord('a')
            k = ord(key[i % len(key)]) - ord('a')
            if k % 2 == 0:
                result += chr(base + (ord(ch) - base + k) % 26)
            else:
                result += chr(base + (ord(ch) - base - k) % 26)
            i += 1
        else:
            result += ch
    return result
)";

} // namespace

const std::string& reference_listing(CipherKind kind) {
    switch (kind) {
        case CipherKind::Caesar: return kCaesarListing;
        case CipherKind::Atbash: return kAtbashListing;
        case CipherKind::Vigenere: return kVigenereListing;
        case CipherKind::Alice: return kAliceListing;
        case CipherKind::Bob: return kBobListing;
        case CipherKind::Kevin: return kKevinListing;
    }
    return kCaesarListing;
}

std::string reference_entry_point(CipherKind kind) { return kind_name(kind); }

} // namespace pbb::ciphers
