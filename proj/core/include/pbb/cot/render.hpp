#pragma once

#include <optional>
#include <string>

#include "pbb/arith/ast.hpp"
#include "pbb/arith/interpreter.hpp"
#include "pbb/ciphers/cipher.hpp"
#include "pbb/client/chat_client.hpp"

namespace pbb::cot {

inline constexpr const char* kAnswerMarker = "Answer: ";

// Rendered chain-of-thought: prose body whose last line is the marker line
// `Answer: <value>`, from which the final answer parses back exactly.
struct CotText {
    std::string body;        // full text including the marker line
    std::string final_answer;

    std::string marker_line() const { return kAnswerMarker + final_answer; }
};

std::string direct_answer(const std::string& value);

// One sentence per executed operation. Replays the trace against the
// program and throws TraceMismatch when they disagree.
CotText render_arith_cot(const arith::ArithProgram& program, const arith::ExecutionTrace& trace,
                         std::int64_t input, const arith::InputDomain& domain);

// One sentence per transformed letter; non-letters pass through silently.
CotText render_cipher_cot(const ciphers::CipherSpec& spec, const ciphers::CipherTrace& trace,
                          const std::string& plaintext);

struct ParaphraseConfig {
    bool enabled = false;
    client::ClientConfig client;
    double temperature = 0.7;
};

// Optionally rewrites the CoT body through a chat model while preserving
// the marker line and final answer verbatim. Degrades to identity on any
// failure; never throws.
CotText paraphrase_hook(const CotText& cot, const ParaphraseConfig& config);

} // namespace pbb::cot
