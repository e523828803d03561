#include "pbb/cot/render.hpp"

#include <iostream>

#include "pbb/common/errors.hpp"

namespace pbb::cot {

std::string direct_answer(const std::string& value) { return kAnswerMarker + value; }

namespace {

std::string step_sentence(std::size_t number, const arith::TraceStep& step) {
    const auto operand = [](std::int64_t v) {
        return v < 0 ? "(" + std::to_string(v) + ")" : std::to_string(v);
    };
    std::string text = "Step " + std::to_string(number) + ": ";
    if (step.op == "abs") {
        text += "abs(" + std::to_string(step.operands.at(0)) + ") = " +
                std::to_string(step.result) + ".";
    } else if (step.op == "**") {
        text += operand(step.operands.at(0)) + " ** " + std::to_string(step.operands.at(1)) +
                " = " + std::to_string(step.result) + ".";
    } else {
        text += operand(step.operands.at(0)) + " " + step.op + " " + operand(step.operands.at(1)) +
                " = " + std::to_string(step.result) + ".";
    }
    return text;
}

} // namespace

CotText render_arith_cot(const arith::ArithProgram& program, const arith::ExecutionTrace& trace,
                         std::int64_t input, const arith::InputDomain& domain) {
    const arith::ExecutionTrace replay = arith::trace(program, input, domain);
    if (replay.step_count != trace.step_count || replay.output != trace.output)
        throw TraceMismatch("trace does not replay against program " + program.name);
    for (std::size_t i = 0; i < replay.steps.size(); ++i) {
        const auto& a = replay.steps[i];
        const auto& b = trace.steps[i];
        if (a.op != b.op || a.operands != b.operands || a.result != b.result)
            throw TraceMismatch("trace step " + std::to_string(i + 1) +
                                " does not replay against program " + program.name);
    }

    CotText cot;
    cot.final_answer = std::to_string(trace.output);
    std::string body = "Evaluating " + program.name + "(" + std::to_string(input) + ") step by step.\n";
    for (std::size_t i = 0; i < trace.steps.size(); ++i)
        body += step_sentence(i + 1, trace.steps[i]) + "\n";
    body += cot.marker_line();
    cot.body = std::move(body);
    return cot;
}

CotText render_cipher_cot(const ciphers::CipherSpec& spec, const ciphers::CipherTrace& trace,
                          const std::string& plaintext) {
    const ciphers::CipherTrace replay = ciphers::trace_encrypt(spec, plaintext);
    if (replay.ciphertext != trace.ciphertext || replay.steps.size() != trace.steps.size())
        throw TraceMismatch("cipher trace does not replay for the given plaintext");

    CotText cot;
    cot.final_answer = trace.ciphertext;
    std::string body = "Encrypting \"" + plaintext + "\" with the " +
                       ciphers::kind_name(spec.kind) + " cipher";
    if (spec.kind == ciphers::CipherKind::Caesar || spec.kind == ciphers::CipherKind::Alice ||
        spec.kind == ciphers::CipherKind::Bob)
        body += " (shift " + std::to_string(spec.shift) + ")";
    if (!spec.key.empty()) body += " (key \"" + spec.key + "\")";
    body += ".\n";
    for (const ciphers::CipherStep& step : trace.steps) {
        body += "Letter " + std::to_string(step.index + 1) + ": '" + step.plaintext + "' ";
        if (step.direction == 'r')
            body += "reflects in the alphabet shifted by " + std::to_string(step.effective_shift);
        else if (step.direction == '-')
            body += "shifts back by " + std::to_string(step.effective_shift);
        else
            body += "shifts forward by " + std::to_string(step.effective_shift);
        body += ", giving '";
        body += step.ciphertext;
        body += "'.\n";
    }
    body += cot.marker_line();
    cot.body = std::move(body);
    return cot;
}

CotText paraphrase_hook(const CotText& cot, const ParaphraseConfig& config) {
    if (!config.enabled) return cot;
    try {
        client::ChatClient chat(config.client);
        client::GenerationRequest request;
        request.prompt =
            "Rewrite the following step-by-step solution in your own words. Keep every "
            "computed value correct and finish with the exact final line \"" +
            cot.marker_line() + "\".\n\n" + cot.body;
        request.n = 1;
        request.temperature = config.temperature;
        const client::ItemResult result = chat.generate_one(request);
        if (!result.ok || result.completions.empty()) {
            std::cerr << "paraphrase_hook: request failed (" << result.error
                      << "); keeping deterministic rendering\n";
            return cot;
        }
        std::string text = result.completions.front();
        // The marker line is contractual; whatever came back, the answer
        // stays bit-identical.
        const std::size_t marker = text.rfind(kAnswerMarker);
        if (marker != std::string::npos) text.erase(marker);
        while (!text.empty() && (text.back() == '\n' || text.back() == ' ')) text.pop_back();
        CotText out;
        out.final_answer = cot.final_answer;
        out.body = text.empty() ? cot.body : text + "\n" + cot.marker_line();
        return out;
    } catch (const std::exception& e) {
        std::cerr << "paraphrase_hook: " << e.what() << "; keeping deterministic rendering\n";
        return cot;
    }
}

} // namespace pbb::cot
