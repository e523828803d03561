#pragma once

#include <string>
#include <vector>

#include "pbb/common/jsonl.hpp"

namespace pbb::ingest {

struct ExecResult {
    bool ok = false;
    json output;
    std::string error;
};

// Client side of the sandboxed executor protocol: spawn the configured
// command, write one JSON request to its stdin, read one JSON reply from
// its stdout. Thread-safe; each call spawns its own process.
class ExecutorClient {
public:
    // e.g. {"python3", "/path/to/pbb_pyexec.py"}
    explicit ExecutorClient(std::vector<std::string> command, int timeout_ms = 30000);

    ExecResult run(const std::string& source, const std::string& entry_point,
                   const json& input) const;

    // Batch extension: one subprocess evaluating many inputs of the same
    // source. Results come back in input order.
    std::vector<ExecResult> run_batch(const std::string& source, const std::string& entry_point,
                                      const std::vector<json>& inputs) const;

    const std::vector<std::string>& command() const { return command_; }

private:
    json roundtrip(const json& request) const;

    std::vector<std::string> command_;
    int timeout_ms_;
};

// Raw subprocess invocation: feeds stdin_data, captures stdout/stderr,
// enforces a wall-clock timeout (the child is SIGKILLed on expiry).
struct ProcessResult {
    int exit_code = -1;
    bool timed_out = false;
    std::string out;
    std::string err;
};

ProcessResult run_process(const std::vector<std::string>& argv, const std::string& stdin_data,
                          int timeout_ms);

} // namespace pbb::ingest
