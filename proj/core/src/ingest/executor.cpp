#include "pbb/ingest/executor.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>

#include "pbb/common/errors.hpp"

namespace pbb::ingest {

namespace {

void set_nonblocking(int fd) {
    const int flags = fcntl(fd, F_GETFL, 0);
    fcntl(fd, F_SETFL, flags | O_NONBLOCK);
}

} // namespace

ProcessResult run_process(const std::vector<std::string>& argv, const std::string& stdin_data,
                          int timeout_ms) {
    if (argv.empty()) throw ConfigError("empty executor command");

    int in_pipe[2], out_pipe[2], err_pipe[2];
    if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0 || pipe(err_pipe) != 0)
        throw IoFailure("pipe() failed: " + std::string(std::strerror(errno)));

    const pid_t pid = fork();
    if (pid < 0) throw IoFailure("fork() failed: " + std::string(std::strerror(errno)));

    if (pid == 0) {
        dup2(in_pipe[0], STDIN_FILENO);
        dup2(out_pipe[1], STDOUT_FILENO);
        dup2(err_pipe[1], STDERR_FILENO);
        close(in_pipe[0]);
        close(in_pipe[1]);
        close(out_pipe[0]);
        close(out_pipe[1]);
        close(err_pipe[0]);
        close(err_pipe[1]);
        std::vector<char*> args;
        args.reserve(argv.size() + 1);
        for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
        args.push_back(nullptr);
        execvp(args[0], args.data());
        _exit(127);
    }

    close(in_pipe[0]);
    close(out_pipe[1]);
    close(err_pipe[1]);
    set_nonblocking(in_pipe[1]);
    set_nonblocking(out_pipe[0]);
    set_nonblocking(err_pipe[0]);

    ProcessResult result;
    std::size_t written = 0;
    bool stdin_open = true;
    bool stdout_open = true;
    bool stderr_open = true;
    const auto deadline =
        std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_ms);

    char buf[65536];
    while (stdout_open || stderr_open || stdin_open) {
        const auto now = std::chrono::steady_clock::now();
        if (now >= deadline) {
            result.timed_out = true;
            kill(pid, SIGKILL);
            break;
        }
        const int wait_ms = static_cast<int>(
            std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count());

        pollfd fds[3];
        nfds_t nfds = 0;
        int stdin_slot = -1, stdout_slot = -1, stderr_slot = -1;
        if (stdin_open) {
            stdin_slot = static_cast<int>(nfds);
            fds[nfds++] = {in_pipe[1], POLLOUT, 0};
        }
        if (stdout_open) {
            stdout_slot = static_cast<int>(nfds);
            fds[nfds++] = {out_pipe[0], POLLIN, 0};
        }
        if (stderr_open) {
            stderr_slot = static_cast<int>(nfds);
            fds[nfds++] = {err_pipe[0], POLLIN, 0};
        }
        const int rv = poll(fds, nfds, std::min(wait_ms, 200));
        if (rv < 0 && errno != EINTR) break;

        if (stdin_slot >= 0 && (fds[stdin_slot].revents & (POLLOUT | POLLERR | POLLHUP))) {
            if (fds[stdin_slot].revents & (POLLERR | POLLHUP)) {
                close(in_pipe[1]);
                stdin_open = false;
            } else {
                const ssize_t n = write(in_pipe[1], stdin_data.data() + written,
                                        stdin_data.size() - written);
                if (n > 0) written += static_cast<std::size_t>(n);
                if (n < 0 && errno != EAGAIN && errno != EINTR) {
                    close(in_pipe[1]);
                    stdin_open = false;
                }
                if (written == stdin_data.size()) {
                    close(in_pipe[1]);
                    stdin_open = false;
                }
            }
        }
        const auto drain = [&buf](int fd, std::string& sink, bool& open_flag) {
            for (;;) {
                const ssize_t n = read(fd, buf, sizeof(buf));
                if (n > 0) {
                    sink.append(buf, static_cast<std::size_t>(n));
                } else if (n == 0) {
                    close(fd);
                    open_flag = false;
                    return;
                } else {
                    if (errno != EAGAIN && errno != EINTR) {
                        close(fd);
                        open_flag = false;
                    }
                    return;
                }
            }
        };
        if (stdout_slot >= 0 && (fds[stdout_slot].revents & (POLLIN | POLLHUP | POLLERR)))
            drain(out_pipe[0], result.out, stdout_open);
        if (stderr_slot >= 0 && (fds[stderr_slot].revents & (POLLIN | POLLHUP | POLLERR)))
            drain(err_pipe[0], result.err, stderr_open);
    }

    if (stdin_open) close(in_pipe[1]);
    if (stdout_open) close(out_pipe[0]);
    if (stderr_open) close(err_pipe[0]);

    int status = 0;
    waitpid(pid, &status, 0);
    if (WIFEXITED(status))
        result.exit_code = WEXITSTATUS(status);
    else if (WIFSIGNALED(status))
        result.exit_code = 128 + WTERMSIG(status);
    return result;
}

ExecutorClient::ExecutorClient(std::vector<std::string> command, int timeout_ms)
    : command_(std::move(command)), timeout_ms_(timeout_ms) {
    if (command_.empty()) throw ConfigError("executor command must not be empty");
}

json ExecutorClient::roundtrip(const json& request) const {
    const ProcessResult proc = run_process(command_, request.dump() + "\n", timeout_ms_);
    if (proc.timed_out) throw ExecutorFault("executor timed out after " +
                                            std::to_string(timeout_ms_) + " ms");
    if (proc.exit_code != 0)
        throw ExecutorFault("executor exited with code " + std::to_string(proc.exit_code) +
                            (proc.err.empty() ? "" : ": " + proc.err));
    json reply = json::parse(proc.out, nullptr, false);
    if (reply.is_discarded())
        throw ExecutorFault("executor replied with invalid JSON: " + proc.out);
    return reply;
}

namespace {

ExecResult from_reply(const json& reply) {
    ExecResult r;
    r.ok = reply.value("ok", false);
    if (reply.contains("output")) r.output = reply["output"];
    r.error = reply.value("error", "");
    return r;
}

} // namespace

ExecResult ExecutorClient::run(const std::string& source, const std::string& entry_point,
                               const json& input) const {
    json request;
    request["source"] = source;
    request["entry_point"] = entry_point;
    request["input"] = input;
    return from_reply(roundtrip(request));
}

std::vector<ExecResult> ExecutorClient::run_batch(const std::string& source,
                                                  const std::string& entry_point,
                                                  const std::vector<json>& inputs) const {
    json request;
    request["source"] = source;
    request["entry_point"] = entry_point;
    request["inputs"] = json::array();
    for (const auto& v : inputs) request["inputs"].push_back(v);
    const json reply = roundtrip(request);
    if (!reply.value("ok", false) || !reply.contains("outputs") || !reply["outputs"].is_array())
        throw ExecutorFault("malformed batch reply: " + reply.dump());
    std::vector<ExecResult> out;
    out.reserve(inputs.size());
    for (const auto& item : reply["outputs"]) out.push_back(from_reply(item));
    if (out.size() != inputs.size())
        throw ExecutorFault("batch reply count mismatch: expected " +
                            std::to_string(inputs.size()) + ", got " + std::to_string(out.size()));
    return out;
}

} // namespace pbb::ingest
