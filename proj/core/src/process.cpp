#include "hunkbench/process.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cerrno>
#include <cstring>
#include <mutex>

#include "hunkbench/error.hpp"

extern char** environ;

namespace hunkbench {
namespace {

struct Pipe {
    int fd[2] = {-1, -1};

    Pipe() {
        if (::pipe2(fd, O_CLOEXEC) != 0) throw ToolUnavailable(std::string("pipe: ") + std::strerror(errno));
    }
    ~Pipe() {
        close_read();
        close_write();
    }
    Pipe(const Pipe&) = delete;
    Pipe& operator=(const Pipe&) = delete;

    void close_read() {
        if (fd[0] >= 0) ::close(fd[0]);
        fd[0] = -1;
    }
    void close_write() {
        if (fd[1] >= 0) ::close(fd[1]);
        fd[1] = -1;
    }
};

}  // namespace

ProcessResult run_process(const std::vector<std::string>& argv, const std::string& input) {
    if (argv.empty()) throw ToolUnavailable("empty command line");

    Pipe in;
    Pipe out;
    Pipe err;

    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_adddup2(&actions, in.fd[0], STDIN_FILENO);
    posix_spawn_file_actions_adddup2(&actions, out.fd[1], STDOUT_FILENO);
    posix_spawn_file_actions_adddup2(&actions, err.fd[1], STDERR_FILENO);

    std::vector<char*> args;
    args.reserve(argv.size() + 1);
    for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
    args.push_back(nullptr);

    pid_t pid = 0;
    const int rc = ::posix_spawnp(&pid, args[0], &actions, nullptr, args.data(), environ);
    posix_spawn_file_actions_destroy(&actions);
    if (rc != 0) {
        throw ToolUnavailable("cannot start " + argv[0] + ": " + std::strerror(rc));
    }
    in.close_read();
    out.close_write();
    err.close_write();

    // Writing to a child that exited early must not kill us.
    static std::once_flag sigpipe_once;
    std::call_once(sigpipe_once, [] { ::signal(SIGPIPE, SIG_IGN); });

    ProcessResult result;
    std::size_t written = 0;
    if (input.empty()) in.close_write();
    if (in.fd[1] >= 0) ::fcntl(in.fd[1], F_SETFL, O_NONBLOCK);

    std::array<char, 65536> buf{};
    while (out.fd[0] >= 0 || err.fd[0] >= 0) {
        std::vector<pollfd> fds;
        if (out.fd[0] >= 0) fds.push_back({out.fd[0], POLLIN, 0});
        if (err.fd[0] >= 0) fds.push_back({err.fd[0], POLLIN, 0});
        if (in.fd[1] >= 0) fds.push_back({in.fd[1], POLLOUT, 0});
        if (::poll(fds.data(), fds.size(), -1) < 0) {
            if (errno == EINTR) continue;
            break;
        }
        for (const auto& p : fds) {
            if (p.revents == 0) continue;
            if (p.fd == in.fd[1]) {
                const auto n = ::write(p.fd, input.data() + written, input.size() - written);
                if (n > 0) written += static_cast<std::size_t>(n);
                if (n < 0 && errno != EAGAIN) written = input.size();
                if (written >= input.size()) in.close_write();
                continue;
            }
            const auto n = ::read(p.fd, buf.data(), buf.size());
            if (n > 0) {
                (p.fd == out.fd[0] ? result.out : result.err).append(buf.data(), static_cast<std::size_t>(n));
            } else if (n == 0 || errno != EINTR) {
                if (p.fd == out.fd[0]) {
                    out.close_read();
                } else {
                    err.close_read();
                }
            }
        }
    }
    in.close_write();

    int status = 0;
    while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
    }
    if (WIFEXITED(status)) {
        result.exit_code = WEXITSTATUS(status);
    } else if (WIFSIGNALED(status)) {
        result.exit_code = 128 + WTERMSIG(status);
    }
    return result;
}

}  // namespace hunkbench
