#pragma once

// A valuation under test running as a child process. Each query writes one
// compact polytope JSON line to its stdin and reads one scalar line back,
// either raw ("3/2") or as a JSON string ("\"3/2\"").

#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include "slval/error.hpp"
#include "slval/io.hpp"

namespace slval::tools {

class OracleProcess {
 public:
  OracleProcess(std::string command, long field_d) : command_(std::move(command)), field_d_(field_d) {
    std::signal(SIGPIPE, SIG_IGN);
    int to_child[2];
    int from_child[2];
    if (pipe(to_child) != 0) throw OracleError("oracle: pipe failed");
    if (pipe(from_child) != 0) {
      close(to_child[0]);
      close(to_child[1]);
      throw OracleError("oracle: pipe failed");
    }
    pid_ = fork();
    if (pid_ < 0) throw OracleError("oracle: fork failed");
    if (pid_ == 0) {
      dup2(to_child[0], STDIN_FILENO);
      dup2(from_child[1], STDOUT_FILENO);
      close(to_child[0]);
      close(to_child[1]);
      close(from_child[0]);
      close(from_child[1]);
      execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
      _exit(127);
    }
    close(to_child[0]);
    close(from_child[1]);
    in_ = fdopen(to_child[1], "w");
    out_ = fdopen(from_child[0], "r");
    if (!in_ || !out_) throw OracleError("oracle: fdopen failed");
  }

  OracleProcess(const OracleProcess&) = delete;
  OracleProcess& operator=(const OracleProcess&) = delete;

  ~OracleProcess() {
    if (in_) std::fclose(in_);
    if (out_) std::fclose(out_);
    if (pid_ > 0) {
      int status = 0;
      waitpid(pid_, &status, 0);
    }
    std::free(line_);
  }

  Scalar query(const Polytope& p) {
    ++queries_;
    const std::string request = io::to_json(p, field_d_).dump() + "\n";
    if (std::fwrite(request.data(), 1, request.size(), in_) != request.size() || std::fflush(in_) != 0) {
      throw fail("could not write query");
    }
    const ssize_t len = getline(&line_, &cap_, out_);
    if (len <= 0) throw fail("no reply (process exited?)");
    std::string reply(line_, static_cast<std::size_t>(len));
    while (!reply.empty() && (reply.back() == '\n' || reply.back() == '\r' || reply.back() == ' ')) reply.pop_back();
    try {
      if (!reply.empty() && reply.front() == '"') return io::scalar_from_json(io::json::parse(reply), field_d_);
      return io::parse_scalar(reply, field_d_);
    } catch (const std::exception& e) {
      throw fail("unparseable reply '" + reply + "': " + e.what());
    }
  }

 private:
  OracleError fail(const std::string& why) const {
    return OracleError("oracle '" + command_ + "' query " + std::to_string(queries_) + ": " + why);
  }

  std::string command_;
  long field_d_;
  pid_t pid_ = -1;
  FILE* in_ = nullptr;
  FILE* out_ = nullptr;
  char* line_ = nullptr;
  std::size_t cap_ = 0;
  std::size_t queries_ = 0;
};

}  // namespace slval::tools
