#pragma once

// Runs the sessrank binary through the shell and captures its exit status.

#include <sys/wait.h>

#include <cstdlib>
#include <string>
#include <vector>

namespace sessrank::testing {

inline std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  return out + "'";
}

struct CliResult {
  int exit_code = -1;
  std::string command;
};

// stdout and stderr go to `log_path` when given, otherwise to /dev/null.
inline CliResult run_cli(const std::vector<std::string>& args, const std::string& log_path = {}) {
  std::string cmd = shell_quote(SESSRANK_CLI);
  for (const auto& a : args) cmd += " " + shell_quote(a);
  const std::string full =
      cmd + " > " + (log_path.empty() ? std::string("/dev/null") : shell_quote(log_path)) + " 2>&1";
  const int status = std::system(full.c_str());
  CliResult r;
  r.command = cmd;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace sessrank::testing
