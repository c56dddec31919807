#pragma once

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

namespace run {

struct Result {
  int code = -1;
  std::string out;  // stdout followed by stderr
};

inline std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) {
    if (c == '\'') q += "'\\''";
    else q += c;
  }
  return q + "'";
}

// Runs `args` (already quoted where needed) through the shell with an
// optional environment prefix such as "DECAT_THREADS=2".
inline Result cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + quote(DECAT_CLI) + " " + args + " 2>&1";
  Result r;
  FILE* p = ::popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = ::pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

inline std::string corpus(const std::string& rel) { return quote(std::string(DECAT_CORPUS) + "/" + rel); }

}  // namespace run
