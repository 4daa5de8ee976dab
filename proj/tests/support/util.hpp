#pragma once
// Shared test plumbing: reading files, invoking the CLI binary, and running
// source text in-process.

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "avlang/interp.hpp"
#include "avlang/parser.hpp"
#include "avlang/trace.hpp"

namespace test_support {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path);
}

// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::string pattern = "/tmp/avlang-test-XXXXXX";
    std::vector<char> buf(pattern.begin(), pattern.end());
    buf.push_back('\0');
    if (mkdtemp(buf.data()) == nullptr) throw std::runtime_error("mkdtemp failed");
    path_ = buf.data();
  }
  ~TempDir() { std::system(("rm -rf '" + path_ + "'").c_str()); }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::string& path() const { return path_; }
  std::string file(const std::string& name) const { return path_ + "/" + name; }

 private:
  std::string path_;
};

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Runs the built CLI with the given arguments; stdin is fed `input`.
inline CliResult run_cli(const std::vector<std::string>& args, const std::string& input = "") {
  TempDir dir;
  write_file(dir.file("in"), input);
  std::string cmd = "'" + std::string(AVLANG_CLI_PATH) + "'";
  for (const std::string& arg : args) cmd += " '" + arg + "'";
  cmd += " < '" + dir.file("in") + "' > '" + dir.file("out") + "' 2> '" + dir.file("err") + "'";
  int status = std::system(cmd.c_str());
  CliResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = read_file(dir.file("out"));
  result.err = read_file(dir.file("err"));
  return result;
}

inline std::string program_path(const std::string& name) {
  return std::string(AVLANG_PROGRAMS_DIR) + "/" + name;
}

// Parses and runs source text with a fresh machine, default trace detail.
inline avlang::RunResult run_source(const std::string& source,
                                    std::uint64_t max_steps = avlang::kDefaultMaxSteps,
                                    avlang::TraceDetail detail = avlang::TraceDetail::Full) {
  avlang::SourceUnit unit = avlang::parse_unit(source);
  avlang::Budget budget{max_steps};
  return avlang::run_unit(unit, budget, detail);
}

inline std::string all_output(const avlang::RunResult& result) {
  std::string out;
  for (const avlang::DirectiveOutcome& d : result.directives) out += d.output;
  return out;
}

// Names carried by Instantiated events, as a set.
inline std::set<std::string> instantiated_names(const avlang::TraceLog& log) {
  std::set<std::string> names;
  for (const avlang::TraceEvent& event : log.events)
    if (const auto* inst = std::get_if<avlang::EvInstantiated>(&event.data))
      names.insert(inst->name);
  return names;
}

}  // namespace test_support
