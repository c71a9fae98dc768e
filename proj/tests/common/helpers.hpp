#pragma once

// Shared plumbing for the test binaries: scratch directories, file slurping,
// and running the CLI executable.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

namespace testutil {

// Unique directory under the system temp root, removed on destruction.
class ScratchDir {
 public:
  explicit ScratchDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("impa_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~ScratchDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("test helper: cannot open " + path);
  }
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("test helper: cannot write " + path);
  }
  out << text;
}

#ifdef IMPA_CLI_PATH
// Runs `argv_tail` against the built CLI, redirecting stdout/stderr into
// files inside `dir`. Returns the process exit code.
inline int run_cli(const std::string& argv_tail, const ScratchDir& dir,
                   const std::string& env_prefix = {}) {
  const std::string cmd = env_prefix + (env_prefix.empty() ? "" : " ") +
                          std::string(IMPA_CLI_PATH) + " " + argv_tail +
                          " > " + dir.file("stdout.txt") + " 2> " +
                          dir.file("stderr.txt");
  const int status = std::system(cmd.c_str());
  if (status == -1) {
    throw std::runtime_error("test helper: system() failed");
  }
  if (!WIFEXITED(status)) {
    throw std::runtime_error("test helper: CLI did not exit normally");
  }
  return WEXITSTATUS(status);
}
#endif

inline std::string data_file(const std::string& name) {
  return std::string(IMPA_TEST_DATA_DIR) + "/" + name;
}

}  // namespace testutil
