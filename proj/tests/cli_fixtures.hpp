#ifndef QDET_TESTS_CLI_FIXTURES_HPP
#define QDET_TESTS_CLI_FIXTURES_HPP

// Golden-file cases for the command-line tool. Each case runs inside the
// data directory so that outputs never contain absolute paths.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdet::testing {

struct CliCase {
  std::string name; // golden file stem under data/golden
  std::string args;
  int exit_code;
};

inline const std::vector<CliCase>& cli_cases() {
  static const std::vector<CliCase> cases = {
      {"quaternion_solve", "solve --method both quaternion_system.json", 0},
      {"scalar_quasidet", "quasidet scalar_matrix.json", 0},
      {"scalar_quasidet_pivot", "quasidet --pivot 2,1 scalar_matrix.json", 0},
      {"dual_singular_solve", "solve dual_singular_system.json", 1},
      {"dual_singular_invert", "map-invert dual_epsilon.map.json", 1},
      {"split_quaternion_check", "check-algebra split_quaternion.alg.json", 0},
  };
  return cases;
}

struct CliRun {
  std::string out;
  int exit_code = -1;
};

/// Runs the tool with stdout captured and stderr discarded.
inline CliRun run_cli(const std::string& args) {
  const std::string cmd =
      "cd '" + std::string(QDET_TEST_DATA) + "' && '" + std::string(QDET_CLI_PATH) + "' " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe)
    throw std::runtime_error("popen failed");
  CliRun r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

inline std::string read_golden(const std::string& name) {
  const std::filesystem::path p = std::filesystem::path(QDET_TEST_DATA) / "golden" / (name + ".out");
  std::ifstream in(p, std::ios::binary);
  if (!in)
    throw std::runtime_error("missing golden file " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

} // namespace qdet::testing

#endif // QDET_TESTS_CLI_FIXTURES_HPP
