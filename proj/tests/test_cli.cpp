// Black-box checks of the command-line driver: config-file handling, flag
// precedence, and exit codes. argv[1] is the CLI binary.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

int g_failures = 0;

void expect(bool ok, const std::string& what) {
  std::printf("[%s] %s\n", ok ? "ok" : "FAILED", what.c_str());
  if (!ok) ++g_failures;
}

std::string read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int run(const std::string& cmd) { return std::system(cmd.c_str()); }

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_cli <path-to-cli>\n");
    return 2;
  }
  const std::string cli = "\"" + std::string(argv[1]) + "\"";

  {
    std::ofstream conf("cli_test.conf");
    conf << "# shared run configuration\n"
         << "n_samples = 64\n"
         << "trials = 40\n"
         << "snr_min_db = 0\n"
         << "snr_max_db = 10\n"
         << "snr_step_db = 5\n"
         << "master_seed = 77\n";
  }

  const int rc_cfg = run(cli +
                         " nmse-compare --config cli_test.conf --out "
                         "cli_from_config.csv > /dev/null 2>&1");
  const int rc_flags = run(cli +
                           " nmse-compare --n 64 --trials 40 --snr-min-db 0"
                           " --snr-max-db 10 --snr-step-db 5 --seed 77 --out "
                           "cli_from_flags.csv > /dev/null 2>&1");
  expect(rc_cfg == 0 && rc_flags == 0, "config and flag runs both succeed");
  expect(read_bytes("cli_from_config.csv") == read_bytes("cli_from_flags.csv") &&
             !read_bytes("cli_from_config.csv").empty(),
         "config file reproduces the equivalent flag invocation");

  const int rc_override = run(cli +
                              " nmse-compare --config cli_test.conf --seed 78"
                              " --out cli_override.csv > /dev/null 2>&1");
  expect(rc_override == 0, "flag-over-config run succeeds");
  expect(read_bytes("cli_override.csv") != read_bytes("cli_from_config.csv"),
         "command-line flags override config values");

  {
    std::ofstream conf("cli_bad.conf");
    conf << "no_such_field = 3\n";
  }
  const int rc_badkey =
      run(cli + " nmse-compare --config cli_bad.conf > /dev/null 2>&1");
  expect(WEXITSTATUS(rc_badkey) == 2, "unknown config key exits with code 2");

  const int rc_badflag = run(cli + " nmse-compare --no-such-flag > /dev/null 2>&1");
  expect(WEXITSTATUS(rc_badflag) == 2, "unknown flag exits with code 2");

  const int rc_missing_cfg =
      run(cli + " nmse-compare --config does_not_exist.conf > /dev/null 2>&1");
  expect(WEXITSTATUS(rc_missing_cfg) == 3, "missing config file exits with code 3");

  const int rc_badout = run(cli +
                            " theory-only --n 64 --k 2 --out /no-dir/x.csv"
                            " > /dev/null 2>&1");
  expect(WEXITSTATUS(rc_badout) == 3, "unwritable output path exits with code 3");

  if (g_failures == 0) return 0;
  std::printf("%d check(s) failed\n", g_failures);
  return 1;
}
