// One line per acceptance criterion; exit status is non-zero if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "ramanqc/config.hpp"
#include "ramanqc/report.hpp"

#ifndef RAMANQC_CLI_PATH
#error "RAMANQC_CLI_PATH must point at the CLI executable"
#endif

namespace {

void print(const ramanqc::report::CriterionResult& r) {
  std::printf("criterion %2d: %s  %s (%s) [%.2f s]\n", r.id, r.pass ? "PASS" : "FAIL",
              r.title.c_str(), r.measured.c_str(), r.seconds);
  std::fflush(stdout);
}

}  // namespace

int main() {
  const auto cfg = ramanqc::config::default_config();
  int failed = 0;
  for (int id = 1; id <= ramanqc::report::kCriteria; ++id) {
    const auto r = ramanqc::report::run_criterion(id, cfg);
    print(r);
    failed += r.pass ? 0 : 1;
  }

  // End to end: the CLI `report` on the default configuration.
  const std::string out = std::string(RAMANQC_TEST_TMP) + "/acceptance_report";
  const std::string cmd = std::string(RAMANQC_CLI_PATH) + " report --output " + out + " > " + out +
                          ".log 2>&1";
  const auto t0 = std::chrono::steady_clock::now();
  const int status = std::system(cmd.c_str());
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  ramanqc::report::CriterionResult end;
  end.id = 11;
  end.title = "`report` passes from the default config within the time budget";
  end.pass = code == 0 && secs < ramanqc::report::kReportBudgetSeconds;
  end.seconds = secs;
  char buf[256];
  std::snprintf(buf, sizeof buf, "exit code %d, %.1f s (limit %.0f s), log in %s.log", code, secs,
                ramanqc::report::kReportBudgetSeconds, out.c_str());
  end.measured = buf;
  print(end);
  failed += end.pass ? 0 : 1;

  std::printf("%d of 11 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
