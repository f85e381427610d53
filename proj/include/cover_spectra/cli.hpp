#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cover_spectra::cli {

/// Exit codes. kContract means the command ran but a tolerance contract was
/// not met (e.g. a probe hit its iteration cap, or verify-thm2 found a
/// failing graph).
enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2, kContract = 3 };

/// Runs one command line (without the program name). Reports go to `out`;
/// errors are written to `err` as one line of JSON.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct ExperimentRow {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double wr_fraction = 0.0;
  double tree_fraction = 0.0;
  double rho = 0.0;
  double lambda1 = 0.0;
};

/// Worker count from COVER_SPECTRA_THREADS (default 1, minimum 1).
std::size_t thread_count();

}  // namespace cover_spectra::cli
