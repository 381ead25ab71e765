#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "powermat/matrix.hpp"

namespace powermat::cli {

enum class Command { classify, exponents, spectrum, verify, transform, certify, mtype, gallery };

struct RunConfig {
  Command command = Command::classify;
  /// Matrix file, directory (batch), "-" for stdin, or "gallery:<id>[:k=v,...]".
  std::string input_path = "-";
  ToleranceConfig tol;
  /// Search bound; nullopt means POWERMAT_KMAX or max(4 n^2, 64).
  std::optional<unsigned> k_max;
  std::uint64_t seed = 1;
  /// Report path; empty writes to the output stream. For `gallery emit` a
  /// directory receiving <id>.json and <id>.expectations.json.
  std::string output;
  unsigned jobs = 1;

  /// verify: power-nonneg, power-positive, cesaro, irr, real, nilpotent,
  /// weakly-stochastic, eventual-perron, distinct-powers, all.
  std::string theorem = "all";
  /// transform: row, column, doubly, classify.
  std::string kind = "classify";
  /// mtype: exponent k (0 = least irreducible nonnegative power) and grid.
  unsigned mtype_k = 0;
  int grid_radii = 12;
  int grid_angles = 16;
  /// cesaro: averaging length.
  unsigned cesaro_k = 100000;
  /// irr: largest m in A^(m s p + 1).
  unsigned irr_m_max = 5;
  /// gallery: list, emit, check.
  std::string gallery_action = "list";
  std::string gallery_id;
};

enum ExitCode : int { kPass = 0, kFail = 1, kInconclusive = 2, kInputError = 3 };

/// Batch precedence: fail > input error > inconclusive > pass.
int merge_exit(int a, int b);

/// Runs one command and writes a single JSON report (followed by a newline)
/// to `out` or config.output. Diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv into a RunConfig and runs it. Usage errors exit with 3.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace powermat::cli
