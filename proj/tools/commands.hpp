#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nvqm/nvqm.hpp"

namespace nvqm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

/// Raised for bad flags, unparseable state specs, and IO failures; maps to exit 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepConfig {
  int points = 101;
  double lo = 0.0;
  double hi = 0.0;
  std::optional<std::string> out;  // stdout when empty
  std::uint64_t seed = 1;
  std::uint64_t shots = 100000;
};

/// Grid value k of n over [lo, hi]; the endpoints are exact.
double grid_point(double lo, double hi, int k, int n);

/// Numeric CSV field: 12 significant digits, '.' separator.
std::string format_number(double v);

std::string schmidt_sweep_csv(const SweepConfig& cfg);
std::string witness_sweep_csv(const SweepConfig& cfg);
std::string dephase_csv(const SweepConfig& cfg, double t2e);

/// Writes text to cfg.out via a temporary file renamed on success, or to
/// `fallback` when no path is set. Throws UsageError on IO failure.
void emit(const SweepConfig& cfg, const std::string& text, std::ostream& fallback);

/// `schmidt:<chi>` | `werner:<q>` | `random:<seed>`, decimal literals only.
DensityMatrix parse_state_spec(const std::string& spec);

struct ProtocolReport {
  CountsTable counts_q;
  CountsTable counts_r;
  KappaEstimate kappa_q;
  KappaEstimate kappa_r;
  double me_estimate = 0.0;
  double me_exact = 0.0;
  double u_exact = 0.0;
};

ProtocolReport run_protocol_report(const DensityMatrix& rho, std::uint64_t shots, std::uint64_t seed);
void print_protocol_report(const std::string& spec, const ProtocolReport& rep, std::ostream& out);

struct CheckOptions {
  // Added to the closed-form uncertainty; used to confirm the suite
  // detects a corrupted implementation.
  double u_offset = 0.0;
};

struct Offender {
  std::uint64_t seed = 0;
  std::string kind;
  std::string fingerprint;
  double violation = 0.0;
};

struct InvariantResult {
  std::string name;
  double tolerance = 0.0;
  std::uint64_t samples = 0;
  double max_violation = 0.0;
  std::vector<Offender> offenders;  // first few only

  bool passed() const { return max_violation <= tolerance; }
};

/// State i uses seed derive_seed(seed, i); even i draw Ginibre mixed
/// states, odd i Haar pure states.
std::vector<InvariantResult> run_check(std::uint64_t trials, std::uint64_t seed, const CheckOptions& opts = {});
bool print_check_report(const std::vector<InvariantResult>& results, std::ostream& out);

/// 64-bit FNV-1a hash of the matrix entries, hex.
std::string fingerprint(const DensityMatrix& rho);

/// Full command-line entry point; returns the process exit code.
int run_main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace nvqm::cli
