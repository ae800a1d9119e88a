#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "nvqm/entropic.hpp"
#include "nvqm/qcore.hpp"
#include "nvqm/states.hpp"

namespace nvqm {

/// Raised when a pulse or sequence is used outside its contract.
class ProtocolMisuse : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class NuclearCondition { Down, Up, Unconditional };
enum class ElectronCondition { Zero, MinusOne, Unconditional };

// Pulses are ideal instantaneous gates on the {|0>, |-1>} x {down, up}
// register. A rotation by theta acts on the addressed two-level transition
// with the real matrix
//
//   R(theta) = [[cos theta/2, -sin theta/2],
//               [sin theta/2,  cos theta/2]]
//
// (lower level first) and as the identity on every other level.

/// 532 nm reset: rho -> |0><0| (x) tr_e(rho).
struct LaserPolarize {};

/// Electron rotation, selective on the nuclear state.
struct MwRotation {
  double angle = 0.0;
  NuclearCondition condition = NuclearCondition::Unconditional;
};

/// Nuclear rotation, selective on the electron state.
struct RfRotation {
  double angle = 0.0;
  ElectronCondition condition = ElectronCondition::Unconditional;
};

/// Unconditional Hadamard on the electron; sigma1 = H sigma3 H.
struct ElectronHadamard {};

/// Projective electron readout in {|0>, |-1>}; only run_protocol executes it.
struct MeasureElectronZ {};

using PulseOp = std::variant<LaserPolarize, MwRotation, RfRotation, ElectronHadamard, MeasureElectronZ>;

struct ProtocolSequence {
  std::string label;
  std::vector<PulseOp> ops;
};

std::string describe(const PulseOp& op);

/// Unitary of a rotation pulse or Hadamard in the joint basis. Throws
/// ProtocolMisuse for non-unitary pulses.
ComplexMatrix pulse_unitary(const PulseOp& op);

/// Throws ProtocolMisuse for MeasureElectronZ.
DensityMatrix apply_pulse(const DensityMatrix& rho, const PulseOp& op);

/// Applies every pulse in order; the sequence must not contain readouts.
DensityMatrix apply_sequence(const DensityMatrix& rho, const ProtocolSequence& seq);

/// Laser reset, nuclear-to-electron swap, laser reset, MW 2chi on nuclear-down,
/// then RF pi on electron |-1>. Yields the Schmidt state from any nuclear input.
ProtocolSequence prepare_schmidt_sequence(SchmidtAngle chi);

/// Laser reset, MW pi on nuclear-up, RF -pi on electron |-1>. Carries a
/// nuclear state a|down> + b|up> to a|0> + b|-1> on the electron and leaves
/// the nucleus in |down>.
ProtocolSequence map_nuclear_to_electron_sequence();

/// Readout on the electron, state transfer, and a second readout of the same
/// observable (sigma1 or sigma3).
ProtocolSequence measurement_sequence(const PauliObservable& basis);

/// Paired readout counts. First index is the first electron readout, second
/// index the readout after mapping; 0 means eigenvalue +1.
struct CountsTable {
  std::uint64_t n00 = 0;
  std::uint64_t n01 = 0;
  std::uint64_t n10 = 0;
  std::uint64_t n11 = 0;

  std::uint64_t shots() const noexcept { return n00 + n01 + n10 + n11; }
  std::uint64_t disagreements() const noexcept { return n01 + n10; }

  CountsTable& operator+=(const CountsTable& o) noexcept {
    n00 += o.n00;
    n01 += o.n01;
    n10 += o.n10;
    n11 += o.n11;
    return *this;
  }
  friend CountsTable operator+(CountsTable a, const CountsTable& b) noexcept { return a += b; }
  friend bool operator==(const CountsTable&, const CountsTable&) = default;
};

struct KappaEstimate {
  double kappa = 0.0;
  std::uint64_t shots = 0;
  double std_err = 0.0;  // sqrt(kappa (1 - kappa) / shots)
};

/// Throws std::invalid_argument on an empty table.
KappaEstimate estimate_kappa(const CountsTable& counts);

/// Samples `shots` runs of measurement_sequence(basis) on rho. Deterministic
/// per seed. basis must be sigma1 or sigma3; shots must be >= 1.
CountsTable run_protocol(const DensityMatrix& rho, const PauliObservable& basis,
                         std::uint64_t shots, std::uint64_t seed);

/// Splits the shots over `workers` seeds derived from `seed` and sums the
/// tables. Deterministic for fixed (seed, workers).
CountsTable run_protocol_parallel(const DensityMatrix& rho, const PauliObservable& basis,
                                  std::uint64_t shots, std::uint64_t seed, unsigned workers);

/// Exact Born probabilities of Lambda (x) Lambda outcomes ordered
/// (++, +-, -+, --).
std::array<double, 4> joint_distribution(const DensityMatrix& rho, const PauliObservable& basis);

/// H(kappa_Q) + H(kappa_R) from measured disagreement fractions.
double estimate_me(const CountsTable& counts_q, const CountsTable& counts_r);

class DephasingModel {
 public:
  /// Throws std::invalid_argument unless t2e > 0 and t >= 0 (seconds).
  DephasingModel(double t2e, double t);

  double t2e() const noexcept { return t2e_; }
  double t() const noexcept { return t_; }
  /// Coherence factor exp(-t / (2 T2e)).
  double coherence_factor() const;

 private:
  double t2e_;
  double t_;
};

/// Electron phase damping: entries linking |0> and |-1> on the electron are
/// scaled by exp(-t / (2 T2e)); electron-diagonal blocks are untouched.
DensityMatrix dephase(const DensityMatrix& rho, const DephasingModel& model);

}  // namespace nvqm
