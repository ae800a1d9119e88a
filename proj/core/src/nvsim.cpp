#include "nvqm/nvsim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include "nvqm/random.hpp"

namespace nvqm {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Joint index of |e, n>, e = 1 for |-1>, n = 1 for |up>.
constexpr std::size_t index_of(std::size_t e, std::size_t n) { return 2 * e + n; }

// Conditional probabilities this close to 0 or 1 are rounding residue.
constexpr double kProbabilitySnap = 1e-14;

void embed_rotation(ComplexMatrix& u, std::size_t lower, std::size_t upper, double angle) {
  const double c = std::cos(angle / 2);
  const double s = std::sin(angle / 2);
  u(lower, lower) = c;
  u(lower, upper) = -s;
  u(upper, lower) = s;
  u(upper, upper) = c;
}

ComplexMatrix laser_reset(const ComplexMatrix& m) {
  ComplexMatrix out(4, 4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      out(index_of(0, i), index_of(0, j)) = m(index_of(0, i), index_of(0, j)) + m(index_of(1, i), index_of(1, j));
  return out;
}

// Linear action of a non-measurement pulse on an (unnormalized) operator.
ComplexMatrix apply_linear(const ComplexMatrix& m, const PulseOp& op) {
  if (std::holds_alternative<MeasureElectronZ>(op)) {
    throw ProtocolMisuse("MeasureElectronZ can only be executed by run_protocol");
  }
  if (std::holds_alternative<LaserPolarize>(op)) return laser_reset(m);
  return conjugate_by(pulse_unitary(op), m);
}

ComplexMatrix electron_z_projector(std::size_t outcome) {
  ComplexMatrix p(4, 4);
  p(index_of(outcome, 0), index_of(outcome, 0)) = 1.0;
  p(index_of(outcome, 1), index_of(outcome, 1)) = 1.0;
  return p;
}

double snap(double p) {
  if (p < kProbabilitySnap) return 0.0;
  if (p > 1.0 - kProbabilitySnap) return 1.0;
  return p;
}

bool is_supported_basis(const PauliObservable& basis) {
  return basis == PauliObservable::sigma1() || basis == PauliObservable::sigma3();
}

// Outcome statistics of a sequence with exactly two electron readouts:
// P(first = 0) and P(second = 0 | first = m).
struct ReadoutTree {
  double p_first0 = 0.0;
  std::array<double, 2> p_second0_given{};
};

ReadoutTree evaluate_two_readouts(const DensityMatrix& rho, const ProtocolSequence& seq) {
  const auto first_it = std::find_if(seq.ops.begin(), seq.ops.end(),
                                     [](const PulseOp& op) { return std::holds_alternative<MeasureElectronZ>(op); });
  if (first_it == seq.ops.end()) throw ProtocolMisuse("measurement sequence has no readout");
  const auto second_it = std::find_if(std::next(first_it), seq.ops.end(),
                                      [](const PulseOp& op) { return std::holds_alternative<MeasureElectronZ>(op); });
  if (second_it == seq.ops.end()) throw ProtocolMisuse("measurement sequence needs two readouts");
  if (std::find_if(std::next(second_it), seq.ops.end(), [](const PulseOp& op) {
        return std::holds_alternative<MeasureElectronZ>(op);
      }) != seq.ops.end()) {
    throw ProtocolMisuse("measurement sequence has more than two readouts");
  }

  ComplexMatrix m = rho.matrix();
  for (auto it = seq.ops.begin(); it != first_it; ++it) m = apply_linear(m, *it);

  ReadoutTree tree;
  const double total = m.trace().real();
  std::array<double, 2> p_first{};
  for (std::size_t outcome = 0; outcome < 2; ++outcome) {
    const ComplexMatrix proj = electron_z_projector(outcome);
    ComplexMatrix branch = proj * m * proj;
    p_first[outcome] = branch.trace().real() / total;
    for (auto it = std::next(first_it); it != second_it; ++it) branch = apply_linear(branch, *it);
    const double w = branch.trace().real();
    const double w0 = (electron_z_projector(0) * branch).trace().real();
    // Unreachable branches keep a placeholder; they are never sampled.
    tree.p_second0_given[outcome] = w > 0.0 ? snap(std::clamp(w0 / w, 0.0, 1.0)) : 1.0;
  }
  tree.p_first0 = snap(std::clamp(p_first[0], 0.0, 1.0));
  return tree;
}

}  // namespace

std::string describe(const PulseOp& op) {
  const auto ncond = [](NuclearCondition c) {
    switch (c) {
      case NuclearCondition::Down: return "|down>";
      case NuclearCondition::Up: return "|up>";
      case NuclearCondition::Unconditional: return "any";
    }
    return "?";
  };
  const auto econd = [](ElectronCondition c) {
    switch (c) {
      case ElectronCondition::Zero: return "|0>";
      case ElectronCondition::MinusOne: return "|-1>";
      case ElectronCondition::Unconditional: return "any";
    }
    return "?";
  };
  std::ostringstream out;
  std::visit(Overloaded{
                 [&](const LaserPolarize&) { out << "laser-polarize"; },
                 [&](const MwRotation& p) { out << "mw(" << p.angle << ", nucleus " << ncond(p.condition) << ")"; },
                 [&](const RfRotation& p) { out << "rf(" << p.angle << ", electron " << econd(p.condition) << ")"; },
                 [&](const ElectronHadamard&) { out << "hadamard"; },
                 [&](const MeasureElectronZ&) { out << "readout"; },
             },
             op);
  return out.str();
}

ComplexMatrix pulse_unitary(const PulseOp& op) {
  ComplexMatrix u = ComplexMatrix::identity(4);
  std::visit(Overloaded{
                 [&](const MwRotation& p) {
                   if (!std::isfinite(p.angle)) throw ProtocolMisuse("MW rotation angle must be finite");
                   for (std::size_t n = 0; n < 2; ++n) {
                     const bool addressed = p.condition == NuclearCondition::Unconditional ||
                                            (p.condition == NuclearCondition::Up) == (n == 1);
                     if (addressed) embed_rotation(u, index_of(0, n), index_of(1, n), p.angle);
                   }
                 },
                 [&](const RfRotation& p) {
                   if (!std::isfinite(p.angle)) throw ProtocolMisuse("RF rotation angle must be finite");
                   for (std::size_t e = 0; e < 2; ++e) {
                     const bool addressed = p.condition == ElectronCondition::Unconditional ||
                                            (p.condition == ElectronCondition::MinusOne) == (e == 1);
                     if (addressed) embed_rotation(u, index_of(e, 0), index_of(e, 1), p.angle);
                   }
                 },
                 [&](const ElectronHadamard&) {
                   const double h = std::numbers::sqrt2 / 2;
                   u = tensor(ComplexMatrix(2, 2, {h, h, h, -h}), pauli::identity());
                 },
                 [&](const LaserPolarize&) { throw ProtocolMisuse("laser polarization is not unitary"); },
                 [&](const MeasureElectronZ&) { throw ProtocolMisuse("readout is not unitary"); },
             },
             op);
  return u;
}

DensityMatrix apply_pulse(const DensityMatrix& rho, const PulseOp& op) {
  return DensityMatrix::from_matrix(apply_linear(rho.matrix(), op));
}

DensityMatrix apply_sequence(const DensityMatrix& rho, const ProtocolSequence& seq) {
  ComplexMatrix m = rho.matrix();
  for (const auto& op : seq.ops) m = apply_linear(m, op);
  return DensityMatrix::from_matrix(m);
}

ProtocolSequence prepare_schmidt_sequence(SchmidtAngle chi) {
  return {"prepare-schmidt",
          {
              LaserPolarize{},
              MwRotation{std::numbers::pi, NuclearCondition::Up},
              RfRotation{std::numbers::pi, ElectronCondition::MinusOne},
              LaserPolarize{},
              MwRotation{2.0 * chi.radians(), NuclearCondition::Down},
              RfRotation{std::numbers::pi, ElectronCondition::MinusOne},
          }};
}

ProtocolSequence map_nuclear_to_electron_sequence() {
  // The RF pulse runs about the reversed axis so the transferred amplitude
  // on |-1> keeps its sign; with +pi the map would be a|0> - b|-1>.
  return {"map-nuclear-to-electron",
          {
              LaserPolarize{},
              MwRotation{std::numbers::pi, NuclearCondition::Up},
              RfRotation{-std::numbers::pi, ElectronCondition::MinusOne},
          }};
}

ProtocolSequence measurement_sequence(const PauliObservable& basis) {
  if (!is_supported_basis(basis)) throw std::invalid_argument("protocol basis must be sigma1 or sigma3");
  const bool x_basis = basis == PauliObservable::sigma1();
  ProtocolSequence seq{x_basis ? "measure-sigma1" : "measure-sigma3", {}};
  const auto readout = [&] {
    if (x_basis) seq.ops.emplace_back(ElectronHadamard{});
    seq.ops.emplace_back(MeasureElectronZ{});
    if (x_basis) seq.ops.emplace_back(ElectronHadamard{});
  };
  readout();
  for (const auto& op : map_nuclear_to_electron_sequence().ops) seq.ops.push_back(op);
  if (x_basis) seq.ops.emplace_back(ElectronHadamard{});
  seq.ops.emplace_back(MeasureElectronZ{});
  return seq;
}

KappaEstimate estimate_kappa(const CountsTable& counts) {
  const std::uint64_t n = counts.shots();
  if (n == 0) throw std::invalid_argument("estimate_kappa: empty counts table");
  KappaEstimate k;
  k.shots = n;
  k.kappa = static_cast<double>(counts.disagreements()) / static_cast<double>(n);
  k.std_err = std::sqrt(k.kappa * (1.0 - k.kappa) / static_cast<double>(n));
  return k;
}

CountsTable run_protocol(const DensityMatrix& rho, const PauliObservable& basis, std::uint64_t shots,
                         std::uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("run_protocol: shots must be at least 1");
  const ReadoutTree tree = evaluate_two_readouts(rho, measurement_sequence(basis));

  Rng rng(seed);
  CountsTable counts;
  for (std::uint64_t s = 0; s < shots; ++s) {
    const std::size_t first = rng.uniform() < tree.p_first0 ? 0 : 1;
    const std::size_t second = rng.uniform() < tree.p_second0_given[first] ? 0 : 1;
    switch (2 * first + second) {
      case 0: ++counts.n00; break;
      case 1: ++counts.n01; break;
      case 2: ++counts.n10; break;
      default: ++counts.n11; break;
    }
  }
  return counts;
}

CountsTable run_protocol_parallel(const DensityMatrix& rho, const PauliObservable& basis,
                                  std::uint64_t shots, std::uint64_t seed, unsigned workers) {
  if (shots == 0) throw std::invalid_argument("run_protocol: shots must be at least 1");
  workers = std::max(1u, workers);
  if (workers > shots) workers = static_cast<unsigned>(shots);

  std::vector<CountsTable> partial(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t share = shots / workers + (w < shots % workers ? 1 : 0);
      pool.emplace_back([&, w, share] { partial[w] = run_protocol(rho, basis, share, derive_seed(seed, w)); });
    }
  }
  CountsTable total;
  for (const auto& t : partial) total += t;
  return total;
}

std::array<double, 4> joint_distribution(const DensityMatrix& rho, const PauliObservable& basis) {
  const auto proj = basis.projectors();
  std::array<double, 4> p{};
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) p[2 * a + b] = (rho.matrix() * tensor(proj[a], proj[b])).trace().real();
  return p;
}

double estimate_me(const CountsTable& counts_q, const CountsTable& counts_r) {
  return binary_entropy(estimate_kappa(counts_q).kappa) + binary_entropy(estimate_kappa(counts_r).kappa);
}

DephasingModel::DephasingModel(double t2e, double t) : t2e_(t2e), t_(t) {
  if (!(t2e > 0.0) || !std::isfinite(t2e)) throw std::invalid_argument("dephasing: T2e must be positive");
  if (!(t >= 0.0)) throw std::invalid_argument("dephasing: elapsed time must be nonnegative");
}

double DephasingModel::coherence_factor() const { return std::exp(-t_ / (2.0 * t2e_)); }

DensityMatrix dephase(const DensityMatrix& rho, const DephasingModel& model) {
  const double gamma = model.coherence_factor();
  ComplexMatrix m = rho.matrix();
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c)
      if (r / 2 != c / 2) m(r, c) *= gamma;
  return DensityMatrix::from_matrix(m);
}

}  // namespace nvqm
