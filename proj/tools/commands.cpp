#include "commands.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <regex>
#include <sstream>

namespace nvqm::cli {

namespace {

void check_points(const SweepConfig& cfg) {
  if (cfg.points < 2) throw UsageError("--points must be at least 2");
  if (!(cfg.hi > cfg.lo)) throw UsageError("sweep range must be nonempty");
}

std::string row(std::initializer_list<std::string> fields) {
  std::string line;
  for (const auto& f : fields) {
    if (!line.empty()) line += ',';
    line += f;
  }
  line += '\n';
  return line;
}

}  // namespace

double grid_point(double lo, double hi, int k, int n) {
  if (k == n - 1) return hi;
  return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
}

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  return fmt::format("{:.12g}", v);
}

std::string schmidt_sweep_csv(const SweepConfig& cfg) {
  check_points(cfg);
  std::string csv = "chi,U,Ub,ME,C\n";
  for (int k = 0; k < cfg.points; ++k) {
    const double chi = grid_point(cfg.lo, cfg.hi, k, cfg.points);
    const DensityMatrix rho = schmidt_state(SchmidtAngle(chi));
    const UncertaintyReport rep = uncertainty_report(rho);
    csv += row({format_number(chi), format_number(rep.u), format_number(rep.ub), format_number(rep.me),
                format_number(concurrence(rho))});
  }
  return csv;
}

std::string witness_sweep_csv(const SweepConfig& cfg) {
  check_points(cfg);
  std::string csv = "q,U,Ub,ME,C,certified\n";
  for (int k = 0; k < cfg.points; ++k) {
    const double q = grid_point(cfg.lo, cfg.hi, k, cfg.points);
    const DensityMatrix rho = werner_state(WernerWeight(q));
    const UncertaintyReport rep = uncertainty_report(rho);
    const WitnessVerdict verdict = witness(rep);
    csv += row({format_number(q), format_number(rep.u), format_number(rep.ub), format_number(rep.me),
                format_number(concurrence(rho)), verdict.entangled_certified ? "true" : "false"});
  }
  return csv;
}

std::string dephase_csv(const SweepConfig& cfg, double t2e) {
  if (!(t2e > 0.0) || !std::isfinite(t2e)) throw UsageError("--t2e must be positive");
  check_points(cfg);
  const DensityMatrix bell = bell_state();
  std::string csv = "t,U\n";
  for (int k = 0; k < cfg.points; ++k) {
    const double t = grid_point(cfg.lo, cfg.hi, k, cfg.points);
    const UncertaintyReport rep = uncertainty_report(dephase(bell, DephasingModel(t2e, t)));
    csv += row({format_number(t), format_number(rep.u)});
  }
  return csv;
}

void emit(const SweepConfig& cfg, const std::string& text, std::ostream& fallback) {
  if (!cfg.out) {
    fallback << text;
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(*cfg.out);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw UsageError("cannot open output file " + tmp.string());
    f << text;
    f.close();
    if (!f) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw UsageError("failed writing output file " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw UsageError("cannot move output into place at " + target.string());
  }
}

DensityMatrix parse_state_spec(const std::string& spec) {
  static const std::regex decimal(R"(^[+-]?(\d+(\.\d*)?|\.\d+)$)");
  static const std::regex integer(R"(^\d+$)");
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw UsageError("state spec must look like family:value, got '" + spec + "'");
  const std::string family = spec.substr(0, colon);
  const std::string value = spec.substr(colon + 1);
  try {
    if (family == "schmidt" || family == "werner") {
      if (!std::regex_match(value, decimal)) throw UsageError("expected a decimal literal in '" + spec + "'");
      const double v = std::stod(value);
      return family == "schmidt" ? schmidt_state(SchmidtAngle(v)) : werner_state(WernerWeight(v));
    }
    if (family == "random") {
      if (!std::regex_match(value, integer)) throw UsageError("expected an integer seed in '" + spec + "'");
      return random_mixed(std::stoull(value));
    }
  } catch (const std::out_of_range& e) {
    throw UsageError(std::string("state spec '") + spec + "': " + e.what());
  }
  throw UsageError("unknown state family '" + family + "' (schmidt, werner, random)");
}

ProtocolReport run_protocol_report(const DensityMatrix& rho, std::uint64_t shots, std::uint64_t seed) {
  if (shots < 1) throw UsageError("--shots must be at least 1");
  ProtocolReport rep;
  rep.counts_q = run_protocol(rho, PauliObservable::sigma1(), shots, derive_seed(seed, 0));
  rep.counts_r = run_protocol(rho, PauliObservable::sigma3(), shots, derive_seed(seed, 1));
  rep.kappa_q = estimate_kappa(rep.counts_q);
  rep.kappa_r = estimate_kappa(rep.counts_r);
  rep.me_estimate = estimate_me(rep.counts_q, rep.counts_r);
  const UncertaintyReport exact = uncertainty_report(rho);
  rep.me_exact = exact.me;
  rep.u_exact = exact.u;
  return rep;
}

void print_protocol_report(const std::string& spec, const ProtocolReport& rep, std::ostream& out) {
  const auto table = [&](const char* name, const CountsTable& c) {
    out << fmt::format("{} counts: n00={} n01={} n10={} n11={} shots={}\n", name, c.n00, c.n01, c.n10, c.n11,
                       c.shots());
  };
  out << "state: " << spec << '\n';
  table("sigma1", rep.counts_q);
  table("sigma3", rep.counts_r);
  out << fmt::format("kappa_Q = {} +/- {}\n", format_number(rep.kappa_q.kappa), format_number(rep.kappa_q.std_err));
  out << fmt::format("kappa_R = {} +/- {}\n", format_number(rep.kappa_r.kappa), format_number(rep.kappa_r.std_err));
  out << "ME_estimate = " << format_number(rep.me_estimate) << '\n';
  out << "ME_exact = " << format_number(rep.me_exact) << '\n';
  out << "U_exact = " << format_number(rep.u_exact) << '\n';
}

std::string fingerprint(const DensityMatrix& rho) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& z : rho.matrix().entries()) {
    for (double part : {z.real(), z.imag()}) {
      unsigned char bytes[sizeof(double)];
      std::memcpy(bytes, &part, sizeof(double));
      for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
      }
    }
  }
  return fmt::format("{:016x}", h);
}

std::vector<InvariantResult> run_check(std::uint64_t trials, std::uint64_t seed, const CheckOptions& opts) {
  if (trials < 1) throw UsageError("--trials must be at least 1");

  std::vector<InvariantResult> results = {
      {"uncertainty_lower_bound", 1e-9, 0, 0.0, {}},        // Ub - U
      {"closed_vs_generic", 1e-8, 0, 0.0, {}},      // |U_closed - U_generic|
      {"me_dominance", 1e-9, 0, 0.0, {}},           // U - ME
      {"qubit_marginal_entropy", 1e-10, 0, 0.0, {}},  // |H((1-|y|)/2) - S(rho_B)|
      {"bound_routes", 1e-10, 0, 0.0, {}},          // |lower_bound - lower_bound_generic|
      {"measured_entropy_floor", 1e-9, 0, 0.0, {}},  // max(-S(L|B), S(A|B) - S(L|B))
      {"post_measurement_idempotent", 1e-12, 0, 0.0, {}},
      {"report_consistency", 1e-12, 0, 0.0, {}},    // |U - S(Q|B) - S(R|B)|
      {"witness_soundness", 0.0, 0, 0.0, {}},       // certified with C <= 1e-9
  };
  constexpr std::size_t kMaxOffenders = 5;

  const auto q = PauliObservable::sigma1();
  const auto r = PauliObservable::sigma3();
  for (std::uint64_t i = 0; i < trials; ++i) {
    const std::uint64_t s = derive_seed(seed, i);
    const bool mixed = i % 2 == 0;
    const DensityMatrix rho = mixed ? random_mixed(s) : random_pure(s);
    const BlochForm b = bloch_decompose(rho);
    const UncertaintyReport rep = uncertainty_report(rho);

    const double u_generic = uncertainty_generic(rho, q, r);
    const double u_closed = uncertainty_closed(b) + opts.u_offset;

    double post_defect = 0.0;
    double floor_defect = 0.0;
    for (const auto& lam : {q, r}) {
      const DensityMatrix once = post_measurement_state(rho, lam);
      const DensityMatrix twice = post_measurement_state(once, lam);
      post_defect = std::max(post_defect, max_abs_diff(once.matrix(), twice.matrix()));
      post_defect = std::max(post_defect, std::abs(once.matrix().trace().real() - 1.0));
      const double s_lb = conditional_entropy(once);
      floor_defect = std::max({floor_defect, -s_lb, rep.s_a_given_b - s_lb});
    }
    const bool unsound = witness(rep).entangled_certified && concurrence(rho) <= 1e-9;

    const double values[] = {
        rep.ub - u_closed,
        std::abs(u_closed - u_generic),
        u_closed - rep.me,
        std::abs(binary_entropy((1.0 - b.y_norm()) / 2.0) - von_neumann_entropy(partial_trace(rho, Subsystem::B))),
        std::abs(rep.ub - lower_bound_generic(rho, q, r)),
        floor_defect,
        post_defect,
        std::abs(rep.u - rep.s_q_given_b - rep.s_r_given_b),
        unsound ? 1.0 : 0.0,
    };
    for (std::size_t k = 0; k < results.size(); ++k) {
      auto& res = results[k];
      ++res.samples;
      res.max_violation = std::max(res.max_violation, values[k]);
      if (values[k] > res.tolerance && res.offenders.size() < kMaxOffenders) {
        res.offenders.push_back({s, mixed ? "mixed" : "pure", fingerprint(rho), values[k]});
      }
    }
  }
  return results;
}

bool print_check_report(const std::vector<InvariantResult>& results, std::ostream& out) {
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed();
    out << fmt::format("{:<28} samples={} max_violation={:.3e} tol={:.0e} {}\n", r.name, r.samples,
                       r.max_violation, r.tolerance, r.passed() ? "PASS" : "FAIL");
    for (const auto& o : r.offenders) {
      out << fmt::format("    offending seed={} kind={} fingerprint={} violation={:.3e}\n", o.seed, o.kind,
                         o.fingerprint, o.violation);
    }
  }
  out << (all ? "all invariants hold\n" : "invariant violations found\n");
  return all;
}

int run_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entropic uncertainty and entanglement witness on an N-V electron/nuclear spin pair"};
  app.require_subcommand(1);

  SweepConfig cfg;
  std::string out_path;
  double t2e = 350e-6;
  std::uint64_t trials = 10000;
  std::string state_spec;
  double u_offset = 0.0;

  const auto add_sweep_flags = [&](CLI::App* sub) {
    sub->add_option("--points", cfg.points, "Grid points (>= 2)")->capture_default_str();
    sub->add_option("--out", out_path, "Output CSV path (stdout if omitted)");
  };

  auto* schmidt = app.add_subcommand("schmidt-sweep", "U, Ub, ME and C over the Schmidt family, chi in [0, pi/2]");
  add_sweep_flags(schmidt);
  auto* wit = app.add_subcommand("witness-sweep", "Witness verdicts over the Werner family, q in [0, 1]");
  add_sweep_flags(wit);
  auto* deph = app.add_subcommand("dephase", "U of the dephased Bell state over t in [0, 10 T2e]");
  add_sweep_flags(deph);
  deph->add_option("--t2e", t2e, "Electron dephasing time T2e in seconds")->capture_default_str();
  auto* proto = app.add_subcommand("protocol", "Monte Carlo readout protocol and ME estimate");
  proto->add_option("state", state_spec, "schmidt:<chi> | werner:<q> | random:<seed>")->required();
  proto->add_option("--shots", cfg.shots, "Shots per basis")->capture_default_str();
  proto->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  auto* check = app.add_subcommand("check", "Randomized invariant suite");
  check->add_option("--trials", trials, "Random states")->capture_default_str();
  check->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  check->add_option("--inject-u-offset", u_offset, "Corrupt the closed-form U (self-test)")->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (!out_path.empty()) cfg.out = out_path;
    if (schmidt->parsed()) {
      cfg.lo = 0.0;
      cfg.hi = std::numbers::pi / 2;
      emit(cfg, schmidt_sweep_csv(cfg), out);
    } else if (wit->parsed()) {
      cfg.lo = 0.0;
      cfg.hi = 1.0;
      emit(cfg, witness_sweep_csv(cfg), out);
    } else if (deph->parsed()) {
      if (!(t2e > 0.0)) throw UsageError("--t2e must be positive");
      cfg.lo = 0.0;
      cfg.hi = 10.0 * t2e;
      emit(cfg, dephase_csv(cfg, t2e), out);
    } else if (proto->parsed()) {
      const DensityMatrix rho = parse_state_spec(state_spec);
      print_protocol_report(state_spec, run_protocol_report(rho, cfg.shots, cfg.seed), out);
    } else if (check->parsed()) {
      const auto results = run_check(trials, cfg.seed, CheckOptions{u_offset});
      return print_check_report(results, out) ? kExitOk : kExitViolation;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace nvqm::cli
