#pragma once

// asymmodes command-line front end. Exit codes: 0 computed, 1 input error,
// 2 computed and infeasible.

#include "asymmodes/asymmodes.hpp"
#include "asymmodes/io.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace asymmodes::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitInfeasible = 2;

/// 17 significant digits, so CSV output round-trips doubles bit for bit.
inline std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string fmt_half(HalfInteger h) {
  if (h.is_integer()) return std::to_string(h.twice / 2);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", h.value());
  return buf;
}

/// Tolerance default, overridable with ASYMMODES_TOL.
inline double default_tolerance() {
  if (const char* env = std::getenv("ASYMMODES_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0.0) return v;
  }
  return kDefaultTol;
}

struct RunConfig {
  std::string command;
  std::string state, target, charges, rep, in_rep, out_rep, channel, coeffs, out;
  double tol = kDefaultTol;
  int steps = 10;
  int twice_j = -1;
  int max_n = 8;
  std::uint64_t seed = 0;
  int rank = 4;
  bool oracle = false;
  std::string format = "json";
};

/// ||rho^(k)|| table of psi_N = sum_{n=1..N} |n> / sqrt(N) for N = 1..max_n.
inline std::string psi_table_csv(int max_n) {
  std::ostringstream os;
  os << "N,k,F\n";
  for (int n = 1; n <= max_n; ++n) {
    U1Representation rep;
    for (int c = 1; c <= n; ++c) rep.charges.push_back(c);
    const auto rho = DensityMatrix::pure(ComplexVector::Ones(n));
    for (int k = -n; k <= n; ++k) os << n << "," << k << "," << fmt_double(u1_mode_monotone(rho, rep, k)) << "\n";
  }
  return os.str();
}

namespace detail {

struct Outcome {
  std::string text;
  int code = kExitOk;
};

inline void require(const std::string& value, const char* flag) {
  if (value.empty()) throw io::InputError(std::string("missing required option ") + flag);
}

inline Outcome u1_decompose(const RunConfig& c) {
  const auto rho = io::state_from_json(io::read_json_file(c.state), std::max(c.tol, 1e-9));
  const auto rep = io::charges_from_json(io::read_json_file(c.charges));
  if (rep.dim() != rho.dim()) throw io::InputError("state dimension does not match the number of charges");
  const auto spec = u1_mode_spectrum(rho.matrix(), rep);
  if (c.format == "csv") {
    std::ostringstream os;
    os << "k,norm\n";
    for (const auto& [k, n] : spec.norms) os << k << "," << fmt_double(n) << "\n";
    return {os.str()};
  }
  io::json modes = io::json::array(), norms = io::json::object();
  for (const auto& [k, n] : spec.norms) {
    if (n > c.tol) modes.push_back(k);
    norms[std::to_string(k)] = n;
  }
  return {io::json{{"modes", modes}, {"norms", norms}}.dump(2) + "\n"};
}

inline Outcome u1_bound(const RunConfig& c) {
  const double state_tol = std::max(c.tol, 1e-9);
  const auto rho = io::state_from_json(io::read_json_file(c.state), state_tol);
  const auto sigma = io::state_from_json(io::read_json_file(c.target), state_tol);
  const auto rep = io::charges_from_json(io::read_json_file(c.charges));
  if (rep.dim() != rho.dim() || rep.dim() != sigma.dim())
    throw io::InputError("state dimensions do not match the number of charges");
  const auto b = u1_transition_bound(rho, sigma, rep, c.tol);
  std::ostringstream os;
  os << "k,bound\n";
  for (const auto& [k, v] : b.per_mode) os << k << "," << fmt_double(v) << "\n";
  os << "overall," << fmt_double(b.overall) << "\n";
  return {os.str(), b.overall > 0.0 ? kExitOk : kExitInfeasible};
}

inline Outcome su2_tensor_basis(const RunConfig& c) {
  const auto rep = io::rep_from_json(io::read_json_file(c.rep));
  return {io::to_json(tensor_basis_general(rep)).dump() + "\n"};
}

inline Outcome su2_channel_reduce(const RunConfig& c) {
  const auto e = io::channel_from_json(io::read_json_file(c.channel));
  const auto in = io::rep_from_json(io::read_json_file(c.in_rep));
  const auto out = io::rep_from_json(io::read_json_file(c.out_rep));
  if (in.dim() != e.in_dim() || out.dim() != e.out_dim())
    throw io::InputError("channel dimensions do not match the representations");
  const auto red = reduce_covariant(e, in, out);
  io::json coeffs = io::json::object();
  for (const auto& [mu, block] : red.coefficients.blocks) coeffs[fmt_half(mu)] = io::to_json(block);
  return {io::json{{"residual", red.residual}, {"coefficients", coeffs}}.dump(2) + "\n"};
}

inline Outcome su2_monotones(const RunConfig& c) {
  const auto rho = io::state_from_json(io::read_json_file(c.state), std::max(c.tol, 1e-9));
  const auto rep = io::rep_from_json(io::read_json_file(c.rep));
  if (rep.dim() != rho.dim()) throw io::InputError("state dimension does not match the representation");
  std::ostringstream os;
  os << "mu,m,F\n";
  for (const auto& [label, f] : mode_monotone_table(rho.matrix(), rep).entries)
    os << fmt_half(label.mu) << "," << fmt_half(label.m) << "," << fmt_double(f) << "\n";
  return {os.str()};
}

inline Outcome su2_psucc(const RunConfig& c) {
  if (c.twice_j < 0) throw io::InputError("missing required option --twice-j");
  const auto j = HalfInteger::from_twice(c.twice_j);
  const auto rho = io::state_from_json(io::read_json_file(c.state), std::max(c.tol, 1e-9));
  if (rho.dim() != j.dim()) throw io::InputError("state dimension does not match 2j+1");
  const auto r = distinguish_success_probability(rho.matrix(), j, c.oracle);
  io::json out{{"formula", r.formula}};
  if (r.oracle) {
    out["oracle"] = *r.oracle;
    out["delta"] = *r.delta;
    out["discrepancy"] = r.discrepancy;
  }
  return {out.dump(2) + "\n"};
}

inline Outcome rf_degrade(const RunConfig& c) {
  const auto rho = io::state_from_json(io::read_json_file(c.state), std::max(c.tol, 1e-9));
  const auto j = HalfInteger::from_twice(static_cast<int>(rho.dim()) - 1);
  if (c.steps < 0) throw io::InputError("--steps must be non-negative");
  std::optional<DegradationModel> model;
  try {
    model.emplace(j, io::coefficients_from_json(io::read_json_file(c.coeffs)));
  } catch (const InvalidInput& e) {
    throw io::InputError(e.what());
  }
  const auto t = degrade_trajectory(rho.matrix(), *model, c.steps);
  std::ostringstream os;
  os << "k,mu,m,re,im\n";
  for (const auto& s : t.steps)
    for (const auto& [label, v] : s.expectations)
      os << s.k << "," << fmt_half(label.mu) << "," << fmt_half(label.m) << "," << fmt_double(v.real()) << ","
         << fmt_double(v.imag()) << "\n";
  return {os.str()};
}

inline Outcome batch_psi_table(const RunConfig& c) {
  if (c.max_n < 1) throw io::InputError("--max-n must be >= 1");
  return {psi_table_csv(c.max_n)};
}

inline Outcome batch_random_channel(const RunConfig& c) {
  const auto in = io::rep_from_json(io::read_json_file(c.in_rep));
  const auto out = io::rep_from_json(io::read_json_file(c.out_rep));
  if (c.rank < 1) throw io::InputError("--rank must be >= 1");
  Rng rng(c.seed);
  return {io::to_json(random_covariant_channel(in, out, rng, c.rank)).dump() + "\n"};
}

}  // namespace detail

/// Runs the command in `config`; output goes to config.out or `out`.
inline int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err) {
  using Handler = std::function<detail::Outcome(const RunConfig&)>;
  static const std::vector<std::pair<std::string, Handler>> handlers = {
      {"u1 decompose", detail::u1_decompose},      {"u1 bound", detail::u1_bound},
      {"su2 tensor-basis", detail::su2_tensor_basis}, {"su2 channel-reduce", detail::su2_channel_reduce},
      {"su2 monotones", detail::su2_monotones},    {"su2 psucc", detail::su2_psucc},
      {"rf degrade", detail::rf_degrade},          {"batch psi-table", detail::batch_psi_table},
      {"batch random-channel", detail::batch_random_channel},
  };
  try {
    if (!(config.tol > 0.0)) throw io::InputError("--tol must be positive");
    for (const auto& [name, handler] : handlers) {
      if (name != config.command) continue;
      const auto result = handler(config);
      if (config.out.empty()) {
        out << result.text;
      } else {
        std::ofstream f(config.out, std::ios::binary);
        if (!f) throw io::InputError(config.out + ": cannot open for writing");
        f << result.text;
      }
      return result.code;
    }
    throw io::InputError("unknown command '" + config.command + "'");
  } catch (const io::InputError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitInputError;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Modes of asymmetry for U(1) and SU(2): decompositions, monotones, bounds"};
  app.require_subcommand(1);
  RunConfig cfg;
  cfg.tol = default_tolerance();

  auto add_tol = [&](CLI::App* sub) {
    sub->add_option("--tol", cfg.tol, "Numerical tolerance (env ASYMMODES_TOL)");
    sub->add_option("--out", cfg.out, "Write output to this file instead of stdout");
  };
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help) {
    auto* sub = parent->add_subcommand(name, help);
    sub->callback([&cfg, parent, name] { cfg.command = parent->get_name() + " " + name; });
    add_tol(sub);
    return sub;
  };

  auto* u1 = app.add_subcommand("u1", "U(1) mode decomposition and transition bounds");
  u1->require_subcommand(1);
  auto* dec = leaf(u1, "decompose", "Mode norms ||rho^(k)|| of a state");
  dec->add_option("--state", cfg.state, "State JSON")->required();
  dec->add_option("--charges", cfg.charges, "Charges JSON")->required();
  dec->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  auto* bnd = leaf(u1, "bound", "Per-mode bounds on the success probability of rho -> sigma");
  bnd->add_option("--from", cfg.state, "Source state JSON")->required();
  bnd->add_option("--to", cfg.target, "Target state JSON")->required();
  bnd->add_option("--charges", cfg.charges, "Charges JSON")->required();

  auto* su2 = app.add_subcommand("su2", "SU(2) tensor bases, channels and monotones");
  su2->require_subcommand(1);
  auto* tb = leaf(su2, "tensor-basis", "Irreducible tensor operator basis of a representation");
  tb->add_option("--rep", cfg.rep, "Representation JSON")->required();
  auto* cr = leaf(su2, "channel-reduce", "Coefficient matrices c^(mu) of a covariant channel");
  cr->add_option("--channel", cfg.channel, "Channel JSON")->required();
  cr->add_option("--in-rep", cfg.in_rep, "Input representation JSON")->required();
  cr->add_option("--out-rep", cfg.out_rep, "Output representation JSON")->required();
  auto* mono = leaf(su2, "monotones", "Table of F_{mu,m} = ||rho^(mu,m)||");
  mono->add_option("--state", cfg.state, "State JSON")->required();
  mono->add_option("--rep", cfg.rep, "Representation JSON")->required();
  auto* ps = leaf(su2, "psucc", "Success probability of distinguishing sigma_z eigenstates");
  ps->add_option("--state", cfg.state, "Spin-j frame state JSON")->required();
  ps->add_option("--twice-j", cfg.twice_j, "2j of the frame")->required();
  ps->add_flag("--oracle", cfg.oracle, "Cross-check against the exact twirl");

  auto* rf = app.add_subcommand("rf", "Reference-frame degradation");
  rf->require_subcommand(1);
  auto* deg = leaf(rf, "degrade", "Tensor expectations along a degradation trajectory");
  deg->add_option("--state", cfg.state, "Spin-j frame state JSON")->required();
  deg->add_option("--coeffs", cfg.coeffs, "Coefficient JSON")->required();
  deg->add_option("--steps", cfg.steps, "Number of uses K")->required();

  auto* batch = app.add_subcommand("batch", "Regenerate test vectors");
  batch->require_subcommand(1);
  auto* psi = leaf(batch, "psi-table", "Monotone table of psi_N for N = 1..max-n (CSV)");
  psi->add_option("--max-n", cfg.max_n, "Largest N");
  auto* rnd = leaf(batch, "random-channel", "Seeded random covariant channel (Liouville JSON)");
  rnd->add_option("--in-rep", cfg.in_rep, "Input representation JSON")->required();
  rnd->add_option("--out-rep", cfg.out_rep, "Output representation JSON")->required();
  rnd->add_option("--seed", cfg.seed, "RNG seed");
  rnd->add_option("--rank", cfg.rank, "Kraus rank of the pre-twirl channel");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return dispatch(cfg, out, err);
}

}  // namespace asymmodes::cli
