// Copyright 2026 hubcd contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Every run prints one JSON summary to stdout
// (config echo, results, wall time); row data goes to --out as CSV with
// %.17g doubles, so a fixed config and seed reproduce files byte for byte.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hubcd/cdsynth.hpp"
#include "hubcd/evolve.hpp"
#include "hubcd/fermion.hpp"
#include "hubcd/gatecount.hpp"
#include "hubcd/lattice.hpp"
#include "hubcd/measure.hpp"
#include "hubcd/oracle.hpp"
#include "hubcd/parallel.hpp"
#include "hubcd/pauli.hpp"
#include "hubcd/rng.hpp"
#include "hubcd/schedule.hpp"
#include "hubcd/stateprep.hpp"
#include "hubcd/statevec.hpp"
#include "hubcd/vqa.hpp"

namespace {

using nlohmann::json;
using namespace hubcd;

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::string>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << header << "\n";
  for (const std::string& r : rows) out << r << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

struct CommonOpts {
  int nx = 1;
  int ny = 1;
  double tau = 1.0;
  double u = 1.5;
};

void add_common(CLI::App* sub, CommonOpts& c) {
  sub->add_option("--nx", c.nx, "Lattice cells in x; supported patches: 1x1, 1x2, 2x1")
      ->capture_default_str();
  sub->add_option("--ny", c.ny, "Lattice cells in y")->capture_default_str();
  sub->add_option("--tau", c.tau, "Hopping amplitude")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--u", c.u, "On-site repulsion at the end of the ramp")
      ->capture_default_str();
}

json common_json(const CommonOpts& c) {
  return json{{"nx", c.nx}, {"ny", c.ny}, {"tau", c.tau}, {"u", c.u}};
}

void emit(const json& summary, std::chrono::steady_clock::time_point t0) {
  json out = summary;
  out["wall_time_s"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  std::printf("%s\n", out.dump(2).c_str());
}

std::string pauli_letters(const PauliString& p) {
  std::string s;
  for (int q = 0; q < p.n_qubits; ++q) s.push_back(p.letter(q));
  return s;
}

// evolve / sweep --------------------------------------------------------

EvolveVariant variant_from_cli(const std::string& name) {
  if (name == "cd") return EvolveVariant::adiabatic_cd;
  return parse_evolve_variant(name);
}

struct EvolveCli {
  CommonOpts common;
  std::string variant = "adiabatic";
  double total_time = 1.0;
  double dt = 0.02;
  int cd_order = 1;
  int record_every = 1;
  std::int64_t shots = 0;
  std::uint64_t seed = 1;
  std::string out;
};

// With --shots > 0, recorded energies come from simulated measurement
// (shots per basis group, readout stream id = step index); otherwise they
// are exact expectations.
void run_evolve_cmd(const EvolveCli& cli,
                    std::chrono::steady_clock::time_point t0) {
  const HoneycombLattice lat = HoneycombLattice::build(cli.common.nx,
                                                       cli.common.ny);
  EvolveOptions opt;
  opt.variant = variant_from_cli(cli.variant);
  opt.total_time = cli.total_time;
  opt.dt = cli.dt;
  opt.cd_order = cli.cd_order;
  opt.record_every = cli.record_every;

  EvolveResult res;
  if (cli.shots <= 0) {
    res = evolve(lat, cli.common.tau, cli.common.u, opt);
  } else {
    const HamiltonianSet ham =
        build_hamiltonians(lat, cli.common.tau, cli.common.u);
    const auto [n_up, n_dn] = half_filling(lat.n_sites);
    const SectorBasis basis = SectorBasis::build(lat.n_sites, n_up, n_dn);
    const SectorHamiltonian hs(basis, site_edge_list(lat), cli.common.tau,
                               cli.common.u);
    res.e_ground = sector_ground_state(hs).energy;

    const Schedule sch(opt.total_time, opt.dt);
    if (opt.record_every < 1)
      throw std::invalid_argument("evolve: record_every must be >= 1");
    const Circuit prep = prep_circuit(lat, cli.common.tau, n_up, n_dn);
    StateVector state = run(prep, {}, StateVector::zero_state(prep.n_qubits));
    res.n_steps = sch.n_steps;
    res.e_initial = expectation_value(ham.h_fh, state.amps).real();

    auto measure_at = [&](int step, const StateVector& s) {
      Rng rng = Rng::stream(cli.seed, static_cast<std::uint64_t>(step));
      const double e = estimate_energy(lat, cli.common.tau, cli.common.u, s,
                                       cli.shots, rng)
                           .energy;
      res.records.push_back(
          {step, step * opt.dt, e,
           residual_energy_pct(res.e_ground, res.e_initial, e)});
    };
    measure_at(0, state);
    for (int j = 1; j <= sch.n_steps; ++j) {
      const double t_mid = sch.midpoint(j);
      trotter_step(state, ham, sch.lambda(t_mid), sch.lambda_dot(t_mid),
                   opt.dt, opt.variant, opt.cd_order);
      if (j % opt.record_every == 0 || j == sch.n_steps) measure_at(j, state);
    }
    res.e_final = res.records.back().energy;
    res.delta_e_pct =
        residual_energy_pct(res.e_ground, res.e_initial, res.e_final);
    res.state = std::move(state);
  }

  if (!cli.out.empty()) {
    std::vector<std::string> rows;
    rows.reserve(res.records.size());
    for (const EvolveRecord& r : res.records) {
      std::ostringstream line;
      line << cli.variant << ',' << res.n_steps << ',' << g17(cli.dt) << ','
           << g17(cli.total_time) << ',' << r.step << ',' << g17(r.t) << ','
           << g17(r.energy) << ',' << g17(r.delta_e_pct) << ',' << cli.shots
           << ',' << cli.seed;
      rows.push_back(line.str());
    }
    write_csv(cli.out, "variant,N,dt,T,step,t,energy,delta_e_pct,shots,seed",
              rows);
  }

  json summary = {
      {"command", "evolve"},
      {"config",
       {{"lattice", common_json(cli.common)},
        {"variant", cli.variant},
        {"T", cli.total_time},
        {"dt", cli.dt},
        {"cd_order", cli.cd_order},
        {"record_every", cli.record_every},
        {"shots", cli.shots},
        {"seed", cli.seed},
        {"out", cli.out}}},
      {"results",
       {{"n_steps", res.n_steps},
        {"e_ground", res.e_ground},
        {"e_initial", res.e_initial},
        {"e_final", res.e_final},
        {"delta_e_pct", res.delta_e_pct},
        {"records", res.records.size()}}},
      {"rng_algorithm", kRngAlgorithm}};
  emit(summary, t0);
}

// vqa -------------------------------------------------------------------

struct VqaCli {
  CommonOpts common;
  std::string ansatz = "hv";
  int n_layers = 1;
  std::string mode = "exact";
  std::string noise = "none";
  double p = 0.01;
  int n_trajectories = 100;
  std::int64_t shots = 30000;
  int iterations = 300;
  double learning_rate = 0.05;
  double epsilon = 1e-8;
  double fd_step = 0.01;
  std::uint64_t seed = 1;
  std::string out;
};

VqaOptions vqa_options_from_cli(const VqaCli& cli) {
  VqaOptions opt;
  opt.ansatz = parse_ansatz(cli.ansatz);
  opt.n_layers = cli.n_layers;
  opt.mode = parse_cost_mode(cli.mode);
  opt.noise.channel = parse_noise_channel(cli.noise);
  opt.noise.p = cli.p;
  opt.n_trajectories = cli.n_trajectories;
  opt.shots_per_group = cli.shots;
  opt.iterations = cli.iterations;
  opt.learning_rate = cli.learning_rate;
  opt.epsilon = cli.epsilon;
  opt.fd_step = cli.fd_step;
  opt.seed = cli.seed;
  if (opt.mode == CostMode::noisy && opt.noise.channel == NoiseChannel::none)
    throw std::invalid_argument("vqa: noisy mode needs --noise");
  return opt;
}

void run_vqa_cmd(const VqaCli& cli, std::chrono::steady_clock::time_point t0) {
  const HoneycombLattice lat = HoneycombLattice::build(cli.common.nx,
                                                       cli.common.ny);
  const VqaOptions opt = vqa_options_from_cli(cli);
  const VqaResult res = run_vqa(lat, cli.common.tau, cli.common.u, opt);

  if (!cli.out.empty()) {
    std::vector<std::string> rows;
    rows.reserve(res.records.size());
    for (const VqaRecord& r : res.records) {
      std::ostringstream line;
      line << r.iteration << ',' << g17(r.energy) << ',' << g17(r.grad_norm)
           << ',' << cli.seed << ',' << cli.ansatz << ',' << cli.noise << ','
           << g17(cli.p) << ',' << cli.mode;
      rows.push_back(line.str());
    }
    write_csv(cli.out,
              "iteration,energy,grad_norm,seed,ansatz,noise_channel,p,mode",
              rows);
  }

  const auto [n_up, n_dn] = half_filling(lat.n_sites);
  const SectorBasis basis = SectorBasis::build(lat.n_sites, n_up, n_dn);
  const SectorHamiltonian hs(basis, site_edge_list(lat), cli.common.tau,
                             cli.common.u);
  const double e_ground = sector_ground_state(hs).energy;

  json summary = {
      {"command", "vqa"},
      {"config",
       {{"lattice", common_json(cli.common)},
        {"ansatz", cli.ansatz},
        {"layers", cli.n_layers},
        {"mode", cli.mode},
        {"noise_channel", cli.noise},
        {"p", cli.p},
        {"trajectories", cli.n_trajectories},
        {"shots", cli.shots},
        {"iterations", cli.iterations},
        {"learning_rate", cli.learning_rate},
        {"epsilon", cli.epsilon},
        {"fd_step", cli.fd_step},
        {"seed", cli.seed},
        {"out", cli.out}}},
      {"results",
       {{"n_params", res.n_params},
        {"initial_energy", res.initial_energy},
        {"final_energy", res.final_energy},
        {"e_ground", e_ground},
        {"delta_e_pct",
         residual_energy_pct(e_ground, res.initial_energy,
                             res.final_energy)}}},
      {"rng_algorithm", kRngAlgorithm}};
  emit(summary, t0);
}

// sweep -----------------------------------------------------------------

struct SweepCli {
  CommonOpts common;
  std::vector<std::string> algorithms = {"evolve:adiabatic", "evolve:cd"};
  std::vector<double> t_values = {0.5, 1.0, 1.5, 2.0};
  double dt = 0.02;
  int cd_order = 1;
  int n_layers = 1;
  std::string mode = "exact";
  std::string noise = "none";
  double p = 0.01;
  int n_trajectories = 100;
  std::int64_t shots = 30000;
  int iterations = 300;
  double learning_rate = 0.05;
  double epsilon = 1e-8;
  std::uint64_t seed = 1;
  std::string out;
};

// One row per grid cell. Digitized-evolution algorithms scan the ramp
// durations; variational algorithms contribute one cell each (T and dt
// are reported as 0, iters carries the optimizer budget).
void run_sweep_cmd(const SweepCli& cli,
                   std::chrono::steady_clock::time_point t0) {
  const HoneycombLattice lat = HoneycombLattice::build(cli.common.nx,
                                                       cli.common.ny);
  std::vector<std::string> rows;
  json cells = json::array();

  auto add_row = [&](const std::string& algorithm, double T, double dt,
                     int iters, double e_ground, double e_final,
                     double delta_pct) {
    std::ostringstream line;
    line << algorithm << ',' << cli.common.nx << ',' << cli.common.ny << ','
         << g17(cli.common.tau) << ',' << g17(cli.common.u) << ',' << g17(T)
         << ',' << g17(dt) << ',' << iters << ',' << cli.seed << ','
         << g17(e_ground) << ',' << g17(e_final) << ',' << g17(delta_pct);
    rows.push_back(line.str());
    cells.push_back(json{{"algorithm", algorithm},
                         {"T", T},
                         {"dt", dt},
                         {"iters", iters},
                         {"e_ground", e_ground},
                         {"e_final", e_final},
                         {"delta_e_pct", delta_pct}});
  };

  for (const std::string& algorithm : cli.algorithms) {
    const auto colon = algorithm.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("sweep: algorithm must look like "
                                  "evolve:adiabatic or vqa:hv, got " +
                                  algorithm);
    const std::string family = algorithm.substr(0, colon);
    const std::string kind = algorithm.substr(colon + 1);
    if (family == "evolve") {
      for (const double T : cli.t_values) {
        EvolveOptions opt;
        opt.variant = variant_from_cli(kind);
        opt.total_time = T;
        opt.dt = cli.dt;
        opt.cd_order = cli.cd_order;
        opt.record_every = std::max(1, static_cast<int>(std::lround(T / cli.dt)));
        const EvolveResult res = evolve(lat, cli.common.tau, cli.common.u, opt);
        add_row(algorithm, T, cli.dt, 0, res.e_ground, res.e_final,
                res.delta_e_pct);
      }
    } else if (family == "vqa") {
      VqaCli vq;
      vq.common = cli.common;
      vq.ansatz = kind;
      vq.n_layers = cli.n_layers;
      vq.mode = cli.mode;
      vq.noise = cli.noise;
      vq.p = cli.p;
      vq.n_trajectories = cli.n_trajectories;
      vq.shots = cli.shots;
      vq.iterations = cli.iterations;
      vq.learning_rate = cli.learning_rate;
      vq.epsilon = cli.epsilon;
      vq.seed = cli.seed;
      const VqaOptions opt = vqa_options_from_cli(vq);
      const VqaResult res = run_vqa(lat, cli.common.tau, cli.common.u, opt);
      const auto [n_up, n_dn] = half_filling(lat.n_sites);
      const SectorBasis basis = SectorBasis::build(lat.n_sites, n_up, n_dn);
      const SectorHamiltonian hs(basis, site_edge_list(lat), cli.common.tau,
                                 cli.common.u);
      const double e_ground = sector_ground_state(hs).energy;
      add_row(algorithm, 0.0, 0.0, cli.iterations, e_ground, res.final_energy,
              residual_energy_pct(e_ground, res.initial_energy,
                                  res.final_energy));
    } else {
      throw std::invalid_argument("sweep: unknown algorithm family " + family);
    }
  }

  if (!cli.out.empty())
    write_csv(cli.out,
              "algorithm,nx,ny,tau,u,T,dt,iters,seed,e_ground,e_final,"
              "delta_e_pct",
              rows);

  json summary = {{"command", "sweep"},
                  {"config",
                   {{"lattice", common_json(cli.common)},
                    {"algorithms", cli.algorithms},
                    {"T_values", cli.t_values},
                    {"dt", cli.dt},
                    {"iterations", cli.iterations},
                    {"mode", cli.mode},
                    {"noise_channel", cli.noise},
                    {"p", cli.p},
                    {"seed", cli.seed},
                    {"out", cli.out}}},
                  {"results", {{"cells", cells}}},
                  {"rng_algorithm", kRngAlgorithm}};
  emit(summary, t0);
}

// prepare / oracle / count-gates / pool ---------------------------------

void run_prepare_cmd(const CommonOpts& common, int n_up, int n_dn,
                     std::chrono::steady_clock::time_point t0) {
  const HoneycombLattice lat = HoneycombLattice::build(common.nx, common.ny);
  const auto half = half_filling(lat.n_sites);
  if (n_up < 0) n_up = half[0];
  if (n_dn < 0) n_dn = half[1];

  const Circuit prep = prep_circuit(lat, common.tau, n_up, n_dn);
  const StateVector state =
      run(prep, {}, StateVector::zero_state(prep.n_qubits));
  const HamiltonianSet ham = build_hamiltonians(lat, common.tau, common.u);

  const double e_hop = expectation_value(ham.h_hop, state.amps).real();
  const double e_full = expectation_value(ham.h_fh, state.amps).real();
  const double e_ref = prep_reference_energy(lat, common.tau, n_up, n_dn);
  const double leak = sector_leakage(state, lat.n_sites, n_up, n_dn);
  const BasicGateCount gates = count_circuit(prep);

  json summary = {{"command", "prepare"},
                  {"config",
                   {{"lattice", common_json(common)},
                    {"n_up", n_up},
                    {"n_dn", n_dn}}},
                  {"results",
                   {{"hopping_energy", e_hop},
                    {"reference_energy", e_ref},
                    {"full_energy", e_full},
                    {"sector_leakage", leak},
                    {"gates", prep.gates.size()},
                    {"basic_gates", gates.total()}}}};
  emit(summary, t0);
}

void run_oracle_cmd(const CommonOpts& common, int n_up, int n_dn, double tol,
                    bool dense, std::chrono::steady_clock::time_point t0) {
  const HoneycombLattice lat = HoneycombLattice::build(common.nx, common.ny);
  const auto half = half_filling(lat.n_sites);
  if (n_up < 0) n_up = half[0];
  if (n_dn < 0) n_dn = half[1];

  const SectorBasis basis = SectorBasis::build(lat.n_sites, n_up, n_dn);
  const SectorHamiltonian hs(basis, site_edge_list(lat), common.tau, common.u);
  LanczosOptions lopt;
  lopt.tol = tol;
  const LanczosResult res = sector_ground_state(hs, lopt);

  json results = {{"energy", res.energy},
                  {"residual", res.residual},
                  {"matvecs", res.matvecs},
                  {"converged", res.converged},
                  {"sector_dim", basis.dim()}};
  if (dense) {
    const HamiltonianSet ham = build_hamiltonians(lat, common.tau, common.u);
    const double e_dense = ground_energy_dense(ham.h_fh);
    results["dense_energy"] = e_dense;
    results["dense_gap"] = std::abs(e_dense - res.energy);
  }

  json summary = {{"command", "oracle"},
                  {"config",
                   {{"lattice", common_json(common)},
                    {"n_up", n_up},
                    {"n_dn", n_dn},
                    {"tol", tol},
                    {"dense", dense}}},
                  {"results", results}};
  emit(summary, t0);
}

void run_count_gates_cmd(const CommonOpts& common,
                         std::chrono::steady_clock::time_point t0) {
  const HoneycombLattice lat = HoneycombLattice::build(common.nx, common.ny);
  const HamiltonianSet ham = build_hamiltonians(lat, common.tau, common.u);
  const StructuralCounts s = structural_counts(lat);

  json steps;
  for (EvolveVariant v : {EvolveVariant::adiabatic, EvolveVariant::adiabatic_cd,
                          EvolveVariant::cd_only}) {
    const BasicGateCount c = count_trotter_step(ham, v, 1);
    const StepTermCounts terms = step_term_counts(ham, v, 1);
    steps[evolve_variant_name(v)] = {
        {"basic_total", c.total()},   {"h", c.h},
        {"rx", c.rx},                 {"rz", c.rz},
        {"cnot", c.cnot},             {"hopping_terms", terms.hopping},
        {"interaction_terms", terms.interaction},
        {"cd_terms", terms.cd}};
  }

  auto layer_total = [&lat](AnsatzKind kind) {
    const AnsatzInfo info = build_ansatz(lat, 1.0, kind, 1);
    Circuit layer(lat.qubit_count());
    for (std::size_t i = info.prep_gates; i < info.circuit.gates.size(); ++i)
      layer.gates.push_back(info.circuit.gates[i]);
    return count_circuit(layer).total();
  };

  const auto half = half_filling(lat.n_sites);
  const Circuit prep = prep_circuit(lat, common.tau, half[0], half[1]);

  json summary = {
      {"command", "count-gates"},
      {"config", {{"lattice", common_json(common)}}},
      {"results",
       {{"structure",
         {{"n_sites", s.n_sites},
          {"n_edges", s.n_edges},
          {"coulomb_terms", s.n_coulomb_terms},
          {"hopping_terms", s.n_hopping_terms},
          {"pool_size", s.pool_size},
          {"basic_per_pool_term", s.basic_per_pool_term},
          {"fswaps_per_hv_layer", s.fswaps_per_hv_layer},
          {"row_formula_swaps", row_formula_swaps(lat)}}},
        {"per_step", steps},
        {"ansatz_layers",
         {{"hv", layer_total(AnsatzKind::hv)},
          {"cd_two_string", layer_total(AnsatzKind::cd)},
          {"cd_fused", 7LL * s.pool_size}}},
        {"prep_basic_gates", count_circuit(prep).total()}}}};
  emit(summary, t0);
}

void run_pool_cmd(const CommonOpts& common,
                  std::chrono::steady_clock::time_point t0) {
  const HoneycombLattice lat = HoneycombLattice::build(common.nx, common.ny);
  const std::vector<PauliSum> pool = cd_pool(lat);

  json generators = json::array();
  for (const PauliSum& g : pool) {
    json terms = json::array();
    for (const PauliString& t : g.ordered_terms())
      terms.push_back(json{{"string", pauli_letters(t)},
                           {"coeff_re", t.coeff.real()},
                           {"coeff_im", t.coeff.imag()}});
    generators.push_back(terms);
  }

  json summary = {{"command", "pool"},
                  {"config", {{"lattice", common_json(common)}}},
                  {"results",
                   {{"pool_size", pool.size()},
                    {"generators", generators}}}};
  emit(summary, t0);
}

}  // namespace

int main(int argc, char** argv) {
  const auto t0 = std::chrono::steady_clock::now();
  CLI::App app{"Honeycomb Fermi-Hubbard ground-state toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "INI configuration file");

  // prepare
  auto* prepare = app.add_subcommand(
      "prepare", "Hopping-ground preparation circuit diagnostics");
  CommonOpts prep_common;
  int prep_nup = -1, prep_ndn = -1;
  add_common(prepare, prep_common);
  prepare->add_option("--nup", prep_nup, "Up-spin particles (-1: half filling)")
      ->capture_default_str();
  prepare->add_option("--ndn", prep_ndn, "Down-spin particles (-1: half filling)")
      ->capture_default_str();
  prepare->callback(
      [&] { run_prepare_cmd(prep_common, prep_nup, prep_ndn, t0); });

  // evolve
  auto* evolve_sub = app.add_subcommand(
      "evolve", "Digitized ramp from the hopping ground state");
  EvolveCli evolve_cli;
  add_common(evolve_sub, evolve_cli.common);
  evolve_sub
      ->add_option("--variant", evolve_cli.variant,
                   "adiabatic | cd | cd_only")
      ->check(CLI::IsMember({"adiabatic", "cd", "adiabatic_cd", "cd_only"}))
      ->capture_default_str();
  evolve_sub->add_option("--T", evolve_cli.total_time, "Total ramp time")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  evolve_sub->add_option("--dt", evolve_cli.dt, "Trotter step")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  evolve_sub->add_option("--order", evolve_cli.cd_order,
                         "Correction expansion order")
      ->check(CLI::Range(1, 3))
      ->capture_default_str();
  evolve_sub
      ->add_option("--record-every", evolve_cli.record_every,
                   "Record cadence in steps")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  evolve_sub
      ->add_option("--shots", evolve_cli.shots,
                   "Measurement shots per basis group (0: exact readout)")
      ->capture_default_str();
  evolve_sub->add_option("--seed", evolve_cli.seed, "Measurement seed")
      ->capture_default_str();
  evolve_sub->add_option("--out", evolve_cli.out, "CSV output path")
      ->capture_default_str();
  evolve_sub->callback([&] { run_evolve_cmd(evolve_cli, t0); });

  // vqa
  auto* vqa_sub = app.add_subcommand(
      "vqa", "Variational optimization with gradient descent");
  VqaCli vqa_cli;
  add_common(vqa_sub, vqa_cli.common);
  vqa_sub->add_option("--ansatz", vqa_cli.ansatz, "hv | cd")
      ->check(CLI::IsMember({"hv", "cd"}))
      ->capture_default_str();
  vqa_sub->add_option("--layers", vqa_cli.n_layers, "Ansatz layers")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  vqa_sub->add_option("--mode", vqa_cli.mode, "exact | sampled | noisy")
      ->check(CLI::IsMember({"exact", "sampled", "noisy"}))
      ->capture_default_str();
  vqa_sub
      ->add_option("--noise", vqa_cli.noise,
                   "none | bit_flip | phase_flip | amplitude_damping")
      ->check(CLI::IsMember(
          {"none", "bit_flip", "phase_flip", "amplitude_damping"}))
      ->capture_default_str();
  vqa_sub->add_option("--p", vqa_cli.p, "Per-qubit error probability")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  vqa_sub
      ->add_option("--trajectories", vqa_cli.n_trajectories,
                   "Noise trajectories per cost evaluation")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  vqa_sub->add_option("--shots", vqa_cli.shots, "Shots per basis group")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  vqa_sub->add_option("--iters", vqa_cli.iterations, "Optimizer iterations")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  vqa_sub->add_option("--eta", vqa_cli.learning_rate, "Learning rate")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  vqa_sub->add_option("--eps", vqa_cli.epsilon, "Adagrad stability constant")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  vqa_sub->add_option("--fd-step", vqa_cli.fd_step,
                      "Central-difference half step")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  vqa_sub->add_option("--seed", vqa_cli.seed, "Run seed")
      ->capture_default_str();
  vqa_sub->add_option("--out", vqa_cli.out, "CSV output path")
      ->capture_default_str();
  vqa_sub->callback([&] { run_vqa_cmd(vqa_cli, t0); });

  // sweep
  auto* sweep_sub = app.add_subcommand(
      "sweep", "Grid of algorithms and ramp durations, one row per cell");
  SweepCli sweep_cli;
  add_common(sweep_sub, sweep_cli.common);
  sweep_sub
      ->add_option("--algorithms", sweep_cli.algorithms,
                   "evolve:adiabatic evolve:cd evolve:cd_only vqa:hv vqa:cd")
      ->delimiter(',')
      ->capture_default_str();
  sweep_sub->add_option("--T", sweep_cli.t_values, "Ramp durations")
      ->delimiter(',')
      ->capture_default_str();
  sweep_sub->add_option("--dt", sweep_cli.dt, "Trotter step")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep_sub->add_option("--layers", sweep_cli.n_layers, "Ansatz layers")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep_sub->add_option("--mode", sweep_cli.mode, "Cost mode for vqa cells")
      ->check(CLI::IsMember({"exact", "sampled", "noisy"}))
      ->capture_default_str();
  sweep_sub
      ->add_option("--noise", sweep_cli.noise,
                   "Noise channel for vqa noisy cells")
      ->check(CLI::IsMember(
          {"none", "bit_flip", "phase_flip", "amplitude_damping"}))
      ->capture_default_str();
  sweep_sub->add_option("--p", sweep_cli.p, "Per-qubit error probability")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  sweep_sub
      ->add_option("--trajectories", sweep_cli.n_trajectories,
                   "Noise trajectories per cost evaluation")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep_sub->add_option("--shots", sweep_cli.shots, "Shots per basis group")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep_sub->add_option("--iters", sweep_cli.iterations,
                        "Optimizer iterations for vqa cells")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  sweep_sub->add_option("--eta", sweep_cli.learning_rate, "Learning rate")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep_sub->add_option("--eps", sweep_cli.epsilon, "Adagrad stability constant")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep_sub->add_option("--seed", sweep_cli.seed, "Run seed")
      ->capture_default_str();
  sweep_sub->add_option("--out", sweep_cli.out, "CSV output path")
      ->capture_default_str();
  sweep_sub->callback([&] { run_sweep_cmd(sweep_cli, t0); });

  // oracle
  auto* oracle_sub = app.add_subcommand(
      "oracle", "Sector ground energy by restarted Lanczos");
  CommonOpts oracle_common;
  int oracle_nup = -1, oracle_ndn = -1;
  double oracle_tol = 1e-8;
  bool oracle_dense = false;
  add_common(oracle_sub, oracle_common);
  oracle_sub
      ->add_option("--nup", oracle_nup, "Up-spin particles (-1: half filling)")
      ->capture_default_str();
  oracle_sub
      ->add_option("--ndn", oracle_ndn,
                   "Down-spin particles (-1: half filling)")
      ->capture_default_str();
  oracle_sub->add_option("--tol", oracle_tol, "Residual tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  oracle_sub->add_flag("--dense", oracle_dense,
                       "Also diagonalize the full operator (<= 12 qubits)");
  oracle_sub->callback([&] {
    run_oracle_cmd(oracle_common, oracle_nup, oracle_ndn, oracle_tol,
                   oracle_dense, t0);
  });

  // count-gates
  auto* count_sub = app.add_subcommand(
      "count-gates", "Structural term and basic-gate counts");
  CommonOpts count_common;
  add_common(count_sub, count_common);
  count_sub->callback([&] { run_count_gates_cmd(count_common, t0); });

  // pool
  auto* pool_sub = app.add_subcommand(
      "pool", "Correction-term operator pool for the variational ansatz");
  CommonOpts pool_common;
  add_common(pool_sub, pool_common);
  pool_sub->callback([&] { run_pool_cmd(pool_common, t0); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
