#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "cachenet/harness.hpp"
#include "cachenet/io.hpp"
#include "cachenet/placement.hpp"
#include "cachenet/topology.hpp"

using namespace cachenet;

namespace {

struct UtilityOpts {
  std::string kind = "log_shifted";
  double offset = 0.1;
  double alpha = 2.0;
  double weight = 1.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--utility", kind, "log_shifted or alpha_fair")
        ->check(CLI::IsMember({"log_shifted", "alpha_fair"}));
    cmd->add_option("--offset", offset, "log_shifted rate offset");
    cmd->add_option("--alpha", alpha, "alpha_fair curvature");
    cmd->add_option("--weight", weight, "alpha_fair weight");
  }

  UtilityProfile profile() const {
    UtilityProfile prof;
    prof.base = kind == "log_shifted" ? Utility::log_shifted(offset)
                                      : Utility::alpha_fair(alpha, weight);
    return prof;
  }
};

std::ostream& open_or_stdout(std::ofstream& file, const std::string& path) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot open for writing: " + path);
  return file;
}

void print_report(const Instance& inst, const Strategy& s, double objective,
                  long iterations, double ms) {
  const FeasibilityReport rep = feasibility_report(inst, s);
  std::cout << std::setprecision(12) << "objective      " << objective << "\n"
            << "feasible       " << (rep.feasible ? "yes" : "no") << "\n"
            << "max_violation  " << rep.max_violation << "\n"
            << "iterations     " << iterations << "\n"
            << "runtime_ms     " << std::setprecision(4) << ms << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cache-network admission and placement toolkit"};
  app.require_subcommand(1);
  std::uint64_t seed = 1;
  app.add_option("--seed", seed, "random seed shared by all subcommands");

  // ---- gen
  auto* gen = app.add_subcommand("gen", "draw a synthetic instance on a topology");
  gen->fallthrough();
  std::string topo_spec, out_path;
  WorkloadParams wp;
  gen->add_option("--topology", topo_spec,
                  "cycle:N, lollipop:M, tree:B:H, grid:R:C, hypercube:D, "
                  "smallworld:R:C, er:N:P, or an edge-list file")
      ->required();
  gen->add_option("--items", wp.items, "catalog size");
  gen->add_option("--requests", wp.n_requests, "request classes");
  gen->add_option("--queries", wp.query_nodes, "query node count");
  gen->add_option("--slots", wp.cache_slots, "free cache slots per node");
  gen->add_option("--kappa", wp.kappa, "capacity as a fraction of worst-case load");
  gen->add_option("--zipf", wp.zipf_exponent, "item popularity exponent");
  gen->add_option("--demand", wp.demand, "rate per request class");
  gen->add_option("-o,--output", out_path, "instance file")->required();

  // ---- solve
  auto* solve = app.add_subcommand("solve", "run one algorithm on an instance");
  solve->fallthrough();
  std::string in_path, strategy_out, trace_path, alg = "barrier";
  UtilityOpts solve_util;
  solve->add_option("-i,--input", in_path, "instance file")->required();
  solve->add_option("--alg", alg, "barrier, envelope, greedy-cont, greedy-int, rate-only")
      ->check(CLI::IsMember({"barrier", "envelope", "greedy-cont", "greedy-int", "rate-only"}));
  solve->add_option("-o,--output", strategy_out, "strategy file");
  solve->add_option("--trace", trace_path, "barrier outer-iteration trace CSV");
  solve_util.attach(solve);

  // ---- compare
  auto* compare = app.add_subcommand("compare", "run all four algorithms");
  compare->fallthrough();
  std::string cmp_in, cmp_out, cmp_label = "instance";
  double cmp_kappa = 0.0;
  UtilityOpts cmp_util;
  compare->add_option("-i,--input", cmp_in, "instance file")->required();
  compare->add_option("--label", cmp_label, "topology label for the CSV");
  compare->add_option("--kappa", cmp_kappa, "kappa label for the CSV");
  compare->add_option("-o,--output", cmp_out, "CSV file, '-' for stdout");
  cmp_util.attach(compare);

  // ---- sweep
  auto* sweep = app.add_subcommand("sweep", "rerun the comparison over capacity scalings");
  sweep->fallthrough();
  std::string swp_in, swp_out, swp_label = "instance";
  double base_kappa = 0.0;
  std::vector<double> kappas;
  UtilityOpts swp_util;
  sweep->add_option("-i,--input", swp_in, "instance file")->required();
  sweep->add_option("--base-kappa", base_kappa, "kappa the instance was generated with")
      ->required();
  sweep->add_option("--kappas", kappas, "kappa values to rescale to")->required();
  sweep->add_option("--label", swp_label, "topology label for the CSV");
  sweep->add_option("-o,--output", swp_out, "CSV file, '-' for stdout");
  swp_util.attach(sweep);

  // ---- scale
  auto* scale = app.add_subcommand("scale", "joint capacity and demand scaling sweep");
  scale->fallthrough();
  std::string scl_in, scl_out;
  std::vector<double> factors{1.0, 2.0, 4.0, 8.0};
  UtilityOpts scl_util;
  scale->add_option("-i,--input", scl_in, "instance file")->required();
  scale->add_option("--factors", factors, "scaling factors");
  scale->add_option("-o,--output", scl_out, "CSV file, '-' for stdout");
  scl_util.attach(scale);

  // ---- place
  auto* place = app.add_subcommand("place", "simulate rounded placements of a strategy");
  place->fallthrough();
  std::string plc_in, plc_strategy, plc_out;
  int periods = 1000, rpp = 0;
  place->add_option("-i,--input", plc_in, "instance file")->required();
  place->add_option("--strategy", plc_strategy, "strategy file")->required();
  place->add_option("--periods", periods, "rounding periods");
  place->add_option("--events", rpp, "request events per period, 0 for fluid rates");
  place->add_option("-o,--output", plc_out, "CSV file, '-' for stdout");

  // ---- validate
  auto* validate = app.add_subcommand("validate", "check an instance and optional strategy");
  validate->fallthrough();
  std::string val_in, val_strategy;
  validate->add_option("-i,--input", val_in, "instance file")->required();
  validate->add_option("--strategy", val_strategy, "strategy file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      const Graph g = topology_from_spec(topo_spec, seed);
      const Instance inst = generate_instance(g, wp, seed);
      save_instance(inst, out_path);
      int carrying = 0;
      for (double c : inst.link_capacity)
        if (std::isfinite(c)) ++carrying;
      std::cout << "nodes " << inst.nodes() << "  edges " << g.num_edges() << "  requests "
                << inst.n_requests() << "  carrying links " << carrying << "  -> " << out_path
                << "\n";
    }

    if (solve->parsed()) {
      const Instance inst = load_instance(in_path);
      const UtilityProfile prof = solve_util.profile();
      const auto t0 = std::chrono::steady_clock::now();
      Strategy s = Strategy::rejecting_all(inst);
      double objective = 0.0;
      long iterations = 0;

      if (alg == "barrier") {
        const LBSBResult res = solve_lbsb(inst, prof);
        s = res.strategy;
        objective = res.objective;
        iterations = res.inner_iters;
        std::cout << std::setprecision(6) << "stationarity   " << res.kkt.stationarity << "\n"
                  << "complement     " << res.kkt.complementarity << "\n"
                  << "gap_bound      " << res.certificate.multiplier_bound << "\n"
                  << "outer iters    " << res.outer_iters << "\n";
        if (!trace_path.empty()) {
          std::ofstream trace(trace_path);
          trace << "outer,objective,max_violation,satisfied_ratio,epsilon,omega,delta,"
                   "inner_iters,elapsed_ms\n"
                << std::setprecision(17);
          for (const auto& row : res.trace)
            trace << row.outer << ',' << row.objective << ',' << row.max_violation << ','
                  << row.satisfied_ratio << ',' << row.epsilon << ',' << row.omega << ','
                  << row.delta << ',' << row.inner_iters << ',' << row.elapsed_ms << '\n';
        }
      } else if (alg == "envelope") {
        const RelaxResult res = solve_relaxation(inst, prof);
        s = res.strategy;
        objective = res.objective;
        iterations = res.iterations;
        if (!res.relaxation_feasible)
          std::cout << "note: envelope region empty, returning full rejection\n";
      } else if (alg == "greedy-cont") {
        const BaselineResult res = greedy_continuous(inst, prof);
        s = res.strategy;
        objective = res.objective;
      } else if (alg == "greedy-int") {
        const BaselineResult res = greedy_integral(inst, prof);
        s = res.strategy;
        objective = res.objective;
        iterations = res.placements;
      } else {
        const RateOnlyResult res = solve_rate_only(inst, prof, Strategy::rejecting_all(inst));
        s = res.strategy;
        objective = res.objective;
        iterations = res.iterations;
      }

      const double ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
      print_report(inst, s, objective, iterations, ms);
      if (!strategy_out.empty()) save_json(strategy_to_json(inst, s), strategy_out);
    }

    if (compare->parsed()) {
      const Instance inst = load_instance(cmp_in);
      const auto rows =
          run_comparison(inst, cmp_util.profile(), cmp_label, seed, cmp_kappa);
      std::ofstream file;
      write_csv(rows, open_or_stdout(file, cmp_out));
    }

    if (sweep->parsed()) {
      const Instance inst = load_instance(swp_in);
      const auto rows =
          kappa_sweep(inst, swp_util.profile(), swp_label, seed, base_kappa, kappas);
      std::ofstream file;
      write_csv(rows, open_or_stdout(file, swp_out));
    }

    if (scale->parsed()) {
      const Instance inst = load_instance(scl_in);
      const auto rows = scaling_sweep(inst, scl_util.profile(), factors);
      std::ofstream file;
      write_csv(rows, open_or_stdout(file, scl_out));
    }

    if (place->parsed()) {
      const Instance inst = load_instance(plc_in);
      const Strategy s = strategy_from_json(inst, load_json(plc_strategy));
      const LoadEstimate est = monte_carlo_load(inst, s, periods, rpp, seed);
      std::ofstream file;
      std::ostream& out = open_or_stdout(file, plc_out);
      out << "edge,expected,sampled\n" << std::setprecision(17);
      for (int e = 0; e < inst.graph.num_edges(); ++e) {
        if (est.expected[e] == 0.0 && est.mean[e] == 0.0) continue;
        const auto [u, v] = inst.graph.edges[e];
        out << u << '-' << v << ',' << est.expected[e] << ',' << est.mean[e] << '\n';
      }
    }

    if (validate->parsed()) {
      const Instance inst = load_instance(val_in);  // validates on load
      std::cout << "instance ok: " << inst.nodes() << " nodes, " << inst.n_requests()
                << " requests\n";
      if (!val_strategy.empty()) {
        const Strategy s = strategy_from_json(inst, load_json(val_strategy));
        const FeasibilityReport rep = feasibility_report(inst, s);
        std::cout << std::setprecision(12) << "strategy feasible: "
                  << (rep.feasible ? "yes" : "no") << "  max_violation "
                  << rep.max_violation << "  satisfied " << rep.satisfied_ratio << "\n";
        return rep.feasible ? 0 : 2;
      }
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
