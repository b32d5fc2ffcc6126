// Command-line front end for the scans. Every option lives on the root app so
// a flat key=value config file can set any of them; flags win over the file.

#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qdo/errors.hpp"
#include "qdo/geometry.hpp"
#include "qdo/scan.hpp"
#include "qdo/serialize.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_invalid_config = 2;
constexpr int exit_all_invalid = 3;
constexpr int exit_budget = 4;

struct Options {
  std::string out = "-";
  std::string json_meta;
  std::string kind = "square";
  std::string mode = "mb_zero";
  std::string target = "trimer";
  std::vector<int> dims;
};

void add_range(CLI::App& app, const std::string& name, qdo::Range& r, const std::string& unit) {
  app.add_option("--" + name + "-min", r.min, "Lower end of the " + name + " grid" + unit);
  app.add_option("--" + name + "-max", r.max, "Upper end of the " + name + " grid" + unit);
  app.add_option("--" + name + "-steps", r.steps, "Number of " + name + " grid points");
}

int run(qdo::ScanSpec& spec, const Options& opt, const CLI::App& app) {
  if (app.got_subcommand("lattice") ||
      (app.got_subcommand("boundary") && opt.target == "lattice")) {
    spec.lattice = qdo::parse_geometry_kind(opt.kind);
    if (!opt.dims.empty()) spec.dims = opt.dims;
  }
  if (app.got_subcommand("boundary")) {
    spec.boundary_mode = qdo::parse_boundary_mode(opt.mode);
    if (opt.target == "trimer") {
      spec.boundary_target = qdo::BoundaryTarget::trimer;
    } else if (opt.target == "chain") {
      spec.boundary_target = qdo::BoundaryTarget::chain;
    } else if (opt.target == "lattice") {
      spec.boundary_target = qdo::BoundaryTarget::lattice;
    } else {
      throw qdo::DomainError("unknown boundary target '" + opt.target + "'");
    }
  }
  spec.validate();

  qdo::Table table;
  nlohmann::json meta{{"spec", qdo::to_json(spec)}};
  switch (spec.kind) {
    case qdo::ScanKind::trimer: table = qdo::run_trimer_scan(spec); break;
    case qdo::ScanKind::chain: table = qdo::run_chain_scan(spec); break;
    case qdo::ScanKind::lattice_curve: {
      qdo::LatticeCurveMeta lm;
      table = qdo::run_lattice_curve(spec, &lm);
      meta["lattice"] = qdo::to_json(lm);
      break;
    }
    case qdo::ScanKind::three_mode: table = qdo::run_three_mode_scan(spec); break;
    case qdo::ScanKind::qubit_trimer: table = qdo::run_qubit_trimer(spec); break;
    case qdo::ScanKind::boundary: table = qdo::run_boundary_scan(spec); break;
  }

  if (opt.out == "-") {
    qdo::write_csv(std::cout, table);
  } else {
    std::ofstream os(opt.out);
    if (!os) throw qdo::DomainError("cannot open output file " + opt.out);
    qdo::write_csv(os, table);
  }
  if (!opt.json_meta.empty()) {
    meta["columns"] = table.columns;
    meta["rows"] = table.rows.size();
    meta["ok_rows"] = table.ok_rows();
    std::ofstream js(opt.json_meta);
    if (!js) throw qdo::DomainError("cannot open metadata file " + opt.json_meta);
    js << meta.dump(2) << '\n';
  }
  if (!table.rows.empty() && table.ok_rows() == 0) {
    std::cerr << "qdo: every row is invalid\n";
    return exit_all_invalid;
  }
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dispersion energies and Gaussian entanglement of dipole-coupled Drude oscillators"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Flat key=value configuration file (flags take precedence)");

  qdo::ScanSpec spec;
  Options opt;
  app.add_option("--out", opt.out, "CSV output path ('-' for stdout)");
  app.add_option("--json-meta", opt.json_meta, "Write run metadata as JSON to this path");
  add_range(app, "rho", spec.rho, "");
  add_range(app, "theta", spec.theta, " (radians)");
  add_range(app, "kappa", spec.kappa, "");
  add_range(app, "beta", spec.beta, "");
  app.add_option("--kind", opt.kind, "Lattice kind: square, triangular, honeycomb, cubic, pyrochlore");
  app.add_option("--dims", opt.dims, "Lattice extents a,b[,c] (basis size may be included)")
      ->delimiter(',');
  app.add_option("--kmax", spec.k_max, "Highest perturbative order evaluated");
  app.add_option("--threads", spec.threads, "Worker threads");
  app.add_option("--n", spec.chain_n, "Number of sites in a chain");
  app.add_option("--budget", spec.mode_budget, "Largest admissible number of modes");
  app.add_option("--mode", opt.mode, "Boundary: mb_zero, edi_one, at_zero, d3_eq_neg_d4");
  app.add_option("--target", opt.target, "Boundary assembly: trimer, chain, lattice");
  app.add_option("--tol", spec.boundary_tol, "Boundary bisection tolerance");

  struct Sub {
    const char* name;
    const char* help;
    qdo::ScanKind kind;
  };
  const Sub subs[] = {
      {"trimer", "Trimer energy and entanglement grid over (rho, theta)", qdo::ScanKind::trimer},
      {"chain", "Zigzag chain grid over (rho, theta)", qdo::ScanKind::chain},
      {"lattice", "Normalised lattice curves over rho", qdo::ScanKind::lattice_curve},
      {"three-mode", "Three-mode kappa-beta model", qdo::ScanKind::three_mode},
      {"qubit-trimer", "Two-level truncation of the trimer", qdo::ScanKind::qubit_trimer},
      {"boundary", "Bisection of a boundary at each fixed rho", qdo::ScanKind::boundary},
  };
  for (const Sub& s : subs) {
    app.add_subcommand(s.name, s.help)->fallthrough()->callback([&spec, k = s.kind] {
      spec.kind = k;
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_invalid_config;
  }

  // Lattice curves start at 1.9 unless told otherwise.
  if (spec.kind == qdo::ScanKind::lattice_curve && app.count("--rho-min") == 0) spec.rho.min = 1.9;

  try {
    return run(spec, opt, app);
  } catch (const qdo::TooLarge& e) {
    std::cerr << "qdo: " << e.what() << '\n';
    return exit_budget;
  } catch (const qdo::Error& e) {
    std::cerr << "qdo: " << e.what() << '\n';
    return exit_invalid_config;
  }
}
