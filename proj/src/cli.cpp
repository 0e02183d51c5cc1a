#include "conerad/cli.hpp"

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "conerad/csv.hpp"
#include "conerad/eigensolvers.hpp"
#include "conerad/model_io.hpp"
#include "conerad/opnorm.hpp"
#include "conerad/population.hpp"
#include "conerad/radii.hpp"

namespace conerad {

namespace {

std::string fmt(double v) {
  std::string s;
  csv_append(s, v);
  return s;
}

std::string fmt(const Point& x) {
  std::string s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ',';
    csv_append(s, x[i]);
  }
  return s;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write file: " + path);
  f << content;
}

void print_solve(std::ostream& out, const SolveResult& s) {
  out << "status = " << to_string(s.status) << "\n";
  out << "r = " << fmt(s.r) << "\n";
  out << "v = " << fmt(s.v) << "\n";
  out << "residual = " << fmt(s.residual) << "\n";
  out << "iterations = " << s.iterations << "\n";
}

struct CliState {
  std::string model_path;
  std::string space_name = "sup";
  std::string vector_arg;
  std::string x0_arg;
  std::string w_arg;
  std::string u_arg;
  std::string method = "power";
  std::string out_path;
  std::string traj_path;
  int horizon = 50;
  int probes = 8;
  int dim = 0;
  int m = 1;
  int K = 60;
  int steps = 20;
  int max_iter = 5000;
  int trials = 2000;
  int samples = 256;
  int seeds = 50;
  double tol = 1e-10;
  double r = 1.0;
  double eps0 = 0.1;
  double eps = 0.2;
  double c = 10.0;
  double grid_step = 0.05;
  double radius = 0.0;
  std::uint64_t seed = 1;
  bool normalized = false;
  bool serial = false;
};

SpaceSpec make_space(const CliState& st, int dim) {
  return SpaceSpec{dim, norm_kind_from_string(st.space_name)};
}

MapExpr load_map(const CliState& st) {
  if (st.model_path.empty())
    throw std::invalid_argument("missing --model <path>");
  ParsedModel m = load_model_file(st.model_path);
  if (!m.map)
    throw std::invalid_argument(
        "model has s > 0; only the dissipativity command accepts semiflows");
  return *m.map;
}

int dispatch(CLI::App& app, const CliState& st, std::ostream& out) {
  const Exec exec = st.serial ? Exec::serial : Exec::parallel;

  if (app.got_subcommand("psi")) {
    const Point x = parse_vector(st.vector_arg);
    const SpaceSpec space{static_cast<int>(x.size()),
                          norm_kind_from_string(st.space_name)};
    out << "psi = " << fmt(companion_half_norm(space, x)) << "\n";
    out << "companion_norm = " << fmt(companion_norm(space, x)) << "\n";
    out << "norm = " << fmt(norm(space, x)) << "\n";
    return 0;
  }

  if (app.got_subcommand("opnorm")) {
    const MapExpr map = load_map(st);
    const SpaceSpec space = make_space(st, map.dim());
    const OpNormResult res =
        cone_operator_norm(map, space, st.samples, st.seed);
    out << "value = " << fmt(res.value) << "\n";
    out << "certified = " << (res.certified ? "true" : "false")
        << (res.certified ? "" : " (sampled lower bound)") << "\n";
    out << "witness = " << fmt(res.witness) << "\n";
    return 0;
  }

  if (app.got_subcommand("enclosure")) {
    const MapExpr map = load_map(st);
    const SpaceSpec space = make_space(st, map.dim());
    const RadiusReport rep =
        enclosure_report(map, space, st.horizon, st.probes, st.seed, exec);
    if (!st.out_path.empty()) write_file(st.out_path, rep.to_csv());
    out << rep.summary();
    return 0;
  }

  if (app.got_subcommand("eig")) {
    const MapExpr map = load_map(st);
    const SpaceSpec space = make_space(st, map.dim());
    SolveResult res;
    if (st.method == "power") {
      const Point x0 = st.x0_arg.empty() ? ones(map.dim())
                                         : parse_vector(st.x0_arg);
      res = power_iterate(map, space, x0, st.tol, st.max_iter);
    } else if (st.method == "cyclic") {
      res = cyclic_sum_eigenvector(map, parse_vector(st.w_arg), st.m, st.r,
                                   st.tol);
    } else if (st.method == "sup") {
      res = sup_lower_eigenvector(map, parse_vector(st.w_arg), st.m, st.r,
                                  st.tol);
    } else if (st.method == "meet") {
      const Point u = st.u_arg.empty() ? ones(map.dim())
                                       : parse_vector(st.u_arg);
      res = meet_iteration_lower(map, space, u, st.r, st.K);
    } else if (st.method == "homotopy") {
      const Point u = st.u_arg.empty() ? ones(map.dim())
                                       : parse_vector(st.u_arg);
      HomotopyResult h =
          epsilon_homotopy(map, space, u, st.eps0, st.steps, st.tol);
      if (!st.out_path.empty()) write_file(st.out_path, h.trace_csv());
      print_solve(out, h.result);
      return h.result.status == SolveStatus::max_iter ? 2 : 0;
    } else {
      throw std::invalid_argument("unknown --method " + st.method);
    }
    print_solve(out, res);
    return res.status == SolveStatus::max_iter ? 2 : 0;
  }

  if (app.got_subcommand("model")) {
    if (!app.get_subcommand("model")->got_subcommand("check"))
      throw std::invalid_argument("model: expected `model check`");
    const MapExpr map = load_map(st);
    const SpaceSpec space = make_space(st, map.dim());
    const HomCheckReport rep =
        check_homogeneous_order_preserving(map, space, st.trials, st.seed);
    out << "homogeneous = " << (rep.homogeneous ? "true" : "false") << "\n";
    out << "order_preserving = " << (rep.order_preserving ? "true" : "false")
        << "\n";
    if (rep.counterexample) {
      out << "counterexample_x = " << fmt(rep.counterexample->first) << "\n";
      out << "counterexample_y = " << fmt(rep.counterexample->second) << "\n";
    }
    return 0;
  }

  if (app.got_subcommand("gauge")) {
    const Point x = parse_vector(st.vector_arg);
    const GaugeResult res = normal_point_gauge(x);
    out << "value = " << fmt(res.value) << "\n";
    out << "witness = " << fmt(res.witness) << "\n";
    return 0;
  }

  if (app.got_subcommand("orbit")) {
    const MapExpr map = load_map(st);
    const SpaceSpec space = make_space(st, map.dim());
    const Point x0 = st.x0_arg.empty() ? ones(map.dim())
                                       : parse_vector(st.x0_arg);
    const OrbitSummary orbit =
        orbit_simulate(map, space, x0, st.steps, st.normalized);
    if (!st.out_path.empty()) write_file(st.out_path, orbit.to_csv());
    out << "steps = " << st.steps << "\n";
    out << "final_norm = " << fmt(orbit.norms.back()) << "\n";
    if (orbit.hit_zero) out << "hit_zero_at = " << orbit.zero_step << "\n";
    return 0;
  }

  if (app.got_subcommand("dissipativity")) {
    if (st.model_path.empty())
      throw std::invalid_argument("missing --model <path>");
    ParsedModel m = load_model_file(st.model_path);
    if (!m.rank)
      throw std::invalid_argument("dissipativity needs a rank model");
    DissipativityParams par;
    par.eps = st.eps;
    par.c = st.c;
    par.seeds = st.seeds;
    par.steps = st.steps;
    par.seed = st.seed;
    // Sum norm is the population-mass norm; the linear comparison needs
    // eps < 1/3 there to contract.
    if (par.eps >= 1.0 / 3.0)
      out << "warning: eps >= 1/3, the comparison map cannot contract in "
             "the sum norm\n";
    const DissipativityReport rep =
        dissipativity_check(*m.rank, par, st.serial ? Exec::serial
                                                    : Exec::parallel);
    if (!st.out_path.empty()) write_file(st.out_path, rep.to_csv());
    if (!st.traj_path.empty())
      write_file(st.traj_path, rep.trajectories_csv());
    out << "premise_ok = " << (rep.premise_ok ? "true" : "false") << "\n";
    out << "contraction_ok = " << (rep.contraction_ok ? "true" : "false")
        << "\n";
    out << "c_tilde = " << fmt(rep.premise_c_tilde) << "\n";
    out << "rho_A = " << fmt(rep.contraction_rho) << "\n";
    out << "c_hat = " << fmt(rep.bound_c_hat) << "\n";
    double worst = 0.0;
    for (double v : rep.orbit_limsup) worst = std::max(worst, v);
    out << "max_orbit_limsup = " << fmt(worst) << "\n";
    return 0;
  }

  throw std::invalid_argument("missing subcommand (see --help)");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"certified enclosures of cone spectral radii for homogeneous "
               "order-preserving maps"};
  app.require_subcommand(0, 1);
  CliState st;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--space", st.space_name,
                    "norm kind: sup, sum, euclid, bv");
    cmd->add_option("--seed", st.seed, "random seed");
    cmd->add_option("--out", st.out_path, "output CSV path");
    cmd->add_flag("--serial", st.serial, "disable parallel evaluation");
  };

  CLI::App* psi = app.add_subcommand("psi", "companion half-norm of a vector");
  psi->add_option("--vector", st.vector_arg, "comma-separated coordinates")
      ->required();
  add_common(psi);

  CLI::App* opn = app.add_subcommand("opnorm", "cone operator norm");
  opn->add_option("--model", st.model_path, "model JSON path")->required();
  opn->add_option("--samples", st.samples, "random probes for the search");
  add_common(opn);

  CLI::App* enc =
      app.add_subcommand("enclosure", "certified spectral-radius enclosure");
  enc->add_option("--model", st.model_path, "model JSON path")->required();
  enc->add_option("--horizon", st.horizon, "power horizon N");
  enc->add_option("--probes", st.probes, "random lower probes");
  add_common(enc);

  CLI::App* eig = app.add_subcommand("eig", "eigenpair and lower-eigenvector "
                                            "solvers");
  eig->add_option("--model", st.model_path, "model JSON path")->required();
  eig->add_option("--method", st.method,
                  "power, cyclic, sup, meet, or homotopy");
  eig->add_option("--x0", st.x0_arg, "start vector (power)");
  eig->add_option("--w", st.w_arg, "seed vector (cyclic/sup)");
  eig->add_option("--u", st.u_arg, "order bound (meet/homotopy)");
  eig->add_option("--m", st.m, "period (cyclic/sup)");
  eig->add_option("--r", st.r, "level (cyclic/sup/meet)");
  eig->add_option("--K", st.K, "meet-iteration steps");
  eig->add_option("--eps0", st.eps0, "initial perturbation (homotopy)");
  eig->add_option("--steps", st.steps, "homotopy steps");
  eig->add_option("--tol", st.tol, "tolerance");
  eig->add_option("--max-iter", st.max_iter, "iteration budget");
  add_common(eig);

  CLI::App* model = app.add_subcommand("model", "model utilities");
  CLI::App* check =
      model->add_subcommand("check", "homogeneity/monotonicity report");
  check->add_option("--model", st.model_path, "model JSON path")->required();
  check->add_option("--trials", st.trials, "sampling trials");
  add_common(check);

  CLI::App* gauge =
      app.add_subcommand("gauge", "bv normal-point gauge of a cone vector");
  gauge->add_option("--vector", st.vector_arg, "comma-separated coordinates")
      ->required();
  add_common(gauge);

  CLI::App* orbit = app.add_subcommand("orbit", "forward orbit simulation");
  orbit->add_option("--model", st.model_path, "model JSON path")->required();
  orbit->add_option("--x0", st.x0_arg, "start vector");
  orbit->add_option("--steps", st.steps, "steps");
  orbit->add_flag("--normalized", st.normalized,
                  "renormalize every step (growth-factor mode)");
  add_common(orbit);

  CLI::App* diss =
      app.add_subcommand("dissipativity", "point-dissipativity report for "
                                          "saturating rank models");
  diss->add_option("--model", st.model_path, "rank model JSON path")
      ->required();
  diss->add_option("--eps", st.eps, "comparison-map weight");
  diss->add_option("--c", st.c, "premise radius");
  diss->add_option("--seeds", st.seeds, "random starts");
  diss->add_option("--steps", st.steps, "orbit steps");
  diss->add_option("--traj", st.traj_path, "trajectory CSV path");
  add_common(diss);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "{\"error\":\"" << e.what() << "\",\"exit\":1}\n";
    return 1;
  }

  try {
    return dispatch(app, st, out);
  } catch (const std::invalid_argument& e) {
    err << "{\"error\":\"" << e.what() << "\",\"exit\":1}\n";
    return 1;
  } catch (const std::exception& e) {
    err << "{\"error\":\"" << e.what() << "\",\"exit\":2}\n";
    return 2;
  }
}

}  // namespace conerad
