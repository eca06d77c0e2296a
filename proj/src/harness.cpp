#include "sopf/harness.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "sopf/error.hpp"

namespace sopf {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::invalid_argument, std::string("config parse failure: ") + e.what());
  }
}

std::map<std::string, double> to_map(const json& obj) {
  std::map<std::string, double> out;
  for (auto it = obj.begin(); it != obj.end(); ++it) out[it.key()] = it.value().get<double>();
  return out;
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  require(!ec, ErrorCode::io_error, "cannot create output directory " + dir);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  require(out.good(), ErrorCode::io_error, "cannot open " + path);
  out.precision(17);
  return out;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::io_error, "cannot read config file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_json_string(buffer.str());
}

ExperimentConfig ExperimentConfig::from_json_string(const std::string& text) {
  const json j = parse(text);
  ExperimentConfig config;
  require(j.contains("problem") && j["problem"].contains("id"), ErrorCode::invalid_argument,
          "config requires problem.id");
  config.problem_id = j["problem"]["id"].get<std::string>();
  if (j["problem"].contains("params")) config.problem_params = to_map(j["problem"]["params"]);

  if (j.contains("solver")) {
    const auto& s = j["solver"];
    if (s.contains("activation")) config.activation = s["activation"].get<std::string>();
    if (s.contains("derivative_method"))
      config.derivative_method = s["derivative_method"].get<std::string>();
    if (s.contains("hyperparams")) config.hyperparams = to_map(s["hyperparams"]);
  }
  if (j.contains("space")) {
    for (auto it = j["space"].begin(); it != j["space"].end(); ++it) {
      const auto& d = it.value();
      require(d.contains("range") && d["range"].size() == 2, ErrorCode::invalid_argument,
              "space dim " + it.key() + " needs a [lower, upper] range");
      SpaceDim dim;
      dim.name = it.key();
      dim.lower = d["range"][0].get<double>();
      dim.upper = d["range"][1].get<double>();
      dim.integer = d.value("integer", false);
      require(dim.lower < dim.upper, ErrorCode::invalid_argument,
              "space dim " + it.key() + " requires lower < upper");
      config.space.dims.push_back(dim);
    }
  }
  if (j.contains("optimizer")) {
    const auto& o = j["optimizer"];
    if (o.contains("algorithm")) config.algorithms = {o["algorithm"].get<std::string>()};
    if (o.contains("algorithms"))
      config.algorithms = o["algorithms"].get<std::vector<std::string>>();
    config.swarm_size = o.value("M", config.swarm_size);
    config.t_max = o.value("T_max", config.t_max);
  }
  if (j.contains("sweep")) {
    const auto& s = j["sweep"];
    if (s.contains("omegas")) config.sweep_omegas = s["omegas"].get<std::vector<double>>();
    if (s.contains("kappas")) config.sweep_kappas = s["kappas"].get<std::vector<double>>();
    if (s.contains("activations"))
      config.activations = s["activations"].get<std::vector<std::string>>();
  }
  if (j.contains("activations"))
    config.activations = j["activations"].get<std::vector<std::string>>();
  if (j.contains("seeds")) {
    const auto& s = j["seeds"];
    config.outer_seed = s.value("outer", config.outer_seed);
    config.inner_seed = s.value("inner", config.inner_seed);
    config.eval_seed = s.value("eval", config.eval_seed);
  }
  config.out_dir = j.value("output_dir", config.out_dir);
  return config;
}

std::string ExperimentConfig::to_json_string() const {
  json j;
  j["problem"]["id"] = problem_id;
  if (!problem_params.empty()) j["problem"]["params"] = problem_params;
  j["solver"]["activation"] = activation;
  j["solver"]["derivative_method"] = derivative_method;
  if (!hyperparams.empty()) j["solver"]["hyperparams"] = hyperparams;
  for (const auto& dim : space.dims) {
    j["space"][dim.name]["range"] = {dim.lower, dim.upper};
    if (dim.integer) j["space"][dim.name]["integer"] = true;
  }
  j["optimizer"]["algorithms"] = algorithms;
  j["optimizer"]["M"] = swarm_size;
  j["optimizer"]["T_max"] = t_max;
  if (!sweep_omegas.empty()) j["sweep"]["omegas"] = sweep_omegas;
  if (!sweep_kappas.empty()) j["sweep"]["kappas"] = sweep_kappas;
  if (!activations.empty()) j["sweep"]["activations"] = activations;
  j["seeds"]["outer"] = outer_seed;
  j["seeds"]["inner"] = inner_seed;
  j["seeds"]["eval"] = eval_seed;
  j["output_dir"] = out_dir;
  return j.dump(2);
}

PdeProblem ExperimentConfig::build_problem(double kappa_override) const {
  auto params = problem_params;
  if (kappa_override >= 0) params["kappa"] = kappa_override;
  return make_problem(problem_id, params);
}

InnerSettings ExperimentConfig::inner_settings() const {
  InnerSettings settings;
  settings.activation = activation_from_string(activation);
  if (derivative_method == "analytic") settings.method = DerivMethod::analytic;
  else if (derivative_method == "fd") settings.method = DerivMethod::fd;
  else fail(ErrorCode::invalid_argument, "derivative_method must be analytic or fd");
  return settings;
}

void RunReport::write_json(const std::string& path) const {
  json j;
  j["fvals"] = fvals;
  j["residual_norm"] = residual_norm;
  j["wall_seconds"] = wall_seconds;
  j["hyperparams"] = hyperparams_used;
  j["seeds"] = {{"outer", outer_seed}, {"inner", inner_seed}, {"eval", eval_seed}};
  j["artifacts"] = artifacts;
  auto out = open_out(path);
  out << j.dump(2) << "\n";
}

namespace {

void write_solution_grid(const PdeProblem& problem, const Solution& solution,
                         const std::string& path) {
  const Eigen::MatrixXd& points = problem.eval_points();
  auto out = open_out(path);
  for (int j = 0; j < problem.domain.dimension; ++j) out << "x" << j + 1 << ",";
  for (int f = 0; f < problem.num_fields(); ++f) {
    const std::string& name = problem.field_names[f];
    out << name << "_predicted," << name << "_analytic," << name << "_abs_error";
    out << (f + 1 < problem.num_fields() ? "," : "\n");
  }
  std::vector<Eigen::VectorXd> predicted;
  for (int f = 0; f < problem.num_fields(); ++f)
    predicted.push_back(
        solution.evaluate(f, points, MultiIndex::zero(problem.domain.dimension)));
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    for (int j = 0; j < problem.domain.dimension; ++j) out << points(i, j) << ",";
    for (int f = 0; f < problem.num_fields(); ++f) {
      const double truth = problem.analytic[f](points.row(i));
      out << predicted[f](i) << "," << truth << "," << std::abs(predicted[f](i) - truth);
      out << (f + 1 < problem.num_fields() ? "," : "\n");
    }
  }
}

RunReport base_report(const ExperimentConfig& config) {
  RunReport report;
  report.outer_seed = config.outer_seed;
  report.inner_seed = config.inner_seed;
  report.eval_seed = config.eval_seed;
  return report;
}

}  // namespace

RunReport run_solve(const ExperimentConfig& config) {
  require(!config.hyperparams.empty(), ErrorCode::invalid_argument,
          "solve requires explicit solver.hyperparams");
  ensure_dir(config.out_dir);
  const PdeProblem problem = config.build_problem();
  const auto t0 = std::chrono::steady_clock::now();
  const InnerReport inner =
      inner_solve(problem, config.hyperparams, config.inner_settings(), config.inner_seed);
  const auto t1 = std::chrono::steady_clock::now();

  RunReport report = base_report(config);
  for (int f = 0; f < problem.num_fields(); ++f)
    report.fvals[problem.field_names[f]] = inner.errors[f];
  report.residual_norm = inner.solution.residual_norm;
  report.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
  report.hyperparams_used = config.hyperparams;

  const std::string grid_path = join_path(config.out_dir, "solution_" + problem.id + ".csv");
  write_solution_grid(problem, inner.solution, grid_path);
  report.artifacts.push_back(grid_path);
  if (!inner.newton_trace.empty()) {
    const std::string trace_path = join_path(config.out_dir, "newton_" + problem.id + ".csv");
    NewtonResult{inner.solution, inner.newton_trace}.write_trace_csv(trace_path);
    report.artifacts.push_back(trace_path);
  }
  const std::string report_path = join_path(config.out_dir, "report_" + problem.id + ".json");
  report.write_json(report_path);
  report.artifacts.push_back(report_path);
  return report;
}

RunReport run_optimize(const ExperimentConfig& config) {
  require(!config.space.dims.empty(), ErrorCode::invalid_argument,
          "optimize requires a hyperparameter space");
  ensure_dir(config.out_dir);
  const PdeProblem problem = config.build_problem();
  const auto activations =
      config.activations.empty() ? std::vector<std::string>{config.activation}
                                 : config.activations;

  RunReport report = base_report(config);
  const auto t0 = std::chrono::steady_clock::now();
  double best = std::numeric_limits<double>::infinity();
  for (const auto& act_name : activations) {
    InnerSettings settings = config.inner_settings();
    settings.activation = activation_from_string(act_name);
    FitnessFunction fitness = [&](const Eigen::VectorXd& position) {
      return inner_fitness(problem, decode_position(config.space, position), settings,
                           config.inner_seed);
    };
    for (const auto& alg_name : config.algorithms) {
      const OptimizeResult result =
          optimize(config.space, fitness, algorithm_from_string(alg_name), config.swarm_size,
                   config.t_max, config.outer_seed);
      const std::string trace_path = join_path(
          config.out_dir, "trace_" + problem.id + "_" + act_name + "_" + alg_name + ".csv");
      result.write_trace_csv(trace_path, config.space);
      report.artifacts.push_back(trace_path);
      report.fvals[act_name + "/" + alg_name] = result.best_fval;
      if (result.best_fval < best) {
        best = result.best_fval;
        report.hyperparams_used = decode_position(config.space, result.best_position);
      }
    }
  }
  const auto t1 = std::chrono::steady_clock::now();
  report.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
  const std::string report_path =
      join_path(config.out_dir, "optimize_" + problem.id + ".json");
  report.write_json(report_path);
  report.artifacts.push_back(report_path);
  return report;
}

RunReport run_sweep(const ExperimentConfig& config) {
  require(!config.sweep_omegas.empty(), ErrorCode::invalid_argument,
          "sweep requires sweep.omegas");
  ensure_dir(config.out_dir);
  const auto activations =
      config.activations.empty() ? std::vector<std::string>{config.activation}
                                 : config.activations;
  const auto kappas =
      config.sweep_kappas.empty() ? std::vector<double>{10.0} : config.sweep_kappas;

  // defaults for the fixed 100-neuron sweep solve; overridable from the config
  std::map<std::string, double> hyper = {
      {"N", 100}, {"lambda", 100.0}, {"N1", 300}, {"N2", 2}};
  for (const auto& [k, v] : config.hyperparams) hyper[k] = v;
  hyper["N"] = 100;

  RunReport report = base_report(config);
  const std::string grid_path = join_path(config.out_dir, "sweep.csv");
  auto out = open_out(grid_path);
  out << "activation,omega,kappa,fval\n";
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& act_name : activations) {
    InnerSettings settings = config.inner_settings();
    settings.activation = activation_from_string(act_name);
    for (double kappa : kappas) {
      const PdeProblem problem = make_problem("poisson1d_sweep", {{"kappa", kappa}});
      for (double omega : config.sweep_omegas) {
        hyper["omega"] = omega;
        const double fval = inner_fitness(problem, hyper, settings, config.inner_seed);
        out << act_name << "," << omega << "," << kappa << "," << fval << "\n";
        report.fvals[act_name + "/omega=" + std::to_string(omega) +
                     "/kappa=" + std::to_string(kappa)] = fval;
      }
    }
  }
  const auto t1 = std::chrono::steady_clock::now();
  report.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
  report.hyperparams_used = hyper;
  report.artifacts.push_back(grid_path);
  return report;
}

RunReport run_derivative_bench(const ExperimentConfig& config) {
  require(!config.hyperparams.empty(), ErrorCode::invalid_argument,
          "dbench requires explicit solver.hyperparams");
  ensure_dir(config.out_dir);
  const PdeProblem problem = config.build_problem();

  RunReport report = base_report(config);
  const std::string csv_path = join_path(config.out_dir, "dbench_" + problem.id + ".csv");
  auto out = open_out(csv_path);
  out << "method,fval,assemble_seconds,solve_seconds\n";
  for (const auto& method_name : {std::string("analytic"), std::string("fd")}) {
    InnerSettings settings = config.inner_settings();
    settings.method =
        method_name == "analytic" ? DerivMethod::analytic : DerivMethod::fd;
    const InnerReport inner =
        inner_solve(problem, config.hyperparams, settings, config.inner_seed);
    out << method_name << "," << inner.fval << "," << inner.assemble_seconds << ","
        << inner.solve_seconds << "\n";
    report.fvals[method_name] = inner.fval;
    report.wall_seconds += inner.assemble_seconds + inner.solve_seconds;
  }
  report.hyperparams_used = config.hyperparams;
  report.artifacts.push_back(csv_path);
  return report;
}

}  // namespace sopf
