#include <cstdint>
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "sopifrnn.h"

namespace {

struct VerbArgs {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

int run_verb(const VerbArgs& args,
             sopifrnn_status (*command)(const sopifrnn_config*, sopifrnn_report**)) {
  sopifrnn_config* config = nullptr;
  sopifrnn_status status = sopifrnn_config_load(args.config_path.c_str(), &config);
  if (status != SOPIFRNN_OK) {
    std::fprintf(stderr, "error: %s\n", sopifrnn_last_error());
    return status;
  }
  if (args.seed_set) sopifrnn_config_set_seed(config, args.seed);
  if (!args.out_dir.empty()) sopifrnn_config_set_output_dir(config, args.out_dir.c_str());

  sopifrnn_report* report = nullptr;
  status = command(config, &report);
  if (status != SOPIFRNN_OK) {
    std::fprintf(stderr, "error: %s\n", sopifrnn_last_error());
    sopifrnn_config_free(config);
    return status;
  }

  for (size_t i = 0; i < sopifrnn_report_num_fvals(report); ++i)
    std::printf("%s: %.6e\n", sopifrnn_report_fval_key(report, i),
                sopifrnn_report_fval(report, i));
  std::printf("wall_seconds: %.3f\n", sopifrnn_report_wall_seconds(report));
  for (size_t i = 0; i < sopifrnn_report_num_artifacts(report); ++i)
    std::printf("wrote %s\n", sopifrnn_report_artifact(report, i));

  sopifrnn_report_free(report);
  sopifrnn_config_free(config);
  return 0;
}

void add_verb(CLI::App& app, VerbArgs& args, const std::string& name,
              const std::string& description,
              sopifrnn_status (*command)(const sopifrnn_config*, sopifrnn_report**),
              int& exit_code) {
  CLI::App* verb = app.add_subcommand(name, description);
  verb->add_option("--config", args.config_path, "experiment config file (JSON)")
      ->required();
  verb->add_option("--seed", args.seed, "override outer/inner seeds");
  verb->add_option("--out", args.out_dir, "output directory override");
  verb->callback([&args, verb, command, &exit_code] {
    args.seed_set = verb->count("--seed") > 0;
    exit_code = run_verb(args, command);
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PDE solver with randomized Fourier-feature networks and PSO tuning"};
  app.require_subcommand(1);
  VerbArgs args;
  int exit_code = 0;
  add_verb(app, args, "solve", "one inner solve at explicit hyperparameters",
           sopifrnn_run_solve, exit_code);
  add_verb(app, args, "optimize", "outer hyperparameter optimization",
           sopifrnn_run_optimize, exit_code);
  add_verb(app, args, "sweep", "activation/omega grid on the 1D Poisson problem",
           sopifrnn_run_sweep, exit_code);
  add_verb(app, args, "dbench", "analytic-vs-fd derivative benchmark",
           sopifrnn_run_dbench, exit_code);
  CLI11_PARSE(app, argc, argv);
  return exit_code;
}
