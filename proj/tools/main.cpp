#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "ttgda/harness.hpp"

using namespace ttgda;

int main(int argc, char** argv) {
  CLI::App app{"two-timescale gradient descent ascent harness"};
  app.require_subcommand(1);

  std::string config_path, out_dir, data_path, problem_name, suite_name,
      json_out;
  long seed = -1;

  auto* run = app.add_subcommand("run", "run one experiment from a config");
  run->add_option("--config", config_path, "JSON config path")->required();
  run->add_option("--seed", seed, "override the config seed");
  run->add_option("--out", out_dir, "override the output directory");
  run->add_option("--data", data_path, "LIBSVM dataset path");

  auto* sweep = app.add_subcommand("sweep", "grid sweep over stepsize pairs");
  sweep->add_option("--config", config_path, "JSON config path")->required();
  sweep->add_option("--out", out_dir, "override the output directory");
  sweep->add_option("--data", data_path, "LIBSVM dataset path");

  auto* check = app.add_subcommand("check", "run an inequality/validation suite");
  check->add_option("--problem", problem_name, "built-in problem name")->required();
  check->add_option("--suite", suite_name, "lemmas | rates | oracles")->required();
  check->add_option("--data", data_path, "LIBSVM dataset path");
  check->add_option("--json", json_out, "write the machine-readable report here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      ExperimentConfig cfg = load_config(config_path);
      if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
      if (!out_dir.empty()) cfg.out = out_dir;
      if (!data_path.empty()) cfg.data_path = data_path;
      const auto errors = validate_config(cfg);
      if (!errors.empty()) {
        for (const auto& e : errors) std::cerr << "config error: " << e << "\n";
        return 2;
      }
      ExperimentResult r = run_experiment(cfg);
      std::cout << r.summary.dump(2) << "\n";
      return r.trace.status == RunStatus::Ok ? 0 : 3;
    }
    if (*sweep) {
      std::ifstream in(config_path);
      if (!in) {
        std::cerr << "cannot open config: " << config_path << "\n";
        return 2;
      }
      Json j;
      in >> j;
      ExperimentConfig base = config_from_json(j.value("base", Json::object()));
      if (!data_path.empty()) base.data_path = data_path;
      const std::string dir = !out_dir.empty() ? out_dir : base.out;
      const auto cells = run_sweep(base, j.value("grid", Json::object()), dir);
      std::cout << sweep_csv(cells);
      return 0;
    }
    if (*check) {
      CheckReport rep = run_check_suite(problem_name, suite_name, data_path);
      for (const auto& e : rep.entries) {
        std::printf("%s  %-42s tol=%-10.3g worst_margin=%-12.4g\n",
                    e.pass ? "PASS" : "FAIL", e.name.c_str(), e.tolerance,
                    e.worst_margin);
      }
      if (!json_out.empty()) {
        std::ofstream out(json_out);
        out << rep.to_json().dump(2) << "\n";
      }
      return rep.all_pass ? 0 : 1;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 0;
}
