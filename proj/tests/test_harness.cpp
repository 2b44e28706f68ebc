#include <filesystem>
#include <fstream>

#include "test_support.hpp"
#include "ttgda/harness.hpp"

using namespace ttgda;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

long count_metric_rows(const std::string& csv) {
  long rows = 0;
  bool seen_header = false;
  std::istringstream ss(csv);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!seen_header) {
      seen_header = true;
      continue;
    }
    ++rows;
  }
  return rows;
}

}  // namespace

TEST_CASE("run_experiment produces a versioned deterministic csv") {
  ExperimentConfig cfg;
  cfg.problem = Json{{"kind", "bilinear"}, {"c", 1.0}, {"radius", 1.0}};
  cfg.algorithm = "ttgda";
  cfg.regime = "custom";
  cfg.eta_x = 2.5e-3;
  cfg.eta_y = 2.5e-1;
  cfg.T = 1000;
  cfg.seed = 7;
  cfg.diagnostics_every = 100;

  ExperimentResult a = run_experiment(cfg);
  CHECK(a.csv.rfind("# ttgda-trace-v1\n", 0) == 0);
  CHECK(count_metric_rows(a.csv) == 1 + 10);
  CHECK(a.summary["grad_evals"] == 2 * 1000);
  CHECK(a.summary["oracle_calls"] == 1000);

  ExperimentResult b = run_experiment(cfg);
  CHECK(a.csv == b.csv);

  SUBCASE("persisted files are byte-identical across reruns") {
    const fs::path dir1 = fs::temp_directory_path() / "ttgda_test_run1";
    const fs::path dir2 = fs::temp_directory_path() / "ttgda_test_run2";
    fs::remove_all(dir1);
    fs::remove_all(dir2);
    cfg.out = dir1.string();
    run_experiment(cfg);
    cfg.out = dir2.string();
    run_experiment(cfg);
    CHECK(slurp(dir1 / "trace.csv") == slurp(dir2 / "trace.csv"));
    CHECK(fs::exists(dir1 / "summary.json"));
    fs::remove_all(dir1);
    fs::remove_all(dir2);
  }
}

TEST_CASE("run_experiment reaches the target on the demo quadratic") {
  ExperimentConfig cfg;
  cfg.problem = Json{{"kind", "quadratic-ncsc"}};
  cfg.algorithm = "ttgda";
  cfg.regime = "smooth-ncsc";
  cfg.eps = 0.05;
  cfg.T = 40000;
  cfg.diagnostics_every = 400;
  cfg.stop_metric_below = 0.05;
  ExperimentResult r = run_experiment(cfg);
  CHECK(r.summary["metric_name"] == "grad_phi_norm");
  CHECK(r.summary["min_metric"].get<double>() <= 0.05);
}

TEST_CASE("config validation reports structured errors") {
  ExperimentConfig cfg;
  cfg.problem = Json{{"kind", "bilinear"}};
  cfg.algorithm = "ttgda";
  cfg.regime = "smooth-ncsc";  // needs mu > 0, bilinear has mu = 0
  cfg.eps = 0.1;
  const auto errors = validate_config(cfg);
  REQUIRE(!errors.empty());
  bool found = false;
  for (const auto& e : errors)
    found = found || e.find("mu>0 required") != std::string::npos;
  CHECK(found);

  SUBCASE("ttsgda needs a sampler") {
    cfg.regime = "custom";
    cfg.eta_x = 1e-3;
    cfg.eta_y = 1e-2;
    cfg.algorithm = "ttsgda";
    const auto errs = validate_config(cfg);
    bool sampler_err = false;
    for (const auto& e : errs)
      sampler_err = sampler_err || e.find("stochastic") != std::string::npos;
    CHECK(sampler_err);
  }

  SUBCASE("unknown fields") {
    cfg.algorithm = "nope";
    CHECK(!validate_config(cfg).empty());
    cfg.algorithm = "ttgda";
    cfg.regime = "not-a-regime";
    CHECK(!validate_config(cfg).empty());
  }
}

TEST_CASE("sweep grid") {
  ExperimentConfig base;
  base.problem = Json{{"kind", "bilinear"}};
  base.algorithm = "ttgda";
  base.T = 200;
  base.seed = 5;
  base.diagnostics_every = 50;

  const Json grid = Json{{"eta_y", {0.1, 1.0}}, {"ratio", {10.0, 100.0, 1000.0}}};
  const auto cells = run_sweep(base, grid, "");
  REQUIRE(cells.size() == 6);
  for (const auto& c : cells) CHECK(c.ok);

  // sorted by min metric
  for (std::size_t i = 1; i < cells.size(); ++i) {
    CHECK(cells[i - 1].summary["min_metric"].get<double>() <=
          cells[i].summary["min_metric"].get<double>() + 1e-15);
  }

  SUBCASE("degenerate grid reproduces run_experiment") {
    const Json single = Json{{"eta_y", {0.5}}, {"ratio", {100.0}}};
    const auto one = run_sweep(base, single, "");
    REQUIRE(one.size() == 1);
    ExperimentConfig cfg = base;
    cfg.regime = "custom";
    cfg.eta_y = 0.5;
    cfg.eta_x = 0.5 / 100.0;
    cfg.seed = RngState::mix(base.seed ^ RngState::mix(0));
    ExperimentResult r = run_experiment(cfg);
    CHECK(one[0].summary["min_metric"] == r.summary["min_metric"]);
    CHECK(one[0].summary["grad_evals"] == r.summary["grad_evals"]);
    CHECK(one[0].summary["x_hat_index"] == r.summary["x_hat_index"]);
  }

  SUBCASE("cells differ only in swept fields") {
    const Json two = Json{{"eta_y", {0.5}}, {"ratio", {10.0, 100.0}}};
    const auto cells2 = run_sweep(base, two, "");
    REQUIRE(cells2.size() == 2);
    CHECK(cells2[0].summary["schedule"]["eta_y"] ==
          cells2[1].summary["schedule"]["eta_y"]);
    CHECK(cells2[0].summary["schedule"]["eta_x"] !=
          cells2[1].summary["schedule"]["eta_x"]);
    CHECK(cells2[0].summary["T"] == cells2[1].summary["T"]);
  }
}

TEST_CASE("check suites") {
  SUBCASE("lemmas on the demo quadratic") {
    const CheckReport rep = run_check_suite("quadratic-ncsc", "lemmas");
    CHECK(rep.all_pass);
    bool has_tracking = false, has_descent = false;
    for (const auto& e : rep.entries) {
      has_tracking = has_tracking || e.name == "tracking-error-recursion";
      has_descent = has_descent || e.name == "descent-inequality";
    }
    CHECK(has_tracking);
    CHECK(has_descent);
  }

  SUBCASE("oracles on the bilinear game") {
    const CheckReport rep = run_check_suite("bilinear", "oracles");
    CHECK(rep.all_pass);
    bool has_fd = false;
    for (const auto& e : rep.entries)
      has_fd = has_fd || e.name == "finite-difference-consistency";
    CHECK(has_fd);
    const Json j = rep.to_json();
    CHECK(j["all_pass"] == true);
    CHECK(j["checks"].is_array());
  }

  SUBCASE("rates on the demo quadratic") {
    const CheckReport rep = run_check_suite("quadratic-ncsc", "rates");
    CHECK(rep.all_pass);
    CHECK(rep.entries.size() == 1);
    CHECK(rep.entries[0].name == "running-average-bound");
  }

  SUBCASE("unknown suite throws") {
    CHECK_THROWS_AS(run_check_suite("bilinear", "nope"), std::invalid_argument);
  }
}

TEST_CASE("ttsgda experiment counts 2MT evaluations") {
  ExperimentConfig cfg;
  cfg.problem = Json{{"kind", "wgan-linear"}};
  cfg.algorithm = "ttsgda";
  cfg.regime = "custom";
  cfg.eta_x = 1e-4;
  cfg.eta_y = 1e-2;
  cfg.batch_M = 10;
  cfg.T = 50;
  cfg.diagnostics_every = 0;
  ExperimentResult r = run_experiment(cfg);
  CHECK(r.summary["grad_evals"] == 2 * 10 * 50);
  CHECK(r.summary["oracle_calls"] == 10 * 50);
}
