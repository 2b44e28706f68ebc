#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ttgda/harness.hpp"
#include "ttgda/stationarity.hpp"

namespace py = pybind11;
using namespace ttgda;

namespace {

py::dict trace_to_dict(const RunTrace& t) {
  py::dict d;
  const long n = static_cast<long>(t.records.size());
  Mat xs(n, n > 0 ? t.records.front().x.size() : 0);
  Mat ys(n, n > 0 ? t.records.front().y.size() : 0);
  Eigen::VectorXi ts(n);
  for (long i = 0; i < n; ++i) {
    xs.row(i) = t.records[i].x;
    ys.row(i) = t.records[i].y;
    ts[i] = static_cast<int>(t.records[i].t);
  }
  d["t"] = ts;
  d["x"] = xs;
  d["y"] = ys;
  py::list diag;
  for (const auto& rec : t.diagnostics) {
    py::dict e;
    e["t"] = rec.t;
    e["metric"] = rec.metric;
    e["f_value"] = rec.f_value;
    e["grad_evals"] = rec.grad_evals;
    diag.append(e);
  }
  d["diagnostics"] = diag;
  d["metric_name"] = t.metric_name;
  d["selected_index"] = t.selected_index;
  d["selected_x"] = t.selected_x;
  d["oracle_calls"] = t.oracle_calls;
  d["grad_evals"] = t.grad_evals;
  d["status"] = run_status_name(t.status);
  d["total_iters"] = t.total_iters;
  return d;
}

SolverConfig make_config(const StepsizeSchedule& schedule, long T,
                         std::uint64_t seed, long retain_max) {
  SolverConfig cfg;
  cfg.schedule = schedule;
  cfg.max_iters = T;
  cfg.seed = seed;
  cfg.retain_max = retain_max;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_ttgda, m) {
  m.doc() = "two-timescale gradient descent ascent solvers and diagnostics";

  py::class_<RegularityProfile>(m, "RegularityProfile")
      .def(py::init<>())
      .def_readwrite("lipschitz_L", &RegularityProfile::lipschitz_L)
      .def_readwrite("smooth_ell", &RegularityProfile::smooth_ell)
      .def_readwrite("strong_concavity_mu", &RegularityProfile::strong_concavity_mu)
      .def_readwrite("weak_convexity_rho", &RegularityProfile::weak_convexity_rho)
      .def_readwrite("noise_var_sigma2", &RegularityProfile::noise_var_sigma2)
      .def_readwrite("diameter_D", &RegularityProfile::diameter_D)
      .def_readwrite("kappa", &RegularityProfile::kappa)
      .def("finalize_kappa",
           [](RegularityProfile& p) { return p.finalize_kappa(); });

  m.def("validate_profile", [](const RegularityProfile& p, const std::string& regime) {
    const auto r = parse_regime(regime);
    if (!r) throw std::invalid_argument("unknown regime: " + regime);
    return validate_profile(p, *r);
  });

  py::class_<ConstraintSet>(m, "ConstraintSet")
      .def_static("box", &ConstraintSet::box)
      .def_static("ball", &ConstraintSet::ball)
      .def_static("simplex", &ConstraintSet::simplex)
      .def("project", &ConstraintSet::project)
      .def("contains", &ConstraintSet::contains)
      .def("center", &ConstraintSet::center)
      .def_property_readonly("dim", &ConstraintSet::dim)
      .def_property_readonly("diameter", &ConstraintSet::diameter);

  py::class_<StepsizeSchedule>(m, "StepsizeSchedule")
      .def_readonly("eta_x_const", &StepsizeSchedule::eta_x_const)
      .def_readonly("eta_y_const", &StepsizeSchedule::eta_y_const)
      .def_readonly("block_B", &StepsizeSchedule::block_B)
      .def_readonly("batch_M", &StepsizeSchedule::batch_M)
      .def("eta_x", &StepsizeSchedule::eta_x)
      .def("eta_y", &StepsizeSchedule::eta_y);

  m.def("schedule_smooth_ncsc", &schedule_smooth_ncsc, py::arg("profile"),
        py::arg("stochastic") = false, py::arg("eps") = kNaN);
  m.def("schedule_smooth_ncc", &schedule_smooth_ncc, py::arg("profile"),
        py::arg("stochastic"), py::arg("eps"));
  m.def("schedule_nonsmooth_ncsc", &schedule_nonsmooth_ncsc, py::arg("profile"),
        py::arg("stochastic"), py::arg("eps"));
  m.def("schedule_nonsmooth_ncc", &schedule_nonsmooth_ncc, py::arg("profile"),
        py::arg("stochastic"), py::arg("eps"));
  m.def("schedule_custom", &schedule_custom, py::arg("eta_x"), py::arg("eta_y"),
        py::arg("batch_M") = 1);

  py::class_<Problem>(m, "Problem")
      .def_readonly("kind", &Problem::kind)
      .def_property_readonly("set", [](const Problem& p) { return p.set; })
      .def_property_readonly(
          "profile", [](const Problem& p) { return p.oracle.profile; })
      .def_readonly("default_x0", &Problem::default_x0)
      .def_readonly("default_y0", &Problem::default_y0)
      .def("value", [](const Problem& p, const Vec& x, const Vec& y) {
        return p.oracle.value(x, y);
      })
      .def("subgrad",
           [](const Problem& p, const Vec& x, const Vec& y) {
             const GradPair g = p.oracle.subgrad(x, y);
             return py::make_tuple(g.gx, g.gy);
           })
      .def("phi_ref",
           [](const Problem& p, const Vec& x) {
             if (!p.phi_ref) throw std::runtime_error("no closed-form phi");
             return p.phi_ref(x);
           })
      .def("has_sampler", [](const Problem& p) { return p.oracle.has_stochastic(); });

  m.def("make_bilinear", &make_bilinear, py::arg("scale"), py::arg("radius"));
  m.def("make_quadratic_ncsc_demo", &make_quadratic_ncsc_demo, py::arg("dim_x"),
        py::arg("dim_y"), py::arg("kappa_target"), py::arg("seed"));
  m.def("make_wgan_linear", &make_wgan_linear, py::arg("mu_hat"),
        py::arg("sigma_hat"), py::arg("lambda_"), py::arg("y_radius") = 5.0,
        py::arg("test_radius_x") = 2.0);
  m.def(
      "make_robust_logreg_synthetic",
      [](int N, int d, double margin, std::uint64_t seed, double lambda1,
         double lambda2, double alpha) {
        const DatasetLibsvm data = synthetic_blobs(N, d, margin, seed);
        return make_robust_logreg(
            data, lambda1 > 0 ? lambda1 : 1.0 / (static_cast<double>(N) * N),
            lambda2, alpha);
      },
      py::arg("N"), py::arg("d"), py::arg("margin") = 1.0, py::arg("seed") = 3,
      py::arg("lambda1") = -1.0, py::arg("lambda2") = 1e-2, py::arg("alpha") = 10.0);
  m.def("parse_libsvm", [](const std::string& text) {
    std::istringstream in(text);
    const DatasetLibsvm d = parse_libsvm(in);
    py::list rows;
    for (const auto& row : d.rows) {
      py::list r;
      for (const auto& [idx, val] : row) r.append(py::make_tuple(idx, val));
      rows.append(r);
    }
    py::dict out;
    out["num_samples"] = d.num_samples;
    out["num_features"] = d.num_features;
    out["labels"] = d.labels;
    out["rows"] = rows;
    return out;
  });
  m.def("make_robust_logreg_file",
        [](const std::string& path, double lambda1, double lambda2, double alpha) {
          const DatasetLibsvm data = parse_libsvm_file(path);
          const int n = data.num_samples;
          return make_robust_logreg(
              data, lambda1 > 0 ? lambda1 : 1.0 / (static_cast<double>(n) * n),
              lambda2, alpha);
        },
        py::arg("path"), py::arg("lambda1") = -1.0, py::arg("lambda2") = 1e-2,
        py::arg("alpha") = 10.0);

  m.def(
      "ttgda_run",
      [](const Problem& p, const StepsizeSchedule& s, long T, std::uint64_t seed,
         const std::optional<Vec>& x0, const std::optional<Vec>& y0,
         long retain_max) {
        const SolverConfig cfg = make_config(s, T, seed, retain_max);
        return trace_to_dict(ttgda_run(p.oracle, p.set, cfg,
                                       x0 ? *x0 : p.default_x0,
                                       y0 ? *y0 : p.default_y0));
      },
      py::arg("problem"), py::arg("schedule"), py::arg("T"), py::arg("seed") = 0,
      py::arg("x0") = std::nullopt, py::arg("y0") = std::nullopt,
      py::arg("retain_max") = 0);

  m.def(
      "ttsgda_run",
      [](const Problem& p, const StepsizeSchedule& s, long T, std::uint64_t seed,
         const std::optional<Vec>& x0, const std::optional<Vec>& y0,
         long retain_max) {
        const SolverConfig cfg = make_config(s, T, seed, retain_max);
        return trace_to_dict(ttsgda_run(p.oracle, p.set, cfg,
                                        x0 ? *x0 : p.default_x0,
                                        y0 ? *y0 : p.default_y0));
      },
      py::arg("problem"), py::arg("schedule"), py::arg("T"), py::arg("seed") = 0,
      py::arg("x0") = std::nullopt, py::arg("y0") = std::nullopt,
      py::arg("retain_max") = 0);

  m.def(
      "gdmax_run",
      [](const Problem& p, const StepsizeSchedule& s, long T, long inner_steps,
         std::uint64_t seed, const std::optional<Vec>& x0,
         const std::optional<Vec>& y0) {
        const SolverConfig cfg = make_config(s, T, seed, 0);
        return trace_to_dict(gdmax_run(p.oracle, p.set, cfg, inner_steps,
                                       x0 ? *x0 : p.default_x0,
                                       y0 ? *y0 : p.default_y0));
      },
      py::arg("problem"), py::arg("schedule"), py::arg("T"),
      py::arg("inner_steps") = 10, py::arg("seed") = 0,
      py::arg("x0") = std::nullopt, py::arg("y0") = std::nullopt);

  m.def("eval_phi",
        [](const Problem& p, const Vec& x, double tol) {
          const PhiEval e = eval_phi(p.oracle, p.set, x, tol);
          py::dict d;
          d["value"] = e.value;
          d["y"] = e.y;
          d["residual"] = e.residual;
          d["iterations"] = e.iterations;
          d["converged"] = e.converged;
          return d;
        },
        py::arg("problem"), py::arg("x"), py::arg("tol") = 1e-6);

  m.def("grad_phi",
        [](const Problem& p, const Vec& x, double tol) {
          return grad_phi(p.oracle, p.set, x, tol).grad;
        },
        py::arg("problem"), py::arg("x"), py::arg("tol") = 1e-6);

  m.def("prox_phi",
        [](const Problem& p, const Vec& x, double rho_hat, double tol) {
          const ProxResult r = prox_phi(p.oracle, p.set, x, rho_hat, tol);
          py::dict d;
          d["prox_point"] = r.prox_point;
          d["certificate_gap"] = r.certificate_gap;
          d["envelope_value"] = r.envelope_value;
          d["converged"] = r.converged;
          return d;
        },
        py::arg("problem"), py::arg("x"), py::arg("rho_hat"),
        py::arg("tol") = 1e-6);

  m.def("moreau_grad_norm",
        [](const Problem& p, const Vec& x, double rho_hat, double tol) {
          return moreau_grad_norm(p.oracle, p.set, x, rho_hat, tol);
        },
        py::arg("problem"), py::arg("x"), py::arg("rho_hat"),
        py::arg("tol") = 1e-6);

  m.def("f_stationarity",
        [](const Problem& p, const Vec& x, const Vec& y) {
          const FStationarity fs = f_stationarity(p.oracle, p.set, x, y);
          return py::make_tuple(fs.f_grad_x_norm, fs.grad_mapping_norm);
        },
        py::arg("problem"), py::arg("x"), py::arg("y"));

  m.def("translate_phi_to_f",
        [](const Problem& p, const Vec& x_hat, double eps) {
          const TranslationResult tr = translate_phi_to_f(p.oracle, p.set, x_hat, eps);
          py::dict d;
          d["x"] = tr.x;
          d["y"] = tr.y;
          d["f_grad_x_norm"] = tr.f_grad_x_norm;
          d["grad_mapping_norm"] = tr.grad_mapping_norm;
          d["grad_evals"] = tr.grad_evals;
          d["certified"] = tr.certified;
          d["warning"] = tr.warning;
          return d;
        },
        py::arg("problem"), py::arg("x_hat"), py::arg("eps"));

  m.def("run_experiment_json", [](const std::string& config_json) {
    const ExperimentConfig cfg = config_from_json(Json::parse(config_json));
    const ExperimentResult r = run_experiment(cfg);
    return py::make_tuple(r.summary.dump(), r.csv);
  });
}
