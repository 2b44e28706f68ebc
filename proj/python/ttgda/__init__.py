"""Two-timescale gradient descent ascent solvers for nonconvex minimax problems."""

from ._ttgda import (
    ConstraintSet,
    Problem,
    RegularityProfile,
    StepsizeSchedule,
    eval_phi,
    f_stationarity,
    gdmax_run,
    grad_phi,
    make_bilinear,
    make_quadratic_ncsc_demo,
    make_robust_logreg_file,
    make_robust_logreg_synthetic,
    make_wgan_linear,
    moreau_grad_norm,
    parse_libsvm,
    prox_phi,
    run_experiment_json,
    schedule_custom,
    schedule_nonsmooth_ncc,
    schedule_nonsmooth_ncsc,
    schedule_smooth_ncc,
    schedule_smooth_ncsc,
    translate_phi_to_f,
    ttgda_run,
    ttsgda_run,
    validate_profile,
)

__all__ = [
    "ConstraintSet",
    "Problem",
    "RegularityProfile",
    "StepsizeSchedule",
    "eval_phi",
    "f_stationarity",
    "gdmax_run",
    "grad_phi",
    "make_bilinear",
    "make_quadratic_ncsc_demo",
    "make_robust_logreg_file",
    "make_robust_logreg_synthetic",
    "make_wgan_linear",
    "moreau_grad_norm",
    "parse_libsvm",
    "prox_phi",
    "run_experiment_json",
    "schedule_custom",
    "schedule_nonsmooth_ncc",
    "schedule_nonsmooth_ncsc",
    "schedule_smooth_ncc",
    "schedule_smooth_ncsc",
    "translate_phi_to_f",
    "ttgda_run",
    "ttsgda_run",
    "validate_profile",
]
