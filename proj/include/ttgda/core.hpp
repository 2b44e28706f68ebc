#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace ttgda {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Counter-based pseudorandom state. Every draw is a pure function of
/// (key, counter), so streams can be split, replayed and shared across
/// concurrent runs without hidden global state.
struct RngState {
  std::uint64_t key = 0;
  std::uint64_t counter = 0;

  static std::uint64_t mix(std::uint64_t z);
  static RngState seeded(std::uint64_t seed);
  RngState substream(std::uint64_t stream) const;

  std::uint64_t next_u64();
  double uniform();  // [0, 1)
  double normal();   // standard normal; consumes two uniforms, no cached spare
  std::size_t uniform_index(std::size_t n);
  Vec gaussian(int dim);
};

enum class Regime { SmoothNcsc, SmoothNcc, NonsmoothNcsc, NonsmoothNcc, Custom };

const char* regime_name(Regime r);
std::optional<Regime> parse_regime(const std::string& name);

inline bool regime_strongly_concave(Regime r) {
  return r == Regime::SmoothNcsc || r == Regime::NonsmoothNcsc;
}
inline bool regime_smooth(Regime r) {
  return r == Regime::SmoothNcsc || r == Regime::SmoothNcc;
}

/// Problem constants that parameterize every stepsize rule and stationarity
/// certificate. kappa is stored explicitly and validated against ell/mu
/// rather than recomputed.
struct RegularityProfile {
  double lipschitz_L = 0.0;         // Lipschitz constant of f in x
  double smooth_ell = 0.0;          // joint gradient-Lipschitz constant
  double strong_concavity_mu = 0.0; // 0 encodes merely concave
  double weak_convexity_rho = 0.0;
  double noise_var_sigma2 = 0.0;    // per-block variance bound of the sampler
  double diameter_D = 0.0;
  double kappa = 1.0;

  RegularityProfile& finalize_kappa();
};

/// Empty result means the profile satisfies every requirement of the regime.
std::vector<std::string> validate_profile(const RegularityProfile& p,
                                          Regime regime);

struct GradPair {
  Vec gx;
  Vec gy;
};

/// Deterministic value/subgradient access to f plus an optional stochastic
/// sampler. Oracles are immutable after construction; the sampler draws all
/// randomness from the caller's RngState.
struct MinimaxOracle {
  int dim_x = 0;
  int dim_y = 0;
  std::function<double(const Vec&, const Vec&)> value;
  std::function<GradPair(const Vec&, const Vec&)> subgrad;
  std::function<GradPair(const Vec&, const Vec&, RngState&)> stochastic_sample;
  RegularityProfile profile;

  bool has_stochastic() const { return static_cast<bool>(stochastic_sample); }
};

struct IterateState {
  long t = 0;
  Vec x;
  Vec y;
  RngState rng;
};

struct TraceRecord {
  long t = 0;
  Vec x;
  Vec y;
  double eta_x = 0.0;
  double eta_y = 0.0;
};

struct DiagnosticRecord {
  long t = 0;
  double metric = kNaN;
  double f_value = kNaN;
  double primal_gap = kNaN;    // phi(x_t) - f(x_t, y_t), when computed
  double tracking_err = kNaN;  // ||y*(x_t) - y_t||^2, when computed
  long grad_evals = 0;         // cumulative algorithm evaluations at this t
};

enum class RunStatus { Ok, Diverged, OracleFailure };

const char* run_status_name(RunStatus s);

/// Per-iteration record of a solver run plus summary bookkeeping.
///
/// Two counters are kept: oracle_calls counts subgrad/minibatch invocations
/// (one per subgrad call, M per minibatch), grad_evals counts individual
/// partial-gradient evaluations (two per subgrad call, 2M per minibatch).
/// Measurement-only evaluations go to diag_grad_evals and never mix with the
/// algorithm budget.
struct RunTrace {
  std::vector<TraceRecord> records;
  std::vector<DiagnosticRecord> diagnostics;
  std::string metric_name = "none";
  long selected_index = -1;  // index of the uniformly drawn x-hat
  Vec selected_x;
  long oracle_calls = 0;
  long grad_evals = 0;
  long diag_grad_evals = 0;
  double delta_phi_estimate = kNaN;
  double inner_tol = kNaN;
  RunStatus status = RunStatus::Ok;
  long failure_t = -1;
  long total_iters = 0;

  const TraceRecord* record_at(long t) const;
};

}  // namespace ttgda
