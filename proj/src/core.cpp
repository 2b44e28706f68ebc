#include "ttgda/core.hpp"

#include <cmath>
#include <stdexcept>

namespace ttgda {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;
}

std::uint64_t RngState::mix(std::uint64_t z) {
  // splitmix64 finalizer
  z += kGolden;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

RngState RngState::seeded(std::uint64_t seed) {
  return RngState{mix(seed ^ 0x6a09e667f3bcc908ull), 0};
}

RngState RngState::substream(std::uint64_t stream) const {
  return RngState{mix(key ^ mix(stream + 0x243f6a8885a308d3ull)), 0};
}

std::uint64_t RngState::next_u64() { return mix(key + kGolden * ++counter); }

double RngState::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngState::normal() {
  double u1 = uniform();
  double u2 = uniform();
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * 3.14159265358979323846 * u2);
}

std::size_t RngState::uniform_index(std::size_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index: n must be positive");
  auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
  return i >= n ? n - 1 : i;
}

Vec RngState::gaussian(int dim) {
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v[i] = normal();
  return v;
}

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::SmoothNcsc: return "smooth-ncsc";
    case Regime::SmoothNcc: return "smooth-ncc";
    case Regime::NonsmoothNcsc: return "nonsmooth-ncsc";
    case Regime::NonsmoothNcc: return "nonsmooth-ncc";
    case Regime::Custom: return "custom";
  }
  return "unknown";
}

std::optional<Regime> parse_regime(const std::string& name) {
  if (name == "smooth-ncsc") return Regime::SmoothNcsc;
  if (name == "smooth-ncc") return Regime::SmoothNcc;
  if (name == "nonsmooth-ncsc") return Regime::NonsmoothNcsc;
  if (name == "nonsmooth-ncc") return Regime::NonsmoothNcc;
  if (name == "custom") return Regime::Custom;
  return std::nullopt;
}

const char* run_status_name(RunStatus s) {
  switch (s) {
    case RunStatus::Ok: return "ok";
    case RunStatus::Diverged: return "diverged";
    case RunStatus::OracleFailure: return "oracle-failure";
  }
  return "unknown";
}

RegularityProfile& RegularityProfile::finalize_kappa() {
  if (strong_concavity_mu > 0.0) kappa = smooth_ell / strong_concavity_mu;
  return *this;
}

std::vector<std::string> validate_profile(const RegularityProfile& p,
                                          Regime regime) {
  std::vector<std::string> errors;
  auto nonneg = [&](double v, const char* field) {
    if (!(v >= 0.0) || !std::isfinite(v))
      errors.push_back(std::string(field) + ": must be finite and nonnegative");
  };
  nonneg(p.lipschitz_L, "lipschitz_L");
  nonneg(p.smooth_ell, "smooth_ell");
  nonneg(p.strong_concavity_mu, "strong_concavity_mu");
  nonneg(p.weak_convexity_rho, "weak_convexity_rho");
  nonneg(p.noise_var_sigma2, "noise_var_sigma2");
  if (!(p.diameter_D > 0.0))
    errors.push_back("diameter_D: must be positive");

  const bool needs_mu = regime_strongly_concave(regime);
  const bool smooth = regime_smooth(regime);

  if (needs_mu && !(p.strong_concavity_mu > 0.0))
    errors.push_back("strong_concavity_mu: mu>0 required");
  if (smooth) {
    if (!(p.smooth_ell > 0.0))
      errors.push_back("smooth_ell: ell>0 required");
    // an ell-smooth function is at most ell-weakly convex
    if (p.weak_convexity_rho > p.smooth_ell + 1e-12)
      errors.push_back("weak_convexity_rho: rho <= ell required in smooth regimes");
    if (p.strong_concavity_mu > p.smooth_ell + 1e-12)
      errors.push_back("strong_concavity_mu: mu <= ell required");
    if (needs_mu && p.strong_concavity_mu > 0.0) {
      const double want = p.smooth_ell / p.strong_concavity_mu;
      if (std::abs(p.kappa - want) > 1e-12 * std::max(1.0, want))
        errors.push_back("kappa: stored kappa inconsistent with ell/mu");
      if (p.kappa < 1.0 - 1e-12)
        errors.push_back("kappa: must be >= 1");
    }
  } else {
    if (!(p.weak_convexity_rho > 0.0))
      errors.push_back("weak_convexity_rho: rho>0 required in nonsmooth regimes");
    if (!(p.lipschitz_L > 0.0))
      errors.push_back("lipschitz_L: L>0 required in nonsmooth regimes");
  }
  if (regime == Regime::SmoothNcc && !(p.lipschitz_L > 0.0))
    errors.push_back("lipschitz_L: L>0 required");
  return errors;
}

const TraceRecord* RunTrace::record_at(long t) const {
  for (const auto& r : records)
    if (r.t == t) return &r;
  return nullptr;
}

}  // namespace ttgda
