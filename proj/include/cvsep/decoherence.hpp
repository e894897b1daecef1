#ifndef CVSEP_DECOHERENCE_HPP
#define CVSEP_DECOHERENCE_HPP

// Decoherence of a two-mode state through independent Gaussian reservoirs.
//
// Each mode passes a beam-splitter channel of transmissivity t^2 whose idle
// port is fed by that mode's reservoir, so the variance matrix evolves as
//
//   V(r) = t^2 V_s + r^2 (R_a (+) R_b),   r^2 + t^2 = 1,
//
// with r = sqrt(1 - exp(-gamma tau)). Both modes share one coupling gamma and
// hence one normalized time r; reservoirs are uncorrelated across modes.

#include "cvsep/gaussian_core.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cvsep {

/// Normalized dimensionless time r in [0, 1] and its complement t.
template <typename Scalar = double>
class ChannelTime {
 public:
  /// r = 1 is accepted as the exact infinite-time limit.
  static ChannelTime from_r(Scalar r) {
    detail::require_finite(r, "normalized time r");
    if (r < Scalar(0) || r > Scalar(1)) {
      throw std::invalid_argument("normalized time r must lie in [0, 1]");
    }
    return ChannelTime(r * r, Scalar(1) - r * r);
  }

  /// Parametrized by r^2, which is what every closed form depends on.
  static ChannelTime from_r2(Scalar r2) {
    detail::require_finite(r2, "normalized time r^2");
    if (r2 < Scalar(0) || r2 > Scalar(1)) {
      throw std::invalid_argument("normalized time r^2 must lie in [0, 1]");
    }
    return ChannelTime(r2, Scalar(1) - r2);
  }

  Scalar r() const { return std::sqrt(r2_); }
  Scalar t() const { return std::sqrt(t2_); }
  Scalar r2() const { return r2_; }
  Scalar t2() const { return t2_; }

 private:
  template <typename S>
  friend ChannelTime<S> normalized_time(S gamma, S tau);

  ChannelTime(Scalar r2, Scalar t2) : r2_(r2), t2_(t2) {}

  Scalar r2_;
  Scalar t2_;
};

/// r = sqrt(1 - exp(-gamma tau)). gamma = +inf with tau > 0 gives r = 1.
template <typename Scalar>
ChannelTime<Scalar> normalized_time(Scalar gamma, Scalar tau) {
  if (std::isnan(gamma) || std::isnan(tau) || gamma < Scalar(0) || tau < Scalar(0)) {
    throw std::invalid_argument("coupling gamma and time tau must be nonnegative");
  }
  if (std::isinf(tau)) {
    throw std::invalid_argument("interaction time tau must be finite");
  }
  if (tau == Scalar(0)) return ChannelTime<Scalar>(Scalar(0), Scalar(1));
  if (std::isinf(gamma)) return ChannelTime<Scalar>(Scalar(1), Scalar(0));
  const Scalar x = gamma * tau;
  return ChannelTime<Scalar>(-std::expm1(-x), std::exp(-x));
}

/// A two-mode squeezed system coupled to one reservoir mode per system mode.
template <typename Scalar = double>
struct ChannelScenario {
  TwoModeSqueezedSpec<Scalar> system;
  EnvironmentModeSpec<Scalar> env_a;
  EnvironmentModeSpec<Scalar> env_b;

  /// Both reservoir modes prepared identically.
  bool symmetric() const { return env_a == env_b; }

  /// Asymmetric-squeezing restriction: phi_e1 = phi_e2 = 0 and equal n_bar,
  /// squeezing magnitudes free.
  bool restricted_asymmetric() const {
    return env_a.phase() == Scalar(0) && env_b.phase() == Scalar(0) &&
           env_a.n_bar() == env_b.n_bar();
  }

  void require_restricted_asymmetric() const {
    if (!restricted_asymmetric()) {
      throw std::invalid_argument(
          "scenario requires zero environment phases and equal thermal occupations");
    }
  }
};

/// R_a (+) R_b, the state both modes relax to at r = 1.
template <typename Scalar>
VarianceMatrix<Scalar> environment_variance(const EnvironmentModeSpec<Scalar>& env_a,
                                            const EnvironmentModeSpec<Scalar>& env_b) {
  return VarianceMatrix<Scalar>::direct_sum(squeezed_thermal_variance(env_a).matrix(),
                                            squeezed_thermal_variance(env_b).matrix());
}

template <typename Scalar>
VarianceMatrix<Scalar> environment_variance(const ChannelScenario<Scalar>& scenario) {
  return environment_variance(scenario.env_a, scenario.env_b);
}

/// t^2 V_s + r^2 V_env for an arbitrary physical system and environment.
template <typename Scalar>
VarianceMatrix<Scalar> evolve(const VarianceMatrix<Scalar>& system,
                              const VarianceMatrix<Scalar>& environment,
                              const ChannelTime<Scalar>& time) {
  require_physical(system, "system state");
  require_physical(environment, "environment state");
  const Matrix4<Scalar> out = time.t2() * system.matrix() + time.r2() * environment.matrix();
  return VarianceMatrix<Scalar>(out);
}

template <typename Scalar>
VarianceMatrix<Scalar> evolve(const ChannelScenario<Scalar>& scenario,
                              const ChannelTime<Scalar>& time) {
  return evolve(tmss_variance(scenario.system), environment_variance(scenario), time);
}

}  // namespace cvsep

#endif  // CVSEP_DECOHERENCE_HPP
