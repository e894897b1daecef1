#ifndef CVSEP_SEPARABILITY_HPP
#define CVSEP_SEPARABILITY_HPP

// Separability of two-mode Gaussian states.
//
// Three independent routes are provided and cross-checked in the tests:
//   - simon_delta: the determinant/trace form of Simon's PPT criterion on
//     the full 4x4 matrix, plus closed forms of it for the diagonal-block
//     (block_delta) and identical-reservoir (symmetric_lhs_rhs) families;
//   - lemma1_separable / symmetric_closed_form_separable: the product
//     condition (n1 - |c1|)(n2 - |c2|) >= 1 for A = B, C diagonal;
//   - ppt_oracle: smallest symplectic eigenvalue of the partial transpose.

#include "cvsep/decoherence.hpp"
#include "cvsep/gaussian_core.hpp"

#include <cmath>
#include <stdexcept>

namespace cvsep {

namespace detail {

// J = [[0, 1], [-1, 0]]. sigma_y = -i J, and the Simon trace has four
// sigma_y factors, so replacing each by J leaves it unchanged.
template <typename Scalar>
Matrix2<Scalar> two_form() {
  Matrix2<Scalar> j;
  j << Scalar(0), Scalar(1), Scalar(-1), Scalar(0);
  return j;
}

template <typename Scalar>
bool same_magnitude(Scalar a, Scalar b) {
  const Scalar scale = std::max({std::abs(a), std::abs(b), Scalar(1)});
  return std::abs(std::abs(a) - std::abs(b)) <= Scalar(kPhysicalTolerance) * scale;
}

}  // namespace detail

/// Simon functional
///   delta = (det A - 1)(det B - 1) + (|det C| - 1)^2 - 1
///           - Tr[A sigma_y C sigma_y B sigma_y C^T sigma_y].
/// The state is separable iff delta >= 0.
template <typename Scalar>
Scalar simon_delta(const VarianceMatrix<Scalar>& v) {
  require_physical(v, "state");
  const Matrix2<Scalar> a = v.block_a();
  const Matrix2<Scalar> b = v.block_b();
  const Matrix2<Scalar> c = v.block_c();
  const Matrix2<Scalar> j = detail::two_form<Scalar>();
  const Scalar det_a = a.determinant();
  const Scalar det_b = b.determinant();
  const Scalar abs_det_c = std::abs(c.determinant());
  const Scalar trace = (a * j * c * j * b * j * c.transpose() * j).trace();
  return (det_a - Scalar(1)) * (det_b - Scalar(1)) +
         (abs_det_c - Scalar(1)) * (abs_det_c - Scalar(1)) - Scalar(1) - trace;
}

/// Separable iff delta >= -kPhysicalTolerance; |delta| within the band is a
/// PPT boundary state and counts as separable.
template <typename Scalar>
bool separable_from_delta(Scalar delta) {
  return delta >= -Scalar(kPhysicalTolerance);
}

// ---------------------------------------------------------------------------
// Diagonal-block family

/// A = diag(n1, n2), B = diag(m1, m2), C = diag(c1, c2).
template <typename Scalar = double>
struct DiagonalBlockForm {
  Scalar n1, n2, m1, m2, c1, c2;

  VarianceMatrix<Scalar> assemble() const {
    Matrix4<Scalar> v = Matrix4<Scalar>::Zero();
    v(0, 0) = n1;
    v(1, 1) = n2;
    v(2, 2) = m1;
    v(3, 3) = m2;
    v(0, 2) = v(2, 0) = c1;
    v(1, 3) = v(3, 1) = c2;
    return VarianceMatrix<Scalar>(v);
  }
};

/// Entries of the evolved state for the restricted asymmetric scenario, from
/// the closed forms n1 = t^2 mu + r^2 n~ e^{-2 s_e1}, n2 = t^2 mu + r^2 n~ e^{2 s_e1}
/// (m1, m2 likewise with s_e2) and c1 = -lambda t^2, c2 = lambda t^2.
template <typename Scalar>
DiagonalBlockForm<Scalar> diagonal_block_form(const ChannelScenario<Scalar>& scenario,
                                              const ChannelTime<Scalar>& time) {
  scenario.require_restricted_asymmetric();
  const Scalar mu = scenario.system.mu();
  const Scalar lambda = scenario.system.lambda();
  const Scalar t2 = time.t2();
  const Scalar noise = time.r2() * scenario.env_a.n_tilde();
  const Scalar s1 = Scalar(2) * scenario.env_a.squeezing();
  const Scalar s2 = Scalar(2) * scenario.env_b.squeezing();
  return {t2 * mu + noise * std::exp(-s1), t2 * mu + noise * std::exp(s1),
          t2 * mu + noise * std::exp(-s2), t2 * mu + noise * std::exp(s2),
          -lambda * t2, lambda * t2};
}

/// delta = (L - 1)^2 - L (n1 m1 + n2 m2) + (n1 n2 - 1)(m1 m2 - 1) - 1 with
/// L = |c1 c2| = lambda^2 t^4. Requires |c1| = |c2|.
template <typename Scalar>
Scalar block_delta(const DiagonalBlockForm<Scalar>& f) {
  if (!detail::same_magnitude(f.c1, f.c2)) {
    throw std::invalid_argument("block_delta requires |c1| = |c2|");
  }
  const Scalar l = std::abs(f.c1 * f.c2);
  return (l - Scalar(1)) * (l - Scalar(1)) - l * (f.n1 * f.m1 + f.n2 * f.m2) +
         (f.n1 * f.n2 - Scalar(1)) * (f.m1 * f.m2 - Scalar(1)) - Scalar(1);
}

// ---------------------------------------------------------------------------
// Identical reservoirs

template <typename Scalar = double>
struct SimonSides {
  Scalar lhs;
  Scalar rhs;
  Scalar delta() const { return lhs - rhs; }
};

/// Both sides of Simon's inequality when the two reservoir modes are
/// identical. The left side does not depend on phi_e:
///   lhs = [t^4 mu^2 + r^4 n~^2 + 2 r^2 t^2 mu n~ cosh 2s_e - 1]^2 + (lambda^2 t^4 - 1)^2 - 1
///   rhs = 2 lambda^2 mu t^6 (mu t^2 + 2 n~ r^2 cosh 2s_e)
///         + 2 lambda^2 t^4 r^4 n~^2 (cosh^2 2s_e + cos 2phi_e sinh^2 2s_e)
/// and rhs is largest at phi_e = 0.
template <typename Scalar>
SimonSides<Scalar> symmetric_lhs_rhs(const TwoModeSqueezedSpec<Scalar>& spec,
                                     const EnvironmentModeSpec<Scalar>& env,
                                     const ChannelTime<Scalar>& time) {
  const Scalar mu = spec.mu();
  const Scalar l2 = spec.lambda() * spec.lambda();
  const Scalar nt = env.n_tilde();
  const Scalar ch = std::cosh(Scalar(2) * env.squeezing());
  const Scalar sh = std::sinh(Scalar(2) * env.squeezing());
  const Scalar r2 = time.r2();
  const Scalar t2 = time.t2();
  const Scalar r4 = r2 * r2;
  const Scalar t4 = t2 * t2;

  const Scalar det_a = t4 * mu * mu + r4 * nt * nt + Scalar(2) * r2 * t2 * mu * nt * ch;
  const Scalar det_c = l2 * t4;
  const Scalar lhs = (det_a - Scalar(1)) * (det_a - Scalar(1)) +
                     (det_c - Scalar(1)) * (det_c - Scalar(1)) - Scalar(1);
  const Scalar rhs =
      Scalar(2) * l2 * mu * t4 * t2 * (mu * t2 + Scalar(2) * nt * r2 * ch) +
      Scalar(2) * l2 * t4 * r4 * nt * nt * (ch * ch + std::cos(Scalar(2) * env.phase()) * sh * sh);
  return {lhs, rhs};
}

// ---------------------------------------------------------------------------
// Product condition for A = B, C diagonal

template <typename Scalar>
Scalar lemma1_product(Scalar n1, Scalar n2, Scalar c1, Scalar c2) {
  if (!(n1 > Scalar(0)) || !(n2 > Scalar(0))) {
    throw std::invalid_argument("diagonal entries n1, n2 must be positive");
  }
  return (n1 - std::abs(c1)) * (n2 - std::abs(c2));
}

/// For V = [[diag(n1, n2), diag(c1, c2)], [diag(c1, c2), diag(n1, n2)]]:
/// separable iff (n1 - |c1|)(n2 - |c2|) >= 1.
template <typename Scalar>
bool lemma1_separable(Scalar n1, Scalar n2, Scalar c1, Scalar c2) {
  return lemma1_product(n1, n2, c1, c2) >= Scalar(1) - Scalar(kPhysicalTolerance);
}

/// (t^2 e^{-2 s_c} + r^2 n~ e^{2 s_e})(t^2 e^{-2 s_c} + r^2 n~ e^{-2 s_e}) for
/// identical reservoirs at phi_e = 0.
template <typename Scalar>
Scalar symmetric_closed_form_product(const TwoModeSqueezedSpec<Scalar>& spec,
                                     const EnvironmentModeSpec<Scalar>& env,
                                     const ChannelTime<Scalar>& time) {
  if (env.phase() != Scalar(0)) {
    throw std::invalid_argument("closed-form separability requires phi_e = 0");
  }
  const Scalar base = time.t2() * std::exp(Scalar(-2) * spec.squeezing());
  const Scalar noise = time.r2() * env.n_tilde();
  const Scalar s = Scalar(2) * env.squeezing();
  return (base + noise * std::exp(s)) * (base + noise * std::exp(-s));
}

template <typename Scalar>
bool symmetric_closed_form_separable(const TwoModeSqueezedSpec<Scalar>& spec,
                                     const EnvironmentModeSpec<Scalar>& env,
                                     const ChannelTime<Scalar>& time) {
  return symmetric_closed_form_product(spec, env, time) >= Scalar(1) - Scalar(kPhysicalTolerance);
}

// ---------------------------------------------------------------------------
// Squeezing one reservoir mode

/// E = (mu n~ - 1)(n~ - mu) r^4 + (mu^2 n~ - 2 mu + n~) r^2, nonnegative for
/// r^2 in [0, 1], mu >= 1, n~ >= 1.
template <typename Scalar>
Scalar e_factor(Scalar mu, Scalar n_tilde, Scalar r2) {
  return (mu * n_tilde - Scalar(1)) * (n_tilde - mu) * r2 * r2 +
         (mu * mu * n_tilde - Scalar(2) * mu + n_tilde) * r2;
}

template <typename Scalar = double>
struct MonotonicityGap {
  Scalar gap;       ///< delta(s_e1, 0) - delta(0, 0)
  Scalar e_factor;  ///< its sign-determining factor E
};

/// delta(s_e1 != 0, s_e2 = 0) - delta(s_e1 = s_e2 = 0) = 4 r^2 t^2 n~ sinh^2(s_e1) E,
/// for the restricted scenario with an unsqueezed second reservoir mode.
template <typename Scalar>
MonotonicityGap<Scalar> monotonicity_gap(const ChannelScenario<Scalar>& scenario,
                                         const ChannelTime<Scalar>& time) {
  scenario.require_restricted_asymmetric();
  if (scenario.env_b.squeezing() != Scalar(0)) {
    throw std::invalid_argument("monotonicity gap requires an unsqueezed second reservoir (s_e2 = 0)");
  }
  const Scalar nt = scenario.env_a.n_tilde();
  const Scalar e = e_factor(scenario.system.mu(), nt, time.r2());
  const Scalar sh = std::sinh(scenario.env_a.squeezing());
  return {Scalar(4) * time.r2() * time.t2() * nt * sh * sh * e, e};
}

// ---------------------------------------------------------------------------
// Partial-transpose oracle

/// Smallest symplectic eigenvalue of the partially transposed state
/// (one quadrature of mode b sign-flipped). It is the smaller root of
///   nu^4 - Delta~ nu^2 + det V = 0,  Delta~ = det A + det B - 2 det C,
/// and the state is entangled iff it is below 1.
template <typename Scalar>
Scalar ppt_oracle(const VarianceMatrix<Scalar>& v) {
  require_physical(v, "state");
  const Scalar det_v = v.matrix().determinant();
  const Scalar delta_pt =
      v.block_a().determinant() + v.block_b().determinant() - Scalar(2) * v.block_c().determinant();
  const Scalar disc = std::max(Scalar(0), delta_pt * delta_pt - Scalar(4) * det_v);
  // Smaller root written without cancellation.
  const Scalar nu2 = Scalar(2) * det_v / (delta_pt + std::sqrt(disc));
  return std::sqrt(nu2);
}

// ---------------------------------------------------------------------------
// Verdicts and separation time

template <typename Scalar = double>
struct SeparabilityVerdict {
  Scalar delta;
  bool separable;
  Scalar oracle_nu;
};

template <typename Scalar>
SeparabilityVerdict<Scalar> verdict(const VarianceMatrix<Scalar>& v) {
  const Scalar delta = simon_delta(v);
  return {delta, separable_from_delta(delta), ppt_oracle(v)};
}

enum class SeparationOutcome { separates, never_separable, initially_separable };

template <typename Scalar = double>
struct SeparationTime {
  SeparationOutcome outcome;
  Scalar r;  ///< crossing time; 0 when initially separable, 1 when never
};

/// Earliest normalized time at which the evolved state becomes separable.
///
/// A 256-point scan in r^2 brackets the first sign change of delta, then
/// bisection in r^2 runs until |delta| < 1e-10 or the bracket is narrower
/// than 1e-12. If no state before r = 1 is separable and delta(r = 1) lies in
/// the boundary band (a reservoir mode in a pure state, e.g. vacuum), the
/// state never separates in finite time.
template <typename Scalar>
SeparationTime<Scalar> separation_time(const ChannelScenario<Scalar>& scenario) {
  const VarianceMatrix<Scalar> system = tmss_variance(scenario.system);
  const VarianceMatrix<Scalar> environment = environment_variance(scenario);
  const auto delta_at = [&](Scalar r2) {
    return simon_delta(evolve(system, environment, ChannelTime<Scalar>::from_r2(r2)));
  };

  if (separable_from_delta(delta_at(Scalar(0)))) {
    return {SeparationOutcome::initially_separable, Scalar(0)};
  }

  constexpr int kScanPoints = 256;
  Scalar lo = Scalar(0);
  Scalar hi = Scalar(-1);
  for (int k = 1; k < kScanPoints; ++k) {
    const Scalar x = Scalar(k) / Scalar(kScanPoints);
    if (delta_at(x) >= Scalar(0)) {
      hi = x;
      break;
    }
    lo = x;
  }
  if (hi < Scalar(0)) {
    if (delta_at(Scalar(1)) <= Scalar(kPhysicalTolerance)) {
      return {SeparationOutcome::never_separable, Scalar(1)};
    }
    hi = Scalar(1);
  }

  while (hi - lo >= Scalar(1e-12)) {
    const Scalar mid = (lo + hi) / Scalar(2);
    const Scalar d = delta_at(mid);
    if (std::abs(d) < Scalar(1e-10)) {
      return {SeparationOutcome::separates, std::sqrt(mid)};
    }
    if (d >= Scalar(0)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return {SeparationOutcome::separates, std::sqrt((lo + hi) / Scalar(2))};
}

}  // namespace cvsep

#endif  // CVSEP_SEPARABILITY_HPP
