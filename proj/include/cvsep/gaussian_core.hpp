#ifndef CVSEP_GAUSSIAN_CORE_HPP
#define CVSEP_GAUSSIAN_CORE_HPP

// Zero-mean two-mode Gaussian states, represented by their variance matrices.
//
// Quadrature ordering is (eta_i, eta_r, xi_i, xi_r): imaginary and real parts
// of the displacement argument of mode a, then of mode b. Units are
// vacuum-normalized, so the vacuum variance matrix is the identity and every
// physical state has symplectic eigenvalues >= 1.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cvsep {

template <typename Scalar>
using Matrix2 = Eigen::Matrix<Scalar, 2, 2>;
template <typename Scalar>
using Matrix4 = Eigen::Matrix<Scalar, 4, 4>;
template <typename Scalar>
using Vector2 = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar>
using Vector4 = Eigen::Matrix<Scalar, 4, 1>;

/// Slack on the uncertainty bound and on separability boundaries.
inline constexpr double kPhysicalTolerance = 1e-9;

namespace detail {

template <typename Scalar>
void require_finite(Scalar value, const char* what) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument(std::string(what) + " must be finite");
  }
}

template <typename Scalar>
void require_nonnegative(Scalar value, const char* what) {
  require_finite(value, what);
  if (value < Scalar(0)) {
    throw std::invalid_argument(std::string(what) + " must be nonnegative");
  }
}

template <typename Derived>
bool exactly_symmetric(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
      if (m(i, j) != m(j, i)) return false;
    }
  }
  return true;
}

}  // namespace detail

/// 4x4 real symmetric variance matrix of a two-mode Gaussian state.
///
/// Construction rejects non-finite or non-symmetric input (exact comparison);
/// use `symmetrized` for matrices assembled from floating-point products.
/// Physicality is not enforced here, see `is_physical`.
template <typename Scalar = double>
class VarianceMatrix {
 public:
  using MatrixType = Matrix4<Scalar>;

  VarianceMatrix() : m_(MatrixType::Identity()) {}

  template <typename Derived>
  explicit VarianceMatrix(const Eigen::MatrixBase<Derived>& m) : m_(m) {
    if (!m_.allFinite()) {
      throw std::invalid_argument("variance matrix entries must be finite");
    }
    if (!detail::exactly_symmetric(m_)) {
      throw std::invalid_argument("variance matrix must be symmetric");
    }
  }

  static VarianceMatrix identity() { return VarianceMatrix(); }

  template <typename Derived>
  static VarianceMatrix symmetrized(const Eigen::MatrixBase<Derived>& m) {
    MatrixType s = (m + m.transpose()) / Scalar(2);
    return VarianceMatrix(s);
  }

  /// Block-diagonal product state from two single-mode blocks.
  template <typename DerivedA, typename DerivedB>
  static VarianceMatrix direct_sum(const Eigen::MatrixBase<DerivedA>& a,
                                   const Eigen::MatrixBase<DerivedB>& b) {
    MatrixType m = MatrixType::Zero();
    m.template topLeftCorner<2, 2>() = a;
    m.template bottomRightCorner<2, 2>() = b;
    return VarianceMatrix(m);
  }

  const MatrixType& matrix() const { return m_; }
  Scalar operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  // Blocks of [[A, C], [C^T, B]].
  Matrix2<Scalar> block_a() const { return m_.template topLeftCorner<2, 2>(); }
  Matrix2<Scalar> block_b() const { return m_.template bottomRightCorner<2, 2>(); }
  Matrix2<Scalar> block_c() const { return m_.template topRightCorner<2, 2>(); }

  friend bool operator==(const VarianceMatrix& x, const VarianceMatrix& y) {
    return x.m_ == y.m_;
  }

 private:
  MatrixType m_;
};

/// 2x2 variance matrix R of one environment mode over (eta_i, eta_r).
template <typename Scalar = double>
class SingleModeVariance {
 public:
  using MatrixType = Matrix2<Scalar>;

  explicit SingleModeVariance(const MatrixType& m) : m_(m) {
    if (!m_.allFinite() || m_(0, 1) != m_(1, 0)) {
      throw std::invalid_argument("single-mode variance must be finite and symmetric");
    }
  }

  const MatrixType& matrix() const { return m_; }
  Scalar a_minus() const { return m_(0, 0); }
  Scalar a_plus() const { return m_(1, 1); }
  Scalar b() const { return m_(0, 1); }
  Scalar determinant() const { return m_.determinant(); }

 private:
  MatrixType m_;
};

/// Two-mode squeezed vacuum with real squeezing parameter s_c >= 0.
template <typename Scalar = double>
class TwoModeSqueezedSpec {
 public:
  explicit TwoModeSqueezedSpec(Scalar squeezing) : s_c_(squeezing) {
    detail::require_nonnegative(s_c_, "two-mode squeezing s_c");
  }

  Scalar squeezing() const { return s_c_; }
  Scalar mu() const { return std::cosh(Scalar(2) * s_c_); }
  Scalar lambda() const { return std::sinh(Scalar(2) * s_c_); }

 private:
  Scalar s_c_;
};

/// Squeezed thermal reservoir mode: thermal occupation n_bar, squeezed by
/// zeta_e = s_e * exp(i phi_e). The phase is reduced into [0, 2 pi).
template <typename Scalar = double>
class EnvironmentModeSpec {
 public:
  EnvironmentModeSpec(Scalar n_bar, Scalar squeezing = Scalar(0), Scalar phase = Scalar(0))
      : n_bar_(n_bar), s_e_(squeezing), phi_e_(phase) {
    detail::require_nonnegative(n_bar_, "thermal photon number n_bar");
    detail::require_nonnegative(s_e_, "environment squeezing s_e");
    detail::require_finite(phi_e_, "environment squeezing phase phi_e");
    constexpr Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
    phi_e_ = std::fmod(phi_e_, two_pi);
    if (phi_e_ < Scalar(0)) phi_e_ += two_pi;
    if (phi_e_ >= two_pi) phi_e_ = Scalar(0);
  }

  static EnvironmentModeSpec thermal(Scalar n_bar) { return EnvironmentModeSpec(n_bar); }
  static EnvironmentModeSpec vacuum() { return EnvironmentModeSpec(Scalar(0)); }

  Scalar n_bar() const { return n_bar_; }
  Scalar squeezing() const { return s_e_; }
  Scalar phase() const { return phi_e_; }
  /// 2 n_bar + 1, the thermal variance factor.
  Scalar n_tilde() const { return Scalar(2) * n_bar_ + Scalar(1); }
  bool phase_insensitive() const { return s_e_ == Scalar(0); }

  friend bool operator==(const EnvironmentModeSpec&, const EnvironmentModeSpec&) = default;

 private:
  Scalar n_bar_;
  Scalar s_e_;
  Scalar phi_e_;
};

/// Parameters of the locally-squeezed standard form with A = B = n * 1 and
/// C = diag(c, c').
template <typename Scalar = double>
struct SymmetricBlockForm {
  Scalar n;
  Scalar c;
  Scalar c_prime;

  /// (|c| + |c'|) / 2
  Scalar c_mean() const { return (std::abs(c) + std::abs(c_prime)) / Scalar(2); }
  /// (|c| - |c'|) / 2
  Scalar c_diff() const { return (std::abs(c) - std::abs(c_prime)) / Scalar(2); }
};

// ---------------------------------------------------------------------------
// Constructors

/// Variance matrix of the two-mode squeezed vacuum:
/// [[mu 1, -lambda sigma_z], [-lambda sigma_z, mu 1]].
template <typename Scalar>
VarianceMatrix<Scalar> tmss_variance(const TwoModeSqueezedSpec<Scalar>& spec) {
  const Scalar mu = spec.mu();
  const Scalar lambda = spec.lambda();
  Matrix4<Scalar> v;
  // clang-format off
  v <<     mu, Scalar(0),   -lambda, Scalar(0),
    Scalar(0),        mu, Scalar(0),    lambda,
      -lambda, Scalar(0),        mu, Scalar(0),
    Scalar(0),    lambda, Scalar(0),        mu;
  // clang-format on
  return VarianceMatrix<Scalar>(v);
}

/// R = [[a_-, b], [b, a_+]] with a_+- = n~ (cosh 2s_e +- cos phi_e sinh 2s_e)
/// and b = n~ sin phi_e sinh 2s_e.
template <typename Scalar>
SingleModeVariance<Scalar> squeezed_thermal_variance(const EnvironmentModeSpec<Scalar>& env) {
  const Scalar nt = env.n_tilde();
  const Scalar ch = std::cosh(Scalar(2) * env.squeezing());
  const Scalar sh = std::sinh(Scalar(2) * env.squeezing());
  const Scalar phi = env.phase();
  Matrix2<Scalar> r;
  const Scalar b = nt * std::sin(phi) * sh;
  r << nt * (ch - std::cos(phi) * sh), b, b, nt * (ch + std::cos(phi) * sh);
  return SingleModeVariance<Scalar>(r);
}

/// Mean photon number of the squeezed thermal mode, n_bar cosh 2s_e + sinh^2 s_e.
template <typename Scalar>
Scalar mean_excitation(const EnvironmentModeSpec<Scalar>& env) {
  const Scalar sh = std::sinh(env.squeezing());
  return env.n_bar() * std::cosh(Scalar(2) * env.squeezing()) + sh * sh;
}

/// Weyl characteristic function exp(-z^T V z / 2) at the real 4-vector z.
template <typename Scalar, typename Derived>
Scalar eval_characteristic(const VarianceMatrix<Scalar>& v, const Eigen::MatrixBase<Derived>& z) {
  static_assert(Derived::SizeAtCompileTime == 4 || Derived::SizeAtCompileTime == Eigen::Dynamic);
  if (z.size() != 4) throw std::invalid_argument("characteristic function argument must have 4 entries");
  const Vector4<Scalar> zz = z;
  return std::exp(Scalar(-0.5) * zz.dot(v.matrix() * zz));
}

// ---------------------------------------------------------------------------
// Uncertainty principle

/// Block-diagonal symplectic form for the (eta_i, eta_r, xi_i, xi_r) ordering.
template <typename Scalar = double>
Matrix4<Scalar> symplectic_form() {
  Matrix4<Scalar> omega = Matrix4<Scalar>::Zero();
  omega(0, 1) = omega(2, 3) = Scalar(1);
  omega(1, 0) = omega(3, 2) = Scalar(-1);
  return omega;
}

/// Symplectic spectrum of V, ascending, each value listed with its
/// multiplicity (so a two-mode state yields {nu_-, nu_-, nu_+, nu_+}).
///
/// The eigenvalues of Omega V are +-i nu_k, so (Omega V)^2 has eigenvalues
/// -nu_k^2. Only meaningful for positive-definite V.
template <typename Scalar>
Vector4<Scalar> symplectic_eigenvalues(const VarianceMatrix<Scalar>& v) {
  const Matrix4<Scalar> ov = symplectic_form<Scalar>() * v.matrix();
  const Matrix4<Scalar> sq = ov * ov;
  Eigen::EigenSolver<Matrix4<Scalar>> solver(sq, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw std::domain_error("symplectic eigenvalue computation did not converge");
  }
  Vector4<Scalar> nu;
  for (int k = 0; k < 4; ++k) {
    nu(k) = std::sqrt(std::max(Scalar(0), -solver.eigenvalues()(k).real()));
  }
  std::sort(nu.data(), nu.data() + 4);
  return nu;
}

/// True iff V is positive definite and both symplectic eigenvalues are at
/// least 1 - kPhysicalTolerance.
template <typename Scalar>
bool is_physical(const VarianceMatrix<Scalar>& v) {
  Eigen::LLT<Matrix4<Scalar>> llt(v.matrix());
  if (llt.info() != Eigen::Success) return false;
  return symplectic_eigenvalues(v).minCoeff() >= Scalar(1) - Scalar(kPhysicalTolerance);
}

/// Raw-matrix overload; rejects asymmetric input instead of symmetrizing it.
template <typename Derived>
bool is_physical(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != 4 || m.cols() != 4) throw std::invalid_argument("variance matrix must be 4x4");
  return is_physical(VarianceMatrix<Scalar>(m));
}

template <typename Scalar>
void require_physical(const VarianceMatrix<Scalar>& v, const char* what) {
  if (!is_physical(v)) {
    throw std::domain_error(std::string(what) + " violates the uncertainty principle");
  }
}

// ---------------------------------------------------------------------------
// Local-squeezing reduction

/// Local squeezing of a matrix with A = B = diag(n1, n2), C = diag(c1, c2)
/// into the form A = B = n 1, C = diag(c, c'):
/// n = sqrt(n1 n2), c = c1 sqrt(n2 / n1), c' = c2 sqrt(n1 / n2).
/// Preserves (n - |c|)(n - |c'|) = (n1 - |c1|)(n2 - |c2|).
template <typename Scalar>
SymmetricBlockForm<Scalar> reduce_to_symmetric(Scalar n1, Scalar n2, Scalar c1, Scalar c2) {
  detail::require_finite(c1, "c1");
  detail::require_finite(c2, "c2");
  detail::require_finite(n1, "n1");
  detail::require_finite(n2, "n2");
  if (!(n1 > Scalar(0)) || !(n2 > Scalar(0))) {
    throw std::invalid_argument("diagonal entries n1, n2 must be positive");
  }
  const Scalar k = std::sqrt(n2 / n1);
  return {std::sqrt(n1 * n2), c1 * k, c2 / k};
}

/// The local symplectic that performs `reduce_to_symmetric`:
/// diag(k, 1/k, k, 1/k) with k = (n2 / n1)^(1/4), applied as S V S^T.
template <typename Scalar>
Matrix4<Scalar> symmetrizing_squeeze(Scalar n1, Scalar n2) {
  if (!(n1 > Scalar(0)) || !(n2 > Scalar(0))) {
    throw std::invalid_argument("diagonal entries n1, n2 must be positive");
  }
  const Scalar k = std::pow(n2 / n1, Scalar(0.25));
  Vector4<Scalar> d(k, Scalar(1) / k, k, Scalar(1) / k);
  return d.asDiagonal();
}

}  // namespace cvsep

#endif  // CVSEP_GAUSSIAN_CORE_HPP
