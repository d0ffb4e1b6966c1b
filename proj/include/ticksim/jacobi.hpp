#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "ticksim/types.hpp"

namespace ticksim {

template <typename Scalar = double>
struct HermitianEigen {
  RealVector<Scalar> eigenvalues;     // ascending
  ComplexMatrix<Scalar> eigenvectors; // columns, unitary
};

namespace detail {

template <typename Scalar>
Scalar off_diagonal_norm(const ComplexMatrix<Scalar>& a) {
  Scalar sum = 0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (i != j) sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

}  // namespace detail

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps with
/// complex plane rotations. Converged when the off-diagonal Frobenius norm
/// drops below 1e-13 * ||H||_F; throws NumericError after 100 sweeps.
/// Eigenvalues come back ascending, eigenvector columns matching.
///
/// Input must be square and Hermitian to 1e-10 elementwise (DomainError
/// otherwise); the iteration runs on the Hermitian part (H + H^dag)/2.
template <typename Derived>
auto hermitian_eigendecomposition(const Eigen::MatrixBase<Derived>& h)
    -> HermitianEigen<typename Eigen::NumTraits<typename Derived::Scalar>::Real> {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  using Complex = std::complex<Real>;

  if (h.rows() != h.cols()) throw DomainError("hermitian_eigendecomposition: matrix must be square");
  ComplexMatrix<Real> a = h.template cast<Complex>();
  const Eigen::Index d = a.rows();
  if (d == 0) throw DomainError("hermitian_eigendecomposition: empty matrix");
  if (!a.allFinite()) throw DomainError("hermitian_eigendecomposition: non-finite entries");

  const Real hermiticity_defect = (a - a.adjoint()).cwiseAbs().maxCoeff();
  if (hermiticity_defect > Real(1e-10)) {
    throw DomainError("hermitian_eigendecomposition: input is not Hermitian within 1e-10");
  }
  a = Real(0.5) * (a + a.adjoint().eval());

  ComplexMatrix<Real> v = ComplexMatrix<Real>::Identity(d, d);
  const Real norm_h = a.norm();
  const Real tol = Real(1e-13) * norm_h;
  constexpr int kMaxSweeps = 100;

  bool converged = norm_h == Real(0) || detail::off_diagonal_norm(a) <= tol;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    for (Eigen::Index p = 0; p < d - 1; ++p) {
      for (Eigen::Index q = p + 1; q < d; ++q) {
        const Complex apq = a(p, q);
        const Real r = std::abs(apq);
        if (r == Real(0)) continue;

        // Phase factor u turns the 2x2 block Hermitian-with-real-offdiag;
        // then a standard symmetric Jacobi rotation annihilates it.
        const Complex u = apq / r;
        const Real alpha = std::real(a(p, p));
        const Real gamma = std::real(a(q, q));
        const Real tau = (gamma - alpha) / (2 * r);
        const Real t = (tau >= Real(0) ? Real(1) : Real(-1)) /
                       (std::abs(tau) + std::sqrt(1 + tau * tau));
        const Real c = 1 / std::sqrt(1 + t * t);
        const Real s = t * c;
        const Complex uc = std::conj(u);

        // A <- J^dag A J with J = I except J(p,p)=c, J(p,q)=s,
        // J(q,p)=-s*conj(u), J(q,q)=c*conj(u).
        const ComplexVector<Real> col_p = a.col(p);
        const ComplexVector<Real> col_q = a.col(q);
        a.col(p) = c * col_p - (s * uc) * col_q;
        a.col(q) = s * col_p + (c * uc) * col_q;
        const auto row_p = a.row(p).eval();
        const auto row_q = a.row(q).eval();
        a.row(p) = c * row_p - (s * u) * row_q;
        a.row(q) = s * row_p + (c * u) * row_q;
        a(p, q) = Complex(0);
        a(q, p) = Complex(0);

        const ComplexVector<Real> v_p = v.col(p);
        const ComplexVector<Real> v_q = v.col(q);
        v.col(p) = c * v_p - (s * uc) * v_q;
        v.col(q) = s * v_p + (c * uc) * v_q;
      }
    }
    converged = detail::off_diagonal_norm(a) <= tol;
  }
  if (!converged) {
    throw NumericError("hermitian_eigendecomposition: no convergence after 100 sweeps");
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&a](Eigen::Index i, Eigen::Index j) {
    return std::real(a(i, i)) < std::real(a(j, j));
  });

  HermitianEigen<Real> result;
  result.eigenvalues.resize(d);
  result.eigenvectors.resize(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    result.eigenvalues(i) = std::real(a(order[static_cast<std::size_t>(i)],
                                        order[static_cast<std::size_t>(i)]));
    result.eigenvectors.col(i) = v.col(order[static_cast<std::size_t>(i)]);
  }
  return result;
}

}  // namespace ticksim
