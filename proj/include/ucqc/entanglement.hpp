#pragma once

// Two-qubit concurrence, Werner fits, one-tangle and CKW monogamy slack.

#include "ucqc/circuits.hpp"
#include "ucqc/qstate.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace ucqc {

namespace detail {

inline void require_qubits(int have, int want, char const *what)
{
  if (have != want) {
    throw std::invalid_argument(std::string(what) + ": expected a " + std::to_string(want) + "-qubit state, got " +
                                std::to_string(have) + " qubit(s)");
  }
}

template <typename Real> ComplexMatrix<Real> spin_flip()
{
  return kron<Real>(gates::pauli_y<Real>(), gates::pauli_y<Real>());
}

} // namespace detail

// Eigenvalues of rho below this are treated as exact zeros when forming
// sqrt(rho) for the concurrence. Without the cutoff a pure state's ~1e-17
// noise eigenvalues leak ~1e-8 into the lambda spectrum.
inline constexpr double concurrence_rank_cutoff = 1e-14;

/// Spin-flipped state (sigma_y x sigma_y) conj(rho) (sigma_y x sigma_y), with
/// conj the elementwise complex conjugate in the computational basis.
template <typename Real> ComplexMatrix<Real> wootters_tilde(DensityOperator<Real> const &rho)
{
  detail::require_qubits(rho.n_qubits(), 2, "wootters_tilde");
  ComplexMatrix<Real> const yy = detail::spin_flip<Real>();
  return yy * rho.matrix().conjugate() * yy;
}

/// The lambda_i of the Wootters formula, in decreasing order.
///
/// They are the square roots of the eigenvalues of sqrt(rho) rho~ sqrt(rho).
/// Writing rho = V W V^dag and S = sqrt(W), that sandwich equals V T T^dag V^dag
/// with T = S (V^dag YY conj(V)) S, so lambda_i are the singular values of T.
/// Taking singular values avoids squaring and re-rooting near-zero entries.
template <typename Real> RealVector<Real> wootters_lambdas(DensityOperator<Real> const &rho)
{
  detail::require_qubits(rho.n_qubits(), 2, "concurrence");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<Real>> es(rho.matrix());
  RealVector<Real> s = es.eigenvalues();
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    s(i) = s(i) > Real(concurrence_rank_cutoff) ? std::sqrt(s(i)) : Real(0);
  }
  ComplexMatrix<Real> const &v = es.eigenvectors();
  ComplexMatrix<Real> const t = s.asDiagonal() * (v.adjoint() * detail::spin_flip<Real>() * v.conjugate()) *
                                s.asDiagonal();
  // JacobiSVD returns singular values sorted in decreasing order.
  return Eigen::JacobiSVD<ComplexMatrix<Real>>(t).singularValues();
}

template <typename Real> Real concurrence(DensityOperator<Real> const &rho)
{
  RealVector<Real> const l = wootters_lambdas(rho);
  return std::clamp(l(0) - l(1) - l(2) - l(3), Real(0), Real(1));
}

/// Concurrence of the reduced state of qubits a and b.
template <typename Real> Real concurrence(DensityOperator<Real> const &state, int a, int b)
{
  return concurrence(partial_trace(state, {a, b}));
}

/// 4 det(rho) of a single-qubit state.
template <typename Real> Real one_tangle(DensityOperator<Real> const &rho)
{
  detail::require_qubits(rho.n_qubits(), 1, "one_tangle");
  auto const &m = rho.matrix();
  Real const det = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).real();
  return std::clamp(Real(4) * det, Real(0), Real(1));
}

template <typename Real = double> struct CkwReport
{
  int qubit = 0;
  Real tau = 0;
  Real sum_sq_concurrence = 0;
  Real saturation = 0; // tau - sum of squared pairwise concurrences
};

inline constexpr double ckw_purity_tolerance = 1e-9;

template <typename Real> CkwReport<Real> ckw_saturation(DensityOperator<Real> const &state, int k)
{
  detail::check_targets({k}, state.n_qubits(), "ckw_saturation");
  Real const purity = state.purity();
  if (purity < Real(1) - Real(ckw_purity_tolerance)) {
    throw std::domain_error("ckw_saturation: global state is mixed (Tr rho^2 = " + std::to_string(double(purity)) +
                            ")");
  }
  CkwReport<Real> r;
  r.qubit = k;
  r.tau = one_tangle(partial_trace(state, {k}));
  for (int l = 1; l <= state.n_qubits(); ++l) {
    if (l != k) {
      Real const c = concurrence(state, k, l);
      r.sum_sq_concurrence += c * c;
    }
  }
  r.saturation = r.tau - r.sum_sq_concurrence;
  return r;
}

template <typename Real> std::vector<CkwReport<Real>> ckw_saturation_all(DensityOperator<Real> const &state)
{
  std::vector<CkwReport<Real>> out;
  for (int k = 1; k <= state.n_qubits(); ++k) {
    out.push_back(ckw_saturation(state, k));
  }
  return out;
}

template <typename Real = double> struct WernerFit
{
  Real gamma = 0;
  BellFamily bell_family = BellFamily::PhiPlus;
  Real residual = 0; // Frobenius distance to the reconstructed Werner state
};

template <typename Real = double>
ComplexMatrix<Real> werner_matrix(Real gamma, BellFamily family = BellFamily::PhiPlus)
{
  return gamma * bell_state<Real>(family).projector() +
         (Real(1) - gamma) / Real(4) * ComplexMatrix<Real>::Identity(4, 4);
}

template <typename Real> WernerFit<Real> werner_fit(DensityOperator<Real> const &rho, BellFamily family)
{
  detail::require_qubits(rho.n_qubits(), 2, "werner_fit");
  ComplexVector<Real> const bell = bell_state<Real>(family).amplitudes();
  Real const overlap = bell.dot(rho.matrix() * bell).real();
  WernerFit<Real> fit;
  fit.bell_family = family;
  fit.gamma = (Real(4) * overlap - Real(1)) / Real(3);
  fit.residual = (rho.matrix() - werner_matrix<Real>(fit.gamma, family)).norm();
  return fit;
}

} // namespace ucqc
