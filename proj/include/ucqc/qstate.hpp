#pragma once

// Dense n-qubit state mechanics: tensor products, gate embedding, unitary
// evolution, partial trace and |+>/|-> projective measurement.
//
// Qubits are labelled 1..n. Qubit 1 is the most significant tensor factor,
// so basis index bit (n - q) holds the value of qubit q.

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ucqc {

template <typename Real = double> using Complex = std::complex<Real>;
template <typename Real = double>
using ComplexMatrix = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real = double> using ComplexVector = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>;
template <typename Real = double> using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using QubitList = std::vector<int>;

namespace tol {
inline constexpr double hermitian = 1e-12;
inline constexpr double trace = 1e-12;
inline constexpr double psd = 1e-12;
inline constexpr double norm = 1e-12;
inline constexpr double unitary = 1e-10;
inline constexpr double sqrt_hermitian = 1e-10;
inline constexpr double null_branch = 1e-14;
} // namespace tol

namespace detail {

inline bool is_power_of_two(Eigen::Index d) { return d > 0 && (d & (d - 1)) == 0; }

inline int log2_dim(Eigen::Index d)
{
  int n = 0;
  while ((Eigen::Index{1} << n) < d) {
    ++n;
  }
  return n;
}

inline void check_targets(QubitList const &targets, int n, char const *what)
{
  if (targets.empty()) {
    throw std::invalid_argument(std::string(what) + ": empty qubit list");
  }
  std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
  for (int q : targets) {
    if (q < 1 || q > n) {
      throw std::invalid_argument(std::string(what) + ": qubit " + std::to_string(q) + " outside 1.." +
                                  std::to_string(n));
    }
    if (seen[static_cast<std::size_t>(q)]) {
      throw std::invalid_argument(std::string(what) + ": duplicate qubit " + std::to_string(q));
    }
    seen[static_cast<std::size_t>(q)] = true;
  }
}

// Value of qubit q (1-based) in basis index i of an n-qubit register.
inline Eigen::Index bit_of(Eigen::Index i, int q, int n) { return (i >> (n - q)) & 1; }

// Packs the bits of `targets` (in the given order, first = most significant).
inline Eigen::Index gather(Eigen::Index i, QubitList const &targets, int n)
{
  Eigen::Index sub = 0;
  for (int q : targets) {
    sub = (sub << 1) | bit_of(i, q, n);
  }
  return sub;
}

// Overwrites the bits of `targets` in i with the packed value `sub`.
inline Eigen::Index scatter(Eigen::Index i, Eigen::Index sub, QubitList const &targets, int n)
{
  auto const k = static_cast<int>(targets.size());
  for (int t = 0; t < k; ++t) {
    Eigen::Index const mask = Eigen::Index{1} << (n - targets[static_cast<std::size_t>(t)]);
    if ((sub >> (k - 1 - t)) & 1) {
      i |= mask;
    } else {
      i &= ~mask;
    }
  }
  return i;
}

template <typename Derived> typename Derived::RealScalar max_abs(Eigen::MatrixBase<Derived> const &m)
{
  return m.size() == 0 ? 0 : m.cwiseAbs().maxCoeff();
}

} // namespace detail

template <typename Derived> auto hermitian_error(Eigen::MatrixBase<Derived> const &m)
{
  return detail::max_abs((m - m.adjoint()).eval());
}

template <typename Derived> auto dagger(Eigen::MatrixBase<Derived> const &m) { return m.adjoint().eval(); }

/// Kronecker product a ⊗ b; `a` occupies the more significant qubits.
template <typename Real>
ComplexMatrix<Real> kron(ComplexMatrix<Real> const &a, ComplexMatrix<Real> const &b)
{
  ComplexMatrix<Real> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

template <typename Real>
ComplexVector<Real> kron(ComplexVector<Real> const &a, ComplexVector<Real> const &b)
{
  ComplexVector<Real> out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

/// Lifts `gate` onto `targets` of an n-qubit register. The first target is
/// the most significant qubit of the gate's own index space, so
/// embed(cnot, {2, 1}, 2) is a CNOT controlled by qubit 2.
template <typename Real>
ComplexMatrix<Real> embed(ComplexMatrix<Real> const &gate, QubitList const &targets, int n)
{
  if (n < 1) {
    throw std::invalid_argument("embed: register needs at least one qubit");
  }
  detail::check_targets(targets, n, "embed");
  Eigen::Index const sub_dim = Eigen::Index{1} << targets.size();
  if (gate.rows() != sub_dim || gate.cols() != sub_dim) {
    throw std::invalid_argument("embed: gate dimension " + std::to_string(gate.rows()) + "x" +
                                std::to_string(gate.cols()) + " does not match " +
                                std::to_string(targets.size()) + " target qubit(s)");
  }
  Eigen::Index const dim = Eigen::Index{1} << n;
  ComplexMatrix<Real> out = ComplexMatrix<Real>::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    Eigen::Index const in_sub = detail::gather(col, targets, n);
    for (Eigen::Index out_sub = 0; out_sub < sub_dim; ++out_sub) {
      auto const amp = gate(out_sub, in_sub);
      if (amp != Complex<Real>(0)) {
        out(detail::scatter(col, out_sub, targets, n), col) += amp;
      }
    }
  }
  return out;
}

template <typename Real = double> class DensityOperator;

/// Normalized state vector on n qubits.
template <typename Real = double> class PureState
{
public:
  explicit PureState(ComplexVector<Real> amplitudes)
    : amps_(std::move(amplitudes))
  {
    if (!detail::is_power_of_two(amps_.size()) || amps_.size() < 2) {
      throw std::invalid_argument("PureState: length " + std::to_string(amps_.size()) + " is not 2^n");
    }
    Real const err = std::abs(amps_.squaredNorm() - Real(1));
    if (!(err <= Real(tol::norm))) {
      throw std::invalid_argument("PureState: squared norm deviates from 1 by " + std::to_string(double(err)));
    }
    n_ = detail::log2_dim(amps_.size());
  }

  /// Scales an arbitrary non-zero vector to unit norm.
  static PureState normalized(ComplexVector<Real> v)
  {
    Real const nrm = v.norm();
    if (!(nrm > Real(0))) {
      throw std::invalid_argument("PureState: cannot normalize a zero vector");
    }
    v /= nrm;
    return PureState(std::move(v));
  }

  int n_qubits() const { return n_; }
  Eigen::Index dim() const { return amps_.size(); }
  ComplexVector<Real> const &amplitudes() const { return amps_; }
  Complex<Real> operator[](Eigen::Index i) const { return amps_(i); }

  ComplexMatrix<Real> projector() const { return amps_ * amps_.adjoint(); }
  DensityOperator<Real> density() const;

private:
  ComplexVector<Real> amps_;
  int n_ = 0;
};

template <typename Real> PureState<Real> tensor(PureState<Real> const &a, PureState<Real> const &b)
{
  return PureState<Real>::normalized(kron<Real>(a.amplitudes(), b.amplitudes()));
}

/// Mixed n-qubit state. Construction enforces Hermiticity, unit trace and
/// positivity up to the tolerances in `tol`; the stored matrix is the exact
/// Hermitian part of the input.
template <typename Real> class DensityOperator
{
public:
  explicit DensityOperator(ComplexMatrix<Real> matrix)
    : rho_(std::move(matrix))
  {
    if (rho_.rows() != rho_.cols() || !detail::is_power_of_two(rho_.rows()) || rho_.rows() < 2) {
      throw std::invalid_argument("DensityOperator: matrix is " + std::to_string(rho_.rows()) + "x" +
                                  std::to_string(rho_.cols()) + ", expected 2^n x 2^n");
    }
    Real const herm = hermitian_error(rho_);
    if (!(herm <= Real(tol::hermitian))) {
      throw std::invalid_argument("DensityOperator: not Hermitian (max |rho - rho^dag| = " +
                                  std::to_string(double(herm)) + ")");
    }
    rho_ = (Real(0.5) * (rho_ + rho_.adjoint())).eval();
    Real const tr = rho_.trace().real();
    if (!(std::abs(tr - Real(1)) <= Real(tol::trace))) {
      throw std::invalid_argument("DensityOperator: trace " + std::to_string(double(tr)) + " != 1");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix<Real>> es(rho_, Eigen::EigenvaluesOnly);
    Real const lowest = es.eigenvalues().minCoeff();
    if (lowest < -Real(tol::psd)) {
      throw std::invalid_argument("DensityOperator: negative eigenvalue " + std::to_string(double(lowest)));
    }
    n_ = detail::log2_dim(rho_.rows());
  }

  static DensityOperator maximally_mixed(int n)
  {
    Eigen::Index const d = Eigen::Index{1} << n;
    return DensityOperator(ComplexMatrix<Real>::Identity(d, d) / Real(d));
  }

  int n_qubits() const { return n_; }
  Eigen::Index dim() const { return rho_.rows(); }
  ComplexMatrix<Real> const &matrix() const { return rho_; }
  Complex<Real> operator()(Eigen::Index i, Eigen::Index j) const { return rho_(i, j); }

  Real purity() const { return (rho_ * rho_).trace().real(); }
  RealVector<Real> eigenvalues() const
  {
    return Eigen::SelfAdjointEigenSolver<ComplexMatrix<Real>>(rho_, Eigen::EigenvaluesOnly).eigenvalues();
  }

private:
  ComplexMatrix<Real> rho_;
  int n_ = 0;
};

template <typename Real> DensityOperator<Real> PureState<Real>::density() const
{
  return DensityOperator<Real>(projector());
}

template <typename Real>
DensityOperator<Real> tensor(DensityOperator<Real> const &a, DensityOperator<Real> const &b)
{
  return DensityOperator<Real>(kron<Real>(a.matrix(), b.matrix()));
}

template <typename Real>
DensityOperator<Real> apply_unitary(DensityOperator<Real> const &state, ComplexMatrix<Real> const &u)
{
  if (u.rows() != state.dim() || u.cols() != state.dim()) {
    throw std::invalid_argument("apply_unitary: operator is " + std::to_string(u.rows()) + "x" +
                                std::to_string(u.cols()) + ", state dimension is " +
                                std::to_string(state.dim()));
  }
  auto const id = ComplexMatrix<Real>::Identity(u.rows(), u.cols());
  Real const err = detail::max_abs((u.adjoint() * u - id).eval());
  if (!(err <= Real(tol::unitary))) {
    throw std::invalid_argument("apply_unitary: operator is not unitary (max |U^dag U - I| = " +
                                std::to_string(double(err)) + ")");
  }
  return DensityOperator<Real>(u * state.matrix() * u.adjoint());
}

/// Reduced state on `keep`. The output qubits follow the order of `keep`,
/// so partial_trace(rho, {2, 1}) swaps the two factors.
template <typename Real>
DensityOperator<Real> partial_trace(DensityOperator<Real> const &state, QubitList const &keep)
{
  int const n = state.n_qubits();
  detail::check_targets(keep, n, "partial_trace");

  QubitList traced;
  for (int q = 1; q <= n; ++q) {
    if (std::find(keep.begin(), keep.end(), q) == keep.end()) {
      traced.push_back(q);
    }
  }
  Eigen::Index const kd = Eigen::Index{1} << keep.size();
  Eigen::Index const td = Eigen::Index{1} << traced.size();

  std::vector<Eigen::Index> base(static_cast<std::size_t>(kd));
  for (Eigen::Index s = 0; s < kd; ++s) {
    base[static_cast<std::size_t>(s)] = detail::scatter(0, s, keep, n);
  }

  ComplexMatrix<Real> out = ComplexMatrix<Real>::Zero(kd, kd);
  auto const &rho = state.matrix();
  for (Eigen::Index e = 0; e < td; ++e) {
    Eigen::Index const env = traced.empty() ? 0 : detail::scatter(0, e, traced, n);
    for (Eigen::Index i = 0; i < kd; ++i) {
      for (Eigen::Index j = 0; j < kd; ++j) {
        out(i, j) += rho(base[static_cast<std::size_t>(i)] | env, base[static_cast<std::size_t>(j)] | env);
      }
    }
  }
  return DensityOperator<Real>(std::move(out));
}

/// Reorders tensor factors: qubit j of the result is qubit order[j-1] of `state`.
template <typename Real>
DensityOperator<Real> permute_qubits(DensityOperator<Real> const &state, QubitList const &order)
{
  if (static_cast<int>(order.size()) != state.n_qubits()) {
    throw std::invalid_argument("permute_qubits: order must list every qubit exactly once");
  }
  return partial_trace(state, order);
}

enum class Basis
{
  PlusMinus
};

enum class Outcome
{
  Plus,
  Minus
};

inline char const *to_string(Outcome o) { return o == Outcome::Plus ? "+" : "-"; }

template <typename Real = double> struct MeasurementRecord
{
  int qubit = 0;
  Basis basis = Basis::PlusMinus;
  Outcome outcome = Outcome::Plus;
  Real probability = 0;
  // Empty when the branch probability is below tol::null_branch.
  std::optional<DensityOperator<Real>> post_state;

  bool is_null() const { return !post_state.has_value(); }
};

template <typename Real = double> ComplexVector<Real> basis_vector(Basis, Outcome o)
{
  Real const h = Real(1) / std::sqrt(Real(2));
  ComplexVector<Real> v(2);
  v << Complex<Real>(h), Complex<Real>(o == Outcome::Plus ? h : -h);
  return v;
}

/// Both branches of a von Neumann measurement of `qubit`. The measured qubit
/// stays in the register, projected onto the outcome.
template <typename Real>
std::vector<MeasurementRecord<Real>> measure_projective(DensityOperator<Real> const &state, int qubit,
                                                        Basis basis = Basis::PlusMinus)
{
  detail::check_targets({qubit}, state.n_qubits(), "measure_projective");
  std::vector<MeasurementRecord<Real>> records;
  for (Outcome o : {Outcome::Plus, Outcome::Minus}) {
    ComplexVector<Real> const v = basis_vector<Real>(basis, o);
    ComplexMatrix<Real> const proj = embed<Real>(v * v.adjoint(), {qubit}, state.n_qubits());
    ComplexMatrix<Real> const projected = proj * state.matrix() * proj;
    MeasurementRecord<Real> rec;
    rec.qubit = qubit;
    rec.basis = basis;
    rec.outcome = o;
    rec.probability = std::clamp(projected.trace().real(), Real(0), Real(1));
    if (rec.probability >= Real(tol::null_branch)) {
      rec.post_state.emplace(projected / rec.probability);
    }
    records.push_back(std::move(rec));
  }
  return records;
}

/// Hermitian PSD square root by eigendecomposition. Eigenvalues slightly
/// below zero (noise) are clamped; clearly negative ones are rejected.
template <typename Real> ComplexMatrix<Real> matrix_sqrt_psd(ComplexMatrix<Real> const &m)
{
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("matrix_sqrt_psd: matrix is not square");
  }
  Real const herm = hermitian_error(m);
  if (!(herm <= Real(tol::sqrt_hermitian))) {
    throw std::invalid_argument("matrix_sqrt_psd: matrix is not Hermitian (max |m - m^dag| = " +
                                std::to_string(double(herm)) + ")");
  }
  ComplexMatrix<Real> const h = Real(0.5) * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<Real>> es(h);
  RealVector<Real> w = es.eigenvalues();
  Real const scale = std::max(Real(1), w.cwiseAbs().maxCoeff());
  if (w.minCoeff() < -Real(tol::psd) * scale) {
    throw std::domain_error("matrix_sqrt_psd: matrix has negative eigenvalue " + std::to_string(double(w.minCoeff())));
  }
  w = w.cwiseMax(Real(0)).cwiseSqrt();
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

namespace gates {

template <typename Real = double> ComplexMatrix<Real> identity(int n_qubits = 1)
{
  Eigen::Index const d = Eigen::Index{1} << n_qubits;
  return ComplexMatrix<Real>::Identity(d, d);
}

template <typename Real = double> ComplexMatrix<Real> pauli_x()
{
  ComplexMatrix<Real> m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

template <typename Real = double> ComplexMatrix<Real> pauli_y()
{
  ComplexMatrix<Real> m(2, 2);
  m << Complex<Real>(0), Complex<Real>(0, -1), Complex<Real>(0, 1), Complex<Real>(0);
  return m;
}

template <typename Real = double> ComplexMatrix<Real> pauli_z()
{
  ComplexMatrix<Real> m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

template <typename Real = double> ComplexMatrix<Real> hadamard()
{
  return (pauli_x<Real>() + pauli_z<Real>()) / std::sqrt(Real(2));
}

/// Control is the first (more significant) qubit.
template <typename Real = double> ComplexMatrix<Real> cnot()
{
  ComplexMatrix<Real> m = ComplexMatrix<Real>::Zero(4, 4);
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
  return m;
}

} // namespace gates

} // namespace ucqc
