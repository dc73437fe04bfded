#pragma once

// State preparation and the four-CNOT universal covariant cloner.

#include "ucqc/qstate.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ucqc {

enum class BellFamily
{
  PhiPlus,
  PhiMinus,
  PsiPlus,
  PsiMinus
};

inline constexpr std::array<BellFamily, 4> all_bell_families{BellFamily::PhiPlus, BellFamily::PhiMinus,
                                                             BellFamily::PsiPlus, BellFamily::PsiMinus};

inline char const *to_string(BellFamily f)
{
  switch (f) {
  case BellFamily::PhiPlus: return "phi-plus";
  case BellFamily::PhiMinus: return "phi-minus";
  case BellFamily::PsiPlus: return "psi-plus";
  case BellFamily::PsiMinus: return "psi-minus";
  }
  return "?";
}

inline BellFamily parse_bell_family(std::string const &s)
{
  for (BellFamily f : all_bell_families) {
    if (s == to_string(f)) {
      return f;
    }
  }
  throw std::invalid_argument("unknown Bell family '" + s + "'");
}

/// Cloning parameter of the program state. beta is always 1 - alpha.
class ProgramSpec
{
public:
  explicit ProgramSpec(double alpha)
    : alpha_(alpha)
  {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
      throw std::domain_error("ProgramSpec: alpha = " + std::to_string(alpha) + " outside [0, 1]");
    }
  }

  double alpha() const { return alpha_; }
  double beta() const { return 1.0 - alpha_; }
  /// alpha + beta^2, which equals beta + alpha^2 when beta = 1 - alpha.
  double weight() const { return alpha_ + beta() * beta(); }
  double normalization() const { return 1.0 / std::sqrt(2.0 * weight()); }

private:
  double alpha_;
};

/// One of the four two-qubit families sqrt(c0)|ab> +- sqrt(c1)|a'b'>.
class InputStateSpec
{
public:
  InputStateSpec(BellFamily family, double c0)
    : family_(family)
    , c0_(c0)
  {
    if (!(c0 >= 0.0 && c0 <= 1.0)) {
      throw std::domain_error("InputStateSpec: c0 = " + std::to_string(c0) + " outside [0, 1]");
    }
  }

  BellFamily family() const { return family_; }
  double c0() const { return c0_; }
  double c1() const { return 1.0 - c0_; }

private:
  BellFamily family_;
  double c0_;
};

/// Port assignment of the cloner. The first program-state factor is loaded
/// on prog_ports[0] (which carries the clone), the second on prog_ports[1].
struct CircuitLayout
{
  int n_qubits = 4;
  int data_port = 2;
  std::array<int, 2> prog_ports{3, 4};

  void validate() const
  {
    auto const ok = [&](int q) { return q >= 1 && q <= n_qubits; };
    if (!ok(data_port) || !ok(prog_ports[0]) || !ok(prog_ports[1])) {
      throw std::invalid_argument("CircuitLayout: port outside 1.." + std::to_string(n_qubits));
    }
    if (data_port == prog_ports[0] || data_port == prog_ports[1] || prog_ports[0] == prog_ports[1]) {
      throw std::invalid_argument("CircuitLayout: ports must be distinct");
    }
  }
};

inline CircuitLayout bipartite_layout() { return {4, 2, {3, 4}}; }
inline CircuitLayout ghz_layout() { return {5, 3, {4, 5}}; }

template <typename Real = double> PureState<Real> program_state(ProgramSpec const &spec)
{
  Real const a = spec.alpha();
  Real const b = spec.beta();
  Real const nrm = Real(1) / std::sqrt(Real(2) * (a + b * b));
  ComplexVector<Real> v(4);
  v << nrm * (a + b), nrm * a, Real(0), nrm * b;
  return PureState<Real>::normalized(std::move(v));
}

template <typename Real = double> PureState<Real> input_state(InputStateSpec const &spec)
{
  Real const w0 = std::sqrt(Real(spec.c0()));
  Real const w1 = std::sqrt(Real(spec.c1()));
  ComplexVector<Real> v = ComplexVector<Real>::Zero(4);
  switch (spec.family()) {
  case BellFamily::PhiPlus:
    v(0) = w0;
    v(3) = w1;
    break;
  case BellFamily::PhiMinus:
    v(0) = w0;
    v(3) = -w1;
    break;
  case BellFamily::PsiPlus:
    v(1) = w0;
    v(2) = w1;
    break;
  case BellFamily::PsiMinus:
    v(1) = w0;
    v(2) = -w1;
    break;
  }
  return PureState<Real>::normalized(std::move(v));
}

/// Maximally entangled member of a family (c0 = 1/2).
template <typename Real = double> PureState<Real> bell_state(BellFamily family)
{
  return input_state<Real>(InputStateSpec(family, 0.5));
}

template <typename Real = double> PureState<Real> ghz_state()
{
  ComplexVector<Real> v = ComplexVector<Real>::Zero(8);
  v(0) = v(7) = Real(1) / std::sqrt(Real(2));
  return PureState<Real>::normalized(std::move(v));
}

/// CNOT(data -> clone), CNOT(data -> ancilla), CNOT(clone -> data),
/// CNOT(ancilla -> data), applied in that order.
template <typename Real = double> ComplexMatrix<Real> ucqc_unitary(CircuitLayout const &layout)
{
  layout.validate();
  int const n = layout.n_qubits;
  int const d = layout.data_port;
  auto const [p1, p2] = layout.prog_ports;
  ComplexMatrix<Real> const cx = gates::cnot<Real>();
  ComplexMatrix<Real> u = embed<Real>(cx, {d, p1}, n);
  u = embed<Real>(cx, {d, p2}, n) * u;
  u = embed<Real>(cx, {p1, d}, n) * u;
  u = embed<Real>(cx, {p2, d}, n) * u;
  return u;
}

/// Runs the cloner on a two-qubit input whose second qubit enters the data
/// port; the first stays on the remaining qubit. The default layout puts the
/// pair on qubits 1-2 and the program on 3-4. Other layouts exist so the
/// verification harness can mutate the wiring.
template <typename Real = double>
DensityOperator<Real> run_bipartite(double alpha, PureState<Real> const &pair,
                                    CircuitLayout const &layout = bipartite_layout())
{
  if (pair.n_qubits() != 2) {
    throw std::invalid_argument("run_bipartite: input must be a two-qubit state");
  }
  if (layout.n_qubits != 4) {
    throw std::invalid_argument("run_bipartite: layout must span four qubits");
  }
  layout.validate();
  auto const prog = program_state<Real>(ProgramSpec(alpha));
  // Canonical order: partner, data, program 1, program 2.
  auto const canonical = tensor(pair.density(), prog.density());
  int const partner = 10 - layout.data_port - layout.prog_ports[0] - layout.prog_ports[1];
  std::array<int, 4> const site{partner, layout.data_port, layout.prog_ports[0], layout.prog_ports[1]};
  QubitList order(4);
  for (int k = 0; k < 4; ++k) {
    order[static_cast<std::size_t>(site[static_cast<std::size_t>(k)] - 1)] = k + 1;
  }
  return apply_unitary(permute_qubits(canonical, order), ucqc_unitary<Real>(layout));
}

template <typename Real = double> DensityOperator<Real> run_bipartite(double alpha, InputStateSpec const &input)
{
  return run_bipartite<Real>(alpha, input_state<Real>(input));
}

/// GHZ on qubits 1-3, program on 4-5, qubit 3 cloned onto 4 with 5 as the
/// ancilla. Returns the state before any measurement.
template <typename Real = double> DensityOperator<Real> run_ghz(double alpha)
{
  auto const prog = program_state<Real>(ProgramSpec(alpha));
  auto const initial = tensor(ghz_state<Real>().density(), prog.density());
  return apply_unitary(initial, ucqc_unitary<Real>(ghz_layout()));
}

} // namespace ucqc
