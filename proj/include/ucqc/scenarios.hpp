#pragma once

// Closed-form cloner oracles, the bipartite concurrence sweep, the GHZ
// measurement pipeline and the circuit-vs-closed-form verification harness.

#include "ucqc/circuits.hpp"
#include "ucqc/entanglement.hpp"
#include "ucqc/qstate.hpp"

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

namespace ucqc {

using QubitPair = std::pair<int, int>;

/// Single-qubit marginals of the data port, clone and ancilla.
struct ClonerMarginals
{
  DensityOperator<double> data;
  DensityOperator<double> clone;
  DensityOperator<double> ancilla;
};

ClonerMarginals cloner_marginals_analytic(DensityOperator<double> const &rho_in, double alpha);

enum class PairClass
{
  OriginalSide, // pairs (1,2) and (3,4): gamma -> 1 as alpha -> 0
  CloneSide     // pairs (1,3) and (2,4): gamma -> 1 as alpha -> 1
};

double werner_gamma_analytic(double alpha, PairClass pair_class);

/// Uniform grid of `points` values covering [0, 1] inclusive.
std::vector<double> unit_grid(int points);

inline constexpr std::array<QubitPair, 6> bipartite_pairs{
  QubitPair{1, 2}, QubitPair{1, 3}, QubitPair{1, 4}, QubitPair{2, 3}, QubitPair{2, 4}, QubitPair{3, 4}};

struct SweepResult
{
  std::vector<double> alpha_grid;
  std::vector<double> c0_grid;
  BellFamily family = BellFamily::PhiPlus;
  // Rows index alpha, columns index c0.
  std::map<QubitPair, Eigen::MatrixXd> concurrence_surfaces;

  Eigen::MatrixXd const &surface(int a, int b) const { return concurrence_surfaces.at({a, b}); }
};

SweepResult bipartite_sweep(std::vector<double> const &alpha_grid, std::vector<double> const &c0_grid,
                            BellFamily family);

struct GhzOptions
{
  int first_measured = 4;
  int second_measured = 1;
  Outcome outcome_policy = Outcome::Plus;
};

inline constexpr double branch_tolerance = 1e-10;

struct GhzReport
{
  double alpha = 0;
  double curve_a = 0; // C(3,5) after the cloner
  double curve_b = 0; // C(4,5) after the cloner
  double curve_c = 0; // C(1,2) after the first measurement
  double curve_d = 0; // C(2,3) after the second measurement
  double curve_e = 0; // C(2,5) after the second measurement
  // [first +, first -, second +, second -]; the second pair is conditioned on
  // the branch kept by the outcome policy.
  std::array<double, 4> outcome_probabilities{};
  std::vector<CkwReport<double>> ckw_after_first;
  std::vector<CkwReport<double>> ckw_after_second;
  // Largest spread of any recorded quantity across outcome branches.
  double branch_deviation = 0;
};

/// Throws std::runtime_error if recorded concurrences differ between
/// measurement branches by more than branch_tolerance.
GhzReport ghz_pipeline(double alpha, GhzOptions const &options = {});

enum class CkwStage
{
  AfterFirst,
  AfterSecond
};

char const *to_string(CkwStage stage);

struct CkwScanRow
{
  double alpha = 0;
  CkwStage stage = CkwStage::AfterFirst;
  std::vector<CkwReport<double>> reports; // one per qubit, qubit 1 first
};

std::vector<CkwScanRow> ckw_scan(std::vector<double> const &alpha_grid, GhzOptions const &options = {});

struct VerificationReport
{
  int n_samples = 0;
  int alpha_points = 0;
  double tolerance = 0;
  double max_deviation = 0;
  double worst_alpha = 0;
  int worst_sample = 0;
  bool passed = false;
};

/// Haar-random pure state: i.i.d. complex Gaussian amplitudes, normalized.
PureState<double> random_pure_state(std::mt19937_64 &rng, int n_qubits);

/// Random mixed qubit: one half of a Haar-random pure pair.
DensityOperator<double> random_qubit_state(std::mt19937_64 &rng);

VerificationReport verify_circuit_vs_analytic(int n_samples, std::uint64_t seed, double tolerance,
                                              CircuitLayout const &layout = bipartite_layout());

} // namespace ucqc
