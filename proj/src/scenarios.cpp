#include "ucqc/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ucqc {

namespace {

void check_alpha(double alpha, char const *what)
{
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::domain_error(std::string(what) + ": alpha = " + std::to_string(alpha) + " outside [0, 1]");
  }
}

void check_grid(std::vector<double> const &grid, char const *what)
{
  if (grid.empty()) {
    throw std::invalid_argument(std::string(what) + ": empty grid");
  }
  for (double x : grid) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw std::domain_error(std::string(what) + ": grid value " + std::to_string(x) + " outside [0, 1]");
    }
  }
}

double max_abs_diff(ComplexMatrix<double> const &a, ComplexMatrix<double> const &b)
{
  return (a - b).cwiseAbs().maxCoeff();
}

MeasurementRecord<double> const &pick(std::vector<MeasurementRecord<double>> const &records, Outcome o)
{
  for (auto const &r : records) {
    if (r.outcome == o) {
      if (r.is_null()) {
        throw std::runtime_error("ghz_pipeline: selected measurement branch has zero probability");
      }
      return r;
    }
  }
  throw std::logic_error("ghz_pipeline: missing outcome");
}

struct BranchData
{
  std::vector<double> concurrences;
  std::vector<CkwReport<double>> ckw;
};

double branch_spread(BranchData const &a, BranchData const &b)
{
  double d = 0;
  for (std::size_t i = 0; i < a.concurrences.size(); ++i) {
    d = std::max(d, std::abs(a.concurrences[i] - b.concurrences[i]));
  }
  for (std::size_t i = 0; i < a.ckw.size(); ++i) {
    d = std::max({d, std::abs(a.ckw[i].tau - b.ckw[i].tau),
                  std::abs(a.ckw[i].sum_sq_concurrence - b.ckw[i].sum_sq_concurrence),
                  std::abs(a.ckw[i].saturation - b.ckw[i].saturation)});
  }
  return d;
}

BranchData after_first(DensityOperator<double> const &s)
{
  return {{concurrence(s, 1, 2)}, ckw_saturation_all(s)};
}

BranchData after_second(DensityOperator<double> const &s)
{
  return {{concurrence(s, 2, 3), concurrence(s, 2, 5)}, ckw_saturation_all(s)};
}

} // namespace

ClonerMarginals cloner_marginals_analytic(DensityOperator<double> const &rho_in, double alpha)
{
  detail::require_qubits(rho_in.n_qubits(), 1, "cloner_marginals_analytic");
  check_alpha(alpha, "cloner_marginals_analytic");
  double const a = alpha;
  double const b = 1.0 - alpha;
  ComplexMatrix<double> const id = ComplexMatrix<double>::Identity(2, 2);
  ComplexMatrix<double> const &rho = rho_in.matrix();
  ComplexMatrix<double> const rho_t = rho.transpose();

  double const w_ab = a + b * b;
  double const w_ba = b + a * a;
  return {
    DensityOperator<double>(b / w_ab * rho + a * a / (2.0 * w_ab) * id),
    DensityOperator<double>(a / w_ba * rho + b * b / (2.0 * w_ba) * id),
    DensityOperator<double>(a * b / (b * b + a) * rho_t + (a * a + b * b) / (2.0 * w_ab) * id),
  };
}

double werner_gamma_analytic(double alpha, PairClass pair_class)
{
  check_alpha(alpha, "werner_gamma_analytic");
  double const beta = 1.0 - alpha;
  double const denom = alpha + beta * beta;
  return pair_class == PairClass::OriginalSide ? beta / denom : alpha / denom;
}

std::vector<double> unit_grid(int points)
{
  if (points < 2) {
    throw std::invalid_argument("unit_grid: need at least 2 points, got " + std::to_string(points));
  }
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    g[static_cast<std::size_t>(i)] = static_cast<double>(i) / static_cast<double>(points - 1);
  }
  return g;
}

SweepResult bipartite_sweep(std::vector<double> const &alpha_grid, std::vector<double> const &c0_grid,
                            BellFamily family)
{
  check_grid(alpha_grid, "bipartite_sweep");
  check_grid(c0_grid, "bipartite_sweep");
  SweepResult out;
  out.alpha_grid = alpha_grid;
  out.c0_grid = c0_grid;
  out.family = family;
  auto const rows = static_cast<Eigen::Index>(alpha_grid.size());
  auto const cols = static_cast<Eigen::Index>(c0_grid.size());
  for (auto const &p : bipartite_pairs) {
    out.concurrence_surfaces[p] = Eigen::MatrixXd::Zero(rows, cols);
  }
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      auto const state = run_bipartite(alpha_grid[static_cast<std::size_t>(i)],
                                       InputStateSpec(family, c0_grid[static_cast<std::size_t>(j)]));
      for (auto const &p : bipartite_pairs) {
        out.concurrence_surfaces[p](i, j) = concurrence(state, p.first, p.second);
      }
    }
  }
  return out;
}

GhzReport ghz_pipeline(double alpha, GhzOptions const &options)
{
  check_alpha(alpha, "ghz_pipeline");
  Outcome const keep = options.outcome_policy;

  GhzReport rep;
  rep.alpha = alpha;
  auto const cloned = run_ghz(alpha);
  rep.curve_a = concurrence(cloned, 3, 5);
  rep.curve_b = concurrence(cloned, 4, 5);

  auto const first = measure_projective(cloned, options.first_measured);
  auto const &kept_first = pick(first, keep);
  BranchData const ref_first = after_first(*kept_first.post_state);
  rep.curve_c = ref_first.concurrences[0];
  rep.ckw_after_first = ref_first.ckw;
  rep.outcome_probabilities[0] = first[0].probability;
  rep.outcome_probabilities[1] = first[1].probability;

  auto const second = measure_projective(*kept_first.post_state, options.second_measured);
  BranchData const ref_second = after_second(*pick(second, keep).post_state);
  rep.curve_d = ref_second.concurrences[0];
  rep.curve_e = ref_second.concurrences[1];
  rep.ckw_after_second = ref_second.ckw;
  rep.outcome_probabilities[2] = second[0].probability;
  rep.outcome_probabilities[3] = second[1].probability;

  // Every non-null branch combination must reproduce the kept branch.
  double spread = 0;
  for (auto const &b1 : first) {
    if (b1.is_null()) {
      continue;
    }
    spread = std::max(spread, branch_spread(ref_first, after_first(*b1.post_state)));
    for (auto const &b2 : measure_projective(*b1.post_state, options.second_measured)) {
      if (!b2.is_null()) {
        spread = std::max(spread, branch_spread(ref_second, after_second(*b2.post_state)));
      }
    }
  }
  rep.branch_deviation = spread;
  if (spread > branch_tolerance) {
    throw std::runtime_error("ghz_pipeline: concurrences depend on the measurement outcome (spread " +
                             std::to_string(spread) + " at alpha = " + std::to_string(alpha) + ")");
  }
  return rep;
}

char const *to_string(CkwStage stage) { return stage == CkwStage::AfterFirst ? "first" : "second"; }

std::vector<CkwScanRow> ckw_scan(std::vector<double> const &alpha_grid, GhzOptions const &options)
{
  check_grid(alpha_grid, "ckw_scan");
  std::vector<CkwScanRow> rows;
  for (double alpha : alpha_grid) {
    GhzReport const rep = ghz_pipeline(alpha, options);
    rows.push_back({alpha, CkwStage::AfterFirst, rep.ckw_after_first});
    rows.push_back({alpha, CkwStage::AfterSecond, rep.ckw_after_second});
  }
  return rows;
}

PureState<double> random_pure_state(std::mt19937_64 &rng, int n_qubits)
{
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::Index const d = Eigen::Index{1} << n_qubits;
  ComplexVector<double> v(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    double const re = gauss(rng);
    double const im = gauss(rng);
    v(i) = {re, im};
  }
  return PureState<double>::normalized(std::move(v));
}

DensityOperator<double> random_qubit_state(std::mt19937_64 &rng)
{
  return partial_trace(random_pure_state(rng, 2).density(), {2});
}

VerificationReport verify_circuit_vs_analytic(int n_samples, std::uint64_t seed, double tolerance,
                                              CircuitLayout const &layout)
{
  if (n_samples < 1) {
    throw std::invalid_argument("verify_circuit_vs_analytic: need at least one sample");
  }
  if (!(tolerance > 0.0)) {
    throw std::invalid_argument("verify_circuit_vs_analytic: tolerance must be positive");
  }
  VerificationReport rep;
  rep.n_samples = n_samples;
  rep.tolerance = tolerance;
  auto const alphas = unit_grid(21);
  rep.alpha_points = static_cast<int>(alphas.size());

  std::mt19937_64 rng(seed);
  for (int s = 0; s < n_samples; ++s) {
    // The purifying partner sits on qubit 1; qubit 2 is cloned.
    auto const pair = random_pure_state(rng, 2);
    auto const rho_in = partial_trace(pair.density(), {2});
    for (double alpha : alphas) {
      auto const out = run_bipartite(alpha, pair, layout);
      auto const expected = cloner_marginals_analytic(rho_in, alpha);
      double const dev = std::max({max_abs_diff(partial_trace(out, {2}).matrix(), expected.data.matrix()),
                                   max_abs_diff(partial_trace(out, {3}).matrix(), expected.clone.matrix()),
                                   max_abs_diff(partial_trace(out, {4}).matrix(), expected.ancilla.matrix())});
      if (dev > rep.max_deviation) {
        rep.max_deviation = dev;
        rep.worst_alpha = alpha;
        rep.worst_sample = s;
      }
    }
  }
  rep.passed = rep.max_deviation <= tolerance;
  return rep;
}

} // namespace ucqc
