#include "oracles.hpp"
#include "ucqc/entanglement.hpp"
#include "ucqc/scenarios.hpp"

#include <doctest.h>

using namespace ucqc;
using Mat = ComplexMatrix<double>;
using Vec = ComplexVector<double>;

TEST_CASE("wootters_tilde")
{
  auto const mixed = DensityOperator<double>::maximally_mixed(2);
  CHECK(oracle::max_abs(wootters_tilde(mixed) - mixed.matrix()) < 1e-15);

  auto const phi = bell_state(BellFamily::PhiPlus).density();
  CHECK(oracle::max_abs(wootters_tilde(phi) - phi.matrix()) < 1e-15);

  Vec k00 = Vec::Zero(4);
  k00(0) = 1;
  Mat expected = Mat::Zero(4, 4);
  expected(3, 3) = 1;
  CHECK(oracle::max_abs(wootters_tilde(PureState<double>(k00).density()) - expected) < 1e-15);

  // Complex entries: conjugation, not transposition, is applied before the flip.
  Vec v(4);
  v << 0.5, std::complex<double>(0, 0.5), 0.5, -0.5;
  auto const rho = PureState<double>(v).density();
  Mat yy = kron<double>(gates::pauli_y(), gates::pauli_y());
  CHECK(oracle::max_abs(wootters_tilde(rho) - yy * rho.matrix().conjugate() * yy) == 0.0);

  CHECK_THROWS_AS(wootters_tilde(DensityOperator<double>::maximally_mixed(1)), std::invalid_argument);
}

TEST_CASE("concurrence")
{
  CHECK(concurrence(bell_state(BellFamily::PhiPlus).density()) == doctest::Approx(1.0).epsilon(1e-12));
  for (BellFamily f : all_bell_families) {
    CHECK(concurrence(bell_state(f).density()) == doctest::Approx(1.0).epsilon(1e-12));
  }
  Vec k00 = Vec::Zero(4);
  k00(0) = 1;
  CHECK(concurrence(PureState<double>(k00).density()) < 1e-15);
  CHECK(concurrence(DensityOperator<double>::maximally_mixed(2)) < 1e-15);

  SUBCASE("Werner family against the closed form and the product-route oracle")
  {
    for (int i = 0; i <= 40; ++i) {
      double const gamma = -1.0 / 3.0 + (4.0 / 3.0) * i / 40.0;
      DensityOperator<double> const w(werner_matrix(gamma));
      double const c = concurrence(w);
      CHECK(std::abs(c - oracle::werner_concurrence(gamma)) < 1e-10);
      if (gamma < 0.999) { // full rank, where the product route is well conditioned
        CHECK(std::abs(c - oracle::concurrence_via_product(w.matrix())) < 1e-10);
      }
    }
    DensityOperator<double> const w23(werner_matrix(2.0 / 3.0));
    CHECK(concurrence(w23) == doctest::Approx(0.5).epsilon(1e-12));
  }

  SUBCASE("random mixed states against the product-route oracle")
  {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
      Mat const rho = oracle::random_density(rng, 4);
      CHECK(std::abs(concurrence(DensityOperator<double>(rho)) - oracle::concurrence_via_product(rho)) < 1e-9);
    }
  }

  SUBCASE("rank-deficient states stay clean")
  {
    // A pure state has three zero lambdas; none should leak into C.
    for (double c0 : {0.1, 0.25, 0.5, 0.9}) {
      auto const psi = input_state(InputStateSpec(BellFamily::PsiMinus, c0));
      CHECK(std::abs(concurrence(psi.density()) - 2.0 * std::sqrt(c0 * (1.0 - c0))) < 1e-13);
      RealVector<double> const l = wootters_lambdas(psi.density());
      CHECK(l(1) < 1e-14);
    }
  }

  SUBCASE("long double agrees with double")
  {
    auto const rho = werner_matrix<long double>(0.8L);
    long double const c = concurrence(DensityOperator<long double>(rho));
    CHECK(std::abs(c - 0.7L) < 1e-15L);
  }
}

TEST_CASE("one_tangle")
{
  CHECK(one_tangle(DensityOperator<double>::maximally_mixed(1)) == doctest::Approx(1.0));
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = 1;
  CHECK(one_tangle(DensityOperator<double>(m)) == 0.0);
  m(0, 0) = 0.75;
  m(1, 1) = 0.25;
  CHECK(one_tangle(DensityOperator<double>(m)) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK_THROWS_AS(one_tangle(DensityOperator<double>::maximally_mixed(2)), std::invalid_argument);
}

TEST_CASE("ckw_saturation")
{
  auto const ghz = ghz_state().density();
  auto const r = ckw_saturation(ghz, 1);
  CHECK(r.qubit == 1);
  CHECK(r.tau == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.sum_sq_concurrence < 1e-20);
  CHECK(r.saturation == doctest::Approx(1.0).epsilon(1e-14));

  Vec k000 = Vec::Zero(8);
  k000(0) = 1;
  auto const prod = PureState<double>(k000).density();
  for (int k = 1; k <= 3; ++k) {
    CHECK(std::abs(ckw_saturation(prod, k).saturation) < 1e-15);
  }

  // W state saturates CKW: tau = 8/9, each C = 2/3.
  Vec w = Vec::Zero(8);
  w(1) = w(2) = w(4) = 1.0 / std::sqrt(3.0);
  auto const wr = ckw_saturation(PureState<double>(w).density(), 2);
  CHECK(wr.tau == doctest::Approx(8.0 / 9.0).epsilon(1e-12));
  CHECK(std::abs(wr.saturation) < 1e-12);

  CHECK_THROWS_AS(ckw_saturation(DensityOperator<double>::maximally_mixed(3), 1), std::domain_error);
  CHECK_THROWS_AS(ckw_saturation(ghz, 4), std::invalid_argument);
}

TEST_CASE("werner_fit")
{
  auto const phi = bell_state(BellFamily::PhiPlus).density();
  auto const f1 = werner_fit(phi, BellFamily::PhiPlus);
  CHECK(f1.gamma == doctest::Approx(1.0));
  CHECK(f1.residual < 1e-14);

  auto const f0 = werner_fit(DensityOperator<double>::maximally_mixed(2), BellFamily::PhiPlus);
  CHECK(std::abs(f0.gamma) < 1e-15);
  CHECK(f0.residual < 1e-15);

  auto const state = run_bipartite(0.5, InputStateSpec(BellFamily::PhiPlus, 0.5));
  auto const f = werner_fit(partial_trace(state, {1, 2}), BellFamily::PhiPlus);
  CHECK(f.gamma == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(f.residual < 1e-10);

  // A non-Werner state reports a non-zero residual.
  Vec k01 = Vec::Zero(4);
  k01(1) = 1;
  CHECK(werner_fit(PureState<double>(k01).density(), BellFamily::PhiPlus).residual > 0.1);
}
