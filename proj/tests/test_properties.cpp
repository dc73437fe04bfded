#include "properties.hpp"

#include <doctest.h>

TEST_CASE("unitary evolution preserves trace, Hermiticity and spectrum")
{
  CHECK(props::unitary_preserves_state(500, 1) == 0);
}

TEST_CASE("concurrence is invariant under local unitaries")
{
  CHECK(props::concurrence_local_unitary_invariance(500, 2) == 0);
}

TEST_CASE("pure-state concurrence is 2 sqrt(c0 c1)")
{
  CHECK(props::pure_state_concurrence_formula(500, 3) == 0);
}

TEST_CASE("partial trace commutes with factor permutation")
{
  CHECK(props::partial_trace_permutation(200, 4) == 0);
}

TEST_CASE("measurement branches reconstruct the dephased state")
{
  CHECK(props::measurement_reconstructs_dephasing(300, 5) == 0);
}

TEST_CASE("PSD square root squares back")
{
  CHECK(props::sqrt_squares_back(300, 6) == 0);
}

TEST_CASE("CKW inequality holds for random pure states")
{
  CHECK(props::ckw_inequality_holds(200, 7) == 0);
}

TEST_CASE("one-tangle of a pure pair equals its squared concurrence")
{
  CHECK(props::tangle_matches_pure_concurrence(300, 8) == 0);
}
