#include <doctest.h>

#include "gp/dyadic.hpp"
#include "gp/error.hpp"

using gp::Dyadic;

TEST_CASE("dyadic normalization and equality") {
  CHECK(Dyadic(4, 2) == Dyadic(1, 0));
  CHECK(Dyadic(6, 3) == Dyadic(3, 2));
  CHECK(Dyadic(0, 7) == Dyadic(0, 0));
  CHECK(Dyadic(3, 2).exp() == 2);
  CHECK_THROWS_AS(Dyadic(1, -1), gp::InputError);
}

TEST_CASE("dyadic midpoint is exact") {
  const Dyadic a = Dyadic::integer(0);
  const Dyadic b = Dyadic::integer(1);
  const Dyadic m = midpoint(a, b);
  CHECK(m == Dyadic(1, 1));
  CHECK(midpoint(m, b) == Dyadic(3, 2));
  CHECK(midpoint(Dyadic(3, 2), Dyadic(5, 3)) == Dyadic(11, 4));
  CHECK(m.to_double() == 0.5);
}

TEST_CASE("dyadic ordering") {
  CHECK(Dyadic(1, 1) < Dyadic(3, 2));
  CHECK(Dyadic(-1, 3) < Dyadic(0, 0));
  CHECK_FALSE(Dyadic(5, 3) < Dyadic(5, 3));
}
