#include "mdqec/channel.hpp"
#include "mdqec/fixtures.hpp"
#include "mdqec/numerics.hpp"
#include "mdqec/random.hpp"

#include <doctest.h>

#include <cmath>

using namespace mdqec;

TEST_CASE("validate accepts the identity channel and flags unitality") {
  const Channel id = validate({CMat::Identity(3, 3)});
  CHECK(id.trace_preserving);
  CHECK(id.unital);
  CHECK(id.dim == 3);
}

TEST_CASE("validate rejects bad input") {
  CHECK_THROWS_AS(validate({0.5 * CMat::Identity(2, 2)}), NotTracePreserving);
  CHECK_THROWS_AS(validate({CMat::Identity(2, 2), CMat::Identity(3, 3)}), ShapeMismatch);
  CHECK_THROWS_AS(validate({}), ShapeMismatch);
  try {
    validate({0.5 * CMat::Identity(2, 2)});
  } catch (const NotTracePreserving& e) {
    CHECK(e.residual == doctest::Approx(0.75));
  }
}

TEST_CASE("block swap channel is unital, corner leak channel is not") {
  Rng rng(21);
  const Channel swap = fixtures::block_swap_channel(0.6, random_unitary(rng, 2),
                                                    random_unitary(rng, 2), random_unitary(rng, 2));
  CHECK(swap.trace_preserving);
  CHECK(swap.unital);

  const Channel leak = fixtures::corner_leak_channel(0.25);
  CHECK(leak.trace_preserving);
  CHECK(!leak.unital);
}

TEST_CASE("two-qubit mixing channel action on |0><0| ⊗ rho") {
  Rng rng(22);
  const double q = 0.5;
  const Channel ch =
      fixtures::two_qubit_mixing_channel(q, random_unitary(rng, 2), random_unitary(rng, 2));
  const CMat rho00 = kron(matrix_unit(2, 0, 0), matrix_unit(2, 0, 0));
  CMat left = CMat::Zero(2, 2);
  left(0, 0) = (1.0 + q) / 2.0;
  left(1, 1) = (1.0 - q) / 2.0;
  CHECK(max_abs(ch.apply(rho00) - kron(left, matrix_unit(2, 0, 0))) < 1e-12);
}

TEST_CASE("corner leak channel fixes its decoherence-free subspace") {
  const Channel ch = fixtures::corner_leak_channel(0.25);
  const CMat half_pc = 0.5 * fixtures::corner_leak_dfs().projector;
  CHECK(max_abs(ch.apply(half_pc) - half_pc) < 1e-12);
}

TEST_CASE("dual of the corner leak channel matches the closed form") {
  const double q = 0.25;
  const Channel d = dual(fixtures::corner_leak_channel(q));
  CMat x = CMat::Zero(4, 4);
  x(1, 1) = 0.3;
  x(1, 2) = Complex(0.1, -0.4);
  x(2, 1) = Complex(0.7, 0.2);
  x(2, 2) = -0.5;
  CMat corner = CMat::Zero(4, 4);
  corner(0, 0) = x(2, 2);
  corner(0, 3) = x(2, 1);
  corner(3, 0) = x(1, 2);
  corner(3, 3) = x(1, 1);
  CHECK(max_abs(d.apply(x) - (x + q * corner)) < 1e-12);
}

TEST_CASE("dual of the identity channel is the identity") {
  const Channel d = dual(validate({CMat::Identity(3, 3)}));
  CHECK(d.trace_preserving);
  CHECK(d.unital);
  Rng rng(28);
  const CMat x = random_matrix(rng, 3, 3);
  CHECK(max_abs(d.apply(x) - x) < 1e-14);
}

TEST_CASE("duality identity and unitality/trace-preservation swap") {
  Rng rng(23);
  for (int rep = 0; rep < 5; ++rep) {
    const Channel ch = rep % 2 == 0 ? random_dilation_channel(rng, 4, 3)
                                    : random_mixed_unitary_channel(rng, 4, 3);
    const Channel d = dual(ch);
    CHECK(d.trace_preserving == ch.unital);
    CHECK(d.unital == ch.trace_preserving);
    for (int pair = 0; pair < 50; ++pair) {
      const CMat rho = random_density(rng, 4);
      const CMat x = random_matrix(rng, 4, 4);
      const Complex lhs = (ch.apply(rho) * x).trace();
      const Complex rhs = (rho * d.apply(x)).trace();
      CHECK(std::abs(lhs - rhs) < 1e-9);
    }
  }
}

TEST_CASE("channels preserve trace and positivity on random densities") {
  Rng rng(24);
  for (int rep = 0; rep < 10; ++rep) {
    const Channel ch = random_dilation_channel(rng, 5, 2);
    const CMat rho = random_density(rng, 5);
    const CMat out = ch.apply(rho);
    CHECK(std::abs(out.trace() - rho.trace()) < 1e-9);
    const EigResult eig = hermitian_eig(out, Tolerance{1e-8, 1e-10});
    CHECK(eig.values(4) > -1e-9);
  }
}

TEST_CASE("compose matches sequential application and identity composition") {
  Rng rng(25);
  const Channel ch = random_dilation_channel(rng, 4, 2);
  const Channel id = validate({CMat::Identity(4, 4)});
  const Channel both = compose(id, ch);
  const Channel pair = compose(dual(ch), ch);
  for (int rep = 0; rep < 10; ++rep) {
    const CMat rho = random_density(rng, 4);
    CHECK(max_abs(both.apply(rho) - ch.apply(rho)) < 1e-9);
    CHECK(max_abs(pair.apply(rho) - dual(ch).apply(ch.apply(rho))) < 1e-9);
  }
}

TEST_CASE("compose of a unital channel with its dual is unital and trace preserving") {
  Rng rng(26);
  const Channel ch = random_mixed_unitary_channel(rng, 4, 3);
  const Channel round_trip = compose(dual(ch), ch);
  CHECK(round_trip.trace_preserving);
  CHECK(round_trip.unital);
}

TEST_CASE("dual∘channel fixes the commutant blocks of the q=0 mixing channel") {
  const CMat id = CMat::Identity(2, 2);
  const Channel ch = fixtures::two_qubit_mixing_channel(0.0, id, id);
  const Channel round_trip = compose(dual(ch), ch);
  Rng rng(27);
  const CMat a = random_matrix(rng, 2, 2);
  const CMat b = random_matrix(rng, 2, 2);
  CMat x(4, 4);
  x.topLeftCorner(2, 2) = a;
  x.topRightCorner(2, 2) = b;
  x.bottomLeftCorner(2, 2) = b;
  x.bottomRightCorner(2, 2) = a;
  CHECK(max_abs(round_trip.apply(x) - x) < 1e-10);
}
