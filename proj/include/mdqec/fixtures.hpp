#pragma once

#include "mdqec/codes.hpp"

#include <cstdint>
#include <string>

namespace mdqec::fixtures {

// Two-qubit channel with four Kraus operators built from 2x2 blocks
//   sqrt(q/2) [[I, U], [0, 0]],  sqrt(q/2) [[I, -U], [0, 0]],
//   (sqrt(1-q)/2) [[I, V], [I, V]],  (sqrt(1-q)/2) [[-I, V], [I, -V]].
// On states |0><0| ⊗ rho it acts as (I/2 + (q/2) Z) ⊗ rho; unital only at
// q = 0.
Channel two_qubit_mixing_channel(double q, const CMat& u, const CMat& v);

// The subspace span{|00>, |01>} (top 2x2 block), a correctable code for the
// channel above.
CodeSubspace two_qubit_mixing_code();

// Channel on two h-dimensional blocks with Kraus operators
//   q [[U, 0], [0, V]]  and  sqrt(1-q^2) [[0, U], [W, 0]];
// always unital and trace preserving.
Channel block_swap_channel(double q, const CMat& u, const CMat& v, const CMat& w);

// The first block as a subspace code.
CodeSubspace block_swap_subspace(Index h);

// The whole space viewed as (block index) ⊗ (block content); the content
// factor is unitarily correctable exactly when w = v.
CodeSubspace block_swap_full_subsystem(Index h);

// Non-unital 4-dimensional channel with three Kraus operators
// (alpha = sqrt(1-2q), beta = sqrt(q/2)) that leaks the outer levels while
// fixing the middle two; q in [0, 1/2].
Channel corner_leak_channel(double q);

// The middle two levels, a decoherence-free subspace of the channel above.
CodeSubspace corner_leak_dfs();

// Channel on 6 = 3x2 dimensions collapsing the first two diagonal 2x2 blocks
// onto the second and fixing the third.
Channel three_block_collapse_channel();

// Diagonal 2x2 block `which` (0, 1, or 2) as a subspace code.
CodeSubspace three_block_code(int which);

// One named check over the built-in example channels.
struct ExampleCheck {
  std::string name;
  bool pass = false;
  double residual = 0.0;
  std::string detail;
};

// Regression harness over every built-in example, with seeded random
// unitaries where the construction allows free parameters.
std::vector<ExampleCheck> run_example_suite(std::uint64_t seed);

}  // namespace mdqec::fixtures
