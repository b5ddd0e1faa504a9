#pragma once

#include "mdqec/algebra.hpp"
#include "mdqec/channel.hpp"

#include <cstdint>
#include <random>

namespace mdqec {

// Deterministic seeded generator: mt19937_64 with hand-rolled uniform and
// Box-Muller transforms so streams are identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform();           // [0, 1)
  double gaussian();          // standard normal
  Complex complex_gaussian();  // E|z|^2 = 1

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

CMat random_matrix(Rng& rng, Index rows, Index cols);
CMat random_unitary(Rng& rng, Index n);
CMat random_hermitian(Rng& rng, Index n);
CMat random_density(Rng& rng, Index n);
CMat random_isometry(Rng& rng, Index rows, Index cols);

// Convex combination of random unitary conjugations (always unital and TP).
Channel random_mixed_unitary_channel(Rng& rng, Index n, int terms);

// Channel from a Haar-random isometric dilation with `env` Kraus operators;
// generically not unital.
Channel random_dilation_channel(Rng& rng, Index n, int env);

// Channel on dim noisy*prot + junk whose restriction to a hidden block acts as
// (mixed unitary on the noisy factor) ⊗ id on the protected factor, scrambled
// by unitaries on both sides. The junk corner evolves independently; its
// channel is mixed-unitary when `unital` is set and a dilation channel
// otherwise (redrawn until actually non-unital).
Channel random_hidden_code_channel(Rng& rng, Index noisy, Index prot, Index junk, bool unital);

// W (⊕_k I_{a_k} ⊗ M_{b_k} ⊕ 0) W† for a random unitary W.
AlgebraBasis random_block_algebra(Rng& rng, Index n, const std::vector<Summand>& shapes);

}  // namespace mdqec
