#pragma once

#include "mdqec/matrix.hpp"

#include <cstdint>

namespace mdqec {

// A †-closed operator subspace, stored as an HS-orthonormal basis of n x n
// matrices. Closure under products/adjoints is a semantic invariant of the
// callers, checked by closure_residual.
struct AlgebraBasis {
  Index dim = 0;
  std::vector<CMat> basis;
  Index size() const { return static_cast<Index>(basis.size()); }
};

// One block of the standard form: a copy of the protected_dim x protected_dim
// matrix algebra repeated noisy_dim times, I_noisy ⊗ M_protected.
struct Summand {
  Index noisy_dim = 0;
  Index protected_dim = 0;
  bool operator==(const Summand&) const = default;
};

// Unitary change of basis realizing the block form: conjugating every algebra
// element by transform† yields ⊕_k (I_{a_k} ⊗ M_{b_k}) ⊕ 0 on a null corner
// of dimension null_dim. Summand column blocks appear in transform in listed
// order, followed by the null corner.
struct AlgebraStructure {
  CMat transform;
  std::vector<Summand> summands;
  Index null_dim = 0;
};

AlgebraBasis make_algebra_basis(Index dim, const std::vector<CMat>& ops,
                                const Tolerance& tol = {});

// Worst HS residual of products and adjoints of basis elements against the
// span; ~0 for a genuine algebra.
double closure_residual(const AlgebraBasis& alg);

// Smallest †-closed, product-closed span containing the generators.
AlgebraBasis generate_algebra(const std::vector<CMat>& gens, const Tolerance& tol = {});

// {x : xb = bx for every b in ops}.
AlgebraBasis commutant(const std::vector<CMat>& ops, Index dim, const Tolerance& tol = {});
AlgebraBasis commutant(const AlgebraBasis& alg, const Tolerance& tol = {});

// Block structure via eigenprojections of seeded random central elements.
// Throws DegenerateRandomElement after repeated unlucky draws and
// NotAnAlgebra if the closure invariants fail.
AlgebraStructure decompose_structure(const AlgebraBasis& alg, const Tolerance& tol,
                                     std::uint64_t seed);

// Orthonormal basis of the algebra described by a structure (transform
// applied to the block matrix units).
std::vector<CMat> structure_basis(const AlgebraStructure& s);

// Multiplicity of the *-homomorphism determined by basis |-> images, relative
// to the domain's own multiplicity. Throws NotHomomorphism if the images fail
// multiplicativity or adjoint preservation on basis pairs.
Index representation_multiplicity(const AlgebraBasis& domain, const std::vector<CMat>& images,
                                  const Tolerance& tol = {});

// --- operator-subspace helpers -------------------------------------------

// Projector onto span{onb} as an n² x n² matrix acting on vectorized operators.
CMat hs_projector(const std::vector<CMat>& onb, Index dim);

// Operator-norm distance between the HS projectors of two spans.
double subspace_distance(const std::vector<CMat>& a, const std::vector<CMat>& b, Index dim);

// HS norm of the component of x orthogonal to span{onb}.
double membership_residual(const std::vector<CMat>& onb, const CMat& x);

}  // namespace mdqec
