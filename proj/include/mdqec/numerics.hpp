#pragma once

#include "mdqec/matrix.hpp"

namespace mdqec {

// m = vectors * values.asDiagonal() * vectors.adjoint(), values descending.
// Eigenvector phases are fixed (first significant component real positive) so
// identical inputs produce identical output.
struct EigResult {
  RVec values;
  CMat vectors;
};

// m = unitary * positive, positive = sqrt(m† m). The unitary is completed on
// the kernel of `positive` by orthogonalizing standard basis vectors against
// the range, lowest index first.
struct PolarResult {
  CMat unitary;
  CMat positive;
};

// m = u * singular_values.asDiagonal() * v.adjoint() (thin u, full v),
// singular values descending.
struct SvdResult {
  CMat u;
  RVec singular_values;
  CMat v;
};

EigResult hermitian_eig(const CMat& m, const Tolerance& tol = {});

SvdResult svd(const CMat& m);

PolarResult polar_partial_isometry(const CMat& m, const Tolerance& tol = {});

// Orthonormal basis of {v : m v = 0}, where singular values below
// rank_rel_eps * sigma_max count as zero.
std::vector<CVec> null_space(const CMat& m, const Tolerance& tol = {});

CMat kron(const CMat& a, const CMat& b);

// Gram-Schmidt under the Hilbert-Schmidt inner product; near-dependent
// vectors are dropped.
std::vector<CMat> hs_orthonormalize(const std::vector<CMat>& ops, const Tolerance& tol = {});

// Square root of a PSD matrix; eigenvalues below zero are clipped.
CMat sqrt_psd(const CMat& m, const Tolerance& tol = {});

Index numerical_rank(const RVec& values_descending, double rel_eps);

// Extends n x r orthonormal columns to an n x n unitary using standard basis
// vectors, lowest index first.
CMat complete_isometry(const CMat& columns, Index dim);

}  // namespace mdqec
