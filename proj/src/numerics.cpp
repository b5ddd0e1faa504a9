#include "mdqec/numerics.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>

namespace mdqec {

namespace {

// Treats components below this fraction of the column maximum as zero when
// picking the phase anchor.
constexpr double kPhaseAnchorRel = 1e-8;

void fix_column_phases(CMat& m) {
  for (Index c = 0; c < m.cols(); ++c) {
    const double colmax = m.col(c).cwiseAbs().maxCoeff();
    if (colmax == 0.0) continue;
    for (Index r = 0; r < m.rows(); ++r) {
      const double a = std::abs(m(r, c));
      if (a > kPhaseAnchorRel * colmax) {
        m.col(c) *= std::conj(m(r, c)) / a;
        break;
      }
    }
  }
}

}  // namespace

CVec vec_rowmajor(const CMat& m) {
  CVec v(m.size());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
  return v;
}

CMat unvec_rowmajor(const CVec& v, Index rows, Index cols) {
  if (v.size() != rows * cols) throw ShapeMismatch("unvec: size does not match shape");
  CMat m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = v(i * cols + j);
  return m;
}

CMat matrix_unit(Index n, Index k, Index l) {
  CMat m = CMat::Zero(n, n);
  m(k, l) = 1.0;
  return m;
}

EigResult hermitian_eig(const CMat& m, const Tolerance& tol) {
  if (m.rows() != m.cols()) throw NotSquare("hermitian_eig: matrix is not square");
  const double herm = hermiticity_residual(m);
  if (herm > tol.abs_eps)
    throw NotHermitian("hermitian_eig: |m - m†| = " + std::to_string(herm));
  const Index n = m.rows();
  Eigen::SelfAdjointEigenSolver<CMat> solver((m + m.adjoint()) / 2.0);
  if (solver.info() != Eigen::Success) throw Error("hermitian_eig: solver failed");

  EigResult out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Index i = 0; i < n; ++i) {
    out.values(i) = solver.eigenvalues()(n - 1 - i);
    out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  fix_column_phases(out.vectors);
  return out;
}

SvdResult svd(const CMat& m) {
  Eigen::JacobiSVD<CMat> solver(m, Eigen::ComputeThinU | Eigen::ComputeFullV);
  return {solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

Index numerical_rank(const RVec& values_descending, double rel_eps) {
  if (values_descending.size() == 0) return 0;
  const double cutoff = rel_eps * values_descending(0);
  Index rank = 0;
  while (rank < values_descending.size() && values_descending(rank) > cutoff) ++rank;
  return rank;
}

CMat complete_isometry(const CMat& columns, Index dim) {
  const Index r = columns.cols();
  if (r > dim) throw ShapeMismatch("complete_isometry: more columns than dimension");
  CMat out(dim, dim);
  if (r > 0) out.leftCols(r) = columns;
  Index have = r;
  for (Index k = 0; k < dim && have < dim; ++k) {
    CVec cand = CVec::Zero(dim);
    cand(k) = 1.0;
    for (int pass = 0; pass < 2; ++pass)
      if (have > 0) cand -= out.leftCols(have) * (out.leftCols(have).adjoint() * cand);
    const double nrm = cand.norm();
    if (nrm > 1e-6) out.col(have++) = cand / nrm;
  }
  if (have < dim) throw Error("complete_isometry: could not complete basis");
  return out;
}

PolarResult polar_partial_isometry(const CMat& m, const Tolerance& tol) {
  if (m.rows() != m.cols()) throw NotSquare("polar: matrix is not square");
  const Index n = m.rows();
  if (max_abs(m) == 0.0) return {CMat::Identity(n, n), CMat::Zero(n, n)};

  const SvdResult s = svd(m);
  const CMat positive = s.v * s.singular_values.asDiagonal() * s.v.adjoint();
  const Index rank = numerical_rank(s.singular_values, tol.rank_rel_eps);
  const CMat targets = complete_isometry(s.u.leftCols(rank), n);
  const CMat unitary = targets * s.v.adjoint();
  return {unitary, positive};
}

std::vector<CVec> null_space(const CMat& m, const Tolerance& tol) {
  const Index cols = m.cols();
  std::vector<CVec> basis;
  if (m.rows() == 0 || max_abs(m) == 0.0) {
    for (Index k = 0; k < cols; ++k) {
      CVec e = CVec::Zero(cols);
      e(k) = 1.0;
      basis.push_back(e);
    }
    return basis;
  }
  const SvdResult s = svd(m);
  // Floor at 1 so numerically-zero systems (all sigma ~ eps) count as rank 0;
  // matches the residual contract |m v| <= rank_rel_eps * max(1, sigma_max).
  const double cutoff = tol.rank_rel_eps * std::max(1.0, s.singular_values(0));
  Index rank = 0;
  while (rank < s.singular_values.size() && s.singular_values(rank) > cutoff) ++rank;
  for (Index k = rank; k < cols; ++k) {
    CVec v = s.v.col(k);
    const double vmax = v.cwiseAbs().maxCoeff();
    for (Index r = 0; r < cols; ++r) {
      const double a = std::abs(v(r));
      if (a > kPhaseAnchorRel * vmax) {
        v *= std::conj(v(r)) / a;
        break;
      }
    }
    basis.push_back(v);
  }
  return basis;
}

CMat kron(const CMat& a, const CMat& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

std::vector<CMat> hs_orthonormalize(const std::vector<CMat>& ops, const Tolerance& tol) {
  std::vector<CMat> out;
  if (ops.empty()) return out;
  const Index rows = ops.front().rows();
  const Index cols = ops.front().cols();
  for (const CMat& raw : ops) {
    if (raw.rows() != rows || raw.cols() != cols)
      throw ShapeMismatch("hs_orthonormalize: mixed shapes");
    const double orig = hs_norm(raw);
    CMat v = raw;
    for (int pass = 0; pass < 2; ++pass)
      for (const CMat& b : out) v -= hs_inner(b, v) * b;
    const double nrm = hs_norm(v);
    if (nrm > tol.rank_rel_eps * std::max(1.0, orig)) out.push_back(v / nrm);
  }
  return out;
}

CMat sqrt_psd(const CMat& m, const Tolerance& tol) {
  const EigResult eig = hermitian_eig(m, Tolerance{std::max(tol.abs_eps, 1e-8), tol.rank_rel_eps});
  RVec roots(eig.values.size());
  for (Index i = 0; i < eig.values.size(); ++i)
    roots(i) = eig.values(i) > 0.0 ? std::sqrt(eig.values(i)) : 0.0;
  return eig.vectors * roots.asDiagonal() * eig.vectors.adjoint();
}

}  // namespace mdqec
