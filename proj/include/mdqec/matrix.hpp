#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mdqec {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using Index = Eigen::Index;

// Numerical thresholds used throughout. abs_eps bounds entrywise residuals;
// rank_rel_eps decides which singular/eigenvalues count as zero, relative to
// the largest one.
struct Tolerance {
  double abs_eps = 1e-10;
  double rank_rel_eps = 1e-10;
};

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotSquare : Error {
  using Error::Error;
};

struct NotHermitian : Error {
  using Error::Error;
};

struct ShapeMismatch : Error {
  using Error::Error;
};

struct NotTracePreserving : Error {
  NotTracePreserving(const std::string& what, double residual_)
      : Error(what), residual(residual_) {}
  double residual;
};

struct NotUnital : Error {
  using Error::Error;
};

struct NotAnAlgebra : Error {
  using Error::Error;
};

struct DegenerateRandomElement : Error {
  using Error::Error;
};

struct NotHomomorphism : Error {
  NotHomomorphism(const std::string& what, std::pair<int, int> pair_, double residual_)
      : Error(what), violating_pair(pair_), residual(residual_) {}
  std::pair<int, int> violating_pair;
  double residual;
};

// Structured negative outcome of a correctability test: the code failed the
// block conditions, with the worst violating Kraus pair attached.
struct NotCorrectable : Error {
  NotCorrectable(const std::string& what, double residual_, std::pair<int, int> pair_)
      : Error(what), worst_residual(residual_), worst_pair(pair_) {}
  double worst_residual;
  std::pair<int, int> worst_pair;
};

struct RankNotOne : Error {
  RankNotOne(const std::string& what, Index rank_) : Error(what), rank(rank_) {}
  Index rank;
};

struct ParseError : Error {
  ParseError(const std::string& what, std::size_t line_, std::size_t position_)
      : Error(what), line(line_), position(position_) {}
  std::size_t line;
  std::size_t position;
};

inline double max_abs(const CMat& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double hermiticity_residual(const CMat& m) {
  return max_abs(m - m.adjoint());
}

// Hilbert-Schmidt inner product Tr(a† b) and the induced (Frobenius) norm.
inline Complex hs_inner(const CMat& a, const CMat& b) {
  return (a.adjoint() * b).trace();
}

inline double hs_norm(const CMat& m) { return m.norm(); }

// Row-major vectorization: vec(m)(i*cols + j) = m(i, j), so that
// vec(A X B) = kron(A, B^T) vec(X).
CVec vec_rowmajor(const CMat& m);
CMat unvec_rowmajor(const CVec& v, Index rows, Index cols);

CMat matrix_unit(Index n, Index k, Index l);

}  // namespace mdqec
