#include "mdqec/random.hpp"

#include "mdqec/numerics.hpp"

#include <cmath>
#include <numbers>

namespace mdqec {

double Rng::uniform() {
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 1e-300) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

Complex Rng::complex_gaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return Complex(re, im) / std::sqrt(2.0);
}

CMat random_matrix(Rng& rng, Index rows, Index cols) {
  CMat m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = rng.complex_gaussian();
  return m;
}

CMat random_isometry(Rng& rng, Index rows, Index cols) {
  const CMat g = random_matrix(rng, rows, cols);
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ() * CMat::Identity(rows, cols);
  const CMat r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  // Fix column phases from R's diagonal so the distribution is Haar.
  for (Index i = 0; i < cols; ++i) {
    const Complex d = r(i, i);
    const double a = std::abs(d);
    if (a > 0.0) q.col(i) *= d / a;
  }
  return q;
}

CMat random_unitary(Rng& rng, Index n) { return random_isometry(rng, n, n); }

CMat random_hermitian(Rng& rng, Index n) {
  const CMat g = random_matrix(rng, n, n);
  return (g + g.adjoint()) / 2.0;
}

CMat random_density(Rng& rng, Index n) {
  const CMat g = random_matrix(rng, n, n);
  CMat rho = g * g.adjoint();
  return rho / rho.trace();
}

Channel random_mixed_unitary_channel(Rng& rng, Index n, int terms) {
  std::vector<double> p(terms);
  double total = 0.0;
  for (double& x : p) {
    x = -std::log(std::max(rng.uniform(), 1e-300));
    total += x;
  }
  std::vector<CMat> kraus;
  for (int i = 0; i < terms; ++i)
    kraus.push_back(std::sqrt(p[i] / total) * random_unitary(rng, n));
  return validate(std::move(kraus));
}

Channel random_dilation_channel(Rng& rng, Index n, int env) {
  const CMat v = random_isometry(rng, n * env, n);
  std::vector<CMat> kraus;
  for (int i = 0; i < env; ++i) kraus.push_back(v.middleRows(static_cast<Index>(i) * n, n));
  return validate(std::move(kraus));
}

Channel random_hidden_code_channel(Rng& rng, Index noisy, Index prot, Index junk, bool unital) {
  if (!unital && junk < 2)
    throw ShapeMismatch("random_hidden_code_channel: a non-unital corner needs junk >= 2");
  const Index block = noisy * prot;
  const Index n = block + junk;
  const Channel noise = random_mixed_unitary_channel(rng, noisy, 2);

  for (int tries = 0; tries < 16; ++tries) {
    std::vector<CMat> corner_kraus;
    if (junk > 0) {
      const Channel corner =
          unital ? random_mixed_unitary_channel(rng, junk, 2) : random_dilation_channel(rng, junk, 2);
      if (!unital && unitality_residual(corner.kraus) < 1e-3) continue;
      corner_kraus = corner.kraus;
    }

    std::vector<CMat> kraus;
    for (const CMat& a : noise.kraus) {
      CMat e = CMat::Zero(n, n);
      e.topLeftCorner(block, block) = kron(a, CMat::Identity(prot, prot));
      kraus.push_back(e);
    }
    for (const CMat& c : corner_kraus) {
      CMat e = CMat::Zero(n, n);
      e.bottomRightCorner(junk, junk) = c;
      kraus.push_back(e);
    }

    const CMat out = random_unitary(rng, n);
    const CMat in = random_unitary(rng, n);
    for (CMat& e : kraus) e = out * e * in;
    return validate(std::move(kraus));
  }
  throw Error("random_hidden_code_channel: could not draw a non-unital corner");
}

AlgebraBasis random_block_algebra(Rng& rng, Index n, const std::vector<Summand>& shapes) {
  Index used = 0;
  for (const Summand& s : shapes) used += s.noisy_dim * s.protected_dim;
  if (used > n) throw ShapeMismatch("random_block_algebra: summands exceed dimension");
  AlgebraStructure s;
  s.transform = random_unitary(rng, n);
  s.summands = shapes;
  s.null_dim = n - used;
  return AlgebraBasis{n, structure_basis(s)};
}

}  // namespace mdqec
