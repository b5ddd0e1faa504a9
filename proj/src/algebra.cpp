#include "mdqec/algebra.hpp"

#include "mdqec/numerics.hpp"
#include "mdqec/random.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace mdqec {

namespace {

constexpr int kMaxDraws = 8;
constexpr double kClosureEps = 1e-8;

std::vector<CMat> adjoin_adjoints(const std::vector<CMat>& ops) {
  std::vector<CMat> out = ops;
  for (const CMat& m : ops) out.push_back(m.adjoint());
  return out;
}

// Eigenvalues (descending) grouped into maximal runs separated by gaps above
// gap_eps. Returns [begin, end) index pairs.
std::vector<std::pair<Index, Index>> cluster_runs(const RVec& vals, double gap_eps) {
  std::vector<std::pair<Index, Index>> runs;
  Index start = 0;
  for (Index i = 1; i <= vals.size(); ++i) {
    if (i == vals.size() || vals(i - 1) - vals(i) > gap_eps) {
      runs.emplace_back(start, i);
      start = i;
    }
  }
  return runs;
}

struct SummandFrame {
  Summand shape;
  CMat columns;       // n x (a*b), ordered noisy-major
  RVec central_diag;  // diagonal of the central projection, for ordering
};

}  // namespace

AlgebraBasis make_algebra_basis(Index dim, const std::vector<CMat>& ops, const Tolerance& tol) {
  for (const CMat& m : ops)
    if (m.rows() != dim || m.cols() != dim)
      throw ShapeMismatch("algebra basis: operators must be dim x dim");
  return AlgebraBasis{dim, hs_orthonormalize(ops, tol)};
}

double closure_residual(const AlgebraBasis& alg) {
  double worst = 0.0;
  for (const CMat& a : alg.basis) {
    worst = std::max(worst, membership_residual(alg.basis, a.adjoint()));
    for (const CMat& b : alg.basis)
      worst = std::max(worst, membership_residual(alg.basis, a * b));
  }
  return worst;
}

AlgebraBasis generate_algebra(const std::vector<CMat>& gens, const Tolerance& tol) {
  if (gens.empty()) throw ShapeMismatch("generate_algebra: no generators");
  const Index n = gens.front().rows();
  for (const CMat& g : gens)
    if (g.rows() != n || g.cols() != n)
      throw ShapeMismatch("generate_algebra: generators must be square, equal dims");

  std::vector<CMat> basis = hs_orthonormalize(adjoin_adjoints(gens), tol);
  while (true) {
    std::vector<CMat> extended = basis;
    for (const CMat& a : basis)
      for (const CMat& b : basis) extended.push_back(a * b);
    extended = hs_orthonormalize(extended, tol);
    if (extended.size() == basis.size()) break;
    basis = std::move(extended);
    if (static_cast<Index>(basis.size()) > n * n)
      throw Error("generate_algebra: dimension exceeded n^2");
  }
  return AlgebraBasis{n, basis};
}

AlgebraBasis commutant(const std::vector<CMat>& ops, Index dim, const Tolerance& tol) {
  const Index n2 = dim * dim;
  const CMat id = CMat::Identity(dim, dim);
  CMat sys(static_cast<Index>(ops.size()) * n2, n2);
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const CMat& b = ops[k];
    if (b.rows() != dim || b.cols() != dim)
      throw ShapeMismatch("commutant: operator dimension mismatch");
    // vec(xb - bx) = (kron(I, b^T) - kron(b, I)) vec(x)
    sys.middleRows(static_cast<Index>(k) * n2, n2) =
        kron(id, b.transpose()) - kron(b, id);
  }
  std::vector<CMat> basis;
  for (const CVec& v : null_space(sys, tol)) basis.push_back(unvec_rowmajor(v, dim, dim));
  return AlgebraBasis{dim, hs_orthonormalize(basis, tol)};
}

AlgebraBasis commutant(const AlgebraBasis& alg, const Tolerance& tol) {
  return commutant(alg.basis, alg.dim, tol);
}

CMat hs_projector(const std::vector<CMat>& onb, Index dim) {
  const Index n2 = dim * dim;
  CMat proj = CMat::Zero(n2, n2);
  for (const CMat& b : onb) {
    const CVec v = vec_rowmajor(b);
    proj += v * v.adjoint();
  }
  return proj;
}

double subspace_distance(const std::vector<CMat>& a, const std::vector<CMat>& b, Index dim) {
  const CMat diff = hs_projector(a, dim) - hs_projector(b, dim);
  if (max_abs(diff) == 0.0) return 0.0;
  const EigResult eig = hermitian_eig(diff, Tolerance{1e-6, 1e-12});
  double worst = 0.0;
  for (Index i = 0; i < eig.values.size(); ++i) worst = std::max(worst, std::abs(eig.values(i)));
  return worst;
}

double membership_residual(const std::vector<CMat>& onb, const CMat& x) {
  CMat r = x;
  for (int pass = 0; pass < 2; ++pass)
    for (const CMat& b : onb) r -= hs_inner(b, r) * b;
  return hs_norm(r);
}

namespace {

// Center of the algebra: elements of the span commuting with every basis
// element, solved in basis coordinates.
std::vector<CMat> center_basis(const AlgebraBasis& alg, const Tolerance& tol) {
  const Index k = alg.size();
  const Index n2 = alg.dim * alg.dim;
  CMat sys(k * n2, k);
  for (Index j = 0; j < k; ++j)
    for (Index i = 0; i < k; ++i)
      sys.block(j * n2, i, n2, 1) =
          vec_rowmajor(alg.basis[i] * alg.basis[j] - alg.basis[j] * alg.basis[i]);
  std::vector<CMat> out;
  for (const CVec& c : null_space(sys, tol)) {
    CMat z = CMat::Zero(alg.dim, alg.dim);
    for (Index i = 0; i < k; ++i) z += c(i) * alg.basis[i];
    out.push_back(z);
  }
  return hs_orthonormalize(out, tol);
}

std::optional<SummandFrame> build_summand_frame(const AlgebraBasis& alg, const CMat& block_cols,
                                                const RVec& central_diag, Rng& rng,
                                                const Tolerance& tol) {
  const Index m = block_cols.cols();
  std::vector<CMat> local;
  for (const CMat& b : alg.basis)
    local.push_back(block_cols.adjoint() * b * block_cols);
  local = hs_orthonormalize(local, tol);

  const Index d = static_cast<Index>(local.size());
  const Index prot = static_cast<Index>(std::llround(std::sqrt(double(d))));
  if (prot * prot != d || prot == 0 || m % prot != 0) return std::nullopt;
  const Index noisy = m / prot;

  // Random Hermitian element of the restricted algebra; its eigenspaces give
  // the protected-factor eigenbasis, each with multiplicity noisy.
  CMat draw = CMat::Zero(m, m);
  for (const CMat& b : local) draw += rng.gaussian() * b;
  const CMat h = (draw + draw.adjoint()) / 2.0;
  const EigResult eig = hermitian_eig(h, Tolerance{1e-8, tol.rank_rel_eps});
  const double scale = std::max(1.0, std::abs(eig.values(0)));
  const auto runs = cluster_runs(eig.values, 1e-5 * scale);
  if (static_cast<Index>(runs.size()) != prot) return std::nullopt;
  for (const auto& [lo, hi] : runs)
    if (hi - lo != noisy || eig.values(lo) - eig.values(hi - 1) > 1e-8 * scale)
      return std::nullopt;

  // Cross maps from the first eigenspace to each other one, normalized to
  // partial isometries; a generic algebra element provides them.
  CMat t = CMat::Zero(m, m);
  for (const CMat& b : local) t += rng.complex_gaussian() * b;
  const CMat q0 = eig.vectors.middleCols(runs[0].first, noisy);
  const CMat p0 = q0 * q0.adjoint();

  CMat cols(m, m);
  for (Index l = 0; l < prot; ++l) {
    CMat unit;
    if (l == 0) {
      unit = p0;
    } else {
      const CMat ql = eig.vectors.middleCols(runs[l].first, noisy);
      const CMat xl = ql * (ql.adjoint() * t * q0) * q0.adjoint();
      const double nrm = hs_norm(xl);
      if (nrm < 1e-3) return std::nullopt;
      unit = xl * (std::sqrt(double(noisy)) / nrm);
      if (max_abs(unit.adjoint() * unit - p0) > 1e-7) return std::nullopt;
    }
    for (Index a = 0; a < noisy; ++a) cols.col(a * prot + l) = unit * q0.col(a);
  }
  if (max_abs(cols.adjoint() * cols - CMat::Identity(m, m)) > 1e-7) return std::nullopt;

  return SummandFrame{Summand{noisy, prot}, block_cols * cols, central_diag};
}

bool block_form_ok(const AlgebraBasis& alg, const AlgebraStructure& s) {
  const Index n = alg.dim;
  for (const CMat& g : alg.basis) {
    CMat bt = s.transform.adjoint() * g * s.transform;
    CMat recon = CMat::Zero(n, n);
    Index off = 0;
    for (const Summand& sm : s.summands) {
      const Index a = sm.noisy_dim, b = sm.protected_dim;
      CMat avg = CMat::Zero(b, b);
      for (Index i = 0; i < a; ++i) avg += bt.block(off + i * b, off + i * b, b, b);
      avg /= double(a);
      recon.block(off, off, a * b, a * b) = kron(CMat::Identity(a, a), avg);
      off += a * b;
    }
    if (max_abs(bt - recon) > 1e-8) return false;
  }
  return true;
}

}  // namespace

AlgebraStructure decompose_structure(const AlgebraBasis& alg, const Tolerance& tol,
                                     std::uint64_t seed) {
  const Index n = alg.dim;
  if (alg.basis.empty())
    return AlgebraStructure{CMat::Identity(n, n), {}, n};
  if (closure_residual(alg) > kClosureEps)
    throw NotAnAlgebra("decompose_structure: span is not product/adjoint closed");

  // Support projection; everything below it is the null corner.
  CMat gram = CMat::Zero(n, n);
  for (const CMat& b : alg.basis) gram += b * b.adjoint();
  const EigResult sup = hermitian_eig(gram, Tolerance{1e-8, tol.rank_rel_eps});
  const Index rank = numerical_rank(sup.values, tol.rank_rel_eps);
  const CMat range = sup.vectors.leftCols(rank);
  const CMat kernel = sup.vectors.rightCols(n - rank);

  const std::vector<CMat> center = center_basis(alg, tol);
  const Index num_summands = static_cast<Index>(center.size());
  if (num_summands == 0) throw NotAnAlgebra("decompose_structure: empty center");

  Rng rng(seed);
  for (int attempt = 0; attempt < kMaxDraws; ++attempt) {
    // Generic Hermitian central element; its spectral projections are the
    // minimal central projections.
    CMat zdraw = CMat::Zero(n, n);
    for (const CMat& c : center) zdraw += rng.gaussian() * c;
    const CMat z = (zdraw + zdraw.adjoint()) / 2.0;
    const CMat zr = range.adjoint() * z * range;
    const EigResult eig = hermitian_eig(zr, Tolerance{1e-8, tol.rank_rel_eps});
    const double scale = std::max(1.0, std::abs(eig.values(0)));
    const auto runs = cluster_runs(eig.values, 1e-5 * scale);
    if (static_cast<Index>(runs.size()) != num_summands) continue;

    bool ok = true;
    std::vector<SummandFrame> frames;
    for (const auto& [lo, hi] : runs) {
      if (eig.values(lo) - eig.values(hi - 1) > 1e-8 * scale) {
        ok = false;
        break;
      }
      const CMat cols = range * eig.vectors.middleCols(lo, hi - lo);
      const CMat proj = cols * cols.adjoint();
      if (membership_residual(alg.basis, proj) > 1e-7 * std::max(1.0, hs_norm(proj))) {
        ok = false;
        break;
      }
      auto frame = build_summand_frame(alg, cols, proj.diagonal().real(), rng, tol);
      if (!frame) {
        ok = false;
        break;
      }
      frames.push_back(std::move(*frame));
    }
    if (!ok) continue;

    // Canonical report order: largest protected factor first, then largest
    // multiplicity, then by the central projection's diagonal.
    std::stable_sort(frames.begin(), frames.end(), [](const SummandFrame& x, const SummandFrame& y) {
      if (x.shape.protected_dim != y.shape.protected_dim)
        return x.shape.protected_dim > y.shape.protected_dim;
      if (x.shape.noisy_dim != y.shape.noisy_dim) return x.shape.noisy_dim > y.shape.noisy_dim;
      for (Index i = 0; i < x.central_diag.size(); ++i) {
        const double di = x.central_diag(i) - y.central_diag(i);
        if (std::abs(di) > 1e-9) return di > 0;
      }
      return false;
    });

    AlgebraStructure s;
    s.transform.resize(n, n);
    Index off = 0;
    for (const SummandFrame& f : frames) {
      s.summands.push_back(f.shape);
      s.transform.middleCols(off, f.columns.cols()) = f.columns;
      off += f.columns.cols();
    }
    s.transform.rightCols(n - rank) = kernel;
    s.null_dim = n - rank;

    if (!block_form_ok(alg, s)) continue;
    return s;
  }
  throw DegenerateRandomElement("decompose_structure: no usable random draw after " +
                                std::to_string(kMaxDraws) + " attempts");
}

std::vector<CMat> structure_basis(const AlgebraStructure& s) {
  const Index n = s.transform.rows();
  std::vector<CMat> out;
  Index off = 0;
  for (const Summand& sm : s.summands) {
    const Index a = sm.noisy_dim, b = sm.protected_dim;
    for (Index k = 0; k < b; ++k)
      for (Index l = 0; l < b; ++l) {
        CMat block = CMat::Zero(n, n);
        block.block(off, off, a * b, a * b) = kron(CMat::Identity(a, a), matrix_unit(b, k, l));
        out.push_back(s.transform * block * s.transform.adjoint() / std::sqrt(double(a)));
      }
    off += a * b;
  }
  return out;
}

Index representation_multiplicity(const AlgebraBasis& domain, const std::vector<CMat>& images,
                                  const Tolerance& tol) {
  const Index k = domain.size();
  if (static_cast<Index>(images.size()) != k)
    throw ShapeMismatch("representation_multiplicity: images do not match basis");
  if (k == 0) return 0;
  if (closure_residual(domain) > kClosureEps)
    throw NotAnAlgebra("representation_multiplicity: domain is not an algebra");

  const Index d = static_cast<Index>(std::llround(std::sqrt(double(k))));
  if (d * d != k)
    throw NotAnAlgebra("representation_multiplicity: domain is not a full matrix factor");
  CMat gram = CMat::Zero(domain.dim, domain.dim);
  for (const CMat& b : domain.basis) gram += b * b.adjoint();
  const Index support = numerical_rank(hermitian_eig(gram, Tolerance{1e-8, tol.rank_rel_eps}).values,
                                       tol.rank_rel_eps);
  if (support % d != 0)
    throw NotAnAlgebra("representation_multiplicity: support incompatible with factor size");
  const Index domain_mult = support / d;

  // The linear extension of basis |-> images must be multiplicative and
  // adjoint-preserving.
  auto image_of = [&](const CMat& x) {
    CMat out = CMat::Zero(images.front().rows(), images.front().cols());
    for (Index i = 0; i < k; ++i) out += hs_inner(domain.basis[i], x) * images[i];
    return out;
  };
  const double hom_eps = 1e-8;
  for (Index i = 0; i < k; ++i) {
    const CMat adj_resid = image_of(domain.basis[i].adjoint()) - images[i].adjoint();
    if (max_abs(adj_resid) > hom_eps)
      throw NotHomomorphism("representation_multiplicity: adjoint not preserved",
                            {static_cast<int>(i), static_cast<int>(i)}, max_abs(adj_resid));
    for (Index j = 0; j < k; ++j) {
      const CMat prod_resid = image_of(domain.basis[i] * domain.basis[j]) - images[i] * images[j];
      if (max_abs(prod_resid) > hom_eps)
        throw NotHomomorphism("representation_multiplicity: multiplicativity fails",
                              {static_cast<int>(i), static_cast<int>(j)}, max_abs(prod_resid));
    }
  }

  CMat igram = CMat::Zero(images.front().rows(), images.front().rows());
  for (const CMat& im : images) igram += im * im.adjoint();
  if (max_abs(igram) == 0.0) return 0;
  const Index image_support = numerical_rank(
      hermitian_eig(igram, Tolerance{1e-8, tol.rank_rel_eps}).values, tol.rank_rel_eps);
  if (image_support % (d * domain_mult) != 0)
    throw NotHomomorphism("representation_multiplicity: image support is not a whole multiple",
                          {0, 0}, 0.0);
  return image_support / (d * domain_mult);
}

}  // namespace mdqec
