#include "mdqec/codes.hpp"

#include "mdqec/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace mdqec {

namespace {

// Partial trace over the protected (fast) index of an (a*b) x (a*b) matrix.
CMat trace_out_protected(const CMat& s, Index a, Index b) {
  CMat f = CMat::Zero(a, a);
  for (Index p = 0; p < a; ++p)
    for (Index q = 0; q < a; ++q)
      for (Index l = 0; l < b; ++l) f(p, q) += s(p * b + l, q * b + l);
  return f;
}

double kl_scale(const CMat& g) { return std::max(1.0, hs_norm(g)); }

}  // namespace

CodeSubspace make_code(const CMat& embed, Index noisy_dim, Index protected_dim,
                       const Tolerance& tol) {
  if (noisy_dim < 1 || protected_dim < 1)
    throw ShapeMismatch("code: factor dimensions must be positive");
  if (embed.cols() != noisy_dim * protected_dim)
    throw ShapeMismatch("code: embedding must have noisy_dim * protected_dim columns");
  const Index d = embed.cols();
  if (max_abs(embed.adjoint() * embed - CMat::Identity(d, d)) > std::max(tol.abs_eps, 1e-9))
    throw ShapeMismatch("code: embedding is not an isometry");
  CodeSubspace c;
  c.embed = embed;
  c.noisy_dim = noisy_dim;
  c.protected_dim = protected_dim;
  c.projector = embed * embed.adjoint();
  return c;
}

CodeSubspace code_from_indices(Index dim, const std::vector<Index>& indices, Index noisy_dim,
                               Index protected_dim, const Tolerance& tol) {
  CMat embed = CMat::Zero(dim, static_cast<Index>(indices.size()));
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] < 0 || indices[k] >= dim) throw ShapeMismatch("code: basis index out of range");
    embed(indices[k], static_cast<Index>(k)) = 1.0;
  }
  return make_code(embed, noisy_dim, protected_dim, tol);
}

CodeSubspace code_from_summand(const AlgebraStructure& s, std::size_t which,
                               const Tolerance& tol) {
  if (which >= s.summands.size()) throw ShapeMismatch("code: summand index out of range");
  Index off = 0;
  for (std::size_t k = 0; k < which; ++k)
    off += s.summands[k].noisy_dim * s.summands[k].protected_dim;
  const Summand& sm = s.summands[which];
  const CMat embed = s.transform.middleCols(off, sm.noisy_dim * sm.protected_dim);
  return make_code(embed, sm.noisy_dim, sm.protected_dim, tol);
}

CodeSubspace code_from_projector(const CMat& projector, const Tolerance& tol) {
  if (projector.rows() != projector.cols()) throw NotSquare("code: projector must be square");
  if (max_abs(projector * projector - projector) > std::max(tol.abs_eps, 1e-9) ||
      hermiticity_residual(projector) > std::max(tol.abs_eps, 1e-9))
    throw ShapeMismatch("code: matrix is not an orthogonal projection");
  const EigResult eig = hermitian_eig(projector, Tolerance{1e-8, tol.rank_rel_eps});
  Index rank = 0;
  while (rank < eig.values.size() && eig.values(rank) > 0.5) ++rank;
  if (rank == 0) throw ShapeMismatch("code: zero-dimensional subspace rejected");
  return make_code(eig.vectors.leftCols(rank), 1, rank, tol);
}

CMat embed_operator(const CodeSubspace& c, const CMat& op_noisy, const CMat& op_prot) {
  return c.embed * kron(op_noisy, op_prot) * c.embed.adjoint();
}

CMat compress(const CodeSubspace& c, const CMat& x) {
  return c.embed.adjoint() * x * c.embed;
}

std::vector<CMat> code_operator_basis(const CodeSubspace& c) {
  std::vector<CMat> out;
  const Index d = c.code_dim();
  for (Index k = 0; k < d; ++k)
    for (Index l = 0; l < d; ++l)
      out.push_back(c.embed * matrix_unit(d, k, l) * c.embed.adjoint());
  return out;
}

std::vector<CMat> protected_operator_basis(const CodeSubspace& c) {
  std::vector<CMat> out;
  const CMat id = CMat::Identity(c.noisy_dim, c.noisy_dim);
  for (Index k = 0; k < c.protected_dim; ++k)
    for (Index l = 0; l < c.protected_dim; ++l)
      out.push_back(embed_operator(c, id, matrix_unit(c.protected_dim, k, l)));
  return out;
}

KlResult kl_matrix(const Channel& ch, const CodeSubspace& code, const Tolerance& tol) {
  if (code.noisy_dim != 1)
    throw ShapeMismatch("kl_matrix: expects a subspace code (noisy_dim = 1)");
  if (code.projector.rows() != ch.dim) throw ShapeMismatch("kl_matrix: dimension mismatch");
  const int m = static_cast<int>(ch.kraus.size());
  const double dc = static_cast<double>(code.code_dim());

  KlResult out;
  out.correctable = true;
  out.code_matrix.resize(m, m);
  double worst_rel = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const CMat g = ch.kraus[i].adjoint() * ch.kraus[j];
      const Complex lam = (code.projector * g).trace() / dc;
      out.code_matrix(i, j) = lam;
      const double resid = max_abs(code.projector * g * code.projector - lam * code.projector);
      const double rel = resid / kl_scale(g);
      if (rel > worst_rel) {
        worst_rel = rel;
        out.worst_residual = resid;
        out.worst_pair = {i, j};
      }
      if (rel > tol.abs_eps) out.correctable = false;
    }
  return out;
}

SubsystemKlResult subsystem_kl(const Channel& ch, const CodeSubspace& code, const Tolerance& tol) {
  if (code.projector.rows() != ch.dim) throw ShapeMismatch("subsystem_kl: dimension mismatch");
  const int m = static_cast<int>(ch.kraus.size());
  const Index a = code.noisy_dim;
  const Index b = code.protected_dim;
  const CMat idb = CMat::Identity(b, b);

  SubsystemKlResult out;
  out.correctable = true;
  out.blocks.assign(m, std::vector<CMat>(m));
  out.block_matrix.resize(m * a, m * a);
  double worst_rel = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const CMat g = ch.kraus[i].adjoint() * ch.kraus[j];
      const CMat s = compress(code, g);
      const CMat f = trace_out_protected(s, a, b) / static_cast<double>(b);
      out.blocks[i][j] = f;
      out.block_matrix.block(i * a, j * a, a, a) = f;
      const double resid = max_abs(s - kron(f, idb));
      const double rel = resid / kl_scale(g);
      if (rel > worst_rel) {
        worst_rel = rel;
        out.worst_residual = resid;
        out.worst_pair = {i, j};
      }
      if (rel > tol.abs_eps) out.correctable = false;
    }

  if (out.correctable) {
    const EigResult eig = hermitian_eig(out.block_matrix, Tolerance{1e-8, tol.rank_rel_eps});
    const double floor = -1e-9 * std::max(1.0, eig.values(0));
    if (eig.values(eig.values.size() - 1) < floor) {
      out.correctable = false;
      out.worst_residual = -eig.values(eig.values.size() - 1);
    }
  }
  return out;
}

MixedUnitaryForm mixed_unitary_form(const Channel& ch, const CodeSubspace& code,
                                    const Tolerance& tol) {
  const KlResult kl = kl_matrix(ch, code, tol);
  if (!kl.correctable)
    throw NotCorrectable("mixed_unitary_form: Knill-Laflamme test failed", kl.worst_residual,
                         kl.worst_pair);
  const int m = static_cast<int>(ch.kraus.size());
  const EigResult eig = hermitian_eig(kl.code_matrix, Tolerance{1e-8, tol.rank_rel_eps});

  MixedUnitaryForm out;
  for (int i = 0; i < m; ++i) {
    const double weight = eig.values(i);
    if (weight <= tol.rank_rel_eps) break;  // descending; the rest vanish on the code
    CMat f = CMat::Zero(ch.dim, ch.dim);
    for (int j = 0; j < m; ++j) f += eig.vectors(j, i) * ch.kraus[j];
    const PolarResult polar = polar_partial_isometry(f * code.projector, tol);
    out.unitaries.push_back(polar.unitary);
    out.weights.push_back(weight);
  }
  return out;
}

SubspaceRepresentation build_subspace_representation(const Channel& ch, const CodeSubspace& code,
                                                     const Tolerance& tol) {
  const MixedUnitaryForm muf = mixed_unitary_form(ch, code, tol);

  SubspaceRepresentation out;
  for (const CMat& u : muf.unitaries) out.isometries.push_back(u * code.projector);
  out.representation = kraus_map(out.isometries, tol);

  std::vector<CMat> rec = {};
  CMat ranges = CMat::Zero(ch.dim, ch.dim);
  for (const CMat& v : out.isometries) {
    rec.push_back(v.adjoint());
    ranges += v * v.adjoint();
  }
  rec.push_back(sqrt_psd(CMat::Identity(ch.dim, ch.dim) - ranges, tol));
  out.recovery = validate(std::move(rec), Tolerance{1e-8, tol.rank_rel_eps});

  for (const CMat& x : code_operator_basis(code))
    out.certificate_residual =
        std::max(out.certificate_residual, max_abs(out.recovery.apply(ch.apply(x)) - x));
  return out;
}

SubsystemCorrectionForm subsystem_correction_form(const Channel& ch, const CodeSubspace& code,
                                                  const Tolerance& tol) {
  const SubsystemKlResult skl = subsystem_kl(ch, code, tol);
  if (!skl.correctable)
    throw NotCorrectable("subsystem_correction_form: block conditions failed", skl.worst_residual,
                         skl.worst_pair);
  const int m = static_cast<int>(ch.kraus.size());
  const Index a = code.noisy_dim;
  const Index b = code.protected_dim;
  const CMat idb = CMat::Identity(b, b);

  // The block matrix is the (scalar) Gram matrix of the slot operators
  // T_(j,p) = E_j embed (e_p ⊗ I_B): its eigenvectors recombine them into
  // isometry copies S_s with S_s† S_t = delta_st I_B and
  // E(I_A ⊗ rho) = sum_s lambda_s S_s rho S_s†.
  std::vector<CMat> slot_ops;
  for (int j = 0; j < m; ++j)
    for (Index p = 0; p < a; ++p) {
      CMat basis_col = CMat::Zero(a, 1);
      basis_col(p, 0) = 1.0;
      slot_ops.push_back(ch.kraus[j] * code.embed * kron(basis_col, idb));
    }
  const EigResult eig = hermitian_eig(skl.block_matrix, Tolerance{1e-8, tol.rank_rel_eps});
  const double cutoff = tol.rank_rel_eps * std::max(1.0, eig.values(0));

  std::vector<CMat> copies;
  std::vector<double> weights;
  for (Index s = 0; s < eig.values.size(); ++s) {
    if (eig.values(s) <= cutoff) break;
    CMat copy = CMat::Zero(ch.dim, b);
    for (Index alpha = 0; alpha < static_cast<Index>(slot_ops.size()); ++alpha)
      copy += eig.vectors(alpha, s) * slot_ops[alpha];
    copy /= std::sqrt(eig.values(s));
    copies.push_back(std::move(copy));
    weights.push_back(eig.values(s));
  }

  // Pack copies into noisy-factor slots: trace preservation on the code
  // demands that the weights assigned to each slot sum to exactly one. A
  // term holds at most one copy per slot; the k-th copy landing on a slot
  // opens term k.
  std::vector<double> capacity(a, 1.0);
  std::vector<std::vector<std::pair<Index, std::size_t>>> terms;  // (slot, copy index)
  std::vector<Index> fill(a, 0);
  for (std::size_t s = 0; s < copies.size(); ++s) {
    Index slot = 0;
    for (Index p = 1; p < a; ++p)
      if (capacity[p] > capacity[slot] + 1e-12) slot = p;
    capacity[slot] -= weights[s];
    const Index term = fill[slot]++;
    if (static_cast<std::size_t>(term) == terms.size()) terms.emplace_back();
    terms[term].push_back({slot, s});
  }
  for (Index p = 0; p < a; ++p)
    if (std::abs(capacity[p]) > 1e-7)
      throw Error(
          "subsystem_correction_form: weights admit no unit-sum slot assignment "
          "(the commuting normal form does not exist for this code)");

  SubsystemCorrectionForm out;
  for (const auto& term : terms) {
    CMat partial = CMat::Zero(ch.dim, ch.dim);
    RVec d = RVec::Zero(a);
    for (const auto& [slot, s] : term) {
      CMat basis_col = CMat::Zero(a, 1);
      basis_col(slot, 0) = 1.0;
      partial += copies[s] * (code.embed * kron(basis_col, idb)).adjoint();
      d(slot) = std::sqrt(weights[s]);
    }
    const PolarResult polar = polar_partial_isometry(partial, tol);
    out.unitaries.push_back(polar.unitary);
    out.weight_ops.push_back(CMat(d.cast<Complex>().asDiagonal()));
  }
  return out;
}

Index correction_rank(const Channel& ch, const CodeSubspace& code, const Tolerance& tol) {
  return static_cast<Index>(subsystem_correction_form(ch, code, tol).unitaries.size());
}

SubsystemRecovery build_subsystem_recovery(const Channel& ch, const CodeSubspace& code,
                                           const Tolerance& tol) {
  const SubsystemCorrectionForm form = subsystem_correction_form(ch, code, tol);
  const Index a = code.noisy_dim;
  const Index b = code.protected_dim;
  const CMat idb = CMat::Identity(b, b);

  std::vector<CMat> rec;
  CMat ranges = CMat::Zero(ch.dim, ch.dim);
  for (std::size_t i = 0; i < form.unitaries.size(); ++i) {
    // Initial space of the i-th term: Ran(D_i) ⊗ B.
    CMat support = CMat::Zero(a, a);
    for (Index k = 0; k < a; ++k)
      if (std::real(form.weight_ops[i](k, k)) > 0.0) support(k, k) = 1.0;
    const CMat pci = code.embed * kron(support, idb) * code.embed.adjoint();
    rec.push_back(pci * form.unitaries[i].adjoint());
    ranges += form.unitaries[i] * pci * form.unitaries[i].adjoint();
  }
  rec.push_back(sqrt_psd(CMat::Identity(ch.dim, ch.dim) - ranges, tol));

  SubsystemRecovery out;
  out.recovery = validate(std::move(rec), Tolerance{1e-8, tol.rank_rel_eps});
  out.certificate.target = RecoveryTarget::channel_on_noisy_factor;

  double resid = 0.0;
  for (const CMat& x : protected_operator_basis(code))
    resid = std::max(resid, max_abs(out.recovery.apply(ch.apply(x)) - x));

  // Recover the noisy-factor channel by partial trace, then check the
  // compressed recovery∘ch acts as (that channel) ⊗ id on the code.
  std::vector<CMat> action(a * a);
  for (Index p = 0; p < a; ++p)
    for (Index q = 0; q < a; ++q) {
      const CMat x = embed_operator(code, matrix_unit(a, p, q), idb);
      action[p * a + q] =
          trace_out_protected(compress(code, out.recovery.apply(ch.apply(x))), a, b) /
          static_cast<double>(b);
    }
  for (Index p = 0; p < a; ++p)
    for (Index q = 0; q < a; ++q)
      for (Index k = 0; k < b; ++k)
        for (Index l = 0; l < b; ++l) {
          const CMat x = embed_operator(code, matrix_unit(a, p, q), matrix_unit(b, k, l));
          const CMat lhs = code.projector * out.recovery.apply(ch.apply(x)) * code.projector;
          const CMat rhs = embed_operator(code, action[p * a + q], matrix_unit(b, k, l));
          resid = std::max(resid, max_abs(lhs - rhs));
        }
  out.certificate.residual = resid;
  out.noisy_factor_kraus = kraus_from_action(action, a, tol);
  return out;
}

double noiseless_residual(const Channel& ch, const CodeSubspace& code) {
  const Channel round_trip = compose(dual(ch), ch);
  double resid = 0.0;
  for (const CMat& x : protected_operator_basis(code))
    resid = std::max(resid, max_abs(round_trip.apply(x) - x));
  return resid;
}

bool noiseless_check(const Channel& ch, const CodeSubspace& code, const Tolerance& tol) {
  return noiseless_residual(ch, code) <= std::max(tol.abs_eps, 1e-8);
}

std::vector<CMat> kraus_from_action(const std::vector<CMat>& action_on_units, Index dim,
                                    const Tolerance& tol) {
  if (static_cast<Index>(action_on_units.size()) != dim * dim)
    throw ShapeMismatch("kraus_from_action: need one image per matrix unit");
  // Choi matrix sum_pq e_pq ⊗ F(e_pq); eigenvectors give Kraus operators.
  CMat choi = CMat::Zero(dim * dim, dim * dim);
  for (Index p = 0; p < dim; ++p)
    for (Index q = 0; q < dim; ++q)
      choi += kron(matrix_unit(dim, p, q), action_on_units[p * dim + q]);
  const EigResult eig = hermitian_eig(choi, Tolerance{1e-7, tol.rank_rel_eps});
  std::vector<CMat> kraus;
  for (Index s = 0; s < eig.values.size(); ++s) {
    if (eig.values(s) <= tol.rank_rel_eps * std::max(1.0, eig.values(0))) continue;
    CMat k(dim, dim);
    for (Index p = 0; p < dim; ++p)
      for (Index r = 0; r < dim; ++r) k(r, p) = eig.vectors(p * dim + r, s);
    kraus.push_back(std::sqrt(eig.values(s)) * k);
  }
  return kraus;
}

}  // namespace mdqec
