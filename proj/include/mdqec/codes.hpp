#pragma once

#include "mdqec/algebra.hpp"
#include "mdqec/channel.hpp"

namespace mdqec {

// A candidate code C = A ⊗ B inside the ambient space, given by a rank
// noisy_dim * protected_dim projector and an isometry `embed` identifying
// C with the tensor factorization (noisy index major). Subspace codes are
// the case noisy_dim = 1.
struct CodeSubspace {
  CMat projector;
  Index noisy_dim = 0;
  Index protected_dim = 0;
  CMat embed;
  Index code_dim() const { return noisy_dim * protected_dim; }
};

CodeSubspace make_code(const CMat& embed, Index noisy_dim, Index protected_dim,
                       const Tolerance& tol = {});

// Code spanned by standard basis vectors, in the listed order.
CodeSubspace code_from_indices(Index dim, const std::vector<Index>& indices, Index noisy_dim,
                               Index protected_dim, const Tolerance& tol = {});

// Code carried by one summand of a decomposed algebra: the summand's noisy
// and protected dimensions with the matching transform columns as embedding.
CodeSubspace code_from_summand(const AlgebraStructure& s, std::size_t which,
                               const Tolerance& tol = {});

// Subspace code on the range of a projector (protected factor only); the
// embedding basis is the projector's eigenbasis.
CodeSubspace code_from_projector(const CMat& projector, const Tolerance& tol = {});

// embed (op_noisy ⊗ op_prot) embed†.
CMat embed_operator(const CodeSubspace& c, const CMat& op_noisy, const CMat& op_prot);

// embed† x embed.
CMat compress(const CodeSubspace& c, const CMat& x);

// Embedded matrix-unit bases of L(C) and of I_A ⊗ L(B).
std::vector<CMat> code_operator_basis(const CodeSubspace& c);
std::vector<CMat> protected_operator_basis(const CodeSubspace& c);

// --- correctability tests --------------------------------------------------

// Knill-Laflamme test for subspace codes: P E_i†E_j P = code_matrix(i,j) P.
// A failure is reported in the result, not thrown.
struct KlResult {
  bool correctable = false;
  CMat code_matrix;
  double worst_residual = 0.0;
  std::pair<int, int> worst_pair{0, 0};
};
KlResult kl_matrix(const Channel& ch, const CodeSubspace& code, const Tolerance& tol = {});

// Subsystem condition P E_i†E_j P = (block(i,j) ⊗ I_B) P; block_matrix stacks
// the blocks into the positive operator matrix F.
struct SubsystemKlResult {
  bool correctable = false;
  std::vector<std::vector<CMat>> blocks;
  CMat block_matrix;
  double worst_residual = 0.0;
  std::pair<int, int> worst_pair{0, 0};
};
SubsystemKlResult subsystem_kl(const Channel& ch, const CodeSubspace& code,
                               const Tolerance& tol = {});

// Mixed-unitary channel equivalent to ch on the code: eigenvectors of the
// code matrix recombine the Kraus family, polar decomposition extracts the
// unitaries. Unitaries with negligible weight are dropped. Throws
// NotCorrectable when the Knill-Laflamme test fails.
struct MixedUnitaryForm {
  std::vector<CMat> unitaries;
  std::vector<double> weights;
};
MixedUnitaryForm mixed_unitary_form(const Channel& ch, const CodeSubspace& code,
                                    const Tolerance& tol = {});

// Representation pi(rho) = sum V_i rho V_i† with V_i = U_i P_C, and its dual
// completed to a trace-preserving recovery. certificate_residual bounds
// |recovery(ch(x)) - x| over a basis of L(C).
struct SubspaceRepresentation {
  std::vector<CMat> isometries;
  Channel representation;
  Channel recovery;
  double certificate_residual = 0.0;
};
SubspaceRepresentation build_subspace_representation(const Channel& ch, const CodeSubspace& code,
                                                     const Tolerance& tol = {});

// Subsystem analogue: ch agrees on I_A ⊗ L(B) with {V_i (D_i ⊗ I_B)} for
// unitaries V_i and commuting positive diagonal weight operators D_i
// (dropped when negligible). Deterministic: the block diagonalization orders
// eigenvalues descending, which also packs the retained terms first.
struct SubsystemCorrectionForm {
  std::vector<CMat> unitaries;
  std::vector<CMat> weight_ops;
};
SubsystemCorrectionForm subsystem_correction_form(const Channel& ch, const CodeSubspace& code,
                                                  const Tolerance& tol = {});

// Number of retained terms in the subsystem correction form.
Index correction_rank(const Channel& ch, const CodeSubspace& code, const Tolerance& tol = {});

enum class RecoveryTarget { identity_on_code, channel_on_noisy_factor };

struct RecoveryCertificate {
  double residual = 0.0;
  RecoveryTarget target = RecoveryTarget::identity_on_code;
};

// Recovery {P_{C_i} V_i†} completed to trace preserving. The certificate
// verifies recovery∘ch = id on I_A ⊗ L(B) and, compressed to the code,
// recovery∘ch = (noisy-factor channel) ⊗ id; that channel is recovered by
// partial trace and returned as Kraus operators.
struct SubsystemRecovery {
  Channel recovery;
  RecoveryCertificate certificate;
  std::vector<CMat> noisy_factor_kraus;
};
SubsystemRecovery build_subsystem_recovery(const Channel& ch, const CodeSubspace& code,
                                           const Tolerance& tol = {});

// True when dual(ch)∘ch fixes I_A ⊗ rho_B for a basis of L(B).
bool noiseless_check(const Channel& ch, const CodeSubspace& code, const Tolerance& tol = {});
double noiseless_residual(const Channel& ch, const CodeSubspace& code);

// Kraus operators of a linear map on the noisy factor, reconstructed from its
// action on matrix units via the Choi matrix (small negative eigenvalues are
// clipped).
std::vector<CMat> kraus_from_action(const std::vector<CMat>& action_on_units, Index dim,
                                    const Tolerance& tol = {});

}  // namespace mdqec
