#pragma once

#include "mdqec/codes.hpp"

#include <array>
#include <cstdint>
#include <variant>

namespace mdqec {

// Multiplicative domain of a Kraus map: the largest subalgebra on which the
// map is multiplicative on both sides. Zero-dimensional results are valid.
struct MdResult {
  AlgebraBasis md;
  AlgebraStructure structure;
  bool unital_map = false;
};

// Solves the matrix-unit linear system phi(e σ) = phi(e) phi(σ),
// phi(σ e) = phi(σ) phi(e) over all matrix units e; the null space spans the
// multiplicative domain. Closure is verified afterwards (a failure means a
// bug, not a negative result).
MdResult compute_md(const Channel& map, const Tolerance& tol = {});

// For a unital map, re-verifies each basis element through the quadratic
// characterization phi(a)†phi(a) = phi(a†a), phi(a)phi(a)† = phi(aa†).
// Throws NotUnital when the map is not unital.
AlgebraBasis md_unital_check(const Channel& map, const Tolerance& tol = {});

// Fixed-point algebra {rho : dual(ch)∘ch(rho) = rho} of a unital channel,
// computed as the commutant of the algebra generated by {E_i†E_j}.
AlgebraBasis ucc_algebra_unital(const Channel& ch, const Tolerance& tol = {});

// The four algebras that coincide for a unital channel: MD(E), UCC(E),
// E†(MD(E†)), E†(UCC(E†)); distances are pairwise HS-projector distances in
// the order (0,1),(0,2),(0,3),(1,2),(1,3),(2,3).
struct FourAlgebraReport {
  std::array<Index, 4> dims{};
  std::array<double, 6> distances{};
  double max_distance = 0.0;
};
FourAlgebraReport four_algebra_check(const Channel& ch, const Tolerance& tol = {});

// A verified unitarily correctable code: ch∘P_C = U∘(F_A ⊗ id_B)∘P_C with
// recovery_unitary = U†, the noisy-factor channel F_A given by Kraus
// operators, and the worst residual of that identity over a basis of L(C).
struct UccCode {
  CodeSubspace code;
  CMat recovery_unitary;
  std::vector<CMat> noisy_factor_kraus;
  double certificate_residual = 0.0;
};

struct NotUcc {
  Index rank = 0;
};

// Runs the subsystem correction form; a single retained term certifies the
// code unitarily correctable, otherwise the rank is reported. Propagates
// NotCorrectable.
std::variant<UccCode, NotUcc> verify_ucc(const Channel& ch, const CodeSubspace& code,
                                         const Tolerance& tol = {});

// Codes encoded in the multiplicative domain: every summand of the MD
// structure with protected dimension >= 2 must verify as rank-1 (RankNotOne
// otherwise, which signals an implementation bug).
std::vector<UccCode> extract_ucc_from_md(const Channel& ch, const Tolerance& tol,
                                         std::uint64_t seed);

// Worst violation of phi(ab) = phi(a)phi(b) / phi(ba) = phi(b)phi(a) over the
// probe set, for a fixed a.
double multiplicativity_residual(const Channel& map, const CMat& a, const std::vector<CMat>& probes);

// Worst violation of phi(ab) = phi(a)phi(b) over all pairs from the basis.
double homomorphism_residual(const Channel& map, const std::vector<CMat>& basis);

}  // namespace mdqec
