#include "mdqec/fixtures.hpp"

#include "mdqec/mdomain.hpp"
#include "mdqec/numerics.hpp"
#include "mdqec/random.hpp"

#include <cmath>
#include <cstdio>

namespace mdqec::fixtures {

namespace {

CMat two_blocks(const CMat& a11, const CMat& a12, const CMat& a21, const CMat& a22) {
  const Index h = a11.rows();
  CMat m(2 * h, 2 * h);
  m.topLeftCorner(h, h) = a11;
  m.topRightCorner(h, h) = a12;
  m.bottomLeftCorner(h, h) = a21;
  m.bottomRightCorner(h, h) = a22;
  return m;
}

}  // namespace

Channel two_qubit_mixing_channel(double q, const CMat& u, const CMat& v) {
  if (u.rows() != 2 || u.cols() != 2 || v.rows() != 2 || v.cols() != 2)
    throw ShapeMismatch("two_qubit_mixing_channel: u, v must be 2x2");
  const CMat id = CMat::Identity(2, 2);
  const CMat zero = CMat::Zero(2, 2);
  const double alpha = std::sqrt(q / 2.0);
  const double beta = std::sqrt(1.0 - q) / 2.0;
  return validate({alpha * two_blocks(id, u, zero, zero), alpha * two_blocks(id, -u, zero, zero),
                   beta * two_blocks(id, v, id, v), beta * two_blocks(-id, v, id, -v)});
}

CodeSubspace two_qubit_mixing_code() { return code_from_indices(4, {0, 1}, 1, 2); }

Channel block_swap_channel(double q, const CMat& u, const CMat& v, const CMat& w) {
  const Index h = u.rows();
  const CMat zero = CMat::Zero(h, h);
  return validate({q * two_blocks(u, zero, zero, v),
                   std::sqrt(1.0 - q * q) * two_blocks(zero, u, w, zero)});
}

CodeSubspace block_swap_subspace(Index h) {
  std::vector<Index> idx(h);
  for (Index i = 0; i < h; ++i) idx[i] = i;
  return code_from_indices(2 * h, idx, 1, h);
}

CodeSubspace block_swap_full_subsystem(Index h) {
  return make_code(CMat::Identity(2 * h, 2 * h), 2, h);
}

Channel corner_leak_channel(double q) {
  if (q < 0.0 || q > 0.5) throw Error("corner_leak_channel: q must lie in [0, 1/2]");
  const double alpha = std::sqrt(1.0 - 2.0 * q);
  const double beta = std::sqrt(q / 2.0);
  CMat e1 = CMat::Zero(4, 4);
  e1(0, 0) = alpha;
  e1(1, 1) = 1.0;
  e1(2, 2) = 1.0;
  e1(3, 3) = alpha;
  CMat e2 = CMat::Zero(4, 4);
  e2(0, 0) = 1.0;
  e2(1, 3) = 1.0;
  e2(2, 0) = 1.0;
  e2(3, 3) = 1.0;
  CMat e3 = CMat::Zero(4, 4);
  e3(0, 0) = 1.0;
  e3(1, 3) = -1.0;
  e3(2, 0) = -1.0;
  e3(3, 3) = 1.0;
  return validate({e1, beta * e2, beta * e3});
}

CodeSubspace corner_leak_dfs() { return code_from_indices(4, {1, 2}, 1, 2); }

Channel three_block_collapse_channel() {
  const Index n = 6;
  CMat shift_up = CMat::Zero(n, n);   // block (1,1) -> block (2,2)
  shift_up(2, 0) = 1.0;
  shift_up(3, 1) = 1.0;
  CMat keep_mid = CMat::Zero(n, n);
  keep_mid(2, 2) = 1.0;
  keep_mid(3, 3) = 1.0;
  CMat keep_last = CMat::Zero(n, n);
  keep_last(4, 4) = 1.0;
  keep_last(5, 5) = 1.0;
  return validate({shift_up, keep_mid, keep_last});
}

CodeSubspace three_block_code(int which) {
  if (which < 0 || which > 2) throw Error("three_block_code: block index must be 0, 1, or 2");
  return code_from_indices(6, {2 * which, 2 * which + 1}, 1, 2);
}

namespace {

using Check = ExampleCheck;

std::string fmt_q(double q) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", q);
  return buf;
}

void check(std::vector<Check>& out, const std::string& name, double residual, double bound) {
  out.push_back({name, residual <= bound, residual, "residual bound " + std::to_string(bound)});
}

void check_flag(std::vector<Check>& out, const std::string& name, bool pass,
                const std::string& detail) {
  out.push_back({name, pass, 0.0, detail});
}

std::vector<CMat> qubit_unit_basis() {
  std::vector<CMat> basis;
  for (Index k = 0; k < 2; ++k)
    for (Index l = 0; l < 2; ++l) basis.push_back(matrix_unit(2, k, l));
  return basis;
}

// |residual| of E(|0><0| ⊗ rho) = (I/2 + (q/2) Z) ⊗ rho over the unit basis.
double mixing_action_residual(const Channel& ch, double q) {
  CMat target_left = CMat::Zero(2, 2);
  target_left(0, 0) = 0.5 + q / 2.0;
  target_left(1, 1) = 0.5 - q / 2.0;
  double worst = 0.0;
  for (const CMat& rho : qubit_unit_basis()) {
    const CMat in = kron(matrix_unit(2, 0, 0), rho);
    worst = std::max(worst, max_abs(ch.apply(in) - kron(target_left, rho)));
  }
  return worst;
}

std::vector<CMat> block_swap_image_algebra(const CMat& u, const CMat& w) {
  std::vector<CMat> basis;
  const CMat zero = CMat::Zero(u.rows(), u.cols());
  for (const CMat& e : qubit_unit_basis())
    basis.push_back(two_blocks(u * e * u.adjoint(), zero, zero, w * e * w.adjoint()));
  return hs_orthonormalize(basis);
}

// Best-phase difference between two isometries on the same domain.
double phase_aligned_distance(const CMat& x, const CMat& y) {
  const Complex overlap = hs_inner(y, x);
  const double a = std::abs(overlap);
  const Complex phase = a > 1e-12 ? overlap / a : Complex(1.0, 0.0);
  return max_abs(x - phase * y);
}

}  // namespace

std::vector<ExampleCheck> run_example_suite(std::uint64_t seed) {
  std::vector<Check> out;
  const Tolerance tol;
  Rng rng(seed);
  const CMat u2 = random_unitary(rng, 2);
  const CMat v2 = random_unitary(rng, 2);
  const CMat w2 = random_unitary(rng, 2);

  // Two-qubit mixing channel: action identity and mixed-unitary weights.
  for (double q : {0.0, 0.5, 1.0}) {
    const Channel ch = two_qubit_mixing_channel(q, u2, v2);
    const std::string tag = "two_qubit_mixing[q=" + fmt_q(q) + "] ";
    check(out, tag + "action", mixing_action_residual(ch, q), 1e-9);

    const MixedUnitaryForm muf = mixed_unitary_form(ch, two_qubit_mixing_code(), tol);
    double werr = 0.0;
    std::vector<double> expect;
    if (q < 1.0) expect = {(1.0 + q) / 2.0, (1.0 - q) / 2.0};
    else expect = {1.0};
    if (muf.weights.size() != expect.size()) werr = 1.0;
    else
      for (std::size_t i = 0; i < expect.size(); ++i)
        werr = std::max(werr, std::abs(muf.weights[i] - expect[i]));
    check(out, tag + "mixed unitary weights", werr, 1e-9);
  }

  // Recovery built from the representation corrects the channel on the code.
  {
    const Channel ch = two_qubit_mixing_channel(0.5, u2, v2);
    const auto rep = build_subspace_representation(ch, two_qubit_mixing_code(), tol);
    check(out, "two_qubit_mixing[q=0.5] recovery corrects", rep.certificate_residual, 1e-8);
  }

  // Block swap channel: code matrix, ranks, subsystem UCC at w = v, and
  // failure of dual multiplicativity on the image algebra when w != v.
  {
    const double q = 0.6;
    const Channel ch = block_swap_channel(q, u2, v2, w2);
    check_flag(out, "block_swap[q=0.6] unital", ch.unital && ch.trace_preserving, "flags");
    const KlResult kl = kl_matrix(ch, block_swap_subspace(2), tol);
    CMat expect_lambda = CMat::Zero(2, 2);
    expect_lambda(0, 0) = q * q;
    expect_lambda(1, 1) = 1.0 - q * q;
    double lam_err = kl.correctable ? 0.0 : 1.0;
    lam_err = std::max(lam_err, max_abs(kl.code_matrix - expect_lambda));
    check(out, "block_swap[q=0.6] code matrix", lam_err, 1e-9);

    check_flag(out, "block_swap[q=0.6] rank 2",
               correction_rank(ch, block_swap_subspace(2), tol) == 2, "rank");
    check_flag(out, "block_swap[q=0] rank 1",
               correction_rank(block_swap_channel(0.0, u2, v2, w2), block_swap_subspace(2), tol) == 1,
               "rank");
    check_flag(out, "block_swap[q=1] rank 1",
               correction_rank(block_swap_channel(1.0, u2, v2, w2), block_swap_subspace(2), tol) == 1,
               "rank");

    const Channel ch_wv = block_swap_channel(q, u2, v2, v2);
    const auto ucc = verify_ucc(ch_wv, block_swap_full_subsystem(2), tol);
    check_flag(out, "block_swap[q=0.6, w=v] content subsystem is UCC",
               std::holds_alternative<UccCode>(ucc) &&
                   std::get<UccCode>(ucc).certificate_residual <= 1e-8,
               "verify_ucc");

    const double hom = homomorphism_residual(dual(ch), block_swap_image_algebra(u2, w2));
    check_flag(out, "block_swap[q=0.6, w!=v] dual not multiplicative on image", hom > 1e-6,
               "violation " + std::to_string(hom));
    const double hom_wv = homomorphism_residual(dual(ch_wv), block_swap_image_algebra(u2, v2));
    check(out, "block_swap[q=0.6, w=v] dual multiplicative on image", hom_wv, 1e-8);
  }

  // Corner-leak channel: non-unital, fixes its DFS, dual matches the closed
  // form, image algebra leaves the dual's multiplicative domain for q > 0.
  {
    const double q = 0.25;
    const Channel ch = corner_leak_channel(q);
    check_flag(out, "corner_leak[q=0.25] non-unital", ch.trace_preserving && !ch.unital, "flags");

    const CodeSubspace dfs = corner_leak_dfs();
    double fix = 0.0;
    for (const CMat& x : code_operator_basis(dfs))
      fix = std::max(fix, max_abs(ch.apply(x) - x));
    check(out, "corner_leak[q=0.25] DFS fixed", fix, 1e-9);

    const Channel d = dual(ch);
    double dual_err = 0.0;
    for (Index k = 0; k < 2; ++k)
      for (Index l = 0; l < 2; ++l) {
        const CMat x = dfs.embed * matrix_unit(2, k, l) * dfs.embed.adjoint();
        CMat corner = CMat::Zero(4, 4);
        corner(0, 0) = x(2, 2);
        corner(0, 3) = x(2, 1);
        corner(3, 0) = x(1, 2);
        corner(3, 3) = x(1, 1);
        dual_err = std::max(dual_err, max_abs(d.apply(x) - (x + q * corner)));
      }
    check(out, "corner_leak[q=0.25] dual closed form", dual_err, 1e-12);

    double worst_violation = 0.0;
    std::vector<CMat> probes;
    for (Index k = 0; k < 4; ++k)
      for (Index l = 0; l < 4; ++l) probes.push_back(matrix_unit(4, k, l));
    for (const CMat& x : code_operator_basis(dfs))
      worst_violation = std::max(worst_violation, multiplicativity_residual(d, x, probes));
    check_flag(out, "corner_leak[q=0.25] image leaves dual MD", worst_violation > 1e-6,
               "violation " + std::to_string(worst_violation));

    double q0_violation = 0.0;
    const Channel d0 = dual(corner_leak_channel(0.0));
    for (const CMat& x : code_operator_basis(dfs))
      q0_violation = std::max(q0_violation, multiplicativity_residual(d0, x, probes));
    check(out, "corner_leak[q=0] image inside dual MD", q0_violation, 1e-8);
  }

  // Three-block collapse: multiplicative domain is the last block only, yet
  // all three diagonal blocks are unitarily correctable.
  {
    const Channel ch = three_block_collapse_channel();
    const MdResult md = compute_md(ch, tol);
    std::vector<CMat> expect;
    for (Index k = 0; k < 2; ++k)
      for (Index l = 0; l < 2; ++l) expect.push_back(matrix_unit(6, 4 + k, 4 + l));
    const double dist = md.md.size() == 4 ? subspace_distance(md.md.basis, expect, 6) : 1.0;
    check(out, "three_block_collapse MD = last block", dist, 1e-7);

    const auto codes = extract_ucc_from_md(ch, tol, seed);
    check_flag(out, "three_block_collapse one MD code", codes.size() == 1, "extract_ucc_from_md");
    bool all_ucc = true;
    for (int which : {0, 1}) {
      const auto v = verify_ucc(ch, three_block_code(which), tol);
      all_ucc = all_ucc && std::holds_alternative<UccCode>(v);
    }
    check_flag(out, "three_block_collapse other blocks UCC", all_ucc, "verify_ucc");
  }

  // Two-qubit mixing channel with u = v = I: multiplicative domain by cases.
  {
    const CMat id = CMat::Identity(2, 2);
    const MdResult md0 = compute_md(two_qubit_mixing_channel(0.0, id, id), tol);
    bool shape_ok = md0.md.size() == 8 && md0.structure.summands.size() == 2;
    for (const Summand& s : md0.structure.summands)
      shape_ok = shape_ok && s.noisy_dim == 1 && s.protected_dim == 2;
    check_flag(out, "mixing[q=0] MD dimension 8, two qubit blocks", shape_ok, "structure");

    const AlgebraBasis ucc = ucc_algebra_unital(two_qubit_mixing_channel(0.0, id, id), tol);
    check(out, "mixing[q=0] MD equals fixed-point algebra",
          subspace_distance(md0.md.basis, ucc.basis, 4), 1e-7);

    check_flag(out, "mixing[q=0.5] MD trivial",
               compute_md(two_qubit_mixing_channel(0.5, id, id), tol).md.size() == 0, "dimension");
    check_flag(out, "mixing[q=1] MD trivial",
               compute_md(two_qubit_mixing_channel(1.0, id, id), tol).md.size() == 0, "dimension");

    // q = 1: both half-sum subspaces are unitarily correctable even though
    // the multiplicative domain is trivial.
    const Channel ch1 = two_qubit_mixing_channel(1.0, id, id);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CMat embed_minus(4, 2), embed_plus(4, 2);
    embed_minus << inv_sqrt2, 0, 0, inv_sqrt2, -inv_sqrt2, 0, 0, -inv_sqrt2;
    embed_plus << inv_sqrt2, 0, 0, inv_sqrt2, inv_sqrt2, 0, 0, inv_sqrt2;
    CMat rec_minus(4, 4), rec_plus(4, 4);
    rec_minus << 1, 0, 1, 0, 0, 1, 0, 1, -1, 0, 1, 0, 0, -1, 0, 1;
    rec_plus << 1, 0, -1, 0, 0, 1, 0, -1, 1, 0, 1, 0, 0, 1, 0, 1;
    rec_minus *= inv_sqrt2;
    rec_plus *= inv_sqrt2;
    const CodeSubspace codes[2] = {make_code(embed_minus, 1, 2), make_code(embed_plus, 1, 2)};
    const CMat recs[2] = {rec_minus, rec_plus};
    for (int i = 0; i < 2; ++i) {
      const auto v = verify_ucc(ch1, codes[i], tol);
      bool ok = std::holds_alternative<UccCode>(v);
      double match = 1.0;
      if (ok) {
        const UccCode& uc = std::get<UccCode>(v);
        ok = uc.certificate_residual <= 1e-8;
        match = phase_aligned_distance(uc.recovery_unitary.adjoint() * uc.code.embed,
                                       recs[i].adjoint() * uc.code.embed);
      }
      check_flag(out, "mixing[q=1] half-sum subspace " + std::to_string(i) + " UCC",
                 ok && match <= 1e-8, "recovery matches stated unitary up to phase");
    }
  }

  return out;
}

}  // namespace mdqec::fixtures
