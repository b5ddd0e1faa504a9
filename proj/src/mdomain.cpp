#include "mdqec/mdomain.hpp"

#include "mdqec/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace mdqec {

namespace {

// decompose_structure inside compute_md runs with a fixed seed so the result
// is a pure function of the channel; extract_ucc_from_md re-decomposes with
// the caller's seed.
constexpr std::uint64_t kStructureSeed = 0x6d646f6d;

double unital_residual_of_map(const Channel& map) {
  CMat img = CMat::Zero(map.dim, map.dim);
  for (const CMat& e : map.kraus) img += e * e.adjoint();
  return max_abs(img - CMat::Identity(map.dim, map.dim));
}

}  // namespace

MdResult compute_md(const Channel& map, const Tolerance& tol) {
  const Index n = map.dim;
  const Index n2 = n * n;
  const CMat id = CMat::Identity(n, n);

  // Superoperator of the map on row-major vectorized operators.
  CMat phi = CMat::Zero(n2, n2);
  for (const CMat& e : map.kraus) phi += kron(e, e.conjugate());

  CMat sys(2 * n2 * n2, n2);
  Index row = 0;
  for (Index l = 0; l < n; ++l)
    for (Index m = 0; m < n; ++m) {
      const CMat unit = matrix_unit(n, l, m);
      const CMat unit_img = map.apply(unit);
      sys.middleRows(row, n2) = phi * kron(unit, id) - kron(unit_img, id) * phi;
      sys.middleRows(row + n2, n2) =
          phi * kron(id, unit.transpose()) - kron(id, unit_img.transpose()) * phi;
      row += 2 * n2;
    }

  std::vector<CMat> basis;
  for (const CVec& v : null_space(sys, tol)) basis.push_back(unvec_rowmajor(v, n, n));

  MdResult out;
  out.md = AlgebraBasis{n, hs_orthonormalize(basis, tol)};
  out.unital_map = unital_residual_of_map(map) <= tol.abs_eps;
  if (!out.md.basis.empty() && closure_residual(out.md) > 1e-8)
    throw NotAnAlgebra("compute_md: null space is not closed under products/adjoints");
  out.structure = decompose_structure(out.md, tol, kStructureSeed);
  return out;
}

AlgebraBasis md_unital_check(const Channel& map, const Tolerance& tol) {
  const double uni = unital_residual_of_map(map);
  if (uni > tol.abs_eps)
    throw NotUnital("md_unital_check: map is not unital, residual " + std::to_string(uni));
  const MdResult md = compute_md(map, tol);
  for (const CMat& a : md.md.basis) {
    const CMat fa = map.apply(a);
    const double r1 = max_abs(fa.adjoint() * fa - map.apply(a.adjoint() * a));
    const double r2 = max_abs(fa * fa.adjoint() - map.apply(a * a.adjoint()));
    if (std::max(r1, r2) > 1e-8)
      throw Error("md_unital_check: quadratic characterization violated, residual " +
                  std::to_string(std::max(r1, r2)));
  }
  return md.md;
}

AlgebraBasis ucc_algebra_unital(const Channel& ch, const Tolerance& tol) {
  if (!ch.unital) throw NotUnital("ucc_algebra_unital: channel is not unital");
  std::vector<CMat> gens;
  for (const CMat& ei : ch.kraus)
    for (const CMat& ej : ch.kraus) gens.push_back(ei.adjoint() * ej);
  const AlgebraBasis interaction = generate_algebra(gens, tol);
  const AlgebraBasis ucc = commutant(interaction, tol);

  const Channel round_trip = compose(dual(ch), ch);
  for (const CMat& a : ucc.basis)
    if (max_abs(round_trip.apply(a) - a) > 1e-8)
      throw Error("ucc_algebra_unital: commutant element is not a fixed point");
  return ucc;
}

FourAlgebraReport four_algebra_check(const Channel& ch, const Tolerance& tol) {
  if (!ch.unital) throw NotUnital("four_algebra_check: channel is not unital");
  const Channel dual_ch = dual(ch);

  auto image_under = [&](const Channel& map, const AlgebraBasis& alg) {
    std::vector<CMat> img;
    for (const CMat& a : alg.basis) img.push_back(map.apply(a));
    return hs_orthonormalize(img, tol);
  };

  std::array<std::vector<CMat>, 4> algebras;
  algebras[0] = compute_md(ch, tol).md.basis;
  algebras[1] = ucc_algebra_unital(ch, tol).basis;
  algebras[2] = image_under(dual_ch, compute_md(dual_ch, tol).md);
  algebras[3] = image_under(dual_ch, ucc_algebra_unital(dual_ch, tol));

  FourAlgebraReport report;
  for (int i = 0; i < 4; ++i) report.dims[i] = static_cast<Index>(algebras[i].size());
  int slot = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      report.distances[slot] = subspace_distance(algebras[i], algebras[j], ch.dim);
      report.max_distance = std::max(report.max_distance, report.distances[slot]);
      ++slot;
    }
  return report;
}

std::variant<UccCode, NotUcc> verify_ucc(const Channel& ch, const CodeSubspace& code,
                                         const Tolerance& tol) {
  const SubsystemCorrectionForm form = subsystem_correction_form(ch, code, tol);
  const Index rank = static_cast<Index>(form.unitaries.size());
  if (rank != 1) return NotUcc{rank};

  const CMat& u = form.unitaries.front();
  const Index a = code.noisy_dim;
  const Index b = code.protected_dim;

  // Noisy-factor channel from the action compressed through the correction
  // unitary, then the full certificate ch(x) = U (F_A ⊗ id)(x) U† on L(C).
  std::vector<CMat> action(a * a);
  for (Index p = 0; p < a; ++p)
    for (Index q = 0; q < a; ++q) {
      const CMat x = embed_operator(code, matrix_unit(a, p, q), CMat::Identity(b, b));
      const CMat pulled = u.adjoint() * ch.apply(x) * u;
      CMat f = CMat::Zero(a, a);
      const CMat s = compress(code, pulled);
      for (Index r = 0; r < a; ++r)
        for (Index c = 0; c < a; ++c)
          for (Index l = 0; l < b; ++l) f(r, c) += s(r * b + l, c * b + l);
      action[p * a + q] = f / static_cast<double>(b);
    }

  UccCode out;
  out.code = code;
  out.recovery_unitary = u.adjoint();
  out.noisy_factor_kraus = kraus_from_action(action, a, tol);
  for (Index p = 0; p < a; ++p)
    for (Index q = 0; q < a; ++q)
      for (Index k = 0; k < b; ++k)
        for (Index l = 0; l < b; ++l) {
          const CMat x = embed_operator(code, matrix_unit(a, p, q), matrix_unit(b, k, l));
          const CMat target =
              u * embed_operator(code, action[p * a + q], matrix_unit(b, k, l)) * u.adjoint();
          out.certificate_residual =
              std::max(out.certificate_residual, max_abs(ch.apply(x) - target));
        }
  return out;
}

std::vector<UccCode> extract_ucc_from_md(const Channel& ch, const Tolerance& tol,
                                         std::uint64_t seed) {
  const MdResult md = compute_md(ch, tol);
  std::vector<UccCode> codes;
  if (md.md.basis.empty()) return codes;
  const AlgebraStructure structure = decompose_structure(md.md, tol, seed);
  for (std::size_t k = 0; k < structure.summands.size(); ++k) {
    if (structure.summands[k].protected_dim < 2) continue;
    const CodeSubspace code = code_from_summand(structure, k, tol);
    auto result = verify_ucc(ch, code, tol);
    if (std::holds_alternative<NotUcc>(result))
      throw RankNotOne("extract_ucc_from_md: a multiplicative-domain code failed rank 1",
                       std::get<NotUcc>(result).rank);
    codes.push_back(std::get<UccCode>(std::move(result)));
  }
  return codes;
}

double multiplicativity_residual(const Channel& map, const CMat& a, const std::vector<CMat>& probes) {
  const CMat fa = map.apply(a);
  double worst = 0.0;
  for (const CMat& b : probes) {
    const CMat fb = map.apply(b);
    worst = std::max(worst, max_abs(map.apply(a * b) - fa * fb));
    worst = std::max(worst, max_abs(map.apply(b * a) - fb * fa));
  }
  return worst;
}

double homomorphism_residual(const Channel& map, const std::vector<CMat>& basis) {
  double worst = 0.0;
  std::vector<CMat> images;
  for (const CMat& b : basis) images.push_back(map.apply(b));
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j)
      worst = std::max(worst, max_abs(map.apply(basis[i] * basis[j]) - images[i] * images[j]));
  return worst;
}

}  // namespace mdqec
