// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// fail. Desk scale only (dims 4-8); the whole run stays well under a minute.

#include "mdqec/fixtures.hpp"
#include "mdqec/mdomain.hpp"
#include "mdqec/numerics.hpp"
#include "mdqec/random.hpp"

#include "test_oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace mdqec;
using namespace mdqec::fixtures;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& name, const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool pass = false;
  try {
    pass = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  std::printf("%s  [%2d] %s%s%s\n", pass ? "PASS" : "FAIL", number, name.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!pass) ++g_failures;
}

bool leq(std::string& detail, const std::string& label, double value, double bound) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%s=%.3e", label.c_str(), value);
  if (!detail.empty()) detail += ", ";
  detail += buf;
  return value <= bound;
}

std::vector<CMat> qubit_units() {
  std::vector<CMat> b;
  for (Index k = 0; k < 2; ++k)
    for (Index l = 0; l < 2; ++l) b.push_back(matrix_unit(2, k, l));
  return b;
}

double mixing_action_residual(const Channel& ch, double q) {
  CMat left = CMat::Zero(2, 2);
  left(0, 0) = (1.0 + q) / 2.0;
  left(1, 1) = (1.0 - q) / 2.0;
  double worst = 0.0;
  for (const CMat& rho : qubit_units())
    worst = std::max(worst,
                     max_abs(ch.apply(kron(matrix_unit(2, 0, 0), rho)) - kron(left, rho)));
  return worst;
}

}  // namespace

int main() {
  const Tolerance tol;
  Rng seed_rng(0xacce97);
  const CMat u2 = random_unitary(seed_rng, 2);
  const CMat v2 = random_unitary(seed_rng, 2);
  const CMat w2 = random_unitary(seed_rng, 2);
  const CMat id2 = CMat::Identity(2, 2);

  criterion(1, "two-qubit mixing channel: action identity and mixed-unitary weights",
            [&](std::string& detail) {
              bool ok = true;
              for (double q : {0.0, 0.5, 1.0}) {
                const Channel ch = two_qubit_mixing_channel(q, u2, v2);
                ok = leq(detail, "action", mixing_action_residual(ch, q), 1e-9) && ok;
                const auto muf = mixed_unitary_form(ch, two_qubit_mixing_code(), tol);
                std::vector<double> expect = q < 1.0
                                                 ? std::vector<double>{(1 + q) / 2, (1 - q) / 2}
                                                 : std::vector<double>{1.0};
                double werr = muf.weights.size() == expect.size() ? 0.0 : 1.0;
                for (std::size_t i = 0; ok && i < expect.size() && i < muf.weights.size(); ++i)
                  werr = std::max(werr, std::abs(muf.weights[i] - expect[i]));
                ok = leq(detail, "weights", werr, 1e-9) && ok;
              }
              return ok;
            });

  criterion(2, "constructed recovery corrects the mixing channel on its code",
            [&](std::string& detail) {
              const Channel ch = two_qubit_mixing_channel(0.5, u2, v2);
              const auto rep = build_subspace_representation(ch, two_qubit_mixing_code(), tol);
              double worst = rep.certificate_residual;
              for (const CMat& rho : qubit_units()) {
                const CMat x = kron(matrix_unit(2, 0, 0), rho);
                worst = std::max(worst, max_abs(rep.recovery.apply(ch.apply(x)) - x));
              }
              return leq(detail, "residual", worst, 1e-8);
            });

  criterion(3, "block swap channel: ranks, w=v subsystem, dual multiplicativity",
            [&](std::string& detail) {
              bool ok = correction_rank(block_swap_channel(0.6, u2, v2, w2),
                                        block_swap_subspace(2), tol) == 2;
              ok = ok &&
                   correction_rank(block_swap_channel(0.0, u2, v2, w2), block_swap_subspace(2),
                                   tol) == 1 &&
                   correction_rank(block_swap_channel(1.0, u2, v2, w2), block_swap_subspace(2),
                                   tol) == 1;
              if (!ok) detail = "rank pattern wrong";

              const auto ucc =
                  verify_ucc(block_swap_channel(0.6, u2, v2, v2), block_swap_full_subsystem(2), tol);
              ok = ok && std::holds_alternative<UccCode>(ucc);
              if (std::holds_alternative<UccCode>(ucc))
                ok = leq(detail, "ucc_cert", std::get<UccCode>(ucc).certificate_residual, 1e-8) && ok;

              // w != v: the dual is not multiplicative on the image algebra,
              // and the image leaves MD(dual).
              std::vector<CMat> image;
              for (const CMat& e : qubit_units()) {
                CMat x = CMat::Zero(4, 4);
                x.topLeftCorner(2, 2) = u2 * e * u2.adjoint();
                x.bottomRightCorner(2, 2) = w2 * e * w2.adjoint();
                image.push_back(x);
              }
              image = hs_orthonormalize(image, tol);
              const double hom = homomorphism_residual(dual(block_swap_channel(0.6, u2, v2, w2)), image);
              char buf[64];
              std::snprintf(buf, sizeof buf, ", hom_violation=%.3e", hom);
              detail += buf;
              ok = ok && hom > 1e-6;
              const AlgebraBasis dual_md =
                  md_unital_check(dual(block_swap_channel(0.6, u2, v2, w2)), tol);
              double worst_member = 0.0;
              for (const CMat& x : image)
                worst_member = std::max(worst_member, membership_residual(dual_md.basis, x));
              ok = ok && worst_member > 1e-6;
              return ok;
            });

  criterion(4, "corner leak channel: decoherence-free subspace, dual multiplicativity iff q=0",
            [&](std::string& detail) {
              const CodeSubspace dfs = corner_leak_dfs();
              const Channel ch = corner_leak_channel(0.25);
              double fix = 0.0;
              for (const CMat& x : code_operator_basis(dfs))
                fix = std::max(fix, max_abs(ch.apply(x) - x));
              bool ok = leq(detail, "dfs_residual", fix, 1e-9);

              std::vector<CMat> probes = oracles::matrix_unit_basis(4);
              double viol = 0.0;
              for (const CMat& x : code_operator_basis(dfs))
                viol = std::max(viol, multiplicativity_residual(dual(ch), x, probes));
              char buf[64];
              std::snprintf(buf, sizeof buf, ", md_violation=%.3e", viol);
              detail += buf;
              ok = ok && viol > 1e-6;

              double viol0 = 0.0;
              for (const CMat& x : code_operator_basis(dfs))
                viol0 =
                    std::max(viol0, multiplicativity_residual(dual(corner_leak_channel(0.0)), x, probes));
              return leq(detail, "q0_violation", viol0, 1e-8) && ok;
            });

  criterion(5, "collapse channel: domain is the last block, one extracted code, others still UCC",
            [&](std::string& detail) {
              const Channel ch = three_block_collapse_channel();
              const MdResult md = compute_md(ch, tol);
              std::vector<CMat> expect;
              for (Index k = 0; k < 2; ++k)
                for (Index l = 0; l < 2; ++l) expect.push_back(matrix_unit(6, 4 + k, 4 + l));
              bool ok = md.md.size() == 4 &&
                        leq(detail, "md_distance", subspace_distance(md.md.basis, expect, 6), 1e-7);

              const auto codes = extract_ucc_from_md(ch, tol, 1);
              ok = ok && codes.size() == 1 && codes[0].code.protected_dim == 2 &&
                   codes[0].code.noisy_dim == 1;
              if (!codes.empty())
                ok = leq(detail, "extracted_cert", codes[0].certificate_residual, 1e-8) && ok;

              for (int which : {0, 1}) {
                const auto v = verify_ucc(ch, three_block_code(which), tol);
                ok = ok && std::holds_alternative<UccCode>(v);
              }
              return ok;
            });

  criterion(6, "u=v=identity mixing channel: domain by cases and the q=1 subspaces",
            [&](std::string& detail) {
              const MdResult md0 = compute_md(two_qubit_mixing_channel(0.0, id2, id2), tol);
              bool ok = md0.md.size() == 8 && md0.structure.summands.size() == 2;
              for (const Summand& s : md0.structure.summands)
                ok = ok && s.noisy_dim == 1 && s.protected_dim == 2;
              const AlgebraBasis ucc0 = ucc_algebra_unital(two_qubit_mixing_channel(0.0, id2, id2), tol);
              ok = leq(detail, "md_vs_ucc",
                       subspace_distance(md0.md.basis, ucc0.basis, 4), 1e-7) && ok;

              ok = ok && compute_md(two_qubit_mixing_channel(0.5, id2, id2), tol).md.size() == 0;
              ok = ok && compute_md(two_qubit_mixing_channel(1.0, id2, id2), tol).md.size() == 0;

              const Channel ch1 = two_qubit_mixing_channel(1.0, id2, id2);
              const double s = 1.0 / std::sqrt(2.0);
              CMat embeds[2];
              embeds[0] = CMat(4, 2);
              embeds[0] << s, 0, 0, s, -s, 0, 0, -s;
              embeds[1] = CMat(4, 2);
              embeds[1] << s, 0, 0, s, s, 0, 0, s;
              CMat stated[2];
              stated[0] = CMat(4, 4);
              stated[0] << 1, 0, 1, 0, 0, 1, 0, 1, -1, 0, 1, 0, 0, -1, 0, 1;
              stated[1] = CMat(4, 4);
              stated[1] << 1, 0, -1, 0, 0, 1, 0, -1, 1, 0, 1, 0, 0, 1, 0, 1;
              for (int i = 0; i < 2; ++i) {
                stated[i] *= s;
                const auto v = verify_ucc(ch1, make_code(embeds[i], 1, 2, tol), tol);
                if (!std::holds_alternative<UccCode>(v)) return false;
                const UccCode& uc = std::get<UccCode>(v);
                ok = leq(detail, "cert", uc.certificate_residual, 1e-8) && ok;
                const CMat ours = uc.recovery_unitary.adjoint() * embeds[i];
                const CMat theirs = stated[i].adjoint() * embeds[i];
                const Complex overlap = hs_inner(theirs, ours);
                const double phase_dist =
                    std::abs(overlap) > 1e-12
                        ? max_abs(ours - (overlap / std::abs(overlap)) * theirs)
                        : 1.0;
                ok = leq(detail, "recovery_match", phase_dist, 1e-8) && ok;
              }
              return ok;
            });

  criterion(7, "four coinciding algebras over 20 random mixed-unitary channels (dims 4 and 6)",
            [&](std::string& detail) {
              double worst = 0.0;
              int done = 0;
              for (std::uint64_t seed = 1; done < 20; ++seed) {
                Rng rng(seed);
                const Index dim = done < 10 ? 4 : 6;
                Channel ch = [&] {
                  switch (done % 3) {
                    case 0:
                      return random_mixed_unitary_channel(rng, dim, 2);
                    case 1:
                      return random_mixed_unitary_channel(rng, dim, 3);
                    default: {
                      // factor-structured mixture: leaves one tensor factor alone
                      const Index a = 2;
                      const Index b = dim / 2;
                      std::vector<CMat> kraus;
                      const double p = 0.2 + 0.6 * rng.uniform();
                      kraus.push_back(std::sqrt(p) * kron(random_unitary(rng, a), CMat::Identity(b, b)));
                      kraus.push_back(
                          std::sqrt(1 - p) * kron(random_unitary(rng, a), CMat::Identity(b, b)));
                      return validate(std::move(kraus));
                    }
                  }
                }();
                worst = std::max(worst, four_algebra_check(ch, tol).max_distance);
                ++done;
              }
              return leq(detail, "max_pairwise_distance", worst, 1e-7);
            });

  criterion(8, "codes extracted from 20 random dilation channels verify at rank 1",
            [&](std::string& detail) {
              double worst_cert = 0.0;
              int total_codes = 0;
              for (int k = 0; k < 20; ++k) {
                const bool unital = k < 10;
                Rng rng(500 + k);
                Index noisy = 1, prot = 2, junk = 2;  // dims stay at 4 or 6
                if (k % 3 == 0) {
                  noisy = 2;
                  junk = unital ? 0 : 2;
                } else if (k % 3 == 2) {
                  noisy = 2;
                  junk = 2;
                }
                const Channel ch = random_hidden_code_channel(rng, noisy, prot, junk, unital);
                if (ch.unital != unital) return false;
                const auto codes = extract_ucc_from_md(ch, tol, 900 + k);
                for (const UccCode& c : codes) {
                  worst_cert = std::max(worst_cert, c.certificate_residual);
                  const auto again = verify_ucc(ch, c.code, tol);
                  if (!std::holds_alternative<UccCode>(again)) return false;
                  ++total_codes;
                }
              }
              char buf[64];
              std::snprintf(buf, sizeof buf, "codes=%d, ", total_codes);
              detail += buf;
              return total_codes >= 20 && leq(detail, "worst_certificate", worst_cert, 1e-8);
            });

  criterion(9, "solver agrees with brute-force domain membership on all dim<=4 examples",
            [&](std::string& detail) {
              Rng rng(0xbf);
              double worst_member = 0.0;
              double weakest_reject = 1.0;
              const std::vector<Channel> fixture_channels = {
                  two_qubit_mixing_channel(0.0, id2, id2),
                  two_qubit_mixing_channel(0.5, id2, id2),
                  two_qubit_mixing_channel(1.0, id2, id2),
                  two_qubit_mixing_channel(0.5, u2, v2),
                  block_swap_channel(0.6, u2, v2, w2),
                  block_swap_channel(0.6, u2, v2, v2),
                  corner_leak_channel(0.25),
                  corner_leak_channel(0.0),
              };
              for (const Channel& ch : fixture_channels) {
                const MdResult md = compute_md(ch, Tolerance{});
                for (const CMat& a : md.md.basis)
                  worst_member = std::max(worst_member, oracles::brute_md_violation(ch, a, rng, 200));
                if (md.md.size() == ch.dim * ch.dim) continue;  // nothing lies outside
                int rejected = 0;
                for (int rep = 0; rep < 60 && rejected < 20; ++rep) {
                  const CMat outside =
                      oracles::orthogonal_part(md.md.basis, random_matrix(rng, ch.dim, ch.dim));
                  if (max_abs(outside) == 0.0) continue;
                  weakest_reject =
                      std::min(weakest_reject, oracles::brute_md_violation(ch, outside, rng, 200));
                  ++rejected;
                }
                if (rejected < 20) return false;
              }
              char buf[96];
              std::snprintf(buf, sizeof buf, "worst_member=%.3e, weakest_reject=%.3e",
                            worst_member, weakest_reject);
              detail += buf;
              return worst_member < 1e-6 && weakest_reject > 1e-6;
            });

  criterion(10, "structure decomposition round-trips 20 random block algebras (n<=8)",
            [&](std::string& detail) {
              const std::vector<std::vector<Summand>> shape_sets = {
                  {{1, 2}},          {{1, 2}, {1, 2}},  {{2, 2}},          {{1, 3}, {2, 1}},
                  {{2, 2}, {1, 2}},  {{1, 4}},          {{3, 1}, {1, 2}},  {{1, 2}, {1, 2}, {1, 2}},
                  {{2, 3}},          {{1, 3}, {1, 2}},  {{4, 1}, {1, 2}},  {{2, 2}, {2, 1}},
                  {{1, 2}, {2, 2}},  {{1, 5}},          {{1, 4}, {1, 2}},  {{3, 2}},
                  {{2, 2}, {1, 3}},  {{1, 3}, {1, 3}},  {{1, 2}, {1, 1}},  {{2, 2}, {2, 2}},
              };
              double worst = 0.0;
              for (std::size_t k = 0; k < shape_sets.size(); ++k) {
                Rng rng(700 + k);
                Index used = 0;
                for (const Summand& s : shape_sets[k]) used += s.noisy_dim * s.protected_dim;
                const Index n = std::min<Index>(8, used + static_cast<Index>(k % 2));
                const AlgebraBasis alg = random_block_algebra(rng, n, shape_sets[k]);
                const AlgebraStructure s = decompose_structure(alg, Tolerance{}, 300 + k);

                auto sorted = [](std::vector<Summand> v) {
                  std::sort(v.begin(), v.end(), [](const Summand& a, const Summand& b) {
                    return std::pair{a.protected_dim, a.noisy_dim} >
                           std::pair{b.protected_dim, b.noisy_dim};
                  });
                  return v;
                };
                if (sorted(s.summands) != sorted(shape_sets[k])) return false;
                if (s.null_dim != n - used) return false;
                worst = std::max(worst, subspace_distance(alg.basis, structure_basis(s), n));
              }
              return leq(detail, "worst_span_distance", worst, 1e-8);
            });

  std::printf("%s: %d criteria failed\n", g_failures == 0 ? "ALL PASS" : "FAILURES", g_failures);
  return g_failures == 0 ? 0 : 1;
}
