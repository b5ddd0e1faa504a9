// Command-line front end: channel ingestion, code analysis commands, and the
// built-in example regression suite. Exit codes: 0 success, 2 structured
// negative result (code not correctable / not unitarily correctable),
// 1 error.

#include "mdqec/fixtures.hpp"
#include "mdqec/io.hpp"
#include "mdqec/mdomain.hpp"
#include "mdqec/numerics.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace mdqec;
using io::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNegative = 2;

struct Options {
  std::string channel_file;
  std::string projector_file;
  std::string embed_file;
  std::string basis_indices;
  std::string dims;
  double tol = 1e-10;
  double rank_tol = 1e-10;
  std::uint64_t seed = 0;
  bool json = false;
};

void add_common_options(CLI::App* cmd, Options& opt, bool needs_channel) {
  auto* channel = cmd->add_option("--channel", opt.channel_file, "channel JSON file");
  if (needs_channel) channel->required();
  cmd->add_option("--projector", opt.projector_file, "code projector JSON matrix");
  cmd->add_option("--embed", opt.embed_file, "code embedding isometry JSON matrix");
  cmd->add_option("--basis-indices", opt.basis_indices,
                  "comma-separated standard basis indices spanning the code");
  cmd->add_option("--dims", opt.dims, "code factorization as A,B (noisy,protected)");
  cmd->add_option("--tol", opt.tol, "entrywise tolerance (default 1e-10)");
  cmd->add_option("--rank-tol", opt.rank_tol, "relative rank cutoff (default 1e-10)");
  cmd->add_option("--seed", opt.seed, "seed for randomized decompositions");
  cmd->add_flag("--json", opt.json, "emit the report as JSON");
}

Tolerance tolerance_of(const Options& opt) {
  if (opt.tol <= 0.0 || opt.rank_tol <= 0.0) throw Error("tolerances must be strictly positive");
  return Tolerance{opt.tol, opt.rank_tol};
}

std::vector<Index> parse_index_list(const std::string& text) {
  std::vector<Index> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stoll(item));
  return out;
}

std::pair<Index, Index> parse_dims(const std::string& text) {
  const auto parts = parse_index_list(text);
  if (parts.size() != 2) throw Error("--dims expects two comma-separated integers A,B");
  return {parts[0], parts[1]};
}

// Builds the code from whichever specification the user gave.
CodeSubspace build_code(const Options& opt, Index dim, const Tolerance& tol) {
  std::pair<Index, Index> ab{1, 0};
  const bool have_dims = !opt.dims.empty();
  if (have_dims) ab = parse_dims(opt.dims);

  if (!opt.basis_indices.empty()) {
    const auto idx = parse_index_list(opt.basis_indices);
    if (!have_dims) ab = {1, static_cast<Index>(idx.size())};
    return code_from_indices(dim, idx, ab.first, ab.second, tol);
  }
  if (!opt.embed_file.empty()) {
    const CMat embed = io::load_matrix(opt.embed_file);
    if (embed.rows() != dim) throw ShapeMismatch("embedding rows do not match channel dim");
    if (!have_dims) ab = {1, embed.cols()};
    return make_code(embed, ab.first, ab.second, tol);
  }
  if (!opt.projector_file.empty()) {
    const CMat proj = io::load_matrix(opt.projector_file);
    if (proj.rows() != dim) throw ShapeMismatch("projector does not match channel dim");
    CodeSubspace code = code_from_projector(proj, tol);
    if (have_dims) {
      if (ab.first * ab.second != code.code_dim())
        throw ShapeMismatch("--dims do not match projector rank");
      if (ab.first != 1)
        throw Error("subsystem codes need --embed or --basis-indices to fix the factorization");
    }
    return code;
  }
  throw Error("no code given: use --projector, --embed, or --basis-indices");
}

ordered_json report_header(const std::string& command, const Options& opt) {
  ordered_json j;
  j["command"] = command;
  ordered_json inputs;
  if (!opt.channel_file.empty()) inputs["channel"] = opt.channel_file;
  if (!opt.projector_file.empty()) inputs["projector"] = opt.projector_file;
  if (!opt.embed_file.empty()) inputs["embed"] = opt.embed_file;
  if (!opt.basis_indices.empty()) inputs["basis_indices"] = opt.basis_indices;
  if (!opt.dims.empty()) inputs["dims"] = opt.dims;
  j["inputs"] = std::move(inputs);
  j["tolerance"] = {{"abs_eps", opt.tol}, {"rank_rel_eps", opt.rank_tol}};
  j["seed"] = opt.seed;
  return j;
}

void emit(const ordered_json& report, const Options& opt) {
  if (opt.json) {
    std::cout << report.dump(2) << '\n';
    return;
  }
  // Human-readable: flat key/value walk of the results block.
  std::cout << report["command"].get<std::string>() << '\n';
  const auto& results = report["results"];
  for (auto it = results.begin(); it != results.end(); ++it)
    std::cout << "  " << it.key() << ": " << it.value().dump() << '\n';
}

ordered_json summand_json(const AlgebraStructure& s) {
  ordered_json arr = ordered_json::array();
  for (const Summand& sm : s.summands)
    arr.push_back({{"noisy_dim", sm.noisy_dim}, {"protected_dim", sm.protected_dim}});
  return arr;
}

int cmd_validate(const Options& opt) {
  const Tolerance tol = tolerance_of(opt);
  const Channel ch = io::load_channel(opt.channel_file, tol);
  ordered_json report = report_header("validate", opt);
  report["results"] = {{"dim", ch.dim},
                       {"kraus_count", ch.kraus.size()},
                       {"trace_preserving_residual", trace_preservation_residual(ch.kraus)},
                       {"unitality_residual", unitality_residual(ch.kraus)},
                       {"unital", ch.unital}};
  emit(report, opt);
  return kExitOk;
}

int cmd_kl(const Options& opt) {
  const Tolerance tol = tolerance_of(opt);
  const Channel ch = io::load_channel(opt.channel_file, tol);
  const CodeSubspace code = build_code(opt, ch.dim, tol);
  ordered_json report = report_header("kl", opt);
  int exit_code = kExitOk;
  if (code.noisy_dim == 1) {
    const KlResult kl = kl_matrix(ch, code, tol);
    report["results"] = {{"kind", "subspace"},
                         {"correctable", kl.correctable},
                         {"worst_residual", kl.worst_residual},
                         {"worst_pair", {kl.worst_pair.first, kl.worst_pair.second}}};
    if (kl.correctable) report["results"]["code_matrix"] = io::matrix_to_json(kl.code_matrix);
    exit_code = kl.correctable ? kExitOk : kExitNegative;
  } else {
    const SubsystemKlResult kl = subsystem_kl(ch, code, tol);
    report["results"] = {{"kind", "subsystem"},
                         {"correctable", kl.correctable},
                         {"worst_residual", kl.worst_residual},
                         {"worst_pair", {kl.worst_pair.first, kl.worst_pair.second}}};
    if (kl.correctable) report["results"]["block_matrix"] = io::matrix_to_json(kl.block_matrix);
    exit_code = kl.correctable ? kExitOk : kExitNegative;
  }
  emit(report, opt);
  return exit_code;
}

int cmd_rank(const Options& opt) {
  const Tolerance tol = tolerance_of(opt);
  const Channel ch = io::load_channel(opt.channel_file, tol);
  const CodeSubspace code = build_code(opt, ch.dim, tol);
  ordered_json report = report_header("rank", opt);
  try {
    const Index rank = correction_rank(ch, code, tol);
    report["results"] = {{"correctable", true},
                         {"correction_rank", rank},
                         {"unitarily_correctable", rank == 1}};
    emit(report, opt);
    return kExitOk;
  } catch (const NotCorrectable& e) {
    report["results"] = {{"correctable", false},
                         {"worst_residual", e.worst_residual},
                         {"worst_pair", {e.worst_pair.first, e.worst_pair.second}}};
    emit(report, opt);
    return kExitNegative;
  }
}

int cmd_recover(const Options& opt) {
  const Tolerance tol = tolerance_of(opt);
  const Channel ch = io::load_channel(opt.channel_file, tol);
  const CodeSubspace code = build_code(opt, ch.dim, tol);
  ordered_json report = report_header("recover", opt);
  try {
    const SubsystemCorrectionForm form = subsystem_correction_form(ch, code, tol);
    const SubsystemRecovery rec = build_subsystem_recovery(ch, code, tol);
    ordered_json unitaries = ordered_json::array();
    for (const CMat& u : form.unitaries) unitaries.push_back(io::matrix_to_json(u));
    ordered_json weights = ordered_json::array();
    for (const CMat& d : form.weight_ops) weights.push_back(io::matrix_to_json(d));
    ordered_json kraus = ordered_json::array();
    for (const CMat& k : rec.recovery.kraus) kraus.push_back(io::matrix_to_json(k));
    report["results"] = {{"correction_rank", form.unitaries.size()},
                         {"unitaries", std::move(unitaries)},
                         {"weight_operators", std::move(weights)},
                         {"recovery_kraus", std::move(kraus)},
                         {"certificate_residual", rec.certificate.residual}};
    emit(report, opt);
    return kExitOk;
  } catch (const NotCorrectable& e) {
    report["results"] = {{"correctable", false},
                         {"worst_residual", e.worst_residual},
                         {"worst_pair", {e.worst_pair.first, e.worst_pair.second}}};
    emit(report, opt);
    return kExitNegative;
  }
}

int cmd_md(const Options& opt) {
  const Tolerance tol = tolerance_of(opt);
  const Channel ch = io::load_channel(opt.channel_file, tol);
  const MdResult md = compute_md(ch, tol);
  ordered_json report = report_header("md", opt);
  ordered_json basis = ordered_json::array();
  for (const CMat& b : md.md.basis) basis.push_back(io::matrix_to_json(b));
  report["results"] = {{"dimension", md.md.size()},
                       {"unital", md.unital_map},
                       {"summands", summand_json(md.structure)},
                       {"null_dim", md.structure.null_dim},
                       {"basis", std::move(basis)}};
  if (md.unital_map) {
    md_unital_check(ch, tol);  // quadratic re-verification; throws on mismatch
    report["results"]["quadratic_check"] = "passed";
  }
  emit(report, opt);
  return kExitOk;
}

int cmd_ucc(const Options& opt) {
  const Tolerance tol = tolerance_of(opt);
  const Channel ch = io::load_channel(opt.channel_file, tol);
  ordered_json report = report_header("ucc", opt);
  const bool have_code =
      !(opt.projector_file.empty() && opt.embed_file.empty() && opt.basis_indices.empty());
  if (have_code) {
    const CodeSubspace code = build_code(opt, ch.dim, tol);
    try {
      const auto result = verify_ucc(ch, code, tol);
      if (std::holds_alternative<NotUcc>(result)) {
        report["results"] = {{"unitarily_correctable", false},
                             {"correction_rank", std::get<NotUcc>(result).rank}};
        emit(report, opt);
        return kExitNegative;
      }
      const UccCode& ucc = std::get<UccCode>(result);
      report["results"] = {{"unitarily_correctable", true},
                           {"recovery_unitary", io::matrix_to_json(ucc.recovery_unitary)},
                           {"certificate_residual", ucc.certificate_residual}};
      emit(report, opt);
      return kExitOk;
    } catch (const NotCorrectable& e) {
      report["results"] = {{"correctable", false},
                           {"worst_residual", e.worst_residual},
                           {"worst_pair", {e.worst_pair.first, e.worst_pair.second}}};
      emit(report, opt);
      return kExitNegative;
    }
  }
  const auto codes = extract_ucc_from_md(ch, tol, opt.seed);
  ordered_json found = ordered_json::array();
  for (const UccCode& c : codes)
    found.push_back({{"noisy_dim", c.code.noisy_dim},
                     {"protected_dim", c.code.protected_dim},
                     {"projector", io::matrix_to_json(c.code.projector)},
                     {"recovery_unitary", io::matrix_to_json(c.recovery_unitary)},
                     {"certificate_residual", c.certificate_residual}});
  report["results"] = {{"codes_found", codes.size()}, {"codes", std::move(found)}};
  emit(report, opt);
  return kExitOk;
}

int cmd_four_check(const Options& opt) {
  const Tolerance tol = tolerance_of(opt);
  const Channel ch = io::load_channel(opt.channel_file, tol);
  const FourAlgebraReport rep = four_algebra_check(ch, tol);
  ordered_json report = report_header("four-check", opt);
  report["results"] = {{"dims", rep.dims},
                       {"pairwise_distances", rep.distances},
                       {"max_distance", rep.max_distance}};
  emit(report, opt);
  return kExitOk;
}

int cmd_decompose(const Options& opt) {
  const Tolerance tol = tolerance_of(opt);
  const Channel ch = io::load_channel(opt.channel_file, tol);
  // Structure of the commutant of {E_i†E_j}: for a unital channel this is the
  // fixed-point algebra of dual∘ch, whose summands are its noiseless codes.
  std::vector<CMat> gens;
  for (const CMat& ei : ch.kraus)
    for (const CMat& ej : ch.kraus) gens.push_back(ei.adjoint() * ej);
  const AlgebraBasis noise_commutant = commutant(gens, ch.dim, tol);
  ordered_json report = report_header("decompose", opt);
  if (noise_commutant.basis.empty()) {
    report["results"] = {{"dimension", 0}, {"summands", ordered_json::array()}, {"null_dim", ch.dim}};
    emit(report, opt);
    return kExitOk;
  }
  const AlgebraStructure s = decompose_structure(noise_commutant, tol, opt.seed);
  report["results"] = {{"dimension", noise_commutant.size()},
                       {"summands", summand_json(s)},
                       {"null_dim", s.null_dim},
                       {"transform", io::matrix_to_json(s.transform)}};
  emit(report, opt);
  return kExitOk;
}

int cmd_paper_examples(const Options& opt) {
  const auto checks = fixtures::run_example_suite(opt.seed);
  ordered_json report = report_header("paper-examples", opt);
  ordered_json items = ordered_json::array();
  int failures = 0;
  for (const auto& c : checks) {
    items.push_back(
        {{"name", c.name}, {"pass", c.pass}, {"residual", c.residual}, {"detail", c.detail}});
    if (!c.pass) ++failures;
  }
  report["results"] = {{"total", checks.size()}, {"failures", failures}, {"items", items}};
  if (opt.json) {
    std::cout << report.dump(2) << '\n';
  } else {
    for (const auto& c : checks)
      std::printf("%s  %s (residual %.3e)\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.residual);
    std::printf("%d/%zu passed\n", static_cast<int>(checks.size()) - failures, checks.size());
  }
  return failures == 0 ? kExitOk : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"correctable-code analysis for quantum channels given as Kraus operators"};
  app.require_subcommand(1);
  Options opt;

  auto* validate_cmd = app.add_subcommand("validate", "check trace preservation and unitality");
  add_common_options(validate_cmd, opt, true);
  auto* kl_cmd = app.add_subcommand("kl", "test the block correctability conditions for a code");
  add_common_options(kl_cmd, opt, true);
  auto* rank_cmd = app.add_subcommand("rank", "correction rank of a code (1 = unitary recovery)");
  add_common_options(rank_cmd, opt, true);
  auto* recover_cmd = app.add_subcommand("recover", "construct an explicit recovery channel");
  add_common_options(recover_cmd, opt, true);
  auto* md_cmd = app.add_subcommand("md", "multiplicative domain of the channel");
  add_common_options(md_cmd, opt, true);
  auto* ucc_cmd =
      app.add_subcommand("ucc", "verify a code is unitarily correctable, or extract codes");
  add_common_options(ucc_cmd, opt, true);
  auto* four_cmd = app.add_subcommand("four-check", "compare the four algebras of a unital channel");
  add_common_options(four_cmd, opt, true);
  auto* decompose_cmd =
      app.add_subcommand("decompose", "block structure of the commutant of {E_i†E_j}");
  add_common_options(decompose_cmd, opt, true);
  auto* paper_cmd = app.add_subcommand("paper-examples", "run the built-in example suite");
  add_common_options(paper_cmd, opt, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate_cmd->parsed()) return cmd_validate(opt);
    if (kl_cmd->parsed()) return cmd_kl(opt);
    if (rank_cmd->parsed()) return cmd_rank(opt);
    if (recover_cmd->parsed()) return cmd_recover(opt);
    if (md_cmd->parsed()) return cmd_md(opt);
    if (ucc_cmd->parsed()) return cmd_ucc(opt);
    if (four_cmd->parsed()) return cmd_four_check(opt);
    if (decompose_cmd->parsed()) return cmd_decompose(opt);
    if (paper_cmd->parsed()) return cmd_paper_examples(opt);
  } catch (const ParseError& e) {
    std::cerr << "parse error (line " << e.line << ", byte " << e.position << "): " << e.what()
              << '\n';
    return kExitError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
