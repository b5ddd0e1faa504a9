#include "mdqec/fixtures.hpp"
#include "mdqec/io.hpp"
#include "mdqec/random.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

using namespace mdqec;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(MDQEC_CLI_PATH) + " " + args + " 2>&1";
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) res.output.append(buf, got);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "mdqec_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string write_channel(const Channel& ch, const std::string& name) {
  const fs::path path = scratch_dir() / name;
  io::write_file(path.string(), io::channel_to_json(ch));
  return path.string();
}

std::string write_matrix(const CMat& m, const std::string& name) {
  const fs::path path = scratch_dir() / name;
  io::write_file(path.string(), io::matrix_to_json(m));
  return path.string();
}

}  // namespace

TEST_CASE("channel JSON round trip is exact") {
  Rng rng(91);
  const Channel ch = random_dilation_channel(rng, 3, 2);
  const Channel back = io::channel_from_json(io::json::parse(io::channel_to_json(ch).dump()));
  REQUIRE(back.kraus.size() == ch.kraus.size());
  for (std::size_t i = 0; i < ch.kraus.size(); ++i)
    CHECK(max_abs(back.kraus[i] - ch.kraus[i]) == 0.0);
}

TEST_CASE("channel JSON validation errors") {
  CHECK_THROWS_AS(io::channel_from_json(io::json::parse(R"({"dim": 2})")), Error);
  CHECK_THROWS_AS(
      io::channel_from_json(io::json::parse(R"({"dim": 2, "kraus": [[[[1,0]],[[0,0]]]]})")),
      ShapeMismatch);
  // trace-preservation enforced on load
  CHECK_THROWS_AS(io::channel_from_json(io::json::parse(
                      R"({"dim": 1, "kraus": [[[[0.5, 0]]]]})")),
                  NotTracePreserving);
}

TEST_CASE("parse_file reports line and byte position") {
  const fs::path bad = scratch_dir() / "malformed.json";
  std::ofstream(bad) << "{\n  \"dim\": 2,\n  \"kraus\": [\n";
  try {
    io::parse_file(bad.string());
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line >= 3);
    CHECK(e.position > 0);
  }
}

TEST_CASE("cli validate reports flags and residuals") {
  Rng rng(92);
  const Channel swap = fixtures::block_swap_channel(0.6, random_unitary(rng, 2),
                                                    random_unitary(rng, 2), random_unitary(rng, 2));
  const std::string file = write_channel(swap, "swap.json");
  const RunResult res = run_cli("validate --channel " + file + " --json");
  CHECK(res.exit_code == 0);
  const auto j = io::json::parse(res.output);
  CHECK(j["results"]["unital"] == true);
  CHECK(j["results"]["dim"] == 4);
  CHECK(j["results"]["trace_preserving_residual"].get<double>() < 1e-10);

  const std::string leak = write_channel(fixtures::corner_leak_channel(0.25), "leak.json");
  const auto res2 = run_cli("validate --channel " + leak + " --json");
  CHECK(res2.exit_code == 0);
  CHECK(io::json::parse(res2.output)["results"]["unital"] == false);
}

TEST_CASE("cli rejects malformed input with exit 1") {
  const fs::path bad = scratch_dir() / "broken.json";
  std::ofstream(bad) << "{ not json";
  const RunResult res = run_cli("validate --channel " + bad.string());
  CHECK(res.exit_code == 1);
  CHECK(res.output.find("parse error") != std::string::npos);
}

TEST_CASE("cli kl and rank on the block swap channel") {
  Rng rng(93);
  const Channel swap = fixtures::block_swap_channel(0.6, random_unitary(rng, 2),
                                                    random_unitary(rng, 2), random_unitary(rng, 2));
  const std::string file = write_channel(swap, "swap_kl.json");

  const RunResult kl = run_cli("kl --channel " + file + " --basis-indices 0,1 --json");
  CHECK(kl.exit_code == 0);
  const auto jkl = io::json::parse(kl.output);
  CHECK(jkl["results"]["correctable"] == true);
  CHECK(jkl["results"]["code_matrix"][0][0][0].get<double>() == doctest::Approx(0.36));
  CHECK(jkl["results"]["code_matrix"][1][1][0].get<double>() == doctest::Approx(0.64));

  const RunResult rank = run_cli("rank --channel " + file + " --basis-indices 0,1 --json");
  CHECK(rank.exit_code == 0);
  const auto jrank = io::json::parse(rank.output);
  CHECK(jrank["results"]["correction_rank"] == 2);
  CHECK(jrank["results"]["unitarily_correctable"] == false);

  // Non-correctable subspace: structured negative, exit 2.
  const RunResult bad = run_cli("kl --channel " + file + " --basis-indices 0,2 --json");
  CHECK(bad.exit_code == 2);
  const auto jbad = io::json::parse(bad.output);
  CHECK(jbad["results"]["correctable"] == false);
  CHECK(jbad["results"]["worst_residual"].get<double>() > 1e-3);
}

TEST_CASE("cli accepts a projector file for subspace codes") {
  Rng rng(94);
  const Channel swap = fixtures::block_swap_channel(0.6, random_unitary(rng, 2),
                                                    random_unitary(rng, 2), random_unitary(rng, 2));
  const std::string file = write_channel(swap, "swap_proj.json");
  const std::string proj =
      write_matrix(fixtures::block_swap_subspace(2).projector, "projector.json");
  const RunResult res = run_cli("kl --channel " + file + " --projector " + proj + " --json");
  CHECK(res.exit_code == 0);
  CHECK(io::json::parse(res.output)["results"]["correctable"] == true);
}

TEST_CASE("cli md and ucc extraction on the collapse channel") {
  const std::string file =
      write_channel(fixtures::three_block_collapse_channel(), "collapse.json");

  const RunResult md = run_cli("md --channel " + file + " --json");
  CHECK(md.exit_code == 0);
  const auto jmd = io::json::parse(md.output);
  CHECK(jmd["results"]["dimension"] == 4);
  CHECK(jmd["results"]["null_dim"] == 4);
  CHECK(jmd["results"]["summands"].size() == 1);

  const RunResult ucc = run_cli("ucc --channel " + file + " --json --seed 5");
  CHECK(ucc.exit_code == 0);
  const auto jucc = io::json::parse(ucc.output);
  CHECK(jucc["results"]["codes_found"] == 1);

  // zero-dimensional domain is a valid result, not an error
  const CMat id2 = CMat::Identity(2, 2);
  const std::string trivial =
      write_channel(fixtures::two_qubit_mixing_channel(0.5, id2, id2), "trivial_md.json");
  const RunResult md0 = run_cli("md --channel " + trivial + " --json");
  CHECK(md0.exit_code == 0);
  CHECK(io::json::parse(md0.output)["results"]["dimension"] == 0);

  // verify a specific code: middle block is unitarily correctable
  const RunResult vcode = run_cli("ucc --channel " + file + " --basis-indices 2,3 --json");
  CHECK(vcode.exit_code == 0);
  CHECK(io::json::parse(vcode.output)["results"]["unitarily_correctable"] == true);
}

TEST_CASE("cli ucc reports rank for codes that need measurement") {
  Rng rng(95);
  const Channel swap = fixtures::block_swap_channel(0.6, random_unitary(rng, 2),
                                                    random_unitary(rng, 2), random_unitary(rng, 2));
  const std::string file = write_channel(swap, "swap_ucc.json");
  const RunResult res = run_cli("ucc --channel " + file + " --basis-indices 0,1 --json");
  CHECK(res.exit_code == 2);
  const auto j = io::json::parse(res.output);
  CHECK(j["results"]["unitarily_correctable"] == false);
  CHECK(j["results"]["correction_rank"] == 2);
}

TEST_CASE("cli four-check requires a unital channel") {
  const CMat id2 = CMat::Identity(2, 2);
  const std::string uni =
      write_channel(fixtures::two_qubit_mixing_channel(0.0, id2, id2), "uni.json");
  const RunResult ok = run_cli("four-check --channel " + uni + " --json");
  CHECK(ok.exit_code == 0);
  CHECK(io::json::parse(ok.output)["results"]["max_distance"].get<double>() < 1e-7);

  const std::string leak = write_channel(fixtures::corner_leak_channel(0.25), "leak4.json");
  CHECK(run_cli("four-check --channel " + leak).exit_code == 1);
}

TEST_CASE("cli decompose reports the commutant block structure") {
  const CMat id2 = CMat::Identity(2, 2);
  const std::string file =
      write_channel(fixtures::two_qubit_mixing_channel(0.0, id2, id2), "decomp.json");
  const RunResult res = run_cli("decompose --channel " + file + " --seed 3 --json");
  CHECK(res.exit_code == 0);
  const auto j = io::json::parse(res.output);
  CHECK(j["results"]["dimension"] == 8);
  CHECK(j["results"]["summands"].size() == 2);
}

TEST_CASE("cli recover emits a certified recovery channel") {
  Rng rng(96);
  const CMat u = random_unitary(rng, 2);
  const CMat v = random_unitary(rng, 2);
  const std::string file =
      write_channel(fixtures::block_swap_channel(0.6, u, v, v), "swap_rec.json");
  const RunResult res =
      run_cli("recover --channel " + file + " --embed " +
              write_matrix(CMat::Identity(4, 4), "embed44.json") + " --dims 2,2 --json");
  CHECK(res.exit_code == 0);
  const auto j = io::json::parse(res.output);
  CHECK(j["results"]["correction_rank"] == 1);
  CHECK(j["results"]["certificate_residual"].get<double>() < 1e-8);
}

TEST_CASE("cli reports are byte-identical across reruns") {
  Rng rng(97);
  const Channel swap = fixtures::block_swap_channel(0.6, random_unitary(rng, 2),
                                                    random_unitary(rng, 2), random_unitary(rng, 2));
  const std::string file = write_channel(swap, "swap_det.json");
  const std::string args = "md --channel " + file + " --seed 11 --json";
  const RunResult a = run_cli(args);
  const RunResult b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
}

TEST_CASE("cli paper-examples suite passes") {
  const RunResult res = run_cli("paper-examples --seed 2");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("FAIL") == std::string::npos);
}
