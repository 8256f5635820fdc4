#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "ulmforge/cli.hpp"

using namespace ulmforge;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "ulmforge");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(ULMFORGE_FIXTURE_DIR) + "/" + name; }

std::string tmp_path(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "ulmforge_cli_test";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("check exit codes") {
  const auto ok = cli({"check", fixture("z2_m1.lp")});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("model: yes") != std::string::npos);
  const auto cut = cli({"check", fixture("z2_m1_cut.lp")});
  CHECK(cut.code == 1);
  CHECK(cut.out.find("A4: FAIL") != std::string::npos);
  CHECK(cli({"check", fixture("garbage.lp")}).code == 2);
  CHECK(cli({"check", fixture("does_not_exist.lp")}).code == 3);
  CHECK(cli({"check", "--extra-bound", "3", fixture("z2_m1.lp")}).out.find("bound: 5") != std::string::npos);
}

TEST_CASE("mutation fixture files") {
  for (const char* name : {"a1-stray-tuple", "a2-relabelled", "a3-two-sums", "a4-missing-sum", "a5-constant-sum",
                           "a6-missing-inverse", "a7-steiner-loop", "a8-quaternion"}) {
    const auto r = cli({"check", fixture(std::string(name) + ".lp")});
    CHECK_MESSAGE(r.code == 1, name);
    const std::string axiom = std::string("A") + name[1] + ": FAIL";
    CHECK_MESSAGE(r.out.find(axiom) != std::string::npos, name);
  }
}

TEST_CASE("ulm and iso") {
  const auto u = cli({"ulm", fixture("z4z2.grp")});
  CHECK(u.code == 0);
  CHECK(u.out == "u={0:1,1:1}; div=0\n");
  CHECK(cli({"iso", fixture("z2z4.grp"), fixture("z4z2.grp")}).code == 0);
  CHECK(cli({"iso", fixture("z4.grp"), fixture("z2z2.grp")}).code == 1);
  CHECK(cli({"iso", "--structures", fixture("z2_m1.lp"), fixture("z2_m1.lp")}).code == 0);
  CHECK(cli({"ulm", fixture("garbage.lp")}).code == 2);
}

TEST_CASE("encode, decode, reduce pipeline") {
  const auto enc_path = tmp_path("z2_m0.lp");
  CHECK(cli({"encode", fixture("z2.grp"), "--m", "0", "-o", enc_path}).code == 0);
  const auto red = cli({"reduce", enc_path});
  CHECK(red.code == 0);
  CHECK(red.out == "p=2; cyclic=[2]; divisible=0\n");
  const auto dec = cli({"decode", fixture("z2_m1.lp")});
  CHECK(dec.code == 0);
  CHECK(dec.out == "p=2; cyclic=[1]; divisible=0\n# size=1\n");
  CHECK(cli({"decode", fixture("z2_m1_cut.lp")}).code == 1);
  CHECK(cli({"encode", fixture("div1.grp")}).code == 3);
  // encode is deterministic and matches the checked-in fixture
  CHECK(cli({"encode", fixture("z2.grp"), "--m", "1"}).out == slurp(fixture("z2_m1.lp")));
}

TEST_CASE("eval and verify") {
  const auto e = cli({"eval", "phi[0,=1]", fixture("z4z2.grp")});
  CHECK(e.code == 0);
  CHECK(e.out.find("verdict: true") != std::string::npos);
  CHECK(cli({"eval", "phi[0,=2]", fixture("z4z2.grp")}).code == 1);
  CHECK(cli({"eval", "divrank[=1]", fixture("div1.grp")}).code == 0);
  CHECK(cli({"eval", "psi[1]", fixture("z4.grp"), "--element", "cyclic=(2); prufer=()"}).code == 0);
  CHECK(cli({"eval", "chi[1]", fixture("z4.grp")}).code == 2);
  const auto v = cli({"verify", fixture("z4.grp"), "--m", "3"});
  CHECK(v.code == 0);
  CHECK(v.out.find("PASS socle-quotient p=2; cyclic=[2]; divisible=0 m=3 dim=3") != std::string::npos);
}

TEST_CASE("selftest and gen") {
  const auto a = cli({"selftest", "--spec", "primes=2; max_size=4; max_m=1", "--seed", "5"});
  CHECK(a.code == 0);
  CHECK(a.out.find("FAIL") == std::string::npos);
  CHECK(a.out == cli({"selftest", "--spec", "primes=2; max_size=4; max_m=1", "--seed", "5"}).out);
  const auto bad = cli({"selftest", "--spec", "primes=2; max_size=2; max_m=0", "--inject-mutations"});
  CHECK(bad.code == 1);
  for (int ax = 1; ax <= 8; ++ax)
    CHECK(bad.out.find("FAIL model-lemma fixture:a" + std::to_string(ax)) != std::string::npos);
  const auto empty = cli({"selftest", "--samples", "0"});
  CHECK(empty.code == 0);
  CHECK(empty.out.empty());
  const auto g = cli({"gen", "--p", "3", "--max-size", "9", "--spec", "max_div_rank=0"});
  CHECK(g.code == 0);
  CHECK(g.out.find("p=3; cyclic=[1,1]; divisible=0") != std::string::npos);
  CHECK(cli({"gen", "--p", "4"}).code == 3);
  CHECK(cli({"selftest", "--spec", "bogus=1"}).code == 2);
  CHECK(cli({"frobnicate"}).code == 3);
  CHECK(cli({"--format", "json", "ulm", fixture("z4.grp")}).code == 3);
}
