#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pcg/capability.hpp"
#include "pcg/format.hpp"
#include "support.hpp"

using namespace pcg;
using namespace testsupport;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  fs::path dir = fs::temp_directory_path() / "pgroup_cli_tests";
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args, std::string* output = nullptr) {
  fs::path out = scratch_dir() / "cli_output.txt";
  std::string cmd = std::string(PGROUP_BIN) + " " + args + " > " + out.string() + " 2>&1";
  int rc = std::system(cmd.c_str());
  if (output) {
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    *output = ss.str();
  }
  return WEXITSTATUS(rc);
}

std::string write_group(const char* name, const PcPresentation& g) {
  fs::path p = scratch_dir() / name;
  write_presentation_file(p.string(), g);
  return p.string();
}

} // namespace

TEST_CASE("format: parse of every fixture round-trips exactly") {
  for (const auto& g : {heisenberg(3), quaternion8(), dihedral(3), dihedral(4), semidihedral16(),
                        quaternion(4), abelian(2, {2, 1}), build_extraspecial(2, 2, "DQ"),
                        build_family({FamilyVariant::T1ii, 2, 3, 2, 2, 1})}) {
    std::string text = presentation_to_string(g);
    std::istringstream in(text);
    PcPresentation back = read_presentation(in);
    CHECK(back.check_consistency().pass);
    CHECK(presentation_to_string(back) == text); // byte-identical re-export
    CHECK(back.order() == g.order());
    CHECK(are_isomorphic(back, g));
  }
}

TEST_CASE("format: strict parser rejections carry line numbers") {
  auto expect_error = [](const std::string& text, std::size_t line) {
    std::istringstream in(text);
    try {
      read_presentation(in);
      FAIL("expected ParseError for: " << text);
    } catch (const ParseError& e) {
      CHECK(e.line_number == line);
    }
  };
  expect_error("p 4\ngens 1\nrelorder 1 1\n", 3);               // late structural check: 4 not prime
  expect_error("gens 2\n", 1);                                   // gens before p
  expect_error("p 2\ngens 1\nrelorder 1 1\nfrob 1\n", 4);        // unknown directive
  expect_error("p 2\ngens 1\nrelorder 1 1\nrelorder 1 1\n", 4);  // duplicate relorder
  expect_error("p 2\ngens 2\nrelorder 1 1\npow 1 : 2^1\n", 4);   // relorder 2 missing
  expect_error("p 2\ngens 2\nrelorder 1 1\nrelorder 2 1\ncomm 1 2 : \n", 5); // j <= i
  expect_error("p 2\ngens 2\nrelorder 1 1\nrelorder 2 1\npow 2 : 1^1\n", 5); // support
  expect_error("p 2\ngens 2\nrelorder 1 1\nrelorder 2 1\npow 1 : 2^5\n", 5); // exponent range
  expect_error("p 2\ngens 2\nrelorder 1 1\nrelorder 2 1\ncomm 2 1 : 2^1 2^1\n", 5); // dup factor
}

TEST_CASE("format: comments, blank lines, explicit empty tails") {
  std::string text =
      "# quaternion group of order 8\n"
      "p 2\n"
      "\n"
      "gens 2\n"
      "relorder 1 1   # b\n"
      "relorder 2 2   # a\n"
      "pow 1 : 2^2\n"
      "pow 2 :\n"
      "comm 2 1 : 2^2\n";
  std::istringstream in(text);
  PcPresentation g = read_presentation(in);
  CHECK(g.check_consistency().pass);
  CHECK(are_isomorphic(g, quaternion8()));
}

TEST_CASE("cli: family build writes a loadable presentation") {
  fs::path out = scratch_dir() / "t2i.pcp";
  int rc = run_cli("family build --variant T2i --p 3 --alpha 1 --beta 1 --gamma 1 --out " +
                   out.string());
  CHECK(rc == 0);
  PcPresentation g = read_presentation_file(out.string());
  g.check_consistency();
  CHECK(are_isomorphic(g, heisenberg(3)));

  // structurally invalid parameters: usage error
  CHECK(run_cli("family build --variant T2i --p 2 --alpha 1 --beta 1 --gamma 1 --out " +
                out.string()) == 2);
  // inconsistent parameters: construction error, also exit 2
  CHECK(run_cli("family build --variant T1i --p 2 --alpha 1 --beta 1 --gamma 3 --out " +
                out.string()) == 2);
}

TEST_CASE("cli: capable decide exit codes and clause output") {
  std::string heis = write_group("h27.pcp", heisenberg(3));
  std::string output;
  CHECK(run_cli("capable decide " + heis, &output) == 0);
  CHECK(output.find("CAPABLE") != std::string::npos);
  CHECK(output.find("α = β ≥ γ") != std::string::npos);

  std::string q8 = write_group("q8.pcp", quaternion8());
  CHECK(run_cli("capable decide " + q8, &output) == 1);
  CHECK(output.find("NOT_CAPABLE") != std::string::npos);

  std::string es = write_group("es32.pcp", build_extraspecial(2, 2, "DD"));
  CHECK(run_cli("capable decide " + es, &output) == 1);
  CHECK(output.find("not-two-generated") != std::string::npos);
}

TEST_CASE("cli: machine mode emits one parseable record") {
  std::string q8 = write_group("q8.pcp", quaternion8());
  std::string output;
  CHECK(run_cli("--machine invariants " + q8, &output) == 0);
  std::istringstream in(output);
  std::string tag;
  std::uint64_t order, cls, zs, ds, fs_, d, expn, cyc, zphi;
  in >> tag >> order >> cls >> zs >> ds >> fs_ >> d >> expn >> cyc >> zphi;
  CHECK(tag == "invariants");
  CHECK(order == 8);
  CHECK(cls == 2);
  CHECK(zs == 2);
  CHECK(ds == 2);
  CHECK(fs_ == 2);
  CHECK(d == 2);
  CHECK(expn == 4);
  CHECK(cyc == 1);
  CHECK(zphi == 1);
}

TEST_CASE("cli: capable search writes a verifiable witness") {
  std::string d8 = write_group("d8.pcp", dihedral(3));
  fs::path wout = scratch_dir() / "d8_witness.pcp";
  CHECK(run_cli("capable search " + d8 + " --budget 1 --out " + wout.string()) == 0);
  PcPresentation h = read_presentation_file(wout.string());
  h.check_consistency();
  CHECK(h.order() == 16);
  auto q = quotient(h, center(h));
  CHECK(are_isomorphic(q.group(), dihedral(3)));

  std::string q8 = write_group("q8.pcp", quaternion8());
  std::string output;
  CHECK(run_cli("capable search " + q8 + " --budget 2", &output) == 1);
  CHECK(output.find("UNKNOWN") != std::string::npos);
  CHECK(output.find("budget-exhausted") != std::string::npos);
}

TEST_CASE("cli: verify subcommands and their exit codes") {
  std::string heis = write_group("h27.pcp", heisenberg(3));
  CHECK(run_cli("verify theorem-a " + heis) == 0);
  CHECK(run_cli("verify corollary2 " + heis) == 0);
  CHECK(run_cli("verify lemma3 " + heis) == 0); // degenerate pass

  std::string d16 = write_group("d16.pcp", dihedral(4)); // class 3
  std::string output;
  CHECK(run_cli("verify theorem-a " + d16, &output) == 1);
  CHECK(output.find("hypothesis") != std::string::npos);
  CHECK(run_cli("verify lemma3 " + d16) == 0); // genuine class-3 reduction

  std::string d32 = write_group("d32.pcp", dihedral(5)); // class 4
  CHECK(run_cli("verify lemma3 " + d32, &output) == 1);
  CHECK(output.find("hypothesis violation") != std::string::npos);
}

TEST_CASE("cli: cross-check sweep writes a report") {
  fs::path report = scratch_dir() / "sweep.tsv";
  std::string output;
  int rc = run_cli("verify cross-check --p 3 --max-order 27 --budget 1 --report " +
                       report.string(),
                   &output);
  CHECK(rc == 0);
  CHECK(output.find("HARD-CONFLICT") == std::string::npos);
  std::ifstream in(report);
  std::string first_line;
  std::getline(in, first_line);
  CHECK(first_line.find("fp_hash") != std::string::npos);
  int rows = 0;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') ++rows;
  CHECK(rows == 2);
}

TEST_CASE("cli: enumerate writes catalog files and an index") {
  fs::path dir = scratch_dir() / "catalog8";
  fs::remove_all(dir);
  CHECK(run_cli("enumerate --p 2 --max-order 8 --out " + dir.string()) == 0);
  CHECK(fs::exists(dir / "index.tsv"));
  int files = 0;
  for (auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".pcp") ++files;
  CHECK(files == 2); // D8 and Q8
  // every catalog file parses back to a consistent group
  for (auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".pcp") {
      PcPresentation g = read_presentation_file(e.path().string());
      CHECK(g.check_consistency().pass);
      CHECK(g.order() == 8);
    }
}

TEST_CASE("cli: usage and resource exit codes") {
  CHECK(run_cli("no-such-command") == 2);
  CHECK(run_cli("invariants /nonexistent/file.pcp") == 2);
  fs::path bad = scratch_dir() / "bad.pcp";
  std::ofstream(bad) << "p 2\ngens 1\nrelorder 1 1\nfrob\n";
  std::string output;
  CHECK(run_cli("invariants " + bad.string(), &output) == 2);
  CHECK(output.find("line 4") != std::string::npos);

  // inconsistent presentation file: ill-formed input
  fs::path incons = scratch_dir() / "incons.pcp";
  std::ofstream(incons) << "p 2\ngens 3\nrelorder 1 1\nrelorder 2 1\nrelorder 3 3\n"
                        << "comm 2 1 : 3^7\n";
  CHECK(run_cli("invariants " + incons.string(), &output) == 2);
  CHECK(output.find("inconsistent") != std::string::npos);

  CHECK(run_cli("enumerate --p 2 --max-order 2048 --out /tmp/never") == 3);
}
