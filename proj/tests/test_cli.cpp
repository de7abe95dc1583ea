#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"
#include "tropical/commands.hpp"
#include "tropical/document.hpp"
#include "tropical/oracle.hpp"

using namespace tropical;
using namespace tropical::testing;

namespace {

const std::string kData = std::string(TROPICAL_TEST_DATA) + "/data/";
const std::string kGolden = std::string(TROPICAL_TEST_DATA) + "/golden/";

struct Run {
  int rc = -1;
  std::string out;
  std::string err;
};

template <class Fn>
Run capture(Fn&& fn) {
  std::ostringstream out, err;
  Run r;
  r.rc = fn(out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

Run solve_file(const std::string& name, CommandOptions opt = {}) {
  return capture([&](auto& o, auto& e) { return cmd_solve(kData + name, opt, o, e); });
}

Run verify_file(const std::string& path, CommandOptions opt = {}) {
  return capture([&](auto& o, auto& e) { return cmd_verify(path, opt, o, e); });
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("tropical_test_" + name);
  std::ofstream(path, std::ios::binary) << content;
  return path.string();
}

CommandOptions json() {
  CommandOptions opt;
  opt.json = true;
  return opt;
}

}  // namespace

TEST_CASE("solve exit codes", "[cli]") {
  auto r = solve_file("new_boxed_spectral.json");
  CHECK(r.rc == kExitOk);
  CHECK(r.out.find("optimum   2\n") != std::string::npos);

  r = solve_file("cheb_kleene_tr_violation.json");
  CHECK(r.rc == kExitInfeasible);
  CHECK(r.out.find("NO_REGULAR_SOLUTION") != std::string::npos);

  r = solve_file("malformed_row.json");
  CHECK(r.rc == kExitInputError);
  CHECK(r.err.find("A[1]") != std::string::npos);

  r = solve_file("does_not_exist.json");
  CHECK(r.rc == kExitInputError);
}

TEST_CASE("document validation", "[cli]") {
  auto bad = [](const std::string& body) {
    const auto path = temp_file("bad.json", body);
    return capture([&](auto& o, auto& e) { return cmd_solve(path, {}, o, e); });
  };
  CHECK(bad("{").rc == kExitInputError);
  CHECK(bad(R"({"semifield":"max-plus","kind":"nope"})").rc == kExitInputError);
  CHECK(bad(R"({"semifield":"plus-max","kind":"rayleigh","A":[[0]]})").rc == kExitInputError);
  CHECK(bad(R"({"semifield":"max-plus","kind":"rayleigh"})").rc == kExitInputError);
  CHECK(bad(R"({"semifield":"max-plus","kind":"rayleigh","A":[[0]],"B":[[0]]})").rc == kExitInputError);
  CHECK(bad(R"({"semifield":"max-plus","kind":"rayleigh","A":[[0, 1]]})").rc == kExitInputError);
  CHECK(bad(R"({"semifield":"max-plus","kind":"rayleigh","A":[["x"]]})").rc == kExitInputError);
  CHECK(bad(R"({"semifield":"max-times","kind":"rayleigh","A":[[-1]]})").rc == kExitInputError);
  CHECK(bad(R"({"semifield":"max-plus","kind":"cheb_box","p":[1],"q":[0,0],"g":[0],"h":[1]})").rc ==
        kExitInputError);
  const auto r = bad(R"({"semifield":"max-plus","kind":"rayleigh","A":[[0, "7/2"], [1, null]]})");
  CHECK(r.rc == kExitOk);
}

TEST_CASE("solve JSON report matches the golden file", "[cli][golden]") {
  CHECK(solve_file("new_boxed_spectral.json", json()).out == slurp(kGolden + "solve_new_boxed_spectral.json"));
  CHECK(solve_file("span_min_identity.json", json()).out == slurp(kGolden + "solve_span_min_identity.json"));
  CHECK(solve_file("cheb_kleene_tr_violation.json", json()).out ==
        slurp(kGolden + "solve_cheb_kleene_tr_violation.json"));
}

TEST_CASE("verify JSON report matches the golden file", "[cli][golden]") {
  const auto r = verify_file(kData + "rayleigh_2x2.json", json());
  CHECK(r.rc == kExitOk);
  CHECK(r.out == slurp(kGolden + "verify_rayleigh_2x2.json"));
}

TEST_CASE("verify is deterministic", "[cli]") {
  CommandOptions opt = json();
  opt.seed = 123;
  opt.samples = 40;
  const auto a = verify_file(kData + "new_boxed_spectral.json", opt);
  const auto b = verify_file(kData + "new_boxed_spectral.json", opt);
  CHECK(a.rc == kExitOk);
  CHECK(a.out == b.out);
}

TEST_CASE("verify exit codes", "[cli]") {
  CHECK(verify_file(kData + "new_boxed_spectral.json").rc == kExitOk);
  CHECK(verify_file(kData + "cheb_kleene_tr_violation.json").rc == kExitInfeasible);
  CHECK(verify_file(kData + "malformed_row.json").rc == kExitInputError);

  // The optimum 3/2 falls between points of a unit grid.
  CommandOptions coarse;
  coarse.step = Rational(1);
  const auto r = verify_file(kData + "cheb_box_coarse.json", coarse);
  CHECK(r.rc == kExitVerificationFailed);
  CHECK(r.out.find("gap             1/2") != std::string::npos);
  CHECK(verify_file(kData + "cheb_box_coarse.json").rc == kExitOk);

  CommandOptions huge;
  huge.radius = Rational(100000000);
  CHECK(verify_file(kData + "cheb_box_coarse.json", huge).rc == kExitResourceCap);

  CommandOptions bad_step;
  bad_step.step = Rational(-1);
  CHECK(verify_file(kData + "cheb_box_coarse.json", bad_step).rc == kExitInputError);
}

TEST_CASE("gen is deterministic and round-trips", "[cli]") {
  for (const auto kind : kAllKinds) {
    for (const char* field : {"max-plus", "min-plus", "max-times", "min-times"}) {
      CommandOptions opt;
      opt.seed = 7;
      opt.n = 3;
      opt.semifield = field;
      const auto a = capture([&](auto& o, auto& e) { return cmd_gen(kind_name(kind), opt, o, e); });
      const auto b = capture([&](auto& o, auto& e) { return cmd_gen(kind_name(kind), opt, o, e); });
      INFO(kind_name(kind) << " " << field);
      REQUIRE(a.rc == kExitOk);
      CHECK(a.out == b.out);

      const ProblemDocument doc = parse_document(a.out);
      std::visit([&](const auto& pr) { CHECK(problem_to_json(pr).dump(2) + "\n" == a.out); }, doc.problem);

      const auto path = temp_file("gen.json", a.out);
      CHECK(capture([&](auto& o, auto& e) { return cmd_solve(path, {}, o, e); }).rc == kExitOk);
    }
  }
  CommandOptions opt;
  CHECK(capture([&](auto& o, auto& e) { return cmd_gen("nope", opt, o, e); }).rc == kExitInputError);
  opt.semifield = "tropical";
  CHECK(capture([&](auto& o, auto& e) { return cmd_gen("rayleigh", opt, o, e); }).rc == kExitInputError);
}

TEST_CASE("algebra", "[cli]") {
  auto run = [](const char* op, const char* file, CommandOptions opt = {}) {
    return capture([&](auto& o, auto& e) { return cmd_algebra(op, kData + file, opt, o, e); });
  };
  auto r = run("spectral", "matrix_1234.txt");
  CHECK(r.rc == kExitOk);
  CHECK(r.out == "lambda = 4\n");

  r = run("star", "matrix_zero.txt");
  CHECK(r.out.find("  0 .\n  . 0\n") != std::string::npos);

  r = run("tr", "matrix_identity.json", json());
  CHECK(r.rc == kExitOk);
  const auto j = Json::parse(r.out);
  CHECK(j["result"] == 0);
  CHECK(j["at_most_one"] == true);

  CommandOptions min;
  min.semifield = "min-plus";
  CHECK(run("spectral", "matrix_1234.txt", min).out == "lambda = 1\n");

  CHECK(run("spectral", "matrix_rect.txt").rc == kExitInputError);
  CHECK(run("inverse", "matrix_1234.txt").rc == kExitInputError);
}
