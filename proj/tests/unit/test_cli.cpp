#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int status = widthlab::cli::run(args, in, out, err);
  return {status, out.str(), err.str()};
}

std::string transcript(const Run& r) {
  std::string s = "exit: " + std::to_string(r.status) + "\n" + r.out;
  if (!r.err.empty()) {
    s += "--- stderr\n" + r.err;
  }
  return s;
}

// Compares against tests/golden/<name>.txt; WIDTHLAB_UPDATE_GOLDEN=1
// rewrites the file instead.
void golden(const std::string& name, const std::vector<std::string>& args) {
  const std::string path = std::string(WIDTHLAB_GOLDEN_DIR) + "/" + name + ".txt";
  const std::string got = transcript(run(args));
  if (const char* update = std::getenv("WIDTHLAB_UPDATE_GOLDEN");
      update && std::string(update) == "1") {
    std::ofstream(path, std::ios::binary) << got;
    return;
  }
  std::ifstream file(path, std::ios::binary);
  REQUIRE_MESSAGE(file, "missing golden file " << path);
  std::stringstream want;
  want << file.rdbuf();
  CHECK_MESSAGE(got == want.str(), name);
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("golden transcripts") {
  golden("ew_commutator", {"ew", "x1 x2 x1^-1 x2^-1"});
  golden("ew_proper", {"ew", "x1^2 x2^4"});
  golden("ew_not_proper", {"ew", "x1 x2^2"});
  golden("ew_json", {"--format", "json", "ew", "x1^2 x2^4"});
  golden("gamma_text", {"gamma", "--d", "2", "--M", "1", "b^3 f1^3 f0^3 f1^3 b^3"});
  golden("gamma_json", {"--format", "json", "gamma", "--w", "x1^2",
                        "b^2 f0^2 b^2 f0^-2 b^2"});
  golden("reduce_cyclic", {"reduce", "--cyclic", "f0^2 b f1 f0^-2"});
  golden("reduce_identity", {"reduce", "b^2 b^-2"});
  golden("eval", {"eval", "--w", "x1 x2 x1^-1 x2^-1", "x1=f0^2;x2=f1"});
  golden("decompose_text", {"decompose", "--w", "x1^2 x2^2", "x1=b f0 f1;x2=f1^-1 b"});
  golden("decompose_random_json", {"--format", "json", "--seed", "7", "decompose",
                                   "--w", "x1^2 x2 x1^-1 x2^-1", "--random-images", "5"});
  golden("witness_case1_json", {"--format", "json", "witness", "--w", "x1^2", "--k", "3"});
  golden("witness_case2_text", {"witness", "--w", "x1 x2 x1^-1 x2^-1", "--k", "2",
                                "--M", "2"});
  golden("oracle_not_found", {"oracle", "--w", "x1^2", "--l", "1", "--L", "4", "b"});
  golden("oracle_member_json", {"--format", "json", "oracle", "--w", "x1 x2 x1^-1 x2^-1",
                                "--l", "1", "--L", "1", "b f0 b^-1 f0^-1"});
  golden("error_not_in_r", {"--format", "json", "gamma", "--d", "2", "--M", "2",
                            "b f0 b^-1"});
  golden("error_no_certificate", {"--format", "json", "certify", "--w", "x1^2",
                                  "--l", "1", "f0"});
  golden("error_not_proper", {"certify", "--w", "x1 x2^2", "--l", "1", "--from-witness"});
  golden("error_syntax", {"reduce", "b^0"});
  golden("letters", {"--letters", "a,c,e", "--M", "2", "gamma", "--d", "0",
                     "a^2 c^2 e^2 a^2"});
}

TEST_CASE("exit statuses") {
  CHECK(run({}).status == widthlab::cli::kUsageError);
  CHECK(run({"ew"}).status == widthlab::cli::kUsageError);
  CHECK(run({"bogus"}).status == widthlab::cli::kUsageError);
  CHECK(run({"--format", "xml", "ew", "x1"}).status == widthlab::cli::kUsageError);
  CHECK(run({"eval", "--w", "x1", "x1=q"}).status == widthlab::cli::kUsageError);
  CHECK(run({"--help"}).status == widthlab::cli::kOk);
  CHECK(run({"--max-values", "5", "oracle", "--w", "x1^2", "--l", "1", "--L", "2",
             "b"}).status == widthlab::cli::kResourceError);
  CHECK(run({"gamma", "--M", "2", "--d", "2", "b f0"}).status
        == widthlab::cli::kDomainError);
}

TEST_CASE("memory cap from the environment") {
  ::setenv("WIDTHLAB_MAX_MEM", "1K", 1);
  const auto r = run({"oracle", "--w", "x1 x2 x1^-1 x2^-1", "--l", "1", "--L", "2",
                      "b f0 b^-1 f0^-1"});
  ::unsetenv("WIDTHLAB_MAX_MEM");
  CHECK(r.status == widthlab::cli::kResourceError);
  ::setenv("WIDTHLAB_MAX_MEM", "lots", 1);
  CHECK(run({"oracle", "--w", "x1^2", "--l", "1", "--L", "1", "b^2"}).status
        == widthlab::cli::kUsageError);
  ::unsetenv("WIDTHLAB_MAX_MEM");
}

TEST_CASE("structured output is repeatable") {
  const std::vector<std::string> args{"--format", "json", "--seed", "3", "decompose",
                                      "--w", "x1^3 x2 x1^-1", "--random-images", "8"};
  CHECK(run(args).out == run(args).out);
}

TEST_CASE("certify then verify in process") {
  const auto cert = run({"certify", "--w", "x1^2", "--l", "1", "--from-witness",
                         "--k", "82"});
  REQUIRE(cert.status == 0);
  const auto ver = run({"verify-certificate"}, cert.out);
  CHECK(ver.status == 0);
  CHECK(ver.out == "OK: l_w(g) > 1 (gamma = 163 > B = 162), l_w(g) <= 82\n");
  const auto bad = run({"verify-certificate", "-"}, "{\"kind\": 1}");
  CHECK(bad.status == widthlab::cli::kDomainError);
}

}  // TEST_SUITE
