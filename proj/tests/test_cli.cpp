#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <json.hpp>

#ifndef CLI_BINARY_PATH
#error "CLI_BINARY_PATH must point at the built binary"
#endif

namespace {

using nlohmann::json;

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(CLI_BINARY_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  int status = pclose(pipe);
  return RunResult{WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string temp_path(const char* name) {
  return std::string("/tmp/branchorder_test_") + name + std::to_string(getpid()) + ".json";
}

}  // namespace

TEST_CASE("present emits the documented schema") {
  auto r = run("present --k -1,-1,-1 --form standard --no-timestamp");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j.at("generators").size() == 6);
  CHECK(j.at("relators").size() == 6);
  CHECK(j.at("label") == "standard");
  CHECK_FALSE(j.contains("timestamp"));
  // Constant k vector carries the cyclic-cover metadata tag.
  REQUIRE(j.contains("pretzel_cover"));
  CHECK(j.at("pretzel_cover").at("n") == 3);
  CHECK(j.at("pretzel_cover").at("k") == 1);
}

TEST_CASE("present raw form at n = 1") {
  auto r = run("present --k 0 --form raw --no-timestamp");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j.at("generators").size() == 6);
  CHECK(j.at("relators").size() == 6);
  CHECK(j.at("label") == "raw-brunner");
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run("present --k \"\"").exit_code == 2);
  CHECK(run("present").exit_code == 2);
  CHECK(run("present --k 1,2 --n 3").exit_code == 2);
  CHECK(run("present --k 1,x2").exit_code == 2);
  CHECK(run("nonsense --k 1").exit_code == 2);
  CHECK(run("certify --k 0,0 --out /nonexistent-dir/cert.json").exit_code == 2);
}

TEST_CASE("homology orders across forms and sizes") {
  for (auto [k, order] : std::vector<std::pair<std::string, int>>{
           {"0,0", 9}, {"2,-1,1", 49}, {"1,1,1,1", 225}}) {
    for (const char* form : {"standard", "raw"}) {
      auto r = run("homology --k " + k + " --form " + form + " --no-timestamp");
      REQUIRE(r.exit_code == 0);
      json j = json::parse(r.out);
      CHECK(j.at("order") == order);
      CHECK(j.at("free_rank") == 0);
    }
  }
}

TEST_CASE("coset enumeration output") {
  auto r = run("coset --k 0,0 --no-timestamp");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j.at("status") == "finite");
  CHECK(j.at("order") == 9);

  auto exceeded = run("coset --k 1,1 --max-cosets 5000 --no-timestamp");
  REQUIRE(exceeded.exit_code == 0);
  json e = json::parse(exceeded.out);
  CHECK(e.at("status") == "exceeded");
}

TEST_CASE("certify/verify round trip on the finite family instance") {
  std::string cert = temp_path("cert00");
  auto r = run("certify --k 0,0 --no-timestamp --out " + cert);
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j.at("status") == "certified");
  CHECK(j.at("method") == "finite-shortcut");

  auto v = run("verify --k 0,0 --cert " + cert + " --no-timestamp");
  REQUIRE(v.exit_code == 0);
  CHECK(json::parse(v.out).at("result") == "accept");

  // The same certificate is rejected against a different group.
  auto bad = run("verify --k 1,0 --cert " + cert + " --no-timestamp");
  REQUIRE(bad.exit_code == 0);
  json b = json::parse(bad.out);
  CHECK(b.at("result") == "reject");
  std::remove(cert.c_str());
}

TEST_CASE("certify reports the trivial group at n = 1") {
  auto r = run("certify --k 3 --no-timestamp --out " + temp_path("unused"));
  REQUIRE(r.exit_code == 0);
  CHECK(json::parse(r.out).at("status") == "trivial-group");
}

TEST_CASE("replay report and the empty range") {
  auto r = run("replay --k 1 --m-from -1 --m-to 1 --no-timestamp");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  REQUIRE(j.is_array());
  CHECK_FALSE(j.empty());
  for (const auto& e : j) CHECK(e.at("millis") == 0);

  auto empty = run("replay --k 1 --m-from 1 --m-to 0 --no-timestamp");
  REQUIRE(empty.exit_code == 0);
  CHECK(json::parse(empty.out).is_array());
  CHECK(json::parse(empty.out).empty());
}

TEST_CASE("outputs are byte-identical modulo the timestamp") {
  auto a = run("present --k 2,0 --no-timestamp");
  auto b = run("present --k 2,0 --no-timestamp");
  CHECK(a.out == b.out);
  auto stamped = run("present --k 2,0");
  CHECK(json::parse(stamped.out).contains("timestamp"));
}

TEST_CASE("thread cap environment variable is validated") {
  std::string prefix = "BRANCHORDER_THREADS=2 ";
  std::string cmd = prefix + CLI_BINARY_PATH + " replay --k 1 --m-from 0 --m-to 1 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  while (fread(buf.data(), 1, buf.size(), pipe) > 0) {
  }
  CHECK(WEXITSTATUS(pclose(pipe)) == 0);

  std::string bad = "BRANCHORDER_THREADS=zero ";
  std::string cmd2 = bad + CLI_BINARY_PATH + " replay --k 1 2>/dev/null";
  FILE* pipe2 = popen(cmd2.c_str(), "r");
  REQUIRE(pipe2 != nullptr);
  while (fread(buf.data(), 1, buf.size(), pipe2) > 0) {
  }
  CHECK(WEXITSTATUS(pclose(pipe2)) == 2);
}
