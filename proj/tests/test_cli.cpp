#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lattes/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = lattes::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream ss(text);
  for (std::string line; std::getline(ss, line);) v.push_back(line);
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> v;
  std::istringstream ss(line);
  for (std::string cell; std::getline(ss, cell, ',');) v.push_back(cell);
  return v;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path temp_file(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "lattes_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("iterate a fixed point") {
  const auto r = run({"iterate", "--z", "1", "--steps", "3"});
  CHECK(r.code == 0);
  CHECK(lines(r.out) == std::vector<std::string>{"step,z", "0,1,0", "1,1,0", "2,1,0", "3,1,0"});
}

TEST_CASE("iterate a Bloch vector") {
  const auto r = run({"iterate", "--bloch", "0,0,1", "--steps", "1"});
  CHECK(r.code == 0);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 3);
  CHECK(l[2] == "1,0,1,0,1");
}

TEST_CASE("iterate rejects bad input") {
  CHECK(run({"iterate", "--z", "1,a"}).code != 0);
  CHECK(run({"iterate", "--bloch", "1,1,0"}).code != 0);
  CHECK(run({"iterate"}).code != 0);
  CHECK(run({"iterate", "--z", "1", "--bloch", "0,0,0"}).code != 0);
  const auto r = run({"iterate", "--z", "oops"});
  CHECK(r.err.find("malformed") != std::string::npos);
}

TEST_CASE("cycles in Bloch space match the published table") {
  const auto r = run({"cycles", "--max-period", "2", "--space", "bloch"});
  CHECK(r.code == 0);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 6);
  for (std::size_t k = 1; k < l.size(); ++k) {
    const auto cells = split(l[k]);
    REQUIRE(cells.size() == 5);
    CHECK(std::stod(cells[3]) < 1e-12);
    CHECK(std::stod(cells[4]) < 5e-4);
  }
}

TEST_CASE("cycles on the Riemann sphere are all repelling") {
  const auto r = run({"cycles", "--space", "riemann"});
  CHECK(r.code == 0);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 5);
  for (std::size_t k = 1; k < l.size(); ++k) {
    const auto cells = split(l[k]);
    CHECK(std::stod(cells[5]) > 1.0);
    CHECK(cells[6] == "repelling");
  }
  CHECK(run({"cycles", "--max-period", "3"}).code != 0);
}

TEST_CASE("oracle-check passes") {
  const auto r = run({"oracle-check", "--samples", "500"});
  CHECK(r.code == 0);
  CHECK(lines(r.out).size() == 5);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(run({"oracle-check", "--samples", "10", "--tolerance", "0"}).code == lattes::cli::kExitCheckFailed);
}

TEST_CASE("forward output is reproducible across runs and worker counts") {
  const auto a = temp_file("fwd_a.csv");
  const auto b = temp_file("fwd_b.csv");
  CHECK(run({"forward", "--samples", "1000", "--epsilon", "1e-3", "--seed", "42", "--out", a.string()}).code == 0);
  CHECK(run({"forward", "--samples", "1000", "--epsilon", "1e-3", "--seed", "42", "--out", b.string(), "--workers",
             "3"})
            .code == 0);
  const std::string text = slurp(a);
  CHECK_FALSE(text.empty());
  CHECK(text == slurp(b));
  CHECK(text == slurp(fs::path(LATTES_TEST_DATA_DIR) / "forward_seed42_n1000.csv"));
}

TEST_CASE("backward JSON output") {
  const auto p = temp_file("bwd.json");
  const auto r = run({"backward", "--samples", "200", "--policy", "plus_only", "--format", "json", "--out", p.string()});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(slurp(p));
  CHECK(j["header"]["policy"] == "plus_only");
  CHECK(j["header"]["start_radius"] == "0.01");
  CHECK(j["header"]["purity_threshold"] == "0.99");
  CHECK(j["non_converged"]["count"] == 0);
}

TEST_CASE("experiment errors") {
  CHECK(run({"forward", "--epsilon", "1.5"}).code != 0);
  CHECK(run({"forward", "--samples", "10", "--out", "/nonexistent-dir/h.csv"}).code != 0);
  CHECK(run({"backward", "--policy", "sideways"}).code != 0);
  CHECK(run({"backward", "--threshold", "0.4"}).code != 0);
  CHECK(run({"bogus"}).code != 0);

  // Cap exhaustion beyond the allowed fraction.
  const auto capped = run({"forward", "--samples", "20", "--cap", "1"});
  CHECK(capped.code == lattes::cli::kExitCapExceeded);
  CHECK(capped.err.find("iteration cap") != std::string::npos);
  CHECK(run({"forward", "--samples", "20", "--cap", "1", "--max-non-converged-fraction", "1"}).code == 0);
}

TEST_CASE("help exits cleanly") { CHECK(run({"--help"}).code == 0); }
