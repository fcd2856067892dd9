#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = skq::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string strip_comments(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::string out;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') out += line + '\n';
  }
  return out;
}

std::size_t count_lines(const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) n += line.rfind(prefix, 0) == 0;
  return n;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "skq_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

const std::string kGolden = SKQ_GOLDEN_DIR;

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("factor reproduces the golden example tables") {
  for (auto [name, n1, n2] : {std::tuple{"example1", "2", "3"}, {"example2", "3", "5"}}) {
    const fs::path prefix = scratch(name);
    const Run r = run({"factor", "--n1", n1, "--n2", n2, "--orientation", "paper-tables",
                       "--output", prefix.string()});
    CHECK(r.code == 0);
    const std::string pos = slurp(kGolden + "/" + name + "_position.csv");
    const std::string mom = slurp(kGolden + "/" + name + "_momentum.csv");
    CHECK(strip_comments(r.out) == pos + mom);
    CHECK(slurp(prefix.string() + "_position.csv") == pos);
    CHECK(slurp(prefix.string() + "_momentum.csv") == mom);
  }
}

TEST_CASE("factor output is deterministic") {
  const Run a = run({"factor", "--n1", "4", "--n2", "9", "--format", "txt"});
  const Run b = run({"factor", "--n1", "4", "--n2", "9", "--format", "txt"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("|u_1> = |u_3> (x) |u_8>") != std::string::npos);
}

TEST_CASE("non-coprime factors are a usage error") {
  const Run r = run({"factor", "--n1", "4", "--n2", "6"});
  CHECK(r.code == 2);
  CHECK(r.err.find("gcd=2") != std::string::npos);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"factor", "--n1", "2"}).code == 2);
  CHECK(run({"verify", "--N", "6", "--n1", "2", "--n2", "3"}).code == 2);
  CHECK(run({"verify"}).code == 2);
  CHECK(run({"factor", "--n1", "2", "--n2", "3", "--format", "svg"}).code == 2);
  CHECK(run({"factor", "--n1", "2", "--n2", "3", "--orientation", "up"}).code == 2);
  CHECK(run({"phase-space", "--n1", "2", "--n2", "3", "--state", "q:1"}).code == 2);
  CHECK(run({"phase-space", "--n1", "2", "--n2", "3", "--state", "v:2,u:0"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("dimension cap from flag and environment") {
  CHECK(run({"verify", "--N", "12", "--dim-cap", "8"}).code == 2);
  ::setenv("SKQ_DIM_CAP", "8", 1);
  CHECK(run({"verify", "--N", "12"}).code == 2);
  CHECK(run({"verify", "--N", "12", "--dim-cap", "16"}).code == 0);
  ::setenv("SKQ_DIM_CAP", "zero", 1);
  CHECK(run({"verify", "--N", "3"}).code == 2);
  ::unsetenv("SKQ_DIM_CAP");
  CHECK(run({"verify", "--N", "12"}).code == 0);
}

TEST_CASE("verify") {
  const Run pair = run({"verify", "--n1", "2", "--n2", "3"});
  CHECK(pair.code == 0);
  CHECK(pair.out.find(",fail") == std::string::npos);
  CHECK(pair.out.find("az_exponent_mismatches") != std::string::npos);
  CHECK(run({"verify", "--N", "101"}).code == 0);
  CHECK(run({"verify", "--N", "200"}).code == 0);
  CHECK(run({"verify", "--n1", "3", "--n2", "5", "--orientation", "plane-wave"}).code == 0);
  const Run strict = run({"verify", "--n1", "2", "--n2", "3", "--tol", "1e-30"});
  CHECK(strict.code == 1);
  CHECK(strict.out.find(",fail") != std::string::npos);
}

TEST_CASE("phase-space cells") {
  const Run r = run({"phase-space", "--n1", "2", "--n2", "3", "--state", "v:1,u:2", "--format", "csv"});
  CHECK(r.code == 0);
  const std::string body = strip_comments(r.out);
  CHECK(count_lines(body, "") == 7);
  // marked cells: second-factor position 2, every first-factor cell, magnitude 1/sqrt(2)
  CHECK(body.find("0,2,4,7.071068e-01,1\n") != std::string::npos);
  CHECK(body.find("1,2,1,7.071068e-01,1\n") != std::string::npos);
  std::size_t marked = 0;
  std::istringstream in(body);
  std::string line;
  while (std::getline(in, line)) marked += line.size() > 2 && line.substr(line.size() - 2) == ",1";
  CHECK(marked == 2);
}

TEST_CASE("phase-space for (3,5): three marks, one per period") {
  const Run r = run({"phase-space", "--n1", "3", "--n2", "5", "--state", "v:1,u:2"});
  std::size_t marked = 0;
  std::istringstream in(strip_comments(r.out));
  std::string line;
  std::getline(in, line);
  std::vector<int> j2s;
  while (std::getline(in, line)) {
    if (line.substr(line.size() - 2) == ",1") {
      ++marked;
      CHECK(line.find("5.773503e-01") != std::string::npos);
      j2s.push_back(std::stoi(line.substr(line.find(',') + 1)));
    }
  }
  CHECK(marked == 3);
  for (int j2 : j2s) CHECK(j2 == 2);
}

TEST_CASE("phase-space comb marks and svg") {
  const Run comb = run({"phase-space", "--n1", "3", "--n2", "5", "--state", "v:0,u:0"});
  CHECK(comb.code == 0);
  CHECK(comb.out.find("0,0,0,5.773503e-01,1") != std::string::npos);
  const fs::path svg = scratch("comb.svg");
  const Run a = run({"phase-space", "--n1", "3", "--n2", "5", "--state", "v:0,u:0", "--format", "svg",
                     "--output", svg.string()});
  CHECK(a.code == 0);
  const std::string first = slurp(svg);
  CHECK(first.rfind("<svg", 0) == 0);
  CHECK(count_lines(first, "<circle") == 3);
  run({"phase-space", "--n1", "3", "--n2", "5", "--state", "v:0,u:0", "--format", "svg",
       "--output", svg.string()});
  CHECK(slurp(svg) == first);
}

TEST_CASE("comb") {
  const Run r = run({"comb", "--n1", "2", "--n2", "3"});
  CHECK(r.code == 0);
  CHECK(count_lines(r.out, "momentum,") == 3);
  CHECK(count_lines(r.out, "position,") == 2);
  CHECK(r.out.find("5.773503e-01\n") != std::string::npos);
  CHECK(r.out.find("7.071068e-01\n") != std::string::npos);
}

TEST_CASE("kick") {
  const fs::path pot = scratch("p.txt");
  {
    std::ofstream f(pot);
    f << "period=3\n0.3\n-1.7\n2.2\n";
  }
  const Run r = run({"kick", "--N", "6", "--potential", pot.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("shift_mod,0,6,") != std::string::npos);
  CHECK(r.out.find(",yes\n") != std::string::npos);

  const fs::path five = scratch("p5.txt");
  {
    std::ofstream f(five);
    f << "period=5\n1\n2\n3\n4\n5\n";
  }
  CHECK(run({"kick", "--N", "15", "--potential", five.string()}).code == 0);
  CHECK(run({"kick", "--N", "12", "--potential", five.string()}).code == 2);
  // period 2 in N=4: cell count 2 shares a factor with the period
  const fs::path two = scratch("p2.txt");
  {
    std::ofstream f(two);
    f << "period=2\n1\n2\n";
  }
  CHECK(run({"kick", "--N", "4", "--potential", two.string()}).code == 2);
  CHECK(run({"kick", "--N", "6", "--potential", "/nonexistent/p.txt"}).code == 2);
}

TEST_CASE("converge") {
  const Run r = run({"converge", "--mode", "symmetric", "--N", "11,31,101"});
  CHECK(r.code == 0);
  const std::string body = strip_comments(r.out);
  CHECK(body.rfind("N,overlap_dev,gaussian_dev,gram_dev\n11,", 0) == 0);
  CHECK(count_lines(body, "") == 4);
  const fs::path out = scratch("conv.csv");
  CHECK(run({"converge", "--mode", "periodic", "--xi", "2.5", "--N", "8,9", "--output", out.string()}).code == 0);
  CHECK(slurp(out).find("8,") != std::string::npos);
  CHECK(run({"converge", "--mode", "symmetric", "--N", "31,11"}).code == 2);
  CHECK(run({"converge", "--mode", "symmetric", "--N", "10"}).code == 2);
}

}  // TEST_SUITE
