#include <doctest.h>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "margo/cli.hpp"

namespace fs = std::filesystem;
using margo::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("margo_cli_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path_ / name) << text;
    return (path_ / name).string();
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

}  // namespace

TEST_CASE("matrix reproduces the independence example") {
  TempDir dir;
  auto complex = dir.write("ind.txt", "2\n1\n2\n");
  auto r = invoke({"matrix", "--complex", complex, "--space", "2,2"});
  CHECK(r.code == 0);
  CHECK(r.out == "4 4\n1 1 0 0\n0 0 1 1\n1 0 1 0\n0 1 0 1\n");
  auto full = invoke({"matrix", "--uniform", "2", "--space", "2,2"});
  CHECK(full.out == "4 4\n1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n");
}

TEST_CASE("moves and kernel-basis emit matrix files") {
  CHECK(invoke({"moves", "--G", "1,2", "--space", "2,2"}).out == "1 4\n1 -1 -1 1\n");
  CHECK(invoke({"moves", "--G", "1", "--space", "2,2"}).out == "2 4\n1 0 -1 0\n0 1 0 -1\n");
  CHECK(invoke({"kernel-basis", "--uniform", "2", "--space", "2,2,2"}).out == "1 8\n1 -1 -1 1 -1 1 1 -1\n");
}

TEST_CASE("degree-bound on binary 2-margins") {
  auto r = invoke({"degree-bound", "--uniform", "2", "--space", "2,2,2", "--structured"});
  CHECK(r.code == 0);
  CHECK(r.out.find("g=3\n") != std::string::npos);
  CHECK(r.out.find("bound=4\n") != std::string::npos);
  CHECK(r.out.find("witness_degree=4\n") != std::string::npos);
  CHECK(r.out.find("result=PASS\n") != std::string::npos);
  auto plain = invoke({"degree-bound", "--uniform", "2", "--space", "2,2,2"});
  CHECK(plain.out.find("result: PASS") != std::string::npos);
}

TEST_CASE("verify-markov pass and fail") {
  auto pass = invoke({"verify-markov", "--G", "1,2,3", "--space", "2,2,2", "--degree-limit", "6"});
  CHECK(pass.code == 0);
  CHECK(pass.out.find("result: PASS (verified up to degree 6)") != std::string::npos);

  TempDir dir;
  auto one = dir.write("one.txt", "1 8\n1 0 -1 0 -1 0 1 0\n");
  auto fail = invoke({"verify-markov", "--G", "1,2", "--space", "2,2,2", "--moves", one, "--structured"});
  CHECK(fail.code == 1);
  CHECK(fail.out.find("result=FAIL") != std::string::npos);
  CHECK(fail.out.find("witness_u=") != std::string::npos);

  auto none = dir.write("none.txt", "0 8\n");
  auto empty = invoke({"verify-markov", "--uniform", "2", "--space", "2,2,2", "--moves", none, "--degree-limit", "4"});
  CHECK(empty.code == 1);
  CHECK(empty.out.find("witness u:\n000\n011\n101\n110\n") != std::string::npos);
}

TEST_CASE("neighborly reports k and a rational certificate") {
  auto r = invoke({"neighborly", "--uniform", "2", "--space", "2,2,2"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("k=3\n", 0) == 0);
  CHECK(r.out.find("witness: 000 011 101 110") != std::string::npos);
  CHECK(r.out.find("lambda: 001:1/4 010:1/4 100:1/4 111:1/4") != std::string::npos);
  auto ind = invoke({"neighborly", "--uniform", "1", "--space", "2,2", "--structured"});
  CHECK(ind.out.rfind("k=1\n", 0) == 0);
  CHECK(ind.out.find("lambda=01:1/2 10:1/2") != std::string::npos);
}

TEST_CASE("collapse, tableau, mi and density") {
  TempDir dir;
  auto phi = dir.write("phi.txt", "1: 0 1 1\n");
  auto table = dir.write("u.txt", "1\n3\n1 1 1\n");
  auto r = invoke({"collapse", "--collapsing", phi, "--table", table});
  CHECK(r.code == 0);
  CHECK(r.out.find("1\n2\n1 2\n") != std::string::npos);
  CHECK(r.out.find("result: PASS") != std::string::npos);

  auto t = dir.write("t.txt", "3\n2 2 2\n1 0 0 0 0 0 1 2\n");
  CHECK(invoke({"tableau", "--table", t}).out == "000\n110\n111\n111\n");

  auto p = dir.write("p.txt", "0.5 0 0 0 0 0 0 0.5\n");
  CHECK(invoke({"mi", "--space", "2,2,2", "--p", p}).out == "multiinformation: 1.38629436112\n");

  auto theta = dir.write("theta.txt", "0 0 0 0\n");
  CHECK(invoke({"density", "--uniform", "1", "--space", "2,2", "--theta", theta}).out ==
        "00 0.25\n01 0.25\n10 0.25\n11 0.25\n");
}

TEST_CASE("usage errors exit 64") {
  CHECK(invoke({}).code == 64);
  CHECK(invoke({"frobnicate"}).code == 64);
  CHECK(invoke({"matrix", "--space", "2,2"}).code == 64);
  CHECK(invoke({"matrix", "--uniform", "1", "--space", "2,x"}).code == 64);
  CHECK(invoke({"matrix", "--complex", "/nonexistent/file", "--space", "2,2"}).code == 64);
  CHECK(invoke({"verify-markov", "--G", "1,5", "--space", "2,2,2"}).code == 64);
  CHECK(invoke({"verify-markov", "--G", "1,2", "--space", "2,2,2", "--strategy", "bogus"}).code == 64);
  CHECK(invoke({"matrix", "--uniform", "1", "--space", "2,2", "--workers", "0"}).code == 64);
  auto r = invoke({"matrix", "--complex", "/nonexistent/file", "--space", "2,2"});
  CHECK(r.err.find("cannot open") != std::string::npos);
}

TEST_CASE("resource ceiling exits 2") {
  auto r = invoke({"neighborly", "--uniform", "2", "--space", "3,3,3", "--ceiling", "100"});
  CHECK(r.code == 2);
  CHECK(r.err.find("ceiling") != std::string::npos);
  setenv("MARGO_CEILING", "100", 1);
  CHECK(invoke({"neighborly", "--uniform", "2", "--space", "3,3,3"}).code == 2);
  unsetenv("MARGO_CEILING");
}

TEST_CASE("--out writes the report and reports are worker-independent") {
  TempDir dir;
  auto path = dir.file("report.txt");
  auto r = invoke({"degree-bound", "--uniform", "2", "--space", "2,2,2", "--out", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(text.str().find("result: PASS") != std::string::npos);

  for (std::vector<std::string> args : {std::vector<std::string>{"neighborly", "--uniform", "2", "--space", "2,2,2"},
                                        std::vector<std::string>{"verify-markov", "--G", "1,2", "--space", "2,2,2,2"}}) {
    auto w1 = args, w8 = args;
    w1.insert(w1.end(), {"--workers", "1"});
    w8.insert(w8.end(), {"--workers", "8"});
    CHECK(invoke(w1).out == invoke(w8).out);
  }
}
