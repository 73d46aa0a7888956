#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "doctest.h"

namespace fs = std::filesystem;
using namespace graphonlab::cli;

namespace {

struct Workspace {
  fs::path dir = fs::temp_directory_path() / "graphonlab_cli_test";
  Workspace() { fs::create_directories(dir); }
  ~Workspace() { fs::remove_all(dir); }
  fs::path write(const char* name, const std::string& text) const {
    std::ofstream(dir / name) << text;
    return dir / name;
  }
};

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const RunConfig& config) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(config, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("density rows") {
    Workspace ws;
    RunConfig c;
    c.command = "density";
    c.patterns = {ws.write("edge.txt", "2 1\n1 2\n")};
    c.hosts = {ws.write("k3.txt", "3 3\n1 2\n1 3\n2 3\n")};
    const auto r = invoke(c);
    CHECK(r.code == kExitOk);
    CHECK(r.out ==
          "pattern_id,host_id,t,t_inj,t_ind,bound_ok\n"
          "edge.txt,k3.txt,0.666666666667,1.000000000000,1.000000000000,true\n");
  }

  TEST_CASE("exit codes") {
    Workspace ws;
    RunConfig c;
    c.command = "density";
    std::string big = "9 0\n";
    c.patterns = {ws.write("big.txt", big)};
    c.hosts = {ws.write("k3.txt", "3 3\n1 2\n1 3\n2 3\n")};
    CHECK(invoke(c).code == kExitCapacity);
    c.patterns = {ws.write("bad.txt", "2 1\n1 1\n")};
    const auto bad = invoke(c);
    CHECK(bad.code == kExitInput);
    CHECK(bad.err.find("bad.txt") != std::string::npos);
    c.command = "nonsense";
    CHECK(invoke(c).code == kExitInput);
  }

  TEST_CASE("test-extreme verdicts") {
    Workspace ws;
    RunConfig c;
    c.command = "test-extreme";
    c.pairs = ws.write("pairs.txt", "1,2:1-2 | 3,4:3-4\n");
    c.source = ws.write("mix.txt", "mixture\n0.5 constant:0.2\n0.5 constant:0.8\n");
    c.samples = 50'000;
    const auto rejected = invoke(c);
    CHECK(rejected.code == kExitRejected);
    CHECK(rejected.out.find("VERDICT non-extreme p_min=") != std::string::npos);
    c.source = ws.write("half.txt", "constant 0.5\n");
    c.alpha = 0.001;
    const auto kept = invoke(c);
    CHECK(kept.code == kExitOk);
    CHECK(kept.out.find("VERDICT extreme-consistent") != std::string::npos);
  }

  TEST_CASE("same seed gives identical output across thread counts") {
    Workspace ws;
    RunConfig c;
    c.command = "density";
    c.patterns = {ws.write("k3p.txt", "3 3\n1 2\n1 3\n2 3\n")};
    c.graphon = ws.write("bg.txt", "2\n0.5 0.5\n0.2 0.6\n0.6 0.4\n");
    c.samples = 30'000;
    c.seed = 7;
    c.threads = 1;
    const auto a = invoke(c);
    c.threads = 3;
    const auto b = invoke(c);
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
    c.seed = 8;
    CHECK(invoke(c).out != a.out);
  }

  TEST_CASE("sample, converge and cutdist") {
    Workspace ws;
    RunConfig c;
    c.command = "sample";
    c.graphon = ws.write("bg.txt", "2\n0.5 0.5\n0.2 0.6\n0.6 0.4\n");
    c.n = 30;
    c.output = ws.dir / "g.txt";
    CHECK(invoke(c).code == kExitOk);
    RunConfig conv;
    conv.command = "converge";
    conv.graphon = c.graphon;
    conv.hosts = {ws.dir / "g.txt"};
    const auto r = invoke(conv);
    CHECK(r.code == kExitOk);
    CHECK(r.out.rfind("METRIC d=", 0) == 0);
    CHECK(r.out.find(" file=g.txt") != std::string::npos);
    RunConfig cut;
    cut.command = "cutdist";
    cut.graphon = c.graphon;
    cut.graphon2 = ws.write("swap.txt", "2\n0.5 0.5\n0.4 0.6\n0.6 0.2\n");
    CHECK(invoke(cut).out == "METRIC cut_distance_upper=0.000000000000\n");
  }

  TEST_CASE("exchangeability verdicts") {
    Workspace ws;
    RunConfig c;
    c.command = "test-exchangeable";
    c.graphon = ws.write("bg.txt", "2\n0.5 0.5\n0.2 0.6\n0.6 0.4\n");
    c.exact = true;
    const auto r = invoke(c);
    CHECK(r.code == kExitOk);
    CHECK(r.out.rfind("VERDICT consistent p_min=", 0) == 0);
    RunConfig d;
    d.command = "test-exchangeable";
    d.kind = Kind::kDirected;
    d.graphon = ws.write("tour.txt", "1\n1\nW00\n0\nW01\n0.5\nW10\n0.5\nW11\n0\n0\n");
    d.samples = 20'000;
    CHECK(invoke(d).code == kExitOk);
  }

  TEST_CASE("trace-martingale output") {
    Workspace ws;
    RunConfig c;
    c.command = "trace-martingale";
    c.graphon = ws.write("full.txt", "1\n1\n1\n");
    c.patterns = {ws.write("edge.txt", "2 1\n1 2\n")};
    c.grid = {5, 10};
    CHECK(invoke(c).out == "n,t_ind\n5,1.000000000000\n10,1.000000000000\n");
  }
}
