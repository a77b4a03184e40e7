#include <doctest.h>

#include <filesystem>
#include <random>
#include <regex>
#include <unistd.h>
#include <sstream>

#include "../support/oracles.hpp"
#include "gspkit/commands.hpp"
#include "gspkit/generate.hpp"
#include "gspkit/io.hpp"

using namespace gspkit;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("gspkit_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name, const std::string& content = "") const {
    const std::string p = (path_ / name).string();
    if (!content.empty()) write_file(p, content);
    return p;
  }
  std::string dir() const { return path_.string(); }

 private:
  fs::path path_;
};

const char* kThree = "strip 10\n3\n5 4\n5 4\n6 3\n";
const char* kPinwheel = "strip 3\n4\n2 1\n1 2\n2 1\n1 2\n";

struct Line {
  double x1, y1, x2, y2;
  bool dashed;
};

std::vector<Line> cut_lines(const std::string& svg) {
  std::vector<Line> out;
  const std::regex re(
      R"re(<line class="cut[^"]*" x1="([-0-9.e]+)" y1="([-0-9.e]+)" x2="([-0-9.e]+)" y2="([-0-9.e]+)"[^>]*>)re");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), re); it != std::sregex_iterator(); ++it) {
    const std::smatch& m = *it;
    out.push_back({std::stod(m[1]), std::stod(m[2]), std::stod(m[3]), std::stod(m[4]),
                   m[0].str().find("dasharray") != std::string::npos});
  }
  return out;
}

std::size_t count(const std::string& s, const std::string& what) {
  std::size_t n = 0;
  for (std::size_t p = s.find(what); p != std::string::npos; p = s.find(what, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("solve") {
  TempDir d;
  const std::string in = d.file("three.txt", kThree);
  const Run r = run({"solve", in, "--alg", "nfdh", "-o", d.file("three.sol")});
  CHECK(r.code == 0);
  CHECK(r.out.find("height 7\n") != std::string::npos);
  CHECK(r.out.find("lower_bound 6\n") != std::string::npos);
  CHECK(r.out.find("ratio ") != std::string::npos);
  CHECK(r.out.find("time_ms ") != std::string::npos);
  CHECK(read_file(d.file("three.sol")).rfind("height 7\n", 0) == 0);

  const std::string yes = d.file("yes.txt", "strip 3\n3\n1 1\n2 1\n3 1\n");
  const Run o = run({"solve", yes, "--alg", "oracle", "-o", "-"});
  CHECK(o.code == 0);
  CHECK(o.out.find("height 2\n") != std::string::npos);

  CHECK(run({"solve", d.file("missing.txt")}).code == 2);
  const Run bad = run({"solve", d.file("bad.txt", "strip 10\n2\n1 1\n1 z\n")});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("line 4") != std::string::npos);
  CHECK(run({"solve", in, "--alg", "simplex"}).code == 2);
  CHECK(run({"solve", in, "--eps", "2/5"}).code == 2);
  CHECK(run({"solve", in, "--budget-containers", "0"}).code == 2);

  const Run t = run({"solve", in, "--alg", "pptas", "-o", d.file("p.sol"), "--trace",
                     d.file("trace.json")});
  CHECK(t.code == 0);
  CHECK(read_file(d.file("trace.json")).find("\"algorithm\": \"pptas\"") != std::string::npos);
}

TEST_CASE("usage") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"solve"}).code == 2);
}

TEST_CASE("verify") {
  TempDir d;
  const std::string in = d.file("three.txt", kThree);
  REQUIRE(run({"solve", in, "-o", d.file("three.sol"), "--emit-cuts"}).code == 0);
  const Run ok = run({"verify", in, d.file("three.sol"), "--emit-cuts"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("(H 4 ") != std::string::npos);

  const std::string pin = d.file("pin.txt", kPinwheel);
  const Run p = run({"verify", pin, d.file("pin.sol", "height 3\n0 0 0\n1 2 0\n2 1 2\n3 0 1\n")});
  CHECK(p.code == 1);
  CHECK(p.out.find("no feasible cut in [0,3]x[0,3]") != std::string::npos);

  const Run o = run({"verify", pin, d.file("ov.sol", "height 3\n0 0 0\n1 1 0\n2 1 2\n3 0 1\n")});
  CHECK(o.code == 1);
  CHECK(o.out.find("overlap: items 0 and 1") != std::string::npos);

  // A correct packing with a wrong tree.
  const std::string wrong = d.file("wrong.sol", "height 7\n0 0 0\n1 5 0\n2 0 4\n(V 3 (I 0) (H 4 (I 1) (I 2)))\n");
  CHECK(run({"verify", in, wrong}).code == 1);
  CHECK(run({"verify", in, d.file("nope.sol")}).code == 2);
}

TEST_CASE("generate") {
  TempDir d;
  const Run p = run({"generate", "partition", "--numbers", "1,2,3", "-o", d.file("p.txt")});
  CHECK(p.code == 0);
  CHECK(read_file(d.file("p.txt")) == "strip 3\n3\n1 1\n2 1\n3 1\n");
  CHECK(read_file(d.file("p.txt") + ".cert") == "yes, opt=2\n");
  CHECK(run({"generate", "partition", "--numbers", "3,1,1"}).code == 2);

  for (const std::string kind : {"random", "partition", "planted"}) {
    REQUIRE(run({"generate", kind, "--seed", "17", "-o", d.file(kind + "1.txt")}).code == 0);
    REQUIRE(run({"generate", kind, "--seed", "17", "-o", d.file(kind + "2.txt")}).code == 0);
    CHECK(read_file(d.file(kind + "1.txt")) == read_file(d.file(kind + "2.txt")));
  }
  CHECK(read_file(d.file("planted1.txt.cert")) == read_file(d.file("planted2.txt.cert")));

  REQUIRE(run({"generate", "planted", "--width", "20", "--height", "20", "--max-boxes", "3",
               "--seed", "5", "-o", d.file("pl.txt"), "--cert", d.file("pl.cert")})
              .code == 0);
  const std::string cert = read_file(d.file("pl.cert"));
  CHECK(cert.rfind("opt <= 20\n", 0) == 0);
  CHECK(count(cert, "\nbox ") <= 3);
  // The certificate doubles as a layout for solve.
  const Run s = run({"solve", d.file("pl.txt"), "--alg", "pptas", "--budget-containers", "1",
                     "--layout", d.file("pl.cert"), "-o", "-"});
  CHECK(s.code == 0);
  CHECK(run({"generate", "random", "--skew", "sideways"}).code == 2);
}

TEST_CASE("render") {
  TempDir d;
  const std::string one = d.file("one.txt", "strip 5\n1\n2 3\n");
  d.file("one.sol", "height 3\n0 0 0\n");
  const Run r = run({"render", one, d.file("one.sol")});
  CHECK(r.code == 0);
  CHECK(count(r.out, "class=\"strip\"") == 1);
  CHECK(count(r.out, "class=\"item\"") == 1);

  const std::string empty = d.file("empty.txt", "strip 5\n0\n");
  d.file("empty.sol", "height 0\n");
  const Run e = run({"render", empty, d.file("empty.sol")});
  CHECK(e.code == 0);
  CHECK(count(e.out, "class=\"strip\"") == 1);
  CHECK(count(e.out, "class=\"item\"") == 0);

  // Two full shelves: (5,4)+(5,4) and (6,3)+(4,3).
  const std::string shelves = d.file("s.txt", "strip 10\n4\n5 4\n5 4\n4 3\n6 3\n");
  REQUIRE(run({"solve", shelves, "-o", d.file("s.sol"), "--emit-cuts"}).code == 0);
  const Run c = run({"render", shelves, d.file("s.sol"), "-o", d.file("s.svg")});
  CHECK(c.code == 0);
  const std::vector<Line> lines = cut_lines(read_file(d.file("s.svg")));
  int horizontal = 0, vertical = 0;
  for (const Line& l : lines) {
    if (l.dashed) continue;
    if (l.y1 == l.y2) ++horizontal;
    if (l.x1 == l.x2) ++vertical;
  }
  CHECK(horizontal == 1);
  CHECK(vertical == 2);
  CHECK(read_file(d.file("s.svg")).find("#d62728") != std::string::npos);
  CHECK(read_file(d.file("s.svg")).find("#1f77b4") != std::string::npos);

  const Run m = run({"render", one, d.file("s.sol")});
  CHECK(m.code == 2);
}

TEST_CASE("bench") {
  TempDir d;
  const fs::path corpus = fs::path(d.dir()) / "corpus";
  fs::create_directories(corpus);
  const Run empty = run({"bench", corpus.string()});
  CHECK(empty.code == 0);
  CHECK(run({"bench", corpus.string(), "--eps", "2/3"}).code == 2);
  CHECK(empty.out ==
        "instance,algorithm,n,height,lower_bound,ratio_lb,oracle_height,ratio_oracle,time_ms,status\n");
  for (int k = 0; k < 10; ++k) {
    const PartitionCase c = generate_partition(3 + k % 5, 9, static_cast<std::uint64_t>(k));
    write_file((corpus / ("p" + std::to_string(k) + ".txt")).string(), serialize_instance(c.instance));
    write_file((corpus / ("p" + std::to_string(k) + ".txt.cert")).string(), partition_certificate(c));
  }
  write_file((corpus / "broken.txt").string(), "strip x\n");
  const Run b = run({"bench", corpus.string(), "--alg", "nfdh,portfolio", "-o",
                     d.file("report.csv")});
  CHECK(b.code == 0);
  CHECK(b.out.find("mean_ratio") != std::string::npos);
  std::istringstream csv(read_file(d.file("report.csv")));
  std::string line;
  std::getline(csv, line);
  int rows = 0, failed = 0;
  while (std::getline(csv, line)) {
    ++rows;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string x; std::getline(ss, x, ',');) f.push_back(x);
    if (f.size() < 10 || f[9] != "ok") {
      ++failed;
      continue;
    }
    const int oracle_h = std::stoi(f[6]);
    CHECK((oracle_h == 2 || oracle_h >= 3));
    CHECK(std::stod(f[5]) <= 3.0);
  }
  CHECK(rows == 22);
  CHECK(failed == 2);  // the broken file, once per algorithm
  // Deterministic ordering.
  const Run again = run({"bench", corpus.string(), "--alg", "nfdh,portfolio", "--threads", "1"});
  std::string stable = read_file(d.file("report.csv"));
  auto strip_times = [](std::string s) {
    return std::regex_replace(s, std::regex(",[0-9.]+,([^,\n]*)\n"), ",T,$1\n");
  };
  CHECK(strip_times(again.out) == strip_times(stable));
}

TEST_CASE("verify accepts everything solve writes") {
  TempDir d;
  std::mt19937_64 rng(51);
  for (int t = 0; t < 12; ++t) {
    const Instance inst = oracle::random_instance(rng, 2 + t % 11, 8 + t, 5 + t);
    const std::string in = d.file("f" + std::to_string(t) + ".txt", serialize_instance(inst));
    for (const std::string alg : {"nfdh", "pptas", "three-halves", "portfolio"}) {
      const std::string sol = d.file("f" + std::to_string(t) + alg + ".sol");
      REQUIRE(run({"solve", in, "--alg", alg, "-o", sol, "--emit-cuts"}).code == 0);
      CHECK(run({"verify", in, sol}).code == 0);
    }
  }
}
