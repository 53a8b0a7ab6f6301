#include <doctest.h>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "wsnloc/csv_io.hpp"
#include "wsnloc/experiment.hpp"

namespace fs = std::filesystem;
using namespace wsnloc;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "wsnloc");
  std::vector<const char*> argv;
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("wsnloc_cli_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::size_t lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

} // namespace

TEST_CASE("generate writes a lattice and is reproducible") {
  TempDir dir("generate");
  write_text_file(dir.file("grid.ini"),
                  "[topology]\nkind = grid\nn = 100\nplacement_noise = 0\n[network]\nradio_range = 2\n");
  const Run a = invoke({"generate", "--config", dir.file("grid.ini"), "--out", dir.file("a"), "--seed", "3"});
  REQUIRE(a.code == 0);
  CHECK(a.out.find("average connectivity") != std::string::npos);
  const NodePositions p = parse_positions_csv(read_text_file(dir.file("a/positions.csv")));
  CHECK(p.size() == 100);
  for (std::size_t i = 0; i < p.size(); ++i) {
    CHECK(p.coords[i].x == doctest::Approx(static_cast<double>(i % 10) * 10.0 / 9.0));
    CHECK(p.coords[i].y == doctest::Approx(static_cast<double>(i / 10) * 10.0 / 9.0));
  }

  invoke({"generate", "--config", dir.file("grid.ini"), "--out", dir.file("b"), "--seed", "3"});
  CHECK(read_text_file(dir.file("a/positions.csv")) == read_text_file(dir.file("b/positions.csv")));
  CHECK(read_text_file(dir.file("a/edges.csv")) == read_text_file(dir.file("b/edges.csv")));
}

TEST_CASE("generate rejects a non-square grid") {
  TempDir dir("badgrid");
  write_text_file(dir.file("bad.ini"), "[topology]\nkind = grid\nn = 10\n");
  const Run r = invoke({"generate", "--config", dir.file("bad.ini"), "--out", dir.file("o")});
  CHECK(r.code == cli::kExitUsage);
  CHECK(r.err.find("perfect-square") != std::string::npos);
}

TEST_CASE("usage errors exit with 1") {
  CHECK(invoke({}).code == cli::kExitUsage);
  CHECK(invoke({"teleport"}).code == cli::kExitUsage);
  CHECK(invoke({"localize", "--algorithm", "magic"}).code == cli::kExitUsage);
  CHECK(invoke({"localize"}).code == cli::kExitUsage);
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("localize from files") {
  TempDir dir("localize");
  write_text_file(dir.file("net.ini"), "[network]\nradio_range = 2.2\nanchors = 10\nseed = 8\n");
  REQUIRE(invoke({"generate", "--config", dir.file("net.ini"), "--out", dir.file("net")}).code == 0);

  SUBCASE("both algorithms with truth") {
    const Run r = invoke({"localize", "--edges", dir.file("net/edges.csv"), "--anchors",
                          dir.file("net/positions.csv"), "--truth", dir.file("net/positions.csv"),
                          "--radio-range", "2.2", "--out", dir.file("loc"), "--diagnostics"});
    REQUIRE(r.code == 0);
    CHECK(fs::exists(dir.file("loc/estimates_mdsmap.csv")));
    CHECK(fs::exists(dir.file("loc/estimates_imds.csv")));
    CHECK(fs::exists(dir.file("loc/spectrum_imds.csv")));
    CHECK(fs::exists(dir.file("loc/distances_mdsmap.csv")));
    const std::string report = read_text_file(dir.file("loc/error_report.csv"));
    CHECK(lines(report) == 3);
    CHECK(report.find("mdsmap,") != std::string::npos);
    CHECK(report.find("imds,") != std::string::npos);
    CHECK(report.find("unavailable") == std::string::npos);
    const NodePositions est = parse_positions_csv(read_text_file(dir.file("loc/estimates_imds.csv")));
    CHECK(est.size() == 100);
    CHECK(est.anchor_ids.size() == 10);
  }
  SUBCASE("truth omitted") {
    const Run r = invoke({"localize", "--edges", dir.file("net/edges.csv"), "--anchors",
                          dir.file("net/positions.csv"), "--radio-range", "2.2", "--algorithm",
                          "imds", "--out", dir.file("loc")});
    REQUIRE(r.code == 0);
    CHECK(fs::exists(dir.file("loc/estimates_imds.csv")));
    CHECK_FALSE(fs::exists(dir.file("loc/estimates_mdsmap.csv")));
    CHECK(read_text_file(dir.file("loc/error_report.csv")).find("imds,unavailable") != std::string::npos);
  }
  SUBCASE("too few anchors") {
    std::string pos = read_text_file(dir.file("net/positions.csv"));
    NodePositions p = parse_positions_csv(pos);
    p.anchor_ids.resize(2);
    write_text_file(dir.file("two.csv"), positions_csv(p));
    const Run r = invoke({"localize", "--edges", dir.file("net/edges.csv"), "--anchors",
                          dir.file("two.csv"), "--radio-range", "2.2", "--out", dir.file("loc")});
    CHECK(r.code == cli::kExitUsage);
  }
  SUBCASE("disconnected graph") {
    write_text_file(dir.file("split.csv"), "i,j,distance\n0,1,1\n2,3,1\n");
    NodePositions p;
    p.coords = {{0, 0}, {1, 0}, {5, 5}, {6, 5}};
    p.anchor_ids = {0, 1, 2};
    write_text_file(dir.file("anc.csv"), positions_csv(p));
    const Run r = invoke({"localize", "--edges", dir.file("split.csv"), "--anchors",
                          dir.file("anc.csv"), "--radio-range", "2", "--out", dir.file("loc")});
    CHECK(r.code == cli::kExitRuntime);
  }
}

TEST_CASE("localize a fully connected network from a config") {
  TempDir dir("complete");
  write_text_file(dir.file("c.ini"), "[network]\nradio_range = 15\nrange_error = 0\nanchors = 10\n");
  const Run r = invoke({"localize", "--config", dir.file("c.ini"), "--out", dir.file("o")});
  REQUIRE(r.code == 0);
  const std::string report = read_text_file(dir.file("o/error_report.csv"));
  for (const char* alg : {"mdsmap,", "imds,"}) {
    const auto pos = report.find(alg);
    REQUIRE(pos != std::string::npos);
    const auto start = pos + std::string(alg).size();
    const double err = parse_double(report.substr(start, report.find(',', start) - start));
    CHECK(err < 0.1);
  }
}

TEST_CASE("experiment then plot") {
  TempDir dir("experiment");
  write_text_file(dir.file("sweep.ini"),
                  "[topologies]\nvalues = random\n[anchors]\nvalues = 10\n"
                  "[radio_range]\nvalues = 1.85, 2.2, 2.9\n[range_error]\nvalues = 0\n[run]\ntrials = 2\n");
  const Run e = invoke({"experiment", "--config", dir.file("sweep.ini"), "--out", dir.file("o")});
  REQUIRE(e.code == 0);
  CHECK(e.out.find("[3/3]") != std::string::npos);
  CHECK(e.out.find("summary") != std::string::npos);
  CHECK(lines(read_text_file(dir.file("o/results.csv"))) == 4);

  const Run again = invoke({"experiment", "--config", dir.file("sweep.ini"), "--out", dir.file("o2")});
  REQUIRE(again.code == 0);
  CHECK(read_text_file(dir.file("o/results.csv")) == read_text_file(dir.file("o2/results.csv")));

  const Run p = invoke({"plot", "--input", dir.file("o/results.csv"), "--out", dir.file("fig"),
                        "--figure", "error-vs-connectivity"});
  REQUIRE(p.code == 0);
  const std::string svg = read_text_file(dir.file("fig/error-vs-connectivity_random.svg"));
  CHECK(svg.find("MDS-MAP") != std::string::npos);
  CHECK(svg.find("IMDS") != std::string::npos);

  write_text_file(dir.file("empty.csv"), "");
  CHECK(invoke({"plot", "--input", dir.file("empty.csv"), "--out", dir.file("fig")}).code != 0);
  write_text_file(dir.file("header.csv"),
                  "topology,anchors,R,range_error,connectivity_mean,err_mdsmap_mean,err_mdsmap_std,"
                  "err_imds_mean,err_imds_std,trials\n");
  CHECK(invoke({"plot", "--input", dir.file("header.csv"), "--out", dir.file("fig")}).code != 0);
}

TEST_CASE("default experiment covers the 360-cell grid") {
  TempDir dir("default");
  const Run e = invoke({"experiment", "--trials", "1", "--out", dir.file("o")});
  REQUIRE(e.code == 0);
  CHECK(lines(read_text_file(dir.file("o/results.csv"))) == 361);
}
