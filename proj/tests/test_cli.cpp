#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + std::string(FAIRDIV_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = ::pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("fairdiv-cli-" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

const TempDir& tmp() {
  static TempDir dir;
  return dir;
}

std::string gen(const std::string& kind, const std::string& extra = "") {
  const auto path = tmp() / (kind + "_" + std::to_string(std::hash<std::string>{}(extra)) + ".json");
  REQUIRE(run("gen --kind " + kind + " " + extra + " --out " + path).code == 0);
  return path;
}

}  // namespace

TEST_CASE("gen writes the named constructions") {
  auto sep = Json::parse(slurp(gen("separation3")));
  CHECK(sep["n"] == 3);
  CHECK(sep["m"] == 6);
  auto stars = Json::parse(slurp(gen("stars", "--n 3")));
  CHECK(stars["m"] == 5);
  CHECK(run("gen --kind no-such-kind").code == 2);
}

TEST_CASE("gen is deterministic in the seed") {
  const auto a = run("gen --kind random-bivalued --n 3 --m 6 --seed 7");
  const auto b = run("gen --kind random-bivalued --n 3 --m 6 --seed 7");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK_FALSE(a.out.empty());
  const auto c = run("gen --kind random-bivalued --n 3 --m 6 --seed 8");
  CHECK(c.out != a.out);
}

TEST_CASE("solve maf reproduces the golden trace") {
  const auto inst = gen("table1");
  const auto trace = tmp() / "trace.txt";
  const auto r = run("solve --algo maf --in " + inst + " --trace-file " + trace);
  REQUIRE(r.code == 0);
  CHECK(slurp(trace) == slurp(fs::path(FAIRDIV_GOLDEN_DIR) / "table1_trace.txt"));
  const auto alloc = Json::parse(r.out);
  CHECK(alloc["bundles"].size() == 4);
}

TEST_CASE("solve dispatch and class errors") {
  const auto one = tmp() / "one.json";
  spit(one, R"({"n": 1, "m": 3, "valuations": [{"type": "pair_demand", "values": [1, 2, "5/2"]}]})");
  const auto r = run("solve --algo rrr --in " + one);
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["bundles"] == Json::parse("[[0,1,2]]"));

  CHECK(run("solve --algo maf --in " + one).code == 2);
  CHECK(run("solve --algo ccg --in " + one).code == 2);
  CHECK(run("solve --algo xyz --in " + one).code == 2);

  // v(S) = 1 iff S contains {0,1} or {2,3}: not MMS-feasible.
  Json ones = Json::array();
  for (int s = 0; s < 16; ++s) {
    if ((s & 3) == 3 || (s & 12) == 12) ones.push_back(s);
  }
  Json bad = {{"n", 2}, {"m", 4}, {"valuations", Json::array()}};
  for (int i = 0; i < 2; ++i) bad["valuations"].push_back({{"type", "binary_table"}, {"ones", ones}});
  const auto bad_path = tmp() / "infeasible.json";
  spit(bad_path, bad.dump());
  CHECK(run("solve --algo ccg --in " + bad_path).code == 3);
  CHECK(run("check --notion feasible --in " + bad_path).code == 1);

  const auto feasible = gen("random-binary-mms-feasible", "--n 3 --m 5 --seed 2");
  const auto ok = run("solve --algo ccg --in " + feasible);
  REQUIRE(ok.code == 0);
  const auto alloc = tmp() / "ccg_alloc.json";
  spit(alloc, ok.out);
  CHECK(run("check --notion pmms --in " + feasible + " --alloc " + alloc).code == 0);
}

TEST_CASE("check exit codes") {
  const auto sep = gen("separation3");
  const auto balanced = tmp() / "balanced.json";
  spit(balanced, R"({"bundles": [[0, 1], [2, 3], [4, 5]]})");
  const auto r = run("check --notion pmms --in " + sep + " --alloc " + balanced);
  CHECK(r.code == 1);
  const auto report = Json::parse(r.out);
  CHECK(report["holds"] == false);
  CHECK(report["violations"][0].contains("partition"));

  const auto ex = gen("pmms-not-efx");
  const auto x = tmp() / "ex_alloc.json";
  spit(x, R"({"bundles": [[0], [1, 2]]})");
  CHECK(run("check --notion pmms --in " + ex + " --alloc " + x).code == 0);
  CHECK(run("check --notion efx --in " + ex + " --alloc " + x).code == 1);
  CHECK(run("check --notion efx+ --in " + ex + " --alloc " + x).code == 0);
  CHECK(run("check --notion feasible --in " + ex).code == 0);

  const auto overlap = tmp() / "overlap.json";
  spit(overlap, R"({"bundles": [[0], [0, 1, 2]]})");
  CHECK(run("check --notion efx --in " + ex + " --alloc " + overlap).code == 2);
  CHECK(run("check --notion ef1 --in " + ex + " --alloc " + x).code == 2);
}

TEST_CASE("verify claims") {
  const auto sep = gen("separation3");
  const auto none = run("verify --claim no-pmms --in " + sep);
  REQUIRE(none.code == 0);
  const auto v = Json::parse(none.out);
  CHECK(v["scanned"] == 729);
  CHECK(v["found"].is_null());
  CHECK(v["balanced"]["count"] == 90);
  CHECK(v["balanced"]["failing"] == 90);

  const auto mms = Json::parse(run("verify --claim mms-exists --in " + sep).out);
  CHECK_FALSE(mms["found"].is_null());

  const auto mnw = Json::parse(run("verify --claim mnw-not-efx --in " + gen("mnw")).out);
  CHECK(mnw["max_nw"] == 25);
  REQUIRE(mnw["maximizers"].size() == 2);
  for (const auto& x : mnw["maximizers"]) CHECK(x["efx"] == false);

  const auto tri = Json::parse(run("verify --claim triangle-free --in " + sep).out);
  CHECK(tri["triangle"].is_null());
  CHECK(tri["nodes"] == 45);

  CHECK(run("verify --claim no-pmms --in " + sep, "FAIRDIV_BUDGET=10").code == 3);
  CHECK(run("verify --claim bogus --in " + sep).code == 2);
}

TEST_CASE("export-graph") {
  const auto sep = gen("separation3");
  const auto dot = tmp() / "compat.dot";
  REQUIRE(run("export-graph --in " + sep + " --kind compat --dot " + dot).code == 0);
  const auto text = slurp(dot);
  CHECK(text.rfind("graph compat {", 0) == 0);
  CHECK(text.find(" -- ") != std::string::npos);

  const auto feasible = gen("random-binary-mms-feasible", "--n 4 --m 7 --seed 11");
  const auto c = run("export-graph --in " + feasible + " --kind ccg");
  REQUIRE(c.code == 0);
  const std::regex edge("^\\s*(\\d+) -> (\\d+);$");
  std::istringstream in(c.out);
  std::multiset<std::string> sources;
  for (std::string line; std::getline(in, line);) {
    std::smatch mm;
    if (std::regex_match(line, mm, edge)) sources.insert(mm[1]);
  }
  CHECK(sources.size() == 4);
  for (const auto& s : sources) CHECK(sources.count(s) == 1);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run("").code == 2);
  CHECK(run("solve --algo maf").code == 2);
  CHECK(run("check --notion pmms --in /nonexistent/file.json --alloc x").code == 2);
  CHECK(run("--help").code == 0);
}
