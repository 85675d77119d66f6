#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "stacklab/cache.hpp"
#include "stacklab/report.hpp"
#include "test_util.hpp"

using namespace stacklab;

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args, const std::string& stdin_text = "") {
  auto dir = std::filesystem::temp_directory_path() / "stacklab-cli-test";
  std::filesystem::create_directories(dir);
  auto in = dir / "in.txt";
  auto out = dir / "out.txt";
  {
    std::ofstream f(in);
    f << stdin_text;
  }
  std::string cmd = std::string(STACKLAB_CLI_PATH) + " " + args + " < " + in.string() + " > " +
                    out.string() + " 2>&1";
  int status = std::system(cmd.c_str());
  std::ifstream f(out);
  std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  int code = -1;
  if (WIFEXITED(status)) code = WEXITSTATUS(status);
  return {code, text};
}

}  // namespace

TEST_CASE("cli: jones of the unknot") {
  auto r = run_cli("--format pretty --no-cache jones", "PD[O]");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "1\n");
  auto j = run_cli("--no-cache jones", "PD[O]");
  CHECK(j.exit_code == 0);
  CHECK(nlohmann::json::parse(j.output).at("q_coeffs").at("0") == 1);
}

TEST_CASE("cli: stack counts") {
  auto r = run_cli("--no-cache stack --layers +-", testing::kKishinoPd);
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.output);
  CHECK(j.at("classical") == 16);
  CHECK(j.at("virtual") == 8);
  CHECK(j.at("components") == 2);
}

TEST_CASE("cli: epi-count on a free presentation") {
  auto r = run_cli("--no-cache epi-count --degree 5", "< a, b | >");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.output);
  CHECK(j.at("orbit_count") == 57);
  CHECK(j.at("total_epis") == 6840);
}

TEST_CASE("cli: group of the base fixture") {
  auto r = run_cli("--format pretty --no-cache group", testing::kKishinoPd);
  CHECK(r.exit_code == 0);
  CHECK(r.output == "< a | >\n");
}

TEST_CASE("cli: exit codes") {
  CHECK(run_cli("no-such-command").exit_code == 2);
  CHECK(run_cli("--no-cache jones", "PD[X[1,2,3,4]]").exit_code == 1);
  CHECK(run_cli("--no-cache stack --layers +*", "PD[O]").exit_code == 1);
  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("cli: parse round trip through json output") {
  auto r = run_cli("--no-cache parse", testing::kKishinoPd);
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.output);
  auto d = diagram_from_json(j);
  CHECK(d == parse_pd(testing::kKishinoPd));
  CHECK(j.at("writhe") == 0);
}

TEST_CASE("cli: report output is byte-identical across runs in deterministic mode") {
  auto dir = std::filesystem::temp_directory_path() / "stacklab-report-cache";
  std::filesystem::remove_all(dir);
  std::string flags = "--cache " + dir.string() + " report --no-timings";
  auto cold = run_cli(flags);
  auto warm = run_cli(flags);
  REQUIRE(cold.exit_code == 0);
  REQUIRE(warm.exit_code == 0);
  CHECK(cold.output == warm.output);
  auto j = nlohmann::json::parse(cold.output);
  CHECK(j.at("summary").at("cells") == 37);
  CHECK(j.at("summary").at("matched") == 33);
  CHECK(j.at("summary").at("mismatched").size() == 4);
}

TEST_CASE("cache: cold and warm runs agree with uncached") {
  auto dir = std::filesystem::temp_directory_path() / "stacklab-cache-test";
  std::filesystem::remove_all(dir);
  auto stacked = build_stack(parse_pd(testing::kKishinoPd), parse_stack_sequence("+-"));

  ReportOptions uncached;
  uncached.pipeline.threads = 1;
  auto a = stack_invariants_cached(stacked, uncached);

  ReportOptions cached = uncached;
  cached.cache = Cache(dir);
  auto b = stack_invariants_cached(stacked, cached);  // cold: computes and stores
  auto c = stack_invariants_cached(stacked, cached);  // warm: reads back
  CHECK(a == b);
  CHECK(a == c);
  CHECK(!std::filesystem::is_empty(dir));

  // The key is content-addressed: relabeling the diagram hits the same entry.
  std::map<EdgeId, EdgeId> shift;
  for (auto& [e, ends] : detail::edge_index(stacked)) shift[e] = e + 500;
  auto d = stack_invariants_cached(relabel_edges(stacked, shift), cached);
  CHECK(a == d);
}
