#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path& workdir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "lcc_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run(const std::string& args) {
  const std::string cmd = std::string(LCC_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Runs the command twice into separate files and returns both outputs.
std::pair<std::string, std::string> twice(const std::string& args, const std::string& tag) {
  const fs::path a = workdir() / (tag + "_a.json");
  const fs::path b = workdir() / (tag + "_b.json");
  REQUIRE(run(args + " --out " + a.string()) == 0);
  REQUIRE(run(args + " --out " + b.string()) == 0);
  return {slurp(a), slurp(b)};
}

std::string corpus_dir() {
  static const std::string dir = [] {
    const fs::path d = workdir() / "corpus";
    REQUIRE(run("gen --kind corpus --count 4 --n-max 9 --seed 3 --out " + d.string()) == 0);
    return d.string();
  }();
  return dir;
}

std::string instance() { return corpus_dir() + "/inst_0002.json"; }

}  // namespace

TEST_CASE("every solver subcommand is byte-identical across runs") {
  const std::string in = " --input " + instance();
  const std::vector<std::pair<std::string, std::string>> commands{
      {"kcenter" + in, "kcenter"},
      {"kcenter --linear-scan" + in, "kcenter_linear"},
      {"kmedian-dp --seed 4" + in, "dp"},
      {"kmedian-dp --exact --reps 3" + in, "dp_exact"},
      {"kmedian-lp --seed 4" + in, "lp"},
      {"kmedian-lp --mode eps-switch --eps 0.5" + in, "lp_eps"},
      {"oracle --objective kmedian" + in, "oracle"},
      {"embed-dump --seed 2" + in, "embed"},
      {"gap-demo --k 3 --m 2 --d 100", "gap"},
      {"sweep --corpus " + corpus_dir() + " --algorithms kcenter,kmedian-dp,kmedian-lp:k+1 --jobs 2", "sweep"},
      {"sweep --chain --chain-initial 6 --chain-step 2 --chain-steps 3", "chain"},
  };
  for (const auto& [args, tag] : commands) {
    CAPTURE(args);
    const auto [a, b] = twice(args, tag);
    CHECK(!a.empty());
    CHECK(a == b);
    CHECK(nlohmann::json::accept(a));
  }
}

TEST_CASE("the seed comes from the environment when not given") {
  const std::string in = " --input " + instance();
  const auto [a, b] = twice("kmedian-dp --seed 1" + in, "seed_explicit");
  const fs::path c = workdir() / "seed_env.json";
  REQUIRE(run("kmedian-dp" + in + " --out " + c.string()) == 0);
  CHECK(slurp(c) == a);
  const std::string env = "LCC_SEED=1 ";
  const std::string cmd = env + LCC_CLI_PATH + " kmedian-dp" + in + " --out " + (workdir() / "seed_env2.json").string();
  REQUIRE(std::system(cmd.c_str()) == 0);
  CHECK(slurp(workdir() / "seed_env2.json") == a);
}

TEST_CASE("gap demo report") {
  const auto [a, b] = twice("gap-demo --k 3 --m 2 --d 100", "gap_fields");
  const auto j = nlohmann::json::parse(a);
  CHECK(j.contains("witness_switching"));
  CHECK(j.dump().find("\"3\"") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run("kcenter --input " + instance() + " --radius 0.000001") == 2);
  CHECK(run("kcenter --input /nonexistent.json") != 0);
  const fs::path bad = workdir() / "bad.json";
  std::ofstream(bad) << "{ \"points\": [[0]], ";
  CHECK(run("kcenter --input " + bad.string()) == 1);
  CHECK(run("no-such-command") != 0);
  CHECK(run("gen --kind intro --out " + (workdir() / "intro.json").string()) == 0);
  CHECK(run("kcenter --table --input " + (workdir() / "intro.json").string()) == 0);
}
