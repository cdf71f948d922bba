#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sphlab/cli/config.hpp"
#include "sphlab/cli/experiments.hpp"

namespace fs = std::filesystem;
using namespace sphlab;
using namespace sphlab::cli;

namespace {

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("sphlab_cli_test_" + std::to_string(::getpid())) / name;
  fs::remove_all(p);
  fs::create_directories(p.parent_path());
  return p;
}

int sh(const std::string& args, const std::string& env = "") {
  const std::string cmd = "env -u SPHLAB_OUT -u SPHLAB_WORKERS " + env + " " + SPHLAB_BIN + " " + args + " >/dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

nlohmann::json json_file(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

fs::path write_ini(const std::string& name, const std::string& text) {
  const auto p = scratch(name);
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST(Config, ParseAndTypes) {
  const auto c = Config::parse_string("[run]\nseed = 7\n[nls]\nT = 0.5\nschedule = 1, 2 ,4\nsave = yes\nname = S3\n");
  EXPECT_EQ(c.get_int("run", "seed", 1), 7);
  EXPECT_EQ(c.get_double("nls", "T", 1), 0.5);
  EXPECT_EQ(c.get_int_list("nls", "schedule", {}), (std::vector<int>{1, 2, 4}));
  EXPECT_TRUE(c.get_bool("nls", "save", false));
  EXPECT_EQ(c.get_string("nls", "name", ""), "S3");
  EXPECT_EQ(c.get_double("nls", "dt", 0.25), 0.25);
  EXPECT_NO_THROW(c.reject_unknown({"run", "nls"}));
  EXPECT_THROW(c.reject_unknown({"run"}), Error);
}

TEST(Config, Rejections) {
  auto kind = [](auto f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::degenerate;
  };
  EXPECT_EQ(kind([] { Config::parse_string("[nls\nT = 1\n"); }), ErrorKind::config);
  EXPECT_EQ(kind([] { Config::parse_string("T = 1\n[nls]\n"); }), ErrorKind::config);
  EXPECT_EQ(kind([] { Config::parse_string("[nls]\nT = 1x\n").get_double("nls", "T", 0); }), ErrorKind::config);
  EXPECT_EQ(kind([] { Config::parse_string("[nls]\nT = nan\n").get_double("nls", "T", 0); }), ErrorKind::config);
  EXPECT_EQ(kind([] { Config::parse_string("[nls]\nn = 2.5\n").get_int("nls", "n", 0); }), ErrorKind::config);
  EXPECT_EQ(kind([] { Config::parse_string("[nls]\nb = maybe\n").get_bool("nls", "b", 0); }), ErrorKind::config);
  EXPECT_EQ(kind([] { Config::parse_string("[nls]\nl = 1,,x\n").get_int_list("nls", "l", {}); }), ErrorKind::config);
  EXPECT_EQ(kind([] {
              const auto c = Config::parse_string("[nls]\nT = 1\nTT = 2\n");
              c.get_double("nls", "T", 0);
              c.reject_unknown({"nls"});
            }),
            ErrorKind::config);
  EXPECT_EQ(kind([] { Config::load("/nonexistent/sphlab.ini"); }), ErrorKind::config);
}

TEST(Experiments, PrepareValidatesWithoutRunning) {
  const RunOptions o;
  for (const auto& tag : experiment_tags()) {
    const auto p = prepare(tag, Config{}, o);
    EXPECT_EQ(p.tag, tag);
    EXPECT_TRUE(p.parameters.is_object());
  }
  const std::vector<std::pair<std::string, std::string>> bad = {
      {"optimality", "[optimality]\narity = 4\n"},
      {"optimality", "[optimality]\nschedule = 8, 4, 16\n"},
      {"projector", "[projector]\nwindow = square\n"},
      {"strichartz", "[strichartz]\nschedule = 1, 3, 4\n"},
      {"strichartz", "[strichartz]\nmanifold = S2xS1\nrho = 1.3\n"},
      {"lattice", "[lattice]\ncounter = lambda\nkappa = 1/0\n"},
      {"lattice", "[lattice]\ncounter = lambda\nn2 = 4\nn3 = 8\n"},
      {"nls", "[nls]\ndt = 2\nT = 1\n"},
      {"nls", "[nls]\nmanifold = torus\n"},
      {"xsb", "[xsb]\nb = 0.5\n"},
      {"inflation", "[inflation]\ndelta = 0.5\n"},
      {"inflation", "[inflation]\nschedule = 1, 2\n"},
      {"nls", "[optimality]\nd = 2\n"},
      {"nls", "[nls]\nalpah = 3\n"},
  };
  for (const auto& [tag, text] : bad) {
    try {
      prepare(tag, Config::parse_string(text), o);
      ADD_FAILURE() << tag << ": " << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::config) << text;
      EXPECT_EQ(exit_code(e.kind()), 2);
    }
  }
  EXPECT_EQ(exit_code(ErrorKind::precision), 3);
  EXPECT_EQ(exit_code(ErrorKind::blow_up), 4);
  EXPECT_EQ(exit_code(ErrorKind::degenerate), 1);
}

TEST(Cli, OutputsAndManifest) {
  const auto out = scratch("outputs");
  ASSERT_EQ(sh("lattice --out " + out.string() + " --workers 1"), 0);
  for (const char* f : {"manifest.json", "results.csv", "report.json"}) EXPECT_TRUE(fs::exists(out / f)) << f;
  const auto m = json_file(out / "manifest.json");
  EXPECT_EQ(m["schema"], "sphlab.manifest/1");
  EXPECT_EQ(m["status"], "ok");
  EXPECT_EQ(m["workers"], 1);
  EXPECT_EQ(m["fine"], false);
  EXPECT_TRUE(m["libraries"].contains("fftw"));
  EXPECT_TRUE(m["parameters"].contains("schedule"));
  EXPECT_GE(m["wall_time"].get<double>(), 0.0);
  const auto r = json_file(out / "report.json");
  EXPECT_EQ(r["schema"], "sphlab.report/1");
  for (const char* k : {"model_exponent", "measured_exponent", "residual", "precision_estimate"}) EXPECT_TRUE(r.contains(k)) << k;
  EXPECT_EQ(slurp(out / "results.csv").substr(0, 6), "N,max_");
}

TEST(Cli, DeterministicAcrossRunsAndWorkers) {
  const auto ini = write_ini("det.ini", "[run]\nseed = 11\n[strichartz]\nschedule = 1, 2, 4, 8\ntrials = 3\n");
  const auto a = scratch("det_a"), b = scratch("det_b"), c = scratch("det_c");
  ASSERT_EQ(sh("strichartz --config " + ini.string() + " --out " + a.string() + " --workers 1"), 0);
  ASSERT_EQ(sh("strichartz --config " + ini.string() + " --out " + b.string() + " --workers 1"), 0);
  ASSERT_EQ(sh("strichartz --config " + ini.string() + " --out " + c.string() + " --workers 3"), 0);
  EXPECT_EQ(slurp(a / "results.csv"), slurp(b / "results.csv"));
  EXPECT_EQ(slurp(a / "results.csv"), slurp(c / "results.csv"));
  EXPECT_EQ(slurp(a / "report.json"), slurp(b / "report.json"));
  const auto d = scratch("det_d");
  ASSERT_EQ(sh("strichartz --config " + ini.string() + " --out " + d.string() + " --seed 12"), 0);
  EXPECT_NE(slurp(a / "results.csv"), slurp(d / "results.csv"));
}

TEST(Cli, MalformedConfigWritesNothing) {
  const auto out = scratch("malformed_out");
  const std::vector<std::string> configs = {"[nls\nT = 1\n", "[nls]\nT = fast\n", "[nls]\nTT = 1\n",
                                            "[bogus]\nx = 1\n", "[run]\nworkers = 0\n", "[nls]\ndt = -1\n"};
  for (size_t k = 0; k < configs.size(); ++k) {
    const auto ini = write_ini("bad" + std::to_string(k) + ".ini", configs[k]);
    EXPECT_EQ(sh("nls --config " + ini.string() + " --out " + out.string()), 2) << configs[k];
    EXPECT_FALSE(fs::exists(out)) << configs[k];
  }
  EXPECT_EQ(sh("nls --config /nonexistent.ini --out " + out.string()), 2);
  EXPECT_EQ(sh("nls --bogus --out " + out.string()), 2);
  EXPECT_EQ(sh("nope"), 2);
  EXPECT_EQ(sh(""), 2);
  EXPECT_EQ(sh("nls --out " + out.string(), "SPHLAB_WORKERS=zero"), 2);
  EXPECT_FALSE(fs::exists(out));
}

TEST(Cli, EnvironmentPrecedence) {
  const auto cfg_out = scratch("prec_cfg"), env_out = scratch("prec_env"), flag_out = scratch("prec_flag");
  const auto ini = write_ini("prec.ini", "[run]\nworkers = 2\nout = " + cfg_out.string() + "\n");
  ASSERT_EQ(sh("lattice --config " + ini.string()), 0);
  EXPECT_EQ(json_file(cfg_out / "manifest.json")["workers"], 2);
  ASSERT_EQ(sh("lattice --config " + ini.string(), "SPHLAB_WORKERS=3 SPHLAB_OUT=" + env_out.string()), 0);
  EXPECT_EQ(json_file(env_out / "manifest.json")["workers"], 3);
  ASSERT_EQ(sh("lattice --config " + ini.string() + " --workers 1 --out " + flag_out.string(),
               "SPHLAB_WORKERS=3 SPHLAB_OUT=" + env_out.string()),
            0);
  EXPECT_EQ(json_file(flag_out / "manifest.json")["workers"], 1);
}

TEST(Cli, FineRunWithinPrecisionEstimate) {
  for (const std::string tag : {"optimality", "nls", "xsb"}) {
    const auto a = scratch("fine_a_" + tag), b = scratch("fine_b_" + tag);
    ASSERT_EQ(sh(tag + " --out " + a.string()), 0);
    ASSERT_EQ(sh(tag + " --fine --out " + b.string()), 0);
    const auto ra = json_file(a / "report.json"), rb = json_file(b / "report.json");
    EXPECT_TRUE(json_file(b / "manifest.json")["fine"].get<bool>());
    const double prec = ra["precision_estimate"];
    EXPECT_GT(prec, 0);
    EXPECT_LE(std::abs(ra["measured_exponent"].get<double>() - rb["measured_exponent"].get<double>()), prec) << tag;
  }
}

TEST(Cli, BlowUpFlushesPartialResults) {
  const auto out = scratch("blowup");
  const auto ini = write_ini("blowup.ini", "[nls]\namplitude = 1e200\nT = 0.1\ndt = 0.01\n");
  EXPECT_EQ(sh("nls --config " + ini.string() + " --out " + out.string()), 4);
  const auto m = json_file(out / "manifest.json");
  EXPECT_EQ(m["status"], "failed: blow-up");
  EXPECT_FALSE(m["message"].get<std::string>().empty());
  EXPECT_EQ(json_file(out / "report.json")["status"], "blow-up");
  EXPECT_TRUE(fs::exists(out / "results.csv"));
}

TEST(Cli, OptimalityExampleSlope) {
  const auto ini = write_ini("opt.ini", "[optimality]\nd = 2\narity = 2\nschedule = 8, 16, 32, 64, 128, 256\n");
  const auto out = scratch("opt_out");
  ASSERT_EQ(sh("optimality --config " + ini.string() + " --out " + out.string()), 0);
  const auto r = json_file(out / "report.json");
  EXPECT_EQ(r["model_exponent"], 0.25);
  EXPECT_GE(r["measured_exponent"].get<double>(), 0.20);
  EXPECT_LE(r["measured_exponent"].get<double>(), 0.30);
  const auto csv = slurp(out / "results.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "p,q,x,ratio,model,under_resolved");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);
}

TEST(Cli, SampleConfigsValidate) {
  for (const auto& e : fs::directory_iterator(SPHLAB_CONFIGS)) {
    const auto name = e.path().stem().string();
    const std::string tag = name == "trilinear" ? "optimality" : name == "inflation_control" ? "inflation" : name;
    const auto c = Config::load(e.path().string());
    // [run] keys belong to the front end
    for (const char* k : {"seed", "workers", "out"}) c.get_string("run", k, "");
    EXPECT_NO_THROW(prepare(tag, c, RunOptions{})) << name;
  }
}
