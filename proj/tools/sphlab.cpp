#include <CLI11.hpp>
#include <fmt/format.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "sphlab/cli/experiments.hpp"

namespace fs = std::filesystem;
using namespace sphlab;
using namespace sphlab::cli;

namespace {

struct Flags {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  bool fine = false;
};

std::optional<std::string> env(const char* name) {
  const char* v = std::getenv(name);
  if (!v || !*v) return std::nullopt;
  return std::string(v);
}

int env_int(const char* name, const std::string& v) {
  int x = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  require(ec == std::errc() && p == v.data() + v.size(), ErrorKind::config,
          fmt::format("{}: expected an integer, got '{}'", name, v));
  return x;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  require(bool(f), ErrorKind::config, "cannot write '" + p.string() + "'");
  f << text;
  require(bool(f.flush()), ErrorKind::config, "cannot write '" + p.string() + "'");
}

int run(const std::string& tag, const Flags& fl) {
  const auto t0 = std::chrono::steady_clock::now();
  Config cfg;
  RunOptions opt;
  fs::path out;
  Prepared job;
  // validation: nothing is written until this block succeeds
  try {
    if (!fl.config.empty()) cfg = Config::load(fl.config);
    const auto cfg_seed = cfg.get_int("run", "seed", 1);
    const auto cfg_workers = cfg.get_int("run", "workers", default_workers());
    const auto cfg_out = cfg.get_string("run", "out", "sphlab-out/" + tag);
    require(cfg_seed >= 0, ErrorKind::config, "[run] seed must be >= 0");
    opt.seed = fl.seed ? *fl.seed : std::uint64_t(cfg_seed);
    if (fl.workers) opt.workers = *fl.workers;
    else if (auto e = env("SPHLAB_WORKERS")) opt.workers = env_int("SPHLAB_WORKERS", *e);
    else opt.workers = cfg_workers;
    if (!fl.out.empty()) out = fl.out;
    else if (auto e = env("SPHLAB_OUT")) out = *e;
    else out = cfg_out;
    opt.fine = fl.fine;
    job = prepare(tag, cfg, opt);
  } catch (const Error& e) {
    std::cerr << "sphlab " << tag << ": " << e.what() << "\n";
    return exit_code(e.kind());
  }

  nlohmann::json manifest = {{"schema", kManifestSchema},
                             {"experiment", tag},
                             {"version", kVersion},
                             {"libraries", library_versions()},
                             {"config_file", fl.config.empty() ? nlohmann::json(nullptr) : nlohmann::json(fl.config)},
                             {"parameters", job.parameters},
                             {"seed", opt.seed},
                             {"workers", opt.workers},
                             {"fine", opt.fine}};
  auto finish = [&](const std::string& status, const std::string& message) {
    manifest["status"] = status;
    if (!message.empty()) manifest["message"] = message;
    manifest["wall_time"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_file(out / "manifest.json", manifest.dump(2) + "\n");
  };

  try {
    fs::create_directories(out);
  } catch (const fs::filesystem_error& e) {
    std::cerr << "sphlab " << tag << ": cannot create output directory: " << e.what() << "\n";
    return 2;
  }

  try {
    const auto a = job.run();
    write_file(out / "results.csv", a.csv);
    write_file(out / "report.json", a.report.dump(2) + "\n");
    if (a.failure) {
      finish(a.failure == ErrorKind::blow_up ? "failed: blow-up" : "failed", a.message);
      std::cerr << "sphlab " << tag << ": " << a.message << " (partial results written)\n";
      return exit_code(*a.failure);
    }
    finish("ok", "");
    return 0;
  } catch (const Error& e) {
    finish(fmt::format("failed: {}", to_string(e.kind())), e.what());
    std::cerr << "sphlab " << tag << ": " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    finish("failed: internal", e.what());
    std::cerr << "sphlab " << tag << ": internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral experiments for Schrodinger equations on compact manifolds"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1, 1);
  Flags fl;
  std::string chosen;
  for (const auto& tag : experiment_tags()) {
    auto* sub = app.add_subcommand(tag, "run the " + tag + " experiment");
    sub->add_option("--config", fl.config, "INI configuration file")->check(CLI::ExistingFile);
    sub->add_option("--out", fl.out, "output directory");
    sub->add_option("--seed", fl.seed, "random seed");
    sub->add_option("--workers", fl.workers, "worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--fine", fl.fine, "double the quadrature and time resolution");
    sub->callback([&chosen, tag] { chosen = tag; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  try {
    return run(chosen, fl);
  } catch (const std::exception& e) {
    std::cerr << "sphlab: internal error: " << e.what() << "\n";
    return 1;
  }
}
