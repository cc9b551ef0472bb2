#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "forge/errors.hpp"
#include "forge/runner.hpp"

namespace {

bool log_enabled() {
  const char* v = std::getenv("FORGE_LOG");
  return v && *v && std::string(v) != "0";
}

void logf(const char* msg) {
  if (log_enabled()) std::fprintf(stderr, "forge: %s\n", msg);
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw forge::ConfigError("cannot read config file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

forge::RunConfig load(const std::string& config_path, const std::string& out,
                      int jobs, const std::vector<std::string>& overrides) {
  logf(("loading " + config_path).c_str());
  forge::RunConfig cfg = forge::parse_config(slurp(config_path));
  if (!out.empty()) cfg.out_dir = out;
  if (jobs > 0) cfg.jobs = jobs;
  for (const std::string& kv : overrides) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw forge::ConfigError("bad --tol-override, expected key=value: " + kv);
    char* end = nullptr;
    double v = std::strtod(kv.c_str() + eq + 1, &end);
    if (end == kv.c_str() + eq + 1 || *end != '\0' || v <= 0)
      throw forge::ConfigError("bad --tol-override value: " + kv);
    cfg.tolerances[kv.substr(0, eq)] = v;
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"anti-self-dual metric construction toolkit"};
  app.require_subcommand(1);

  std::string config_path, out, example_name;
  int jobs = 0;
  std::vector<std::string> overrides;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* c = sub->add_option("--config", config_path, "JSON config file");
    if (needs_config) c->required();
    sub->add_option("--out", out, "output directory");
    sub->add_option("--jobs", jobs, "worker threads");
    sub->add_option("--tol-override", overrides,
                    "tolerance override key=value (repeatable)");
  };

  auto* sc_validate =
      app.add_subcommand("validate", "check the input data invariants");
  add_common(sc_validate, true);
  auto* sc_metric =
      app.add_subcommand("metric", "evaluate the metric on the config grid");
  add_common(sc_metric, true);
  auto* sc_verify =
      app.add_subcommand("verify", "run the mathematical verification gates");
  add_common(sc_verify, true);
  auto* sc_example =
      app.add_subcommand("example", "write a ready-to-run example config");
  sc_example->add_option("name", example_name, "linear | fubini_study | rational_d2")
      ->required();
  sc_example->add_option("--out", out, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sc_example->parsed())
      return forge::cmd_example(example_name, out.empty() ? "." : out);
    forge::RunConfig cfg = load(config_path, out, jobs, overrides);
    if (sc_validate->parsed()) return forge::cmd_validate(cfg);
    if (sc_metric->parsed()) return forge::cmd_metric(cfg);
    return forge::cmd_verify(cfg);
  } catch (const forge::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const forge::NoConvergence& e) {
    std::fprintf(stderr, "non-convergence: %s\n", e.what());
    return 3;
  } catch (const forge::ResolutionError& e) {
    std::fprintf(stderr, "non-convergence: %s\n", e.what());
    return 3;
  } catch (const forge::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
