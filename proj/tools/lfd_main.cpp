#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lfd/export.hpp"
#include "lfd/pipeline.hpp"

namespace {

int run_build(const lfd::RunConfig& config, const std::string& out) {
  const lfd::RunResult result = lfd::run_pipeline(config);
  lfd::write_artifacts(result, out);
  std::cout << lfd::report_text(result);
  std::cout << "artifacts written to " << out << '\n';
  return 0;
}

int run_verify(const lfd::RunConfig& config, const std::string& out) {
  const lfd::RunResult result = lfd::run_pipeline(config);
  const auto checks = lfd::verify_run(result);
  lfd::write_artifacts(result, out);
  bool ok = true;
  for (const auto& c : checks) {
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) std::cout << " (" << c.detail << ')';
    std::cout << '\n';
    ok = ok && c.pass;
  }
  std::cout << (ok ? "all checks passed" : "some checks failed") << '\n';
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fundamental domains for Lorentz space forms of the universal cover of SU(1,1)"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_dir;

  auto* build = app.add_subcommand("build", "build the domain and write all artifacts");
  auto* verify = app.add_subcommand("verify", "build, then run every invariant and sampling check");
  auto* figures = app.add_subcommand("figures", "write only the X_u strip and star polygon figures");
  for (auto* sub : {build, verify, figures}) {
    sub->add_option("config", config_path, "run configuration (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory (defaults to output_dir from the config)");
  }
  CLI11_PARSE(app, argc, argv);

  try {
    const lfd::RunConfig config = lfd::load_config(config_path);
    const std::string out = out_dir.empty() ? config.output_dir : out_dir;
    if (build->parsed()) return run_build(config, out);
    if (verify->parsed()) return run_verify(config, out);
    lfd::write_figures(config, out);
    std::cout << "figures written to " << out << '\n';
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return 1;
}
