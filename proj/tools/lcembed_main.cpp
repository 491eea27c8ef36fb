#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <Eigen/Core>

#include "lcembed/json_io.hpp"

namespace fs = std::filesystem;

namespace {

int load_config(const std::string& path, lcembed::io::JobConfig* out) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open config \"" << path << "\"\n";
    return 1;
  }
  lcembed::io::json j;
  try {
    in >> j;
  } catch (const lcembed::io::json::parse_error& e) {
    std::cerr << "error: config is not valid JSON: " << e.what() << "\n";
    return 1;
  }
  try {
    *out = lcembed::io::job_from_json(j, fs::path(path).parent_path().string());
  } catch (const lcembed::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

int write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write \"" << path << "\"\n";
    return 1;
  }
  out << content;
  return out.good() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  Eigen::setNbThreads(lcembed::thread_budget());

  CLI::App app{"Laplace-Carleson embedding and Hankel operator certificates"};
  app.require_subcommand(1);

  std::string config_path, out_path, csv_dir;

  auto* run = app.add_subcommand("run", "run the analyses in a job config");
  run->add_option("--config", config_path, "job config JSON")->required();
  run->add_option("--out", out_path,
                  "report destination (default: config output entry or stdout)");
  run->add_option("--csv-dir", csv_dir, "directory for convergence tables");

  auto* validate =
      app.add_subcommand("validate", "parse and validate a job config");
  validate->add_option("--config", config_path, "job config JSON")->required();

  auto* presets = app.add_subcommand("presets", "preset utilities");
  auto* presets_list =
      presets->add_subcommand("list", "list base-measure presets");
  presets->require_subcommand(1);
  (void)presets_list;

  CLI11_PARSE(app, argc, argv);

  if (presets->parsed()) {
    for (const auto& [name, desc] : lcembed::io::preset_descriptions())
      std::printf("%-14s %s\n", name.c_str(), desc.c_str());
    return 0;
  }

  lcembed::io::JobConfig config;
  if (int rc = load_config(config_path, &config)) return rc;

  if (validate->parsed()) {
    std::printf("ok: %zu analyses\n", config.analyses.size());
    return 0;
  }

  lcembed::io::RunOutcome outcome;
  try {
    outcome = lcembed::io::run_job(config);
  } catch (const lcembed::HypothesisError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  const std::string rendered = lcembed::io::render_report(outcome.report);
  const std::string dest = out_path.empty() ? config.output_path : out_path;
  if (dest.empty()) {
    std::fputs(rendered.c_str(), stdout);
  } else if (int rc = write_file(dest, rendered)) {
    return rc;
  }

  if (!csv_dir.empty() && !outcome.csv_tables.empty()) {
    std::error_code ec;
    fs::create_directories(csv_dir, ec);
    if (ec) {
      std::cerr << "error: cannot create \"" << csv_dir << "\"\n";
      return 1;
    }
    for (const auto& [name, content] : outcome.csv_tables)
      if (int rc = write_file((fs::path(csv_dir) / name).string(), content))
        return rc;
  }
  return outcome.exit_code;
}
