#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "frobenius/cli.hpp"

using frobenius::cli::RunConfig;

int main(int argc, char** argv) {
  CLI::App app{"Frobenius manifolds of A_n singularities and the open Toda prepotential"};
  app.set_version_flag("--version", FROBENIUS_FORGE_VERSION);
  app.require_subcommand(1);

  std::string type;
  int rank = 0;
  std::string seed;
  int samples = 0;
  std::vector<std::string> tols;
  std::string output;
  std::string config_path;
  std::string format;
  std::string provider;
  std::string V;
  int max_rank = 0;
  bool no_richardson = false;
  int fd_samples = 0;

  std::vector<CLI::Option*> opts;
  auto common = [&](CLI::App* sub) {
    opts.push_back(sub->add_option("--type", type, "Lie type (A, D, E)"));
    opts.push_back(sub->add_option("--rank", rank, "rank n"));
    opts.push_back(sub->add_option("--seed", seed, "64-bit seed, decimal or 0x hex"));
    opts.push_back(sub->add_option("--samples", samples, "number of sample points"));
    opts.push_back(sub->add_option("--tol", tols, "tolerance name=value, or a bare value for the primary one"));
    opts.push_back(sub->add_option("--output", output, "write the report to this file"));
    opts.push_back(sub->add_option("--format", format, "json or text"));
    opts.push_back(sub->add_option("--max-rank", max_rank, "largest rank the exact pipeline accepts"));
    opts.push_back(sub->add_option("--fd-samples", fd_samples, "points for the multiprecision FD oracle"));
    opts.push_back(sub->add_flag("--no-richardson", no_richardson, "plain central differences"));
    opts.push_back(sub->add_option("--config", config_path, "JSON config file; flags override it"));
  };
  for (const auto& name : frobenius::cli::commands()) {
    auto* sub = app.add_subcommand(name);
    common(sub);
    if (name == "esk-check") {
      opts.push_back(sub->add_option("--provider", provider, "toda or saito"));
      opts.push_back(sub->add_option("--V", V, "euler, unit or custom:v1,...,vn"));
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return frobenius::cli::kUsage;
  }

  RunConfig config;
  CLI::App* sub = app.get_subcommands().front();
  config.command = sub->get_name();
  auto given = [&](const char* flag) { return sub->get_option_no_throw(flag) && sub->get_option(flag)->count() > 0; };
  try {
    if (given("--config")) {
      frobenius::cli::load_config_file(config, config_path);
      config.command = sub->get_name();
    }
    if (given("--type")) config.lie_type = type;
    if (given("--rank")) config.rank = rank;
    if (given("--seed")) config.seed = frobenius::cli::parse_seed(seed);
    if (given("--samples")) config.samples = samples;
    if (given("--format")) config.format = format;
    if (given("--output")) config.output = output;
    if (given("--max-rank")) config.max_rank = max_rank;
    if (given("--provider")) config.provider = provider;
    if (given("--V")) config.V = V;
    if (given("--fd-samples")) config.fd_samples = fd_samples;
    if (given("--no-richardson")) config.richardson = false;
    for (const auto& t : tols) frobenius::cli::apply_tolerance(config, t);
  } catch (const frobenius::cli::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return frobenius::cli::kUsage;
  }
  return frobenius::cli::run(config, std::cout, std::cerr);
}
