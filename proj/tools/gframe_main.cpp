#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gframe/cli.hpp"

int main(int argc, char** argv) {
  using gframe::cli::Command;
  using gframe::cli::RunConfig;

  CLI::App app{"gframe: g-frames and their operator representations"};
  app.require_subcommand(1);

  RunConfig config;
  std::string format = "json";
  std::string input;
  std::string spec;
  std::string perturbed;
  std::string generator;

  auto add_common = [&](CLI::App* sub, bool needs_family) {
    if (needs_family) {
      sub->add_option("--input", input, "family JSON file");
      sub->add_option("--spec", spec, "ensemble spec JSON file or inline JSON");
    }
    sub->add_option("--tol", config.tol, "relative tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--depth", config.depth, "truncation depth")->check(CLI::PositiveNumber);
    sub->add_option("--seed", config.seed, "random seed");
    sub->add_option("--output", config.output_path, "output path, '-' for stdout");
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };

  auto* analyze = app.add_subcommand("analyze", "classify a family, report bounds and dual bounds");
  add_common(analyze, true);
  auto* fit = app.add_subcommand("fit", "fit T with Λ_i = Λ_1 T^{i-1} and check injectivity and decay");
  add_common(fit, true);
  auto* perturb = app.add_subcommand("perturb", "Riesz-sequence perturbation checks");
  add_common(perturb, true);
  perturb->add_option("--perturbed", perturbed, "perturbed family JSON file");
  perturb->add_option("--generator", generator, "JSON with lambda1, t, theta1, mu[, depth]");
  auto* sweep = app.add_subcommand("sweep", "perturbation envelope versus scale");
  add_common(sweep, true);
  sweep->add_option("--points", config.sweep_points, "number of nonzero scales")->check(CLI::PositiveNumber);
  auto* demo = app.add_subcommand("demo", "run the built-in examples");
  add_common(demo, false);

  CLI11_PARSE(app, argc, argv);

  const auto* chosen = app.get_subcommands().front();
  config.command = gframe::cli::command_from_string(chosen->get_name());
  config.format = gframe::cli::format_from_string(format);
  if (!input.empty()) config.input_path = input;
  if (!spec.empty()) config.spec = spec;
  if (!perturbed.empty()) config.perturbed_path = perturbed;
  if (!generator.empty()) config.generator_path = generator;

  return gframe::cli::run(config, std::cout, std::cerr);
}
