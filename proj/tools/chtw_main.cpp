#include <iostream>

#include <CLI11.hpp>

#include "chtw/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Simulate CHTW-systems: spatially distributed Petri nets"};
  app.require_subcommand(1);

  std::string model;
  auto* validate = app.add_subcommand("validate", "Parse and validate a model");
  validate->add_option("model", model, "Model file (.chtw)")->required();

  chtw::cli::RunCommand run_options;
  auto* run = app.add_subcommand("run", "Run a model and write trace.csv and summary.json");
  run->add_option("model", model, "Model file (.chtw)")->required();
  run->add_option("--steps", run_options.steps, "Number of steps")->required();
  run->add_flag("--strict", run_options.strict, "Exit 3 when a mark goes negative");
  run->add_option("--sample-every", run_options.sample_every, "Record every K-th state")
      ->check(CLI::PositiveNumber);
  run->add_option("--out", run_options.out_dir, "Output directory");

  std::optional<std::filesystem::path> out_file;
  std::string out_text;
  auto* matrices = app.add_subcommand("matrices", "Export connectivity, uptake and W matrices as JSON");
  matrices->add_option("model", model, "Model file (.chtw)")->required();
  matrices->add_option("--out", out_text, "Output file (default: stdout)");

  std::string trace;
  std::string brane;
  std::uint64_t step = 0;
  auto* plotdata = app.add_subcommand("plotdata", "Write gnuplot-ready rows for one brane at one step");
  plotdata->add_option("trace", trace, "trace.csv written by run")->required();
  plotdata->add_option("--brane", brane, "C-brane id")->required();
  plotdata->add_option("--step", step, "Step")->required();
  plotdata->add_option("--out", out_text, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e) == 0 ? chtw::cli::kOk : chtw::cli::kIoError;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return chtw::cli::kIoError;
  }
  if (!out_text.empty()) out_file = out_text;

  if (*validate) return chtw::cli::cmd_validate(model, std::cerr);
  if (*run) return chtw::cli::cmd_run(model, run_options, std::cerr);
  if (*matrices) return chtw::cli::cmd_matrices(model, out_file, std::cout, std::cerr);
  return chtw::cli::cmd_plotdata(trace, brane, step, out_file, std::cout, std::cerr);
}
