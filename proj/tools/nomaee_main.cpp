// Command-line front end: simulate | sweep | oracle-check.

#include <CLI11.hpp>
#include <string>
#include <vector>

#include "nomaee/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Energy-efficiency simulator for massive-MIMO NOMA downlink power allocation"};
  app.require_subcommand(1);

  nomaee::RunSpec spec;
  std::string format = "csv";
  std::string axis = "pt";
  std::string values_csv;
  std::uint64_t seed = 0;
  bool seed_set = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", spec.config_path, "config file (key = value lines)");
    sub->add_option("--out", spec.out_path, "output path (default: stdout)");
    sub->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", seed, "RNG seed (overrides config)")->each([&](const std::string&) {
      seed_set = true;
    });
    sub->add_option("--trials", spec.trials, "number of Monte-Carlo trials")
        ->check(CLI::PositiveNumber);
    sub->add_option("--set", spec.overrides, "config override key=value (repeatable)");
  };

  CLI::App* simulate = app.add_subcommand("simulate", "per-trial rows for all three allocators");
  add_common(simulate);

  CLI::App* sweep = app.add_subcommand("sweep", "aggregate a parameter sweep over matched seeds");
  add_common(sweep);
  sweep->add_option("--axis", axis, "pc|m|pt|rt")->check(CLI::IsMember({"pc", "m", "pt", "rt"}));
  sweep->add_option("--values", values_csv, "comma-separated axis values");

  CLI::App* oracle = app.add_subcommand("oracle-check", "solver vs brute-force grid optimum");
  add_common(oracle);

  CLI11_PARSE(app, argc, argv);

  if (simulate->parsed()) spec.command = nomaee::Command::Simulate;
  if (sweep->parsed()) spec.command = nomaee::Command::Sweep;
  if (oracle->parsed()) spec.command = nomaee::Command::OracleCheck;
  spec.format = (format == "json") ? nomaee::OutputFormat::Json : nomaee::OutputFormat::Csv;
  if (seed_set) spec.seed = seed;

  try {
    spec.axis = nomaee::parse_axis(axis);
    if (!values_csv.empty()) {
      std::size_t pos = 0;
      while (pos < values_csv.size()) {
        std::size_t comma = values_csv.find(',', pos);
        if (comma == std::string::npos) comma = values_csv.size();
        spec.axis_values.push_back(std::stod(values_csv.substr(pos, comma - pos)));
        pos = comma + 1;
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  return nomaee::run(spec);
}
