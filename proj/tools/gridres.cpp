#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gridres/job.hpp"

int main(int argc, char** argv) {
  CLI::App app{"gridres: grid polynomial coefficients, Cayley-Bacharach relations, toric residues and line grids"};
  app.require_subcommand(1);
  std::string input_path;
  bool summary = false;
  std::optional<std::uint64_t> budget;
  int pretty = -1;

  for (const auto& name : gridres::subcommands()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--input,-i", input_path, "job document (JSON); '-' reads stdin")->required();
    sub->add_flag("--summary", summary, "print a one-line summary to stderr");
    sub->add_option("--budget", budget, "search node budget");
    sub->add_option("--indent", pretty, "indent the JSON report");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : gridres::exit_invalid;
  }
  const std::string name = app.get_subcommands().front()->get_name();

  nlohmann::json doc;
  try {
    if (input_path == "-") {
      doc = nlohmann::json::parse(std::cin);
    } else {
      std::ifstream in(input_path);
      if (!in) {
        std::cerr << "error: cannot open " << input_path << "\n";
        return gridres::exit_invalid;
      }
      doc = nlohmann::json::parse(in);
    }
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: input is not valid JSON: " << e.what() << "\n";
    return gridres::exit_invalid;
  }

  gridres::JobOutcome out = gridres::run_job(name, doc, {budget});
  if (!out.report) {
    std::cerr << "error: " << out.error << "\n";
    return out.exit_code;
  }
  std::cout << out.report->dump(pretty) << "\n";
  if (summary) std::cerr << out.summary << "\n";
  return out.exit_code;
}
