#include "mmr/script.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

int main(int argc, char** argv) {
  CLI::App app{"Minimal multiplicity of surface maps from session scripts"};
  std::string path = "-";
  mmr::RunOptions options;
  bool as_json = false;
  bool canonical = false;
  app.add_option("script", path, "Script file, or - for stdin");
  app.add_option("--max-cosets", options.max_cosets, "Coset enumeration bound")->check(CLI::PositiveNumber);
  app.add_flag("--json", as_json, "Print reports as a JSON array");
  app.add_flag("--witness", options.witness, "Refine classify verdicts with a simplicial witness");
  app.add_option("--seed", options.seed, "Seed for randomized audits");
  app.add_flag("--canonical", canonical, "Print the parsed script in canonical form and exit");
  CLI11_PARSE(app, argc, argv);

  std::stringstream text;
  if (path == "-") {
    text << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) {
      std::cerr << "cannot open " << path << "\n";
      return 2;
    }
    text << in.rdbuf();
  }

  mmr::SessionScript script;
  try {
    script = mmr::parse_script(text.str());
  } catch (const mmr::Error& e) {
    std::cerr << path << ": " << e.what() << "\n";
    return 2;
  }
  if (canonical) {
    std::cout << mmr::print_script(script);
    return 0;
  }

  const mmr::RunOutput out = mmr::run_script(script, options);
  if (as_json) {
    std::cout << nlohmann::json(out.reports).dump(2) << "\n";
  } else {
    for (const auto& r : out.reports) std::cout << mmr::format_report(r);
  }
  return out.exit_code;
}
