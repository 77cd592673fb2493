#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "nsvosa/error.hpp"
#include "suite.hpp"

using namespace nsvosa;

int main(int argc, char** argv) {
  CLI::App app{"Checks Neveu-Schwarz vertex operator superalgebra identities exactly."};
  app.set_version_flag("--version", "nsvosa-check 0.1");

  std::vector<std::string> checks;
  long window = 0;
  std::vector<std::string> tuples;
  std::string rst, config, format, load, dump;
  int max_weight = 0, generators = 0, k_limit = 0;
  bool fault = false, list = false;

  app.add_option("--check", checks, "Check ids or prefix:* patterns (repeatable, comma separated)")->delimiter(',');
  app.add_option("--window", window, "Symmetric exponent window N");
  app.add_option("--max-weight", max_weight, "Weight truncation of the free field, doubled (6 keeps weights up to 3)");
  app.add_option("--generators", generators, "Grassmann generators available to coefficients");
  app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--k-limit", k_limit, "Largest k tried by the weak checks");
  app.add_option("--rst-bounds", rst, "Denominator exponent bounds for rational reconstruction: n or r,s,t");
  app.add_flag("--fault-inject", fault, "Corrupt every suite's input so failures can be observed");
  app.add_option("--config", config, "File of key=value lines; command-line flags win");
  app.add_option("--load", load, "Read algebra data instead of building the free field");
  app.add_option("--dump", dump, "Write the algebra data used");
  app.add_option("--tuple", tuples, "u;v;w;v' basis labels for the weak and rational checks (repeatable)");
  app.add_flag("--list", list, "Print the check ids and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (list) {
      for (const auto& id : suite::check_ids()) std::cout << id << "\n";
      return 0;
    }
    suite::SuiteConfig cfg;
    if (!config.empty()) {
      std::ifstream in(config);
      if (!in) throw Error(ErrorKind::ConfigError, "config: cannot read " + config);
      std::stringstream ss;
      ss << in.rdbuf();
      cfg = suite::apply_config_file(ss.str(), cfg);
    }
    std::ostringstream cli;
    if (!checks.empty()) {
      cli << "check=";
      for (std::size_t i = 0; i < checks.size(); ++i) cli << (i ? "," : "") << checks[i];
      cli << "\n";
    }
    if (app.count("--window")) cli << "window=" << window << "\n";
    if (app.count("--max-weight")) cli << "max-weight=" << max_weight << "\n";
    if (app.count("--generators")) cli << "generators=" << generators << "\n";
    if (app.count("--k-limit")) cli << "k-limit=" << k_limit << "\n";
    if (app.count("--rst-bounds")) cli << "rst-bounds=" << rst << "\n";
    if (app.count("--format")) cli << "format=" << format << "\n";
    if (fault) cli << "fault-inject=true\n";
    if (app.count("--load")) cli << "load=" << load << "\n";
    if (app.count("--dump")) cli << "dump=" << dump << "\n";
    if (!tuples.empty()) {
      cli << "tuple=";
      for (std::size_t i = 0; i < tuples.size(); ++i) cli << (i ? "|" : "") << tuples[i];
      cli << "\n";
    }
    cfg = suite::apply_config_file(cli.str(), cfg);
    const suite::SuiteReport report = suite::run_suite(cfg);
    std::cout << (cfg.format == "text" ? suite::emit_text(report) : suite::emit_json(report));
    return report.any_failed() ? 1 : 0;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return e.kind() == ErrorKind::ConfigError ? 2 : 1;
  }
}
