#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Experiments for small-amplitude gravity water waves on a periodic domain"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_dir = ".";
  for (const char* name : {"simulate", "dtn-verify", "decay", "strichartz", "normalform", "lifespan"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "flat 'section.key = value' file")->required();
    sub->add_option("--out", out_dir, "output directory");
  }
  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const auto config = gravwave::cli::Config::load(config_path);
    return gravwave::cli::run_command(command, config, out_dir, std::cout);
  } catch (const gravwave::cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
