#include "mrfgrid/cli/cli.hpp"

#include <iostream>

#include "mrfgrid/core/errors.hpp"
#include "options.hpp"

namespace mrfgrid {

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Surrogate-grid posterior sampling for Potts and autologistic models", "mrfgrid"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "expand all help");

  struct Entry {
    const char* name;
    const char* help;
    std::unique_ptr<cli::Command> command;
    CLI::App* sub = nullptr;
  };
  Entry entries[] = {
      {"precompute", "build a surrogate grid and write it as JSON", cli::make_precompute()},
      {"simulate", "forward-simulate a label field (and a noisy image)", cli::make_simulate()},
      {"run", "sample the posterior of beta", cli::make_run()},
      {"oracle", "exact normalising constant and moments by enumeration", cli::make_oracle()},
      {"diagnose", "KL divergence, interpolation RMSE or posterior summary", cli::make_diagnose()},
  };
  for (auto& e : entries) {
    e.sub = app.add_subcommand(e.name, e.help);
    e.command->setup(*e.sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    for (auto& e : entries) {
      if (e.sub->parsed()) e.command->run(out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const MismatchError& e) {
    err << "error: " << e.what() << '\n';
    return kExitMismatch;
  } catch (const InfeasibleError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace mrfgrid
