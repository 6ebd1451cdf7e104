// Command-line front end: uavcov [flags] <subcommand> [flags]

#include <uavcov/cli/config.hpp>
#include <uavcov/cli/run.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

int main(int argc, char** argv) {
  using namespace uavcov::cli;
  CLI::App app{"UAV corridor coverage: closed forms, quadrature, Monte Carlo, sweeps and heatmaps"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "key=value or JSON config file");

  // flag -> config key
  std::vector<std::pair<std::string, std::string>> flags{
      {"--alpha-deg", "scenario.alpha_deg"}, {"--beta-deg", "scenario.beta_deg"},
      {"--d1", "scenario.d1"},               {"--h1", "scenario.h1"},
      {"--h2", "scenario.h2"},               {"--tau-db", "scenario.tau_db"},
      {"--assoc", "model.assoc"},            {"--beam", "model.beam"},
      {"--nt", "model.nt"},                  {"--pathloss", "model.pathloss"},
      {"--interference", "model.interference"}, {"--samples", "mc.samples"},
      {"--seed", "mc.seed"},                 {"--grid-nx", "grid.nx"},
      {"--grid-nz", "grid.nz"},              {"--out", "output.path"},
      {"--format", "output.format"}};
  std::vector<std::optional<std::string>> values(flags.size());
  for (std::size_t i = 0; i < flags.size(); ++i)
    app.add_option(flags[i].first, values[i], "sets " + flags[i].second);

  std::vector<std::string> sets;
  app.add_option("--set", sets, "arbitrary key=value override (repeatable)");

  const std::vector<std::pair<std::string, std::string>> descriptions{
      {"classify", "print the uptilt case and geometric intermediates"},
      {"analyze", "closed-form outage probability"},
      {"oracle", "quadrature coverage under the configured model"},
      {"mc", "Monte Carlo outage estimate"},
      {"sweep", "outage versus uptilt angle"},
      {"optimize", "golden-section search for the best uptilt"},
      {"heatmap", "SINR field as CSV and PPM"},
      {"validate", "closed form vs quadrature vs Monte Carlo"}};
  for (const auto& [name, desc] : descriptions) app.add_subcommand(name, desc)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  RunConfig cfg;
  try {
    KeyValues file;
    if (!config_path.empty()) file = read_config_file(config_path);
    KeyValues overrides;
    for (const auto& kv : sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw uavcov::ConfigError("--set expects key=value, got '" + kv + "'");
      overrides[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    for (std::size_t i = 0; i < flags.size(); ++i)
      if (values[i]) overrides[flags[i].second] = *values[i];
    cfg = parse_config(file, overrides);
  } catch (const uavcov::Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  return run(app.get_subcommands().front()->get_name(), cfg, std::cout, std::cerr);
}
