// fibresum command-line front end.

#include <iostream>

#include "CLI11.hpp"
#include "fibresum/cli.hpp"

using namespace fibresum;
using namespace fibresum::cli;

namespace {

std::vector<BigInt> parse_primes(const std::string& list) {
  std::vector<BigInt> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const auto comma = list.find(',', start);
    const auto item = list.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    out.push_back(parse_bigint(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symplectic fibre-sum invariants: Chern class divisibility and sign enumeration"};
  app.require_subcommand(1);

  std::string config_path, output, primes, link_path, axis_path;
  std::uint64_t seed = 0, cap = 0;
  bool sample = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--output", output, "table or machine")->check(CLI::IsMember({"table", "machine"}));
    sub->add_option("--seed", seed, "seed for projections and sampling");
    sub->add_option("--cap", cap, "maximum number of sign assignments");
    sub->add_flag("--sample", sample, "sample when the cap is exceeded");
  };
  auto* verify = app.add_subcommand("verify", "check the hypotheses of the verify tasks");
  auto* build = app.add_subcommand("build", "evaluate the build tasks");
  auto* enumerate = app.add_subcommand("enumerate", "enumerate sign assignments");
  auto* all = app.add_subcommand("run", "run every task in the config");
  for (auto* sub : {verify, build, enumerate, all}) {
    sub->add_option("--config", config_path, "run configuration")->required()->check(CLI::ExistingFile);
    add_common(sub);
  }
  auto* solve = app.add_subcommand("solve", "sign assignments realising each prime");
  solve->add_option("--primes", primes, "comma-separated distinct odd primes")->required();
  add_common(solve);
  auto* linking = app.add_subcommand("linking", "linking numbers and torus relation");
  linking->add_option("--link", link_path, "link file")->required()->check(CLI::ExistingFile);
  linking->add_option("--axis", axis_path, "axis curve file")->check(CLI::ExistingFile);
  add_common(linking);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kValidationFailure;
  }

  RunConfig config;
  std::optional<TaskKind> only;
  try {
    if (solve->parsed()) {
      TaskSpec t;
      t.kind = TaskKind::solve;
      t.primes = parse_primes(primes);
      config.tasks.push_back(std::move(t));
    } else if (linking->parsed()) {
      TaskSpec t;
      t.kind = TaskKind::linking;
      t.link_path = link_path;
      t.axis_path = axis_path;
      config.tasks.push_back(std::move(t));
    } else {
      config = parse_config(config_path);
      if (verify->parsed()) only = TaskKind::verify;
      if (build->parsed()) only = TaskKind::build;
      if (enumerate->parsed()) only = TaskKind::enumerate;
    }
  } catch (const std::exception& e) {
    std::cerr << "fibresum: " << e.what() << '\n';
    return kValidationFailure;
  }

  auto* sub = app.get_subcommands().front();
  if (sub->count("--output")) config.output = output == "machine" ? OutputFormat::machine : OutputFormat::table;
  if (sub->count("--seed")) config.seed = seed;
  if (sub->count("--cap")) {
    if (cap == 0) {
      std::cerr << "fibresum: --cap must be positive\n";
      return kValidationFailure;
    }
    config.enumeration_cap = cap;
  }
  if (sample) config.allow_sampling = true;

  const auto outcome = run(config, only);
  std::cout << (config.output == OutputFormat::machine ? outcome.machine : outcome.table);
  std::cout.flush();
  return outcome.exit_code;
}
