#pragma once

// Run configuration, task execution and report emission for the fibresum tool.

#include "fibresum/construct.hpp"
#include "fibresum/fourman.hpp"
#include "fibresum/gompfsum.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fibresum::cli {

/// Malformed or inconsistent configuration; `what()` names the line/field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class TaskKind { verify, build, enumerate, solve, linking };
enum class OutputFormat { table, machine };

std::string to_string(TaskKind k);
std::optional<TaskKind> task_kind_from_string(const std::string& s);

struct TaskSpec {
  TaskKind kind = TaskKind::build;
  std::string manifold;            // verify
  std::vector<std::string> tori;   // verify: T_1 first
  BigInt n;                        // verify
  std::string recipe;              // build, enumerate
  std::vector<BigInt> primes;      // solve
  std::string link_path;           // linking
  std::string axis_path;           // linking (optional)
};

struct ManifoldDef {
  std::string name;
  fourman::ManifoldWithTori data;
};

struct RunConfig {
  std::vector<ManifoldDef> manifolds;
  std::vector<gompfsum::SumRecipe> recipes;
  std::vector<TaskSpec> tasks;
  OutputFormat output = OutputFormat::table;
  std::uint64_t seed = 0;
  std::uint64_t enumeration_cap = std::uint64_t{1} << 20;
  bool allow_sampling = false;

  const ManifoldDef* find_manifold(const std::string& name) const;
  const gompfsum::SumRecipe* find_recipe(const std::string& name) const;
};

/// Parses and fully validates a YAML run configuration.  Relative link paths
/// are resolved against the directory of `path`.
RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& base_dir = ".");

enum ExitCode : int {
  kSuccess = 0,
  kFailure = 1,
  kValidationFailure = 2,
  kInconsistency = 3,
};

struct RunOutcome {
  int exit_code = kSuccess;
  std::string table;    // human-readable report
  std::string machine;  // JSON document
};

/// Executes the tasks in order (only those of `only` when set).  Errors stop
/// the run; reports for completed tasks are kept.
RunOutcome run(const RunConfig& config, std::optional<TaskKind> only = std::nullopt);

}  // namespace fibresum::cli
