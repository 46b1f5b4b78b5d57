#include <yaml-cpp/yaml.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "fibresum/cli.hpp"

namespace fibresum::cli {

using fourman::EmbeddedTorus;
using fourman::FourManifold;
using intlat::IntVector;

std::string to_string(TaskKind k) {
  switch (k) {
    case TaskKind::verify:
      return "verify";
    case TaskKind::build:
      return "build";
    case TaskKind::enumerate:
      return "enumerate";
    case TaskKind::solve:
      return "solve";
    case TaskKind::linking:
      return "linking";
  }
  return "?";
}

std::optional<TaskKind> task_kind_from_string(const std::string& s) {
  for (auto k : {TaskKind::verify, TaskKind::build, TaskKind::enumerate, TaskKind::solve, TaskKind::linking})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

const ManifoldDef* RunConfig::find_manifold(const std::string& name) const {
  for (const auto& m : manifolds)
    if (m.name == name) return &m;
  return nullptr;
}

const gompfsum::SumRecipe* RunConfig::find_recipe(const std::string& name) const {
  for (const auto& r : recipes)
    if (r.name == name) return &r;
  return nullptr;
}

namespace {

[[noreturn]] void fail(const YAML::Node& node, const std::string& field, const std::string& msg) {
  std::string where;
  if (node.IsDefined() && node.Mark().line >= 0) where = "line " + std::to_string(node.Mark().line + 1) + ": ";
  throw ConfigError(where + field + ": " + msg);
}

void allow_keys(const YAML::Node& map, const std::string& context, std::initializer_list<const char*> keys) {
  if (!map.IsMap()) fail(map, context, "expected a mapping");
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    bool known = false;
    for (const char* k : keys) known = known || key == k;
    if (!known) fail(kv.first, context, "unknown field '" + key + "'");
  }
}

YAML::Node require(const YAML::Node& map, const std::string& context, const char* key) {
  YAML::Node n = map[key];
  if (!n.IsDefined() || n.IsNull()) fail(map, context, std::string("missing field '") + key + "'");
  return n;
}

std::string scalar(const YAML::Node& n, const std::string& field) {
  if (!n.IsScalar()) fail(n, field, "expected a scalar");
  return n.Scalar();
}

BigInt integer(const YAML::Node& n, const std::string& field) {
  try {
    return parse_bigint(scalar(n, field));
  } catch (const std::invalid_argument& e) {
    fail(n, field, e.what());
  }
}

std::uint64_t unsigned_value(const YAML::Node& n, const std::string& field) {
  const BigInt v = integer(n, field);
  if (v < 0 || !v.fits_ulong_p()) fail(n, field, "expected a nonnegative 64-bit integer");
  return v.get_ui();
}

bool boolean(const YAML::Node& n, const std::string& field) {
  const std::string s = scalar(n, field);
  if (s == "true" || s == "yes") return true;
  if (s == "false" || s == "no") return false;
  fail(n, field, "expected true or false");
}

std::vector<std::string> string_list(const YAML::Node& n, const std::string& field) {
  if (!n.IsSequence()) fail(n, field, "expected a list");
  std::vector<std::string> out;
  for (const auto& e : n) out.push_back(scalar(e, field));
  return out;
}

IntVector int_vector(const YAML::Node& n, const std::string& field, std::size_t expected) {
  if (!n.IsSequence()) fail(n, field, "expected a list of integers");
  std::vector<BigInt> coords;
  for (const auto& e : n) coords.push_back(integer(e, field));
  if (coords.size() != expected)
    fail(n, field, "expected " + std::to_string(expected) + " entries, got " + std::to_string(coords.size()));
  return IntVector(std::move(coords));
}

intlat::PairingMatrix pairing_matrix(const YAML::Node& n, std::size_t dim) {
  const std::string field = "pairing";
  if (!n.IsSequence() || n.size() != dim) fail(n, field, "expected " + std::to_string(dim) + " rows");
  intlat::PairingMatrix p(dim);
  std::vector<std::vector<std::string>> cells(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (!n[i].IsSequence() || n[i].size() != dim) fail(n[i], field, "expected " + std::to_string(dim) + " columns");
    for (std::size_t j = 0; j < dim; ++j) cells[i].push_back(scalar(n[i][j], field));
  }
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      if (cells[i][j] != cells[j][i]) fail(n[i][j], field, "matrix is not symmetric");
      const std::string& c = cells[i][j];
      if (c == "?") {
        p.set_unknown(i, j);
      } else if (i == j && (c == "even" || c == "odd")) {
        p.set_parity_only(i, c == "odd" ? 1 : 0);
      } else {
        try {
          p.set(i, j, parse_bigint(c));
        } catch (const std::invalid_argument& e) {
          fail(n[i][j], field, e.what());
        }
      }
    }
  return p;
}

ManifoldDef builtin_manifold(const YAML::Node& node, const std::string& name, const std::string& which) {
  ManifoldDef def;
  def.name = name;
  if (which == "T4") {
    def.data = fourman::build_t4();
  } else if (which == "E1") {
    auto e1 = fourman::build_e1();
    def.data.manifold = std::move(e1.manifold);
    def.data.tori = {std::move(e1.fibre)};
  } else {
    fail(node, "builtin", "unknown built-in manifold '" + which + "' (expected T4 or E1)");
  }
  def.data.manifold.name = name;
  return def;
}

ManifoldDef custom_manifold(const YAML::Node& node, const std::string& name) {
  allow_keys(node, "manifold " + name,
             {"name", "euler", "signature", "b1", "b2", "simply_connected", "pi1_generator_tori", "basis", "pairing",
              "c1", "tori"});
  ManifoldDef def;
  def.name = name;
  FourManifold& m = def.data.manifold;
  m.name = name;
  m.euler = integer(require(node, name, "euler"), "euler");
  m.signature = integer(require(node, name, "signature"), "signature");
  if (node["b1"]) m.b1 = integer(node["b1"], "b1");
  if (node["b2"]) m.b2 = integer(node["b2"], "b2");
  if (node["simply_connected"]) m.simply_connected = boolean(node["simply_connected"], "simply_connected");
  if (node["pi1_generator_tori"]) {
    m.pi1_generator_tori = string_list(node["pi1_generator_tori"], "pi1_generator_tori");
    m.pi1_normally_generated_by_tori = true;
  }
  m.basis_labels = string_list(require(node, name, "basis"), "basis");
  if (m.basis_labels.empty()) fail(node, "basis", "at least one basis class required");
  const std::size_t dim = m.basis_labels.size();
  m.pairing = pairing_matrix(require(node, name, "pairing"), dim);
  m.c1 = int_vector(require(node, name, "c1"), "c1", dim);

  if (node["tori"]) {
    const auto tori = node["tori"];
    if (!tori.IsSequence()) fail(tori, "tori", "expected a list");
    std::set<std::string> labels;
    for (const auto& t : tori) {
      allow_keys(t, "torus", {"label", "class", "kind", "dual", "parallel_copies"});
      EmbeddedTorus e;
      e.label = scalar(require(t, "torus", "label"), "label");
      if (!labels.insert(e.label).second) fail(t, "torus", "duplicate label '" + e.label + "'");
      e.klass = int_vector(require(t, e.label, "class"), "class", dim);
      try {
        e.kind = fourman::torus_kind_from_string(scalar(require(t, e.label, "kind"), "kind"));
      } catch (const std::invalid_argument& ex) {
        fail(t["kind"], "kind", ex.what());
      }
      if (t["dual"]) e.dual = int_vector(t["dual"], "dual", dim);
      if (t["parallel_copies"]) e.parallel_copies_available = boolean(t["parallel_copies"], "parallel_copies");
      def.data.tori.push_back(std::move(e));
    }
  }

  const auto report = fourman::validate(m, def.data.tori);
  if (!report.ok()) fail(node, "manifold " + name, report.violations.front());
  return def;
}

gompfsum::SumRecipe parse_recipe(const YAML::Node& node, const RunConfig& cfg) {
  allow_keys(node, "recipe", {"name", "base", "gluings"});
  gompfsum::SumRecipe r;
  r.name = scalar(require(node, "recipe", "name"), "name");
  const auto base_node = require(node, r.name, "base");
  const auto* base = cfg.find_manifold(scalar(base_node, "base"));
  if (!base) fail(base_node, "base", "unresolved manifold '" + base_node.Scalar() + "'");
  r.base = base->data.manifold;
  r.tori = base->data.tori;

  const auto gluings = require(node, r.name, "gluings");
  if (!gluings.IsSequence()) fail(gluings, "gluings", "expected a list");
  for (const auto& g : gluings) {
    allow_keys(g, "gluing", {"torus", "copies", "signs"});
    gompfsum::Gluing gl;
    gl.torus_label = scalar(require(g, "gluing", "torus"), "torus");
    if (!base->data.find_torus(gl.torus_label))
      fail(g["torus"], "torus", "unresolved torus '" + gl.torus_label + "' on manifold " + base->name);
    gl.copies = g["copies"] ? unsigned_value(g["copies"], "copies") : 1;
    if (g["signs"]) {
      const auto signs = g["signs"];
      if (!signs.IsSequence()) fail(signs, "signs", "expected a list of +1/-1");
      for (const auto& s : signs) gl.signs.push_back(static_cast<int>(integer(s, "signs").get_si()));
    } else {
      gl.signs.assign(gl.copies, 1);
    }
    r.gluings.push_back(std::move(gl));
  }
  try {
    gompfsum::validate_recipe(r);
  } catch (const gompfsum::RecipeError& e) {
    fail(node, "recipe " + r.name, e.what());
  }
  return r;
}

TaskSpec parse_task(const YAML::Node& node, const RunConfig& cfg, const std::filesystem::path& base_dir) {
  allow_keys(node, "task", {"kind", "manifold", "tori", "n", "recipe", "primes", "link", "axis"});
  TaskSpec t;
  const auto kind_node = require(node, "task", "kind");
  const auto kind = task_kind_from_string(scalar(kind_node, "kind"));
  if (!kind) fail(kind_node, "kind", "unknown task '" + kind_node.Scalar() + "'");
  t.kind = *kind;

  switch (t.kind) {
    case TaskKind::verify: {
      const auto m = require(node, "verify", "manifold");
      t.manifold = scalar(m, "manifold");
      const auto* def = cfg.find_manifold(t.manifold);
      if (!def) fail(m, "manifold", "unresolved manifold '" + t.manifold + "'");
      t.tori = string_list(require(node, "verify", "tori"), "tori");
      if (t.tori.empty()) fail(node["tori"], "tori", "at least one torus required");
      for (const auto& label : t.tori)
        if (!def->data.find_torus(label)) fail(node["tori"], "tori", "unresolved torus '" + label + "'");
      t.n = integer(require(node, "verify", "n"), "n");
      if (t.n <= 2) fail(node["n"], "n", "must exceed 2");
      break;
    }
    case TaskKind::build:
    case TaskKind::enumerate: {
      const auto r = require(node, to_string(t.kind), "recipe");
      t.recipe = scalar(r, "recipe");
      if (!cfg.find_recipe(t.recipe)) fail(r, "recipe", "unresolved recipe '" + t.recipe + "'");
      break;
    }
    case TaskKind::solve: {
      const auto p = require(node, "solve", "primes");
      if (!p.IsSequence() || p.size() == 0) fail(p, "primes", "expected a nonempty list");
      for (const auto& e : p) t.primes.push_back(integer(e, "primes"));
      break;
    }
    case TaskKind::linking: {
      auto resolve = [&](const YAML::Node& n, const char* field) {
        std::filesystem::path path = scalar(n, field);
        if (path.is_relative()) path = base_dir / path;
        if (!std::filesystem::exists(path)) fail(n, field, "file not found: " + path.string());
        return path.string();
      };
      t.link_path = resolve(require(node, "linking", "link"), "link");
      if (node["axis"]) t.axis_path = resolve(node["axis"], "axis");
      break;
    }
  }
  return t;
}

RunConfig parse_node(const YAML::Node& root, const std::filesystem::path& base_dir) {
  RunConfig cfg;
  if (!root.IsDefined() || root.IsNull()) throw ConfigError("no tasks");
  allow_keys(root, "config",
             {"seed", "enumeration_cap", "allow_sampling", "output", "manifolds", "recipes", "tasks"});

  if (root["seed"]) cfg.seed = unsigned_value(root["seed"], "seed");
  if (root["enumeration_cap"]) {
    cfg.enumeration_cap = unsigned_value(root["enumeration_cap"], "enumeration_cap");
    if (cfg.enumeration_cap == 0) fail(root["enumeration_cap"], "enumeration_cap", "must be positive");
  }
  if (root["allow_sampling"]) cfg.allow_sampling = boolean(root["allow_sampling"], "allow_sampling");
  if (root["output"]) {
    const auto s = scalar(root["output"], "output");
    if (s == "table")
      cfg.output = OutputFormat::table;
    else if (s == "machine")
      cfg.output = OutputFormat::machine;
    else
      fail(root["output"], "output", "expected table or machine");
  }

  if (const auto ms = root["manifolds"]) {
    if (!ms.IsSequence()) fail(ms, "manifolds", "expected a list");
    for (const auto& m : ms) {
      if (!m.IsMap()) fail(m, "manifolds", "expected a mapping");
      const std::string name = scalar(require(m, "manifold", "name"), "name");
      if (cfg.find_manifold(name)) fail(m, "manifold", "duplicate name '" + name + "'");
      if (m["builtin"]) {
        allow_keys(m, "manifold " + name, {"name", "builtin"});
        cfg.manifolds.push_back(builtin_manifold(m["builtin"], name, scalar(m["builtin"], "builtin")));
      } else {
        cfg.manifolds.push_back(custom_manifold(m, name));
      }
    }
  }
  if (const auto rs = root["recipes"]) {
    if (!rs.IsSequence()) fail(rs, "recipes", "expected a list");
    for (const auto& r : rs) {
      auto recipe = parse_recipe(r, cfg);
      if (cfg.find_recipe(recipe.name)) fail(r, "recipe", "duplicate name '" + recipe.name + "'");
      cfg.recipes.push_back(std::move(recipe));
    }
  }
  const auto tasks = root["tasks"];
  if (!tasks || tasks.IsNull() || (tasks.IsSequence() && tasks.size() == 0)) throw ConfigError("no tasks");
  if (!tasks.IsSequence()) fail(tasks, "tasks", "expected a list");
  for (const auto& t : tasks) cfg.tasks.push_back(parse_task(t, cfg, base_dir));
  return cfg;
}

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::string& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError("line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  return parse_node(root, base_dir);
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  auto dir = std::filesystem::path(path).parent_path();
  if (dir.empty()) dir = ".";
  return parse_config_text(text.str(), dir.string());
}

}  // namespace fibresum::cli
