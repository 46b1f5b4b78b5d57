#include <cmath>
#include <sstream>

#include "fibresum/cli.hpp"
#include "fibresum/linkgeom.hpp"
#include "report.hpp"

namespace fibresum::cli {

namespace {

using report::Json;

// A task's JSON section plus the exit code it asks for.
struct TaskResult {
  Json doc;
  int exit_code = kSuccess;
};

// Adds identity checks for one form; returns false on any failure.
bool add_identity_checks(Json& checks, const fourman::FourManifold& m, const gompfsum::FormClass& f,
                         const std::string& scope) {
  const auto ids = gompfsum::check_c1_identities(m, f);
  for (const auto& c : ids.checks) {
    Json j = report::check(c);
    j["scope"] = scope;
    checks.push_back(std::move(j));
  }
  return ids.ok();
}

Json summary_manifold(const fourman::FourManifold& m) {
  Json j = report::manifold(m);
  j["id"] = gompfsum::manifold_id(m);
  return j;
}

Json divisibility_set(const std::set<BigInt>& s) {
  Json a = Json::array();
  for (const auto& d : s) a.push_back(d.get_str());
  return a;
}

TaskResult run_verify(const RunConfig& cfg, const TaskSpec& t) {
  TaskResult r;
  const auto& def = *cfg.find_manifold(t.manifold);
  const auto h = construct::check_hypotheses(def.data.manifold, def.data.tori, t.tori, t.n);
  const auto v = fourman::validate(def.data.manifold, def.data.tori);
  r.doc["manifold"] = summary_manifold(def.data.manifold);
  r.doc["tori"] = t.tori;
  r.doc["hypotheses"] = report::hypotheses(h);
  Json checks = Json::array();
  auto add = [&](const std::string& name, bool pass, const std::string& detail) {
    checks.push_back({{"name", name}, {"status", pass ? "pass" : "fail"}, {"detail", detail}, {"scope", t.manifold}});
  };
  add("condition 1 (span)", h.condition1.pass, "r = " + std::to_string(h.condition1.r));
  add("condition 2 (kinds)", h.condition2.pass, "sum torus " + h.condition2.sum_torus);
  add("condition 3 (divisibility)", h.condition3.pass,
      h.condition3.indeterminate ? "indeterminate" : "d = " + h.condition3.d.lower.get_str());
  add("record validation", v.ok(), v.ok() ? std::to_string(v.skipped.size()) + " skipped" : v.violations.front());
  r.doc["checks"] = std::move(checks);
  if (!h.overall || !v.ok()) r.exit_code = kValidationFailure;
  return r;
}

TaskResult run_build(const RunConfig& cfg, const TaskSpec& t) {
  TaskResult r;
  const auto& recipe = *cfg.find_recipe(t.recipe);
  const auto res = gompfsum::perform_recipe(recipe);
  r.doc["recipe"] = report::recipe(recipe);
  r.doc["manifold"] = summary_manifold(res.manifold);
  Json trace = Json::array();
  for (const auto& term : gompfsum::c1_trace(recipe.gluings, recipe.tori))
    trace.push_back({{"torus", term.torus_label},
                     {"sign", std::to_string(term.sign)},
                     {"fibre_term", report::vector(term.fibre_term)},
                     {"torus_term", report::vector(term.torus_term)}});
  r.doc["c1_trace"] = std::move(trace);
  r.doc["forms"] = Json::array({report::form(res.form)});
  Json checks = Json::array();
  if (!add_identity_checks(checks, res.manifold, res.form, "form 0")) r.exit_code = kInconsistency;
  r.doc["checks"] = std::move(checks);
  return r;
}

// Shared by enumerate and solve.
void enumeration_sections(Json& doc, const construct::EnumerationResult& e, int& exit_code) {
  doc["manifold"] = summary_manifold(e.manifold);
  Json forms = Json::array();
  Json checks = Json::array();
  for (std::size_t i = 0; i < e.forms.size(); ++i) {
    forms.push_back(report::form(e.forms[i]));
    if (!add_identity_checks(checks, e.manifold, e.forms[i], "form " + std::to_string(i)))
      exit_code = kInconsistency;
  }
  doc["forms"] = std::move(forms);
  doc["divisibilities"] = divisibility_set(e.distinct_divisibilities);
  Json inexact = Json::array();
  for (auto i : e.inexact_forms) inexact.push_back(std::to_string(i));
  doc["inexact_forms"] = std::move(inexact);
  doc["pi0_lower_bound"] = std::to_string(e.pi0_lower_bound);
  doc["divisibility_inconclusive"] = e.divisibility_inconclusive;
  doc["assignments_evaluated"] = std::to_string(e.assignments_evaluated);
  doc["flippable_copies"] = std::to_string(e.flippable_copies);
  doc["sampled"] = e.sampled;
  doc["checks"] = std::move(checks);
}

construct::EnumerationOptions options_of(const RunConfig& cfg) {
  construct::EnumerationOptions o;
  o.cap = cfg.enumeration_cap;
  o.allow_sampling = cfg.allow_sampling;
  o.seed = cfg.seed;
  return o;
}

TaskResult run_enumerate(const RunConfig& cfg, const TaskSpec& t) {
  TaskResult r;
  const auto& recipe = *cfg.find_recipe(t.recipe);
  r.doc["recipe"] = report::recipe(recipe);
  enumeration_sections(r.doc, construct::enumerate_forms(recipe, options_of(cfg)), r.exit_code);
  return r;
}

TaskResult run_solve(const RunConfig& cfg, const TaskSpec& t) {
  TaskResult r;
  const auto s = construct::solve_signs(t.primes);
  r.doc["n"] = report::integer(s.n);
  r.doc["lagrangian_copies"] = std::to_string(s.lagrangian_copies);
  r.doc["recipe"] = report::recipe(s.recipe);
  Json sols = Json::array();
  for (const auto& sol : s.solutions) {
    Json j;
    j["prime"] = report::integer(sol.prime);
    j["sign_sum"] = report::integer(sol.sign_sum);
    j["c1"] = report::vector(sol.form.c1);
    j["divisibility"] = report::divisibility(sol.form.divisibility);
    sols.push_back(std::move(j));
  }
  r.doc["solutions"] = std::move(sols);
  r.doc["realization"] = "parallel copies of the Lagrangian torus T_z";
  enumeration_sections(r.doc, construct::enumerate_forms(s.recipe, options_of(cfg)), r.exit_code);
  return r;
}

TaskResult run_linking(const RunConfig& cfg, const TaskSpec& t) {
  using namespace linkgeom;
  TaskResult r;
  const Point3 direction{Rational(3), Rational(5), Rational(11)};
  const auto link = load_link(t.link_path);
  r.doc["components"] = std::to_string(link.components.size());
  Json pairs = Json::array();
  Json checks = Json::array();
  auto compare = [&](const std::string& scope, long crossings, const PolygonalCurve& a, const PolygonalCurve& b) {
    try {
      const double g = linking_number_gauss(a, b);
      const bool ok = std::abs(g - static_cast<double>(crossings)) < 1e-6;
      checks.push_back({{"name", "crossings = Gauss integral"},
                        {"status", ok ? "pass" : "fail"},
                        {"detail", "gauss " + report::real(g).get<std::string>()},
                        {"scope", scope}});
      if (!ok) r.exit_code = kInconsistency;
      return report::real(g);
    } catch (const LinkError& e) {
      checks.push_back(
          {{"name", "crossings = Gauss integral"}, {"status", "skipped"}, {"detail", e.what()}, {"scope", scope}});
      return Json(nullptr);
    }
  };
  for (std::size_t i = 0; i < link.components.size(); ++i)
    for (std::size_t j = i + 1; j < link.components.size(); ++j) {
      const long lk = linking_number_crossings(link.components[i], link.components[j], direction, cfg.seed);
      const std::string scope = std::to_string(i) + "-" + std::to_string(j);
      Json g = compare(scope, lk, link.components[i], link.components[j]);
      pairs.push_back({{"i", std::to_string(i)}, {"j", std::to_string(j)}, {"linking", std::to_string(lk)}, {"gauss", g}});
    }
  r.doc["pairwise"] = std::move(pairs);
  if (!t.axis_path.empty()) {
    const auto axis = load_curve(t.axis_path);
    for (const auto& c : link.components)
      if (curves_intersect(axis, c)) throw LinkError("link not embedded");
    const auto coords = h1_coordinates(axis, link, cfg.seed);
    Json per = Json::array();
    const auto surgery = link.surgery_indices();
    for (std::size_t k = 0; k < surgery.size(); ++k) {
      const std::string scope = "axis-" + std::to_string(surgery[k]);
      Json g = compare(scope, coords[k].get_si(), axis, link.components[surgery[k]]);
      per.push_back({{"component", std::to_string(surgery[k])}, {"linking", coords[k].get_str()}, {"gauss", g}});
    }
    r.doc["axis_linking"] = std::move(per);
    if (surgery.size() == 3) r.doc["relation"] = report::vector(derive_torus_relation(link, axis, cfg.seed));
  }
  r.doc["checks"] = std::move(checks);
  return r;
}

TaskResult run_task(const RunConfig& cfg, const TaskSpec& t) {
  switch (t.kind) {
    case TaskKind::verify:
      return run_verify(cfg, t);
    case TaskKind::build:
      return run_build(cfg, t);
    case TaskKind::enumerate:
      return run_enumerate(cfg, t);
    case TaskKind::solve:
      return run_solve(cfg, t);
    case TaskKind::linking:
      return run_linking(cfg, t);
  }
  return {};
}

std::string describe(const TaskSpec& t) {
  switch (t.kind) {
    case TaskKind::verify:
      return t.manifold + ", n = " + t.n.get_str();
    case TaskKind::build:
    case TaskKind::enumerate:
      return t.recipe;
    case TaskKind::solve: {
      std::string s = "primes";
      for (const auto& p : t.primes) s += " " + p.get_str();
      return s;
    }
    case TaskKind::linking:
      return t.link_path;
  }
  return {};
}

}  // namespace

RunOutcome run(const RunConfig& config, std::optional<TaskKind> only) {
  RunOutcome out;
  Json doc;
  doc["seed"] = std::to_string(config.seed);
  doc["tasks"] = Json::array();
  // Top-level sections come from the last task that produced them.
  doc["manifold"] = nullptr;
  doc["forms"] = Json::array();
  doc["divisibilities"] = Json::array();
  doc["pi0_lower_bound"] = nullptr;
  doc["checks"] = Json::array();

  std::ostringstream table;
  std::size_t executed = 0;
  for (std::size_t i = 0; i < config.tasks.size(); ++i) {
    const auto& t = config.tasks[i];
    if (only && t.kind != *only) continue;
    ++executed;
    Json entry;
    entry["index"] = std::to_string(i);
    entry["kind"] = to_string(t.kind);
    entry["target"] = describe(t);
    int code = kSuccess;
    try {
      TaskResult r = run_task(config, t);
      code = r.exit_code;
      entry["status"] = code == kSuccess ? "ok" : code == kInconsistency ? "inconsistent" : "failed";
      entry.update(r.doc);
    } catch (const construct::VerificationError& e) {
      code = kInconsistency;
      entry["status"] = "error";
      entry["error"] = e.what();
    } catch (const linkgeom::LinkError& e) {
      code = kValidationFailure;
      entry["status"] = "error";
      entry["error"] = e.what();
    } catch (const gompfsum::RecipeError& e) {
      code = kValidationFailure;
      entry["status"] = "error";
      entry["error"] = e.what();
    } catch (const std::invalid_argument& e) {
      code = kValidationFailure;
      entry["status"] = "error";
      entry["error"] = e.what();
    } catch (const std::exception& e) {
      code = kFailure;
      entry["status"] = "error";
      entry["error"] = e.what();
    }

    for (const char* key : {"manifold", "forms", "divisibilities", "pi0_lower_bound"})
      if (entry.contains(key)) doc[key] = entry[key];
    if (entry.contains("checks"))
      for (auto c : entry["checks"]) {
        c["task"] = std::to_string(i);
        doc["checks"].push_back(std::move(c));
      }

    table << "== task " << i << ": " << to_string(t.kind) << " (" << describe(t) << ") ==\n";
    Json shown = entry;
    shown.erase("index");
    shown.erase("kind");
    shown.erase("target");
    table << report::table(shown) << '\n';
    doc["tasks"].push_back(std::move(entry));

    if (code != kSuccess) {
      out.exit_code = code;
      break;  // later tasks may depend on this one
    }
  }
  if (executed == 0) {
    out.exit_code = kValidationFailure;
    table << "no " << (only ? to_string(*only) + " " : std::string()) << "tasks in config\n";
    doc["error"] = "no matching tasks";
  }
  doc["exit_code"] = std::to_string(out.exit_code);
  out.table = table.str();
  out.machine = doc.dump(2) + "\n";
  return out;
}

}  // namespace fibresum::cli
