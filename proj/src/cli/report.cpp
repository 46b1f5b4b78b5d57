#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace fibresum::cli::report {

Json integer(const BigInt& v) { return v.get_str(); }

Json vector(const intlat::IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v.coords()) a.push_back(x.get_str());
  return a;
}

Json signs(const std::vector<int>& s) {
  Json a = Json::array();
  for (int x : s) a.push_back(std::to_string(x));
  return a;
}

Json divisibility(const intlat::DivisibilityReport& d) {
  Json j;
  j["lower"] = integer(d.lower);
  j["upper"] = integer(d.upper);
  j["exact"] = d.exact;
  j["undefined"] = d.undefined;
  return j;
}

Json manifold(const fourman::FourManifold& m) {
  Json j;
  j["name"] = m.name;
  j["euler"] = integer(m.euler);
  j["signature"] = integer(m.signature);
  j["b1"] = m.b1 ? integer(*m.b1) : Json(nullptr);
  j["b2"] = m.b2 ? integer(*m.b2) : Json(nullptr);
  j["simply_connected"] = m.simply_connected;
  j["basis"] = m.basis_labels;
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.pairing.dim(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.pairing.dim(); ++k) {
      if (auto e = m.pairing.entry(i, k))
        row.push_back(e->get_str());
      else if (auto p = (i == k ? m.pairing.diagonal_parity(i) : std::nullopt))
        row.push_back(*p ? "odd" : "even");
      else
        row.push_back("?");
    }
    rows.push_back(std::move(row));
  }
  j["pairing"] = std::move(rows);
  j["c1"] = vector(m.c1);
  return j;
}

Json form(const gompfsum::FormClass& f) {
  Json j;
  j["signs"] = signs(f.signs_flat);
  j["c1"] = vector(f.c1);
  j["divisibility"] = divisibility(f.divisibility);
  return j;
}

Json check(const gompfsum::Check& c) {
  Json j;
  j["name"] = c.name;
  j["status"] = gompfsum::to_string(c.status);
  j["detail"] = c.detail;
  return j;
}

Json hypotheses(const construct::HypothesisReport& h) {
  Json j;
  j["condition1"] = {{"pass", h.condition1.pass},
                     {"r", std::to_string(h.condition1.r)},
                     {"rank", std::to_string(h.condition1.rank)},
                     {"reasons", h.condition1.reasons}};
  j["condition2"] = {{"pass", h.condition2.pass},
                     {"sum_torus", h.condition2.sum_torus},
                     {"reasons", h.condition2.reasons}};
  const auto& c3 = h.condition3;
  j["condition3"] = {{"pass", c3.pass},
                     {"indeterminate", c3.indeterminate},
                     {"n", integer(c3.n)},
                     {"c1_content", integer(c3.c1_content)},
                     {"n_divides_c1", c3.n_divides_c1},
                     {"d", divisibility(c3.d)},
                     {"n_divides_2d", c3.n_divides_2d},
                     {"reasons", c3.reasons}};
  j["overall"] = h.overall;
  return j;
}

Json recipe(const gompfsum::SumRecipe& r) {
  Json j;
  j["name"] = r.name;
  j["base"] = r.base.name;
  Json gl = Json::array();
  for (const auto& g : r.gluings)
    gl.push_back({{"torus", g.torus_label}, {"copies", std::to_string(g.copies)}, {"signs", signs(g.signs)}});
  j["gluings"] = std::move(gl);
  return j;
}

Json real(double v) {
  if (std::abs(v) < 5e-13) v = 0.0;  // no "-0.000..."
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", v);
  return std::string(buf);
}

namespace {

bool is_scalar_array(const Json& j) {
  return j.is_array() && std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
}

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "-";
  return j.dump();
}

std::string compact(const Json& j) {
  if (j.is_primitive()) return scalar_text(j);
  if (j.is_array()) {
    std::string s = "(";
    for (std::size_t i = 0; i < j.size(); ++i) s += (i ? "," : "") + compact(j[i]);
    return s + ")";
  }
  std::string s;
  for (const auto& [k, v] : j.items()) s += (s.empty() ? "" : " ") + k + "=" + compact(v);
  return s;
}

bool is_record_array(const Json& j) {
  return j.is_array() && !j.empty() && std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_object(); });
}

void render(std::ostream& out, const Json& j, int indent);

void render_records(std::ostream& out, const Json& rows, int indent) {
  std::vector<std::string> keys;
  for (const auto& row : rows)
    for (const auto& [k, v] : row.items())
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width(keys.size());
  for (std::size_t c = 0; c < keys.size(); ++c) width[c] = keys[c].size();
  for (const auto& row : rows) {
    auto& line = cells.emplace_back();
    for (std::size_t c = 0; c < keys.size(); ++c) {
      line.push_back(row.contains(keys[c]) ? compact(row[keys[c]]) : "");
      width[c] = std::max(width[c], line.back().size());
    }
  }
  const std::string pad(indent, ' ');
  auto emit = [&](const std::vector<std::string>& line) {
    std::string s = pad;
    for (std::size_t c = 0; c < line.size(); ++c) {
      s += line[c];
      if (c + 1 < line.size()) s += std::string(width[c] - line[c].size() + 2, ' ');
    }
    out << s << '\n';
  };
  emit(keys);
  for (const auto& line : cells) emit(line);
}

void render(std::ostream& out, const Json& j, int indent) {
  const std::string pad(indent, ' ');
  for (const auto& [k, v] : j.items()) {
    if (v.is_primitive() || is_scalar_array(v)) {
      out << pad << k << ": " << compact(v) << '\n';
    } else if (is_record_array(v)) {
      out << pad << k << ":\n";
      render_records(out, v, indent + 2);
    } else if (v.is_array()) {
      out << pad << k << ":" << (v.empty() ? " (none)" : "") << '\n';
      for (const auto& e : v) out << pad << "  " << compact(e) << '\n';
    } else {
      out << pad << k << ":\n";
      render(out, v, indent + 2);
    }
  }
}

}  // namespace

std::string table(const Json& doc) {
  std::ostringstream out;
  render(out, doc, 0);
  return out.str();
}

}  // namespace fibresum::cli::report
