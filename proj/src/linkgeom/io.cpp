#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "fibresum/linkgeom.hpp"

namespace fibresum::linkgeom {

std::vector<PolygonalCurve> read_curves(std::istream& in) {
  std::vector<PolygonalCurve> curves;
  std::vector<Point3> block;
  std::size_t block_line = 0;
  auto flush = [&]() {
    if (block.empty()) return;
    try {
      curves.emplace_back(std::move(block));
    } catch (const LinkError& e) {
      throw LinkError("component starting at line " + std::to_string(block_line) + ": " + e.what());
    }
    block.clear();
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      // A comment-only line does not end a block.
      const bool only_comment = line.find_first_not_of(" \t\r") == hash;
      line.erase(hash);
      if (only_comment) continue;
    }
    std::istringstream tokens(line);
    std::vector<std::string> fields;
    for (std::string tok; tokens >> tok;) fields.push_back(tok);
    if (fields.empty()) {
      flush();
      continue;
    }
    if (fields.size() != 3)
      throw LinkError("line " + std::to_string(lineno) + ": expected 'x y z', got " + std::to_string(fields.size()) +
                      " fields");
    Point3 p;
    for (std::size_t k = 0; k < 3; ++k) {
      try {
        p[k] = parse_rational(fields[k]);
      } catch (const std::invalid_argument& e) {
        throw LinkError("line " + std::to_string(lineno) + ": " + e.what());
      }
    }
    if (block.empty()) block_line = lineno;
    block.push_back(std::move(p));
  }
  flush();
  return curves;
}

namespace {

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LinkError("cannot open link file '" + path + "'");
  return in;
}

}  // namespace

PolygonalLink load_link(const std::string& path) {
  auto in = open(path);
  auto curves = read_curves(in);
  if (curves.empty()) throw LinkError("link file '" + path + "' has no components");
  return PolygonalLink(std::move(curves));
}

PolygonalCurve load_curve(const std::string& path) {
  auto in = open(path);
  auto curves = read_curves(in);
  if (curves.size() != 1) throw LinkError("curve file '" + path + "' must contain exactly one component");
  return curves.front();
}

void write_curves(std::ostream& out, const std::vector<PolygonalCurve>& curves) {
  for (std::size_t i = 0; i < curves.size(); ++i) {
    if (i) out << '\n';
    for (const auto& p : curves[i].vertices()) out << p[0].get_str() << ' ' << p[1].get_str() << ' ' << p[2].get_str() << '\n';
  }
}

}  // namespace fibresum::linkgeom
