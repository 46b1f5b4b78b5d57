#include "fibresum/fourman.hpp"

#include <algorithm>
#include <stdexcept>

namespace fibresum::fourman {

using intlat::IntVector;
using intlat::PairingMatrix;

std::string to_string(TorusKind kind) { return kind == TorusKind::symplectic ? "symplectic" : "lagrangian"; }

TorusKind torus_kind_from_string(const std::string& s) {
  if (s == "symplectic") return TorusKind::symplectic;
  if (s == "lagrangian") return TorusKind::lagrangian;
  throw std::invalid_argument("unknown torus kind '" + s + "' (expected symplectic or lagrangian)");
}

std::optional<std::size_t> FourManifold::basis_index(const std::string& label) const {
  auto it = std::find(basis_labels.begin(), basis_labels.end(), label);
  if (it == basis_labels.end()) return std::nullopt;
  return static_cast<std::size_t>(it - basis_labels.begin());
}

const EmbeddedTorus* ManifoldWithTori::find_torus(const std::string& label) const {
  for (const auto& t : tori)
    if (t.label == label) return &t;
  return nullptr;
}

ManifoldWithTori build_t4() {
  FourManifold m;
  m.name = "T4";
  m.euler = 0;
  m.signature = 0;
  m.b1 = BigInt(4);
  m.b2 = BigInt(6);
  m.basis_labels = {"T_x", "T_y", "T_z", "U_x", "U_y", "U_z"};
  // H2(T^4) = three hyperbolic planes <T_i, U_i>.
  m.pairing = PairingMatrix::from_rows({{0, 0, 0, 1, 0, 0},
                                        {0, 0, 0, 0, 1, 0},
                                        {0, 0, 0, 0, 0, 1},
                                        {1, 0, 0, 0, 0, 0},
                                        {0, 1, 0, 0, 0, 0},
                                        {0, 0, 1, 0, 0, 0}});
  m.c1 = IntVector(6);
  m.simply_connected = false;
  m.pi1_normally_generated_by_tori = true;
  m.pi1_generator_tori = {"T_x", "T_y", "T_z"};

  auto e = [](std::size_t i) { return IntVector::unit(6, i); };
  std::vector<EmbeddedTorus> tori{
      {"T_x", e(0), TorusKind::symplectic, e(3), true},
      {"T_y", e(1), TorusKind::lagrangian, e(4), true},
      {"T_z", e(2), TorusKind::lagrangian, e(5), true},
      {"T_w", e(0) + e(1) + e(2), TorusKind::symplectic, e(3), true},
  };
  return {std::move(m), std::move(tori)};
}

IntVector e1_c1(int form_sign) {
  if (form_sign != 1 && form_sign != -1) throw std::invalid_argument("form sign must be +1 or -1");
  return IntVector{form_sign, 0};
}

EllipticSurface build_e1() {
  // CP^2 # 9 CP^2-bar: e = 3 + 9, sigma = 1 - 9.
  FourManifold m;
  m.name = "E1";
  m.euler = 12;
  m.signature = -8;
  m.b1 = BigInt(0);
  m.b2 = BigInt(10);
  m.basis_labels = {"F", "s"};
  m.pairing = PairingMatrix::from_rows({{0, 1}, {1, -1}});
  m.c1 = e1_c1(+1);
  m.simply_connected = true;
  m.pi1_normally_generated_by_tori = true;

  EmbeddedTorus fibre{"F", IntVector{1, 0}, TorusKind::symplectic, IntVector{0, 1}, true};
  return {std::move(m), std::move(fibre), true};
}

ValidationReport validate(const FourManifold& m, std::span<const EmbeddedTorus> tori) {
  ValidationReport r;
  auto violation = [&](std::string s) { r.violations.push_back(std::move(s)); };
  const std::size_t n = m.rank();

  if (m.pairing.dim() != n) violation("pairing dimension differs from lattice rank");
  if (m.c1.size() != n) violation("c1 length differs from lattice rank");
  if (m.simply_connected) {
    if (m.b1 && *m.b1 != 0) violation("simply connected but b1 != 0");
    if (m.b2 && m.euler != 2 + *m.b2) violation("simply connected but e != 2 + b2");
  }
  if (m.b2 && abs(m.signature) > *m.b2) violation("|signature| exceeds b2");
  if (m.b1 && *m.b1 < 0) violation("negative b1");
  if (m.b2 && *m.b2 < 0) violation("negative b2");
  if (!r.violations.empty()) return r;  // later checks need consistent dimensions

  for (const auto& label : m.pi1_generator_tori) {
    if (std::none_of(tori.begin(), tori.end(), [&](const EmbeddedTorus& t) { return t.label == label; }))
      violation("pi1 generator torus '" + label + "' is not declared");
  }

  for (const auto& t : tori) {
    const std::string who = "torus " + t.label + ": ";
    if (t.klass.size() != n) {
      violation(who + "class length differs from lattice rank");
      continue;
    }
    if (auto sq = m.pairing.pair(t.klass, t.klass)) {
      if (*sq != 0) violation(who + "not square-zero (self-pairing " + sq->get_str() + ")");
    } else {
      r.skipped.push_back(who + "self-pairing undeclared");
    }
    if (t.dual) {
      if (t.dual->size() != n) {
        violation(who + "dual length differs from lattice rank");
      } else if (auto p = m.pairing.pair(t.klass, *t.dual)) {
        if (*p != 1) violation(who + "dual pairs to " + p->get_str() + ", expected 1");
      } else {
        r.skipped.push_back(who + "pairing with dual undeclared");
      }
    }
    if (auto adj = m.pairing.pair(m.c1, t.klass)) {
      if (*adj != 0) violation(who + "adjunction fails, <c1, T> = " + adj->get_str());
    } else {
      r.skipped.push_back(who + "<c1, T> undeclared");
    }
  }
  return r;
}

}  // namespace fibresum::fourman
