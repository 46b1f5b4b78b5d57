#pragma once

// Invariant records of closed oriented 4-manifolds and their square-zero tori.

#include "fibresum/intlat.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fibresum::fourman {

enum class TorusKind { symplectic, lagrangian };

std::string to_string(TorusKind kind);
TorusKind torus_kind_from_string(const std::string& s);

struct EmbeddedTorus {
  std::string label;
  intlat::IntVector klass;
  TorusKind kind = TorusKind::symplectic;
  std::optional<intlat::IntVector> dual;  // pairs to 1 with klass
  bool parallel_copies_available = false;

  friend bool operator==(const EmbeddedTorus&, const EmbeddedTorus&) = default;
};

struct FourManifold {
  std::string name;
  BigInt euler;
  BigInt signature;
  std::optional<BigInt> b1;  // unset when not derivable
  std::optional<BigInt> b2;
  std::vector<std::string> basis_labels;
  intlat::PairingMatrix pairing;
  intlat::IntVector c1;  // distinguished symplectic structure, Poincare dual coordinates
  bool simply_connected = false;
  bool pi1_normally_generated_by_tori = false;
  std::vector<std::string> pi1_generator_tori;  // tori whose pi_1 images normally generate

  std::size_t rank() const { return basis_labels.size(); }
  std::optional<std::size_t> basis_index(const std::string& label) const;

  friend bool operator==(const FourManifold&, const FourManifold&) = default;
};

struct ManifoldWithTori {
  FourManifold manifold;
  std::vector<EmbeddedTorus> tori;

  const EmbeddedTorus* find_torus(const std::string& label) const;
};

/// T^4 = R^4/Z^4 with tori T_x, T_y, T_z, T_w over the x, y, z and x=y=z
/// directions times t, and duals U_x = <y,z>, U_y = <z,x>, U_z = <x,y>.
/// T_x and T_w are symplectic for dx^dt + dy^dz; T_y and T_z are Lagrangian.
ManifoldWithTori build_t4();

struct EllipticSurface {
  FourManifold manifold;
  EmbeddedTorus fibre;
  bool fibre_complement_simply_connected = true;
};

/// The rational elliptic surface E(1) with fibre F and a section s.
EllipticSurface build_e1();

/// c1(E(1)) for the Kahler form (+1) or its negative (-1), in basis (F, s).
intlat::IntVector e1_c1(int form_sign);

struct ValidationReport {
  std::vector<std::string> violations;
  std::vector<std::string> skipped;
  bool ok() const { return violations.empty(); }
};

/// Structural checks on a record plus square-zero, dual and adjunction
/// (<c1, T> = 0) checks on every listed torus.
ValidationReport validate(const FourManifold& m, std::span<const EmbeddedTorus> tori);

}  // namespace fibresum::fourman
