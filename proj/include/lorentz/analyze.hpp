#pragma once

// Chamber geometry, symmetry and lattice data of a canonical root system.

#include "lorentz/canonical.hpp"
#include "lorentz/genus.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lorentz {

/// Vertex angle pi/m is stored as m; an ideal vertex (m = infinity) as 0.
constexpr int kIdealVertex = 0;

/// "2", "3", "4", "6" or "∞".
std::string angle_token(int m);

/// m with (a.b)^2 / (a^2 b^2) = cos^2(pi/m), kIdealVertex when the pair is
/// degenerate, nothing for any other value (including hyperbolic pairs).
std::optional<int> pair_angle(const Int& aa, const Int& bb, const Int& ab);

/// Angle at the vertex between roots i and i+1 (cyclically). Throws
/// std::logic_error on a non-crystallographic pair.
std::vector<int> vertex_angles(const IntMatrix& gram);

struct EulerData {
  Rat euler;
  Rat area_coefficient;  // area = area_coefficient * pi
};

EulerData euler_characteristic(const std::vector<int>& angles);

/// Marked angle string: "|" before vertex i when a mirror fixes edge
/// alpha_i (so a leading "|" is edge alpha_1), "/" right before a digit
/// when a mirror passes through that vertex.
struct MirrorString {
  std::vector<int> angles;
  std::vector<int> fixed_edges;     // 0-based root indices
  std::vector<int> fixed_vertices;  // 0-based; vertex i joins roots i and i+1
  friend bool operator==(const MirrorString&, const MirrorString&) = default;
};

std::string format_mirror_string(const MirrorString& m);
/// Throws std::invalid_argument on malformed text.
MirrorString parse_mirror_string(std::string_view text);

struct AutGroup {
  char kind = 'C';   // 'D' iff the group contains a reflection
  int order = 1;
  MirrorString mirrors;  // marks only for kind D
  std::vector<std::vector<int>> maps;  // preserving dihedral index maps
};

AutGroup aut_group(const IntMatrix& gram);

struct ChamberFlags {
  bool compact = false;
  bool all_ideal = false;
  bool right_angled = false;
  bool regular = false;
};

/// compact: no ideal vertex; all_ideal; right_angled; regular: the chamber
/// has a rotation carrying each edge to the next (equal angles and edges),
/// which allows root norms to differ.
ChamberFlags classify(const IntMatrix& gram, const std::vector<int>& angles);

/// Graphviz digraph: one node per root labelled by its norm, an edge for
/// every non-orthogonal pair, directed from the larger to the smaller norm.
std::string dynkin_diagram(const RootSystemRecord& record, const std::string& name);

/// Basis b1 = -rho/(2 rho^2), b2, b3 spanning rho-perp; in this basis the
/// first coordinate of every root is its norm.
struct RhoFrame {
  RatMatrix basis;        // rows, realization coordinates
  RatMatrix basis_gram;
  RatMatrix root_coords;  // n x 3
  RatVector rho_coords;
};

RhoFrame rho_frame(const RootSystemRecord& record);

struct ChamberReport {
  std::vector<int> angles;
  EulerData euler;
  AutGroup aut;
  ChamberFlags flags;
  GenusKey genus;
  Rat rho_norm;
  std::string twist;
};

ChamberReport analyze(const RootSystemRecord& record);

}  // namespace lorentz
