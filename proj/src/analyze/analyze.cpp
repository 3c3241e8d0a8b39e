#include "lorentz/analyze.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace lorentz {

namespace {

const std::string kInfinity = "\xE2\x88\x9E";  // U+221E

bool contains(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

}  // namespace

std::string angle_token(int m) {
  if (m == kIdealVertex) return kInfinity;
  if (m == 2 || m == 3 || m == 4 || m == 6) return std::to_string(m);
  throw std::invalid_argument("angle_token: unsupported angle");
}

std::optional<int> pair_angle(const Int& aa, const Int& bb, const Int& ab) {
  const Int det = aa * bb - ab * ab;
  if (det == 0) return kIdealVertex;
  if (det < 0) return std::nullopt;
  const Rat c(ab * ab, aa * bb);
  if (c == 0) return 2;
  if (c == Rat(1, 4)) return 3;
  if (c == Rat(1, 2)) return 4;
  if (c == Rat(3, 4)) return 6;
  return std::nullopt;
}

std::vector<int> vertex_angles(const IntMatrix& gram) {
  const Eigen::Index n = gram.rows();
  std::vector<int> out;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index j = (i + 1) % n;
    const auto m = pair_angle(gram(i, i), gram(j, j), gram(i, j));
    if (!m) throw std::logic_error("vertex_angles: non-crystallographic vertex");
    out.push_back(*m);
  }
  return out;
}

EulerData euler_characteristic(const std::vector<int>& angles) {
  const int n = static_cast<int>(angles.size());
  Rat chi = Rat(2 - n, 2);
  for (int m : angles)
    if (m != kIdealVertex) chi += Rat(1, 2 * m);
  return {chi, -2 * chi};
}

std::string format_mirror_string(const MirrorString& m) {
  std::string out;
  for (int i = 0; i < static_cast<int>(m.angles.size()); ++i) {
    if (contains(m.fixed_edges, i)) out += '|';
    if (contains(m.fixed_vertices, i)) out += '/';
    out += angle_token(m.angles[i]);
  }
  return out;
}

MirrorString parse_mirror_string(std::string_view text) {
  MirrorString m;
  bool edge = false, vertex = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char c = text[pos];
    if (c == '|') {
      if (edge || vertex) throw std::invalid_argument("mirror string: misplaced '|'");
      edge = true;
      ++pos;
      continue;
    }
    if (c == '/') {
      if (vertex) throw std::invalid_argument("mirror string: repeated '/'");
      vertex = true;
      ++pos;
      continue;
    }
    int angle;
    if (c == '2' || c == '3' || c == '4' || c == '6') {
      angle = c - '0';
      ++pos;
    } else if (text.substr(pos, kInfinity.size()) == kInfinity) {
      angle = kIdealVertex;
      pos += kInfinity.size();
    } else {
      throw std::invalid_argument("mirror string: unexpected character");
    }
    const int index = static_cast<int>(m.angles.size());
    if (edge) m.fixed_edges.push_back(index);
    if (vertex) m.fixed_vertices.push_back(index);
    m.angles.push_back(angle);
    edge = vertex = false;
  }
  if (edge || vertex) throw std::invalid_argument("mirror string: dangling mark");
  return m;
}

AutGroup aut_group(const IntMatrix& gram) {
  const int n = static_cast<int>(gram.rows());
  AutGroup aut;
  aut.mirrors.angles = vertex_angles(gram);
  aut.order = 0;
  for (int reflect = 0; reflect < 2; ++reflect)
    for (int r = 0; r < n; ++r) {
      const std::vector<int> map = dihedral_map(n, r, reflect != 0);
      if (permute(gram, map) != gram) continue;
      ++aut.order;
      aut.maps.push_back(map);
      if (!reflect) continue;
      aut.kind = 'D';
      // i -> r - i fixes edge i when 2i = r and vertex i when 2i + 1 = r.
      for (int i = 0; i < n; ++i) {
        if ((2 * i - r) % n == 0 && !contains(aut.mirrors.fixed_edges, i))
          aut.mirrors.fixed_edges.push_back(i);
        if ((2 * i + 1 - r) % n == 0 && !contains(aut.mirrors.fixed_vertices, i))
          aut.mirrors.fixed_vertices.push_back(i);
      }
    }
  std::sort(aut.mirrors.fixed_edges.begin(), aut.mirrors.fixed_edges.end());
  std::sort(aut.mirrors.fixed_vertices.begin(), aut.mirrors.fixed_vertices.end());
  return aut;
}

ChamberFlags classify(const IntMatrix& gram, const std::vector<int>& angles) {
  const Eigen::Index n = gram.rows();
  ChamberFlags f;
  f.compact = !contains(angles, kIdealVertex);
  f.all_ideal = std::all_of(angles.begin(), angles.end(), [](int m) { return m == kIdealVertex; });
  f.right_angled = std::all_of(angles.begin(), angles.end(), [](int m) { return m == 2; });
  // Regular: the shift i -> i+1 preserves the Gram matrix of the unit
  // normals, i.e. is an isometry of the chamber. Signs are uniform, so the
  // squares c_ij = (a_i.a_j)^2 / (a_i^2 a_j^2) decide it.
  auto c = [&](Eigen::Index i, Eigen::Index j) {
    return Rat(gram(i, j) * gram(i, j), gram(i, i) * gram(j, j));
  };
  f.regular = true;
  for (Eigen::Index i = 0; i < n && f.regular; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (c(i, j) != c((i + 1) % n, (j + 1) % n)) {
        f.regular = false;
        break;
      }
  return f;
}

std::string dynkin_diagram(const RootSystemRecord& record, const std::string& name) {
  const IntMatrix& g = record.gram;
  const Eigen::Index n = g.rows();
  std::ostringstream dot;
  dot << "digraph \"" << name << "\" {\n  node [shape=circle];\n";
  for (Eigen::Index i = 0; i < n; ++i)
    dot << "  a" << i + 1 << " [label=\"" << g(i, i) << "\"];\n";
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (g(i, j) == 0) continue;
      Eigen::Index from = i, to = j;
      if (g(j, j) > g(i, i)) std::swap(from, to);
      dot << "  a" << from + 1 << " -> a" << to + 1 << " [";
      const auto m = pair_angle(g(i, i), g(j, j), g(i, j));
      if (m)
        dot << "label=\"" << angle_token(*m) << "\"";
      else
        dot << "style=dashed";
      if (g(i, i) == g(j, j)) dot << ", dir=none";
      dot << "];\n";
    }
  dot << "}\n";
  return dot.str();
}

RhoFrame rho_frame(const RootSystemRecord& record) {
  const RatMatrix& g = record.realization.gram;
  const RatVector g_rho = g * record.rho;
  const Rat rho_sq = record.rho_norm;
  RhoFrame f;
  f.basis = RatMatrix::Zero(3, 3);
  f.basis.row(0) = record.rho.transpose() * (Rat(-1) / (2 * rho_sq));
  Eigen::Index pivot = 0;
  while (g_rho(pivot) == 0) ++pivot;
  Eigen::Index row = 1;
  for (Eigen::Index j = 0; j < 3; ++j) {
    if (j == pivot) continue;
    RatVector v = RatVector::Zero(3);
    v(j) = g_rho(pivot);
    v(pivot) = -g_rho(j);
    f.basis.row(row++) = v.transpose();
  }
  f.basis_gram = f.basis * g * f.basis.transpose();
  const RatMatrix to_frame = inverse(f.basis.transpose());
  f.root_coords = (to_frame * to_rational(record.realization.coords).transpose()).transpose();
  f.rho_coords = to_frame * record.rho;
  for (Eigen::Index i = 0; i < f.root_coords.rows(); ++i)
    if (f.root_coords(i, 0) != Rat(record.gram(i, i)))
      throw std::logic_error("rho_frame: first coordinate differs from the norm");
  return f;
}

ChamberReport analyze(const RootSystemRecord& record) {
  ChamberReport r;
  r.angles = vertex_angles(record.gram);
  r.euler = euler_characteristic(r.angles);
  r.aut = aut_group(record.gram);
  r.flags = classify(record.gram, r.angles);
  r.genus = genus_key(to_integer(record.realization.gram));
  r.rho_norm = record.rho_norm;
  r.twist = twist_class(record);
  return r;
}

}  // namespace lorentz
