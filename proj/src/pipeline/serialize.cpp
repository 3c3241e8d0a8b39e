#include "lorentz/serialize.hpp"

#include <stdexcept>

namespace lorentz {

Json to_json(const Rat& q) { return to_string(q); }

Rat rat_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
  throw std::invalid_argument("expected a rational string");
}

RatMatrix rat_matrix_from_json(const Json& j) {
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(j.at(0).size());
  RatMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(j.at(i).size()) != cols) throw std::invalid_argument("ragged matrix");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = rat_from_json(j.at(i).at(k));
  }
  return m;
}

IntMatrix int_matrix_from_json(const Json& j) { return to_integer(rat_matrix_from_json(j)); }

RatVector rat_vector_from_json(const Json& j) {
  RatVector v(static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rat_from_json(j.at(i));
  return v;
}

namespace {

Json optional_int(const std::optional<std::int64_t>& x) { return x ? Json(*x) : Json(nullptr); }

std::optional<std::int64_t> optional_int_from(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<std::int64_t>();
}

}  // namespace

Json to_json(const SeedMatrix& seed) {
  const SeedParams& p = seed.params;
  return Json{{"family", p.family}, {"A", p.A},   {"B", p.B},
              {"Ap", p.Ap},         {"Bp", p.Bp}, {"C", p.C},
              {"Cp", p.Cp},         {"k", optional_int(p.k)},
              {"kp", optional_int(p.kp)},
              {"gram", matrix_to_json(seed.gram.cast<Int>())}};
}

SeedMatrix seed_from_json(const Json& j) {
  SeedMatrix s;
  s.params.family = j.at("family").get<int>();
  s.params.A = j.at("A").get<std::int64_t>();
  s.params.B = j.at("B").get<std::int64_t>();
  s.params.Ap = j.at("Ap").get<std::int64_t>();
  s.params.Bp = j.at("Bp").get<std::int64_t>();
  s.params.C = j.at("C").get<std::int64_t>();
  s.params.Cp = j.at("Cp").get<std::int64_t>();
  s.params.k = optional_int_from(j.at("k"));
  s.params.kp = optional_int_from(j.at("kp"));
  const IntMatrix g = int_matrix_from_json(j.at("gram"));
  s.gram.resize(g.rows(), g.cols());
  for (Eigen::Index r = 0; r < g.rows(); ++r)
    for (Eigen::Index c = 0; c < g.cols(); ++c) s.gram(r, c) = g(r, c).convert_to<std::int64_t>();
  return s;
}

Json to_json(const Chain& chain, int iteration) {
  Json roots = Json::array();
  for (const IntVec3& r : chain.roots) roots.push_back(vector_to_json(r));
  return Json{{"iteration", iteration},
              {"E_gram", matrix_to_json(chain.gram)},
              {"roots", roots},
              {"rho", vector_to_json(chain.rho)},
              {"closed", chain.closed}};
}

Chain chain_from_json(const Json& j) {
  Chain c;
  const IntMatrix g = int_matrix_from_json(j.at("E_gram"));
  if (g.rows() != 3 || g.cols() != 3) throw std::invalid_argument("chain: E_gram must be 3x3");
  c.gram = g;
  for (const Json& r : j.at("roots")) {
    const RatVector v = rat_vector_from_json(r);
    if (v.size() != 3) throw std::invalid_argument("chain: root must have 3 coordinates");
    c.roots.push_back(to_integer(RatMatrix(v)).col(0));
  }
  const RatVector rho = rat_vector_from_json(j.at("rho"));
  if (rho.size() != 3) throw std::invalid_argument("chain: rho must have 3 coordinates");
  c.rho = rho;
  c.closed = j.at("closed").get<bool>();
  return c;
}

Json to_json(const RootSystemRecord& r) {
  return Json{{"n", r.n},
              {"gram", matrix_to_json(r.gram)},
              {"scale_applied", to_json(r.scale_applied)},
              {"realization",
               {{"gram", matrix_to_json(r.realization.gram)},
                {"coords", matrix_to_json(r.realization.coords)}}},
              {"rho", vector_to_json(r.rho)},
              {"rho_norm", to_json(r.rho_norm)}};
}

RootSystemRecord record_from_json(const Json& j) {
  RootSystemRecord r;
  r.n = j.at("n").get<int>();
  r.gram = int_matrix_from_json(j.at("gram"));
  r.scale_applied = rat_from_json(j.at("scale_applied"));
  r.realization.gram = rat_matrix_from_json(j.at("realization").at("gram"));
  r.realization.coords = int_matrix_from_json(j.at("realization").at("coords"));
  r.rho = rat_vector_from_json(j.at("rho"));
  r.rho_norm = rat_from_json(j.at("rho_norm"));
  return r;
}

Json to_json(const GenusKey& key) { return Json::parse(to_json_string(key)); }

Json analysis_json(const RootSystemRecord& record, const ChamberReport& report, std::size_t index,
                   const std::vector<std::size_t>& shared_with) {
  Json angles = Json::array();
  for (int m : report.angles) angles.push_back(angle_token(m));
  Json edges = Json::array(), vertices = Json::array();
  for (int e : report.aut.mirrors.fixed_edges) edges.push_back(e + 1);
  for (int v : report.aut.mirrors.fixed_vertices) vertices.push_back(v + 1);
  const RhoFrame frame = rho_frame(record);
  Json norms = Json::array();
  for (Eigen::Index i = 0; i < record.gram.rows(); ++i) norms.push_back(to_json(Rat(record.gram(i, i))));
  return Json{
      {"index", index},
      {"n", record.n},
      {"gram", matrix_to_json(record.gram)},
      {"norms", norms},
      {"angles", angles},
      {"euler", to_json(report.euler.euler)},
      {"area_coefficient", to_json(report.euler.area_coefficient)},
      {"aut",
       {{"kind", std::string(1, report.aut.kind)},
        {"order", report.aut.order},
        {"mirror_string", format_mirror_string(report.aut.mirrors)},
        {"mirror_edges", edges},
        {"mirror_vertices", vertices}}},
      {"flags",
       {{"compact", report.flags.compact},
        {"all_ideal", report.flags.all_ideal},
        {"right_angled", report.flags.right_angled},
        {"regular", report.flags.regular}}},
      {"genus", to_json(report.genus)},
      {"rho_norm", to_json(report.rho_norm)},
      {"twist_class", report.twist},
      {"shared_with", shared_with},
      {"rho_frame",
       {{"basis_gram", matrix_to_json(frame.basis_gram)},
        {"root_coords", matrix_to_json(frame.root_coords)},
        {"rho_coords", vector_to_json(frame.rho_coords)}}}};
}

}  // namespace lorentz
