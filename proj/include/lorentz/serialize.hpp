#pragma once

// JSON encodings of every persisted type. Exact numbers are strings in the
// "p/q" (or "p") convention.

#include "lorentz/analyze.hpp"
#include "lorentz/canonical.hpp"
#include "lorentz/chains.hpp"
#include "lorentz/seeds.hpp"

#include <json.hpp>

namespace lorentz {

using Json = nlohmann::json;

Json to_json(const Rat& q);
Rat rat_from_json(const Json& j);

template <class Derived>
Json matrix_to_json(const Eigen::MatrixBase<Derived>& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(Rat(m(i, j))));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class Derived>
Json vector_to_json(const Eigen::MatrixBase<Derived>& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(Rat(v(i))));
  return out;
}

RatMatrix rat_matrix_from_json(const Json& j);
IntMatrix int_matrix_from_json(const Json& j);
RatVector rat_vector_from_json(const Json& j);

Json to_json(const SeedMatrix& seed);
SeedMatrix seed_from_json(const Json& j);

/// Checkpoint record {iteration, E_gram, roots, rho, closed}.
Json to_json(const Chain& chain, int iteration);
Chain chain_from_json(const Json& j);

Json to_json(const RootSystemRecord& record);
RootSystemRecord record_from_json(const Json& j);

Json to_json(const GenusKey& key);

/// Analysis line for one record; `index` is its 1-based position in the
/// final list and `shared_with` the other members of its twist class.
Json analysis_json(const RootSystemRecord& record, const ChamberReport& report, std::size_t index,
                   const std::vector<std::size_t>& shared_with);

}  // namespace lorentz
