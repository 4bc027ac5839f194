#ifndef TRIMASSEY_SERIALIZE_HPP
#define TRIMASSEY_SERIALIZE_HPP

// JSON forms: integers as numbers when they fit in 64 bits and as decimal
// strings otherwise; matrices row-major; lattices as lists of HNF basis columns.

#include "json.hpp"
#include "trimassey/zlinalg.hpp"

namespace trimassey {

nlohmann::json int_to_json(const Int& x);
Int int_from_json(const nlohmann::json& j);

nlohmann::json vec_to_json(const Vec& v);
Vec vec_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const IntMatrix& m);
/// Rows of equal length; `cols` is used when there are no rows.
IntMatrix matrix_from_json(const nlohmann::json& j, std::size_t cols = 0);

nlohmann::json lattice_to_json(const Lattice& l);
Lattice lattice_from_json(const nlohmann::json& j, std::size_t ambient);

nlohmann::json presentation_to_json(const AbelianPresentation& p);

}  // namespace trimassey

#endif
