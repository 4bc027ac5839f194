#include "trimassey/serialize.hpp"

#include "trimassey/error.hpp"

namespace trimassey {

using nlohmann::json;

json int_to_json(const Int& x) {
  if (x.fits_slong_p()) return json(x.get_si());
  return json(x.get_str());
}

Int int_from_json(const json& j) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) {
    Int x;
    if (x.set_str(j.get<std::string>(), 10) != 0) throw InputError("not an integer: " + j.get<std::string>());
    return x;
  }
  throw InputError("expected an integer, got " + j.dump());
}

json vec_to_json(const Vec& v) {
  json a = json::array();
  for (const Int& x : v) a.push_back(int_to_json(x));
  return a;
}

Vec vec_from_json(const json& j) {
  if (!j.is_array()) throw InputError("expected an integer array");
  Vec v;
  for (const auto& x : j) v.push_back(int_from_json(x));
  return v;
}

json matrix_to_json(const IntMatrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(vec_to_json(m.row(i)));
  return a;
}

IntMatrix matrix_from_json(const json& j, std::size_t cols) {
  if (!j.is_array()) throw InputError("expected a matrix as an array of rows");
  std::vector<Vec> rows;
  for (const auto& r : j) rows.push_back(vec_from_json(r));
  if (!rows.empty()) cols = rows[0].size();
  for (const auto& r : rows)
    if (r.size() != cols) throw InputError("matrix rows have different lengths");
  return IntMatrix::from_row_vectors(rows, cols);
}

json lattice_to_json(const Lattice& l) {
  json a = json::array();
  for (const Vec& c : l.basis().columns()) a.push_back(vec_to_json(c));
  return a;
}

Lattice lattice_from_json(const json& j, std::size_t ambient) {
  if (!j.is_array()) throw InputError("expected a lattice as a list of generator columns");
  std::vector<Vec> gens;
  for (const auto& c : j) {
    gens.push_back(vec_from_json(c));
    if (gens.back().size() != ambient) throw InputError("lattice generator has the wrong length");
  }
  return Lattice(ambient, gens);
}

json presentation_to_json(const AbelianPresentation& p) {
  json t = json::array();
  for (const Int& d : p.torsion()) t.push_back(int_to_json(d));
  return json{{"free_rank", p.free_rank()}, {"torsion", t}, {"description", p.describe()}};
}

}  // namespace trimassey
