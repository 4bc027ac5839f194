#ifndef TRIMASSEY_COBAR_HPP
#define TRIMASSEY_COBAR_HPP

// Truncated cobar construction of a single-vertex simplicial set in cobar
// degrees 0 and 1, and its zeroth homology A^(k) as an algebra.

#include <optional>
#include <string>
#include <vector>

#include "trimassey/grouprings.hpp"
#include "trimassey/simplicial.hpp"
#include "trimassey/zlinalg.hpp"

namespace trimassey {

/// Words [a_1|...|a_m] (m < k) in the desuspended 1-simplices, indexed by
/// length and then base-E lexicographic order (E = number of 1-simplices).
class CobarWords {
 public:
  CobarWords() = default;
  CobarWords(std::size_t letters, std::size_t k);
  std::size_t letters() const { return letters_; }
  std::size_t k() const { return k_; }
  std::size_t size() const { return offsets_.back(); }
  std::size_t index(const std::vector<std::size_t>& w) const;
  std::vector<std::size_t> word(std::size_t index) const;

 private:
  std::size_t letters_ = 0, k_ = 0;
  std::vector<std::size_t> offsets_{0};
};

/// Degree-1 word u [sigma] v.
struct MixedWord {
  std::vector<std::size_t> left;
  std::size_t triangle = 0;
  std::vector<std::size_t> right;
};

struct CobarTruncation {
  std::size_t k = 0;
  CobarWords degree0;
  std::vector<MixedWord> degree1;
  /// Column j is the boundary of degree1[j] in degree-0 word coordinates.
  std::vector<SparseVec> differential;
  /// Boundary of the generator [sigma] for each 2-simplex.
  std::vector<SparseVec> generator_boundary;
};

/// 2 <= k <= 4.
CobarTruncation truncated_cobar(const SimplicialSet& x, std::size_t k);

struct AkAlgebra {
  std::size_t k = 0;
  CobarWords words;
  std::vector<std::string> letter_names;
  QuotientModule module;
  Vec unit;
  /// Class of 1 + [a] for every 1-simplex a.
  std::vector<Vec> generator_images;

  const AbelianPresentation& presentation() const { return module.presentation(); }
  Vec class_of(const SparseVec& v) const { return module.coordinates(v); }
  /// Truncated concatenation of representatives.
  SparseVec product(const SparseVec& a, const SparseVec& b) const;
  /// Product of two classes given in presentation coordinates.
  Vec multiply(const Vec& a, const Vec& b) const;
  /// Column i * m + j holds the class of e_i e_j, m = number of coordinates.
  IntMatrix multiplication_table() const;
};

/// A^(k)(X) for 1 <= k <= 4.
AkAlgebra a_k(const SimplicialSet& x, std::size_t k);

struct AlgebraIsoResult {
  bool iso = false;
  IsoCheck detail;
  /// Readable element witnessing the failure, empty on success.
  std::string witness;
};

/// Compares D^(k) with A^(k) along x_i -> [a_i]; `edge_of_generator[i]` is the
/// 1-simplex matched with generator i.
AlgebraIsoResult algebra_iso_check(const AkAlgebra& a, const DkAlgebra& d,
                                   const std::vector<std::size_t>& edge_of_generator);
/// Generator correspondence g_i <-> edge "g<i>" of a presentation complex.
AlgebraIsoResult algebra_iso_check(const AkAlgebra& a, const DkAlgebra& d, const PresentationComplex& pc);

/// Map A^(k)(X) -> A^(k)(Y) induced by sending letter e to letter_map[e]
/// (nullopt for a degenerate image), in presentation coordinates.
IntMatrix induced_cobar_map(const AkAlgebra& a, const AkAlgebra& b,
                            const std::vector<std::optional<std::size_t>>& letter_map);
/// Whether f induces an isomorphism A^(k)(source) -> A^(k)(target).
IsoCheck cobar_map_check(const AkAlgebra& a, const AkAlgebra& b, const SimplicialMap& f);

}  // namespace trimassey

#endif
