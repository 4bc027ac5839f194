#ifndef TRIMASSEY_GROUPRINGS_HPP
#define TRIMASSEY_GROUPRINGS_HPP

// Truncated Magnus expansion, the quotients D^(k) = ZG / I^k, lower central
// series membership through degree 4 and the graded pieces P2, P3.

#include <optional>
#include <vector>

#include "trimassey/presentation.hpp"
#include "trimassey/zlinalg.hpp"

namespace trimassey {

/// Element of the free associative algebra on x_1..x_n modulo words of length >= k.
/// Coefficients are stored degree by degree; a word of degree d sits at
/// offset(d) + (its base-n index).
class TruncatedSeries {
 public:
  TruncatedSeries(std::size_t n, std::size_t k);
  static TruncatedSeries one(std::size_t n, std::size_t k);
  /// x_i (0-based i).
  static TruncatedSeries letter(std::size_t n, std::size_t k, std::size_t i);
  static TruncatedSeries word(std::size_t n, std::size_t k, const std::vector<std::size_t>& letters);
  static TruncatedSeries from_vec(std::size_t n, std::size_t k, Vec coeffs);

  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  std::size_t dim() const { return coeffs_.size(); }
  static std::size_t dim(std::size_t n, std::size_t k);
  std::size_t offset(std::size_t degree) const;

  const Vec& coeffs() const { return coeffs_; }
  Int& operator[](std::size_t i) { return coeffs_[i]; }
  const Int& operator[](std::size_t i) const { return coeffs_[i]; }
  /// Coefficient of a word (empty word is the constant term).
  const Int& coefficient(const std::vector<std::size_t>& letters) const;

  /// Homogeneous component as a vector over the n^d words of degree d.
  Vec degree_part(std::size_t d) const;
  /// Lowest degree with a nonzero coefficient; k when zero.
  std::size_t valuation() const;
  bool is_zero() const;
  /// Zeroes all components of degree >= d.
  TruncatedSeries below(std::size_t d) const;

  TruncatedSeries operator+(const TruncatedSeries& o) const;
  TruncatedSeries operator-(const TruncatedSeries& o) const;
  TruncatedSeries operator*(const TruncatedSeries& o) const;
  TruncatedSeries operator*(const Int& c) const;
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.n_ == b.n_ && a.k_ == b.k_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void check_compatible(const TruncatedSeries& o) const;
  std::size_t n_, k_;
  std::vector<std::size_t> offsets_;
  Vec coeffs_;
};

/// g_i -> 1 + x_i, g_i^-1 -> 1 - x_i + x_i^2 - ..., truncated below degree k (1 <= k <= 5).
TruncatedSeries magnus_expand(std::size_t n, const Word& w, std::size_t k);

/// Degree-d part of the Magnus expansion of w, over n^d words.
Vec magnus_part(std::size_t n, const Word& w, std::size_t d);

struct DkAlgebra {
  std::size_t n = 0, k = 0;
  /// Spanning set of the image of the relation ideal in T_{<k}.
  std::vector<TruncatedSeries> ideal;
  Lattice ideal_lattice{0};
  AbelianPresentation presentation;
  /// Classes of 1 + x_i.
  std::vector<Vec> generator_images;

  Vec class_of(const TruncatedSeries& s) const;
  bool vanishes(const TruncatedSeries& s) const;
};

/// D^(k) from an explicit ideal spanning set.
DkAlgebra dk_from_ideal(std::size_t n, std::size_t k, std::vector<TruncatedSeries> ideal);
/// D^(k)(G) for 1 <= k <= 4. Relators with a nonzero exponent sum are rejected for k >= 3.
DkAlgebra d_k(const GroupPresentation& p, std::size_t k);

/// Whether w lies in gamma_k G (1 <= k <= 4). For k >= 3 the presentation must
/// have all relators in [F,F] and an injective degree-2 relator map.
bool gamma_member(const GroupPresentation& p, const Word& w, std::size_t k);
/// Same, against a prebuilt D^(k).
bool gamma_member(const DkAlgebra& dk, const Word& w);

struct DeltaBarH2 {
  std::size_t n = 0;
  /// Degree-2 Magnus parts of the relators, as columns in Z^{n^2}.
  IntMatrix relator_parts;
  Lattice lattice{0};
  /// HNF basis of the lattice; its columns are the chosen H2 basis.
  IntMatrix basis;
  /// Row s holds alpha_{ij} (i < j, pair order) of basis element s.
  IntMatrix alpha;
  /// relator_parts * relator_combination == basis.
  IntMatrix relator_combination;
  std::size_t nonempty_relators = 0;
  /// Rank of the lattice equals the number of nonempty relators.
  bool injective = false;

  std::size_t rank() const { return basis.cols(); }
};

DeltaBarH2 delta_bar_h2(const GroupPresentation& p);

struct LcsData {
  std::size_t n = 0;
  DeltaBarH2 dbar;
  AbelianPresentation b2;  // Z^{n^2} / Dbar
  AbelianPresentation p2;  // Z^{Lambda^2} / alpha lattice
  /// Dbar (x) H + H (x) Dbar in Z^{n^3}.
  Lattice n3{0};
  /// Brackets [[h_b,h_c],h_a] as columns, indexed pair * n + a.
  IntMatrix bracket3;
  IntMatrix l3_basis;
  /// Quotient of L3 by L3 ∩ N3, in l3_basis coordinates.
  AbelianPresentation p3;
  bool p3_free = false;
  /// (P2 (x) H) / jay'(Lambda^3) maps isomorphically onto p3.
  bool p3_matches_bracket_quotient = false;
  /// T_3 ∩ (relation ideal of D^(4)) equals N3.
  bool b3_matches_dk = false;

  /// P3 coordinates of a degree-3 tensor lying in L3 + N3.
  std::optional<Vec> p3_coordinates(const Vec& y) const;
};

LcsData build_p2_p3(const GroupPresentation& p, bool require_injective = true);

/// The word prod_{i<j} [g_i, g_j]^{alpha_ij}.
Word tau_word(std::size_t n, const Vec& alpha_row);

struct TauBar {
  /// Column s: P3 coordinates of tau of H2 basis element s.
  IntMatrix p3_coords;
  /// Column s: degree-3 tensor representing the class in B_3 = T_3 / N3.
  IntMatrix residues;
};

TauBar tau_bar(const GroupPresentation& p, const LcsData& lcs);

struct PresentationComplex;

/// pr : C_1 -> H (degree-1 Magnus part of the edge word) and the lift
/// iota(e) = -D2(edge word) of iota : C_1 -> H (x) H / Dbar.
struct EdgeMaps {
  IntMatrix pr;    // n x C_1
  IntMatrix iota;  // n^2 x C_1
};
EdgeMaps edge_maps(const GroupPresentation& p, const PresentationComplex& pc);

/// Degree-3 representatives of tau-bar-1 + tau-bar-2 (n^3 x rank H2) built from
/// the presentation complex and the map iota : C_1 -> H (x) H / Dbar.
IntMatrix tau_bar_split(const GroupPresentation& p, const LcsData& lcs);

}  // namespace trimassey

#endif
