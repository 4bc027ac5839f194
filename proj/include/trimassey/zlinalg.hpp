#ifndef TRIMASSEY_ZLINALG_HPP
#define TRIMASSEY_ZLINALG_HPP

// Exact integer linear algebra: dense matrices over Z, Smith normal form,
// lattices (subgroups of Z^n given by spanning columns), and presentations of
// finitely generated abelian quotients.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace trimassey {

using Int = mpz_class;
using Vec = std::vector<Int>;

Vec zero_vec(std::size_t n);
bool is_zero(const Vec& v);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(const Int& s, const Vec& v);
Vec& operator+=(Vec& a, const Vec& b);
Vec& operator-=(Vec& a, const Vec& b);
Int dot(const Vec& a, const Vec& b);
Vec vec_of(std::initializer_list<long> xs);
std::string to_string(const Vec& v);

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);
  static IntMatrix from_row_vectors(const std::vector<Vec>& rows, std::size_t cols);
  static IntMatrix from_columns(const std::vector<Vec>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vec row(std::size_t i) const;
  Vec column(std::size_t j) const;
  void set_column(std::size_t j, const Vec& v);
  std::vector<Vec> columns() const;

  IntMatrix transpose() const;
  IntMatrix select_columns(const std::vector<std::size_t>& idx) const;
  IntMatrix select_rows(const std::vector<std::size_t>& idx) const;
  bool is_zero() const;

  // Row and column operations used by the reductions.
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += f * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Int& f);
  /// col[dst] += f * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Int& f);
  void negate_row(std::size_t i);
  void negate_col(std::size_t j);

  friend bool operator==(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend Vec operator*(const IntMatrix& a, const Vec& v);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);

  const std::vector<Int>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

/// [A | B], same row count.
IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
/// [A ; B], same column count.
IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);
Int determinant(const IntMatrix& a);
std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

/// U * A * V = S with U, V unimodular and S diagonal, d1 | d2 | ... | dr, di > 0.
/// The inverses are tracked alongside so that A = Uinv * S * Vinv exactly.
struct SmithForm {
  IntMatrix U, S, V;
  IntMatrix Uinv, Vinv;
  std::size_t rank = 0;

  Vec invariant_factors() const;
};

SmithForm smith_normal_form(const IntMatrix& a);

/// Column-style echelon basis of the column span of `gens`: returns a matrix
/// whose columns are a Z-basis of the span, in Hermite normal form (pivot rows
/// strictly increasing, pivots positive, entries in a pivot row to the left
/// reduced into [0, pivot)).
IntMatrix hermite_basis(const IntMatrix& gens);

/// Witness that a vector lies outside a lattice: `functional . x` is divisible
/// by `modulus` for every x in the lattice but not for the vector. A modulus of
/// zero means the functional vanishes identically on the lattice.
struct NonMembershipWitness {
  Vec functional;
  Int modulus;
};

class Lattice {
 public:
  Lattice() : Lattice(0) {}
  explicit Lattice(std::size_t ambient_rank);
  explicit Lattice(IntMatrix generators);
  Lattice(std::size_t ambient_rank, const std::vector<Vec>& generators);

  static Lattice full(std::size_t ambient_rank);

  std::size_t ambient_rank() const { return ambient_; }
  const IntMatrix& generators() const { return gens_; }

  /// HNF basis (computed once, shared between copies).
  const IntMatrix& basis() const;
  std::size_t rank() const { return basis().cols(); }
  bool contains(const Vec& v) const;
  bool is_full() const;

 private:
  struct Cache {
    std::once_flag once;
    IntMatrix basis;
  };
  std::size_t ambient_ = 0;
  IntMatrix gens_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

std::optional<Vec> solve_in_lattice(const Lattice& l, const Vec& v);
std::optional<NonMembershipWitness> non_membership_witness(const Lattice& l, const Vec& v);
bool lattice_equal(const Lattice& a, const Lattice& b);
bool lattice_contains(const Lattice& big, const Lattice& small);

/// Saturated Z-basis of {x : A x = 0}.
Lattice kernel_lattice(const IntMatrix& a);

/// Kernel basis together with a coordinate map: coords * x recovers the
/// coefficients of x in `basis` for every x in the kernel.
struct KernelBasis {
  IntMatrix basis;
  IntMatrix coords;
};
KernelBasis kernel_basis(const IntMatrix& a);

Lattice lattice_sum(const Lattice& a, const Lattice& b);
Lattice lattice_intersection(const Lattice& a, const Lattice& b);
/// {x : A x in L}
Lattice lattice_preimage(const IntMatrix& a, const Lattice& l);
/// A(L)
Lattice lattice_image(const IntMatrix& a, const Lattice& l);

/// Z^ambient / L presented as Z^free_rank + sum Z/torsion_i. Coordinates are
/// ordered torsion first (in divisibility order) then free.
class AbelianPresentation {
 public:
  AbelianPresentation() = default;
  AbelianPresentation(std::size_t ambient, std::vector<Int> torsion, std::size_t free_rank,
                      IntMatrix projection, IntMatrix lift);

  std::size_t ambient_rank() const { return ambient_; }
  std::size_t free_rank() const { return free_rank_; }
  const std::vector<Int>& torsion() const { return torsion_; }
  std::size_t num_coords() const { return torsion_.size() + free_rank_; }
  /// num_coords x ambient
  const IntMatrix& projection() const { return projection_; }
  /// ambient x num_coords; projection * lift = identity modulo torsion.
  const IntMatrix& lift() const { return lift_; }

  /// Projected coordinates with torsion entries reduced into [0, d).
  Vec coordinates(const Vec& ambient_vector) const;
  Vec normalize(Vec coords) const;
  bool is_zero_coords(const Vec& coords) const;
  bool is_zero(const Vec& ambient_vector) const { return is_zero_coords(coordinates(ambient_vector)); }
  bool is_trivial() const { return num_coords() == 0; }
  bool is_free() const { return torsion_.empty(); }
  /// Lattice in coordinate space spanned by d_i e_i (the torsion relations).
  Lattice relation_lattice() const;
  std::string describe() const;

 private:
  std::size_t ambient_ = 0;
  std::vector<Int> torsion_;
  std::size_t free_rank_ = 0;
  IntMatrix projection_;
  IntMatrix lift_;
};

AbelianPresentation cokernel_presentation(std::size_t ambient_rank, const Lattice& l);

/// Presentation of an abstract group Z^n / L in coordinates: a map between two
/// presented groups is described by the matrix it induces on ambient vectors.
/// Checks whether `m` (target coordinates x source ambient) induces a
/// well-defined isomorphism source_ambient / source_relations -> target.
struct IsoCheck {
  bool well_defined = false;
  bool injective = false;
  bool surjective = false;
  bool is_iso() const { return well_defined && injective && surjective; }
  /// Index of a source relation column that does not map to zero, or a
  /// source kernel vector that is not a relation, when the check fails.
  std::optional<Vec> witness;
};
IsoCheck check_induced_isomorphism(const Lattice& source_relations, const AbelianPresentation& target,
                                   const IntMatrix& m);

/// Sparse column over Z.
using SparseVec = std::vector<std::pair<std::size_t, Int>>;

/// Quotient Z^N / span(columns) for large sparse relation sets with many unit
/// entries. Unit pivots are eliminated first; the remaining small dense block
/// is reduced by Smith normal form.
class QuotientModule {
 public:
  QuotientModule() = default;
  QuotientModule(std::size_t ambient, std::vector<SparseVec> relations);

  std::size_t ambient_rank() const { return ambient_; }
  const AbelianPresentation& presentation() const { return pres_; }
  Vec coordinates(const SparseVec& v) const;
  Vec coordinates(const Vec& dense) const;
  bool is_zero(const SparseVec& v) const { return pres_.is_zero_coords(coordinates(v)); }
  /// Ambient representative of a class given in presentation coordinates.
  SparseVec lift(const Vec& coords) const;
  std::size_t eliminated() const { return pivots_.size(); }

 private:
  struct Pivot {
    std::size_t row;
    Int coeff;  // +-1
    SparseVec column;
  };
  Vec reduce_to_remaining(std::vector<Int>& dense) const;

  std::size_t ambient_ = 0;
  std::vector<Pivot> pivots_;
  std::vector<std::size_t> remaining_rows_;
  std::vector<std::size_t> remaining_index_;  // ambient row -> index or npos
  AbelianPresentation pres_;
};

}  // namespace trimassey

#endif
