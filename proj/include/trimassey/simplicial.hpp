#ifndef TRIMASSEY_SIMPLICIAL_HPP
#define TRIMASSEY_SIMPLICIAL_HPP

// Single-vertex simplicial sets through dimension 3, their normalized chains
// and cochains, Alexander-Whitney diagonal, cup products and the homotopy
// operation mu_1.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "trimassey/presentation.hpp"
#include "trimassey/tensorspace.hpp"
#include "trimassey/zlinalg.hpp"

namespace trimassey {

/// A (possibly degenerate) simplex s(b): `b` is nondegenerate of dimension
/// base_dim, and `surj` is the monotone surjection [dim] -> [base_dim]
/// describing the degeneracy (surj.size() == dim + 1).
struct SimplexRef {
  int base_dim = 0;
  std::size_t base = 0;
  std::vector<int> surj{0};

  int dim() const { return static_cast<int>(surj.size()) - 1; }
  bool degenerate() const { return dim() != base_dim; }
  static SimplexRef nondegenerate(int dim, std::size_t id);
  /// The totally degenerate simplex on the vertex.
  static SimplexRef vertex(int dim);
  /// s_i applied to this simplex.
  SimplexRef degeneracy(int i) const;
  friend bool operator==(const SimplexRef& a, const SimplexRef& b) {
    return a.base_dim == b.base_dim && a.base == b.base && a.surj == b.surj;
  }
};

class SimplicialSet {
 public:
  SimplicialSet() = default;

  std::size_t add_edge(const std::string& name);
  /// Faces d0, d1, d2 as 1-dimensional refs.
  std::size_t add_triangle(const std::string& name, const SimplexRef& d0, const SimplexRef& d1,
                           const SimplexRef& d2);
  /// Faces d0..d3 as 2-dimensional refs.
  std::size_t add_tetrahedron(const std::string& name, const std::array<SimplexRef, 4>& faces);

  std::size_t count(int dim) const;
  const std::string& name(int dim, std::size_t id) const;
  std::optional<std::size_t> find(int dim, const std::string& name) const;
  /// Stored face of a nondegenerate simplex.
  const SimplexRef& stored_face(int dim, std::size_t id, int i) const;

  /// d_i of an arbitrary simplex.
  SimplexRef face(const SimplexRef& s, int i) const;
  /// Face spanned by the given increasing vertex list.
  SimplexRef restrict_to(const SimplexRef& s, const std::vector<int>& vertices) const;
  SimplexRef front(const SimplexRef& s, int p) const;
  SimplexRef back(const SimplexRef& s, int q) const;

  /// Checks references and the simplicial identities; throws ValidationError.
  void validate() const;

  /// Parses "*", a simplex name, or "s<i>(token)" as a simplex of dimension `dim`.
  SimplexRef parse_ref(int dim, const std::string& token) const;
  std::string format_ref(const SimplexRef& s) const;

  static SimplicialSet from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

 private:
  std::array<std::vector<std::string>, 4> names_{std::vector<std::string>{"x"}, {}, {}, {}};
  // faces_[d][id] holds the d+1 faces of a nondegenerate d-simplex (d = 2, 3).
  std::array<std::vector<std::vector<SimplexRef>>, 4> faces_;
};

/// Normalized chain complex: C_d has the nondegenerate d-simplices as basis.
struct ChainComplex {
  std::array<std::size_t, 4> ranks{};
  /// boundary[d] : C_d -> C_{d-1}, for d = 1, 2, 3 (boundary[0] unused).
  std::array<IntMatrix, 4> boundary;
};

ChainComplex chain_complex(const SimplicialSet& x);

/// Coefficient vector over the nondegenerate simplices of one dimension.
struct Cochain {
  int degree = 0;
  Vec values;
};

/// Normalized chain of a single simplex: zero when degenerate.
Vec chain_of(const SimplicialSet& x, const SimplexRef& s);

/// Alexander-Whitney component C_{p+q} -> C_p (x) C_q as a matrix
/// (rows indexed by pairs (i, j) as i * rank_q + j).
IntMatrix aw_component(const SimplicialSet& x, int p, int q);
/// Delta_1 component C_d -> C_p (x) C_q for (d, p, q) in {(1,1,1), (2,2,1), (2,1,2)}.
IntMatrix delta1_component(const SimplicialSet& x, int d, int p, int q);

/// Cup product C^p (x) C^q -> C^{p+q}: (f cup g)(s) = f(front_p s) g(back_q s).
IntMatrix cup_matrix(const SimplicialSet& x, int p, int q);
/// mu_1 : C^p (x) C^q -> C^{p+q-1}, the sign (-1)^p times the adjoint of Delta_1.
IntMatrix mu1_matrix(const SimplicialSet& x, int p, int q);
/// Coboundary C^p -> C^{p+1}, d f = f o boundary.
IntMatrix coboundary(const SimplicialSet& x, int p);

Vec cup(const SimplicialSet& x, const Cochain& f, const Cochain& g, Cochain* out = nullptr);

struct Cohomology {
  std::size_t c1_rank = 0, c2_rank = 0;
  /// Columns are the chosen H^1 basis cocycles in C^1 (the section kappa).
  IntMatrix kappa;
  BasedModule h1;
  KernelBasis z2;       // basis of Z^2 inside C^2 with coordinate map
  Lattice b2;           // B^2 inside C^2
  AbelianPresentation h2;  // Z^2 / B^2 in z2 coordinates

  /// H^2 coordinates of a 2-cocycle; throws PreconditionError if not a cocycle.
  Vec h2_class(const Vec& cocycle) const;
  /// H^1 coordinates of a 1-cocycle in the chosen basis.
  Vec h1_coords(const Vec& cocycle) const;
  IntMatrix h1_coord_map;  // rank H^1 x C^1, left inverse of kappa on Z^1
};

/// `h1_basis`, when given, must be a basis of Z^1 (columns in C^1).
Cohomology cohomology(const SimplicialSet& x, const std::optional<IntMatrix>& h1_basis = std::nullopt);

struct Homology {
  AbelianPresentation h1;  // C_1 / B_1
  Lattice z2, b2;          // in C_2
  AbelianPresentation h2;  // in Z_2 basis coordinates
};
Homology homology(const SimplicialSet& x);

// ---------------------------------------------------------------- presentations

struct PresentationComplex {
  SimplicialSet x;
  std::vector<std::size_t> generator_edges, inverse_edges;
  std::vector<std::size_t> inverse_triangles;
  /// Fan triangles of each relator (empty for skipped relators).
  std::vector<std::vector<std::size_t>> relator_triangles;
  std::vector<std::string> warnings;

  /// 2-cycle carried by relator j (relators with zero exponent sums only).
  Vec relator_cycle(std::size_t j) const;
  /// Basis of Z^1 dual to the generator edges; requires zero exponent sums.
  IntMatrix dual_h1_basis() const;
  std::vector<int> exponent_sums(std::size_t j) const;
  std::vector<std::vector<int>> relators;
};

PresentationComplex presentation_complex(const GroupPresentation& p);

// ---------------------------------------------------------------- maps

struct SimplicialMap {
  const SimplicialSet* source = nullptr;
  const SimplicialSet* target = nullptr;
  /// images[d][id] for each nondegenerate d-simplex of the source (d = 1..3).
  std::array<std::vector<SimplexRef>, 4> images;

  SimplexRef apply(const SimplexRef& s) const;
  /// Face compatibility; throws ValidationError.
  void validate() const;
  /// Induced map C_d(source) -> C_d(target).
  IntMatrix chain_map(int d) const;

  /// Reads {"1": {name: token}, "2": {...}, "3": {...}}; unmapped simplices are rejected.
  static SimplicialMap from_json(const SimplicialSet& source, const SimplicialSet& target,
                                 const nlohmann::json& j);
};

struct PseudoHomeoVerdict {
  bool h1_iso = false;
  bool h2_epi = false;
  bool is_pseudo_homeo = false;
  // Chain-level conditions: K1 = f C1 + dK2, f^-1(dK2) = dC2, Ker d_K2 = f Ker d_C2 + dK3.
  bool cond_h1_surjective = false;
  bool cond_h1_injective = false;
  bool cond_h2_surjective = false;
  // Their cochain-level consequences.
  bool cohomology_h1_iso = false;
  bool cohomology_h2_mono = false;
};

PseudoHomeoVerdict pseudo_homeo_check(const SimplicialMap& f);

}  // namespace trimassey

#endif
